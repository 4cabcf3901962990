//! DNA alphabet, Watson-Crick complementation, distances and shift metrics.
//!
//! Positions are 0-based internally. Anything rendered for people (tables,
//! pair lists, reports) is 1-based.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// A single nucleotide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    A,
    C,
    G,
    T,
}

impl Base {
    pub const ALL: [Base; 4] = [Base::A, Base::C, Base::G, Base::T];

    /// Watson-Crick complement: A <-> T, C <-> G.
    pub const fn complement(self) -> Base {
        match self {
            Base::A => Base::T,
            Base::T => Base::A,
            Base::C => Base::G,
            Base::G => Base::C,
        }
    }

    pub const fn is_gc(self) -> bool {
        matches!(self, Base::G | Base::C)
    }

    /// Two-bit image `(even, odd)`: A -> 00, T -> 01, C -> 10, G -> 11.
    pub const fn bits(self) -> (bool, bool) {
        match self {
            Base::A => (false, false),
            Base::T => (false, true),
            Base::C => (true, false),
            Base::G => (true, true),
        }
    }

    pub const fn from_bits(even: bool, odd: bool) -> Base {
        match (even, odd) {
            (false, false) => Base::A,
            (false, true) => Base::T,
            (true, false) => Base::C,
            (true, true) => Base::G,
        }
    }

    pub const fn to_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::C => 'C',
            Base::G => 'G',
            Base::T => 'T',
        }
    }

    /// Accepts upper- or lowercase ACGT.
    pub fn from_char(c: char) -> Result<Base> {
        match c.to_ascii_uppercase() {
            'A' => Ok(Base::A),
            'C' => Ok(Base::C),
            'G' => Ok(Base::G),
            'T' => Ok(Base::T),
            _ => Err(Error::InvalidBase(c)),
        }
    }

    /// Index in `ALL`, used by the enumeration oracle.
    pub(crate) const fn from_index(i: usize) -> Base {
        Base::ALL[i & 3]
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

pub fn complement(b: Base) -> Base {
    b.complement()
}

/// A non-empty word over {A, C, G, T}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DnaSequence {
    bases: Vec<Base>,
}

impl DnaSequence {
    pub fn new(bases: Vec<Base>) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self { bases })
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    // Never true: construction rejects empty input. Kept for clippy's sake.
    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    /// The 1-based inclusive subsequence `q[i..=j]`.
    pub fn subsequence(&self, i: usize, j: usize) -> Result<DnaSequence> {
        if i == 0 || i > j || j > self.len() {
            return Err(Error::InvalidArgument(format!(
                "subsequence [{i},{j}] of a length-{} sequence",
                self.len()
            )));
        }
        DnaSequence::new(self.bases[i - 1..j].to_vec())
    }
}

impl Deref for DnaSequence {
    type Target = [Base];

    fn deref(&self) -> &[Base] {
        &self.bases
    }
}

impl FromStr for DnaSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bases = s.chars().map(Base::from_char).collect::<Result<Vec<_>>>()?;
        DnaSequence::new(bases)
    }
}

impl fmt::Display for DnaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bases {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl Serialize for DnaSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DnaSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn complement_sequence(q: &DnaSequence) -> DnaSequence {
    DnaSequence {
        bases: q.iter().map(|b| b.complement()).collect(),
    }
}

fn check_lengths(p: &[Base], r: &[Base]) -> Result<()> {
    if p.len() != r.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: r.len(),
        });
    }
    Ok(())
}

/// Number of positions where `p` is not the complement of `r`.
pub fn wc_distance(p: &[Base], r: &[Base]) -> Result<usize> {
    check_lengths(p, r)?;
    Ok(p.iter()
        .zip(r)
        .filter(|(a, b)| **a != b.complement())
        .count())
}

pub fn hamming_distance(p: &[Base], r: &[Base]) -> Result<usize> {
    check_lengths(p, r)?;
    Ok(p.iter().zip(r).filter(|(a, b)| a != b).count())
}

/// Count of positions `l` with `q[l] == complement(q[l + i])`.
pub fn mu(q: &[Base], i: usize) -> Result<usize> {
    if i >= q.len() {
        return Err(Error::ShiftOutOfRange {
            index: i,
            len: q.len(),
        });
    }
    Ok(mu_unchecked(q, i))
}

#[inline]
pub(crate) fn mu_unchecked(q: &[Base], i: usize) -> usize {
    q.iter()
        .zip(&q[i..])
        .filter(|(a, b)| **a == b.complement())
        .count()
}

/// `mu` for shifts `1..=s`, all zero. Shifts past the end are vacuous.
pub fn satisfies_shift_constraint(q: &[Base], s: usize) -> bool {
    (1..=s.min(q.len().saturating_sub(1))).all(|i| mu_unchecked(q, i) == 0)
}

pub fn gc_content(q: &[Base]) -> usize {
    q.iter().filter(|b| b.is_gc()).count()
}

/// The vector `(mu_0, ..., mu_{n-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftProfile {
    mu: Vec<usize>,
}

impl ShiftProfile {
    pub fn values(&self) -> &[usize] {
        &self.mu
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.mu.get(i).copied()
    }

    /// Largest `mu_i` over shifts `1..=depth` (clamped to the sequence).
    pub fn max_over(&self, depth: usize) -> usize {
        self.mu.iter().skip(1).take(depth).copied().max().unwrap_or(0)
    }

    /// Largest nonzero-shift entry.
    pub fn max_shift(&self) -> usize {
        self.max_over(self.mu.len())
    }
}

pub fn shift_profile(q: &[Base]) -> ShiftProfile {
    ShiftProfile {
        mu: (0..q.len()).map(|i| mu_unchecked(q, i)).collect(),
    }
}

/// The 2n-bit image of a sequence, with its even and odd bit subsequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    bits: BitString,
    even: BitString,
    odd: BitString,
}

impl BinaryImage {
    pub fn from_components(even: BitString, odd: BitString) -> Result<Self> {
        if even.len() != odd.len() {
            return Err(Error::LengthMismatch {
                left: even.len(),
                right: odd.len(),
            });
        }
        if even.is_empty() {
            return Err(Error::EmptySequence);
        }
        let bits = even
            .iter()
            .zip(odd.iter())
            .flat_map(|(e, o)| [e, o])
            .collect();
        Ok(Self { bits, even, odd })
    }

    pub fn from_bits(bits: BitString) -> Result<Self> {
        if !bits.len().is_multiple_of(2) {
            return Err(Error::InvalidBits(format!(
                "odd length {} cannot be split into base pairs",
                bits.len()
            )));
        }
        let even = bits.iter().step_by(2).collect();
        let odd = bits.iter().skip(1).step_by(2).collect();
        Self::from_components(even, odd)
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn even(&self) -> &BitString {
        &self.even
    }

    pub fn odd(&self) -> &BitString {
        &self.odd
    }

    /// Inverse of the two-bit map.
    pub fn decode(&self) -> DnaSequence {
        DnaSequence {
            bases: self
                .even
                .iter()
                .zip(self.odd.iter())
                .map(|(e, o)| Base::from_bits(e, o))
                .collect(),
        }
    }
}

pub fn binary_image(q: &DnaSequence) -> BinaryImage {
    let (even, odd): (BitString, BitString) = q.iter().map(|b| b.bits()).unzip();
    BinaryImage::from_components(even, odd).expect("non-empty sequence")
}

/// Complementary positions of `p` and `r` from their binary images.
///
/// Complementation keeps the even bit and flips the odd one, so position `i`
/// is complementary exactly when the even bits agree and the odd bits differ.
pub fn complementary_positions(p: &DnaSequence, r: &DnaSequence) -> Result<BitString> {
    check_lengths(p, r)?;
    let (bp, br) = (binary_image(p), binary_image(r));
    let sigma_even = bp.even().xor(br.even());
    let sigma_odd = bp.odd().xor(br.odd());
    Ok(sigma_even.not().and(&sigma_odd))
}

pub fn wc_distance_via_binary(p: &DnaSequence, r: &DnaSequence) -> Result<usize> {
    Ok(p.len() - complementary_positions(p, r)?.weight())
}
