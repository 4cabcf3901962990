//! Test-only oracles and frozen reference data, independent of the library's
//! dynamic programs and recurrences.

#![allow(dead_code)]

use oligoforge::{Base, DnaSequence};
use rand::Rng;

/// Energy of an explicit pairing under the default pair energies.
pub fn pair_energy(a: Base, b: Base, at: i64, gc: i64) -> i64 {
    match (a, b) {
        (Base::A, Base::T) | (Base::T, Base::A) => at,
        (Base::C, Base::G) | (Base::G, Base::C) => gc,
        _ => 0,
    }
}

fn crosses(p: (usize, usize), r: (usize, usize)) -> bool {
    (p.0 < r.0 && r.0 < p.1 && p.1 < r.1) || (r.0 < p.0 && p.0 < r.1 && r.1 < p.1)
}

/// Visits every set of disjoint complementary pairings (crossing or not).
fn for_each_matching(q: &[Base], f: &mut dyn FnMut(&[(usize, usize)])) {
    fn rec(
        q: &[Base],
        pos: usize,
        used: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        f: &mut dyn FnMut(&[(usize, usize)]),
    ) {
        let Some(i) = (pos..q.len()).find(|&i| !used[i]) else {
            f(pairs);
            return;
        };
        used[i] = true;
        rec(q, i + 1, used, pairs, f);
        for j in i + 1..q.len() {
            if !used[j] && q[j] == q[i].complement() {
                used[j] = true;
                pairs.push((i, j));
                rec(q, i + 1, used, pairs, f);
                pairs.pop();
                used[j] = false;
            }
        }
        used[i] = false;
    }
    let mut used = vec![false; q.len()];
    rec(q, 0, &mut used, &mut Vec::new(), f);
}

/// Minimum energy over all non-crossing complementary pairings.
pub fn min_noncrossing_energy(q: &[Base], at: i64, gc: i64) -> i64 {
    let mut best = 0;
    for_each_matching(q, &mut |pairs| {
        let ok = pairs
            .iter()
            .enumerate()
            .all(|(k, &p)| pairs[k + 1..].iter().all(|&r| !crosses(p, r)));
        if ok {
            let e: i64 = pairs.iter().map(|&(i, j)| pair_energy(q[i], q[j], at, gc)).sum();
            best = best.min(e);
        }
    });
    best
}

/// Minimum over all disjoint pairings, crossings allowed.
pub fn min_any_energy(q: &[Base], at: i64, gc: i64) -> i64 {
    let mut best = 0;
    for_each_matching(q, &mut |pairs| {
        let e: i64 = pairs.iter().map(|&(i, j)| pair_energy(q[i], q[j], at, gc)).sum();
        best = best.min(e);
    });
    best
}

/// All sequences of length `n`, in base-4 order.
pub fn all_sequences(n: usize) -> impl Iterator<Item = DnaSequence> {
    (0..4usize.pow(n as u32)).map(move |mut idx| {
        let bases = (0..n)
            .map(|_| {
                let b = Base::ALL[idx % 4];
                idx /= 4;
                b
            })
            .collect();
        DnaSequence::new(bases).unwrap()
    })
}

pub fn random_sequence<R: Rng>(rng: &mut R, n: usize) -> DnaSequence {
    DnaSequence::new((0..n).map(|_| Base::ALL[rng.gen_range(0..4)]).collect()).unwrap()
}

/// Direct count of `q[l] == complement(q[l + i])`.
pub fn naive_mu(q: &[Base], i: usize) -> usize {
    (0..q.len() - i).filter(|&l| q[l] == q[l + i].complement()).count()
}

// Folding tables for GCGCCCCGC and GAGGGTTTT. `None` marks '*'; the
// sub-diagonal boundary zeros are included.
pub const TABLE1_SEQ: &str = "GCGCCCCGC";
pub const TABLE2_SEQ: &str = "GAGGGTTTT";

const S: Option<i64> = None;
const fn z(v: i64) -> Option<i64> {
    Some(v)
}

pub const TABLE1: [[Option<i64>; 9]; 9] = [
    [z(0), z(-2), z(-2), z(-4), z(-4), z(-4), z(-4), z(-6), z(-6)],
    [z(0), z(0), z(-2), z(-2), z(-2), z(-2), z(-2), z(-4), z(-4)],
    [S, z(0), z(0), z(-2), z(-2), z(-2), z(-2), z(-4), z(-4)],
    [S, S, z(0), z(0), z(0), z(0), z(0), z(-2), z(-2)],
    [S, S, S, z(0), z(0), z(0), z(0), z(-2), z(-2)],
    [S, S, S, S, z(0), z(0), z(0), z(-2), z(-2)],
    [S, S, S, S, S, z(0), z(0), z(-2), z(-2)],
    [S, S, S, S, S, S, z(0), z(0), z(-2)],
    [S, S, S, S, S, S, S, z(0), z(0)],
];

pub const TABLE2: [[Option<i64>; 9]; 9] = [
    [z(0), z(0), z(0), z(0), z(0), z(-1), z(-1), z(-1), z(-1)],
    [z(0), z(0), z(0), z(0), z(0), z(-1), z(-1), z(-1), z(-1)],
    [S, z(0), z(0), z(0), z(0), z(0), z(0), z(0), z(0)],
    [S, S, z(0), z(0), z(0), z(0), z(0), z(0), z(0)],
    [S, S, S, z(0), z(0), z(0), z(0), z(0), z(0)],
    [S, S, S, S, z(0), z(0), z(0), z(0), z(0)],
    [S, S, S, S, S, z(0), z(0), z(0), z(0)],
    [S, S, S, S, S, S, z(0), z(0), z(0)],
    [S, S, S, S, S, S, S, z(0), z(0)],
];

/// Codewords listed for the m = 3 construction with generator 1110100.
pub const EXAMPLE_CODEWORDS: [&str; 8] = [
    "TGGCTCA", "TCCGTGA", "CACGGTC", "TAGCCTG", "CATGGCT", "GATCCGT", "GGGAGAA", "GGAGAAG",
];
