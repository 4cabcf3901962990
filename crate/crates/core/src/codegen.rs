//! DNA codes built from cyclic simplex codes.
//!
//! Every ordered pair `(e, o)` of nonzero simplex codewords becomes one DNA
//! word whose binary image has even bits `e` and odd bits `o`. Because two
//! distinct nonzero codewords share exactly `2^(m-2)` ones, every nonzero
//! shift of such a word has at most `2^(m-2)` complementary matches.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::folding::{self, Energy, EnergyParams};
use crate::seq::{gc_content, hamming_distance, mu_unchecked, shift_profile, BinaryImage, DnaSequence};

pub const MIN_DIMENSION: usize = 2;
/// Largest dimension with a built-in generator.
pub const MAX_DEFAULT_DIMENSION: usize = 8;
/// Largest dimension accepted with a user generator.
pub const MAX_DIMENSION: usize = 12;

/// Feedback taps `t` for `a[k+m] = xor_t a[k+t]`, one primitive
/// characteristic polynomial per dimension.
fn default_taps(m: usize) -> Option<&'static [usize]> {
    Some(match m {
        2 => &[0, 1],       // x^2 + x + 1
        3 => &[0, 2],       // x^3 + x^2 + 1
        4 => &[0, 1],       // x^4 + x + 1
        5 => &[0, 2],       // x^5 + x^2 + 1
        6 => &[0, 1],       // x^6 + x + 1
        7 => &[0, 1],       // x^7 + x + 1
        8 => &[0, 2, 3, 4], // x^8 + x^4 + x^3 + x^2 + 1
        _ => return None,
    })
}

/// One period of the maximal-length shift-register sequence for `m`,
/// started from the all-ones state.
pub fn default_generator(m: usize) -> Result<BitString> {
    let taps = default_taps(m).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no built-in generator for m = {m} (supported {MIN_DIMENSION}..={MAX_DEFAULT_DIMENSION})"
        ))
    })?;
    let n = (1usize << m) - 1;
    let mut seq = vec![true; m];
    while seq.len() < n {
        let k = seq.len() - m;
        let next = taps.iter().fold(false, |acc, &t| acc ^ seq[k + t]);
        seq.push(next);
    }
    Ok(BitString::from(seq))
}

/// The nonzero codewords of a cyclic simplex code, in shift order:
/// codeword `k` is the generator rotated right by `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplexCode {
    m: usize,
    generator: BitString,
    codewords: Vec<BitString>,
}

impl SimplexCode {
    pub fn dimension(&self) -> usize {
        self.m
    }

    pub fn length(&self) -> usize {
        (1 << self.m) - 1
    }

    pub fn generator(&self) -> &BitString {
        &self.generator
    }

    pub fn nonzero_codewords(&self) -> &[BitString] {
        &self.codewords
    }

    pub fn weight(&self) -> usize {
        1 << (self.m - 1)
    }

    pub fn intersection(&self) -> usize {
        1 << (self.m - 2)
    }
}

pub fn simplex_code(m: usize, generator: Option<BitString>) -> Result<SimplexCode> {
    if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "dimension must be in {MIN_DIMENSION}..={MAX_DIMENSION}, got {m}"
        )));
    }
    let generator = match generator {
        Some(g) => g,
        None => default_generator(m)?,
    };
    let n = (1usize << m) - 1;
    if generator.len() != n {
        return Err(Error::NotSimplex(format!(
            "generator {generator} has length {}, expected {n}",
            generator.len()
        )));
    }
    let weight = 1usize << (m - 1);
    let overlap = 1usize << (m - 2);
    if generator.weight() != weight {
        return Err(Error::NotSimplex(format!(
            "generator {generator} has weight {}, expected {weight}",
            generator.weight()
        )));
    }
    let codewords: Vec<BitString> = (0..n).map(|k| generator.rotate_right(k)).collect();
    let distinct: HashSet<&BitString> = codewords.iter().collect();
    if distinct.len() != n {
        return Err(Error::NotSimplex(format!(
            "generator {generator} has only {} distinct cyclic shifts",
            distinct.len()
        )));
    }
    // Rotating a pair rotates its sum and overlap, so comparing the generator
    // with each other shift covers every pair of shifts.
    for other in &codewords[1..] {
        let sum = generator.xor(other);
        if !distinct.contains(&sum) {
            return Err(Error::NotSimplex(format!(
                "{generator} + {other} = {sum} is not a codeword"
            )));
        }
        let shared = generator.and(other).weight();
        if shared != overlap {
            return Err(Error::NotSimplex(format!(
                "{generator} and {other} share {shared} ones, expected {overlap}"
            )));
        }
    }
    Ok(SimplexCode {
        m,
        generator,
        codewords,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub m: usize,
    pub generator: BitString,
}

/// Properties recomputed from a codeword set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeProperties {
    pub length: usize,
    pub size: usize,
    /// `None` for codes with fewer than two words.
    pub min_distance: Option<usize>,
    /// `Some(w)` when every codeword has GC-content `w`.
    pub gc_content: Option<usize>,
    /// Largest `mu_i(q)` over codewords and shifts `1..n`.
    pub max_shift_match: usize,
}

impl CodeProperties {
    pub fn compute(codewords: &[DnaSequence], strategy: Strategy) -> Self {
        let length = codewords.first().map_or(0, |q| q.len());
        let min_distance = exec::min_over(strategy, codewords.len(), |i| {
            codewords[i + 1..]
                .iter()
                .map(|r| hamming_distance(&codewords[i], r).expect("equal lengths"))
                .min()
                .unwrap_or(usize::MAX)
        })
        .filter(|&d| d != usize::MAX);
        let gcs: HashSet<usize> = codewords.iter().map(|q| gc_content(q)).collect();
        let gc_content = if gcs.len() == 1 {
            gcs.into_iter().next()
        } else {
            None
        };
        let max_shift_match = exec::map(strategy, codewords, |q| shift_profile(q).max_shift())
            .into_iter()
            .max()
            .unwrap_or(0);
        Self {
            length,
            size: codewords.len(),
            min_distance,
            gc_content,
            max_shift_match,
        }
    }
}

/// A set of equal-length DNA codewords with their properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DnaCode {
    codewords: Vec<DnaSequence>,
    properties: CodeProperties,
    construction: Option<Construction>,
}

impl DnaCode {
    pub fn from_codewords(codewords: Vec<DnaSequence>, strategy: Strategy) -> Result<Self> {
        let Some(first) = codewords.first() else {
            return Err(Error::InvalidArgument("a code needs at least one codeword".into()));
        };
        if let Some(bad) = codewords.iter().find(|q| q.len() != first.len()) {
            return Err(Error::LengthMismatch {
                left: first.len(),
                right: bad.len(),
            });
        }
        let properties = CodeProperties::compute(&codewords, strategy);
        Ok(Self {
            codewords,
            properties,
            construction: None,
        })
    }

    pub fn codewords(&self) -> &[DnaSequence] {
        &self.codewords
    }

    pub fn properties(&self) -> &CodeProperties {
        &self.properties
    }

    pub fn construction(&self) -> Option<&Construction> {
        self.construction.as_ref()
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn contains(&self, q: &DnaSequence) -> bool {
        self.codewords.contains(q)
    }

    pub fn to_text(&self) -> String {
        self.codewords.iter().map(|q| format!("{q}\n")).collect()
    }
}

/// All `(2^m - 1)^2` words, ordered by `(e, o)` shift index.
pub fn build_dna_code(code: &SimplexCode, strategy: Strategy) -> DnaCode {
    let words = code.nonzero_codewords();
    let codewords = words
        .iter()
        .flat_map(|e| {
            words.iter().map(move |o| {
                BinaryImage::from_components(e.clone(), o.clone())
                    .expect("equal-length simplex codewords")
                    .decode()
            })
        })
        .collect();
    let mut dna = DnaCode::from_codewords(codewords, strategy).expect("non-empty code");
    dna.construction = Some(Construction {
        m: code.dimension(),
        generator: code.generator().clone(),
    });
    dna
}

/// Declared bounds a code is checked against. `None` skips the check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CodeBounds {
    pub max_shift_match: Option<usize>,
    pub gc_content: Option<usize>,
    pub min_distance: Option<usize>,
}

impl CodeBounds {
    /// Bounds guaranteed by the simplex construction of dimension `m`.
    pub fn simplex(m: usize) -> Self {
        Self {
            max_shift_match: Some(1 << (m - 2)),
            gc_content: Some(1 << (m - 1)),
            min_distance: Some(1 << (m - 1)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodewordReport {
    pub sequence: DnaSequence,
    pub gc_content: usize,
    pub mu1: usize,
    pub max_shift_match: usize,
    pub energy: Energy,
    pub has_structure: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub properties: CodeProperties,
    pub construction: Option<Construction>,
    pub duplicates: usize,
    pub threshold: Energy,
    pub codewords: Vec<CodewordReport>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn structured_count(&self) -> usize {
        self.codewords.iter().filter(|c| c.has_structure).count()
    }

    pub fn render_text(&self) -> String {
        let p = &self.properties;
        let mut out = String::new();
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        let _ = writeln!(out, "codewords\t{}", p.size);
        let _ = writeln!(out, "length\t{}", p.length);
        if let Some(c) = &self.construction {
            let _ = writeln!(out, "dimension\t{}", c.m);
            let _ = writeln!(out, "generator\t{}", c.generator);
        }
        let _ = writeln!(out, "min_distance\t{}", opt(p.min_distance));
        let _ = writeln!(out, "gc_content\t{}", opt(p.gc_content));
        let _ = writeln!(out, "max_shift_match\t{}", p.max_shift_match);
        let _ = writeln!(out, "duplicates\t{}", self.duplicates);
        let _ = writeln!(
            out,
            "structured\t{} (energy <= {})",
            self.structured_count(),
            self.threshold
        );
        if let Some(c) = &self.construction {
            let _ = writeln!(
                out,
                "note\tnonzero simplex codewords lie at distance {}; the shift bound rests on their pairwise overlap {}",
                1usize << (c.m - 1),
                1usize << (c.m - 2)
            );
        }
        out.push('\n');
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{}\t{}\texpected {}\tactual {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.actual
            );
        }
        out.push('\n');
        let _ = writeln!(out, "sequence\tgc\tmu1\tmax_mu\tenergy\tstructure");
        for c in &self.codewords {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                c.sequence,
                c.gc_content,
                c.mu1,
                c.max_shift_match,
                c.energy,
                if c.has_structure { "yes" } else { "no" }
            );
        }
        out
    }
}

/// Recomputes every property of `code` from its codewords and checks the
/// declared bounds.
pub fn verify_code(
    code: &DnaCode,
    bounds: &CodeBounds,
    params: &EnergyParams,
    threshold: Energy,
    strategy: Strategy,
) -> VerificationReport {
    let properties = CodeProperties::compute(code.codewords(), strategy);
    let distinct: HashSet<&DnaSequence> = code.codewords().iter().collect();
    let duplicates = code.len() - distinct.len();
    let codewords = exec::map(strategy, code.codewords(), |q| {
        let energy = folding::min_free_energy(q, params);
        CodewordReport {
            sequence: q.clone(),
            gc_content: gc_content(q),
            mu1: if q.len() > 1 { mu_unchecked(q, 1) } else { 0 },
            max_shift_match: shift_profile(q).max_shift(),
            energy,
            has_structure: energy <= threshold,
        }
    });

    let mut checks = vec![
        Check {
            name: "metadata".into(),
            expected: "matches recomputation".into(),
            actual: if &properties == code.properties() {
                "matches".into()
            } else {
                "differs".into()
            },
            passed: &properties == code.properties(),
        },
        Check {
            name: "distinct".into(),
            expected: "0 duplicates".into(),
            actual: format!("{duplicates} duplicates"),
            passed: duplicates == 0,
        },
    ];
    if let Some(bound) = bounds.max_shift_match {
        checks.push(Check {
            name: "max_shift_match".into(),
            expected: format!("<= {bound}"),
            actual: properties.max_shift_match.to_string(),
            passed: properties.max_shift_match <= bound,
        });
    }
    if let Some(w) = bounds.gc_content {
        let actual = match properties.gc_content {
            Some(g) => g.to_string(),
            None => "not constant".into(),
        };
        checks.push(Check {
            name: "gc_content".into(),
            expected: format!("constant {w}"),
            actual,
            passed: properties.gc_content == Some(w),
        });
    }
    if let Some(d) = bounds.min_distance {
        checks.push(Check {
            name: "min_distance".into(),
            expected: format!(">= {d}"),
            actual: properties
                .min_distance
                .map_or_else(|| "-".to_string(), |v| v.to_string()),
            passed: properties.min_distance.is_none_or(|v| v >= d),
        });
    }
    VerificationReport {
        properties,
        construction: code.construction().cloned(),
        duplicates,
        threshold,
        codewords,
        checks,
    }
}

/// Machine-readable summary written next to a code file.
#[derive(Debug, Clone, Serialize)]
pub struct CodeMetadata {
    pub m: Option<usize>,
    pub generator: Option<BitString>,
    pub length: usize,
    pub size: usize,
    pub min_distance: Option<usize>,
    pub gc_content: Option<usize>,
    pub max_mu: usize,
    pub mu_bound: Option<usize>,
    pub threshold: Energy,
    pub codewords: Vec<CodewordEnergy>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodewordEnergy {
    pub sequence: DnaSequence,
    pub energy: Energy,
    pub has_structure: bool,
}

impl CodeMetadata {
    pub fn from_report(report: &VerificationReport) -> Self {
        let p = &report.properties;
        Self {
            m: report.construction.as_ref().map(|c| c.m),
            generator: report.construction.as_ref().map(|c| c.generator.clone()),
            length: p.length,
            size: p.size,
            min_distance: p.min_distance,
            gc_content: p.gc_content,
            max_mu: p.max_shift_match,
            mu_bound: report.construction.as_ref().map(|c| 1 << (c.m - 2)),
            threshold: report.threshold,
            codewords: report
                .codewords
                .iter()
                .map(|c| CodewordEnergy {
                    sequence: c.sequence.clone(),
                    energy: c.energy,
                    has_structure: c.has_structure,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::DEFAULT_STRUCTURE_THRESHOLD;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn m3_generator_from_example() {
        let code = simplex_code(3, Some(bits("1110100"))).unwrap();
        assert_eq!(code.nonzero_codewords().len(), 7);
        assert!(code.nonzero_codewords().iter().all(|c| c.weight() == 4));
        assert_eq!(code.nonzero_codewords()[1], bits("0111010"));
    }

    #[test]
    fn default_generators_are_simplex() {
        assert_eq!(default_generator(3).unwrap(), bits("1110100"));
        for m in MIN_DIMENSION..=MAX_DEFAULT_DIMENSION {
            let code = simplex_code(m, None).unwrap();
            assert_eq!(code.nonzero_codewords().len(), (1 << m) - 1);
        }
        assert!(default_generator(9).is_err());
    }

    #[test]
    fn m2_code() {
        let code = simplex_code(2, Some(bits("110"))).unwrap();
        let words: Vec<String> = code.nonzero_codewords().iter().map(|c| c.to_string()).collect();
        assert_eq!(words, ["110", "011", "101"]);
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(matches!(
            simplex_code(3, Some(bits("1111111"))),
            Err(Error::NotSimplex(_))
        ));
        assert!(matches!(
            simplex_code(3, Some(bits("111010"))),
            Err(Error::NotSimplex(_))
        ));
        // weight 4 but not a simplex word
        assert!(matches!(
            simplex_code(3, Some(bits("1111000"))),
            Err(Error::NotSimplex(_))
        ));
        assert!(simplex_code(1, None).is_err());
    }

    #[test]
    fn example_code() {
        let code = simplex_code(3, Some(bits("1110100"))).unwrap();
        let dna = build_dna_code(&code, Strategy::Sequential);
        assert_eq!(dna.len(), 49);
        let p = dna.properties();
        assert_eq!(p.min_distance, Some(4));
        assert_eq!(p.gc_content, Some(4));
        assert_eq!(p.max_shift_match, 2);
        for w in ["TGGCTCA", "GGGAGAA", "GGAGAAG"] {
            assert!(dna.contains(&w.parse().unwrap()), "{w}");
        }
        // (e, o) = (shift 1, shift 0)
        assert_eq!(dna.codewords()[7].to_string(), "TGGCTCA");
        assert_eq!(dna.codewords()[0].to_string(), "GGGAGAA");
    }

    #[test]
    fn verification_report() {
        let code = simplex_code(3, None).unwrap();
        let dna = build_dna_code(&code, Strategy::Sequential);
        let report = verify_code(
            &dna,
            &CodeBounds::simplex(3),
            &EnergyParams::default(),
            DEFAULT_STRUCTURE_THRESHOLD,
            Strategy::Sequential,
        );
        assert!(report.passed(), "{}", report.render_text());
        let text = report.render_text();
        assert!(text.contains("PASS\tmax_shift_match"));

        let strict = CodeBounds {
            max_shift_match: Some(1),
            ..CodeBounds::default()
        };
        let report = verify_code(&dna, &strict, &EnergyParams::default(), -2, Strategy::Sequential);
        assert!(!report.passed());
    }

    #[test]
    fn codes_from_words() {
        let words = vec!["ACGT".parse().unwrap(), "ACG".parse().unwrap()];
        assert!(DnaCode::from_codewords(words, Strategy::Sequential).is_err());
        assert!(DnaCode::from_codewords(vec![], Strategy::Sequential).is_err());
        let one = DnaCode::from_codewords(vec!["AAA".parse().unwrap()], Strategy::Sequential).unwrap();
        assert_eq!(one.properties().min_distance, None);
    }
}
