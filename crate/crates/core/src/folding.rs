//! Nussinov-style minimum free energy folding.
//!
//! Pair energies are independent of their neighbours. The table entry
//! `E(i, j)` is the minimum energy over non-crossing sets of complementary
//! pairings inside `q[i..=j]`.

use std::fmt::{self, Write as _};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::seq::{Base, DnaSequence};

pub type Energy = i64;
pub type Rational = Ratio<i64>;

/// Threshold at or below which a sequence is considered folded. A lone A-T
/// pairing (-1) stays above it.
pub const DEFAULT_STRUCTURE_THRESHOLD: Energy = -2;

/// Pairing energies for the two complementary pairs. Every other pair scores 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnergyParams {
    at: Energy,
    gc: Energy,
}

impl Default for EnergyParams {
    fn default() -> Self {
        Self { at: -1, gc: -2 }
    }
}

impl EnergyParams {
    pub fn new(at: Energy, gc: Energy) -> Result<Self> {
        if at > 0 || gc > 0 {
            return Err(Error::InvalidEnergy(format!(
                "pair energies must be non-positive (A-T {at}, G-C {gc})"
            )));
        }
        Ok(Self { at, gc })
    }

    /// -1 for every complementary pair.
    pub fn unit() -> Self {
        Self { at: -1, gc: -1 }
    }

    pub fn at(&self) -> Energy {
        self.at
    }

    pub fn gc(&self) -> Energy {
        self.gc
    }

    #[inline]
    pub fn alpha(&self, x: Base, y: Base) -> Energy {
        match (x, y) {
            (Base::A, Base::T) | (Base::T, Base::A) => self.at,
            (Base::G, Base::C) | (Base::C, Base::G) => self.gc,
            _ => 0,
        }
    }
}

/// Upper-triangular table of minimum free energies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyTable {
    n: usize,
    // Row-major n x n, only i <= j is meaningful.
    cells: Vec<Energy>,
}

impl EnergyTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// 1-based lookup. Returns `Some(0)` on the boundary `j = i - 1` and
    /// `None` further below the diagonal or out of range.
    pub fn get(&self, i: usize, j: usize) -> Option<Energy> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return None;
        }
        if j + 1 == i {
            return Some(0);
        }
        if j < i {
            return None;
        }
        Some(self.at(i - 1, j - 1))
    }

    // 0-based, treating anything below the diagonal as the zero boundary.
    #[inline]
    fn at(&self, i: usize, j: usize) -> Energy {
        if i > j {
            0
        } else {
            self.cells[i * self.n + j]
        }
    }

    /// `E(1, n)`.
    pub fn min_free_energy(&self) -> Energy {
        self.at(0, self.n - 1)
    }

    /// Grid laid out like a printed folding table: bases label rows and
    /// columns, the boundary sub-diagonal shows 0, cells below it show `*`.
    pub fn grid(&self) -> Vec<Vec<Option<Energy>>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn render_text(&self, q: &DnaSequence) -> String {
        self.render(q, Layout::Text)
    }

    pub fn render_csv(&self, q: &DnaSequence) -> String {
        self.render(q, Layout::Csv)
    }

    fn render(&self, q: &DnaSequence, layout: Layout) -> String {
        let cell = |s: &str| match layout {
            Layout::Text => format!("{s:>4}"),
            Layout::Csv => s.to_string(),
        };
        let sep = match layout {
            Layout::Text => "",
            Layout::Csv => ",",
        };
        let mut out = String::new();
        let header: Vec<String> = std::iter::once(cell(""))
            .chain(q.iter().map(|b| cell(&b.to_string())))
            .collect();
        out.push_str(header.join(sep).trim_end());
        out.push('\n');
        for (row, base) in self.grid().iter().zip(q.iter()) {
            let line: Vec<String> = std::iter::once(cell(&base.to_string()))
                .chain(row.iter().map(|v| match v {
                    Some(e) => cell(&e.to_string()),
                    None => cell("*"),
                }))
                .collect();
            out.push_str(&line.join(sep));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Layout {
    Text,
    Csv,
}

/// Fills the table diagonal by diagonal. O(n^3).
pub fn nussinov_table(q: &[Base], params: &EnergyParams) -> EnergyTable {
    let n = q.len();
    let mut table = EnergyTable {
        n,
        cells: vec![0; n * n],
    };
    for span in 1..n {
        for i in 0..n - span {
            let j = i + span;
            let mut best = table.at(i + 1, j - 1) + params.alpha(q[i], q[j]);
            for k in i + 1..=j {
                best = best.min(table.at(i, k - 1) + table.at(k, j));
            }
            table.cells[i * n + j] = best;
        }
    }
    table
}

pub fn min_free_energy(q: &[Base], params: &EnergyParams) -> Energy {
    if q.is_empty() {
        return 0;
    }
    nussinov_table(q, params).min_free_energy()
}

pub fn has_structure(q: &[Base], params: &EnergyParams, threshold: Energy) -> bool {
    min_free_energy(q, params) <= threshold
}

/// A set of disjoint, non-crossing complementary pairings (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecondaryStructure {
    len: usize,
    pairs: Vec<(usize, usize)>,
    energy: Energy,
}

impl SecondaryStructure {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn energy(&self) -> Energy {
        self.energy
    }

    /// Pairs as 1-based positions.
    pub fn pairs_one_based(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
    }

    pub fn dot_bracket(&self) -> String {
        let mut s = vec!['.'; self.len];
        for &(i, j) in &self.pairs {
            s[i] = '(';
            s[j] = ')';
        }
        s.into_iter().collect()
    }

    pub fn pair_list(&self) -> String {
        let mut out = String::new();
        for (i, (a, b)) in self.pairs_one_based().into_iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "({a},{b})");
        }
        out
    }
}

impl fmt::Display for SecondaryStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.dot_bracket(), self.energy)
    }
}

/// Recovers one minimum-energy structure from a filled table.
///
/// Ties prefer the closing pair `(i, j)` over a split; among splits the
/// smallest `k` wins.
pub fn traceback(
    table: &EnergyTable,
    q: &[Base],
    params: &EnergyParams,
) -> Result<SecondaryStructure> {
    if table.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: table.len(),
            right: q.len(),
        });
    }
    let mut pairs = Vec::new();
    let mut stack = Vec::new();
    if !q.is_empty() {
        stack.push((0usize, q.len() - 1));
    }
    while let Some((i, j)) = stack.pop() {
        if i >= j {
            continue;
        }
        let target = table.at(i, j);
        let alpha = params.alpha(q[i], q[j]);
        if table.at(i + 1, j - 1) + alpha == target {
            if alpha < 0 {
                pairs.push((i, j));
            }
            if i + 1 < j {
                stack.push((i + 1, j - 1));
            }
            continue;
        }
        let k = (i + 1..=j)
            .find(|&k| table.at(i, k - 1) + table.at(k, j) == target)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "table entry ({}, {}) is not reachable from its dependencies",
                    i + 1,
                    j + 1
                ))
            })?;
        stack.push((k, j));
        stack.push((i, k - 1));
    }
    pairs.sort_unstable();
    let energy = pairs.iter().map(|&(i, j)| params.alpha(q[i], q[j])).sum();
    Ok(SecondaryStructure {
        len: q.len(),
        pairs,
        energy,
    })
}

/// Result of folding one sequence.
#[derive(Debug, Clone)]
pub struct Fold {
    pub sequence: DnaSequence,
    pub table: EnergyTable,
    pub structure: SecondaryStructure,
}

impl Fold {
    pub fn energy(&self) -> Energy {
        self.table.min_free_energy()
    }
}

pub fn fold(q: &DnaSequence, params: &EnergyParams) -> Fold {
    let table = nussinov_table(q, params);
    let structure = traceback(&table, q, params).expect("table built from this sequence");
    Fold {
        sequence: q.clone(),
        table,
        structure,
    }
}

/// Folds every sequence; output order matches input order.
pub fn fold_batch(seqs: &[DnaSequence], params: &EnergyParams, strategy: Strategy) -> Vec<Fold> {
    exec::map(strategy, seqs, |q| fold(q, params))
}

/// Approximate free energy from weighted shift sums:
/// `kappa + sum_l gamma_l * sum_i alpha(q_i, q_{i+l})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearEnergyModel {
    #[serde(serialize_with = "ser_ratio")]
    kappa: Rational,
    #[serde(serialize_with = "ser_ratios")]
    gammas: Vec<Rational>,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

fn ser_ratios<S: serde::Serializer>(
    rs: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(|r| r.to_string()))
}

impl LinearEnergyModel {
    pub fn new(kappa: Rational, gammas: Vec<Rational>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::InvalidModel("at least one weight is required".into()));
        }
        if gammas.iter().any(|g| *g <= Rational::from_integer(0)) {
            return Err(Error::InvalidModel("weights must be positive".into()));
        }
        if gammas.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidModel("weights must be non-increasing".into()));
        }
        Ok(Self { kappa, gammas })
    }

    /// Adjacent pairs only, weight 1, no correction.
    pub fn adjacent() -> Self {
        Self {
            kappa: Rational::from_integer(0),
            gammas: vec![Rational::from_integer(1)],
        }
    }

    pub fn kappa(&self) -> Rational {
        self.kappa
    }

    pub fn gammas(&self) -> &[Rational] {
        &self.gammas
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }
}

impl Default for LinearEnergyModel {
    /// Four shifts with halving weights 1, 1/2, 1/4, 1/8 and kappa = 0.
    fn default() -> Self {
        Self {
            kappa: Rational::from_integer(0),
            gammas: (0..4).map(|l| Rational::new(1, 1 << l)).collect(),
        }
    }
}

/// Sum of `alpha(q_i, q_{i+shift})` over the valid positions.
pub fn shift_energy_sum(q: &[Base], shift: usize, params: &EnergyParams) -> Energy {
    q.iter()
        .zip(q.iter().skip(shift))
        .map(|(&a, &b)| params.alpha(a, b))
        .sum()
}

pub fn linear_energy(
    q: &[Base],
    model: &LinearEnergyModel,
    params: &EnergyParams,
) -> Result<Rational> {
    if model.depth() >= q.len() {
        return Err(Error::InvalidModel(format!(
            "depth {} needs a sequence longer than {}",
            model.depth(),
            q.len()
        )));
    }
    Ok(model
        .gammas
        .iter()
        .enumerate()
        .fold(model.kappa, |acc, (l, gamma)| {
            acc + gamma * Rational::from_integer(shift_energy_sum(q, l + 1, params))
        }))
}
