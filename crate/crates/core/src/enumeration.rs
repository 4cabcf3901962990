//! Exact counts of shift-constrained DNA sequences.
//!
//! `g_s(n)` is the number of length-`n` words with `mu_1 = ... = mu_s = 0`.
//! Three independent routes compute it: exhaustive enumeration, the
//! linear recurrence `g_s(n) = 2 g_s(n-1) + g_s(n-s)`, and expansion of the
//! rational generating function `4(x + ... + x^s) / (1 - 2x - x^s)`.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::seq::{gc_content, mu_unchecked, satisfies_shift_constraint, Base};
use crate::series::{BivariateSeries, PowerSeries};

pub const DEFAULT_ORACLE_CAP: usize = 12;
/// Enumeration indices are `u64`, two bits per base.
pub const MAX_ORACLE_CAP: usize = 31;
pub const ORACLE_CAP_ENV: &str = "OLIGOFORGE_ORACLE_CAP";

/// Reads the cap from `OLIGOFORGE_ORACLE_CAP`, falling back to the default.
pub fn oracle_cap_from_env() -> Result<usize> {
    match std::env::var(ORACLE_CAP_ENV) {
        Ok(v) => {
            let cap: usize = v.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("{ORACLE_CAP_ENV}={v:?} is not a length"))
            })?;
            if cap > MAX_ORACLE_CAP {
                return Err(Error::InvalidArgument(format!(
                    "{ORACLE_CAP_ENV}={cap} exceeds the hard limit {MAX_ORACLE_CAP}"
                )));
            }
            Ok(cap)
        }
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

/// Sequence properties the oracle can count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    /// `mu_i = 0` for `i = 1..=depth`.
    ShiftFree { depth: usize },
    /// `mu_1 = m`.
    Mu1Equals(usize),
    GcContent(usize),
    /// `mu_1 = 0` and GC-content `w`.
    Mu1ZeroGc(usize),
    /// No two positions hold complementary bases.
    NoComplementaryPair,
}

impl Predicate {
    pub fn test(&self, q: &[Base]) -> bool {
        match *self {
            Predicate::ShiftFree { depth } => satisfies_shift_constraint(q, depth),
            Predicate::Mu1Equals(m) => q.len() > 1 && mu_unchecked(q, 1) == m,
            Predicate::GcContent(w) => gc_content(q) == w,
            Predicate::Mu1ZeroGc(w) => {
                gc_content(q) == w && (q.len() < 2 || mu_unchecked(q, 1) == 0)
            }
            Predicate::NoComplementaryPair => {
                let has = |b: Base| q.contains(&b);
                !(has(Base::A) && has(Base::T)) && !(has(Base::C) && has(Base::G))
            }
        }
    }
}

/// Counts length-`n` sequences satisfying `pred` by visiting all `4^n`.
pub fn count_brute_force<F>(n: usize, cap: usize, strategy: Strategy, pred: F) -> Result<BigUint>
where
    F: Fn(&[Base]) -> bool + Sync + Send,
{
    if n > cap.min(MAX_ORACLE_CAP) {
        return Err(Error::OracleCapExceeded { n, cap });
    }
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let total = 1u64 << (2 * n);
    let count = exec::count_indices(strategy, total, |idx| {
        let mut buf = [Base::A; MAX_ORACLE_CAP];
        for (p, slot) in buf.iter_mut().take(n).enumerate() {
            *slot = Base::from_index((idx >> (2 * p)) as usize);
        }
        pred(&buf[..n])
    });
    Ok(BigUint::from(count))
}

pub fn count_predicate(n: usize, cap: usize, strategy: Strategy, pred: Predicate) -> Result<BigUint> {
    count_brute_force(n, cap, strategy, |q| pred.test(q))
}

/// Words with no complementary pair at all: `4 (2^n - 1)`.
pub fn g_boundary(n: usize) -> Result<BigUint> {
    if n <= 1 {
        return Err(Error::InvalidArgument(format!(
            "boundary count needs n > 1, got {n}"
        )));
    }
    Ok(BigUint::from(4u32) * ((BigUint::from(1u32) << n) - 1u32))
}

/// Counts `g_s(n)` for `n = 1..=len`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    s: usize,
    values: Vec<BigUint>,
}

impl CountTable {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn max_len(&self) -> usize {
        self.values.len()
    }

    /// `g_s(n)` for `1 <= n <= max_len`.
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tg\n");
        for (n, v) in self.iter() {
            out.push_str(&format!("{n}\t{v}\n"));
        }
        out
    }
}

fn check_depth(s: usize) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidArgument("shift depth must be at least 1".into()));
    }
    Ok(())
}

/// `g_s(1..=max_len)` from the recurrence, seeded by the boundary counts.
pub fn g_table(s: usize, max_len: usize) -> Result<CountTable> {
    check_depth(s)?;
    let mut values: Vec<BigUint> = Vec::with_capacity(max_len);
    for n in 1..=max_len {
        let v = if n == 1 {
            BigUint::from(4u32)
        } else if n <= s {
            g_boundary(n)?
        } else {
            (&values[n - 2] << 1usize) + &values[n - s - 1]
        };
        values.push(v);
    }
    Ok(CountTable { s, values })
}

pub fn g_recursive(s: usize, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("length must be at least 1".into()));
    }
    Ok(g_table(s, n)?.values.pop().expect("n >= 1"))
}

/// Coefficients of the generating function expanded in `x = 1/z`.
pub fn g_series(s: usize, max_len: usize) -> Result<CountTable> {
    check_depth(s)?;
    let order = max_len + 1;
    let mut numerator = vec![0i64; s + 1];
    numerator[1..].fill(4);
    let mut denominator = vec![0i64; s + 1];
    denominator[0] = 1;
    denominator[1] -= 2;
    denominator[s] -= 1;
    let series = PowerSeries::from_i64(&numerator, order)
        .mul(&PowerSeries::from_i64(&denominator, order).inverse()?);
    let values = (1..order)
        .map(|n| {
            series
                .coeff(n)
                .to_biguint()
                .ok_or_else(|| Error::InvalidArgument("negative series coefficient".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable { s, values })
}

/// `z^s - 2 z^(s-1) - 1`.
pub fn psi(s: usize, z: f64) -> f64 {
    z.powi(s as i32 - 1) * (z - 2.0) - 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthAnalysis {
    pub s: usize,
    pub rho: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub iterations: usize,
}

impl GrowthAnalysis {
    pub fn report(&self) -> String {
        format!(
            "s\t{}\nrho\t{:.12}\nresidual\t{:.3e}\ntolerance\t{:.3e}\niterations\t{}\n",
            self.s, self.rho, self.residual, self.tolerance, self.iterations
        )
    }
}

/// Bisects `psi_s` on `[2, 3]`, where `psi_s(2) = -1 < 0 < psi_s(3)`.
///
/// Stops once the bracket is narrower than `tol` and the residual at its
/// midpoint is within `tol`, or when the bracket stops shrinking in `f64`.
pub fn dominant_root(s: usize, tol: f64) -> Result<GrowthAnalysis> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!(
            "dominant root in (2, 3) needs s >= 2, got {s}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    let mut iterations = 0;
    loop {
        debug_assert!(psi(s, lo) < 0.0 && psi(s, hi) > 0.0);
        let mid = 0.5 * (lo + hi);
        let value = psi(s, mid);
        if (hi - lo <= tol && value.abs() <= tol) || mid <= lo || mid >= hi || value == 0.0 {
            return Ok(GrowthAnalysis {
                s,
                rho: mid,
                residual: value.abs(),
                tolerance: tol,
                iterations,
            });
        }
        if value < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
}

/// `g_s(n+1) / g_s(n)`.
pub fn growth_check(s: usize, n: usize) -> Result<f64> {
    let table = g_table(s, n + 1)?;
    let num = table.get(n + 1).and_then(|v| v.to_f64());
    let den = table.get(n).and_then(|v| v.to_f64());
    match (num, den) {
        (Some(a), Some(b)) if b > 0.0 => Ok(a / b),
        _ => Err(Error::InvalidArgument(format!("g_{s}({n}) is not a usable divisor"))),
    }
}

/// Numerical estimate of the constant in `g_s(n) ~ beta * rho^n`.
pub fn beta_estimate(s: usize, n: usize, rho: f64) -> Result<f64> {
    let g = g_recursive(s, n)?
        .to_f64()
        .ok_or_else(|| Error::InvalidArgument("count too large for f64".into()))?;
    Ok(g / rho.powi(n as i32))
}

/// Words of length `n` with exactly `m` adjacent complementary pairs:
/// `4 C(n-1, m) 3^(n-m-1)`.
pub fn count_mu1(n: usize, m: usize) -> Result<BigUint> {
    if n == 0 || m >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= m <= n - 1, got n = {n}, m = {m}"
        )));
    }
    let choose = num_integer::binomial(BigUint::from(n - 1), BigUint::from(m));
    Ok(BigUint::from(4u32) * choose * BigUint::from(3u32).pow((n - m - 1) as u32))
}

/// Counts by length and GC-content of words with `mu_1 = 0`, read off
/// `(1 - 2x/(1+x) - 2xy/(1+xy))^(-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcCounts {
    series: BivariateSeries,
}

impl GcCounts {
    pub fn max_len(&self) -> usize {
        self.series.order() - 1
    }

    /// Count for length `n`, GC-content `w`; 0 when `w > n`.
    pub fn get(&self, n: usize, w: usize) -> BigUint {
        self.series.coeff(n, w).to_biguint().unwrap_or_default()
    }

    pub fn series(&self) -> &BivariateSeries {
        &self.series
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tw\tcount\n");
        for n in 1..=self.max_len() {
            for w in 0..=n {
                out.push_str(&format!("{n}\t{w}\t{}\n", self.get(n, w)));
            }
        }
        out
    }
}

pub fn gj_coefficients(max_len: usize) -> Result<GcCounts> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let order = max_len + 1;
    // 2t / (1 + t) with t = x (AT letters) or t = xy (GC letters).
    let term = |w: usize| -> Result<BivariateSeries> {
        let mut neg_t = BivariateSeries::zero(order);
        neg_t.set(1, w, BigInt::from(-1));
        let mut two_t = BivariateSeries::zero(order);
        two_t.set(1, w, BigInt::from(2));
        Ok(two_t.mul(&BivariateSeries::geometric(&neg_t)?))
    };
    let u = term(0)?.add(&term(1)?);
    let series = BivariateSeries::geometric(&u)?;
    Ok(GcCounts { series })
}
