//! Truncated formal power series over exact integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `sum_{k < order} c_k x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    /// Builds a series truncated to `order` terms, padding with zeros.
    pub fn new(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order, BigInt::zero());
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse; the constant term must be a unit (+-1).
    pub fn inverse(&self) -> Result<PowerSeries> {
        let c0 = self.coeff(0);
        if c0.is_zero() || !(c0.is_one() || (-&c0).is_one()) {
            return Err(Error::InvalidArgument(
                "series inverse needs a constant term of +-1".into(),
            ));
        }
        let order = self.order();
        let mut inv: Vec<BigInt> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = if k == 0 { BigInt::one() } else { BigInt::zero() };
            for j in 1..=k {
                acc -= &self.coeffs[j] * &inv[k - j];
            }
            // c0 is +-1, so dividing equals multiplying.
            inv.push(acc * &c0);
        }
        Ok(PowerSeries { coeffs: inv })
    }
}

/// Bivariate series `sum c_{n,w} x^n y^w` with `n < order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    // rows[n][w], w in 0..=max_w
    rows: Vec<Vec<BigInt>>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            rows: (0..order).map(|n| vec![BigInt::zero(); n + 1]).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.rows[0][0] = BigInt::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Coefficient of `x^n y^w`. Zero outside the stored range.
    pub fn coeff(&self, n: usize, w: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(w))
            .cloned()
            .unwrap_or_default()
    }

    /// Sets a coefficient. Only `w <= n` is representable.
    pub fn set(&mut self, n: usize, w: usize, value: BigInt) {
        assert!(w <= n, "y-degree may not exceed x-degree");
        if n < self.order() {
            self.rows[n][w] = value;
        }
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn add(&self, other: &BivariateSeries) -> BivariateSeries {
        let order = self.order().min(other.order());
        BivariateSeries {
            rows: (0..order)
                .map(|n| {
                    self.rows[n]
                        .iter()
                        .zip(&other.rows[n])
                        .map(|(a, b)| a + b)
                        .collect()
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &BivariateSeries) -> BivariateSeries {
        let order = self.order().min(other.order());
        let mut out = BivariateSeries::zero(order);
        for n1 in 0..order {
            for (w1, a) in self.rows[n1].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for n2 in 0..order - n1 {
                    for (w2, b) in other.rows[n2].iter().enumerate() {
                        if !b.is_zero() {
                            out.rows[n1 + n2][w1 + w2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// `1 / (1 - u)` as `1 + u + u^2 + ...`; `u` must have no constant term.
    pub fn geometric(u: &BivariateSeries) -> Result<BivariateSeries> {
        if !u.coeff(0, 0).is_zero() {
            return Err(Error::InvalidArgument(
                "geometric expansion needs a series without constant term".into(),
            ));
        }
        // Horner: 1 + u(1 + u(1 + ...)), exact to order since u^order vanishes.
        let one = BivariateSeries::one(u.order());
        let mut acc = one.clone();
        for _ in 1..u.order() {
            acc = one.add(&u.mul(&acc));
        }
        Ok(acc)
    }
}
