//! Data-adaptive orthonormal polynomials of the mid-rank score.
//!
//! The first function is the standardized mid-distribution
//!
//! ```text
//! T_1(x) = √12 (F_mid(x) − 1/2) / √(1 − Σ p³)
//! ```
//!
//! and `T_2, …, T_m` are the orthonormal polynomials in `T_1` under the
//! empirical measure, so `Σ p(x) T_j(x) = 0` and `Σ p(x) T_j(x) T_k(x) = δ_jk`.
//! The unit-interval form `S_j(u) = T_j(Q(u))` is a step function that is
//! constant on the cdf cell of each support point.
//!
//! Columns are produced by orthogonalizing `T_1 · T_k` against the constant
//! and all earlier columns (two passes). That vector has the same leading
//! power as `T_1^{k+1}` with a positive coefficient, so the result is the
//! Gram–Schmidt orthonormalization of the powers of `T_1`, including its sign,
//! without the conditioning problems of raw powers.

use crate::error::{Error, Result};
use crate::margins::EmpiricalMargin;

/// Relative residual norm below which a new column is treated as linearly
/// dependent on the previous ones.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Default degree used across the crate: `min(4, unique − 1)`.
pub fn default_degree(margin: &EmpiricalMargin) -> usize {
    4.min(margin.unique_count().saturating_sub(1))
}

/// Orthonormal LP polynomial table over the support of one margin.
#[derive(Debug, Clone, PartialEq)]
pub struct LpBasis {
    margin: EmpiricalMargin,
    requested: usize,
    degree: usize,
    // row-major: unique_count rows by `degree` columns
    table: Vec<f64>,
}

fn weighted_dot(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    p.iter().zip(a).zip(b).map(|((w, x), y)| w * x * y).sum()
}

impl LpBasis {
    /// Builds `T_1..T_m` on `margin`.
    ///
    /// Fails for a degenerate margin or when `m` exceeds `unique − 1`. If the
    /// columns become numerically dependent before reaching `m`, the basis is
    /// truncated and [`LpBasis::degree`] reports the effective degree.
    pub fn build(margin: EmpiricalMargin, m: usize) -> Result<Self> {
        if margin.is_degenerate() {
            return Err(Error::ConstantVariable);
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let k = margin.unique_count();
        if m > k - 1 {
            return Err(Error::DegreeTooLarge {
                requested: m,
                unique: k,
            });
        }
        let p = margin.masses();
        let scale = (12.0 / (1.0 - margin.cube_sum())).sqrt();
        let t1: Vec<f64> = margin.midcdf().iter().map(|&f| scale * (f - 0.5)).collect();

        let mut columns: Vec<Vec<f64>> = Vec::with_capacity(m);
        columns.push(t1.clone());
        while columns.len() < m {
            let prev = columns.last().unwrap();
            let mut v: Vec<f64> = t1.iter().zip(prev).map(|(a, b)| a * b).collect();
            let reference = weighted_dot(p, &v, &v).sqrt();
            for _ in 0..2 {
                let mean = weighted_dot(p, &v, &vec![1.0; k]);
                v.iter_mut().for_each(|x| *x -= mean);
                for col in &columns {
                    let c = weighted_dot(p, &v, col);
                    v.iter_mut().zip(col).for_each(|(x, t)| *x -= c * t);
                }
            }
            let norm = weighted_dot(p, &v, &v).sqrt();
            if norm.is_nan() || norm <= RANK_TOLERANCE * reference {
                break;
            }
            v.iter_mut().for_each(|x| *x /= norm);
            columns.push(v);
        }

        let degree = columns.len();
        let mut table = vec![0.0; k * degree];
        for (j, col) in columns.iter().enumerate() {
            for (i, &t) in col.iter().enumerate() {
                table[i * degree + j] = t;
            }
        }
        Ok(Self {
            margin,
            requested: m,
            degree,
            table,
        })
    }

    /// Fits the margin of `sample` and builds a degree-`m` basis on it.
    pub fn from_sample(sample: &[f64], m: usize) -> Result<Self> {
        Self::build(EmpiricalMargin::fit(sample)?, m)
    }

    /// Fits the margin of `sample` and uses [`default_degree`].
    pub fn from_sample_default(sample: &[f64]) -> Result<Self> {
        let margin = EmpiricalMargin::fit(sample)?;
        let m = default_degree(&margin);
        Self::build(margin, m)
    }

    pub fn margin(&self) -> &EmpiricalMargin {
        &self.margin
    }

    /// Effective degree (number of columns).
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn requested_degree(&self) -> usize {
        self.requested
    }

    pub fn is_truncated(&self) -> bool {
        self.degree < self.requested
    }

    /// `T_1..T_m` at support point `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.table[i * self.degree..(i + 1) * self.degree]
    }

    /// Column `j` (1-based) over the whole support.
    pub fn column(&self, j: usize) -> Result<Vec<f64>> {
        self.check_index(j)?;
        Ok((0..self.margin.unique_count())
            .map(|i| self.table[i * self.degree + j - 1])
            .collect())
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.degree {
            return Err(Error::IndexOutOfRange {
                index: j,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// `T_j(x)` for a support value `x`.
    pub fn eval_t(&self, j: usize, x: f64) -> Result<f64> {
        self.check_index(j)?;
        let i = self.margin.index_of(x)?;
        Ok(self.row(i)[j - 1])
    }

    /// `S_j(u) = T_j(Q(u))` for `0 < u <= 1`.
    pub fn eval_s(&self, j: usize, u: f64) -> Result<f64> {
        self.check_index(j)?;
        let i = self.margin.quantile_index(u)?;
        Ok(self.row(i)[j - 1])
    }

    /// All of `S_1(u)..S_m(u)`.
    pub fn eval_s_row(&self, u: f64) -> Result<&[f64]> {
        let i = self.margin.quantile_index(u)?;
        Ok(self.row(i))
    }

    /// Support positions of `sample`, checking that it is the sample the
    /// margin was fitted on (same size and same tie counts).
    pub fn codes_for(&self, sample: &[f64]) -> Result<Vec<usize>> {
        if sample.len() != self.margin.n() {
            return Err(Error::BasisMismatch);
        }
        let codes = self.margin.codes(sample).map_err(|_| Error::BasisMismatch)?;
        let mut counts = vec![0usize; self.margin.unique_count()];
        for &c in &codes {
            counts[c] += 1;
        }
        if counts != self.margin.counts() {
            return Err(Error::BasisMismatch);
        }
        Ok(codes)
    }

    /// `∫₀¹ S_j(u) S_k(u) du` by exact integration over cdf cells; index 0
    /// stands for the constant function.
    pub fn unit_inner_product(&self, j: usize, k: usize) -> Result<f64> {
        let pick = |idx: usize, i: usize| -> f64 {
            if idx == 0 {
                1.0
            } else {
                self.row(i)[idx - 1]
            }
        };
        for idx in [j, k] {
            if idx != 0 {
                self.check_index(idx)?;
            }
        }
        Ok((0..self.margin.unique_count())
            .map(|i| {
                let (lo, hi) = self.margin.cell(i);
                (hi - lo) * pick(j, i) * pick(k, i)
            })
            .sum())
    }
}
