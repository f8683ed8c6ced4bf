//! Tie-aware empirical margins and the mid-distribution transform.
//!
//! Every downstream quantity is a function of ranks and tie structure only, so
//! a margin stores the sorted unique values together with their masses,
//! cumulative probabilities and mid-probabilities `F(x) - p(x)/2`. Nothing is
//! jittered: tied observations share one support point and one mid-rank.

use crate::error::{Error, Result};

/// Empirical distribution of one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMargin {
    values: Vec<f64>,
    counts: Vec<usize>,
    masses: Vec<f64>,
    cdf: Vec<f64>,
    midcdf: Vec<f64>,
    n: usize,
    cube_sum: f64,
}

// Maps -0.0 onto 0.0 so that exact equality and total ordering agree.
fn canonical(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl EmpiricalMargin {
    /// Fits the empirical margin of `sample`.
    ///
    /// Values are grouped by exact equality; masses are tie counts over `n`.
    pub fn fit(sample: &[f64]) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::EmptySample);
        }
        if sample.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut sorted: Vec<f64> = sample.iter().copied().map(canonical).collect();
        sorted.sort_by(f64::total_cmp);

        let mut values = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for x in sorted {
            match values.last() {
                Some(&last) if last == x => *counts.last_mut().unwrap() += 1,
                _ => {
                    values.push(x);
                    counts.push(1);
                }
            }
        }

        let n = sample.len();
        let nf = n as f64;
        let masses: Vec<f64> = counts.iter().map(|&c| c as f64 / nf).collect();
        let mut cdf = Vec::with_capacity(counts.len());
        let mut running = 0usize;
        for &c in &counts {
            running += c;
            cdf.push(running as f64 / nf);
        }
        let midcdf = cdf
            .iter()
            .zip(&masses)
            .map(|(&f, &p)| f - p / 2.0)
            .collect();
        let cube_sum = if counts.len() == 1 {
            1.0
        } else {
            masses.iter().map(|p| p * p * p).sum()
        };

        Ok(Self {
            values,
            counts,
            masses,
            cdf,
            midcdf,
            n,
            cube_sum,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }

    pub fn midcdf(&self) -> &[f64] {
        &self.midcdf
    }

    /// Sample size the margin was fitted on.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `Σ p(x)³`, the tie correction in the variance of the mid-distribution.
    pub fn cube_sum(&self) -> f64 {
        self.cube_sum
    }

    pub fn unique_count(&self) -> usize {
        self.values.len()
    }

    /// A margin with a single support point carries no rank information.
    pub fn is_degenerate(&self) -> bool {
        self.values.len() == 1
    }

    /// Position of `x` in the support, by exact equality.
    pub fn index_of(&self, x: f64) -> Result<usize> {
        let x = canonical(x);
        self.values
            .binary_search_by(|v| v.total_cmp(&x))
            .map_err(|_| Error::OutsideSupport(x))
    }

    /// Support positions of every observation in `sample`.
    pub fn codes(&self, sample: &[f64]) -> Result<Vec<usize>> {
        sample.iter().map(|&x| self.index_of(x)).collect()
    }

    /// Mid-distribution `F(x) - p(x)/2` at a support value.
    pub fn mid_distribution(&self, x: f64) -> Result<f64> {
        self.index_of(x).map(|i| self.midcdf[i])
    }

    /// Support position of the quantile `inf{x : F(x) >= u}`.
    pub fn quantile_index(&self, u: f64) -> Result<usize> {
        if !(u > 0.0 && u <= 1.0) {
            return Err(Error::UnitOutOfRange(u));
        }
        let i = self.cdf.partition_point(|&c| c < u);
        // cdf[last] is exactly 1, so u <= 1 always lands inside.
        Ok(i.min(self.values.len() - 1))
    }

    /// Left-continuous quantile `Q(u) = inf{x : F(x) >= u}` for `0 < u <= 1`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        self.quantile_index(u).map(|i| self.values[i])
    }

    /// The interval `(F(x_{i-1}), F(x_i)]` on which unit-interval step
    /// functions take the value belonging to support point `i`.
    pub fn cell(&self, i: usize) -> (f64, f64) {
        let lo = if i == 0 { 0.0 } else { self.cdf[i - 1] };
        (lo, self.cdf[i])
    }
}

/// Transforms paired observations to mid-distribution pseudo-observations.
pub fn pseudo_observations(x: &[f64], y: &[f64]) -> Result<Vec<(f64, f64)>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let mx = EmpiricalMargin::fit(x)?;
    let my = EmpiricalMargin::fit(y)?;
    let cx = mx.codes(x)?;
    let cy = my.codes(y)?;
    Ok(cx
        .into_iter()
        .zip(cy)
        .map(|(i, j)| (mx.midcdf[i], my.midcdf[j]))
        .collect())
}
