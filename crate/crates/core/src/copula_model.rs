//! The LP copula density, its singular value form, maximal correlation,
//! conditional profiles and maximum-spanning-tree products.
//!
//! A fitted [`CopulaModel`] is constant on the rectangles formed by the two
//! margins' cdf cells, so every integral below is an exact finite sum over
//! cells rather than a quadrature.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::comeans::{estimate_comeans, select, ComeanTensor, Penalty};
use crate::error::{Error, Result};
use crate::inference::{lpinfor, LpinforMode};
use crate::lp_basis::LpBasis;

/// How to fit a [`CopulaModel`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Requested basis degree per margin, capped at `unique − 1`. `None`
    /// uses `min(4, unique − 1)`.
    pub m: Option<usize>,
    /// Keep only the comeans chosen by `penalty`.
    pub denoise: bool,
    pub penalty: Penalty,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            m: None,
            denoise: true,
            penalty: Penalty::Bic,
        }
    }
}

impl FitOptions {
    pub fn with_degree(m: usize) -> Self {
        Self {
            m: Some(m),
            ..Self::default()
        }
    }

    pub fn raw(mut self) -> Self {
        self.denoise = false;
        self
    }

    fn basis(&self, sample: &[f64]) -> Result<LpBasis> {
        let margin = crate::margins::EmpiricalMargin::fit(sample)?;
        if margin.is_degenerate() {
            return Err(Error::ConstantVariable);
        }
        let cap = margin.unique_count() - 1;
        let m = match self.m {
            Some(0) => return Err(Error::ZeroDegree),
            Some(m) => m.min(cap),
            None => crate::lp_basis::default_degree(&margin),
        };
        LpBasis::build(margin, m)
    }
}

/// Bivariate LP copula density `1 + Σ LP[j,k] S_j(u) S_k(v)` over the
/// selected comeans.
#[derive(Debug, Clone)]
pub struct CopulaModel {
    basis_x: LpBasis,
    basis_y: LpBasis,
    comeans: ComeanTensor,
    /// Selected coefficients, row-major `m1 × m2`.
    coef: Vec<f64>,
    /// `Σ_j T_j(x_i) LP[j,·]` for every support point of X, row-major
    /// `K1 × m2`.
    proj: Vec<f64>,
    clip_norm: OnceLock<f64>,
}

impl CopulaModel {
    /// Fits bases, comeans and (optionally) the selection on a paired
    /// sample.
    pub fn fit(x: &[f64], y: &[f64], opts: &FitOptions) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: y.len(),
            });
        }
        let bx = opts.basis(x)?;
        let by = opts.basis(y)?;
        let t = estimate_comeans(&bx, &by, x, y)?;
        let t = if opts.denoise { select(&t, opts.penalty) } else { t };
        Self::from_parts(bx, by, t)
    }

    /// Assembles a model from already computed pieces. The tensor's degrees
    /// must match the bases.
    pub fn from_parts(basis_x: LpBasis, basis_y: LpBasis, comeans: ComeanTensor) -> Result<Self> {
        comeans.require_pair()?;
        if comeans.dims() != [basis_x.degree(), basis_y.degree()] {
            return Err(Error::BasisMismatch);
        }
        let (m1, m2) = (basis_x.degree(), basis_y.degree());
        let coef: Vec<f64> = comeans.selected_matrix()?.concat();
        let k1 = basis_x.margin().unique_count();
        let mut proj = vec![0.0; k1 * m2];
        for i in 0..k1 {
            let t = basis_x.row(i);
            let dst = &mut proj[i * m2..(i + 1) * m2];
            for j in 0..m1 {
                for (d, &c) in dst.iter_mut().zip(&coef[j * m2..(j + 1) * m2]) {
                    *d += t[j] * c;
                }
            }
        }
        Ok(Self {
            basis_x,
            basis_y,
            comeans,
            coef,
            proj,
            clip_norm: OnceLock::new(),
        })
    }

    pub fn basis_x(&self) -> &LpBasis {
        &self.basis_x
    }

    pub fn basis_y(&self) -> &LpBasis {
        &self.basis_y
    }

    pub fn comeans(&self) -> &ComeanTensor {
        &self.comeans
    }

    /// Selected coefficient `LP[j,k]` (zero when dropped), 1-based.
    pub fn coefficient(&self, j: usize, k: usize) -> f64 {
        let m2 = self.basis_y.degree();
        self.coef[(j - 1) * m2 + (k - 1)]
    }

    fn cell_density(&self, i: usize, k: usize) -> f64 {
        let m2 = self.basis_y.degree();
        let p = &self.proj[i * m2..(i + 1) * m2];
        1.0 + p
            .iter()
            .zip(self.basis_y.row(k))
            .map(|(a, b)| a * b)
            .sum::<f64>()
    }

    fn cells(&self, u: f64, v: f64) -> Result<(usize, usize)> {
        Ok((
            self.basis_x.margin().quantile_index(u)?,
            self.basis_y.margin().quantile_index(v)?,
        ))
    }

    /// Series value at `(u, v)`, `0 < u, v <= 1`. May be negative.
    pub fn density(&self, u: f64, v: f64) -> Result<f64> {
        let (i, k) = self.cells(u, v)?;
        Ok(self.cell_density(i, k))
    }

    /// `max(series, 0)` rescaled to integrate to one.
    pub fn clipped_density(&self, u: f64, v: f64) -> Result<f64> {
        let (i, k) = self.cells(u, v)?;
        Ok(self.cell_density(i, k).max(0.0) / self.clip_normalizer())
    }

    /// Exact integral of `max(series, 0)` over the unit square.
    pub fn clip_normalizer(&self) -> f64 {
        *self
            .clip_norm
            .get_or_init(|| self.cell_sum(|d| d.max(0.0)))
    }

    fn cell_sum(&self, f: impl Fn(f64) -> f64) -> f64 {
        let px = self.basis_x.margin().masses();
        let py = self.basis_y.margin().masses();
        px.iter()
            .enumerate()
            .map(|(i, &p)| {
                p * py
                    .iter()
                    .enumerate()
                    .map(|(k, &q)| q * f(self.cell_density(i, k)))
                    .sum::<f64>()
            })
            .sum()
    }

    /// Exact `∫∫ density`, which is one for any coefficients.
    pub fn integral(&self) -> f64 {
        self.cell_sum(|d| d)
    }

    /// Exact `∫∫ (density − 1)²`.
    pub fn squared_deviation(&self) -> f64 {
        self.cell_sum(|d| (d - 1.0) * (d - 1.0))
    }

    /// `∫ density(u, v) du` on every cell of `v`.
    pub fn marginal_integrals_u(&self) -> Vec<f64> {
        let px = self.basis_x.margin().masses();
        (0..self.basis_y.margin().unique_count())
            .map(|k| px.iter().enumerate().map(|(i, &p)| p * self.cell_density(i, k)).sum())
            .collect()
    }

    /// `∫ density(u, v) dv` on every cell of `u`.
    pub fn marginal_integrals_v(&self) -> Vec<f64> {
        let py = self.basis_y.margin().masses();
        (0..self.basis_x.margin().unique_count())
            .map(|i| py.iter().enumerate().map(|(k, &q)| q * self.cell_density(i, k)).sum())
            .collect()
    }

    /// Density on the lattice `(i/(L+1), j/(L+1))`, `i, j = 1..=L`; row `i`
    /// holds a fixed `u`.
    pub fn density_grid(&self, l: usize, clipped: bool) -> Result<Vec<Vec<f64>>> {
        if l < 1 {
            return Err(Error::InvalidParameter("grid size must be at least 1".into()));
        }
        let step = 1.0 / (l + 1) as f64;
        let ks: Vec<usize> = (1..=l)
            .map(|j| self.basis_y.margin().quantile_index(j as f64 * step))
            .collect::<Result<_>>()?;
        let norm = if clipped { self.clip_normalizer() } else { 1.0 };
        (1..=l)
            .into_par_iter()
            .map(|i| {
                let ci = self.basis_x.margin().quantile_index(i as f64 * step)?;
                Ok(ks
                    .iter()
                    .map(|&k| {
                        let d = self.cell_density(ci, k);
                        if clipped {
                            d.max(0.0) / norm
                        } else {
                            d
                        }
                    })
                    .collect())
            })
            .collect()
    }

    /// `E[T_k(Y) | X = Q(u)] = Σ_j S_j(u) LP[j,k]`, selected coefficients.
    pub fn conditional_profile(&self, k: usize, u: f64) -> Result<f64> {
        let m2 = self.basis_y.degree();
        if k == 0 || k > m2 {
            return Err(Error::IndexOutOfRange { index: k, degree: m2 });
        }
        let i = self.basis_x.margin().quantile_index(u)?;
        Ok(self.proj[i * m2 + k - 1])
    }

    /// Singular value decomposition of the selected comean matrix.
    pub fn spectral(&self) -> SpectralDecomposition {
        SpectralDecomposition::of(self.basis_x.degree(), self.basis_y.degree(), &self.coef)
    }
}

/// `LP = Σ_k λ_k a_k b_kᵀ`; component functions are
/// `φ_k(u) = Σ_j a_jk S_j(u)` and `ψ_k(v) = Σ_l b_lk S_l(v)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralDecomposition {
    /// Descending.
    pub singular_values: Vec<f64>,
    /// One unit vector of length `m1` per singular value.
    pub left: Vec<Vec<f64>>,
    /// One unit vector of length `m2` per singular value.
    pub right: Vec<Vec<f64>>,
}

impl SpectralDecomposition {
    /// Decomposes a row-major `m1 × m2` matrix. Each left vector is signed
    /// so that its largest-magnitude entry is positive.
    pub fn of(m1: usize, m2: usize, coef: &[f64]) -> Self {
        let svd = DMatrix::from_row_slice(m1, m2, coef).svd(true, true);
        let u = svd.u.expect("left vectors requested");
        let vt = svd.v_t.expect("right vectors requested");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let mut out = Self {
            singular_values: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
        };
        for r in order {
            let mut a: Vec<f64> = u.column(r).iter().copied().collect();
            let mut b: Vec<f64> = vt.row(r).iter().copied().collect();
            let lead = a
                .iter()
                .copied()
                .reduce(|best, x| if x.abs() > best.abs() { x } else { best })
                .unwrap_or(0.0);
            if lead < 0.0 {
                a.iter_mut().for_each(|x| *x = -*x);
                b.iter_mut().for_each(|x| *x = -*x);
            }
            out.singular_values.push(svd.singular_values[r]);
            out.left.push(a);
            out.right.push(b);
        }
        out
    }

    /// `Σ_k λ_k a_k b_kᵀ` as rows.
    pub fn reconstruct(&self) -> Vec<Vec<f64>> {
        let m1 = self.left.first().map_or(0, Vec::len);
        let m2 = self.right.first().map_or(0, Vec::len);
        let mut out = vec![vec![0.0; m2]; m1];
        for ((s, a), b) in self.singular_values.iter().zip(&self.left).zip(&self.right) {
            for (row, &aj) in out.iter_mut().zip(a) {
                for (cell, &bl) in row.iter_mut().zip(b) {
                    *cell += s * aj * bl;
                }
            }
        }
        out
    }
}

/// Result of [`max_correlation`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxCorrelation {
    /// Empirical correlation of `φ_1(F̃(x_i))` and `ψ_1(F̃(y_i))`.
    pub lpmax: f64,
    /// Leading singular value of the selected comean matrix.
    pub lambda1: f64,
    /// `(x, φ_1)` over the support of X.
    pub phi1: Vec<(f64, f64)>,
    /// `(y, ψ_1)` over the support of Y.
    pub psi1: Vec<(f64, f64)>,
}

fn loading_table(basis: &LpBasis, w: &[f64]) -> Vec<(f64, f64)> {
    basis
        .margin()
        .values()
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, basis.row(i).iter().zip(w).map(|(t, c)| t * c).sum()))
        .collect()
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (&x, &y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    sab / (saa * sbb).sqrt()
}

/// LP-maximal correlation and the first pair of optimal transformations.
/// `x` and `y` must lie in the support of the fitted margins.
pub fn max_correlation(model: &CopulaModel, x: &[f64], y: &[f64]) -> Result<MaxCorrelation> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::EmptySample);
    }
    let sd = model.spectral();
    let lambda1 = sd.singular_values.first().copied().unwrap_or(0.0);
    if lambda1 <= f64::EPSILON {
        return Err(Error::NoDependence);
    }
    let phi1 = loading_table(&model.basis_x, &sd.left[0]);
    let psi1 = loading_table(&model.basis_y, &sd.right[0]);
    let fx: Vec<f64> = model
        .basis_x
        .margin()
        .codes(x)?
        .into_iter()
        .map(|i| phi1[i].1)
        .collect();
    let gy: Vec<f64> = model
        .basis_y
        .margin()
        .codes(y)?
        .into_iter()
        .map(|k| psi1[k].1)
        .collect();
    let lpmax = pearson(&fx, &gy);
    if !lpmax.is_finite() {
        return Err(Error::NoDependence);
    }
    Ok(MaxCorrelation {
        lpmax,
        lambda1,
        phi1,
        psi1,
    })
}

/// One edge of a [`TreeCopula`].
#[derive(Debug, Clone)]
pub struct TreeEdge {
    pub i: usize,
    pub j: usize,
    pub model: CopulaModel,
    /// Raw LPINFOR statistic of the pair.
    pub weight: f64,
}

/// Product of bivariate LP copulas over a maximum spanning tree.
#[derive(Debug, Clone)]
pub struct TreeCopula {
    pub nodes: usize,
    pub edges: Vec<TreeEdge>,
}

impl TreeCopula {
    /// `Π_edges cop_ij(u_i, u_j)`, not renormalized.
    pub fn density(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.nodes {
            return Err(Error::Arity {
                expected: self.nodes,
                got: u.len(),
            });
        }
        self.edges
            .iter()
            .try_fold(1.0, |acc, e| Ok(acc * e.model.density(u[e.i], u[e.j])?))
    }
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Weights every pair by its raw LPINFOR, keeps a maximum spanning tree
/// (Kruskal; equal weights prefer the lexicographically smaller pair) and
/// fits a bivariate model on each tree edge.
pub fn fit_tree(samples: &[Vec<f64>], opts: &FitOptions) -> Result<TreeCopula> {
    let d = samples.len();
    if d < 2 {
        return Err(Error::TooFewVariables);
    }
    let bases: Vec<LpBasis> = samples.iter().map(|s| opts.basis(s)).collect::<Result<_>>()?;
    let mut candidates = Vec::with_capacity(d * (d - 1) / 2);
    for i in 0..d {
        for j in i + 1..d {
            let t = estimate_comeans(&bases[i], &bases[j], &samples[i], &samples[j])?;
            let w = lpinfor(&t, LpinforMode::Raw)?.statistic;
            candidates.push((i, j, w, t));
        }
    }
    candidates.sort_by(|a, b| b.2.total_cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let mut parent: Vec<usize> = (0..d).collect();
    let mut edges = Vec::with_capacity(d - 1);
    for (i, j, w, t) in candidates {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri == rj {
            continue;
        }
        parent[ri] = rj;
        let t = if opts.denoise { select(&t, opts.penalty) } else { t };
        let model = CopulaModel::from_parts(bases[i].clone(), bases[j].clone(), t)?;
        edges.push(TreeEdge {
            i,
            j,
            model,
            weight: w,
        });
        if edges.len() == d - 1 {
            break;
        }
    }
    Ok(TreeCopula { nodes: d, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn normal_pairs(n: usize, rho: f64, seed: u64) -> (Vec<f64>, Vec<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        for _ in 0..n {
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            x.push(a);
            y.push(rho * a + (1.0 - rho * rho).sqrt() * b);
        }
        (x, y)
    }

    fn bernoulli_copy() -> (Vec<f64>, Vec<f64>) {
        let x: Vec<f64> = (0..10).map(|i| f64::from(i % 2 == 0)).collect();
        (x.clone(), x)
    }

    fn independence_model() -> CopulaModel {
        let (x, y) = normal_pairs(100, 0.0, 1);
        let bx = LpBasis::from_sample(&x, 3).unwrap();
        let by = LpBasis::from_sample(&y, 3).unwrap();
        let t = ComeanTensor::from_coeffs(vec![3, 3], 100, vec![0.0; 9]).unwrap();
        CopulaModel::from_parts(bx, by, t).unwrap()
    }

    #[test]
    fn zero_comeans_give_unit_density() {
        let m = independence_model();
        for &(u, v) in &[(0.01, 0.5), (0.5, 0.5), (1.0, 1.0), (0.33, 0.99)] {
            assert_eq!(m.density(u, v).unwrap(), 1.0);
        }
        for row in m.density_grid(7, false).unwrap() {
            assert!(row.iter().all(|&d| d == 1.0));
        }
        for k in 1..=3 {
            assert_eq!(m.conditional_profile(k, 0.4).unwrap(), 0.0);
        }
    }

    #[test]
    fn bernoulli_copy_is_diagonal_checkerboard() {
        let (x, y) = bernoulli_copy();
        let m = CopulaModel::fit(&x, &y, &FitOptions::default()).unwrap();
        assert!((m.density(0.25, 0.25).unwrap() - 2.0).abs() < 1e-12);
        assert!((m.density(0.75, 0.75).unwrap() - 2.0).abs() < 1e-12);
        assert!(m.density(0.25, 0.75).unwrap().abs() < 1e-12);
        assert!(m.density(0.75, 0.25).unwrap().abs() < 1e-12);
    }

    #[test]
    fn bernoulli_copy_conditional_profile() {
        let (x, y) = bernoulli_copy();
        let m = CopulaModel::fit(&x, &y, &FitOptions::default()).unwrap();
        assert!((m.conditional_profile(1, 0.5).unwrap() + 1.0).abs() < 1e-12);
        assert!((m.conditional_profile(1, 0.2).unwrap() + 1.0).abs() < 1e-12);
        assert!((m.conditional_profile(1, 0.51).unwrap() - 1.0).abs() < 1e-12);
        assert!((m.conditional_profile(1, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(m.conditional_profile(2, 0.5).is_err());
    }

    #[test]
    fn out_of_range_unit_values_rejected() {
        let m = independence_model();
        assert!(m.density(0.0, 0.5).is_err());
        assert!(m.density(0.5, 1.5).is_err());
        assert!(m.density_grid(0, false).is_err());
    }

    #[test]
    fn spectral_of_diagonal() {
        let sd = SpectralDecomposition::of(2, 2, &[0.9, 0.0, 0.0, 0.5]);
        assert!((sd.singular_values[0] - 0.9).abs() < 1e-12);
        assert!((sd.singular_values[1] - 0.5).abs() < 1e-12);
        assert!((sd.left[0][0] - 1.0).abs() < 1e-12 && sd.left[0][1].abs() < 1e-12);
        assert!((sd.left[1][1] - 1.0).abs() < 1e-12 && sd.left[1][0].abs() < 1e-12);
        assert!((sd.right[0][0] - 1.0).abs() < 1e-12);
        assert!((sd.right[1][1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_of_rank_one() {
        let a = [0.3, -0.4];
        let b = [0.1, 0.2, -0.2];
        let coef: Vec<f64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        let sd = SpectralDecomposition::of(2, 3, &coef);
        assert!((sd.singular_values[0] - 0.5 * 0.3).abs() < 1e-12);
        assert!(sd.singular_values[1].abs() < 1e-12);
        // sign convention: largest entry of the left vector positive
        assert!(sd.left[0][1] > 0.0);
    }

    #[test]
    fn spectral_of_empty_selection_is_zero() {
        let sd = independence_model().spectral();
        assert!(sd.singular_values.iter().all(|&s| s == 0.0));
        assert_eq!(
            max_correlation(&independence_model(), &[0.0], &[0.0]).unwrap_err(),
            Error::NoDependence
        );
    }

    #[test]
    fn identical_variables_have_unit_max_correlation() {
        let x: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.37).sin() * 10.0 + i as f64).collect();
        let m = CopulaModel::fit(&x, &x, &FitOptions::with_degree(4)).unwrap();
        let mc = max_correlation(&m, &x, &x).unwrap();
        assert!(mc.lpmax >= 0.99, "{}", mc.lpmax);
        assert_eq!(mc.phi1.len(), 1000);
    }

    #[test]
    fn lpmax_matches_leading_singular_value_on_full_model() {
        let (x, y) = normal_pairs(400, 0.6, 3);
        let m = CopulaModel::fit(&x, &y, &FitOptions::with_degree(4).raw()).unwrap();
        let mc = max_correlation(&m, &x, &y).unwrap();
        assert!((mc.lpmax - mc.lambda1).abs() < 1e-9);
    }

    #[test]
    fn max_correlation_is_rank_invariant() {
        let (x, y) = normal_pairs(300, 0.5, 4);
        let opts = FitOptions::with_degree(4).raw();
        let m = CopulaModel::fit(&x, &y, &opts).unwrap();
        let mc = max_correlation(&m, &x, &y).unwrap();
        let x2: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        let y2: Vec<f64> = y.iter().map(|v| v * v * v + v).collect();
        let m2 = CopulaModel::fit(&x2, &y2, &opts).unwrap();
        let mc2 = max_correlation(&m2, &x2, &y2).unwrap();
        assert!((mc.lpmax - mc2.lpmax).abs() < 1e-9);
        for (a, b) in mc.phi1.iter().zip(&mc2.phi1) {
            assert!((a.1 - b.1).abs() < 1e-9);
        }
    }

    #[test]
    fn clipped_density_integrates_to_one() {
        let (x, y) = normal_pairs(200, 0.9, 5);
        let m = CopulaModel::fit(&x, &y, &FitOptions::with_degree(4)).unwrap();
        let z = m.clip_normalizer();
        assert!(z >= 1.0 - 1e-12);
        let px = m.basis_x().margin().masses().to_vec();
        let py = m.basis_y().margin().masses().to_vec();
        let cx = m.basis_x().margin().cdf().to_vec();
        let cy = m.basis_y().margin().cdf().to_vec();
        let mut total = 0.0;
        for (i, p) in px.iter().enumerate() {
            for (k, q) in py.iter().enumerate() {
                total += p * q * m.clipped_density(cx[i], cy[k]).unwrap();
            }
        }
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tree_of_two_is_the_pair_model() {
        let (x, y) = normal_pairs(300, 0.7, 6);
        let opts = FitOptions::with_degree(3);
        let tree = fit_tree(&[x.clone(), y.clone()], &opts).unwrap();
        let pair = CopulaModel::fit(&x, &y, &opts).unwrap();
        assert_eq!(tree.edges.len(), 1);
        for &(u, v) in &[(0.1, 0.2), (0.5, 0.5), (0.9, 0.3)] {
            assert_eq!(tree.density(&[u, v]).unwrap(), pair.density(u, v).unwrap());
        }
        assert!(fit_tree(&[x], &opts).is_err());
    }

    #[test]
    fn tree_follows_the_chain() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 1000;
        let x1: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let x2: Vec<f64> = x1
            .iter()
            .map(|&a| a + 0.6 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let x3: Vec<f64> = x2
            .iter()
            .map(|&a| a + 0.6 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let tree = fit_tree(&[x1, x2, x3], &FitOptions::with_degree(4)).unwrap();
        let mut pairs: Vec<(usize, usize)> = tree.edges.iter().map(|e| (e.i, e.j)).collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn independent_triple_tree_is_flat() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let cols: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..5000).map(|_| rng.random::<f64>()).collect())
            .collect();
        let tree = fit_tree(&cols, &FitOptions::default()).unwrap();
        assert_eq!(tree.edges.len(), 2);
        for e in &tree.edges {
            assert!(e.weight < 0.05);
        }
        for &u in &[[0.1, 0.5, 0.9], [0.7, 0.2, 0.4]] {
            assert_eq!(tree.density(&u).unwrap(), 1.0);
        }
    }

    fn sample_strategy() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (5usize..120, 2u32..12, any::<u64>()).prop_map(|(n, levels, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x: Vec<f64> = (0..n).map(|_| f64::from(rng.random_range(0..levels))).collect();
            let y: Vec<f64> = x
                .iter()
                .map(|&a| a + rng.random_range(0.0..3.0f64).floor())
                .collect();
            (x, y)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exact_integrals((x, y) in sample_strategy(), denoise in any::<bool>()) {
            let opts = FitOptions { m: Some(4), denoise, penalty: Penalty::Bic };
            let Ok(m) = CopulaModel::fit(&x, &y, &opts) else { return Ok(()); };
            prop_assert!((m.integral() - 1.0).abs() < 1e-9);
            let ss: f64 = m.comeans().entries().filter(|e| e.2).map(|e| e.1 * e.1).sum();
            prop_assert!((m.squared_deviation() - ss).abs() < 1e-9);
            for s in m.marginal_integrals_u().into_iter().chain(m.marginal_integrals_v()) {
                prop_assert!((s - 1.0).abs() < 1e-9);
            }
            for k in 1..=m.basis_y().degree() {
                let cdf = m.basis_x().margin().cdf();
                let masses = m.basis_x().margin().masses();
                let integral: f64 = cdf.iter().zip(masses)
                    .map(|(&c, &p)| p * m.conditional_profile(k, c).unwrap())
                    .sum();
                prop_assert!(integral.abs() < 1e-9);
            }
        }

        #[test]
        fn spectral_reconstructs((x, y) in sample_strategy()) {
            let Ok(m) = CopulaModel::fit(&x, &y, &FitOptions::with_degree(4).raw()) else {
                return Ok(());
            };
            let sd = m.spectral();
            let rec = sd.reconstruct();
            let orig = m.comeans().matrix().unwrap();
            let mut frob = 0.0;
            for (r, o) in rec.iter().zip(&orig) {
                for (a, b) in r.iter().zip(o) {
                    frob += (a - b) * (a - b);
                }
            }
            prop_assert!(frob.sqrt() < 1e-9);
            for w in sd.singular_values.windows(2) {
                prop_assert!(w[0] >= w[1]);
            }
            for v in sd.left.iter().chain(&sd.right) {
                let norm: f64 = v.iter().map(|a| a * a).sum();
                prop_assert!((norm.sqrt() - 1.0).abs() < 1e-9);
            }
        }
    }
}
