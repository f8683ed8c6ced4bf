//! LP-comeans: cross-moments of LP scores, and their Schwarz-criterion
//! denoising.
//!
//! For a pair, `LP[j,k] = (1/n) Σ_i T_j(x_i) T_k(y_i)` for `j, k >= 1`. For a
//! triple the tensor is indexed from 0, with `T_0 ≡ 1`, so that entries with
//! at least two nonzero indices are the interaction coefficients of the
//! trivariate series. Under independence every comean is approximately
//! `N(0, 1/n)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp_basis::LpBasis;

/// Null standard deviation of a single comean, `1/√n`.
pub fn comean_null_sd(n: usize) -> f64 {
    1.0 / (n as f64).sqrt()
}

/// Penalty used when ranking comeans by magnitude and keeping a prefix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Penalty {
    /// `Σ_{i<=k} c²_(i) − log(n)·k/n`.
    #[default]
    Bic,
    /// `Σ_{i<=k} c²_(i) − 2k/n`.
    Aic,
    /// `Σ_{i<=k} c²_(i) − w·k/n` for a caller-chosen weight `w`.
    Weight(f64),
}

impl Penalty {
    fn per_term(self, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            Penalty::Bic => nf.ln() / nf,
            Penalty::Aic => 2.0 / nf,
            Penalty::Weight(w) => w / nf,
        }
    }
}

/// Dense 2- or 3-way array of LP-comeans with a selection mask.
#[derive(Debug, Clone, PartialEq)]
pub struct ComeanTensor {
    dims: Vec<usize>,
    n: usize,
    coeffs: Vec<f64>,
    selected: Vec<bool>,
}

/// Wire form of a [`ComeanTensor`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComeanJson {
    pub dims: Vec<usize>,
    pub n: usize,
    pub coeffs: Vec<f64>,
    pub selected: Vec<bool>,
    pub null_sd: f64,
}

impl ComeanTensor {
    /// Builds a tensor from explicit coefficients (row-major over
    /// [`ComeanTensor::shape`]), with every eligible entry selected.
    pub fn from_coeffs(dims: Vec<usize>, n: usize, coeffs: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&dims.len()) {
            return Err(Error::Arity {
                expected: 2,
                got: dims.len(),
            });
        }
        if dims.contains(&0) {
            return Err(Error::ZeroDegree);
        }
        let mut t = Self {
            dims,
            n,
            coeffs: Vec::new(),
            selected: Vec::new(),
        };
        let len: usize = t.shape().iter().product();
        if coeffs.len() != len {
            return Err(Error::LengthMismatch {
                left: coeffs.len(),
                right: len,
            });
        }
        t.coeffs = coeffs;
        t.selected = (0..len).map(|f| t.is_eligible_flat(f)).collect();
        Ok(t)
    }

    /// Builds a 2-way tensor from rows of a matrix.
    pub fn from_matrix(rows: &[Vec<f64>], n: usize) -> Result<Self> {
        let m1 = rows.len();
        let m2 = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m2) {
            return Err(Error::InvalidParameter("ragged comean matrix".into()));
        }
        Self::from_coeffs(vec![m1, m2], n, rows.concat())
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    /// Basis degrees `(m_1, …, m_d)`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn null_sd(&self) -> f64 {
        comean_null_sd(self.n)
    }

    /// Array extents: `dims` for pairs, `dims + 1` for triples (index 0 is
    /// the constant factor).
    pub fn shape(&self) -> Vec<usize> {
        let extra = usize::from(self.arity() == 3);
        self.dims.iter().map(|m| m + extra).collect()
    }

    /// First valid index along every axis.
    pub fn index_base(&self) -> usize {
        usize::from(self.arity() == 2)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn selected_mask(&self) -> &[bool] {
        &self.selected
    }

    fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let shape = self.shape();
        let base = self.index_base();
        let mut idx = vec![0; shape.len()];
        for axis in (0..shape.len()).rev() {
            idx[axis] = flat % shape[axis] + base;
            flat /= shape[axis];
        }
        idx
    }

    fn flatten(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                got: idx.len(),
            });
        }
        let base = self.index_base();
        let mut flat = 0;
        for ((&i, &extent), &m) in idx.iter().zip(&self.shape()).zip(&self.dims) {
            if i < base || i > m {
                return Err(Error::IndexOutOfRange { index: i, degree: m });
            }
            flat = flat * extent + (i - base);
        }
        Ok(flat)
    }

    fn is_eligible_flat(&self, flat: usize) -> bool {
        self.arity() == 2 || self.unflatten(flat).iter().filter(|&&i| i > 0).count() >= 2
    }

    /// Coefficient at LP indices (1-based for pairs, 0-based for triples).
    pub fn get(&self, idx: &[usize]) -> Result<f64> {
        self.flatten(idx).map(|f| self.coeffs[f])
    }

    pub fn is_selected(&self, idx: &[usize]) -> Result<bool> {
        self.flatten(idx).map(|f| self.selected[f])
    }

    /// Coefficient if selected, zero otherwise.
    pub fn selected_value(&self, idx: &[usize]) -> Result<f64> {
        self.flatten(idx)
            .map(|f| if self.selected[f] { self.coeffs[f] } else { 0.0 })
    }

    /// Model coefficients `(indices, value, selected)`; for triples only the
    /// interaction entries (two or more nonzero indices) are listed.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, f64, bool)> + '_ {
        (0..self.coeffs.len())
            .filter(|&f| self.is_eligible_flat(f))
            .map(|f| (self.unflatten(f), self.coeffs[f], self.selected[f]))
    }

    /// Number of retained model coefficients.
    pub fn selected_count(&self) -> usize {
        self.selected.iter().filter(|&&s| s).count()
    }

    /// Rows of a 2-way tensor, all coefficients.
    pub fn matrix(&self) -> Result<Vec<Vec<f64>>> {
        self.require_pair()?;
        Ok(self.coeffs.chunks(self.dims[1]).map(<[f64]>::to_vec).collect())
    }

    /// Rows of a 2-way tensor with unselected entries zeroed.
    pub fn selected_matrix(&self) -> Result<Vec<Vec<f64>>> {
        self.require_pair()?;
        Ok(self
            .coeffs
            .iter()
            .zip(&self.selected)
            .map(|(&c, &s)| if s { c } else { 0.0 })
            .collect::<Vec<_>>()
            .chunks(self.dims[1])
            .map(<[f64]>::to_vec)
            .collect())
    }

    pub(crate) fn require_pair(&self) -> Result<()> {
        if self.arity() != 2 {
            return Err(Error::Arity {
                expected: 2,
                got: self.arity(),
            });
        }
        Ok(())
    }

    /// Swaps the roles of the two variables of a 2-way tensor.
    pub fn transpose(&self) -> Result<Self> {
        self.require_pair()?;
        let (m1, m2) = (self.dims[0], self.dims[1]);
        let mut coeffs = vec![0.0; m1 * m2];
        let mut selected = vec![false; m1 * m2];
        for j in 0..m1 {
            for k in 0..m2 {
                coeffs[k * m1 + j] = self.coeffs[j * m2 + k];
                selected[k * m1 + j] = self.selected[j * m2 + k];
            }
        }
        Ok(Self {
            dims: vec![m2, m1],
            n: self.n,
            coeffs,
            selected,
        })
    }

    /// Marks every model coefficient as selected.
    pub fn with_all_selected(mut self) -> Self {
        self.selected = (0..self.coeffs.len())
            .map(|f| self.is_eligible_flat(f))
            .collect();
        self
    }

    pub fn to_json(&self) -> ComeanJson {
        ComeanJson {
            dims: self.dims.clone(),
            n: self.n,
            coeffs: self.coeffs.clone(),
            selected: self.selected.clone(),
            null_sd: self.null_sd(),
        }
    }

    pub fn from_json(json: &ComeanJson) -> Result<Self> {
        let mut t = Self::from_coeffs(json.dims.clone(), json.n, json.coeffs.clone())?;
        if json.selected.len() != t.coeffs.len() {
            return Err(Error::LengthMismatch {
                left: json.selected.len(),
                right: t.coeffs.len(),
            });
        }
        t.selected = json.selected.clone();
        Ok(t)
    }
}

/// Empirical comeans of a pair; every entry starts selected.
pub fn estimate_comeans(
    basis_x: &LpBasis,
    basis_y: &LpBasis,
    x: &[f64],
    y: &[f64],
) -> Result<ComeanTensor> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let cx = basis_x.codes_for(x)?;
    let cy = basis_y.codes_for(y)?;
    let (m1, m2) = (basis_x.degree(), basis_y.degree());
    let mut acc = vec![0.0; m1 * m2];
    for (&i, &k) in cx.iter().zip(&cy) {
        let rx = basis_x.row(i);
        let ry = basis_y.row(k);
        for (j, &tx) in rx.iter().enumerate() {
            let dst = &mut acc[j * m2..(j + 1) * m2];
            for (a, &ty) in dst.iter_mut().zip(ry) {
                *a += tx * ty;
            }
        }
    }
    let n = x.len();
    let nf = n as f64;
    acc.iter_mut().for_each(|a| *a /= nf);
    ComeanTensor::from_coeffs(vec![m1, m2], n, acc)
}

/// Empirical trivariate comeans `E[T_j(X1) T_k(X2) T_l(X3)]`, indices from 0
/// with `T_0 ≡ 1`.
pub fn estimate_comeans_3(bases: [&LpBasis; 3], samples: [&[f64]; 3]) -> Result<ComeanTensor> {
    let n = samples[0].len();
    for s in &samples[1..] {
        if s.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: s.len(),
            });
        }
    }
    let codes: Vec<Vec<usize>> = bases
        .iter()
        .zip(samples)
        .map(|(b, s)| b.codes_for(s))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = bases.iter().map(|b| b.degree()).collect();
    let shape: Vec<usize> = dims.iter().map(|m| m + 1).collect();
    let mut acc = vec![0.0; shape.iter().product()];
    let extended = |b: &LpBasis, code: usize| -> Vec<f64> {
        std::iter::once(1.0).chain(b.row(code).iter().copied()).collect()
    };
    for ((&ia, &ib), &ic) in codes[0].iter().zip(&codes[1]).zip(&codes[2]) {
        let a = extended(bases[0], ia);
        let b = extended(bases[1], ib);
        let c = extended(bases[2], ic);
        let mut flat = 0;
        for &ta in &a {
            for &tb in &b {
                let tab = ta * tb;
                for &tc in &c {
                    acc[flat] += tab * tc;
                    flat += 1;
                }
            }
        }
    }
    let nf = n as f64;
    acc.iter_mut().for_each(|v| *v /= nf);
    ComeanTensor::from_coeffs(dims, n, acc)
}

/// Keeps the prefix of comeans, ranked by decreasing magnitude, that
/// maximizes `Σ c² − penalty·k`. Keeps nothing when the maximum is not
/// positive. Equal magnitudes are ranked by lexicographic index order.
pub fn select(t: &ComeanTensor, penalty: Penalty) -> ComeanTensor {
    let mut order: Vec<usize> = (0..t.coeffs.len())
        .filter(|&f| t.is_eligible_flat(f))
        .collect();
    // stable sort keeps lexicographic order among equal magnitudes
    order.sort_by(|&a, &b| t.coeffs[b].abs().total_cmp(&t.coeffs[a].abs()));

    let per_term = penalty.per_term(t.n);
    let mut best_k = 0;
    let mut best = 0.0;
    let mut sum = 0.0;
    for (k, &f) in order.iter().enumerate() {
        sum += t.coeffs[f] * t.coeffs[f];
        let score = sum - per_term * (k + 1) as f64;
        if score > best {
            best = score;
            best_k = k + 1;
        }
    }
    let mut out = t.clone();
    out.selected = vec![false; t.coeffs.len()];
    for &f in &order[..best_k] {
        out.selected[f] = true;
    }
    out
}

/// [`select`] with the Schwarz penalty `log(n)/n` per coefficient.
pub fn select_bic(t: &ComeanTensor) -> ComeanTensor {
    select(t, Penalty::Bic)
}
