//! Chi-square dependence and exchangeability tests built on LP-comeans, and
//! the generalized Spearman correlation.
//!
//! Under independence `√n·LP[j,k]` is asymptotically standard normal, so
//! `n·Σ LP[j,k]²` over an `m1 × m2` matrix is `χ²(m1·m2)`. Under
//! exchangeability `LP[j,k] − LP[k,j]` is asymptotically `N(0, 2/n)`, which
//! makes `n·½Σ_{j<k}(LP[j,k] − LP[k,j])²` a `χ²(m(m−1)/2)`.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::comeans::{estimate_comeans, ComeanTensor};
use crate::error::{Error, Result};
use crate::lp_basis::LpBasis;

/// Sample sizes below this are flagged as too small for the asymptotic
/// calibration.
pub const SMALL_SAMPLE: usize = 30;

/// One term of a test statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub index: Vec<usize>,
    pub value: f64,
}

/// Outcome of a chi-square calibrated test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    /// `n · statistic`.
    pub scaled: f64,
    pub dof: usize,
    pub p_value: f64,
    pub components: Vec<Component>,
    /// Set when `n` is below [`SMALL_SAMPLE`].
    pub small_sample: bool,
}

/// Which comeans enter LPINFOR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LpinforMode {
    /// All `m1·m2` comeans against `χ²(m1·m2)`.
    #[default]
    Raw,
    /// Only the selected comeans. With `k` selected terms the p-value is
    /// `½·P(χ²_k > n·statistic)`; for `k = 1` this is the one-sided normal
    /// tail `1 − Φ(√n·|LP|)` of the single retained comean.
    Denoised,
}

/// Upper tail of `χ²(dof)`; one when there are no degrees of freedom.
pub fn chi_square_sf(x: f64, dof: usize) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    let dist = ChiSquared::new(dof as f64).expect("positive dof");
    dist.sf(x.max(0.0)).clamp(0.0, 1.0)
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal")
}

/// LPINFOR: sum of squared comeans with its chi-square p-value.
pub fn lpinfor(t: &ComeanTensor, mode: LpinforMode) -> Result<TestResult> {
    t.require_pair()?;
    let components: Vec<Component> = t
        .entries()
        .filter(|(_, _, sel)| mode == LpinforMode::Raw || *sel)
        .map(|(index, value, _)| Component { index, value })
        .collect();
    let statistic: f64 = components.iter().map(|c| c.value * c.value).sum();
    let scaled = t.n() as f64 * statistic;
    let (dof, p_value) = match mode {
        LpinforMode::Raw => {
            let dof = t.dims()[0] * t.dims()[1];
            (dof, chi_square_sf(scaled, dof))
        }
        LpinforMode::Denoised => {
            let dof = components.len();
            let p = if dof == 0 { 1.0 } else { 0.5 * chi_square_sf(scaled, dof) };
            (dof, p)
        }
    };
    Ok(TestResult {
        statistic,
        scaled,
        dof,
        p_value,
        components,
        small_sample: t.n() < SMALL_SAMPLE,
    })
}

/// LPSym: `½ Σ_{j<k} (LP[j,k] − LP[k,j])²` over all comeans of a square
/// matrix, against `χ²(m(m−1)/2)`.
pub fn lpsym(t: &ComeanTensor) -> Result<TestResult> {
    t.require_pair()?;
    let (m1, m2) = (t.dims()[0], t.dims()[1]);
    if m1 != m2 {
        return Err(Error::NotSquare { rows: m1, cols: m2 });
    }
    let mut components = Vec::with_capacity(m1 * (m1.saturating_sub(1)) / 2);
    for j in 1..=m1 {
        for k in j + 1..=m1 {
            let d = t.get(&[j, k])? - t.get(&[k, j])?;
            components.push(Component {
                index: vec![j, k],
                value: d,
            });
        }
    }
    let statistic = 0.5 * components.iter().map(|c| c.value * c.value).sum::<f64>();
    let scaled = t.n() as f64 * statistic;
    let dof = components.len();
    Ok(TestResult {
        statistic,
        scaled,
        dof,
        p_value: chi_square_sf(scaled, dof),
        components,
        small_sample: t.n() < SMALL_SAMPLE,
    })
}

/// Generalized Spearman correlation `LP[1,1]` with normal p-values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpearmanResult {
    pub lp11: f64,
    /// `√n · lp11`.
    pub z: f64,
    /// `1 − Φ(z)`.
    pub p_one_sided: f64,
    /// `2(1 − Φ(|z|))`.
    pub p_two_sided: f64,
    pub n: usize,
}

/// `LP[1,1]` from degree-one bases: the correlation of the two mid-rank
/// scores, valid with any amount of ties.
pub fn generalized_spearman(x: &[f64], y: &[f64]) -> Result<SpearmanResult> {
    let bx = LpBasis::from_sample(x, 1)?;
    let by = LpBasis::from_sample(y, 1)?;
    let t = estimate_comeans(&bx, &by, x, y)?;
    let lp11 = t.get(&[1, 1])?;
    let n = t.n();
    let z = (n as f64).sqrt() * lp11;
    let nd = std_normal();
    Ok(SpearmanResult {
        lp11,
        z,
        p_one_sided: nd.sf(z),
        p_two_sided: (2.0 * nd.sf(z.abs())).min(1.0),
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comeans::select_bic;
    use proptest::prelude::*;

    fn pair(x: &[f64], y: &[f64], m: usize) -> ComeanTensor {
        let bx = LpBasis::from_sample(x, m).unwrap();
        let by = LpBasis::from_sample(y, m).unwrap();
        estimate_comeans(&bx, &by, x, y).unwrap()
    }

    #[test]
    fn zero_matrix_is_not_significant() {
        let t = ComeanTensor::from_coeffs(vec![3, 3], 50, vec![0.0; 9]).unwrap();
        for (mode, t) in [(LpinforMode::Raw, t.clone()), (LpinforMode::Denoised, select_bic(&t))] {
            let r = lpinfor(&t, mode).unwrap();
            assert_eq!(r.statistic, 0.0);
            assert_eq!(r.p_value, 1.0);
        }
        let s = lpsym(&t).unwrap();
        assert_eq!((s.statistic, s.p_value, s.dof), (0.0, 1.0, 3));
    }

    #[test]
    fn symmetric_matrix_has_zero_asymmetry() {
        let t = ComeanTensor::from_matrix(
            &[vec![0.5, 0.1, -0.2], vec![0.1, 0.3, 0.05], vec![-0.2, 0.05, 0.0]],
            100,
        )
        .unwrap();
        let s = lpsym(&t).unwrap();
        assert_eq!(s.statistic, 0.0);
        assert_eq!(s.p_value, 1.0);
    }

    #[test]
    fn lpsym_hand_value() {
        let t = ComeanTensor::from_matrix(&[vec![0.5, 0.3], vec![0.1, 0.2]], 100).unwrap();
        let s = lpsym(&t).unwrap();
        assert!((s.statistic - 0.02).abs() < 1e-15);
        assert!((s.scaled - 2.0).abs() < 1e-12);
        assert_eq!(s.dof, 1);
        // P(χ²₁ > 2) = 2(1 − Φ(√2))
        let expect = 2.0 * std_normal().sf(2f64.sqrt());
        // P(χ²₁ > 2) = 0.15729920705028513
        assert!((s.p_value - 0.157_299_207_050_285_13).abs() < 1e-12);
        assert!((s.p_value - expect).abs() < 1e-10);
    }

    #[test]
    fn lpsym_rejects_rectangular() {
        let t = ComeanTensor::from_coeffs(vec![2, 3], 10, vec![0.0; 6]).unwrap();
        assert_eq!(lpsym(&t).unwrap_err(), Error::NotSquare { rows: 2, cols: 3 });
    }

    #[test]
    fn raw_lpinfor_hand_value() {
        let t = ComeanTensor::from_matrix(&[vec![0.3, 0.0], vec![0.0, 0.4]], 25).unwrap();
        let r = lpinfor(&t, LpinforMode::Raw).unwrap();
        assert!((r.statistic - 0.25).abs() < 1e-15);
        assert_eq!(r.scaled, 25.0 * r.statistic);
        assert_eq!(r.dof, 4);
        // P(χ²₄ > x) = e^{-x/2}(1 + x/2)
        let x = r.scaled;
        let expect = (-x / 2.0).exp() * (1.0 + x / 2.0);
        assert!((r.p_value - expect).abs() < 1e-12);
        assert!(r.small_sample);
    }

    #[test]
    fn single_denoised_term_is_one_sided_normal() {
        let t = ComeanTensor::from_matrix(&[vec![-0.6, 0.01], vec![0.02, 0.0]], 15).unwrap();
        let t = select_bic(&t);
        let r = lpinfor(&t, LpinforMode::Denoised).unwrap();
        assert_eq!(r.dof, 1);
        let expect = std_normal().sf(15f64.sqrt() * 0.6);
        assert!((r.p_value - expect).abs() < 1e-12);
    }

    #[test]
    fn bernoulli_copy_and_flip() {
        for zeros in 1..10 {
            let x: Vec<f64> = (0..10).map(|i| f64::from(i >= zeros)).collect();
            let flipped: Vec<f64> = x.iter().map(|v| 1.0 - v).collect();
            assert!((generalized_spearman(&x, &x).unwrap().lp11 - 1.0).abs() < 1e-12);
            assert!((generalized_spearman(&x, &flipped).unwrap().lp11 + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn spearman_p_values() {
        let x: Vec<f64> = (0..20).map(f64::from).collect();
        let r = generalized_spearman(&x, &x).unwrap();
        assert!((r.z - 20f64.sqrt()).abs() < 1e-9);
        assert!(r.p_one_sided < 1e-5);
        let rev: Vec<f64> = x.iter().rev().copied().collect();
        let r = generalized_spearman(&x, &rev).unwrap();
        assert!(r.p_one_sided > 0.99999);
        assert!(r.p_two_sided < 1e-5);
    }

    #[test]
    fn spearman_rejects_constant() {
        assert_eq!(
            generalized_spearman(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).unwrap_err(),
            Error::ConstantVariable
        );
    }

    fn classical_spearman(x: &[f64], y: &[f64]) -> f64 {
        fn ranks(v: &[f64]) -> Vec<f64> {
            let mut idx: Vec<usize> = (0..v.len()).collect();
            idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
            let mut r = vec![0.0; v.len()];
            for (rank, &i) in idx.iter().enumerate() {
                r[i] = rank as f64 + 1.0;
            }
            r
        }
        let n = x.len() as f64;
        let d2: f64 = ranks(x).iter().zip(ranks(y)).map(|(a, b)| (a - b) * (a - b)).sum();
        1.0 - 6.0 * d2 / (n * (n * n - 1.0))
    }

    proptest! {
        #[test]
        fn tie_free_matches_rank_formula(
            xs in prop::collection::hash_set(-10_000i32..10_000, 5..200),
            seed in any::<u64>(),
        ) {
            let x: Vec<f64> = xs.into_iter().map(f64::from).collect();
            // y: a random permutation mixed with x
            let mut y: Vec<f64> = x.iter().enumerate()
                .map(|(i, &v)| v + ((i as u64).wrapping_mul(seed | 1) % 1000) as f64 * 30.0)
                .collect();
            y.iter_mut().enumerate().for_each(|(i, v)| *v += i as f64 * 1e-6);
            let n = x.len() as f64;
            let lp = generalized_spearman(&x, &y).unwrap().lp11;
            prop_assert!((lp - classical_spearman(&x, &y)).abs() <= 2.0 / n);
            prop_assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&lp));
        }

        #[test]
        fn statistics_transpose_invariant(
            x in prop::collection::vec(0u8..6, 10..80),
            shift in prop::collection::vec(0u8..4, 80),
        ) {
            let xf: Vec<f64> = x.iter().map(|&v| f64::from(v)).collect();
            let yf: Vec<f64> = x.iter().zip(&shift).map(|(&a, &b)| f64::from(a / 2 + b)).collect();
            let (Ok(bx), Ok(by)) = (LpBasis::from_sample(&xf, 2), LpBasis::from_sample(&yf, 2)) else {
                return Ok(());
            };
            let t = estimate_comeans(&bx, &by, &xf, &yf).unwrap();
            let tt = t.transpose().unwrap();
            prop_assert_eq!(lpsym(&t).unwrap().statistic, lpsym(&tt).unwrap().statistic);
            let a = lpinfor(&t, LpinforMode::Raw).unwrap();
            let b = lpinfor(&tt, LpinforMode::Raw).unwrap();
            prop_assert!((a.statistic - b.statistic).abs() < 1e-15);
            prop_assert!((0.0..=1.0).contains(&a.p_value));
            prop_assert_eq!(a.scaled, t.n() as f64 * a.statistic);
        }

        #[test]
        fn statistics_rank_invariant(
            x in prop::collection::vec(-50i32..50, 12..60),
            noise in prop::collection::vec(-20i32..20, 60),
        ) {
            let xf: Vec<f64> = x.iter().map(|&v| f64::from(v)).collect();
            let yf: Vec<f64> = x.iter().zip(&noise).map(|(&a, &b)| f64::from(a + b)).collect();
            let gx: Vec<f64> = xf.iter().map(|v| v.exp()).collect();
            let gy: Vec<f64> = yf.iter().map(|v| 3.0 * v - 7.0).collect();
            let distinct = |v: &[f64]| {
                let mut s = v.to_vec();
                s.sort_by(f64::total_cmp);
                s.dedup();
                s.len()
            };
            prop_assume!(distinct(&xf) >= 3 && distinct(&yf) >= 3);
            let t1 = pair(&xf, &yf, 2);
            let t2 = pair(&gx, &gy, 2);
            let a = lpinfor(&t1, LpinforMode::Raw).unwrap().statistic;
            let b = lpinfor(&t2, LpinforMode::Raw).unwrap().statistic;
            prop_assert!((a - b).abs() < 1e-12);
            let a = lpsym(&t1).unwrap().statistic;
            let b = lpsym(&t2).unwrap().statistic;
            prop_assert!((a - b).abs() < 1e-12);
            let a = generalized_spearman(&xf, &yf).unwrap().lp11;
            let b = generalized_spearman(&gx, &gy).unwrap().lp11;
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}
