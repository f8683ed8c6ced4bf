//! Nonparametric copula modelling for mixed data with LP orthogonal series.
//!
//! Each margin gets an empirical mid-distribution and a data-adaptive
//! orthonormal polynomial basis `T_1..T_m` of its mid-rank score. The
//! cross-moments of these scores (LP-comeans) are the coefficients of the
//! copula density
//!
//! ```text
//! cop(u, v) = 1 + Σ_{j,k} LP[j,k] S_j(u) S_k(v),   S_j(u) = T_j(Q(u))
//! ```
//!
//! which works unchanged for continuous, discrete and ordinal variables.
//!
//! ```
//! use lpcopula::{CopulaModel, FitOptions};
//!
//! let x: Vec<f64> = (0..200).map(|i| i as f64).collect();
//! let y: Vec<f64> = x.iter().map(|v| v * v).collect();
//! let model = CopulaModel::fit(&x, &y, &FitOptions::default()).unwrap();
//! assert!(model.comeans().get(&[1, 1]).unwrap() > 0.999);
//! ```

pub mod bench;
pub mod cli;
pub mod comeans;
pub mod copula_model;
pub mod error;
pub mod inference;
pub mod lp_basis;
pub mod margins;
pub mod reference_copulas;

pub use bench::{run_miae, run_timing, BenchConfig, BenchReport};
pub use comeans::{estimate_comeans, estimate_comeans_3, select, select_bic, ComeanTensor, Penalty};
pub use copula_model::{
    fit_tree, max_correlation, CopulaModel, FitOptions, MaxCorrelation, SpectralDecomposition,
    TreeCopula,
};
pub use error::{Error, Result};
pub use inference::{generalized_spearman, lpinfor, lpsym, LpinforMode, SpearmanResult, TestResult};
pub use lp_basis::LpBasis;
pub use margins::{pseudo_observations, EmpiricalMargin};
pub use reference_copulas::CopulaFamily;
