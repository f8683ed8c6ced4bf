//! Monte-Carlo mean integrated absolute error of the LP copula estimator
//! against known parametric copulas, and fit timings.
//!
//! Replication `b` draws its sample with seed [`replication_seed`]`(master,
//! b)`, so every replication can be reproduced on its own and results do not
//! depend on whether replications run in parallel.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::copula_model::{CopulaModel, FitOptions};
use crate::error::{Error, Result};
use crate::reference_copulas::CopulaFamily;

/// One Monte-Carlo experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub family: CopulaFamily,
    /// Sample size per replication.
    pub n: usize,
    /// Number of replications.
    pub reps: usize,
    /// Evaluation lattice is `(i/(L+1), j/(L+1))`, `1 <= i, j <= L`.
    pub grid: usize,
    /// Basis degree per margin.
    pub m: usize,
    pub seed: u64,
    pub denoise: bool,
}

impl BenchConfig {
    /// Defaults: `B = 250`, `L = 50`, `m = 4`, denoised.
    pub fn new(family: CopulaFamily, n: usize) -> Self {
        Self {
            family,
            n,
            reps: 250,
            grid: 50,
            m: 4,
            seed: 0,
            denoise: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps < 1 {
            return Err(Error::InvalidConfig("B must be at least 1".into()));
        }
        if self.grid < 1 {
            return Err(Error::InvalidConfig("L must be at least 1".into()));
        }
        if self.n < 4 {
            return Err(Error::InvalidConfig("n must be at least 4".into()));
        }
        if self.m < 1 {
            return Err(Error::InvalidConfig("m must be at least 1".into()));
        }
        self.family.validate()
    }
}

/// Outcome of [`run_miae`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub miae_mean: f64,
    /// Sample standard deviation over `√B`.
    pub miae_stderr: f64,
    /// Integrated absolute error of each replication, in replication order.
    pub errors: Vec<f64>,
    /// Mean wall-clock seconds per fit, when timing was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_seconds: Option<f64>,
}

impl BenchReport {
    /// Aligned plain-text summary.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{:<12} {}\n{:<12} {}\n{:<12} {}\n{:<12} {}\n{:<12} {:.6}\n{:<12} {:.6}\n",
            "family",
            self.config.family.label(),
            "n",
            self.config.n,
            "B",
            self.config.reps,
            "L",
            self.config.grid,
            "miae_mean",
            self.miae_mean,
            "miae_stderr",
            self.miae_stderr,
        );
        if let Some(t) = self.fit_seconds {
            s.push_str(&format!("{:<12} {:.6}\n", "fit_seconds", t));
        }
        s
    }
}

/// SplitMix64 output function.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `b`: `splitmix64(splitmix64(master) ^ b)`.
pub fn replication_seed(master: u64, b: u64) -> u64 {
    splitmix64(splitmix64(master) ^ b)
}

fn lattice(l: usize) -> Vec<f64> {
    (1..=l).map(|i| i as f64 / (l + 1) as f64).collect()
}

/// True density on the evaluation lattice, row-major.
fn truth_grid(family: &CopulaFamily, l: usize) -> Result<Vec<f64>> {
    let pts = lattice(l);
    let mut out = Vec::with_capacity(l * l);
    for &u in &pts {
        for &v in &pts {
            out.push(family.density(u, v)?);
        }
    }
    Ok(out)
}

struct Replication {
    error: f64,
    seconds: f64,
}

fn replicate(cfg: &BenchConfig, truth: &[f64], b: usize) -> Result<Replication> {
    let sample = cfg.family.sample(cfg.n, replication_seed(cfg.seed, b as u64))?;
    let (u, v): (Vec<f64>, Vec<f64>) = sample.into_iter().unzip();
    let opts = FitOptions {
        m: Some(cfg.m),
        denoise: cfg.denoise,
        ..FitOptions::default()
    };
    let start = Instant::now();
    let model = CopulaModel::fit(&u, &v, &opts)?;
    let seconds = start.elapsed().as_secs_f64();
    let grid = model.density_grid(cfg.grid, false)?;
    let total: f64 = grid
        .iter()
        .flatten()
        .zip(truth)
        .map(|(f, t)| (f - t).abs())
        .sum();
    Ok(Replication {
        error: total / truth.len() as f64,
        seconds,
    })
}

fn run(cfg: &BenchConfig, parallel: bool) -> Result<(Vec<f64>, f64)> {
    cfg.validate()?;
    let truth = truth_grid(&cfg.family, cfg.grid)?;
    let reps: Vec<Replication> = if parallel {
        (0..cfg.reps)
            .into_par_iter()
            .map(|b| replicate(cfg, &truth, b))
            .collect::<Result<_>>()?
    } else {
        (0..cfg.reps)
            .map(|b| replicate(cfg, &truth, b))
            .collect::<Result<_>>()?
    };
    let seconds = reps.iter().map(|r| r.seconds).sum::<f64>() / reps.len() as f64;
    Ok((reps.into_iter().map(|r| r.error).collect(), seconds))
}

fn report(cfg: &BenchConfig, errors: Vec<f64>, fit_seconds: Option<f64>) -> BenchReport {
    let b = errors.len() as f64;
    let mut sum = 0.0;
    for e in &errors {
        sum += e;
    }
    let mean = sum / b;
    let stderr = if errors.len() > 1 {
        let mut ss = 0.0;
        for e in &errors {
            ss += (e - mean) * (e - mean);
        }
        (ss / (b - 1.0)).sqrt() / b.sqrt()
    } else {
        0.0
    };
    BenchReport {
        config: cfg.clone(),
        miae_mean: mean,
        miae_stderr: stderr,
        errors,
        fit_seconds,
    }
}

/// Runs the experiment. The report does not depend on `parallel`.
pub fn run_miae(cfg: &BenchConfig, parallel: bool) -> Result<BenchReport> {
    let (errors, _) = run(cfg, parallel)?;
    Ok(report(cfg, errors, None))
}

/// [`run_miae`] that also records the mean fit time.
pub fn run_miae_timed(cfg: &BenchConfig, parallel: bool) -> Result<BenchReport> {
    let (errors, seconds) = run(cfg, parallel)?;
    Ok(report(cfg, errors, Some(seconds)))
}

/// Median fit time for one sample size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub n: usize,
    pub seconds: f64,
}

/// Median wall-clock time of a full default fit (margins, bases, comeans,
/// selection) on Gaussian(0.7) samples of each size.
pub fn run_timing(n_list: &[usize], reps: usize, seed: u64) -> Result<Vec<TimingRow>> {
    if reps < 1 {
        return Err(Error::InvalidConfig("reps must be at least 1".into()));
    }
    let family = CopulaFamily::Gaussian { rho: 0.7 };
    n_list
        .iter()
        .map(|&n| {
            let (u, v): (Vec<f64>, Vec<f64>) = family.sample(n, seed)?.into_iter().unzip();
            let mut times = Vec::with_capacity(reps);
            for _ in 0..reps {
                let start = Instant::now();
                std::hint::black_box(CopulaModel::fit(&u, &v, &FitOptions::default())?);
                times.push(start.elapsed().as_secs_f64());
            }
            times.sort_by(f64::total_cmp);
            let mid = times.len() / 2;
            let seconds = if times.len() % 2 == 1 {
                times[mid]
            } else {
                0.5 * (times[mid - 1] + times[mid])
            };
            Ok(TimingRow { n, seconds })
        })
        .collect()
}
