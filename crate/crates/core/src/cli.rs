//! Command-line front end: CSV ingestion and one subcommand per analysis.
//!
//! Every command writes to `--out` or standard output. Exit status is 0 on
//! success, 2 on a usage error and 1 on a data error. Output depends only on
//! the inputs, flags and seeds.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{run_miae, run_miae_timed, BenchConfig};
use crate::comeans::Penalty;
use crate::copula_model::{fit_tree, max_correlation, CopulaModel, FitOptions};
use crate::error::Error;
use crate::inference::{generalized_spearman, lpinfor, lpsym, LpinforMode, TestResult};
use crate::lp_basis::LpBasis;
use crate::reference_copulas::CopulaFamily;

/// Selected columns of a CSV file, as reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    pub rows: usize,
}

impl Dataset {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
    }
}

/// Failure while reading a CSV file. Rows are numbered from 1, not counting
/// the header.
#[derive(Debug, thiserror::Error, PartialEq)]
pub enum IngestError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed csv: {0}")]
    Csv(String),
    #[error("missing column '{0}'")]
    MissingColumn(String),
    #[error("row {row}, column '{column}': cannot parse '{cell}' as a finite number (declare categorical columns with --category)")]
    Unparseable {
        row: usize,
        column: String,
        cell: String,
    },
    #[error("row {row}, column '{column}': '{cell}' is not a declared category")]
    UnknownCategory {
        row: usize,
        column: String,
        cell: String,
    },
    #[error("bad category declaration '{0}', expected COLUMN=level1,level2,...")]
    BadDeclaration(String),
}

/// Parses `COLUMN=level1,level2,...`.
pub fn parse_category(decl: &str) -> Result<(String, Vec<String>), IngestError> {
    let (col, levels) = decl
        .split_once('=')
        .ok_or_else(|| IngestError::BadDeclaration(decl.to_string()))?;
    let levels: Vec<String> = levels.split(',').map(|s| s.trim().to_string()).collect();
    if col.trim().is_empty() || levels.iter().any(String::is_empty) {
        return Err(IngestError::BadDeclaration(decl.to_string()));
    }
    Ok((col.trim().to_string(), levels))
}

/// Reads `columns` from CSV text with a header row. Columns named in
/// `categories` are coded `0..k−1` in the declared order; all others must
/// be finite numbers.
pub fn ingest_reader<R: Read>(
    reader: R,
    columns: &[&str],
    categories: &[(String, Vec<String>)],
) -> Result<Dataset, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header = rdr.headers().map_err(|e| IngestError::Csv(e.to_string()))?.clone();
    let positions: Vec<usize> = columns
        .iter()
        .map(|c| {
            header
                .iter()
                .position(|h| h == *c)
                .ok_or_else(|| IngestError::MissingColumn(c.to_string()))
        })
        .collect::<Result<_, _>>()?;
    let codebooks: Vec<Option<HashMap<&str, f64>>> = columns
        .iter()
        .map(|c| {
            categories.iter().find(|(name, _)| name == c).map(|(_, levels)| {
                levels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| (l.as_str(), i as f64))
                    .collect()
            })
        })
        .collect();
    let mut data = vec![Vec::new(); columns.len()];
    let mut rows = 0;
    for (r, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| IngestError::Csv(e.to_string()))?;
        let row = r + 1;
        for (k, &pos) in positions.iter().enumerate() {
            let cell = record.get(pos).unwrap_or("");
            let value = match &codebooks[k] {
                Some(book) => *book.get(cell).ok_or_else(|| IngestError::UnknownCategory {
                    row,
                    column: columns[k].to_string(),
                    cell: cell.to_string(),
                })?,
                None => cell
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| IngestError::Unparseable {
                        row,
                        column: columns[k].to_string(),
                        cell: cell.to_string(),
                    })?,
            };
            data[k].push(value);
        }
        rows += 1;
    }
    Ok(Dataset {
        names: columns.iter().map(|c| c.to_string()).collect(),
        columns: data,
        rows,
    })
}

/// [`ingest_reader`] on a file.
pub fn ingest(
    path: &Path,
    columns: &[&str],
    categories: &[(String, Vec<String>)],
) -> Result<Dataset, IngestError> {
    let file = File::open(path).map_err(|e| IngestError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    ingest_reader(io::BufReader::new(file), columns, categories)
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Model(#[from] Error),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lpcopula",
    version,
    about = "LP copula density estimation and dependence tests for mixed data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Matrix,
    Text,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct PairInput {
    /// CSV file with a header row.
    pub data: PathBuf,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    /// Ordinal coding `COLUMN=level1,level2,...` (repeatable).
    #[arg(long = "category", value_name = "COLUMN=LEVELS")]
    pub categories: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ModelFlags {
    /// Basis degree per margin (capped at unique values − 1; default 4).
    #[arg(long)]
    pub m: Option<usize>,
    /// Keep only BIC-selected comeans (default).
    #[arg(long, overrides_with = "no_denoise")]
    pub denoise: bool,
    /// Keep every comean.
    #[arg(long, overrides_with = "denoise")]
    pub no_denoise: bool,
}

impl ModelFlags {
    fn options(&self) -> FitOptions {
        FitOptions {
            m: self.m,
            denoise: !self.no_denoise,
            penalty: Penalty::Bic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Independence,
    Gaussian,
    StudentT,
    Frank,
    Clayton,
    Plackett,
    Amh,
    Joe,
    Gumbel,
    Khoudraji,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Family parameter (rho or theta); for `khoudraji` the base's parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub param: Option<f64>,
    /// Degrees of freedom of the Student t family.
    #[arg(long, default_value_t = 5.0)]
    pub dof: f64,
    /// Base family of the Khoudraji device.
    #[arg(long, value_enum)]
    pub base: Option<FamilyName>,
    #[arg(long)]
    pub shape1: Option<f64>,
    #[arg(long)]
    pub shape2: Option<f64>,
}

impl FamilyArgs {
    fn simple(name: FamilyName, param: Option<f64>, dof: f64) -> Result<CopulaFamily, CliError> {
        let need = || param.ok_or_else(|| CliError::Usage("--param is required for this family".into()));
        Ok(match name {
            FamilyName::Independence => CopulaFamily::Independence,
            FamilyName::Gaussian => CopulaFamily::Gaussian { rho: need()? },
            FamilyName::StudentT => CopulaFamily::StudentT { rho: need()?, dof },
            FamilyName::Frank => CopulaFamily::Frank { theta: need()? },
            FamilyName::Clayton => CopulaFamily::Clayton { theta: need()? },
            FamilyName::Plackett => CopulaFamily::Plackett { theta: need()? },
            FamilyName::Amh => CopulaFamily::Amh { theta: need()? },
            FamilyName::Joe => CopulaFamily::Joe { theta: need()? },
            FamilyName::Gumbel => CopulaFamily::Gumbel { theta: need()? },
            FamilyName::Khoudraji => {
                return Err(CliError::Usage("the Khoudraji base cannot be Khoudraji".into()))
            }
        })
    }

    fn family(&self) -> Result<CopulaFamily, CliError> {
        let fam = if self.family == FamilyName::Khoudraji {
            let base = self
                .base
                .ok_or_else(|| CliError::Usage("--base is required for khoudraji".into()))?;
            let shape = |s: Option<f64>, name: &str| {
                s.ok_or_else(|| CliError::Usage(format!("--{name} is required for khoudraji")))
            };
            CopulaFamily::Khoudraji {
                base: Box::new(Self::simple(base, self.param, self.dof)?),
                shape1: shape(self.shape1, "shape1")?,
                shape2: shape(self.shape2, "shape2")?,
            }
        } else {
            Self::simple(self.family, self.param, self.dof)?
        };
        fam.validate()?;
        Ok(fam)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Raw,
    Denoised,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a copula model; emit comeans, or a density grid with --grid.
    Fit {
        #[command(flatten)]
        input: PairInput,
        #[command(flatten)]
        model: ModelFlags,
        /// Evaluate the density on the (i/(L+1), j/(L+1)) lattice.
        #[arg(long)]
        grid: Option<usize>,
        /// Clip negative values and renormalize.
        #[arg(long)]
        clipped: bool,
        #[command(flatten)]
        output: Output,
    },
    /// LPINFOR dependence test.
    Infor {
        #[command(flatten)]
        input: PairInput,
        #[command(flatten)]
        model: ModelFlags,
        #[arg(long, value_enum, default_value = "raw")]
        mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// LPSym exchangeability test.
    Sym {
        #[command(flatten)]
        input: PairInput,
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        output: Output,
    },
    /// Generalized Spearman correlation LP[1,1].
    Spearman {
        #[command(flatten)]
        input: PairInput,
        #[command(flatten)]
        output: Output,
    },
    /// LP-maximal correlation and optimal transformations.
    Maxcorr {
        #[command(flatten)]
        input: PairInput,
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        output: Output,
    },
    /// Maximum spanning tree of pairwise LP copulas.
    Tree {
        data: PathBuf,
        /// Comma-separated column names.
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<String>,
        #[arg(long = "category", value_name = "COLUMN=LEVELS")]
        categories: Vec<String>,
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        output: Output,
    },
    /// Draw a sample from a parametric copula as CSV with columns u,v.
    Simulate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo MIAE of the LP estimator against a parametric copula.
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long = "B", default_value_t = 250)]
        reps: usize,
        #[arg(long = "L", default_value_t = 50)]
        grid: usize,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, overrides_with = "no_denoise")]
        denoise: bool,
        #[arg(long, overrides_with = "denoise")]
        no_denoise: bool,
        /// Run replications one after another.
        #[arg(long)]
        serial: bool,
        /// Include mean fit time (not byte-stable).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
    /// LP basis table of one column.
    Basis {
        data: PathBuf,
        #[arg(long)]
        col: String,
        #[arg(long = "category", value_name = "COLUMN=LEVELS")]
        categories: Vec<String>,
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

fn declarations(raw: &[String]) -> Result<Vec<(String, Vec<String>)>, CliError> {
    raw.iter()
        .map(|d| parse_category(d).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn load_pair(input: &PairInput) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let cats = declarations(&input.categories)?;
    let ds = ingest(&input.data, &[&input.x, &input.y], &cats)?;
    let mut cols = ds.columns.into_iter();
    Ok((cols.next().unwrap_or_default(), cols.next().unwrap_or_default()))
}

fn fmt_f(v: f64) -> String {
    format!("{v}")
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit(output: &Output, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match &output.out {
        Some(path) => write_file(path, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn test_text(name: &str, r: &TestResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{name}\t{}", fmt_f(r.statistic));
    let _ = writeln!(s, "scaled\t{}", fmt_f(r.scaled));
    let _ = writeln!(s, "dof\t{}", r.dof);
    let _ = writeln!(s, "p_value\t{}", fmt_f(r.p_value));
    if r.small_sample {
        let _ = writeln!(s, "note\tsmall sample, chi-square calibration is approximate");
    }
    s
}

#[derive(Serialize)]
struct FitSummary<'a> {
    x: &'a str,
    y: &'a str,
    n: usize,
    dims: [usize; 2],
    comeans: Vec<Vec<f64>>,
    selected: Vec<Vec<bool>>,
    singular_values: Vec<f64>,
}

#[derive(Serialize)]
struct TreeSummary {
    nodes: Vec<String>,
    edges: Vec<TreeEdgeSummary>,
}

#[derive(Serialize)]
struct TreeEdgeSummary {
    from: String,
    to: String,
    lpinfor: f64,
    comeans: Vec<Vec<f64>>,
}

fn grid_text(grid: &[Vec<f64>], format: Format) -> Result<String, CliError> {
    let l = grid.len();
    let mut s = String::new();
    match format {
        Format::Matrix => {
            for row in grid {
                let line: Vec<String> = row.iter().map(|&d| fmt_f(d)).collect();
                let _ = writeln!(s, "{}", line.join("\t"));
            }
        }
        Format::Json => s = json(&grid)?,
        Format::Tsv | Format::Text => {
            s.push_str("u\tv\tdensity\n");
            for (i, row) in grid.iter().enumerate() {
                let u = (i + 1) as f64 / (l + 1) as f64;
                for (j, &d) in row.iter().enumerate() {
                    let v = (j + 1) as f64 / (l + 1) as f64;
                    let _ = writeln!(s, "{}\t{}\t{}", fmt_f(u), fmt_f(v), fmt_f(d));
                }
            }
        }
    }
    Ok(s)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Fit {
            input,
            model,
            grid,
            clipped,
            output,
        } => {
            let (x, y) = load_pair(&input)?;
            let fitted = CopulaModel::fit(&x, &y, &model.options())?;
            let text = if let Some(l) = grid {
                let g = fitted.density_grid(l, clipped)?;
                grid_text(&g, output.format.unwrap_or(Format::Tsv))?
            } else {
                let t = fitted.comeans();
                let coeffs = t.matrix()?;
                let mask: Vec<Vec<bool>> = t
                    .selected_mask()
                    .chunks(t.dims()[1])
                    .map(<[bool]>::to_vec)
                    .collect();
                match output.format.unwrap_or(Format::Json) {
                    Format::Json => json(&FitSummary {
                        x: &input.x,
                        y: &input.y,
                        n: t.n(),
                        dims: [t.dims()[0], t.dims()[1]],
                        comeans: coeffs,
                        selected: mask,
                        singular_values: fitted.spectral().singular_values,
                    })?,
                    Format::Matrix => {
                        let mut s = String::new();
                        for row in fitted.comeans().selected_matrix()? {
                            let line: Vec<String> = row.iter().map(|&c| fmt_f(c)).collect();
                            let _ = writeln!(s, "{}", line.join("\t"));
                        }
                        s
                    }
                    Format::Tsv | Format::Text => {
                        let mut s = String::from("j\tk\tcomean\tselected\n");
                        for (idx, c, sel) in t.entries() {
                            let _ = writeln!(s, "{}\t{}\t{}\t{}", idx[0], idx[1], fmt_f(c), sel);
                        }
                        s
                    }
                }
            };
            emit(&output, &text, out)
        }
        Command::Infor {
            input,
            model,
            mode,
            output,
        } => {
            let (x, y) = load_pair(&input)?;
            let fitted = CopulaModel::fit(&x, &y, &model.options())?;
            let mode = match mode {
                ModeArg::Raw => LpinforMode::Raw,
                ModeArg::Denoised => LpinforMode::Denoised,
            };
            let r = lpinfor(fitted.comeans(), mode)?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => json(&r)?,
                _ => test_text("lpinfor", &r),
            };
            emit(&output, &text, out)
        }
        Command::Sym {
            input,
            model,
            output,
        } => {
            let (x, y) = load_pair(&input)?;
            let fitted = CopulaModel::fit(&x, &y, &model.options())?;
            let r = lpsym(fitted.comeans())?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => json(&r)?,
                _ => test_text("lpsym", &r),
            };
            emit(&output, &text, out)
        }
        Command::Spearman { input, output } => {
            let (x, y) = load_pair(&input)?;
            let r = generalized_spearman(&x, &y)?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => json(&r)?,
                _ => format!(
                    "lp11\t{}\nz\t{}\np_two_sided\t{}\np_one_sided\t{}\n",
                    fmt_f(r.lp11),
                    fmt_f(r.z),
                    fmt_f(r.p_two_sided),
                    fmt_f(r.p_one_sided)
                ),
            };
            emit(&output, &text, out)
        }
        Command::Maxcorr {
            input,
            model,
            output,
        } => {
            let (x, y) = load_pair(&input)?;
            let fitted = CopulaModel::fit(&x, &y, &model.options())?;
            let mc = max_correlation(&fitted, &x, &y)?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => json(&mc)?,
                _ => {
                    let mut s = String::from("variable\tvalue\tscore\n");
                    for (name, table) in [(&input.x, &mc.phi1), (&input.y, &mc.psi1)] {
                        for &(v, t) in table {
                            let _ = writeln!(s, "{name}\t{}\t{}", fmt_f(v), fmt_f(t));
                        }
                    }
                    s
                }
            };
            emit(&output, &text, out)
        }
        Command::Tree {
            data,
            cols,
            categories,
            model,
            output,
        } => {
            let cats = declarations(&categories)?;
            let names: Vec<&str> = cols.iter().map(String::as_str).collect();
            let ds = ingest(&data, &names, &cats)?;
            let tree = fit_tree(&ds.columns, &model.options())?;
            let summary = TreeSummary {
                nodes: cols.clone(),
                edges: tree
                    .edges
                    .iter()
                    .map(|e| {
                        Ok(TreeEdgeSummary {
                            from: cols[e.i].clone(),
                            to: cols[e.j].clone(),
                            lpinfor: e.weight,
                            comeans: e.model.comeans().selected_matrix()?,
                        })
                    })
                    .collect::<Result<_, Error>>()?,
            };
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => json(&summary)?,
                _ => {
                    let mut s = String::from("from\tto\tlpinfor\n");
                    for e in &summary.edges {
                        let _ = writeln!(s, "{}\t{}\t{}", e.from, e.to, fmt_f(e.lpinfor));
                    }
                    s
                }
            };
            emit(&output, &text, out)
        }
        Command::Simulate {
            family,
            n,
            seed,
            out: path,
        } => {
            let fam = family.family()?;
            let sample = fam.sample(n, seed)?;
            let mut s = String::from("u,v\n");
            for (u, v) in sample {
                let _ = writeln!(s, "{},{}", fmt_f(u), fmt_f(v));
            }
            match path {
                Some(p) => write_file(&p, &s),
                None => Ok(out.write_all(s.as_bytes())?),
            }
        }
        Command::Bench {
            family,
            n,
            reps,
            grid,
            m,
            seed,
            denoise: _,
            no_denoise,
            serial,
            timing,
            output,
        } => {
            let cfg = BenchConfig {
                family: family.family()?,
                n,
                reps,
                grid,
                m,
                seed,
                denoise: !no_denoise,
            };
            cfg.validate()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let report = if timing {
                run_miae_timed(&cfg, !serial)?
            } else {
                run_miae(&cfg, !serial)?
            };
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => json(&report)?,
                _ => report.to_text(),
            };
            emit(&output, &text, out)
        }
        Command::Basis {
            data,
            col,
            categories,
            m,
            output,
        } => {
            let cats = declarations(&categories)?;
            let ds = ingest(&data, &[&col], &cats)?;
            let sample = &ds.columns[0];
            let basis = match m {
                Some(m) => LpBasis::from_sample(sample, m)?,
                None => LpBasis::from_sample_default(sample)?,
            };
            let margin = basis.margin();
            let mut s = String::from("value\tmass\tmidcdf");
            for j in 1..=basis.degree() {
                let _ = write!(s, "\tT{j}");
            }
            s.push('\n');
            for (i, &v) in margin.values().iter().enumerate() {
                let _ = write!(s, "{}\t{}\t{}", fmt_f(v), fmt_f(margin.masses()[i]), fmt_f(margin.midcdf()[i]));
                for &t in basis.row(i) {
                    let _ = write!(s, "\t{}", fmt_f(t));
                }
                s.push('\n');
            }
            emit(&output, &s, out)
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
