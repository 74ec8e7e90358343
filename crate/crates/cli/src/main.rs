//! Command-line front end: spectrum evaluation, closed-form audit, exact
//! oracle runs, and the perturbative comparison sweep.
//!
//! All quantities are in natural units (hbar = c = 1); every flag is
//! dimensionless in those units. An optional JSON config file can supply
//! any value; explicit flags win over the file, and built-in defaults fill
//! the rest. Outputs are deterministic: identical inputs produce
//! byte-identical files.

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdspec::oracle::{self, OracleSpec};
use pdspec::report;
use pdspec::spectrum::{self, EnergyBreakdown, Mode, ModelConfig, Sign, SpectrumError};
use serde::Deserialize;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_CONFIG: u8 = 1;
const EXIT_NO_REAL_ENERGY: u8 = 2;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<SpectrumError> for Failure {
    fn from(e: SpectrumError) -> Self {
        let code = match e {
            SpectrumError::NoRealEnergy { .. } => EXIT_NO_REAL_ENERGY,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<oracle::OracleError> for Failure {
    fn from(e: oracle::OracleError) -> Self {
        let code = match e {
            oracle::OracleError::NoRealEnergy { .. } => EXIT_NO_REAL_ENERGY,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<report::NonFiniteValue> for Failure {
    fn from(e: report::NonFiniteValue) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "pdspec",
    about = "Bound-state spectra of the radial Pauli-Dirac equation in the field E(r) = A + B r (natural units, hbar = c = 1)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Perturbative energy spectrum, one row per requested radial index n
    Spectrum(SpectrumArgs),
    /// Audit the closed-form integral table against exact quadrature
    Audit(AuditArgs),
    /// Exact eigensolver for the full radial operator
    Oracle(OracleArgs),
    /// Basis-closed error sweep: second-order perturbation theory vs exact
    /// diagonalization under a scaled slope B -> eta B
    Compare(CompareArgs),
}

#[derive(Args, Clone)]
struct ModelFlags {
    /// Mass M (natural units; default 1)
    #[arg(long = "M", allow_hyphen_values = true)]
    mass: Option<f64>,
    /// Anomalous magnetic moment mu (default 1)
    #[arg(long = "mu", allow_hyphen_values = true)]
    mu: Option<f64>,
    /// Constant field coefficient A in E(r) = A + B r (default 0.5)
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<f64>,
    /// Linear field coefficient B in E(r) = A + B r (default 0)
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<f64>,
    /// Orbital quantum number L (default 0)
    #[arg(long = "L")]
    l: Option<u32>,
    /// Radial branch: + (upper equation) or - (lower equation, mu -> -mu);
    /// default +
    #[arg(long, allow_hyphen_values = true)]
    branch: Option<String>,
    /// Energy root: + (particle) or - (antiparticle); default +
    #[arg(long, allow_hyphen_values = true)]
    particle: Option<String>,
}

#[derive(Args, Clone)]
struct OutputFlags {
    /// Report format (default json)
    #[arg(long, value_enum)]
    output: Option<OutputFormat>,
    /// Output file path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file mirroring the flags; explicit flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    model: ModelFlags,
    /// Radial quantum numbers to evaluate, comma separated (default 0,1,2)
    #[arg(long = "n", value_delimiter = ',')]
    n_list: Option<Vec<u32>>,
    /// Evaluation mode (default paper)
    #[arg(long, value_enum)]
    mode: Option<ModeFlag>,
    /// Basis truncation of the consistent-mode second-order sum
    /// (default 30)
    #[arg(long)]
    basis: Option<usize>,
    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Args)]
struct AuditArgs {
    /// Largest radial index audited (default 10, cap 30)
    #[arg(long = "n-max")]
    n_max: Option<u32>,
    /// Largest orbital index audited (default 3, cap 10)
    #[arg(long = "L-max")]
    l_max: Option<u32>,
    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    model: ModelFlags,
    /// Eigenvalue indices to report, comma separated (default 0,1,2,3)
    #[arg(long = "n", value_delimiter = ',')]
    n_list: Option<Vec<u32>>,
    /// Discretization (default fd)
    #[arg(long, value_enum)]
    method: Option<MethodFlag>,
    /// Finite-difference grid points (default 4000)
    #[arg(long)]
    grid: Option<usize>,
    /// Finite-difference domain cutoff; derived from the slowest decay
    /// constant when omitted
    #[arg(long)]
    rmax: Option<f64>,
    /// Laguerre basis size for --method basis (default 30)
    #[arg(long)]
    basis: Option<usize>,
    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    model: ModelFlags,
    /// Target radial quantum number (first entry of the list; default 0)
    #[arg(long = "n", value_delimiter = ',')]
    n_list: Option<Vec<u32>>,
    /// Perturbation scales eta in [0, 1], comma separated
    /// (default 1,0.5,0.25)
    #[arg(long = "eta", value_delimiter = ',', allow_hyphen_values = true)]
    eta_list: Option<Vec<f64>>,
    /// Shared Laguerre basis size (default 30)
    #[arg(long)]
    basis: Option<usize>,
    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeFlag {
    Paper,
    Consistent,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodFlag {
    Fd,
    Basis,
}

/// JSON config document mirroring the flags.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(rename = "M")]
    mass: Option<f64>,
    mu: Option<f64>,
    #[serde(rename = "A")]
    a: Option<f64>,
    #[serde(rename = "B")]
    b: Option<f64>,
    #[serde(rename = "L")]
    l: Option<u32>,
    n: Option<Vec<u32>>,
    branch: Option<String>,
    particle: Option<String>,
    mode: Option<String>,
    basis: Option<usize>,
    grid: Option<usize>,
    rmax: Option<f64>,
    eta: Option<Vec<f64>>,
    n_max: Option<u32>,
    #[serde(rename = "L_max")]
    l_max: Option<u32>,
    method: Option<String>,
    output: Option<String>,
    out: Option<PathBuf>,
}

fn load_file_config(path: Option<&PathBuf>) -> Result<FileConfig, Failure> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::config(format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::config(format!("invalid config {}: {e}", p.display())))
        }
    }
}

fn parse_sign(text: &str, flag: &str) -> Result<Sign, Failure> {
    match text {
        "+" | "+1" => Ok(Sign::Plus),
        "-" | "-1" => Ok(Sign::Minus),
        other => Err(Failure::config(format!(
            "--{flag} must be + or -, got {other}"
        ))),
    }
}

fn build_model(flags: &ModelFlags, file: &FileConfig) -> Result<ModelConfig, Failure> {
    let branch_text = flags.branch.clone().or_else(|| file.branch.clone());
    let particle_text = flags.particle.clone().or_else(|| file.particle.clone());
    Ok(ModelConfig {
        mass: flags.mass.or(file.mass).unwrap_or(1.0),
        moment: flags.mu.or(file.mu).unwrap_or(1.0),
        field_offset: flags.a.or(file.a).unwrap_or(0.5),
        field_slope: flags.b.or(file.b).unwrap_or(0.0),
        orbital_l: flags.l.or(file.l).unwrap_or(0),
        branch: branch_text
            .as_deref()
            .map(|t| parse_sign(t, "branch"))
            .transpose()?
            .unwrap_or(Sign::Plus),
        particle: particle_text
            .as_deref()
            .map(|t| parse_sign(t, "particle"))
            .transpose()?
            .unwrap_or(Sign::Plus),
    })
}

fn resolve_output(
    flags: &OutputFlags,
    file: &FileConfig,
) -> Result<(OutputFormat, Option<PathBuf>), Failure> {
    let format = match flags.output {
        Some(f) => f,
        None => match file.output.as_deref() {
            None => OutputFormat::Json,
            Some("json") => OutputFormat::Json,
            Some("csv") => OutputFormat::Csv,
            Some(other) => {
                return Err(Failure::config(format!(
                    "config output must be json or csv, got {other}"
                )))
            }
        },
    };
    Ok((format, flags.out.clone().or_else(|| file.out.clone())))
}

fn emit(path: Option<&PathBuf>, content: &str) -> Result<(), Failure> {
    match path {
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| Failure::config(format!("cannot write stdout: {e}"))),
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Failure::config(format!("cannot write {}: {e}", p.display()))),
    }
}

fn fin(value: f64, context: &str) -> Result<String, Failure> {
    Ok(report::fmt_f64(report::require_finite(value, context)?))
}

fn spectrum_csv(rows: &[EnergyBreakdown]) -> Result<String, Failure> {
    let mut out = String::from("n,mode,eps0,eps1,eps2_diag,eps2_offdiag,total,basis_size\n");
    for r in rows {
        let basis = r.basis_size.map(|b| b.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            r.mode.label(),
            fin(r.eps0, "eps0")?,
            fin(r.eps1, "eps1")?,
            fin(r.eps2_diag, "eps2_diag")?,
            fin(r.eps2_offdiag, "eps2_offdiag")?,
            fin(r.total, "total")?,
            basis
        ));
    }
    Ok(out)
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), Failure> {
    let file = load_file_config(args.output.config.as_ref())?;
    let model = build_model(&args.model, &file)?;
    model
        .validate()
        .map_err(|e| Failure::config(e.to_string()))?;
    let mode = match args.mode {
        Some(ModeFlag::Paper) => Mode::PaperLiteral,
        Some(ModeFlag::Consistent) => Mode::Consistent,
        None => match file.mode.as_deref() {
            None | Some("paper") => Mode::PaperLiteral,
            Some("consistent") => Mode::Consistent,
            Some(other) => {
                return Err(Failure::config(format!(
                    "mode must be paper or consistent, got {other}"
                )))
            }
        },
    };
    let basis = args.basis.or(file.basis).unwrap_or(30);
    let n_list = args
        .n_list
        .or_else(|| file.n.clone())
        .unwrap_or_else(|| vec![0, 1, 2]);

    let mut rows = Vec::with_capacity(n_list.len());
    for &n in &n_list {
        rows.push(spectrum::total_energy(&model, n, mode, basis)?);
    }
    for r in &rows {
        for (v, name) in [
            (r.eps0, "eps0"),
            (r.eps1, "eps1"),
            (r.eps2_diag, "eps2_diag"),
            (r.eps2_offdiag, "eps2_offdiag"),
            (r.total, "total"),
        ] {
            report::require_finite(v, name)?;
        }
    }
    let (format, out) = resolve_output(&args.output, &file)?;
    let content = match format {
        OutputFormat::Csv => spectrum_csv(&rows)?,
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows)
                .map_err(|e| Failure::config(format!("serialization failed: {e}")))?;
            s.push('\n');
            s
        }
    };
    emit(out.as_ref(), &content)
}

fn cmd_audit(args: AuditArgs) -> Result<(), Failure> {
    let file = load_file_config(args.output.config.as_ref())?;
    let n_max = args.n_max.or(file.n_max).unwrap_or(10);
    let l_max = args.l_max.or(file.l_max).unwrap_or(3);
    let report = pdspec::audit(n_max, l_max).map_err(|e| Failure::config(e.to_string()))?;
    let (format, out) = resolve_output(&args.output, &file)?;
    let content = match format {
        OutputFormat::Csv => report.to_csv()?,
        OutputFormat::Json => {
            let mut s = report
                .to_json()
                .map_err(|e| Failure::config(format!("serialization failed: {e}")))?;
            s.push('\n');
            s
        }
    };
    emit(out.as_ref(), &content)
}

fn cmd_oracle(args: OracleArgs) -> Result<(), Failure> {
    let file = load_file_config(args.output.config.as_ref())?;
    let model = build_model(&args.model, &file)?;
    let n_list = args
        .n_list
        .or_else(|| file.n.clone())
        .unwrap_or_else(|| vec![0, 1, 2, 3]);
    if n_list.is_empty() {
        return Err(Failure::config(
            "--n must name at least one eigenvalue index",
        ));
    }
    let k_max = *n_list.iter().max().unwrap() as usize + 1;
    let method = match args.method {
        Some(m) => m,
        None => match file.method.as_deref() {
            None | Some("fd") => MethodFlag::Fd,
            Some("basis") => MethodFlag::Basis,
            Some(other) => {
                return Err(Failure::config(format!(
                    "method must be fd or basis, got {other}"
                )))
            }
        },
    };
    let spec = match method {
        MethodFlag::Fd => OracleSpec::FiniteDifference {
            grid_points: args.grid.or(file.grid).unwrap_or(4000),
            r_max: args.rmax.or(file.rmax),
        },
        MethodFlag::Basis => OracleSpec::LaguerreBasis {
            basis_size: args.basis.or(file.basis).unwrap_or(30),
            beta: None,
        },
    };
    let result = oracle::solve(&model, &spec, k_max)?;

    let (format, out) = resolve_output(&args.output, &file)?;
    let content = match format {
        OutputFormat::Csv => {
            let mut s = String::from("k,lambda,epsilon,convergence_estimate\n");
            for &k in &n_list {
                let k = k as usize;
                if k >= result.lambdas.len() {
                    continue; // fewer bound states than requested (B = 0)
                }
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    k,
                    fin(result.lambdas[k], "lambda")?,
                    fin(result.epsilons[k], "epsilon")?,
                    fin(result.convergence[k], "convergence_estimate")?
                ));
            }
            s
        }
        OutputFormat::Json => {
            for (v, name) in result
                .lambdas
                .iter()
                .zip(std::iter::repeat("lambda"))
                .chain(result.epsilons.iter().zip(std::iter::repeat("epsilon")))
            {
                report::require_finite(*v, name)?;
            }
            let mut s = serde_json::to_string_pretty(&result)
                .map_err(|e| Failure::config(format!("serialization failed: {e}")))?;
            s.push('\n');
            s
        }
    };
    emit(out.as_ref(), &content)
}

fn cmd_compare(args: CompareArgs) -> Result<(), Failure> {
    let file = load_file_config(args.output.config.as_ref())?;
    let model = build_model(&args.model, &file)?;
    model
        .validate()
        .map_err(|e| Failure::config(e.to_string()))?;
    if model.field_offset * model.field_slope < 0.0 {
        return Err(Failure::config(format!(
            "compare requires A*B >= 0 (the scaled linear term is unbounded below otherwise); got A = {}, B = {}",
            model.field_offset, model.field_slope
        )));
    }
    let n = args
        .n_list
        .or_else(|| file.n.clone())
        .unwrap_or_else(|| vec![0])
        .first()
        .copied()
        .ok_or_else(|| Failure::config("--n must name the target radial index"))?;
    let basis = args.basis.or(file.basis).unwrap_or(30);
    let eta_list = args
        .eta_list
        .or_else(|| file.eta.clone())
        .unwrap_or_else(|| vec![1.0, 0.5, 0.25]);

    let points = oracle::perturbation_error_curve(&model, n, basis, &eta_list)?;

    #[derive(serde::Serialize)]
    struct CompareRow {
        eta: f64,
        lambda_oracle: f64,
        lambda_rs2: f64,
        rs2_error: f64,
        eps_paper_literal: f64,
        eps_consistent: f64,
    }
    let mut rows = Vec::with_capacity(points.len());
    for p in &points {
        let scaled = ModelConfig {
            field_slope: model.field_slope * p.eta,
            ..model
        };
        let paper = spectrum::total_energy(&scaled, n, Mode::PaperLiteral, basis)?;
        let consistent = spectrum::total_energy(&scaled, n, Mode::Consistent, basis)?;
        rows.push(CompareRow {
            eta: p.eta,
            lambda_oracle: p.lambda_oracle,
            lambda_rs2: p.lambda_rs2,
            rs2_error: p.rs2_error,
            eps_paper_literal: paper.total,
            eps_consistent: consistent.total,
        });
    }

    let (format, out) = resolve_output(&args.output, &file)?;
    let content = match format {
        OutputFormat::Csv => {
            let mut s = String::from(
                "eta,lambda_oracle,lambda_rs2,rs2_error,eps_paper_literal,eps_consistent\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fin(r.eta, "eta")?,
                    fin(r.lambda_oracle, "lambda_oracle")?,
                    fin(r.lambda_rs2, "lambda_rs2")?,
                    fin(r.rs2_error, "rs2_error")?,
                    fin(r.eps_paper_literal, "eps_paper_literal")?,
                    fin(r.eps_consistent, "eps_consistent")?
                ));
            }
            s
        }
        OutputFormat::Json => {
            for r in &rows {
                report::require_finite(r.lambda_oracle, "lambda_oracle")?;
                report::require_finite(r.eps_paper_literal, "eps_paper_literal")?;
                report::require_finite(r.eps_consistent, "eps_consistent")?;
            }
            let mut s = serde_json::to_string_pretty(&rows)
                .map_err(|e| Failure::config(format!("serialization failed: {e}")))?;
            s.push('\n');
            s
        }
    };
    emit(out.as_ref(), &content)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Compare(args) => cmd_compare(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
