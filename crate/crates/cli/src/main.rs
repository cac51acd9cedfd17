//! Command-line front end: coefficient tables, observable sweeps, figure
//! data files and verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

mod figures;
mod sweep;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use dualcs_core::{verify, Error, NonlinearityFunction, StateFamily, StateKind, Trunc};

use sweep::{evaluate, fmt, write_csv, write_json, Row};

#[derive(Parser)]
#[command(
    name = "dualcs",
    version,
    about = "Deformed and inverse-deformed coherent states: \
coefficient tables, photon statistics, squeezing sweeps and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Fock coefficients of one state.
    Coeffs(CoeffsArgs),
    /// Photon statistics and quadrature variances, at a point or on a grid.
    Observables(ObservablesArgs),
    /// Emit the data file behind one of the ten figure sweeps.
    Figure(FigureArgs),
    /// Run a named invariant suite and report pass/fail per property.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct FamilyArgs {
    /// State family: standard-cs | nlcs | inverse | dual-inverse |
    /// inverse-bosonic-eigenstate | dual-inverse-bosonic | gp-su11 |
    /// su11-inverse | photon-added | photon-subtracted
    #[arg(long)]
    family: String,

    /// Nonlinearity: unit | inverse-bosonic | hydrogen | harmonious | su11
    #[arg(long)]
    f: Option<String>,

    /// Amplitude, as `re` or `re,im`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    z: String,

    /// Bargmann index for the su(1,1) families (>= 1/2).
    #[arg(long)]
    kappa: Option<f64>,

    /// Photon number for added/subtracted families.
    #[arg(long)]
    m: Option<u32>,

    /// Fixed truncation; the default grows N until the tail criteria hold.
    #[arg(long = "n-max")]
    n_max: Option<usize>,
}

#[derive(Args)]
struct CoeffsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ObservablesArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Sweep grid `lo:hi:n` (real axis) or `lo:hi:n,lo:hi:n` (complex
    /// mesh, re then im). Without it, the single point --z is evaluated.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure number, 1..=10.
    id: u32,
    /// Output path; defaults to figure<id>.<ext>.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Override the per-axis grid resolution.
    #[arg(long)]
    grid: Option<usize>,
    /// Override the half-width of the complex viewport.
    #[arg(long)]
    extent: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// operators | eigen | duality | moments | all
    suite: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Observables(args) => cmd_observables(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Verify(args) => return cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // a closed stdout (e.g. piping into `head`) is not an error
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(std::io::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn parse_z(text: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let parse = |s: &str| -> Result<f64, CliError> {
        s.trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("cannot parse `{s}` as a number in --z")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(CliError::Usage(format!(
            "--z expects `re` or `re,im`, got `{text}`"
        ))),
    }
}

fn nonlinearity_from(name: &str, kappa: Option<f64>) -> Result<NonlinearityFunction, CliError> {
    if name == "su11" {
        let kappa =
            kappa.ok_or_else(|| CliError::Usage("--f su11 requires --kappa".to_string()))?;
        Ok(NonlinearityFunction::su11(kappa)?)
    } else {
        Ok(NonlinearityFunction::builtin(name)?)
    }
}

fn family_from(args: &FamilyArgs) -> Result<StateFamily, CliError> {
    let kind = StateKind::from_name(&args.family)?;
    let mut family = StateFamily::new(kind).with_z(parse_z(&args.z)?);
    if let Some(name) = &args.f {
        family = family.with_f(nonlinearity_from(name, args.kappa)?);
    }
    if let Some(kappa) = args.kappa {
        family = family.with_kappa(kappa);
    }
    if let Some(m) = args.m {
        family = family.with_m(m);
    }
    if let Some(n) = args.n_max {
        family = family.with_truncation(Trunc::Fixed(n));
    }
    family.validate()?;
    Ok(family)
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn family_spec_json(args: &FamilyArgs) -> serde_json::Value {
    json!({
        "family": args.family,
        "f": args.f,
        "z": args.z,
        "kappa": args.kappa,
        "m": args.m,
        "n_max": args.n_max,
    })
}

fn cmd_coeffs(args: CoeffsArgs) -> Result<(), CliError> {
    let family = family_from(&args.family)?;
    let built = family.build()?;
    let mut out = open_output(&args.out)?;
    match args.format {
        Format::Csv => {
            writeln!(out, "n,re_c,im_c,prob")?;
            for (n, c) in built.vector.coeffs().iter().enumerate() {
                writeln!(out, "{n},{},{},{}", fmt(c.re), fmt(c.im), fmt(c.norm_sqr()))?;
            }
        }
        Format::Json => {
            let coeffs: Vec<_> = built
                .vector
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| json!({"n": n, "re_c": c.re, "im_c": c.im, "prob": c.norm_sqr()}))
                .collect();
            let doc = json!({
                "spec": family_spec_json(&args.family),
                "truncation": built.truncation_used,
                "log_norm_constant": built.log_norm,
                "tail_bound": built.vector.tail_bound(),
                "coeffs": coeffs,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn parse_axis(spec: &str) -> Result<(f64, f64, usize), CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "grid axis must be `lo:hi:n`, got `{spec}`"
        )));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid bound `{}`", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid bound `{}`", parts[1])))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid count `{}`", parts[2])))?;
    if n == 0 || hi <= lo {
        return Err(CliError::Usage(format!("empty grid `{spec}`")));
    }
    Ok((lo, hi, n))
}

fn cmd_observables(args: ObservablesArgs) -> Result<(), CliError> {
    let family = family_from(&args.family)?;
    let kappa = args.family.kappa;

    let rows: Vec<Row> = match &args.grid {
        None => vec![evaluate(&family, kappa, parse_z(&args.family.z)?)?],
        Some(gridspec) => {
            let axes: Vec<&str> = gridspec.split(',').collect();
            match axes.as_slice() {
                [re_axis] => {
                    let (lo, hi, n) = parse_axis(re_axis)?;
                    sweep::inclusive_grid(lo, hi, n)
                        .into_iter()
                        .map(|x| evaluate(&family, kappa, Complex64::new(x, 0.0)))
                        .collect::<Result<_, _>>()?
                }
                [re_axis, im_axis] => {
                    let (rlo, rhi, rn) = parse_axis(re_axis)?;
                    let (ilo, ihi, inn) = parse_axis(im_axis)?;
                    let mut rows = Vec::with_capacity(rn * inn);
                    for re in sweep::inclusive_grid(rlo, rhi, rn) {
                        for im in sweep::inclusive_grid(ilo, ihi, inn) {
                            rows.push(evaluate(&family, kappa, Complex64::new(re, im))?);
                        }
                    }
                    rows
                }
                _ => {
                    return Err(CliError::Usage(
                        "--grid expects one or two `lo:hi:n` axes".to_string(),
                    ))
                }
            }
        }
    };

    let mut out = open_output(&args.out)?;
    match args.format {
        Format::Csv => write_csv(&mut out, &rows, kappa.is_some())?,
        Format::Json => {
            let mut spec = family_spec_json(&args.family);
            spec["grid"] = json!(args.grid);
            spec["observables"] = json!(["q", "var_x", "var_p", "mean_n"]);
            write_json(&mut out, spec, &rows)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_figure(args: FigureArgs) -> Result<(), CliError> {
    let data = figures::figure(args.id, args.grid, args.extent)?;
    let default_name = format!(
        "figure{}.{}",
        args.id,
        match args.format {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    );
    let path = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(default_name));
    let mut out: Box<dyn Write> = Box::new(BufWriter::new(File::create(&path)?));
    match args.format {
        Format::Csv => write_csv(&mut out, &data.rows, data.with_kappa)?,
        Format::Json => write_json(&mut out, data.spec, &data.rows)?,
    }
    out.flush()?;
    eprintln!("wrote {} rows to {}", data.rows.len(), path.display());
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let checks = match args.suite.as_str() {
        "operators" => verify::operators_suite(),
        "eigen" => verify::eigen_suite(),
        "duality" => verify::duality_suite(),
        "moments" => verify::moments_suite(),
        "all" => verify::all_suites(),
        other => {
            eprintln!(
                "error: unknown suite `{other}` (operators | eigen | duality | moments | all)"
            );
            return ExitCode::from(2);
        }
    };
    let mut failures = 0usize;
    for check in &checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!("{status} {} ({})", check.name, check.detail);
        if !check.passed {
            failures += 1;
        }
    }
    println!("{} checks, {} failed", checks.len(), failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
