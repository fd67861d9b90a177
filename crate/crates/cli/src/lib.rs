//! `dqd` command-line front end.
//!
//! Every number printed here comes from a `dqd_core` call. The binary is a
//! thin wrapper around [`run`] so the whole command surface is testable
//! in-process.

pub mod config;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use dqd_core::qdot::{gibbs_state, partition_function, spectrum, thermal_populations};
use dqd_core::regimes::{
    classify, engine_branch_thresholds, refrigerator_branch_thresholds, RefrigeratorSign,
};
use dqd_core::sweep::{format_number, run_sweep};
use dqd_core::thermo::{run_cycle_closed_form, run_cycle_matrix};
use dqd_core::verify::{run_verification, VerifyOptions};
use dqd_core::{BranchKind, Classification, Mode, StrokeLedger};
use serde::Serialize;

pub use config::{Format, Options};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] dqd_core::Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dqd",
    version,
    about = "Measurement-powered double-quantum-dot thermal machine"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy gap, eigenbasis and thermal populations.
    Spectrum(CommandArgs),
    /// Stroke-by-stroke energy and entropy ledger of one cycle.
    Cycle(CommandArgs),
    /// Operating mode and performance of one point on a branch.
    Classify(CommandArgs),
    /// Mode and performance over a (strength, detuning) grid.
    Sweep(CommandArgs),
    /// Randomized self-consistency checks of the library.
    Verify(CommandArgs),
}

#[derive(Debug, Args)]
struct CommandArgs {
    /// TOML file with the same keys as the long flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    options: Options,
    /// Zero one Kraus operator before verifying (negative control).
    #[arg(long, hide = true)]
    corrupt_kraus: bool,
}

impl CommandArgs {
    fn resolve(self) -> Result<(Options, bool), CliError> {
        let options = match &self.config {
            Some(path) => self.options.over(Options::from_file(path)?),
            None => self.options,
        };
        Ok((options, self.corrupt_kraus))
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    match command {
        Command::Spectrum(args) => {
            let (o, _) = args.resolve()?;
            let text = spectrum_report(&o)?;
            emit(&o, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Cycle(args) => {
            let (o, _) = args.resolve()?;
            let text = cycle_report(&o)?;
            emit(&o, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Classify(args) => {
            let (o, _) = args.resolve()?;
            let text = classify_report(&o)?;
            emit(&o, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Sweep(args) => {
            let (o, _) = args.resolve()?;
            sweep(&o, stdout, stderr)
        }
        Command::Verify(args) => {
            let (o, corrupt) = args.resolve()?;
            verify(&o, corrupt, stdout)
        }
    }
}

/// Writes the finished text to `--output` if given, else to stdout.
fn emit(o: &Options, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &o.output {
        Some(path) => write_file(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("writing to stdout: {e}"))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn key_value_csv(rows: &[(&str, String)]) -> String {
    let mut s = String::from("key,value\n");
    for (k, v) in rows {
        let _ = writeln!(s, "{k},{v}");
    }
    s
}

fn opt_number(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

#[derive(Debug, Serialize)]
pub struct SpectrumReport {
    pub epsilon: f64,
    pub tau: f64,
    pub temperature: f64,
    pub gap: f64,
    pub theta: f64,
    pub eigenvalues: [f64; 2],
    pub eigenvectors: [[f64; 2]; 2],
    /// Thermal occupation of the ground and excited level.
    pub populations: [f64; 2],
    /// Gibbs state diagonal in the localized basis.
    pub gibbs_diagonal: [f64; 2],
    pub partition_function: f64,
    pub degenerate: bool,
}

pub fn spectrum_data(o: &Options) -> Result<SpectrumReport, CliError> {
    let p = o.params()?;
    let t = o.temperature()?;
    let s = spectrum(&p);
    let (upper, lower) = thermal_populations(s.gap, t)?;
    let g = gibbs_state(&p, t)?;
    let m = g.matrix();
    Ok(SpectrumReport {
        epsilon: p.epsilon,
        tau: p.tau,
        temperature: t,
        gap: s.gap,
        theta: s.theta,
        eigenvalues: s.eigenvalues,
        eigenvectors: s.eigenvectors,
        populations: [lower, upper],
        gibbs_diagonal: [m.get(0, 0).re, m.get(1, 1).re],
        partition_function: partition_function(s.gap, t)?,
        degenerate: s.degenerate,
    })
}

fn spectrum_report(o: &Options) -> Result<String, CliError> {
    let r = spectrum_data(o)?;
    Ok(match o.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&r),
        Format::Csv => key_value_csv(&[
            ("epsilon", format_number(r.epsilon)),
            ("tau", format_number(r.tau)),
            ("temperature", format_number(r.temperature)),
            ("gap", format_number(r.gap)),
            ("theta", format_number(r.theta)),
            ("eigenvalue_upper", format_number(r.eigenvalues[0])),
            ("eigenvalue_lower", format_number(r.eigenvalues[1])),
            ("population_ground", format_number(r.populations[0])),
            ("population_excited", format_number(r.populations[1])),
            ("partition_function", format_number(r.partition_function)),
            ("degenerate", r.degenerate.to_string()),
        ]),
    })
}

#[derive(Debug, Serialize)]
pub struct CycleReport {
    pub epsilon: f64,
    pub tau: f64,
    pub temperature: f64,
    pub a: f64,
    pub b: f64,
    pub matrix: StrokeLedger,
    pub closed_form: StrokeLedger,
    pub max_discrepancy: f64,
}

pub fn cycle_data(o: &Options) -> Result<CycleReport, CliError> {
    let inputs = o.cycle_inputs()?;
    let matrix = run_cycle_matrix(&inputs)?;
    let closed_form = run_cycle_closed_form(&inputs)?;
    Ok(CycleReport {
        epsilon: inputs.params.epsilon,
        tau: inputs.params.tau,
        temperature: inputs.temperature,
        a: inputs.a,
        b: inputs.b,
        max_discrepancy: matrix.max_discrepancy(&closed_form),
        matrix,
        closed_form,
    })
}

fn cycle_report(o: &Options) -> Result<String, CliError> {
    let r = cycle_data(o)?;
    Ok(match o.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&r),
        Format::Csv => {
            let mut s = String::from("path,dU1,dU2,dU3,dS1,dS2,dS3,max_discrepancy\n");
            for (name, l) in [("matrix", &r.matrix), ("closed-form", &r.closed_form)] {
                let cols: Vec<String> = l
                    .energies()
                    .iter()
                    .chain(l.entropies().iter())
                    .map(|&x| format_number(x))
                    .collect();
                let _ = writeln!(
                    s,
                    "{name},{},{}",
                    cols.join(","),
                    format_number(r.max_discrepancy)
                );
            }
            s
        }
    })
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub branch: BranchKind,
    pub epsilon: f64,
    pub tau: f64,
    pub temperature: f64,
    pub strength_label: &'static str,
    pub strength: f64,
    #[serde(flatten)]
    pub classification: Classification,
    /// Named mode boundaries along the strength axis, clamped to `[0, 1]`.
    pub thresholds: Vec<(String, f64)>,
    /// Nearest boundaries below and above the point.
    pub bracket: [Option<f64>; 2],
}

pub fn classify_data(o: &Options) -> Result<ClassifyReport, CliError> {
    let branch = o.branch()?;
    let p = o.params()?;
    let t = o.temperature()?;
    let s = o.branch_strength(branch)?;
    let classification = classify(branch, &p, t, s, o.zero_tol())?;
    let thresholds: Vec<(String, f64)> = match branch {
        BranchKind::Engine => {
            let th = engine_branch_thresholds(&p, t)?;
            vec![
                ("heater_max".into(), th.heater_max),
                ("engine_min".into(), th.engine_min),
                ("engine_max".into(), th.engine_max),
            ]
        }
        BranchKind::RefrigeratorPlus | BranchKind::RefrigeratorMinus => {
            let sign = if branch == BranchKind::RefrigeratorPlus {
                RefrigeratorSign::Plus
            } else {
                RefrigeratorSign::Minus
            };
            let th = refrigerator_branch_thresholds(&p, t, sign)?;
            vec![
                ("accel_max".into(), th.accel_max),
                ("refrig_min".into(), th.refrig_min),
            ]
        }
    };
    let below = thresholds
        .iter()
        .map(|x| x.1)
        .filter(|&x| x <= s)
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    let above = thresholds
        .iter()
        .map(|x| x.1)
        .filter(|&x| x > s)
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.min(x))));
    Ok(ClassifyReport {
        branch,
        epsilon: p.epsilon,
        tau: p.tau,
        temperature: t,
        strength_label: branch.strength_label(),
        strength: s,
        classification,
        thresholds,
        bracket: [below, above],
    })
}

fn classify_report(o: &Options) -> Result<String, CliError> {
    let r = classify_data(o)?;
    Ok(match o.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&r),
        Format::Csv => {
            let c = &r.classification;
            let mut rows = vec![
                ("branch", r.branch.to_string()),
                ("epsilon", format_number(r.epsilon)),
                ("tau", format_number(r.tau)),
                ("temperature", format_number(r.temperature)),
                (r.strength_label, format_number(r.strength)),
                ("mode", c.mode.to_string()),
                ("Qh", format_number(c.heat_work.qh)),
                ("Qc", format_number(c.heat_work.qc)),
                ("W", format_number(c.heat_work.w)),
                ("performance", opt_number(c.performance)),
                ("reason", c.reason.clone().unwrap_or_default()),
            ];
            for (name, v) in &r.thresholds {
                rows.push((name.as_str(), format_number(*v)));
            }
            key_value_csv(&rows)
        }
    })
}

fn fractions_text(result: &dqd_core::SweepResult) -> String {
    let mut s = String::new();
    for m in Mode::ALL {
        let _ = writeln!(s, "{:<12} {:.6}", m.name(), result.fraction(m));
    }
    s
}

fn sweep(o: &Options, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let spec = o.grid_spec()?;
    let result = run_sweep(&spec)?;
    let text = match o.format.unwrap_or(Format::Csv) {
        Format::Csv => result.to_csv_string(),
        Format::Json => result.to_json_string() + "\n",
    };
    let summary = fractions_text(&result);
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match &o.output {
        Some(path) => {
            write_file(path, &text)?;
            stdout.write_all(summary.as_bytes()).map_err(io)?;
        }
        // Data owns stdout, so the summary moves to stderr.
        None => {
            stdout.write_all(text.as_bytes()).map_err(io)?;
            stderr.write_all(summary.as_bytes()).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn verify(o: &Options, corrupt_kraus: bool, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let trials = o.trials.unwrap_or(1000);
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let mut opts = VerifyOptions::new(o.seed.unwrap_or(42), trials);
    opts.corrupt_kraus = corrupt_kraus;
    let report = run_verification(&opts);

    let text = match o.format {
        Some(Format::Json) => to_json(&report),
        Some(Format::Csv) => {
            let mut s = String::from("suite,cases,max_residual,tolerance,passed\n");
            for r in &report.suites {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.name,
                    r.cases,
                    format_number(r.max_residual),
                    format_number(r.tolerance),
                    r.passed
                );
            }
            s
        }
        None => {
            let mut s = format!("seed {} trials {}\n", report.seed, report.trials);
            for r in &report.suites {
                let _ = writeln!(
                    s,
                    "{:<4} {:<22} cases {:>7}  max residual {:.3e}  (tol {:.0e})",
                    if r.passed { "ok" } else { "FAIL" },
                    r.name,
                    r.cases,
                    r.max_residual,
                    r.tolerance
                );
                if let Some(f) = &r.failure {
                    let _ = writeln!(s, "     failing case: {f}");
                }
            }
            let _ = writeln!(
                s,
                "{}",
                if report.passed() {
                    "all suites passed"
                } else {
                    "verification FAILED"
                }
            );
            s
        }
    };
    emit(o, &text, stdout)?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}
