//! The `qfim` command-line frontend.
//!
//! Data goes to stdout (or `--out`), diagnostics to stderr. Exit codes:
//! 0 success, 1 I/O or numerical failure, 2 malformed input, 3 infeasible
//! specification, 4 unnormalized input state.

use std::fmt::Write as _;
use std::io::{IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::closed_form::{realize, Param, SpinParams};
use crate::entanglement::{total_concurrence, ConcurrenceReport};
use crate::error::Error;
use crate::exec::Execution;
use crate::hypergraph::{parse_edge_flags, parse_hypergraph};
use crate::reproduce::{self, Reproduction, Resolution, Target};
use crate::spin::{brute_force_max_variance, metric_report, MetricReport};
use crate::statevec::{ghz_state, QubitState};
use crate::sweep::{
    locate_extremum, run_phase_sweep_with, run_sweep_with, Constraint, ExtremumKind, GridRange, PhaseSweepSpec, Sign,
    SweepSpec, DEFAULT_AMPLITUDE_STEP, DEFAULT_PHASE_POINTS,
};

/// Largest deviation of `⟨ψ|ψ⟩` from one accepted on input states.
pub const INPUT_NORM_TOL: f64 = 1e-6;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input or unknown names.
    Parse(String),
    /// A well-formed request that cannot be satisfied.
    Infeasible(String),
    /// Input state off unit norm by more than [`INPUT_NORM_TOL`].
    Unnormalized(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Other(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Unnormalized(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Infeasible(m) | CliError::Unnormalized(m) | CliError::Other(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. }
            | Error::Json(_)
            | Error::LengthMismatch { .. }
            | Error::QubitOutOfRange { .. }
            | Error::TooFewTargets(_)
            | Error::InvalidCut(_)
            | Error::InvalidSweep(_) => CliError::Parse(msg),
            Error::InvalidSize { .. } | Error::Infeasible { .. } | Error::NotSymmetric { .. } => {
                CliError::Infeasible(msg)
            }
            Error::NotNormalized { .. } => CliError::Unnormalized(msg),
            Error::SingularFrame { .. } | Error::Io(_) => CliError::Other(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "qfim",
    version,
    about = "Quantum Fisher information of graph, hypergraph and GHZ states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a state and print its amplitudes.
    State(StateArgs),
    /// Fisher information, χ², statistical speed and concurrences of a state.
    Metrics(MetricsArgs),
    /// Single-qubit-cut concurrences of a state.
    Concurrence(StateArgs),
    /// χ² along a one-parameter family of symmetric three-qubit states.
    Sweep(SweepArgs),
    /// χ² over a phase × amplitude grid.
    PhaseSweep(PhaseSweepArgs),
    /// Run a named preset and compare its extrema with reference values.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)))]
pub struct Source {
    /// Graph edge list, e.g. "3; 1 2; 2 3; 3 1".
    #[arg(long, group = "source")]
    pub graph: Option<String>,
    /// Hypergraph edge list, e.g. "3; 1 2 3".
    #[arg(long, group = "source")]
    pub hypergraph: Option<String>,
    /// Comma-separated edges, e.g. "1 2,2 3,3 1"; needs --vertices.
    #[arg(long, group = "source", requires = "vertices")]
    pub edges: Option<String>,
    /// GHZ state on this many qubits.
    #[arg(long, group = "source")]
    pub ghz: Option<usize>,
    /// Symmetric three-qubit state as JSON, e.g. '{"alpha":1}'.
    #[arg(long, group = "source")]
    pub params: Option<String>,
    /// State JSON file.
    #[arg(long, group = "source")]
    pub state_file: Option<PathBuf>,
    /// Read state JSON from stdin.
    #[arg(long, group = "source")]
    pub stdin: bool,
    /// Vertex count for --edges.
    #[arg(long)]
    pub vertices: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Defaults to `table` on a terminal, `json` otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    /// Also run the direction-grid oracle with this many points.
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AmplitudeAxis {
    /// Base parameters as JSON; the varied and dependent entries are overwritten.
    #[arg(long, default_value = "{}")]
    pub params: String,
    /// Amplitude to vary (alpha, beta, gamma, delta).
    #[arg(long)]
    pub vary: Param,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub start: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub stop: f64,
    #[arg(long, default_value_t = DEFAULT_AMPLITUDE_STEP)]
    pub step: f64,
    /// Amplitude fixed by normalization.
    #[arg(long)]
    pub dependent: Param,
    /// Root taken for the dependent amplitude (+ or -).
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub sign: Sign,
}

impl AmplitudeAxis {
    fn spec(&self) -> CliResult<SweepSpec> {
        let fixed: SpinParams =
            serde_json::from_str(&self.params).map_err(|e| CliError::Parse(format!("--params: {e}")))?;
        Ok(SweepSpec {
            fixed,
            vary: self.vary,
            range: GridRange::new(self.start, self.stop, self.step)?,
            constraint: Constraint {
                dependent: self.dependent,
                sign: self.sign,
            },
        })
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub axis: AmplitudeAxis,
    /// Refine both extrema by golden-section search to this width.
    #[arg(long)]
    pub refine_tol: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PhaseSweepArgs {
    #[command(flatten)]
    pub axis: AmplitudeAxis,
    /// Phase to vary over [0, 2π) (mu, nu, eta).
    #[arg(long)]
    pub phase: Param,
    /// Number of phase points.
    #[arg(long, default_value_t = DEFAULT_PHASE_POINTS)]
    pub grid: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// table1, table2, fig5, fig6 or fig7.
    pub target: String,
    /// Amplitude step, overriding the preset.
    #[arg(long)]
    pub step: Option<f64>,
    /// Phase points per grid (figures 6 and 7).
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub refine_tol: Option<f64>,
    /// Write one CSV per artifact plus summary.txt into this directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses the process arguments and runs the command.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qfim: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn execute(command: Command) -> CliResult<()> {
    match command {
        Command::State(a) => cmd_state(&a),
        Command::Metrics(a) => cmd_metrics(&a),
        Command::Concurrence(a) => cmd_concurrence(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::PhaseSweep(a) => cmd_phase_sweep(&a),
        Command::Reproduce(a) => cmd_reproduce(&a),
    }
}

fn load_state(src: &Source) -> CliResult<QubitState> {
    if let Some(text) = &src.graph {
        let h = parse_hypergraph(text)?;
        if !h.is_graph() {
            return Err(CliError::Parse(
                "--graph: every edge must join exactly two vertices".into(),
            ));
        }
        return Ok(h.build_state()?);
    }
    if let Some(text) = &src.hypergraph {
        return Ok(parse_hypergraph(text)?.build_state()?);
    }
    if let Some(edges) = &src.edges {
        let n = src.vertices.expect("clap enforces --vertices");
        return Ok(parse_edge_flags(edges, n)?.build_state()?);
    }
    if let Some(n) = src.ghz {
        return Ok(ghz_state(n)?);
    }
    if let Some(text) = &src.params {
        let p: SpinParams = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("--params: {e}")))?;
        let p = p.validated().map_err(|e| match e {
            Error::NotNormalized { .. } => CliError::Infeasible(format!("--params: {e}")),
            other => other.into(),
        })?;
        return Ok(realize(&p)?);
    }
    let text = if let Some(path) = &src.state_file {
        std::fs::read_to_string(path).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))?
    } else {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    };
    Ok(QubitState::from_json(&text, INPUT_NORM_TOL)?)
}

fn resolve_format(output: &Output) -> Format {
    output.format.unwrap_or_else(|| {
        if output.out.is_none() && std::io::stdout().is_terminal() {
            Format::Table
        } else {
            Format::Json
        }
    })
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    write_to(output.out.as_deref(), text)
}

fn write_to(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Other(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializing a Value cannot fail");
    s.push('\n');
    s
}

/// `x` to six significant digits, trailing zeros trimmed.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..6).contains(&exp) {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{m}e{exp}");
    }
    let decimals = (5 - exp).max(0) as usize;
    let fixed = format!("{x:.decimals$}");
    if fixed.contains('.') {
        fixed.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        fixed
    }
}

fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().fold(String::new(), |mut out, (k, v)| {
        let _ = writeln!(out, "{k:<width$}  {v}");
        out
    })
}

fn cmd_state(a: &StateArgs) -> CliResult<()> {
    let s = load_state(&a.source)?;
    let n = s.n_qubits();
    let text = match resolve_format(&a.output) {
        Format::Json => {
            let mut t = s.to_json();
            t.push('\n');
            t
        }
        Format::Csv => {
            s.amplitudes()
                .iter()
                .enumerate()
                .fold(String::from("index,basis,re,im\n"), |mut out, (i, z)| {
                    let _ = writeln!(out, "{i},{i:0n$b},{:.16e},{:.16e}", z.re, z.im);
                    out
                })
        }
        Format::Table => {
            let rows: Vec<(String, String)> = s
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(i, z)| (format!("|{i:0n$b}>"), format!("{:>10}  {:>10}", sig6(z.re), sig6(z.im))))
                .collect();
            table(&rows)
        }
    };
    emit(&a.output, &text)
}

fn report_rows(m: &MetricReport, c: &ConcurrenceReport, oracle: Option<f64>) -> Vec<(String, String)> {
    let flag = |b: bool| if b { "yes" } else { "no" }.to_string();
    let mut rows = vec![
        ("n".to_string(), m.n.to_string()),
        ("f_q".into(), sig6(m.f_q)),
        ("chi2".into(), sig6(m.chi_squared)),
        ("v_f".into(), sig6(m.v_f)),
        ("var_max".into(), sig6(m.var_max)),
        ("delta_theta_qcr".into(), sig6(m.delta_theta_qcr)),
        ("degenerate_frame".into(), flag(m.degenerate_frame)),
        ("shot_noise_beaten".into(), flag(m.shot_noise_beaten)),
        ("heisenberg_attained".into(), flag(m.heisenberg_attained)),
    ];
    if let Some(v) = oracle {
        rows.push(("oracle_var_max".into(), sig6(v)));
    }
    rows.extend(
        c.per_cut
            .iter()
            .map(|(label, e)| (format!("concurrence {label}"), sig6(*e))),
    );
    rows.push(("concurrence total".into(), sig6(c.total)));
    rows
}

fn cmd_metrics(a: &MetricsArgs) -> CliResult<()> {
    let s = load_state(&a.source)?;
    let m = metric_report(&s);
    let c = total_concurrence(&s)?;
    let oracle = a.grid.map(|g| brute_force_max_variance(&s, g, Execution::default()));
    let text = match resolve_format(&a.output) {
        Format::Json => {
            let mut v = serde_json::to_value(&m).expect("report serializes");
            v["concurrence"] = serde_json::to_value(&c).expect("report serializes");
            if let Some(o) = oracle {
                v["oracle_var_max"] = json!(o);
            }
            json_text(&v)
        }
        Format::Csv => report_rows(&m, &c, None)
            .into_iter()
            .map(|(k, _)| k)
            .zip(csv_values(&m, &c, oracle))
            .fold(String::from("key,value\n"), |mut out, (k, v)| {
                let _ = writeln!(out, "{k},{v}");
                out
            }),
        Format::Table => table(&report_rows(&m, &c, oracle)),
    };
    emit(&a.output, &text)
}

/// Full-precision values in the order of [`report_rows`].
fn csv_values(m: &MetricReport, c: &ConcurrenceReport, oracle: Option<f64>) -> Vec<String> {
    let mut v = vec![
        m.n.to_string(),
        m.f_q.to_string(),
        m.chi_squared.to_string(),
        m.v_f.to_string(),
        m.var_max.to_string(),
        m.delta_theta_qcr.to_string(),
        m.degenerate_frame.to_string(),
        m.shot_noise_beaten.to_string(),
        m.heisenberg_attained.to_string(),
    ];
    v.extend(oracle.map(|o| o.to_string()));
    v.extend(c.per_cut.iter().map(|(_, e)| e.to_string()));
    v.push(c.total.to_string());
    v
}

fn cmd_concurrence(a: &StateArgs) -> CliResult<()> {
    let s = load_state(&a.source)?;
    let c = total_concurrence(&s)?;
    let text = match resolve_format(&a.output) {
        Format::Json => json_text(&serde_json::to_value(&c).expect("report serializes")),
        Format::Csv => {
            let mut out = String::from("cut,concurrence\n");
            for (label, e) in &c.per_cut {
                let _ = writeln!(out, "\"{label}\",{e}");
            }
            let _ = writeln!(out, "total,{}", c.total);
            out
        }
        Format::Table => {
            let mut rows: Vec<(String, String)> = c.per_cut.iter().map(|(l, e)| (l.clone(), sig6(*e))).collect();
            rows.push(("total".into(), sig6(c.total)));
            table(&rows)
        }
    };
    emit(&a.output, &text)
}

fn extremum_json(spec: &SweepSpec, tol: f64) -> CliResult<Value> {
    let mut out = serde_json::Map::new();
    for (key, kind) in [("min", ExtremumKind::Min), ("max", ExtremumKind::Max)] {
        let e = locate_extremum(spec, kind, tol)?;
        out.insert(
            key.into(),
            json!({"value": e.value, "chi2": e.chi2, "boundary": e.boundary}),
        );
    }
    Ok(Value::Object(out))
}

fn cmd_sweep(a: &SweepArgs) -> CliResult<()> {
    let spec = a.axis.spec()?;
    let result = run_sweep_with(&spec, Execution::default())?;
    let refined = a.refine_tol.map(|t| extremum_json(&spec, t)).transpose()?;
    let format = resolve_format(&a.output);
    if let (Some(r), false) = (&refined, format == Format::Json) {
        eprintln!("refined extrema: {r}");
    }
    let text = match format {
        Format::Json => {
            let mut v = result.to_json();
            if let Some(r) = refined {
                v["refined"] = r;
            }
            json_text(&v)
        }
        Format::Csv => result.to_csv(),
        Format::Table => {
            let mut out = format!(
                "{:>10}  {:>10}  {:>10}  {:>10}\n",
                result.varied_name, result.dependent_name, "chi2", "f_q"
            );
            for r in &result.rows {
                let _ = writeln!(
                    out,
                    "{:>10}  {:>10}  {:>10}  {:>10}",
                    sig6(r.varied),
                    sig6(r.dependent),
                    sig6(r.chi2),
                    sig6(r.f_q)
                );
            }
            let _ = writeln!(
                out,
                "min chi2 {} at {} = {}; max chi2 {} at {} = {}",
                sig6(result.argmin.1),
                result.varied_name,
                sig6(result.argmin.0),
                sig6(result.argmax.1),
                result.varied_name,
                sig6(result.argmax.0)
            );
            out
        }
    };
    emit(&a.output, &text)
}

fn cmd_phase_sweep(a: &PhaseSweepArgs) -> CliResult<()> {
    let spec = PhaseSweepSpec {
        amplitude: a.axis.spec()?,
        phase: a.phase,
        phase_range: GridRange::periodic(a.grid),
    };
    let result = run_phase_sweep_with(&spec, Execution::default())?;
    let text = match resolve_format(&a.output) {
        Format::Json => json_text(&result.to_json()),
        Format::Csv => result.to_csv(),
        Format::Table => {
            let mut out = format!(
                "{:>10}  {:>10}  {:>10}  {:>10}\n",
                result.phase_name, result.varied_name, result.dependent_name, "chi2"
            );
            for r in &result.rows {
                let _ = writeln!(
                    out,
                    "{:>10}  {:>10}  {:>10}  {:>10}",
                    sig6(r.phase),
                    sig6(r.varied),
                    sig6(r.dependent),
                    sig6(r.chi2)
                );
            }
            out
        }
    };
    emit(&a.output, &text)
}

fn cmd_reproduce(a: &ReproduceArgs) -> CliResult<()> {
    let target: Target = a.target.parse().map_err(|e: Error| CliError::Parse(e.to_string()))?;
    let mut res = Resolution::default();
    if let Some(step) = a.step {
        res.amplitude_step = step;
        res.phase_grid_amplitude_step = step;
    }
    if let Some(g) = a.grid {
        res.phase_points = g;
    }
    if let Some(t) = a.refine_tol {
        res.refine_tol = t;
    }
    let r: Reproduction = reproduce::reproduce(target, &res, Execution::default())?;
    match &a.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Other(format!("{}: {e}", dir.display())))?;
            for (name, csv) in &r.artifacts {
                write_to(Some(&dir.join(format!("{name}.csv"))), csv)?;
            }
            let summary = r.summary();
            write_to(Some(&dir.join("summary.txt")), &summary)?;
            write_to(None, &summary)
        }
        None => {
            let mut out = String::new();
            for (name, csv) in &r.artifacts {
                let _ = writeln!(out, "# {name}");
                out.push_str(csv);
            }
            write_to(None, &out)?;
            eprint!("{}", r.summary());
            Ok(())
        }
    }
}
