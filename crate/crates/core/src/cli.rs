//! `hellmann` command-line front end.
//!
//! Exit codes: 0 success, 1 numerical or spectrum failure (including bound
//! direction violations), 2 usage error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use crate::curves::{energy_curve_with, sweep_b_with, RowStatus, SweepConfig};
use crate::envelope::envelope_energy;
use crate::error::Error;
use crate::model::{reduce_scale, HellmannParams, QuantumNumbers};
use crate::oracle::{solve, DEFAULT_TOL};
use crate::output::{emit, Cell, Format, Table, SCHEMA_VERSION};
use crate::par::Execution;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hellmann",
    version,
    about = "Envelope bounds and reference eigenvalues for H = -ω Δ - A/r + B e^(-Cr)/r"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Envelope bound for one eigenvalue.
    Bound(BoundArgs),
    /// Reference eigenvalue from the radial eigensolver.
    Solve(SolveArgs),
    /// Bounds (and optionally reference values) over a range of B.
    #[command(name = "sweep-b")]
    SweepB(SweepArgs),
    /// Parametric coupling curve {v, E(v)} of -Δ + v V.
    Curve(CurveArgs),
    /// Checks E(ω,A,B,C) = C² ω E(1, A/(ωC), B/(ωC), 1) with the eigensolver.
    #[command(name = "scale-check")]
    ScaleCheck(ScaleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Radial index, ground state n = 1.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Orbital angular momentum.
    #[arg(long = "l", default_value_t = 0)]
    pub ell: u32,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add a Unix timestamp to the JSON metadata.
    #[arg(long)]
    pub timestamp: bool,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[arg(long = "A", default_value_t = 2.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long = "B", default_value_t = 0.0, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long = "C", default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    /// Kinetic weight ω in -ω Δ.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, default_value_t = DEFAULT_TOL, allow_negative_numbers = true)]
    pub tol: f64,
    /// Also write the sampled wavefunction as CSV (r,u).
    #[arg(long)]
    pub dump_samples: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long = "A", default_value_t = 2.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long = "C", default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    pub b_min: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub b_max: f64,
    #[arg(long, default_value_t = 81)]
    pub steps: usize,
    /// Solve every row with the eigensolver and check the bound direction.
    #[arg(long)]
    pub with_oracle: bool,
    #[arg(long, default_value_t = DEFAULT_TOL, allow_negative_numbers = true)]
    pub tol: f64,
    /// Evaluate rows on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[arg(long = "A", default_value_t = 2.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long = "B", default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long = "C", default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    #[command(flatten)]
    pub state: StateArgs,
    /// Smallest contact radius; with the defaults v spans roughly [0.2, 5].
    #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
    pub r_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub r_max: f64,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScaleArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, default_value_t = DEFAULT_TOL, allow_negative_numbers = true)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) => m,
        }
    }
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn numerical(e: Error) -> CliError {
    CliError::Numerical(e.to_string())
}

fn write_out(text: &str, out: &OutputArgs) -> Result<(), CliError> {
    emit(text, out.out.as_deref())
        .map_err(|e| CliError::Numerical(format!("could not write output: {e}")))
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--tol must be > 0, got {tol}")))
    }
}

fn meta(command: &str, out: &OutputArgs, fields: &[(&str, Value)]) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    m.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), Value::from(command));
    for (k, v) in fields {
        m.insert((*k).to_string(), v.clone());
    }
    if out.timestamp {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        m.insert("timestamp".into(), Value::from(secs));
    }
    m
}

fn params_of(p: &PotentialArgs) -> Result<HellmannParams, CliError> {
    HellmannParams::with_omega(p.a, p.b, p.c, p.omega).map_err(usage)
}

fn state_of(s: &StateArgs) -> Result<QuantumNumbers, CliError> {
    QuantumNumbers::new(s.n, s.ell).map_err(usage)
}

fn potential_meta(p: &HellmannParams, q: &QuantumNumbers) -> Vec<(&'static str, Value)> {
    vec![
        ("A", Value::from(p.a())),
        ("B", Value::from(p.b())),
        ("C", Value::from(p.c())),
        ("omega", Value::from(p.omega())),
        ("n", Value::from(q.n())),
        ("ell", Value::from(q.ell())),
    ]
}

/// Runs one parsed invocation and writes its output.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bound(args) => cmd_bound(&args),
        Command::Solve(args) => cmd_solve(&args),
        Command::SweepB(args) => cmd_sweep_b(&args),
        Command::Curve(args) => cmd_curve(&args),
        Command::ScaleCheck(args) => cmd_scale_check(&args),
    }
}

pub fn cmd_bound(args: &BoundArgs) -> Result<(), CliError> {
    let p = params_of(&args.potential)?;
    let q = state_of(&args.state)?;
    let bound = envelope_energy(&p, &q).map_err(numerical)?;
    let mut t = Table::new(&[
        "A",
        "B",
        "C",
        "omega",
        "n",
        "ell",
        "energy",
        "direction",
        "minimizer_r",
    ]);
    t.push(vec![
        p.a().into(),
        p.b().into(),
        p.c().into(),
        p.omega().into(),
        q.n().into(),
        q.ell().into(),
        bound.energy.into(),
        bound.direction.as_str().into(),
        bound.minimizer_r.into(),
    ]);
    let m = meta("bound", &args.output, &potential_meta(&p, &q));
    write_out(&t.render(args.output.format, m), &args.output)
}

pub fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    let p = params_of(&args.potential)?;
    let q = state_of(&args.state)?;
    check_tol(args.tol)?;
    let sol = solve(&p, &q, args.tol).map_err(numerical)?;
    if let Some(path) = &args.dump_samples {
        let file = std::fs::File::create(path).map_err(|e| {
            CliError::Numerical(format!("could not create {}: {e}", path.display()))
        })?;
        sol.write_samples_csv(std::io::BufWriter::new(file))
            .map_err(numerical)?;
    }
    let mut t = Table::new(&["energy", "nodes", "tol", "r_max", "num_points"]);
    t.push(vec![
        sol.energy.into(),
        sol.nodes.into(),
        sol.tolerance.into(),
        sol.grid.r_max().into(),
        sol.grid.num_points().into(),
    ]);
    let mut fields = potential_meta(&p, &q);
    fields.push(("tol", Value::from(args.tol)));
    fields.push(("r_min", Value::from(sol.grid.r_min())));
    let m = meta("solve", &args.output, &fields);
    write_out(&t.render(args.output.format, m), &args.output)
}

pub fn cmd_sweep_b(args: &SweepArgs) -> Result<(), CliError> {
    let q = state_of(&args.state)?;
    HellmannParams::with_omega(args.a, 0.0, args.c, args.omega).map_err(usage)?;
    check_tol(args.tol)?;
    let cfg = SweepConfig {
        a: args.a,
        c: args.c,
        omega: args.omega,
        quantum: q,
        b_min: args.b_min,
        b_max: args.b_max,
        steps: args.steps,
        oracle_tol: args.with_oracle.then_some(args.tol),
    };
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let rows = sweep_b_with(&cfg, exec).map_err(usage)?;

    let mut t = Table::new(&["B", "bound", "direction", "oracle", "gap", "status"]);
    for row in &rows {
        t.push(vec![
            row.b.into(),
            row.bound.into(),
            row.direction.map_or(Cell::Missing, |d| d.as_str().into()),
            row.oracle.into(),
            row.gap.into(),
            row.status.label().into(),
        ]);
    }
    let fields = vec![
        ("A", Value::from(args.a)),
        ("C", Value::from(args.c)),
        ("omega", Value::from(args.omega)),
        ("n", Value::from(q.n())),
        ("ell", Value::from(q.ell())),
        ("b_min", Value::from(args.b_min)),
        ("b_max", Value::from(args.b_max)),
        ("steps", Value::from(args.steps)),
        ("with_oracle", Value::from(args.with_oracle)),
        ("tol", Value::from(args.tol)),
    ];
    let m = meta("sweep-b", &args.output, &fields);
    write_out(&t.render(args.output.format, m), &args.output)?;

    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.status != RowStatus::Ok)
        .map(|r| format!("B = {}: {}", r.b, r.status.label()))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "{} row(s) failed:\n  {}",
            bad.len(),
            bad.join("\n  ")
        )))
    }
}

pub fn cmd_curve(args: &CurveArgs) -> Result<(), CliError> {
    let p = HellmannParams::with_omega(args.a, args.b, args.c, args.omega).map_err(usage)?;
    let q = state_of(&args.state)?;
    if args.steps < 2 || !(args.r_min > 0.0 && args.r_max > args.r_min) {
        return Err(CliError::Usage(format!(
            "curve needs steps >= 2 and 0 < r_min < r_max, got steps = {}, [{}, {}]",
            args.steps, args.r_min, args.r_max
        )));
    }
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let points =
        energy_curve_with(&p, &q, args.r_min, args.r_max, args.steps, exec).map_err(numerical)?;
    let mut t = Table::new(&["r", "v", "energy", "scaled"]);
    for pt in &points {
        t.push(vec![
            pt.contact_r.into(),
            pt.v.into(),
            pt.energy.into(),
            pt.scaled.into(),
        ]);
    }
    let mut fields = potential_meta(&p, &q);
    fields.push(("r_min", Value::from(args.r_min)));
    fields.push(("r_max", Value::from(args.r_max)));
    fields.push(("steps", Value::from(args.steps)));
    let m = meta("curve", &args.output, &fields);
    write_out(&t.render(args.output.format, m), &args.output)
}

/// Both sides of the scale reduction, solved independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleReport {
    pub full: f64,
    pub reduced: f64,
    pub multiplier: f64,
    pub predicted: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub threshold: f64,
    pub passed: bool,
}

pub fn scale_report(
    p: &HellmannParams,
    q: &QuantumNumbers,
    tol: f64,
) -> crate::Result<ScaleReport> {
    let scaled = reduce_scale(p);
    let full = solve(p, q, tol)?.energy;
    let reduced = solve(&scaled.reduced()?, q, tol)?.energy;
    let predicted = scaled.multiplier * reduced;
    let abs_diff = (full - predicted).abs();
    // each side carries `tol` in its own energy units
    let threshold = 10.0 * tol * scaled.multiplier.max(1.0);
    Ok(ScaleReport {
        full,
        reduced,
        multiplier: scaled.multiplier,
        predicted,
        abs_diff,
        rel_diff: abs_diff / full.abs(),
        threshold,
        passed: abs_diff <= threshold,
    })
}

pub fn cmd_scale_check(args: &ScaleArgs) -> Result<(), CliError> {
    let p = params_of(&args.potential)?;
    let q = state_of(&args.state)?;
    check_tol(args.tol)?;
    let rep = scale_report(&p, &q, args.tol).map_err(numerical)?;
    let mut t = Table::new(&[
        "omega",
        "A",
        "B",
        "C",
        "n",
        "ell",
        "full",
        "reduced",
        "multiplier",
        "predicted",
        "ratio",
        "abs_diff",
        "threshold",
        "status",
    ]);
    t.push(vec![
        p.omega().into(),
        p.a().into(),
        p.b().into(),
        p.c().into(),
        q.n().into(),
        q.ell().into(),
        rep.full.into(),
        rep.reduced.into(),
        rep.multiplier.into(),
        rep.predicted.into(),
        (rep.full / rep.predicted).into(),
        rep.abs_diff.into(),
        rep.threshold.into(),
        if rep.passed { "pass" } else { "fail" }.into(),
    ]);
    let mut fields = potential_meta(&p, &q);
    fields.push(("tol", Value::from(args.tol)));
    let m = meta("scale-check", &args.output, &fields);
    write_out(&t.render(args.output.format, m), &args.output)?;
    if rep.passed {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "scaling mismatch {:.3e} exceeds {:.3e}",
            rep.abs_diff, rep.threshold
        )))
    }
}
