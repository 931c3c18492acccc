//! Command-line front end for the radial bound-state solver: solve single
//! states or spectra, inspect origin exponents, run the weak-form boundary
//! check, contrast boundary modes over a mixing sweep, and cross-check
//! against the finite-difference route. Reports go to stdout as JSON
//! (deterministic, byte-identical across identical invocations) or CSV;
//! diagnostics go to stderr, one line per failure.

mod report;
mod spec_lang;

use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{csv_table, float_cell, float_field, Value};
use spec_lang::{parse_float_list, parse_mode, parse_potential};
use uzero::delta::{check_compatibility, residual_report, TrialFunction};
use uzero::eigensolver::{sae_scan, solve_state, spectrum};
use uzero::oracle::fd_spectrum;
use uzero::origin::{admissible, indicial, IndicialExponents};
use uzero::{
    BoundaryMode, Channel, Classification, GridScheme, RadialGrid, RadialProblem,
    SolverError,
};

#[derive(Parser)]
#[command(
    name = "uzero",
    version,
    about = "Bound states of the radial Schrodinger equation with explicit \
             control of the u(0) = 0 boundary condition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one bound state and run the boundary-defect check on it
    Solve(SolveArgs),
    /// Solve states n = 0..=n-max, stopping at the first missing one
    Spectrum(SpectrumArgs),
    /// Origin exponent analysis: indicial roots, classification, admissible sets
    Indicial(IndicialArgs),
    /// Weak-form defect of a trial function across test-function widths
    DeltaCheck(DeltaCheckArgs),
    /// Contrast the strict u(0)=0 spectrum with square-integrability-only
    /// spectra over a mixing sweep
    Compare(CompareArgs),
    /// Finite-difference eigenvalues (independent cross-check route)
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridArg {
    /// Logarithmically spaced points (dense near the origin)
    Log,
    /// Evenly spaced points starting at r-min (defaults to the spacing)
    Uniform,
}

#[derive(Args)]
struct ProblemArgs {
    /// Potential: name:key=val,... joined by '+', or file:PATH (two-column r,V)
    #[arg(long)]
    potential: String,
    /// Orbital quantum number
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Particle mass (hbar = 1)
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Boundary mode: u0, or l2:theta=...,r0=...
    #[arg(long, default_value = "u0")]
    mode: String,
    #[arg(long, value_enum, default_value_t = GridArg::Log)]
    grid: GridArg,
    /// Grid size
    #[arg(long, default_value_t = 20000)]
    points: usize,
    /// Innermost radius (default: 1e-6 for log grids, the spacing for uniform)
    #[arg(long)]
    r_min: Option<f64>,
    /// Outermost radius
    #[arg(long, default_value_t = 80.0)]
    r_max: f64,
}

impl ProblemArgs {
    fn build(&self) -> Result<RadialProblem> {
        let mode = parse_mode(&self.mode)?;
        build_problem(
            &self.potential,
            self.l,
            self.mass,
            mode,
            self.grid,
            self.points,
            self.r_min,
            self.r_max,
        )
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Radial node count of the target state
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Energy convergence tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol_e: f64,
    /// Defect magnitude below which the state counts as compatible
    #[arg(long, default_value_t = 1e-6)]
    defect_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Highest radial node count to attempt
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct IndicialArgs {
    /// Potential: name:key=val,... joined by '+', or file:PATH (two-column r,V)
    #[arg(long)]
    potential: String,
    /// Orbital quantum number
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Particle mass (hbar = 1)
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct DeltaCheckArgs {
    /// Built-in trial: exp, rexp, poly, or constant
    #[arg(long, conflicts_with = "potential")]
    trial: Option<String>,
    /// Solve this potential and check the converged state instead
    #[arg(long)]
    potential: Option<String>,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Boundary mode for the solved state: u0, or l2:theta=...,r0=...
    #[arg(long, default_value = "u0")]
    mode: String,
    #[arg(long, value_enum, default_value_t = GridArg::Log)]
    grid: GridArg,
    #[arg(long, default_value_t = 20000)]
    points: usize,
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long, default_value_t = 80.0)]
    r_max: f64,
    /// Radial node count of the solved state
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Comma-separated test-function widths
    #[arg(long, default_value = "0.1,0.5,1,2")]
    widths: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    /// Potential: name:key=val,... joined by '+', or file:PATH (two-column r,V)
    #[arg(long)]
    potential: String,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, value_enum, default_value_t = GridArg::Log)]
    grid: GridArg,
    #[arg(long, default_value_t = 20000)]
    points: usize,
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long, default_value_t = 80.0)]
    r_max: f64,
    /// Comma-separated mixing strengths for the square-integrability-only rows
    #[arg(long, default_value = "0,1")]
    thetas: String,
    /// Anchor radius of the mixing term
    #[arg(long, default_value_t = 1.0)]
    r0: f64,
    /// Highest radial node count per column
    #[arg(long, default_value_t = 0)]
    n_max: usize,
    /// Defect magnitude below which a state counts as compatible
    #[arg(long, default_value_t = 1e-6)]
    defect_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    /// Potential: name:key=val,... joined by '+', or file:PATH (two-column r,V)
    #[arg(long)]
    potential: String,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// The finite-difference route needs a uniform grid
    #[arg(long, value_enum, default_value_t = GridArg::Uniform)]
    grid: GridArg,
    #[arg(long, default_value_t = 20000)]
    points: usize,
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long, default_value_t = 80.0)]
    r_max: f64,
    /// Number of lowest eigenvalues
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            let line = err
                .to_string()
                .lines()
                .next()
                .unwrap_or("error: invalid arguments")
                .to_owned();
            eprintln!("{line}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            let no_such_state = err
                .downcast_ref::<SolverError>()
                .is_some_and(|e| matches!(e, SolverError::NoSuchState { .. }));
            ExitCode::from(if no_such_state { 2 } else { 1 })
        }
    }
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Solve(args) => cmd_solve(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Indicial(args) => cmd_indicial(args),
        Command::DeltaCheck(args) => cmd_delta_check(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

#[allow(clippy::too_many_arguments)]
fn build_problem(
    potential: &str,
    l: u32,
    mass: f64,
    mode: BoundaryMode,
    grid: GridArg,
    points: usize,
    r_min: Option<f64>,
    r_max: f64,
) -> Result<RadialProblem> {
    let spec = parse_potential(potential, mass)?;
    let channel = Channel::new(l, mass)?;
    let grid = build_grid(grid, points, r_min, r_max)?;
    Ok(RadialProblem::new(channel, spec, mode, grid)?)
}

fn build_grid(
    scheme: GridArg,
    points: usize,
    r_min: Option<f64>,
    r_max: f64,
) -> Result<RadialGrid> {
    Ok(match scheme {
        GridArg::Log => RadialGrid::log_uniform(r_min.unwrap_or(1e-6), r_max, points)?,
        GridArg::Uniform => {
            let r_min = r_min.unwrap_or(r_max / points as f64);
            RadialGrid::uniform(r_min, r_max, points)?
        }
    })
}

/// The problem sub-object shared by every report that solved something.
fn problem_value(potential: &str, problem: &RadialProblem) -> Value {
    let mode = match problem.mode {
        BoundaryMode::U0Strict => Value::Object(vec![("kind", Value::Str("u0".into()))]),
        BoundaryMode::L2Only { theta, r0 } => Value::Object(vec![
            ("kind", Value::Str("l2".into())),
            ("theta", Value::Float(theta)),
            ("r0", Value::Float(r0)),
        ]),
    };
    let grid = &problem.grid;
    let scheme = match grid.scheme() {
        GridScheme::Uniform => "uniform",
        GridScheme::LogUniform => "log",
    };
    Value::Object(vec![
        ("potential", Value::Str(potential.into())),
        ("l", Value::Int(i64::from(problem.channel.l))),
        ("mass", Value::Float(problem.channel.mass)),
        ("mode", mode),
        (
            "grid",
            Value::Object(vec![
                ("scheme", Value::Str(scheme.into())),
                ("points", Value::Int(grid.len() as i64)),
                ("r_min", Value::Float(grid.r_min())),
                ("r_max", Value::Float(grid.r_max())),
            ]),
        ),
    ])
}

/// Least-squares log-log slope of |u| over the innermost decade of the mesh.
fn origin_log_slope(grid: &RadialGrid, u: &[f64]) -> Option<f64> {
    let r = grid.r();
    let limit = 10.0 * r[0];
    let mut end = r.iter().take_while(|&&ri| ri <= limit).count();
    end = end.clamp(3, r.len());
    let stride = (end / 32).max(1);
    let pts: Vec<(f64, f64)> = (0..end)
        .step_by(stride)
        .filter(|&i| u[i] != 0.0)
        .map(|i| (r[i].ln(), u[i].abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (mut num, mut den) = (0.0, 0.0);
    for (x, y) in &pts {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    (den > 0.0).then(|| num / den)
}

fn cmd_solve(args: SolveArgs) -> Result<String> {
    let problem = args.problem.build()?;
    let state = solve_state(&problem, args.n, args.tol_e)?;
    let compat = check_compatibility(&problem, state.e, &state.solution, args.defect_tol)?;
    let slope = origin_log_slope(&problem.grid, &state.solution.u);
    match args.format {
        Format::Json => {
            let result = Value::Object(vec![
                ("E", Value::Float(state.e)),
                ("nodes", Value::Int(state.n_radial as i64)),
                ("mismatch", float_field(state.mismatch_residual)),
                ("origin_slope", slope.map_or(Value::Null, Value::Float)),
                ("compatible", Value::Bool(compat.is_compatible())),
                ("defect", float_field(compat.defect())),
            ]);
            let doc = Value::Object(vec![
                ("schema", Value::Int(1)),
                ("problem", problem_value(&args.problem.potential, &problem)),
                ("result", result),
            ]);
            Ok(doc.render())
        }
        Format::Csv => csv_table(
            &["E", "nodes", "mismatch", "origin_slope", "compatible", "defect"],
            &[vec![
                float_cell(state.e),
                state.n_radial.to_string(),
                float_cell(state.mismatch_residual),
                slope.map(float_cell).unwrap_or_default(),
                compat.is_compatible().to_string(),
                float_cell(compat.defect()),
            ]],
        ),
    }
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<String> {
    let problem = args.problem.build()?;
    let states = spectrum(&problem, args.n_max)?;
    if states.is_empty() {
        return Err(SolverError::NoSuchState { n: 0 }.into());
    }
    match args.format {
        Format::Json => {
            let rows = states
                .iter()
                .map(|s| {
                    Value::Object(vec![
                        ("n", Value::Int(s.n_radial as i64)),
                        ("E", Value::Float(s.e)),
                        ("nodes", Value::Int(s.solution.nodes as i64)),
                        ("mismatch", float_field(s.mismatch_residual)),
                    ])
                })
                .collect();
            let doc = Value::Object(vec![
                ("schema", Value::Int(1)),
                ("problem", problem_value(&args.problem.potential, &problem)),
                ("states", Value::Array(rows)),
            ]);
            Ok(doc.render())
        }
        Format::Csv => {
            let rows = states
                .iter()
                .map(|s| {
                    vec![
                        s.n_radial.to_string(),
                        float_cell(s.e),
                        s.solution.nodes.to_string(),
                        float_cell(s.mismatch_residual),
                    ]
                })
                .collect::<Vec<_>>();
            csv_table(&["n", "E", "nodes", "mismatch"], &rows)
        }
    }
}

fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::Standard => "standard",
        Classification::LimitCircleWindow => "limit_circle_window",
        Classification::Critical => "critical",
        Classification::FallToCenter => "fall_to_center",
    }
}

fn cmd_indicial(args: IndicialArgs) -> Result<String> {
    let spec = parse_potential(&args.potential, args.mass)?;
    let channel = Channel::new(args.l, args.mass)?;
    let report = indicial(channel, spec.origin_coefficients());
    let (s_plus, s_minus, re, im) = match report.exponents {
        IndicialExponents::Real { s_plus, s_minus } => {
            (Some(s_plus), Some(s_minus), None, None)
        }
        IndicialExponents::Complex { re, im } => (None, None, Some(re), Some(im)),
    };
    let admissible_value = |mode: BoundaryMode| {
        let set = admissible(&report, mode);
        Value::Object(vec![
            (
                "exponents",
                Value::Array(set.exponents.iter().map(|&s| Value::Float(s)).collect()),
            ),
            ("ambiguous", Value::Bool(set.ambiguous)),
        ])
    };
    match args.format {
        Format::Json => {
            let opt = |v: Option<f64>| v.map_or(Value::Null, Value::Float);
            let doc = Value::Object(vec![
                ("schema", Value::Int(1)),
                ("potential", Value::Str(args.potential.clone())),
                (
                    "channel",
                    Value::Object(vec![
                        ("l", Value::Int(i64::from(args.l))),
                        ("mass", Value::Float(args.mass)),
                    ]),
                ),
                (
                    "report",
                    Value::Object(vec![
                        ("lambda_eff", Value::Float(report.lambda_eff)),
                        ("discriminant", Value::Float(report.discriminant)),
                        (
                            "classification",
                            Value::Str(classification_name(report.classification).into()),
                        ),
                        ("s_plus", opt(s_plus)),
                        ("s_minus", opt(s_minus)),
                        ("re", opt(re)),
                        ("im", opt(im)),
                        (
                            "admissible",
                            Value::Object(vec![
                                ("u0", admissible_value(BoundaryMode::U0Strict)),
                                (
                                    "l2",
                                    admissible_value(BoundaryMode::L2Only {
                                        theta: 1.0,
                                        r0: 1.0,
                                    }),
                                ),
                            ]),
                        ),
                    ]),
                ),
            ]);
            Ok(doc.render())
        }
        Format::Csv => {
            let cell = |v: Option<f64>| v.map(float_cell).unwrap_or_default();
            let strict = admissible(&report, BoundaryMode::U0Strict);
            csv_table(
                &[
                    "lambda_eff",
                    "discriminant",
                    "classification",
                    "s_plus",
                    "s_minus",
                    "re",
                    "im",
                    "ambiguous",
                ],
                &[vec![
                    float_cell(report.lambda_eff),
                    float_cell(report.discriminant),
                    classification_name(report.classification).to_owned(),
                    cell(s_plus),
                    cell(s_minus),
                    cell(re),
                    cell(im),
                    strict.ambiguous.to_string(),
                ]],
            )
        }
    }
}

fn builtin_trial(name: &str) -> Result<TrialFunction> {
    Ok(match name {
        "exp" => TrialFunction::exp_decay(),
        "rexp" => TrialFunction::r_exp_decay(),
        "poly" => TrialFunction::poly_exp(),
        "constant" => TrialFunction::constant(),
        other => bail!("unknown trial '{other}' (expected exp, rexp, poly, constant)"),
    })
}

fn cmd_delta_check(args: DeltaCheckArgs) -> Result<String> {
    let widths = parse_float_list(&args.widths, "width")?;
    let (label, trial, problem) = match (&args.trial, &args.potential) {
        (Some(name), None) => (name.clone(), builtin_trial(name)?, None),
        (None, Some(potential)) => {
            let mode = parse_mode(&args.mode)?;
            let problem = build_problem(
                potential, args.l, args.mass, mode, args.grid, args.points, args.r_min,
                args.r_max,
            )?;
            let state = solve_state(&problem, args.n, 1e-10)?;
            let trial = TrialFunction::from_solution(&problem, state.e, &state.solution)?;
            ("solution".to_owned(), trial, Some((potential.clone(), problem)))
        }
        _ => bail!("pass exactly one of --trial or --potential"),
    };
    let report = residual_report(&trial, &widths)?;
    match args.format {
        Format::Json => {
            let rows = report
                .widths
                .iter()
                .zip(&report.defects)
                .map(|(&w, &d)| {
                    Value::Object(vec![
                        ("w", Value::Float(w)),
                        ("defect", float_field(d)),
                        ("error", float_field((d - report.reference).abs())),
                    ])
                })
                .collect();
            let doc = Value::Object(vec![
                ("schema", Value::Int(1)),
                ("trial", Value::Str(label)),
                (
                    "problem",
                    problem
                        .as_ref()
                        .map_or(Value::Null, |(text, p)| problem_value(text, p)),
                ),
                ("reference", float_field(report.reference)),
                ("max_abs_error", float_field(report.max_abs_error)),
                ("rows", Value::Array(rows)),
            ]);
            Ok(doc.render())
        }
        Format::Csv => {
            let rows = report
                .widths
                .iter()
                .zip(&report.defects)
                .map(|(&w, &d)| {
                    vec![
                        float_cell(w),
                        float_cell(d),
                        float_cell((d - report.reference).abs()),
                    ]
                })
                .collect::<Vec<_>>();
            csv_table(&["w", "defect", "error"], &rows)
        }
    }
}

struct CompareRow {
    mode: &'static str,
    theta: Option<f64>,
    n: usize,
    e: f64,
    u0_defect: f64,
    compatible: bool,
}

fn cmd_compare(args: CompareArgs) -> Result<String> {
    let thetas = parse_float_list(&args.thetas, "theta")?;
    let spec = parse_potential(&args.potential, args.mass)?;
    let channel = Channel::new(args.l, args.mass)?;
    let grid = build_grid(args.grid, args.points, args.r_min, args.r_max)?;

    let strict =
        RadialProblem::new(channel, spec.clone(), BoundaryMode::U0Strict, grid.clone())?;
    let base = RadialProblem::new(
        channel,
        spec.clone(),
        BoundaryMode::L2Only { theta: 0.0, r0: args.r0 },
        grid.clone(),
    )?;

    let mut rows = Vec::new();
    for state in spectrum(&strict, args.n_max)? {
        let compat =
            check_compatibility(&strict, state.e, &state.solution, args.defect_tol)?;
        rows.push(CompareRow {
            mode: "u0",
            theta: None,
            n: state.n_radial,
            e: state.e,
            u0_defect: compat.defect(),
            compatible: compat.is_compatible(),
        });
    }
    for (theta, states) in sae_scan(&base, &thetas, args.n_max)? {
        let cell = RadialProblem::new(
            channel,
            spec.clone(),
            BoundaryMode::L2Only { theta, r0: args.r0 },
            grid.clone(),
        )?;
        for state in states {
            let compat =
                check_compatibility(&cell, state.e, &state.solution, args.defect_tol)?;
            rows.push(CompareRow {
                mode: "l2",
                theta: Some(theta),
                n: state.n_radial,
                e: state.e,
                u0_defect: compat.defect(),
                compatible: compat.is_compatible(),
            });
        }
    }

    match args.format {
        Format::Json => {
            let row_values = rows
                .iter()
                .map(|row| {
                    Value::Object(vec![
                        ("mode", Value::Str(row.mode.into())),
                        ("theta", row.theta.map_or(Value::Null, Value::Float)),
                        ("n", Value::Int(row.n as i64)),
                        ("E", Value::Float(row.e)),
                        ("u0_defect", float_field(row.u0_defect)),
                        ("compatible", Value::Bool(row.compatible)),
                    ])
                })
                .collect();
            let doc = Value::Object(vec![
                ("schema", Value::Int(1)),
                ("problem", problem_value(&args.potential, &base)),
                ("rows", Value::Array(row_values)),
            ]);
            Ok(doc.render())
        }
        Format::Csv => {
            let table = rows
                .iter()
                .map(|row| {
                    vec![
                        row.mode.to_owned(),
                        row.theta.map(float_cell).unwrap_or_default(),
                        row.n.to_string(),
                        float_cell(row.e),
                        float_cell(row.u0_defect),
                        row.compatible.to_string(),
                    ]
                })
                .collect::<Vec<_>>();
            csv_table(&["mode", "theta", "n", "E", "u0_defect", "compatible"], &table)
        }
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<String> {
    let problem = build_problem(
        &args.potential,
        args.l,
        args.mass,
        BoundaryMode::U0Strict,
        args.grid,
        args.points,
        args.r_min,
        args.r_max,
    )?;
    let eigenvalues = fd_spectrum(&problem, args.k)?;
    match args.format {
        Format::Json => {
            let doc = Value::Object(vec![
                ("schema", Value::Int(1)),
                ("problem", problem_value(&args.potential, &problem)),
                (
                    "eigenvalues",
                    Value::Array(eigenvalues.iter().map(|&e| Value::Float(e)).collect()),
                ),
            ]);
            Ok(doc.render())
        }
        Format::Csv => {
            let rows = eigenvalues
                .iter()
                .enumerate()
                .map(|(k, &e)| vec![k.to_string(), float_cell(e)])
                .collect::<Vec<_>>();
            csv_table(&["k", "E"], &rows)
        }
    }
}
