//! `flowpath`: evaluate, validate and tabulate path-space quantities.
//!
//! Exit codes: 0 success, 1 failed validation, 2 domain error, 64 bad
//! arguments, 73 output file not writable.

mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flowpath::cbinom::{cbinom_bc, cbinom_bound, v_integral};
use flowpath::geometry::{gauss_curvature, ChartPoint, MetricProfile, SurfaceRegistry};
use flowpath::length_integral::{
    corollary_growth_bound, stratified_length_sum, theorem_length_integral, LengthIntegralInput,
};
use flowpath::oracle::{mc_total_integral, McConfig};
use flowpath::path_space::vol_gamma_plane;
use flowpath::special_fn::{bc, bc_bound};
use flowpath::validate::{SuiteOptions, SuiteRegistry};

use table::{fmt_real, CsvTable, Grid};

const EXIT_VALIDATION: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_CANT_CREATE: u8 = 73;

const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Parser, Debug)]
#[command(
    name = "flowpath",
    version,
    about = "Path-like length integrals on directed surfaces"
)]
struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one value.
    Eval(EvalArgs),
    /// Run invariant suites and print a report.
    Validate(ValidateArgs),
    /// Write a CSV table over a grid.
    Table(TableArgs),
    /// List the registered surfaces.
    Surfaces,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Subject {
    Cbinom,
    BesselClifford,
    VIntegral,
    Curvature,
    Vol,
    LengthIntegral,
    Bound,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum LengthMethod {
    ClosedForm,
    TruncatedSum,
    MonteCarlo,
}

/// A point `x,y`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Pair(f64, f64);

impl std::str::FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| format!("expected x,y, got '{s}'"))?;
        let parse = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad number '{p}': {e}"))
        };
        Ok(Pair(parse(x)?, parse(y)?))
    }
}

#[derive(Args, Debug, Clone)]
struct SurfaceArgs {
    /// Registered surface name.
    #[arg(long)]
    surface: Option<String>,
    /// Comma-separated surface parameters, e.g. `1,0,0,2` for `linear`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<f64>,
}

impl SurfaceArgs {
    fn build(&self) -> Result<MetricProfile, Failure> {
        let name = self
            .surface
            .as_deref()
            .ok_or_else(|| Failure::usage("--surface is required"))?;
        Ok(SurfaceRegistry::builtin().build(name, &self.params)?)
    }
}

#[derive(Args, Debug)]
struct EvalArgs {
    subject: Subject,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long)]
    nu: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    /// Start point in the surface's own coordinates.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<Pair>,
    /// End point in the surface's own coordinates.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<Pair>,
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long, value_enum, default_value = "closed-form")]
    method: LengthMethod,
    /// Configurations up to length `2 M + 1` for the summed methods.
    #[arg(long, default_value_t = 10)]
    max_half_length: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    mc_samples: usize,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    mc_samples: usize,
    /// Multiplies every tolerance.
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
}

#[derive(Args, Debug)]
struct TableArgs {
    subject: Subject,
    /// Output CSV path; overwritten if present.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    t: Option<Grid>,
    #[arg(long)]
    a: Option<Grid>,
    /// Part as a fraction of the total, `a = frac * t`.
    #[arg(long)]
    a_frac: Option<f64>,
    #[arg(long)]
    s: Option<Grid>,
    #[arg(long)]
    nu: Option<u32>,
    #[arg(long)]
    z: Option<Grid>,
    #[arg(long)]
    x: Option<Grid>,
    /// Start point in the surface's own coordinates.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<Pair>,
    #[command(flatten)]
    surface: SurfaceArgs,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(flowpath::Error),
    Output(String),
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Domain(_) => EXIT_DOMAIN,
            Failure::Output(_) => EXIT_CANT_CREATE,
        }
    }
}

impl From<flowpath::Error> for Failure {
    fn from(e: flowpath::Error) -> Self {
        match e {
            // a misspelt name is a usage problem, not a domain one
            flowpath::Error::UnknownSurface(_) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Domain(e) => write!(f, "error: {e}"),
            Failure::Output(m) => write!(f, "cannot write output: {m}"),
        }
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::usage(format!("--{flag} is required")))
}

fn length_input(
    profile: MetricProfile,
    p: Pair,
    q: Pair,
    t: f64,
) -> Result<LengthIntegralInput, Failure> {
    Ok(LengthIntegralInput::from_surface(
        profile,
        (p.0, p.1),
        (q.0, q.1),
        t,
    )?)
}

fn eval(args: &EvalArgs) -> Result<f64, Failure> {
    let value = match args.subject {
        Subject::Cbinom => cbinom_bc(need(args.t, "t")?, need(args.a, "a")?)?,
        Subject::Vol => vol_gamma_plane(need(args.t, "t")?, need(args.a, "a")?)?,
        Subject::BesselClifford => bc(need(args.nu, "nu")?, need(args.z, "z")?)?,
        Subject::VIntegral => v_integral(need(args.s, "s")?, need(args.t, "t")?)?,
        Subject::Curvature => gauss_curvature(&args.surface.build()?, need(args.x, "x")?)?,
        Subject::LengthIntegral => {
            let input = length_input(
                args.surface.build()?,
                need(args.p, "p")?,
                need(args.q, "q")?,
                need(args.t, "t")?,
            )?;
            match args.method {
                LengthMethod::ClosedForm => theorem_length_integral(&input)?.value,
                LengthMethod::TruncatedSum => {
                    stratified_length_sum(&input, args.max_half_length)?.value
                }
                LengthMethod::MonteCarlo => {
                    let mc = McConfig::new(args.mc_samples, args.seed, McConfig::default().chunk)?;
                    mc_total_integral(&input, args.max_half_length, &mc)?.value
                }
            }
        }
        Subject::Bound => {
            if args.surface.surface.is_some() {
                let input = length_input(
                    args.surface.build()?,
                    need(args.p, "p")?,
                    need(args.q, "q")?,
                    need(args.t, "t")?,
                )?;
                corollary_growth_bound(&input)?
            } else if let Some(nu) = args.nu {
                bc_bound(nu, need(args.z, "z")?)?
            } else {
                cbinom_bound(need(args.t, "t")?, need(args.s, "s")?)?
            }
        }
    };
    Ok(value)
}

fn grid(value: &Option<Grid>, flag: &str) -> Result<Vec<f64>, Failure> {
    Ok(value
        .ok_or_else(|| Failure::usage(format!("--{flag} is required")))?
        .points())
}

fn tabulate(args: &TableArgs) -> Result<CsvTable, Failure> {
    let table = match args.subject {
        Subject::Cbinom | Subject::Vol => {
            let mut table = CsvTable::new(&["t", "a", "value"]);
            for t in grid(&args.t, "t")? {
                let parts = match (args.a_frac, &args.a) {
                    (Some(frac), _) => vec![frac * t],
                    (None, Some(a)) => a.points(),
                    (None, None) => return Err(Failure::usage("--a or --a-frac is required")),
                };
                for a in parts {
                    table.push(vec![t, a, cbinom_bc(t, a)?]);
                }
            }
            table
        }
        Subject::BesselClifford => {
            let nu = need(args.nu, "nu")?;
            let mut table = CsvTable::new(&["z", "value"]);
            for z in grid(&args.z, "z")? {
                table.push(vec![z, bc(nu, z)?]);
            }
            table
        }
        Subject::VIntegral => {
            let mut table = CsvTable::new(&["s", "t", "value"]);
            for s in grid(&args.s, "s")? {
                for t in grid(&args.t, "t")? {
                    table.push(vec![s, t, v_integral(s, t)?]);
                }
            }
            table
        }
        Subject::Curvature => {
            let profile = args.surface.build()?;
            let mut table = CsvTable::new(&["x", "value"]);
            for x in grid(&args.x, "x")? {
                table.push(vec![x, gauss_curvature(&profile, x)?]);
            }
            table
        }
        Subject::LengthIntegral | Subject::Bound => {
            let profile = args.surface.build()?;
            let p = need(args.p, "p")?;
            let t = need(args.t, "t")?;
            if t.lo != t.hi {
                return Err(Failure::usage(
                    "--t must be a single value for length integrals",
                ));
            }
            let t = t.lo;
            let start: ChartPoint = profile.chart_point(p.0, p.1);
            let mut table = CsvTable::new(&["a", "value"]);
            for a in grid(&args.a, "a")? {
                let input = LengthIntegralInput::from_budgets(profile.clone(), start, a, t)?;
                let value = if args.subject == Subject::Bound {
                    corollary_growth_bound(&input)?
                } else {
                    theorem_length_integral(&input)?.value
                };
                table.push(vec![a, value]);
            }
            table
        }
    };
    Ok(table)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Eval(args) => {
            println!("{}", fmt_real(eval(&args)?));
            Ok(0)
        }
        Command::Validate(args) => {
            let opts = SuiteOptions {
                seed: args.seed,
                mc_samples: args.mc_samples,
                tol_scale: args.tol_scale,
            };
            let registry = SuiteRegistry::builtin();
            let report = registry.run(&args.suite, &opts).map_err(|e| {
                let names: Vec<_> = registry.names().collect();
                Failure::usage(format!("{e}; known suites: {}, all", names.join(", ")))
            })?;
            print!("{}", report.render());
            Ok(if report.all_passed() {
                0
            } else {
                EXIT_VALIDATION
            })
        }
        Command::Table(args) => {
            let table = tabulate(&args)?;
            table
                .write(&args.out)
                .map_err(|e| Failure::Output(format!("{}: {e}", args.out.display())))?;
            eprintln!(
                "wrote {} rows to {}",
                table.rows().len(),
                args.out.display()
            );
            Ok(0)
        }
        Command::Surfaces => {
            for name in SurfaceRegistry::builtin().names() {
                println!("{name}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("usage: cannot configure {threads} threads: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code())
        }
    }
}
