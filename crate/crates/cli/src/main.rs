use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use matroid_greedy::guarantees::{
    ratio_report, region_compare, verify_forward, verify_reverse, ReportOptions,
};
use matroid_greedy::instances::{
    self, gen_bounded_marginal, gen_explicit_random, gen_modular, seeded_matroid_spec,
    MatroidFamily,
};
use matroid_greedy::ratios::MAX_EXHAUSTIVE;
use matroid_greedy::{
    forward_greedy, reverse_greedy, Error, GreedyTrace, Instance, MatroidSpec, VerificationRecord,
    DEFAULT_TOLERANCE,
};

const TOL_ENV: &str = "MATROID_GREEDY_TOL";

#[derive(Parser)]
#[command(name = "matroid-greedy", version, about = "Greedy minimization over matroid bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the forward and/or reverse greedy on an instance.
    Run(RunArgs),
    /// Exhaustive submodularity ratio, curvature and variants.
    Ratios(RatiosArgs),
    /// Check both performance guarantees against the brute-force optimum.
    Verify(VerifyArgs),
    /// Compare the forward and reverse guarantees over an (alpha, gamma) grid.
    Region(RegionArgs),
    /// Generate an instance file.
    Gen(GenArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Both)]
    algo: Algo,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Forward,
    Reverse,
    Both,
}

#[derive(Args)]
struct RatiosArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Also report the forward and reverse greedy ratio variants.
    #[arg(long)]
    greedy_variants: bool,
    /// Also report the strong curvature.
    #[arg(long)]
    strong: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    instance: Vec<PathBuf>,
    /// Verify a seeded random suite instead of instance files.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance; overrides MATROID_GREEDY_TOL.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long, allow_negative_numbers = true)]
    fstar: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = -1.0)]
    fempty: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    ffull: f64,
    #[arg(long, default_value_t = 100)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated positive weights (modular).
    #[arg(long, value_delimiter = ',')]
    weights: Vec<f64>,
    /// Lower marginal bound (bounded).
    #[arg(long, default_value_t = 1.0)]
    lo: f64,
    /// Upper marginal bound (bounded).
    #[arg(long, default_value_t = 2.0)]
    hi: f64,
    #[arg(long, value_enum, default_value_t = GenMatroid::Uniform)]
    matroid: GenMatroid,
    /// Rank of the uniform matroid; defaults to max(1, n / 2).
    #[arg(long)]
    rank: Option<usize>,
    /// Target base cardinality N; defaults to the matroid rank.
    #[arg(long = "cardinality", short = 'N')]
    cardinality: Option<usize>,
    #[arg(long)]
    id: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Modular,
    Bounded,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenMatroid {
    Uniform,
    Partition,
    Graphic,
}

/// Failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Infeasible { .. } | Error::InfeasibleInstance { .. } => 3,
            Error::NonMonotone { .. } | Error::NotStrictlyIncreasing { .. } => 4,
            Error::GroundSetTooLarge { .. } => 5,
            Error::WitnessFailure(_) | Error::TraceMismatch(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::from(Error::Io(e))),
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Error::Io(e).into()),
            _ => Ok(()),
        },
    }
}

fn emit_json(out: Option<&Path>, value: &impl Serialize) -> CliResult {
    let mut text = serde_json::to_string_pretty(value).expect("outputs serialize");
    text.push('\n');
    emit(out, &text)
}

fn tolerance(flag: Option<f64>) -> CliResult<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(raw) => raw
                .trim()
                .parse()
                .map_err(|_| usage(format!("{TOL_ENV}={raw:?} is not a number")))?,
            Err(_) => DEFAULT_TOLERANCE,
        },
    };
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(usage(format!("tolerance {tol} must be a finite nonnegative number")));
    }
    Ok(tol)
}

fn cmd_run(args: RunArgs) -> CliResult {
    let inst = instances::load_instance(&args.instance)?;
    let m = inst.matroid();
    let forward = || forward_greedy(&inst.function, &m, inst.cardinality);
    let reverse = || reverse_greedy(&inst.function, &m, inst.cardinality);
    let out = args.out.as_deref();
    match args.algo {
        Algo::Forward => emit_json(out, &forward()?),
        Algo::Reverse => emit_json(out, &reverse()?),
        Algo::Both => {
            #[derive(Serialize)]
            struct Both {
                forward: GreedyTrace,
                reverse: GreedyTrace,
            }
            emit_json(
                out,
                &Both {
                    forward: forward()?,
                    reverse: reverse()?,
                },
            )
        }
    }
}

fn cmd_ratios(args: RatiosArgs) -> CliResult {
    let inst = instances::load_instance(&args.instance)?;
    let options = ReportOptions {
        greedy_variants: args.greedy_variants,
        strong: args.strong,
    };
    let report = ratio_report(&inst.function, &inst.matroid(), inst.cardinality, options)?;
    emit_json(args.out.as_deref(), &report)
}

#[derive(Serialize)]
struct Summary {
    instances: usize,
    checks: usize,
    satisfied: usize,
    failed: usize,
    tolerance: f64,
}

#[derive(Serialize)]
struct VerifyOutput {
    summary: Summary,
    records: Vec<VerificationRecord>,
}

fn verify_instance(inst: &Instance, tol: f64) -> matroid_greedy::Result<[VerificationRecord; 2]> {
    let m = inst.matroid();
    let f = &inst.function;
    Ok([
        verify_forward(f, &m, inst.cardinality, tol)?.with_id(&inst.id),
        verify_reverse(f, &m, inst.cardinality, tol)?.with_id(&inst.id),
    ])
}

fn cmd_verify(args: VerifyArgs) -> CliResult<bool> {
    let tol = tolerance(args.tol)?;
    let suite = if args.random {
        if args.n_max > MAX_EXHAUSTIVE {
            return Err(Error::GroundSetTooLarge {
                n: args.n_max,
                limit: MAX_EXHAUSTIVE,
            }
            .into());
        }
        instances::suite(args.count, args.n_min, args.n_max, args.seed)?
    } else {
        args.instance
            .iter()
            .map(instances::load_instance)
            .collect::<Result<Vec<_>, _>>()?
    };
    let records: Vec<VerificationRecord> = suite
        .par_iter()
        .map(|inst| verify_instance(inst, tol))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let satisfied = records.iter().filter(|r| r.satisfied).count();
    let output = VerifyOutput {
        summary: Summary {
            instances: suite.len(),
            checks: records.len(),
            satisfied,
            failed: records.len() - satisfied,
            tolerance: tol,
        },
        records,
    };
    emit_json(args.out.as_deref(), &output)?;
    for r in output.records.iter().filter(|r| !r.satisfied) {
        eprintln!(
            "violation: {} {:?} achieved {} against bound {}",
            r.instance_id, r.algorithm, r.achieved_ratio, r.bound
        );
    }
    Ok(output.summary.failed == 0)
}

fn cmd_region(args: RegionArgs) -> CliResult {
    let grid = region_compare(args.fempty, args.ffull, args.fstar, args.grid)?;
    emit(args.out.as_deref(), &grid.to_csv())
}

fn cmd_gen(args: GenArgs) -> CliResult {
    let n = args.n;
    let function = match args.kind {
        GenKind::Modular => gen_modular(n, &args.weights)?,
        GenKind::Bounded => gen_bounded_marginal(n, args.lo, args.hi, args.seed)?,
        GenKind::Explicit => gen_explicit_random(n, args.seed)?,
    };
    let spec = match args.matroid {
        GenMatroid::Uniform => MatroidSpec::Uniform {
            rank: args.rank.unwrap_or((n / 2).max(1)),
        },
        GenMatroid::Partition | GenMatroid::Graphic => {
            let family = if matches!(args.matroid, GenMatroid::Partition) {
                MatroidFamily::Partition
            } else {
                MatroidFamily::Graphic
            };
            seeded_matroid_spec(n, family, args.seed)?
        }
    };
    let rank = spec.build(function.ground())?.rank_full();
    let cardinality = args.cardinality.unwrap_or(rank);
    let (label, seed) = match args.kind {
        GenKind::Modular => ("modular", None),
        GenKind::Bounded => ("bounded", Some(args.seed)),
        GenKind::Explicit => ("explicit", Some(args.seed)),
    };
    let id = args.id.unwrap_or_else(|| match seed {
        Some(s) => format!("{label}-n{n}-s{s}"),
        None => format!("{label}-n{n}"),
    });
    let inst = Instance::new(id, function, spec, cardinality, seed)?;
    match args.out {
        Some(path) => {
            instances::save_instance(&inst, &path)?;
            #[derive(Serialize)]
            struct Written<'a> {
                path: String,
                id: &'a str,
            }
            emit_json(
                None,
                &Written {
                    path: path.display().to_string(),
                    id: &inst.id,
                },
            )
        }
        None => emit(None, &inst.to_json()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => cmd_run(a).map(|_| true),
        Command::Ratios(a) => cmd_ratios(a).map(|_| true),
        Command::Verify(a) => cmd_verify(a),
        Command::Region(a) => cmd_region(a).map(|_| true),
        Command::Gen(a) => cmd_gen(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
