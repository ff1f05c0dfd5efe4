use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pmt_core::{
    aggregate, bfs_solve, generate_random_instance, parse_instance, replay, run_sweep,
    serialize_instance, solve, write_csv, BenchConfig, BenchError, GenerateError, OracleOutcome,
    ParseError, PlanFile, ProblemKind, SearchLimits, SolveError, Variant,
};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "pmt", version, about = "Pebble motion on trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write the plan.
    Solve {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a plan against an instance.
    Validate { instance: PathBuf, plan: PathBuf },
    /// Exhaustive shortest plan, for small instances.
    Oracle {
        instance: PathBuf,
        /// `STATES` or `STATES:DEPTH`.
        #[arg(long, value_parser = parse_limits, default_value = "2000000")]
        limits: SearchLimits,
    },
    /// Emit a random instance that meets the assumption.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pebbles: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = KindArg::Pmt)]
        kind: KindArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the benchmark grid and write a CSV.
    Bench {
        #[arg(long, value_enum)]
        kind: BenchArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
        variant: VariantArg,
        /// Seeds per cell; defaults to 100 (motion) or 20 (pmt).
        #[arg(long)]
        seeds: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tree sizes, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "20,40,60,80,100,120,140,160,180,200"
        )]
        n: Vec<usize>,
        /// Resampling budget before a sample is skipped.
        #[arg(long, default_value_t = 20)]
        attempts: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Plain,
    Ts,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Ts => Variant::TransShipment,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Pmt,
    Unlabeled,
    Motion,
    Gather,
}

impl From<KindArg> for ProblemKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Pmt => ProblemKind::Pmt,
            KindArg::Unlabeled => ProblemKind::Unlabeled,
            KindArg::Motion => ProblemKind::MotionPlanning,
            KindArg::Gather => ProblemKind::GatherHoles,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchArg {
    Motion,
    Pmt,
}

fn parse_limits(text: &str) -> Result<SearchLimits, String> {
    let (states, depth) = match text.split_once(':') {
        Some((s, d)) => (s, Some(d)),
        None => (text, None),
    };
    let max_states = states
        .parse()
        .map_err(|_| format!("bad state limit `{states}`"))?;
    let max_depth = match depth {
        Some(d) => d.parse().map_err(|_| format!("bad depth limit `{d}`"))?,
        None => usize::MAX,
    };
    Ok(SearchLimits {
        max_states,
        max_depth,
    })
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error("{0}")]
    Rejected(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Solve(SolveError::InfeasibleAssumption { .. }) => 2,
            _ => 1,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn emit(out: Option<&Path>, data: &[u8]) -> Result<(), CliError> {
    let result = match out {
        Some(path) => fs::write(path, data),
        None => io::stdout().lock().write_all(data),
    };
    result.map_err(|source| CliError::Io {
        path: out.map_or_else(|| PathBuf::from("<stdout>"), Path::to_owned),
        source,
    })
}

fn load_instance(path: &Path) -> Result<pmt_core::Instance, CliError> {
    parse_instance(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve { instance, out } => {
            let inst = load_instance(&instance)?;
            let plan = solve(&inst)?;
            let file = PlanFile::new(plan, inst.tree.vertex_count());
            emit(out.as_deref(), file.serialize().as_bytes())
        }
        Command::Validate { instance, plan } => {
            let inst = load_instance(&instance)?;
            let file = PlanFile::parse(&read(&plan)?).map_err(|source| CliError::Parse {
                path: plan.clone(),
                source,
            })?;
            let report = replay(&inst.tree, &inst.start, &file.plan, inst.variant);
            if let Some(violation) = report.violation {
                return Err(CliError::Rejected(format!("invalid plan: {violation}")));
            }
            if !inst.problem.is_satisfied(&report.final_config) {
                return Err(CliError::Rejected(
                    "plan is legal but misses the goal".into(),
                ));
            }
            println!(
                "valid: {} moves, max crossing {}",
                report.length,
                report.max_crossing()
            );
            Ok(())
        }
        Command::Oracle { instance, limits } => {
            let inst = load_instance(&instance)?;
            match bfs_solve(&inst, limits) {
                OracleOutcome::OptimalPlan(plan) => println!("{}", plan.len()),
                OracleOutcome::Infeasible => println!("INFEASIBLE"),
                OracleOutcome::LimitExceeded => println!("LIMIT"),
            }
            Ok(())
        }
        Command::Generate {
            seed,
            n,
            pebbles,
            variant,
            kind,
            out,
        } => {
            let inst = generate_random_instance(seed, n, pebbles, variant.into(), kind.into())?;
            emit(out.as_deref(), serialize_instance(&inst).as_bytes())
        }
        Command::Bench {
            kind,
            variant,
            seeds,
            seed,
            n,
            attempts,
            out,
        } => {
            let base = match kind {
                BenchArg::Motion => BenchConfig::motion(seed),
                BenchArg::Pmt => BenchConfig::pmt(seed),
            };
            let config = BenchConfig {
                variant: variant.into(),
                sizes: n,
                seeds: seeds.unwrap_or(base.seeds),
                attempts,
                ..base
            };
            let rows = aggregate(&run_sweep(&config)?);
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(|e| CliError::Rejected(format!("csv: {e}")))?;
            emit(out.as_deref(), &buf)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
