//! Benchmark sweeps over random instances and their CSV report.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::SolveError;
use crate::generate::{generate_with_attempts, GenerateError};
use crate::instance::{Instance, Problem, ProblemKind};
use crate::plan::{vertex_crossings, Variant};
use crate::pmt::solve;
use crate::tree::analyze;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchKind {
    Motion,
    Pmt,
}

impl BenchKind {
    pub fn problem_kind(self) -> ProblemKind {
        match self {
            BenchKind::Motion => ProblemKind::MotionPlanning,
            BenchKind::Pmt => ProblemKind::Pmt,
        }
    }

    /// Pebble counts swept for a tree on `n` vertices.
    pub fn pebble_counts(self, n: usize) -> Vec<usize> {
        match self {
            BenchKind::Motion => (2..=n.saturating_sub(2)).collect(),
            BenchKind::Pmt => (5..=3 * n / 4).step_by(5).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub kind: BenchKind,
    pub variant: Variant,
    pub sizes: Vec<usize>,
    pub seeds: u64,
    pub seed_base: u64,
    /// Resampling budget per instance; samples that never meet the
    /// assumption are skipped.
    pub attempts: usize,
}

impl BenchConfig {
    pub fn motion(seed_base: u64) -> Self {
        Self {
            kind: BenchKind::Motion,
            variant: Variant::Plain,
            sizes: (20..=200).step_by(20).collect(),
            seeds: 100,
            seed_base,
            attempts: 20,
        }
    }

    pub fn pmt(seed_base: u64) -> Self {
        Self {
            kind: BenchKind::Pmt,
            seeds: 20,
            ..Self::motion(seed_base)
        }
    }
}

/// Outcome of one solved instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRecord {
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    pub c: usize,
    pub bound: f64,
    pub moves: usize,
    pub max_crossing: usize,
    pub runtime_ms: f64,
}

/// Aggregate over the instances of one `(n, p)` cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub p: usize,
    pub c: f64,
    pub bound: f64,
    pub mean_moves: f64,
    pub max_moves: usize,
    pub max_crossing: usize,
    pub mean_runtime_ms: f64,
    pub instances: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("seed {seed} (n = {n}, p = {p}): {source}")]
    Solve {
        n: usize,
        p: usize,
        seed: u64,
        source: SolveError,
    },
    #[error(transparent)]
    Generate(#[from] GenerateError),
}

fn seed_for(base: u64, n: usize, p: usize, index: u64) -> u64 {
    base.wrapping_add(((n as u64 * 1_000 + p as u64) * 1_000) + index)
}

/// Solves and replays one instance, recording its cost.
pub fn run_instance(instance: &Instance, seed: u64) -> Result<InstanceRecord, SolveError> {
    let tree = &instance.tree;
    let n = tree.vertex_count();
    let p = instance.start.pebble_count();
    let profile = analyze(&tree.view());
    let c = match instance.variant {
        Variant::Plain => profile.c,
        Variant::TransShipment => profile.c_tilde,
    };
    let bound = match instance.problem {
        Problem::Pmt { .. } => (n * p * c + n * n) as f64,
        _ => (n * c) as f64,
    };
    let clock = Instant::now();
    let plan = solve(instance)?;
    let runtime_ms = clock.elapsed().as_secs_f64() * 1e3;
    let max_crossing = vertex_crossings(&plan, n).into_iter().max().unwrap_or(0);
    Ok(InstanceRecord {
        n,
        p,
        seed,
        c,
        bound,
        moves: plan.len(),
        max_crossing,
        runtime_ms,
    })
}

/// Runs the sweep and returns every record in `(n, p, seed)` order.
pub fn run_sweep(config: &BenchConfig) -> Result<Vec<InstanceRecord>, BenchError> {
    let jobs: Vec<(usize, usize, u64)> = config
        .sizes
        .iter()
        .flat_map(|&n| {
            config
                .kind
                .pebble_counts(n)
                .into_iter()
                .flat_map(move |p| (0..config.seeds).map(move |s| (n, p, s)))
        })
        .collect();
    let results: Vec<Option<Result<InstanceRecord, BenchError>>> = jobs
        .par_iter()
        .map(|&(n, p, s)| {
            let seed = seed_for(config.seed_base, n, p, s);
            let instance = match generate_with_attempts(
                seed,
                n,
                p,
                config.variant,
                config.kind.problem_kind(),
                config.attempts,
            ) {
                Ok(instance) => instance,
                Err(GenerateError::AssumptionUnsatisfiable { .. }) => return None,
                Err(e) => return Some(Err(e.into())),
            };
            Some(
                run_instance(&instance, seed).map_err(|source| BenchError::Solve {
                    n,
                    p,
                    seed,
                    source,
                }),
            )
        })
        .collect();
    results.into_iter().flatten().collect()
}

/// Groups records by `(n, p)`; records must arrive sorted by cell.
pub fn aggregate(records: &[InstanceRecord]) -> Vec<BenchRow> {
    records
        .chunk_by(|a, b| (a.n, a.p) == (b.n, b.p))
        .map(|cell| {
            let count = cell.len() as f64;
            let mean = |f: fn(&InstanceRecord) -> f64| cell.iter().map(f).sum::<f64>() / count;
            BenchRow {
                n: cell[0].n,
                p: cell[0].p,
                c: mean(|r| r.c as f64),
                bound: mean(|r| r.bound),
                mean_moves: mean(|r| r.moves as f64),
                max_moves: cell.iter().map(|r| r.moves).max().unwrap_or(0),
                max_crossing: cell.iter().map(|r| r.max_crossing).max().unwrap_or(0),
                mean_runtime_ms: mean(|r| r.runtime_ms),
                instances: cell.len(),
            }
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
