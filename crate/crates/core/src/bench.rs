//! Timing harness comparing the solver with brute-force enumeration.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::codecomp::CoDecomposition;
use crate::error::Result;
use crate::gen::{generate, SetSizes, ShapeKind};
use crate::oracle::{enumerate_limit, tuple_count};
use crate::solver::{inlim, SolveOptions};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub mode: ShapeKind,
    pub sizes: Vec<usize>,
    pub w: usize,
    pub repeats: usize,
    pub seed: u64,
    /// The oracle is skipped when the candidate tuple count exceeds this.
    pub cap: u64,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub mode: &'static str,
    pub n: usize,
    pub w: usize,
    pub k: usize,
    pub section_tests: u64,
    pub empty_limit: bool,
    pub solver: Duration,
    /// `None` when the oracle was skipped.
    pub oracle: Option<Duration>,
}

pub fn median(mut xs: Vec<Duration>) -> Duration {
    if xs.is_empty() {
        return Duration::ZERO;
    }
    xs.sort_unstable();
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2
    }
}

/// Median wall time of `repeats` runs of `f`, plus the last result.
pub fn time_median<T>(repeats: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut times = Vec::with_capacity(repeats.max(1));
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let out = f();
        times.push(start.elapsed());
        last = Some(out);
    }
    (median(times), last.expect("at least one run"))
}

/// Benchmark instances are planted with exact set sizes so every sweep runs
/// to completion instead of stopping at an early empty mask.
pub fn bench_instance(mode: ShapeKind, n: usize, w: usize, seed: u64) -> CoDecomposition {
    generate(mode, n, SetSizes::exact(w).planted(), seed)
}

pub fn bench_one(
    d: &CoDecomposition,
    mode: ShapeKind,
    repeats: usize,
    cap: u64,
) -> Result<BenchRow> {
    let opts = SolveOptions::default();
    let (solver, sol) = time_median(repeats, || inlim(d, &opts));
    let sol = sol?;
    let oracle = if tuple_count(d) > cap {
        None
    } else {
        let (t, fams) = time_median(repeats, || enumerate_limit(d, cap));
        fams?;
        Some(t)
    };
    Ok(BenchRow {
        mode: mode.name(),
        n: d.vertex_count(),
        w: d.width(),
        k: sol.fvs.size(),
        section_tests: sol.section_tests,
        empty_limit: sol.verdict.empty_limit,
        solver,
        oracle,
    })
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    cfg.sizes
        .iter()
        .map(|&n| {
            bench_one(
                &bench_instance(cfg.mode, n, cfg.w, cfg.seed),
                cfg.mode,
                cfg.repeats,
                cfg.cap,
            )
        })
        .collect()
}

pub const CSV_HEADER: &str = "mode,n,w,k,section_tests,verdict,solver_ms,oracle_ms";

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let oracle = match r.oracle {
            Some(t) => format!("{:.3}", t.as_secs_f64() * 1e3),
            None => "SKIPPED".to_string(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.3},{}",
            r.mode,
            r.n,
            r.w,
            r.k,
            r.section_tests,
            if r.empty_limit { "EMPTY" } else { "NONEMPTY" },
            r.solver.as_secs_f64() * 1e3,
            oracle
        );
    }
    out
}
