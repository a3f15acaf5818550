//! `inlim`: decide emptiness of limits of graph-shaped diagrams of finite sets.
//!
//! Reports are `key=value` lines followed by a verdict line. `solve`,
//! `oracle` and `cset-solve` exit 0 for EMPTY and 1 for NONEMPTY; every
//! command exits 2 on error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use inlim::bench::{run_bench, to_csv, BenchConfig};
use inlim::gen::{generate, SetSizes, ShapeKind};
use inlim::homfront::hom_exists;
use inlim::json::{
    parse_cset_diagram, parse_decomposition, parse_diagram, parse_fincat, parse_graph,
    witness_to_json, write_diagram,
};
use inlim::oracle::{enumerate_limit, DEFAULT_CAP};
use inlim::{
    as_subdiagram, cset, fvs_exact, image_tree, inlim as solve, CoDecomposition, Error,
    SimpleGraph, SolveOptions, VertexSet,
};

#[derive(Parser)]
#[command(
    name = "inlim",
    version,
    about = "Limit emptiness for graph-shaped diagrams of finite sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the limit of a diagram is empty.
    Solve {
        file: PathBuf,
        /// Comma-separated feedback vertex set to use.
        #[arg(long, value_delimiter = ',', conflicts_with = "fvs_max")]
        fvs: Option<Vec<usize>>,
        /// Largest feedback vertex set to search for.
        #[arg(long, default_value_t = 10)]
        fvs_max: usize,
        /// Print a matching family when the limit is nonempty.
        #[arg(long)]
        witness: bool,
        /// Sequential lexicographic search and no timing line, for byte-identical output.
        #[arg(long)]
        deterministic: bool,
        /// Worker threads for section tests.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Enumerate every section test instead of stopping at the first nonempty one.
        #[arg(long)]
        all_tests: bool,
    },
    /// Decide emptiness by enumerating every candidate family.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Print the image diagram of a forest-shaped diagram as JSON.
    Image { file: PathBuf },
    /// Decide whether a decomposed graph maps homomorphically to a template.
    Hom {
        file: PathBuf,
        /// `k3`, `k<n>` or `file:<graph.json>`.
        #[arg(long, default_value = "k3")]
        template: String,
        /// Print the vertex map when one exists.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 10)]
        fvs_max: usize,
    },
    /// Decide emptiness for a diagram of C-sets.
    CsetSolve {
        category: PathBuf,
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        fvs_max: usize,
    },
    /// Find a smallest feedback vertex set of a graph.
    Fvs {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Print a random instance as JSON.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        n: usize,
        w: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability for `random`.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Every set gets exactly `w` elements.
        #[arg(long)]
        exact: bool,
        /// Plant a global matching family.
        #[arg(long)]
        planted: bool,
    },
    /// Time the solver and the oracle; CSV on standard output.
    Bench {
        #[arg(long, value_enum, default_value = "path")]
        mode: Kind,
        #[arg(long, value_delimiter = ',', default_values_t = [100usize, 1000, 10000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        w: usize,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tree,
    Path,
    Cycle,
    Random,
}

impl Kind {
    fn shape(self, p: f64) -> ShapeKind {
        match self {
            Kind::Tree => ShapeKind::Tree,
            Kind::Path => ShapeKind::Path,
            Kind::Cycle => ShapeKind::Cycle,
            Kind::Random => ShapeKind::Random(p),
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<CoDecomposition, Error> {
    parse_diagram(&read(path)?)
}

fn verdict_line(empty: bool) -> (&'static str, u8) {
    if empty {
        ("EMPTY", 0)
    } else {
        ("NONEMPTY", 1)
    }
}

fn millis(t: Duration) -> String {
    format!("{:.3}", t.as_secs_f64() * 1e3)
}

fn parse_template(name: &str) -> Result<SimpleGraph, Error> {
    if let Some(path) = name.strip_prefix("file:") {
        return parse_graph(&read(Path::new(path))?);
    }
    match name.strip_prefix(['k', 'K']).map(str::parse::<usize>) {
        Some(Ok(n)) => Ok(SimpleGraph::complete(n)),
        _ => Err(Error::Parse(format!(
            "unknown template {name:?}; use k3, k<n> or file:<graph.json>"
        ))),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Solve {
            file,
            fvs,
            fvs_max,
            witness,
            deterministic,
            jobs,
            all_tests,
        } => {
            let d = load_diagram(&file)?;
            let fvs = match fvs {
                Some(ids) => {
                    if let Some(&v) = ids.iter().find(|&&v| v >= d.vertex_count()) {
                        return Err(Error::Parse(format!(
                            "--fvs names vertex {v}, shape has {}",
                            d.vertex_count()
                        )));
                    }
                    Some(VertexSet::from_indices(d.vertex_count(), &ids))
                }
                None => None,
            };
            let opts = SolveOptions {
                fvs,
                k_max: fvs_max,
                witness,
                early_exit: !all_tests,
                jobs: jobs.max(1),
                deterministic,
            };
            let start = Instant::now();
            let sol = solve(&d, &opts)?;
            let elapsed = start.elapsed();
            println!("n={}", d.vertex_count());
            println!("w={}", d.width());
            println!("k={}", sol.fvs.size());
            println!(
                "fvs={}",
                sol.fvs
                    .to_indices()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            println!("section_tests={}", sol.section_tests);
            println!("immediately_empty={}", sol.immediately_empty);
            if !deterministic {
                println!("wall_ms={}", millis(elapsed));
            }
            if let Some(w) = &sol.witness {
                println!(
                    "witness={}",
                    serde_json::to_string(&witness_to_json(&d, w))?
                );
            }
            let (line, code) = verdict_line(sol.verdict.empty_limit);
            println!("{line}");
            Ok(code)
        }
        Command::Oracle { file, cap } => {
            let d = load_diagram(&file)?;
            let start = Instant::now();
            let families = enumerate_limit(&d, cap)?;
            let elapsed = start.elapsed();
            println!("n={}", d.vertex_count());
            println!("w={}", d.width());
            println!("families={}", families.len());
            println!("wall_ms={}", millis(elapsed));
            let (line, code) = verdict_line(families.is_empty());
            println!("{line}");
            Ok(code)
        }
        Command::Image { file } => {
            let d = load_diagram(&file)?;
            let m = image_tree(&d, &d.full_mask())?;
            let (sub, _) = as_subdiagram(&d, &m)?;
            println!("{}", write_diagram(&sub));
            Ok(0)
        }
        Command::Hom {
            file,
            template,
            witness,
            fvs_max,
        } => {
            let b = parse_decomposition(&read(&file)?)?;
            let h = parse_template(&template)?;
            let opts = SolveOptions {
                k_max: fvs_max,
                witness,
                deterministic: true,
                ..Default::default()
            };
            let start = Instant::now();
            let r = hom_exists(&b, &h, &opts)?;
            println!("n={}", b.shape().vertex_count());
            println!("max_bag={}", b.max_bag());
            println!("k={}", r.solution.fvs.size());
            println!("section_tests={}", r.solution.section_tests);
            println!("wall_ms={}", millis(start.elapsed()));
            if let Some(map) = &r.map {
                println!("map={}", serde_json::to_string(map)?);
            }
            println!("{}", if r.exists { "HOM" } else { "NO-HOM" });
            Ok(u8::from(r.exists))
        }
        Command::CsetSolve {
            category,
            file,
            fvs_max,
        } => {
            let cat = parse_fincat(&read(&category)?)?;
            let d = parse_cset_diagram(cat, &read(&file)?)?;
            let opts = SolveOptions {
                k_max: fvs_max,
                ..Default::default()
            };
            let start = Instant::now();
            let sol = cset::cset_inlim(&d, &opts)?;
            println!("n={}", d.shape().vertex_count());
            println!("w_summed={}", d.summed_width());
            println!(
                "w_slices={}",
                d.slice_widths()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let k = sol
                .slices
                .iter()
                .flatten()
                .next()
                .map_or(0, |s| s.fvs.size());
            println!("k={k}");
            println!(
                "section_tests={}",
                sol.slices
                    .iter()
                    .flatten()
                    .map(|s| s.section_tests)
                    .sum::<u64>()
            );
            println!("wall_ms={}", millis(start.elapsed()));
            let (line, code) = verdict_line(sol.verdict.empty_limit);
            println!("{line}");
            Ok(code)
        }
        Command::Fvs { file, max } => {
            let g = parse_graph(&read(&file)?)?;
            let s = (0..=max)
                .find_map(|k| fvs_exact(&g, k))
                .ok_or(Error::NoFvsWithinBudget(max))?;
            println!("k={}", s.size());
            println!(
                "fvs={}",
                s.to_indices()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            Ok(0)
        }
        Command::Gen {
            kind,
            n,
            w,
            seed,
            p,
            exact,
            planted,
        } => {
            let mut sizes = if exact {
                SetSizes::exact(w)
            } else {
                SetSizes::upto(w)
            };
            sizes.planted = planted;
            let d = generate(kind.shape(p), n, sizes, seed);
            eprintln!("seed={seed}");
            println!("{}", write_diagram(&d));
            Ok(0)
        }
        Command::Bench {
            mode,
            sizes,
            w,
            repeats,
            seed,
            p,
            cap,
        } => {
            let cfg = BenchConfig {
                mode: mode.shape(p),
                sizes,
                w,
                repeats,
                seed,
                cap,
            };
            let rows = run_bench(&cfg)?;
            eprintln!("seed={seed}");
            print!("{}", to_csv(&rows));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
