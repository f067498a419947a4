use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dualbound::cli::{
    cmd_bound, cmd_exact, cmd_gen, cmd_profile, cmd_tables, load_results, GenSpec, Method,
    RunConfig,
};
use dualbound::dual::SearchBudget;

/// Prove lower bounds on the minimum bandwidth of graphs by worst-bound
/// branching-tree search, and benchmark the strategies against each other.
#[derive(Parser)]
#[command(name = "dualbound", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a grid of instances as canonical .grf files
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run a bound prover over instances, appending runs.jsonl / runs.csv
    Bound {
        /// wbh-vs, wbh-lr, dfs, bfs or static-bounds
        #[arg(long)]
        method: Method,
        /// Stop after branching on this many nodes (default: run to optimality)
        #[arg(long)]
        max_expansions: Option<usize>,
        /// Also stop once the proved bound reaches this value
        #[arg(long)]
        target_bound: Option<i64>,
        /// Instance files or directories (.grf canonical, .mtx Matrix Market)
        #[arg(long, num_args = 1.., required = true)]
        instances: Vec<PathBuf>,
        /// Output directory for runs.jsonl and runs.csv
        #[arg(long, default_value = "runs")]
        out: PathBuf,
        /// Reserved for seeded experiment variants; recorded only
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Performance-profile curve from run records
    Profile {
        /// runs.jsonl files produced by `bound`
        #[arg(long, num_args = 1.., required = true)]
        results: Vec<PathBuf>,
        /// Target bound = ceil((1 - p/100) * reference upper bound)
        #[arg(long, default_value_t = 0.0)]
        target_percent: f64,
        /// Output CSV path
        #[arg(long, default_value = "profile.csv")]
        out: PathBuf,
    },
    /// Gap and frontier tables from run records
    Tables {
        #[arg(long, num_args = 1.., required = true)]
        results: Vec<PathBuf>,
        /// Output directory for gap.csv and frontier.csv
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Exact optimum for small instances, written back into their metadata
    Exact {
        #[arg(long, num_args = 1.., required = true)]
        instances: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Uniform random graphs, one file per (density, seed)
    Random {
        #[arg(long, default_value_t = 30)]
        n: usize,
        /// Comma-separated edge probabilities
        #[arg(long, value_delimiter = ',', required = true)]
        densities: Vec<f64>,
        /// Instances per grid cell
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// First seed of each cell
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "instances")]
        out: PathBuf,
    },
    /// Bandwidth-controlled random graphs with a planted arrangement
    Turner {
        #[arg(long, default_value_t = 30)]
        n: usize,
        /// Comma-separated bandwidth caps
        #[arg(long, value_delimiter = ',', required = true)]
        phis: Vec<u32>,
        /// Comma-separated target densities
        #[arg(long, value_delimiter = ',', required = true)]
        densities: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "instances")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Gen { kind } => {
            let (spec, out) = match kind {
                GenKind::Random {
                    n,
                    densities,
                    seeds,
                    seed,
                    out,
                } => (
                    GenSpec::Random {
                        n,
                        densities,
                        seeds,
                        seed_base: seed,
                    },
                    out,
                ),
                GenKind::Turner {
                    n,
                    phis,
                    densities,
                    seeds,
                    seed,
                    out,
                } => (
                    GenSpec::Turner {
                        n,
                        phis,
                        densities,
                        seeds,
                        seed_base: seed,
                    },
                    out,
                ),
            };
            let paths = cmd_gen(&spec, &out).map_err(|e| e.to_string())?;
            println!("wrote {} instances under {}", paths.len(), out.display());
        }
        Command::Bound {
            method,
            max_expansions,
            target_bound,
            instances,
            out,
            seed,
        } => {
            let mut budget = match max_expansions {
                Some(k) => SearchBudget::max_expansions(k),
                None => SearchBudget::unlimited(),
            };
            if let Some(target) = target_bound {
                budget = budget.with_target(target);
            }
            let config = RunConfig {
                method,
                budget,
                instances,
                out_dir: out,
                seed,
            };
            let results = cmd_bound(&config).map_err(|e| e.to_string())?;
            for r in &results {
                println!(
                    "{} {} bound={} status={:?} expansions={} max_frontier={}",
                    r.instance,
                    r.method,
                    r.certificate.proved_bound,
                    r.certificate.status,
                    r.certificate.expansions,
                    r.certificate.max_frontier
                );
            }
        }
        Command::Profile {
            results,
            target_percent,
            out,
        } => {
            let records = load_results(&results).map_err(|e| e.to_string())?;
            let csv = cmd_profile(&records, target_percent);
            std::fs::write(&out, csv).map_err(|e| e.to_string())?;
            println!("wrote {}", out.display());
        }
        Command::Tables { results, out } => {
            let records = load_results(&results).map_err(|e| e.to_string())?;
            let (gap, frontier) = cmd_tables(&records);
            std::fs::create_dir_all(&out).map_err(|e| e.to_string())?;
            let gap_path = out.join("gap.csv");
            let frontier_path = out.join("frontier.csv");
            std::fs::write(&gap_path, gap).map_err(|e| e.to_string())?;
            std::fs::write(&frontier_path, frontier).map_err(|e| e.to_string())?;
            println!("wrote {} and {}", gap_path.display(), frontier_path.display());
        }
        Command::Exact { instances } => {
            for (name, optimum) in cmd_exact(&instances).map_err(|e| e.to_string())? {
                println!("{name}: optimum {optimum}");
            }
        }
    }
    Ok(())
}
