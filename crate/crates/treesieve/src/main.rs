//! Command-line front end: parse a graph file, dispatch to an application
//! or to the corresponding brute-force oracle, and print one JSON object.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use treesieve::graph::{parse_graph, Graph};
use treesieve::{apps, oracle};

#[derive(Parser)]
#[command(
    name = "treesieve",
    version,
    about = "Exact counting and randomized detection of Hamiltonian paths, \
             matchings, and star covers via determinant sieves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Graph file: "<n> <m> <U|D>" header, one "u v" line per edge,
    /// optional "P v1 v2 ..." bipartition line, '#' comments.
    #[arg(long, global = true, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Seed for the randomized detectors.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of independent detection trials.
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    /// Emit a JSON object; pass `--json false` for the bare result.
    #[arg(long, global = true, default_value_t = true, action = clap::ArgAction::Set, value_name = "BOOL")]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Count Hamiltonian paths between two vertices exactly.
    CountHam(HamArgs),
    /// Detect a Hamiltonian path in a balanced bipartite graph.
    DetectHamBip(DetectBipArgs),
    /// Detect a Hamiltonian path, sieving around an independent set.
    DetectHamIndep(DetectIndepArgs),
    /// Count perfect matchings of a balanced bipartite graph.
    CountPm,
    /// Count matchings of a given size in a bipartite graph.
    CountKmatch(SizeArg),
    /// Count maximum-cardinality matchings.
    CountMaxmatch,
    /// Count perfect k-star covers.
    CountKstar(SizeArg),
    /// Answer the same subcommands by brute force.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    CountHam(HamArgs),
    DetectHamBip(DetectBipArgs),
    DetectHamIndep(DetectIndepArgs),
    CountPm,
    CountKmatch(SizeArg),
    CountMaxmatch,
    CountKstar(SizeArg),
}

#[derive(Args)]
struct HamArgs {
    /// Path source vertex.
    #[arg(long)]
    source: usize,
    /// Path target vertex.
    #[arg(long)]
    target: usize,
    /// Treat the input as a digraph (the file header must say D).
    #[arg(long)]
    directed: bool,
}

#[derive(Args)]
struct DetectBipArgs {
    #[command(flatten)]
    ham: HamArgs,
    /// Exit with status 1 when no path is detected.
    #[arg(long)]
    fail_on_absent: bool,
}

#[derive(Args)]
struct DetectIndepArgs {
    #[command(flatten)]
    ham: HamArgs,
    /// Independent set to sieve around, as comma-separated vertex ids.
    #[arg(long, value_delimiter = ',', value_name = "V1,V2,...")]
    indep: Vec<usize>,
    /// Exit with status 1 when no path is detected.
    #[arg(long)]
    fail_on_absent: bool,
}

#[derive(Args)]
struct SizeArg {
    /// Matching size / star size.
    #[arg(long)]
    k: usize,
}

enum Outcome {
    Count(BigInt),
    Detect {
        detected: bool,
        trials: usize,
        fail_on_absent: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: --threads {t}: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let path = cli.graph.as_ref().ok_or("missing required --graph FILE")?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let g = parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let start = Instant::now();
    let outcome = dispatch(cli, &g).map_err(|e| e.to_string())?;
    let elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report(cli, &outcome, elapsed_ms))
}

fn dispatch(cli: &Cli, g: &Graph) -> Result<Outcome, Box<dyn std::error::Error>> {
    match &cli.command {
        Command::CountHam(a) => {
            let count = if a.directed {
                apps::count_ham_paths_directed(g, a.source, a.target)?
            } else {
                apps::count_ham_paths_undirected(g, a.source, a.target)?
            };
            Ok(Outcome::Count(count))
        }
        Command::DetectHamBip(a) => {
            let res = if a.ham.directed {
                apps::detect_ham_path_bip_directed(g, a.ham.source, a.ham.target, cli.trials, cli.seed)?
            } else {
                apps::detect_ham_path_bip_undirected(g, a.ham.source, a.ham.target, cli.trials, cli.seed)?
            };
            Ok(Outcome::Detect {
                detected: res.detected,
                trials: res.trials,
                fail_on_absent: a.fail_on_absent,
            })
        }
        Command::DetectHamIndep(a) => {
            let v0: BTreeSet<usize> = a.indep.iter().copied().collect();
            let res = if a.ham.directed {
                apps::detect_ham_path_indep_directed(g, &v0, a.ham.source, a.ham.target, cli.trials, cli.seed)?
            } else {
                apps::detect_ham_path_indep_undirected(g, &v0, a.ham.source, a.ham.target, cli.trials, cli.seed)?
            };
            Ok(Outcome::Detect {
                detected: res.detected,
                trials: res.trials,
                fail_on_absent: a.fail_on_absent,
            })
        }
        Command::CountPm => Ok(Outcome::Count(apps::count_pm_bipartite(g)?)),
        Command::CountKmatch(a) => Ok(Outcome::Count(apps::count_k_matchings_bipartite(g, a.k)?)),
        Command::CountMaxmatch => Ok(Outcome::Count(apps::count_maximum_matchings(g)?)),
        Command::CountKstar(a) => Ok(Outcome::Count(apps::count_kstar_covers(g, a.k)?)),
        Command::Oracle(cmd) => dispatch_oracle(cmd, g).map_err(Into::into),
    }
}

fn dispatch_oracle(cmd: &OracleCommand, g: &Graph) -> Result<Outcome, oracle::OracleError> {
    let check_direction = |directed: bool| {
        if directed != g.directed() {
            let want = if directed { "directed" } else { "undirected" };
            return Err(oracle::OracleError::Invalid(format!(
                "expected a {want} graph"
            )));
        }
        Ok(())
    };
    match cmd {
        OracleCommand::CountHam(a) => {
            check_direction(a.directed)?;
            Ok(Outcome::Count(oracle::ham_paths(g, a.source, a.target)?))
        }
        OracleCommand::DetectHamBip(a) => {
            check_direction(a.ham.directed)?;
            let count = oracle::ham_paths(g, a.ham.source, a.ham.target)?;
            Ok(Outcome::Detect {
                detected: !count.is_zero(),
                trials: 1,
                fail_on_absent: a.fail_on_absent,
            })
        }
        OracleCommand::DetectHamIndep(a) => {
            check_direction(a.ham.directed)?;
            let count = oracle::ham_paths(g, a.ham.source, a.ham.target)?;
            Ok(Outcome::Detect {
                detected: !count.is_zero(),
                trials: 1,
                fail_on_absent: a.fail_on_absent,
            })
        }
        OracleCommand::CountPm => {
            check_direction(false)?;
            Ok(Outcome::Count(oracle::perfect_matchings(g)?))
        }
        OracleCommand::CountKmatch(a) => {
            check_direction(false)?;
            Ok(Outcome::Count(oracle::matchings_of_size(g, a.k)?))
        }
        OracleCommand::CountMaxmatch => {
            check_direction(false)?;
            Ok(Outcome::Count(oracle::maximum_matchings(g)?.1))
        }
        OracleCommand::CountKstar(a) => {
            check_direction(false)?;
            Ok(Outcome::Count(oracle::kstar_covers(g, a.k)?))
        }
    }
}

fn report(cli: &Cli, outcome: &Outcome, elapsed_ms: u64) -> ExitCode {
    match outcome {
        Outcome::Count(count) => {
            if cli.json {
                let obj = json!({
                    "count": count.to_string(),
                    "elapsed_ms": elapsed_ms,
                    "seed": cli.seed,
                });
                println!("{obj}");
            } else {
                println!("{count}");
            }
            ExitCode::SUCCESS
        }
        Outcome::Detect {
            detected,
            trials,
            fail_on_absent,
        } => {
            if cli.json {
                let obj = json!({
                    "detected": detected,
                    "trials": trials,
                    "elapsed_ms": elapsed_ms,
                    "seed": cli.seed,
                });
                println!("{obj}");
            } else {
                println!("{}", if *detected { "detected" } else { "not detected" });
            }
            if !detected && *fail_on_absent {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
