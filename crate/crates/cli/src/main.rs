//! `opdi`: command-line front end.
//!
//! Exit codes: 0 = yes (or a value was computed), 1 = no, 2 = bad input or
//! internal error (including a failed `--crosscheck`).

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use opdi_core::graph::smallest_non_cut_vertex;
use opdi_core::{
    complete, complete_connected, decide, gen_obstruction, maximum_parallel_matching, minimum_completion,
    opdi_connected, oracle_decide, oracle_opdi, random_outerplanar, star_triangulate, Answer, Dist, Family,
    Graph, MaximalOuterplanar, ObstructionSpec, RunReport, ORACLE_CAP,
};

#[derive(Parser)]
#[command(name = "opdi", version, about = "Outerplanar diameter improvement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Include a verified completion in the report.
    #[arg(long, global = true)]
    witness: bool,
    /// Print the report as a single JSON line.
    #[arg(long, global = true)]
    json: bool,
    /// Also run the brute-force oracle (n <= 10) and fail on disagreement.
    #[arg(long, global = true)]
    crosscheck: bool,
    /// Print nothing; only the exit code matters.
    #[arg(long, global = true)]
    quiet: bool,
    /// Record wall time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Can the graph be completed to an outerplanar graph of diameter <= D?
    Decide { file: PathBuf, d: u32 },
    /// Smallest achievable diameter.
    Minimize { file: PathBuf },
    /// Brute-force answer; D may be a number or "min".
    Oracle { file: PathBuf, d: String },
    /// Fan triangulation, within a factor 2 of optimal.
    Approx { file: PathBuf },
    /// Emit the members of an obstruction family.
    Obstruction {
        #[arg(ignore_case = true)]
        family: FamilyArg,
        index: u32,
        /// Write one edge-list file per member into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum parallel matching of a maximal outerplanar graph.
    Matching { file: PathBuf },
    /// Random outerplanar graph in edge-list format.
    Gen {
        n: usize,
        seed: u64,
        /// Never drop an edge that would disconnect the graph.
        #[arg(long)]
        connected: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    B,
}

type Outcome = Result<(Option<RunReport>, bool), String>;

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    Graph::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_outerplanar(g: &Graph) -> Result<(), String> {
    match opdi_core::outerplanarity_violation(g) {
        Some(v) => Err(format!("input is not outerplanar: {v}")),
        None => Ok(()),
    }
}

/// Runs the oracle next to `solve` when asked and compares the answers.
fn crosschecked<T: PartialEq + std::fmt::Debug + Send>(
    enabled: bool,
    g: &Graph,
    solve: impl FnOnce() -> Result<T, String> + Send,
    oracle: impl FnOnce() -> Result<T, String> + Send,
) -> Result<(T, Option<bool>), String> {
    if !enabled {
        return Ok((solve()?, None));
    }
    if g.n() > ORACLE_CAP {
        return Err(format!("--crosscheck needs n <= {ORACLE_CAP}, got {}", g.n()));
    }
    let (a, b) = std::thread::scope(|s| {
        let h = s.spawn(oracle);
        (solve(), h.join().expect("oracle thread"))
    });
    let (a, b) = (a?, b?);
    if a != b {
        return Err(format!("crosscheck failed: solver {a:?}, oracle {b:?}"));
    }
    Ok((a, Some(true)))
}

fn cmd_decide(cli: &Cli, file: &Path, d: u32) -> Outcome {
    let g = read_graph(file)?;
    check_outerplanar(&g)?;
    if d == 0 {
        return Err("D must be at least 1".into());
    }
    let solve = || -> Result<bool, String> {
        if g.is_connected() {
            let r = smallest_non_cut_vertex(&g).unwrap_or(0);
            Ok(opdi_connected(&g, r, d).map_err(|e| e.to_string())?.0.is_finite())
        } else {
            decide(&g, d).map_err(|e| e.to_string())
        }
    };
    let (yes, agrees) = crosschecked(cli.crosscheck, &g, solve, || oracle_decide(&g, d).map_err(|e| e.to_string()))?;
    let mut r = RunReport::new("decide", &g, Answer::Decision(yes));
    r.bound = Some(d);
    r.oracle_agrees = agrees;
    if yes && cli.witness {
        let c = if g.is_connected() { complete_connected(&g, d) } else { complete(&g, d) };
        let c = c.map_err(|e| e.to_string())?.ok_or("feasible instance without a witness")?;
        r = r.with_witness(&c);
    }
    Ok((Some(r), yes))
}

fn cmd_minimize(cli: &Cli, file: &Path) -> Outcome {
    let g = read_graph(file)?;
    check_outerplanar(&g)?;
    let (v, c) = minimum_completion(&g).map_err(|e| e.to_string())?;
    let (_, agrees) = crosschecked(cli.crosscheck, &g, || Ok(v), || oracle_opdi(&g).map_err(|e| e.to_string()))?;
    let mut r = RunReport::new("minimize", &g, Answer::Value(Dist::Finite(v)));
    r.oracle_agrees = agrees;
    if cli.witness {
        r = r.with_witness(&c);
    }
    Ok((Some(r), true))
}

fn cmd_oracle(file: &Path, d: &str) -> Outcome {
    let g = read_graph(file)?;
    check_outerplanar(&g)?;
    if g.n() > ORACLE_CAP {
        return Err(format!(
            "the oracle enumerates every maximal outerplanar graph and is limited to n <= {ORACLE_CAP} (got n = {})",
            g.n()
        ));
    }
    if d == "min" {
        let v = oracle_opdi(&g).map_err(|e| e.to_string())?;
        return Ok((Some(RunReport::new("oracle", &g, Answer::Value(Dist::Finite(v)))), true));
    }
    let d: u32 = d.parse().map_err(|_| format!("expected a bound or \"min\", got {d:?}"))?;
    if d == 0 {
        return Err("D must be at least 1".into());
    }
    let yes = oracle_decide(&g, d).map_err(|e| e.to_string())?;
    let mut r = RunReport::new("oracle", &g, Answer::Decision(yes));
    r.bound = Some(d);
    Ok((Some(r), yes))
}

fn cmd_approx(file: &Path) -> Outcome {
    let g = read_graph(file)?;
    let c = star_triangulate(&g).map_err(|e| e.to_string())?;
    let r = RunReport::new("approx", &g, Answer::Value(c.diameter)).with_witness(&c);
    Ok((Some(r), true))
}

fn cmd_matching(file: &Path) -> Outcome {
    let g = read_graph(file)?;
    let m = MaximalOuterplanar::from_graph(&g).map_err(|e| e.to_string())?;
    let pm = maximum_parallel_matching(&m);
    let mut r = RunReport::new("matching", &g, Answer::Value(Dist::Finite(pm.edges.len() as u32)));
    r.matching = Some(pm.edges);
    r.outer_order = Some(pm.outer_order);
    Ok((Some(r), true))
}

fn cmd_obstruction(cli: &Cli, family: FamilyArg, index: u32, out: Option<&Path>) -> Outcome {
    let family = match family {
        FamilyArg::A => Family::A,
        FamilyArg::B => Family::B,
    };
    let name = format!("{family:?}{index}");
    let members = gen_obstruction(ObstructionSpec { family, index });
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
        for (i, g) in members.iter().enumerate() {
            let path = dir.join(format!("{name}-{i}.txt"));
            std::fs::write(&path, g.to_edge_list()).map_err(|e| format!("{}: {e}", path.display()))?;
        }
    } else if !cli.quiet {
        for (i, g) in members.iter().enumerate() {
            print!("# {name} member {i}\n{}", g.to_edge_list());
        }
    }
    Ok((None, true))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Decide { file, d } => cmd_decide(cli, file, *d),
        Command::Minimize { file } => cmd_minimize(cli, file),
        Command::Oracle { file, d } => cmd_oracle(file, d),
        Command::Approx { file } => cmd_approx(file),
        Command::Matching { file } => cmd_matching(file),
        Command::Obstruction { family, index, out } => cmd_obstruction(cli, *family, *index, out.as_deref()),
        Command::Gen { n, seed, connected } => {
            if !cli.quiet {
                print!("{}", random_outerplanar(*n, *seed, *connected).to_edge_list());
            }
            Ok((None, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // The solvers recurse through block trees; give them room.
    let code = std::thread::Builder::new()
        .stack_size(512 << 20)
        .spawn(move || {
            let start = Instant::now();
            match run(&cli) {
                Ok((report, yes)) => {
                    if let (Some(mut r), false) = (report, cli.quiet) {
                        if cli.timing {
                            r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                        }
                        if cli.json {
                            println!("{}", r.to_json());
                        } else {
                            print!("{}", r.to_text());
                        }
                    }
                    if yes { 0 } else { 1 }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        })
        .expect("spawn solver thread")
        .join()
        .unwrap_or(2);
    ExitCode::from(code)
}
