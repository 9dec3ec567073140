//! `sdncg` command-line front end.
//!
//! Every subcommand writes its result to stdout, or to `--output` when given.
//! Exit status: 0 on success, 1 on a domain error, 2 on a usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sdncg::analysis::{
    enumerate_stable_states, find_improving_cycle, optimum_exact, price_summary, random_corpus, theorem_campaign,
    AnalysisError, CampaignConfig, CorpusSpec, Suite, CSV_HEADER,
};
use sdncg::constructions::ConstructionSpec;
use sdncg::game::{is_pairwise_stable, run_dynamics, social_welfare, Alpha, Policy, Terminal};
use sdncg::graph::io::{self as io, GraphFormat};
use sdncg::graph::{GameState, HostGraph};
use sdncg::spanning::{mrcst_exact, smrcst, Pivot, SpanningError};
use serde_json::json;

#[derive(Parser)]
#[command(name = "sdncg", version, about = "Social distancing network creation game engine")]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    First,
    Best,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PivotArg {
    Best,
    First,
}

#[derive(Args)]
struct StateArgs {
    /// Network file (text or JSON graph format).
    #[arg(long)]
    input: PathBuf,
    /// Host file; defaults to the complete graph on the network's nodes.
    #[arg(long)]
    host: Option<PathBuf>,
    #[arg(long)]
    alpha: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct HostArgs {
    /// Host file (text or JSON graph format).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    alpha: String,
    /// Largest number of edge subsets to enumerate.
    #[arg(long, default_value_t = 1 << 24)]
    budget: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated graph, e.g. `path:5` or `star-of-cliques:14,2`.
    Gen {
        family: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Social welfare of a network.
    Sw(StateArgs),
    /// Pairwise stability check with improving-move witnesses.
    Stable(StateArgs),
    /// Improving-move dynamics from a network.
    Dynamics {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value = "first")]
        policy: PolicyArg,
        /// Required with `--policy random`.
        #[arg(long)]
        seed: Option<u64>,
        /// Largest number of moves.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Swap-maximal routing-cost spanning tree by local search.
    Smrcst {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "best")]
        pivot: PivotArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact maximum routing-cost spanning tree.
    Mrcst {
        #[arg(long)]
        input: PathBuf,
        /// Largest number of spanning trees to enumerate.
        #[arg(long, default_value_t = 1 << 24)]
        budget: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact social optimum over all connected spanning subnetworks.
    Opt(HostArgs),
    /// Every pairwise stable network of a host.
    Atlas(HostArgs),
    /// Price of anarchy (and, in CSV or JSON, the full price summary).
    Poa(HostArgs),
    /// Search the complete host for a cycle of improving moves.
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        seed: u64,
        /// Largest number of improving moves followed.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Price summaries over a seeded random host corpus, as CSV.
    Sweep {
        #[arg(long)]
        seed: u64,
        /// Comma-separated alpha values.
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<String>,
        #[arg(long, default_value_t = 10)]
        hosts: usize,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long, default_value_t = 1 << 24)]
        budget: u64,
    },
    /// Run verification suites and print a JSON report.
    Campaign {
        /// A suite name or `all`.
        suite: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        hosts: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 1 << 21)]
        budget: u64,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

type Outcome = Result<Report, Failure>;

/// Command output plus whether it reports a failed check.
struct Report {
    text: String,
    failed: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, failed: false }
    }
}

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn domain(msg: impl ToString) -> Failure {
    Failure::Domain(msg.to_string())
}

fn analysis_failure(e: AnalysisError) -> Failure {
    match e {
        AnalysisError::Graph(_) => usage(e),
        _ => domain(e),
    }
}

fn spanning_failure(e: SpanningError) -> Failure {
    match e {
        SpanningError::Graph(_) => usage(e),
        _ => domain(e),
    }
}

fn parse_alpha(s: &str) -> Result<Alpha, Failure> {
    s.parse().map_err(|e| usage(format!("--alpha {s:?}: {e}")))
}

fn read_graph(path: &Path) -> Result<HostGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    io::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_host(path: &Path) -> Result<Arc<HostGraph>, Failure> {
    read_graph(path).map(Arc::new)
}

fn read_state(args: &StateArgs) -> Result<GameState, Failure> {
    let net = read_graph(&args.input)?;
    let host = match &args.host {
        Some(p) => read_host(p)?,
        None => Arc::new(HostGraph::complete(net.n()).map_err(usage)?),
    };
    if host.n() != net.n() {
        return Err(usage(format!(
            "network has {} nodes but host has {}",
            net.n(),
            host.n()
        )));
    }
    GameState::new(host, net.edges().iter().copied()).map_err(usage)
}

fn graph_format(format: Format) -> Result<GraphFormat, Failure> {
    match format {
        Format::Text => Ok(GraphFormat::Text),
        Format::Json => Ok(GraphFormat::Json),
        Format::Csv => Err(usage("csv output is only available for poa and sweep")),
    }
}

fn edge_list(state: &GameState) -> String {
    let edges: Vec<String> = state.edges().map(|e| format!("{}-{}", e.lo(), e.hi())).collect();
    edges.join(" ")
}

fn edge_pairs(state: &GameState) -> Vec<[usize; 2]> {
    state.edges().map(|e| [e.lo(), e.hi()]).collect()
}

fn to_json(value: serde_json::Value) -> String {
    serde_json::to_string(&value).expect("json values serialize") + "\n"
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Gen { family, format } => {
            let spec: ConstructionSpec = family.parse().map_err(usage)?;
            let graph = spec.build().map_err(usage)?;
            Ok(Report::ok(io::write(&graph, graph_format(format)?)))
        }
        Command::Sw(args) => {
            let alpha = parse_alpha(&args.alpha)?;
            let state = read_state(&args)?;
            let sw = social_welfare(&state, alpha);
            Ok(Report::ok(match args.format {
                Format::Json => to_json(json!({ "alpha": alpha.to_string(), "welfare": sw.to_string() })),
                _ => format!("{sw}\n"),
            }))
        }
        Command::Stable(args) => {
            let alpha = parse_alpha(&args.alpha)?;
            let state = read_state(&args)?;
            let report = is_pairwise_stable(&state, alpha);
            let witnesses: Vec<String> = report.witnesses.iter().map(ToString::to_string).collect();
            Ok(Report::ok(match args.format {
                Format::Json => to_json(json!({
                    "alpha": alpha.to_string(),
                    "stable": report.stable,
                    "stable_against_addition": report.stable_against_addition,
                    "stable_against_removal": report.stable_against_removal,
                    "witnesses": witnesses,
                })),
                _ => {
                    let mut out = String::from(if report.stable { "stable\n" } else { "unstable\n" });
                    for w in &witnesses {
                        writeln!(out, "{w}").unwrap();
                    }
                    out
                }
            }))
        }
        Command::Dynamics {
            state: args,
            policy,
            seed,
            budget,
        } => {
            let alpha = parse_alpha(&args.alpha)?;
            let policy = match (policy, seed) {
                (PolicyArg::First, _) => Policy::FirstImproving,
                (PolicyArg::Best, _) => Policy::BestImproving,
                (PolicyArg::Random, Some(s)) => Policy::SeededRandom(s),
                (PolicyArg::Random, None) => return Err(usage("--policy random requires --seed")),
            };
            let state = read_state(&args)?;
            let out = run_dynamics(&state, alpha, policy, budget);
            let terminal = match out.terminal {
                Terminal::Stable => format!("stable after {} moves", out.steps.len()),
                Terminal::Cycle { start } => {
                    format!("cycle of {} moves from move {}", out.steps.len() - start, start + 1)
                }
                Terminal::BudgetExhausted => {
                    format!("budget exhausted after {} moves", out.steps.len())
                }
            };
            let moves: Vec<String> = out.steps.iter().map(|s| s.mv.to_string()).collect();
            Ok(Report::ok(match args.format {
                Format::Json => to_json(json!({
                    "policy": policy.to_string(),
                    "alpha": alpha.to_string(),
                    "moves": moves,
                    "terminal": terminal,
                    "final_edges": edge_pairs(&out.final_state),
                    "final_welfare": social_welfare(&out.final_state, alpha).to_string(),
                })),
                _ => {
                    let mut out_text = format!("# policy={policy}\n");
                    for (i, m) in moves.iter().enumerate() {
                        writeln!(out_text, "{}: {m}", i + 1).unwrap();
                    }
                    writeln!(out_text, "{terminal}").unwrap();
                    writeln!(out_text, "welfare {}", social_welfare(&out.final_state, alpha)).unwrap();
                    writeln!(out_text, "edges {}", edge_list(&out.final_state)).unwrap();
                    out_text
                }
            }))
        }
        Command::Smrcst { input, pivot, format } => {
            let host = read_host(&input)?;
            let pivot = match pivot {
                PivotArg::Best => Pivot::BestSwap,
                PivotArg::First => Pivot::FirstSwap,
            };
            let r = smrcst(&host, pivot);
            let tree = io::state_graph(r.tree.state());
            Ok(Report::ok(match format {
                Format::Json => to_json(json!({
                    "routing_cost": r.routing_cost,
                    "initial_cost": r.initial_cost,
                    "iterations": r.iterations,
                    "seed_path": r.seed_path.nodes,
                    "edges": edge_pairs(r.tree.state()),
                })),
                f => format!(
                    "# routing_cost={} initial_cost={} iterations={} seed_path_length={}\n{}",
                    r.routing_cost,
                    r.initial_cost,
                    r.iterations,
                    r.seed_path_length(),
                    io::write(&tree, graph_format(f)?)
                ),
            }))
        }
        Command::Mrcst { input, budget, format } => {
            let host = read_host(&input)?;
            let t = mrcst_exact(&host, budget).map_err(spanning_failure)?;
            Ok(Report::ok(match format {
                Format::Json => to_json(json!({ "routing_cost": t.total(), "edges": edge_pairs(t.state()) })),
                f => format!(
                    "# routing_cost={}\n{}",
                    t.total(),
                    io::write(&io::state_graph(t.state()), graph_format(f)?)
                ),
            }))
        }
        Command::Opt(args) => {
            let alpha = parse_alpha(&args.alpha)?;
            let host = read_host(&args.input)?;
            let opt = optimum_exact(&host, alpha, args.budget).map_err(analysis_failure)?;
            let states = opt.states(&host);
            Ok(Report::ok(match args.format {
                Format::Json => to_json(json!({
                    "alpha": alpha.to_string(),
                    "welfare": opt.welfare.to_string(),
                    "states_examined": opt.states_examined,
                    "optima": states.iter().map(edge_pairs).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let mut out = format!("welfare {}\n", opt.welfare);
                    writeln!(out, "optima {} of {} states", states.len(), opt.states_examined).unwrap();
                    for s in &states {
                        writeln!(out, "{}", edge_list(s)).unwrap();
                    }
                    out
                }
                Format::Csv => return Err(usage("csv output is only available for poa and sweep")),
            }))
        }
        Command::Atlas(args) => {
            let alpha = parse_alpha(&args.alpha)?;
            let host = read_host(&args.input)?;
            let atlas = enumerate_stable_states(&host, alpha, args.budget).map_err(analysis_failure)?;
            let states = atlas.states();
            Ok(Report::ok(match args.format {
                Format::Json => to_json(json!({
                    "alpha": alpha.to_string(),
                    "states_examined": atlas.states_examined,
                    "stable": atlas.stable.iter().zip(&states).map(|(s, st)| json!({
                        "welfare": s.welfare.to_string(),
                        "routing_cost": s.routing_cost,
                        "edges": edge_pairs(st),
                    })).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let mut out = format!("stable {} of {} states\n", states.len(), atlas.states_examined);
                    for (s, st) in atlas.stable.iter().zip(&states) {
                        writeln!(out, "{} | {}", s.welfare, edge_list(st)).unwrap();
                    }
                    out
                }
                Format::Csv => return Err(usage("csv output is only available for poa and sweep")),
            }))
        }
        Command::Poa(args) => {
            let alpha = parse_alpha(&args.alpha)?;
            let host = read_host(&args.input)?;
            let summary = price_summary(&host, alpha, args.budget).map_err(analysis_failure)?;
            match args.format {
                Format::Csv => Ok(Report::ok(format!("{CSV_HEADER}\n{}\n", summary.csv_row()))),
                Format::Json => Ok(Report::ok(to_json(json!({
                    "alpha": alpha.to_string(),
                    "sw_opt": summary.optimum.welfare.to_string(),
                    "sw_worst_stable": summary.atlas.worst().map(|r| r.to_string()),
                    "sw_best_stable": summary.atlas.best().map(|r| r.to_string()),
                    "poa": summary.poa.map(|r| r.to_string()),
                    "pos": summary.pos.map(|r| r.to_string()),
                    "stable_count": summary.atlas.stable.len(),
                    "states_examined": summary.optimum.states_examined,
                })))),
                Format::Text => match summary.poa {
                    Some(poa) => Ok(Report::ok(format!("{poa}\n"))),
                    None => Err(domain(format!("no pairwise stable network at alpha = {alpha}"))),
                },
            }
        }
        Command::Cycle {
            n,
            alpha,
            seed,
            budget,
            format,
        } => {
            let alpha = parse_alpha(&alpha)?;
            if n < 2 {
                return Err(usage("--n must be at least 2"));
            }
            let search = find_improving_cycle(n, alpha, budget, seed);
            let Some(out) = search.outcome else {
                return Err(domain(format!(
                    "no improving cycle found on K_{n} at alpha = {alpha} (seed={seed}, {} moves examined)",
                    search.moves_examined
                )));
            };
            let Terminal::Cycle { start } = out.terminal else {
                unreachable!("cycle search returns cycles")
            };
            let host = Arc::new(HostGraph::complete(n).map_err(usage)?);
            let first = GameState::from_edge_set(host, out.steps[start].key.clone()).map_err(usage)?;
            let moves: Vec<String> = out.steps[start..].iter().map(|s| s.mv.to_string()).collect();
            Ok(Report::ok(match format {
                Format::Json => to_json(json!({
                    "seed": seed,
                    "n": n,
                    "alpha": alpha.to_string(),
                    "moves_examined": search.moves_examined,
                    "start_edges": edge_pairs(&first),
                    "cycle": moves,
                })),
                _ => {
                    let mut text = format!("# seed={seed}\n");
                    writeln!(
                        text,
                        "cycle of {} moves after {} moves examined",
                        moves.len(),
                        search.moves_examined
                    )
                    .unwrap();
                    writeln!(text, "start {}", edge_list(&first)).unwrap();
                    for (i, m) in moves.iter().enumerate() {
                        writeln!(text, "{}: {m}", i + 1).unwrap();
                    }
                    text
                }
            }))
        }
        Command::Sweep {
            seed,
            alpha,
            hosts,
            n_min,
            n_max,
            max_edges,
            budget,
        } => {
            let alphas = alpha.iter().map(|a| parse_alpha(a)).collect::<Result<Vec<_>, _>>()?;
            if n_min < 2 || n_min > n_max || n_max > 64 {
                return Err(usage("node range must satisfy 2 <= n-min <= n-max <= 64"));
            }
            let corpus = random_corpus(&CorpusSpec {
                count: hosts,
                n_min,
                n_max,
                max_edges,
                seed,
            });
            let mut out = format!("# seed={seed}\n{CSV_HEADER}\n");
            for h in corpus {
                let host = Arc::new(h.host);
                for &a in &alphas {
                    let s = price_summary(&host, a, budget).map_err(analysis_failure)?;
                    writeln!(out, "{}", s.csv_row()).unwrap();
                }
            }
            Ok(Report::ok(out))
        }
        Command::Campaign {
            suite,
            seed,
            hosts,
            n_max,
            budget,
        } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(usage)?]
            };
            let config = CampaignConfig {
                seed,
                hosts,
                n_max,
                budget,
            };
            let reports: Vec<_> = suites.into_iter().map(|s| theorem_campaign(s, &config)).collect();
            let failed = reports.iter().any(|r| !r.passed);
            let text = serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n";
            Ok(Report { text, failed })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .expect("global pool is built once");
    }
    match run(cli.command) {
        Ok(report) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &report.text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", report.text);
            }
            if report.failed {
                eprintln!("error: some campaign claims failed");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
