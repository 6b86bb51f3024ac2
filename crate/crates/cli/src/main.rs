use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use oddimm::certificate::{verify_certificate, ImmersionCertificate, Parity, Verification};
use oddimm::corpus::{random_connected_multigraph, small_connected_multigraphs};
use oddimm::driver::{color, decompose, verify_split, DecomposeOptions, DecompositionResult, DriverError};
use oddimm::ep::{odd_a_paths_budget, odd_x_circuits_budget, EpError};
use oddimm::graph::io::{parse_edge_list, write_edge_list};
use oddimm::graph::{EdgeId, Multigraph};
use oddimm::profile::ConstantsProfile;
use oddimm::search::{find_immersion_extract, test_immersion, ExhaustiveOracle, OracleQuery, SearchOutcome, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "oddimm", version, about = "Totally odd clique immersions and bipartite decompositions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Constants profile: `paper`, `desk`, or a profile file.
    #[arg(long, global = true, default_value = "desk")]
    profile: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search-tree expansion cap for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker cap. All work currently runs on one thread.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Any,
    Odd,
    Even,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Any => Parity::Any,
            ParityArg::Odd => Parity::Odd,
            ParityArg::Even => Parity::Even,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EpMode {
    Circuits,
    Paths,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a clique immersion with a parity constraint.
    FindImmersion {
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = ParityArg::Any)]
        parity: ParityArg,
        /// Build the certificate by oracle-driven extraction instead of
        /// reading it off the search.
        #[arg(long)]
        extract: bool,
        graph: PathBuf,
    },
    /// Packing or cover for odd x-circuits or odd A-paths.
    OddEp {
        #[arg(long, value_enum)]
        mode: EpMode,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long = "A", value_delimiter = ',')]
        a: Vec<usize>,
        #[arg(long)]
        k: usize,
        graph: PathBuf,
    },
    /// Totally odd witness or a bipartite edge set with an immersion-free rest.
    Decompose {
        #[arg(long)]
        t: usize,
        /// JSON array of edge ids to start from.
        #[arg(long)]
        warm_start: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Proper colouring from a split result.
    Color {
        #[arg(long)]
        split: PathBuf,
        graph: PathBuf,
    },
    VerifyCert {
        cert: PathBuf,
        graph: PathBuf,
    },
    VerifySplit {
        #[arg(long)]
        split: PathBuf,
        graph: PathBuf,
    },
    /// Every connected multigraph up to the given size, up to isomorphism,
    /// or seeded random ones with `--random`.
    GenCorpus {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
        #[arg(long)]
        random: Option<usize>,
    },
    /// Print the evaluated constants of a profile.
    Profile {
        #[arg(long, default_value_t = 3)]
        t: usize,
    },
}

/// Exit codes and what was printed.
enum Outcome {
    Success(Value),
    Negative(Value),
    Inconclusive(Value),
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let format = cli.common.format;
    match run(&cli) {
        Ok((outcome, dot)) => {
            let (value, code) = match outcome {
                Outcome::Success(v) => (v, 0),
                Outcome::Negative(v) => (v, 1),
                Outcome::Inconclusive(v) => (v, 2),
            };
            match (format, dot) {
                (Format::Dot, Some(d)) => print!("{d}"),
                _ => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
            }
            ExitCode::from(code)
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Multigraph, InputError> {
    parse_edge_list(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("outputs serialize")
}

fn cert_value(cert: &ImmersionCertificate) -> Value {
    serde_json::from_str(&cert.to_json()).expect("certificate JSON")
}

fn run(cli: &Cli) -> Result<(Outcome, Option<String>), InputError> {
    let c = &cli.common;
    if c.jobs == 0 {
        return Err(InputError("--jobs must be at least 1".into()));
    }
    if c.budget == 0 {
        return Err(InputError("--budget must be positive".into()));
    }
    let profile = || ConstantsProfile::load(&c.profile).map_err(InputError);
    let no_dot = |name: &str| -> Result<(), InputError> {
        if c.format == Format::Dot {
            return Err(InputError(format!("{name} has no DOT output")));
        }
        Ok(())
    };
    match &cli.command {
        Command::FindImmersion { t, parity, extract, graph } => {
            if *t == 0 {
                return Err(InputError("--t must be at least 1".into()));
            }
            let g = read_graph(graph)?;
            let parity = Parity::from(*parity);
            let outcome = if *extract && parity == Parity::Any {
                let mut oracle = ExhaustiveOracle::new(c.budget);
                match find_immersion_extract(&g, *t, &mut oracle) {
                    Ok(Some(cert)) => SearchOutcome::Found(cert),
                    Ok(None) => SearchOutcome::NotFound,
                    Err(e) => {
                        eprintln!("extraction stopped: {e}");
                        SearchOutcome::BudgetExhausted
                    }
                }
            } else {
                if *extract {
                    return Err(InputError("--extract only supports --parity any".into()));
                }
                test_immersion(&OracleQuery::new(&g, *t, parity).with_budget(c.budget))
            };
            Ok(match outcome {
                SearchOutcome::Found(cert) => {
                    let dot = certificate_dot(&g, &cert);
                    (Outcome::Success(cert_value(&cert)), Some(dot))
                }
                SearchOutcome::NotFound => {
                    eprintln!("no K_{t} immersion with parity {parity:?}");
                    (Outcome::Negative(json!({ "found": false })), None)
                }
                SearchOutcome::BudgetExhausted => {
                    eprintln!("search budget exhausted");
                    (Outcome::Inconclusive(json!({ "found": null, "reason": "budget" })), None)
                }
            })
        }
        Command::OddEp { mode, x, a, k, graph } => {
            no_dot("odd-ep")?;
            if *k == 0 {
                return Err(InputError("--k must be at least 1".into()));
            }
            let g = read_graph(graph)?;
            let result = match mode {
                EpMode::Circuits => {
                    let x = x.ok_or_else(|| InputError("--mode circuits needs --x".into()))?;
                    odd_x_circuits_budget(&g, x, *k, c.budget).map(|o| to_value(&o))
                }
                EpMode::Paths => {
                    if a.is_empty() {
                        return Err(InputError("--mode paths needs --A".into()));
                    }
                    let set: BTreeSet<_> = a.iter().copied().collect();
                    odd_a_paths_budget(&g, &set, *k, c.budget).map(|o| to_value(&o))
                }
            };
            match result {
                Ok(v) => Ok((Outcome::Success(v), None)),
                Err(EpError::BudgetExhausted) => {
                    eprintln!("search budget exhausted");
                    Ok((Outcome::Inconclusive(json!({ "outcome": null, "reason": "budget" })), None))
                }
                Err(e @ EpError::UnknownVertex(_)) => Err(e.into()),
            }
        }
        Command::Decompose { t, warm_start, graph } => {
            let g = read_graph(graph)?;
            let profile = profile()?;
            let warm_start = match warm_start {
                Some(p) => {
                    let f: BTreeSet<EdgeId> = serde_json::from_str(&read(p)?)
                        .map_err(|e| InputError(format!("{}: {e}", p.display())))?;
                    Some(f)
                }
                None => None,
            };
            let mut oracle = ExhaustiveOracle::new(c.budget);
            match decompose(&g, *t, &profile, &DecomposeOptions { warm_start }, &mut oracle) {
                Ok(result) => {
                    let dot = match &result {
                        DecompositionResult::TotallyOddWitness { certificate } => Some(certificate_dot(&g, certificate)),
                        DecompositionResult::Split { f, .. } => Some(split_dot(&g, f)),
                    };
                    eprintln!("oracle calls: {}, expansions: {}", oracle.calls, oracle.expansions);
                    Ok((Outcome::Success(to_value(&result)), dot))
                }
                Err(DriverError::Precondition(msg)) => Err(InputError(msg)),
                Err(e) => {
                    eprintln!("decomposition incomplete: {e}");
                    Ok((Outcome::Inconclusive(json!({ "result": null, "reason": e.to_string() })), None))
                }
            }
        }
        Command::Color { split, graph } => {
            no_dot("color")?;
            let g = read_graph(graph)?;
            let result = read_split(split)?;
            let coloring = color(&g, &result)?;
            if !coloring.is_proper(&g) {
                eprintln!("colouring is not proper");
                return Ok((Outcome::Negative(to_value(&coloring)), None));
            }
            Ok((Outcome::Success(to_value(&coloring)), None))
        }
        Command::VerifyCert { cert, graph } => {
            let g = read_graph(graph)?;
            let text = read(cert)?;
            let cert = ImmersionCertificate::from_json(&text).map_err(|e| InputError(format!("{}: {e}", cert.display())))?;
            let dot = Some(certificate_dot(&g, &cert));
            match verify_certificate(&g, &cert)? {
                Verification::Pass => Ok((Outcome::Success(json!({ "valid": true })), dot)),
                Verification::Fail(v) => {
                    eprintln!("invalid certificate: {v}");
                    Ok((Outcome::Negative(json!({ "valid": false, "violation": to_value(&v) })), dot))
                }
            }
        }
        Command::VerifySplit { split, graph } => {
            no_dot("verify-split")?;
            let g = read_graph(graph)?;
            let result = read_split(split)?;
            let check = verify_split(&g, &result, c.budget);
            let mut v = to_value(&check);
            v["ok"] = json!(check.ok());
            if check.ok() {
                Ok((Outcome::Success(v), None))
            } else {
                eprintln!("split failed verification");
                Ok((Outcome::Negative(v), None))
            }
        }
        Command::GenCorpus { max_vertices, max_edges, random } => {
            no_dot("gen-corpus")?;
            let graphs = match random {
                None => small_connected_multigraphs(*max_vertices, *max_edges),
                Some(count) => {
                    if *max_vertices == 0 || *max_edges + 1 < *max_vertices {
                        return Err(InputError("max-edges must allow a connected graph on max-vertices".into()));
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
                    (0..*count)
                        .map(|_| {
                            use rand::Rng;
                            let n = rng.gen_range(1..=*max_vertices);
                            let extra = rng.gen_range(0..=*max_edges + 1 - n);
                            random_connected_multigraph(&mut rng, n, extra, 0.1)
                        })
                        .collect()
                }
            };
            let list: Vec<Value> = graphs.iter().map(|g| json!({ "edge_list": write_edge_list(g) })).collect();
            Ok((Outcome::Success(json!({ "count": list.len(), "graphs": list })), None))
        }
        Command::Profile { t } => {
            no_dot("profile")?;
            let p = profile()?;
            let values: serde_json::Map<String, Value> = p.table(*t).into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            Ok((Outcome::Success(json!({ "name": p.name, "strict": p.strict, "t": t, "values": values })), None))
        }
    }
}

fn read_split(path: &Path) -> Result<DecompositionResult, InputError> {
    serde_json::from_str(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];

fn certificate_dot(g: &Multigraph, cert: &ImmersionCertificate) -> String {
    let mut out = String::from("graph certificate {\n");
    for v in g.vertices() {
        match cert.branch_vertices.iter().position(|&b| b == v) {
            Some(i) => writeln!(out, "  {v} [shape=doublecircle, label=\"{v} ({i})\"];").unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    let owner: std::collections::BTreeMap<EdgeId, usize> =
        cert.trails.iter().enumerate().flat_map(|(i, t)| t.edge_ids().map(move |e| (e, i))).collect();
    for (id, e) in g.edges() {
        match owner.get(&id) {
            Some(&i) => {
                writeln!(out, "  {} -- {} [label=\"{id}\", color={}, penwidth=2];", e.u, e.v, PALETTE[i % PALETTE.len()])
                    .unwrap()
            }
            None => writeln!(out, "  {} -- {} [label=\"{id}\", style=dotted];", e.u, e.v).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

fn split_dot(g: &Multigraph, f: &BTreeSet<EdgeId>) -> String {
    let mut out = String::from("graph split {\n");
    for v in g.vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for (id, e) in g.edges() {
        let style = if f.contains(&id) { "color=blue, penwidth=2" } else { "color=gray" };
        writeln!(out, "  {} -- {} [label=\"{id}\", {style}];", e.u, e.v).unwrap();
    }
    out.push_str("}\n");
    out
}
