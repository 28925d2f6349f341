//! Command-line front end: `analyze` profiles one orientation system,
//! `verify` runs the claim verifiers over a graph or a built-in corpus.
//!
//! Exit codes: 0 all checks pass, 1 at least one verifier failed,
//! 2 invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use orient_shatter::graph::Digraph;
use orient_shatter::shattering::{find_symmetric_restriction_with_limit, profile};
use orient_shatter::systems::build_orientation_system;
use orient_shatter::verify::{run_suite, seeded_weights, Report, SuiteKind, Verdict};
use orient_shatter::{Graph, Limits, OrientationProperty};

#[derive(Parser)]
#[command(name = "orient-shatter", version, about = "Shattering analysis of graph orientation systems")]
struct Cli {
    /// Worker threads for table construction (also ORIENT_SHATTER_THREADS)
    #[arg(long, global = true)]
    parallel: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Profile the orientation system of one graph under one property
    Analyze(AnalyzeArgs),
    /// Run claim verifiers over a graph file or the built-in corpus
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Graph description file (JSON)
    graph: PathBuf,
    /// Orientation property, e.g. cyclic | acyclic | kstrong:2 |
    /// flow:s,t,w | dist:s,t,d | reach:s,w1+w2 | forbid:<digraph.json>
    property: String,
    #[arg(long, default_value_t = 16)]
    max_edges: usize,
    #[arg(long, default_value_t = 14)]
    max_lopsided: usize,
    #[arg(long, value_enum, default_value_t = Format::Report)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph description file; omit to sweep all graphs on <= 4 vertices
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Suites to run (default: all)
    #[arg(long, value_delimiter = ',')]
    suite: Vec<SuiteName>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    max_edges: usize,
    #[arg(long, default_value_t = 14)]
    max_lopsided: usize,
    #[arg(long, value_enum, default_value_t = Format::Report)]
    format: Format,
    /// Self-test: inject a synthetic failing report
    #[arg(long, hide = true)]
    corrupt_oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Report,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Cyclic,
    Strong,
    Flow,
    Dist,
    Steiner,
    Forbidden,
    General,
}

impl From<SuiteName> for SuiteKind {
    fn from(s: SuiteName) -> SuiteKind {
        match s {
            SuiteName::Cyclic => SuiteKind::Cyclic,
            SuiteName::Strong => SuiteKind::Strong,
            SuiteName::Flow => SuiteKind::Flow,
            SuiteName::Dist => SuiteKind::Dist,
            SuiteName::Steiner => SuiteKind::Steiner,
            SuiteName::Forbidden => SuiteKind::Forbidden,
            SuiteName::General => SuiteKind::General,
        }
    }
}

#[derive(Deserialize)]
struct GraphFile {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    capacities: Option<Vec<u64>>,
    lengths: Option<Vec<u64>>,
}

#[derive(Deserialize)]
struct DigraphFile {
    vertices: usize,
    arcs: Vec<(usize, usize)>,
}

struct InputError(String);

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn load_graph(path: &PathBuf) -> Result<(Graph, Option<Vec<u64>>, Option<Vec<u64>>), InputError> {
    let text = fs::read_to_string(path)?;
    let gf: GraphFile = serde_json::from_str(&text)?;
    let g = Graph::new(gf.vertices, gf.edges)?;
    for (name, w) in [("capacities", &gf.capacities), ("lengths", &gf.lengths)] {
        if let Some(w) = w {
            if w.len() != g.m() {
                return Err(InputError(format!(
                    "{name} has {} entries for {} edges",
                    w.len(),
                    g.m()
                )));
            }
        }
    }
    Ok((g, gf.capacities, gf.lengths))
}

fn parse_vertex(s: &str, n: usize) -> Result<usize, InputError> {
    let v: usize = s
        .trim()
        .parse()
        .map_err(|_| InputError(format!("bad vertex '{s}'")))?;
    if v >= n {
        return Err(InputError(format!("vertex {v} out of range (n={n})")));
    }
    Ok(v)
}

/// Weights come from the file when given, otherwise from a fixed seed so
/// repeated runs agree. Lengths fall in [1,8], capacities in [1,4].
fn parse_property(
    spec: &str,
    g: &Graph,
    caps: &Option<Vec<u64>>,
    lens: &Option<Vec<u64>>,
) -> Result<OrientationProperty, InputError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let caps = caps
        .clone()
        .unwrap_or_else(|| seeded_weights(&mut rng, g.m(), 1, 4));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let lens = lens
        .clone()
        .unwrap_or_else(|| seeded_weights(&mut rng, g.m(), 1, 8));

    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, r),
        None => (spec, ""),
    };
    match head {
        "cyclic" => Ok(OrientationProperty::Cyclic),
        "acyclic" => Ok(OrientationProperty::Acyclic),
        "kstrong" => {
            let k: usize = rest
                .parse()
                .map_err(|_| InputError(format!("bad k '{rest}'")))?;
            Ok(OrientationProperty::KStrong(k))
        }
        "flow" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(InputError("flow wants s,t,w".into()));
            }
            Ok(OrientationProperty::Flow {
                caps,
                s: parse_vertex(parts[0], g.n())?,
                t: parse_vertex(parts[1], g.n())?,
                w: parts[2]
                    .parse()
                    .map_err(|_| InputError(format!("bad flow value '{}'", parts[2])))?,
            })
        }
        "dist" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(InputError("dist wants s,t,d".into()));
            }
            Ok(OrientationProperty::Distance {
                lens,
                s: parse_vertex(parts[0], g.n())?,
                t: parse_vertex(parts[1], g.n())?,
                d: parts[2]
                    .parse()
                    .map_err(|_| InputError(format!("bad distance bound '{}'", parts[2])))?,
            })
        }
        "reach" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 2 {
                return Err(InputError("reach wants s,w1+w2+...".into()));
            }
            let s = parse_vertex(parts[0], g.n())?;
            let targets = parts[1]
                .split('+')
                .map(|t| parse_vertex(t, g.n()))
                .collect::<Result<Vec<_>, _>>()?;
            if targets.is_empty() {
                return Err(InputError("reach wants at least one target".into()));
            }
            Ok(OrientationProperty::Reach { s, targets })
        }
        "forbid" => {
            let text = fs::read_to_string(rest)?;
            let df: DigraphFile = serde_json::from_str(&text)?;
            Ok(OrientationProperty::Forbid(Digraph::new(
                df.vertices,
                df.arcs,
            )?))
        }
        other => Err(InputError(format!("unknown property '{other}'"))),
    }
}

fn print_reports(reports: &[Report], format: Format) {
    match format {
        Format::Report => {
            for r in reports {
                println!("{r}");
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let na = reports
                .iter()
                .filter(|r| r.verdict == Verdict::NotApplicable)
                .count();
            println!(
                "total: {} reports, {} passed, {failed} failed, {na} not applicable",
                reports.len(),
                reports.len() - failed - na
            );
        }
        Format::Csv => {
            println!("claim,inputs,verdict,witness");
            for r in reports {
                let w = r.witness.clone().unwrap_or_default();
                println!(
                    "{},{},{},{}",
                    csv_field(&r.claim),
                    csv_field(&r.inputs),
                    r.verdict,
                    csv_field(&w)
                );
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn run_analyze(args: &AnalyzeArgs) -> Result<bool, InputError> {
    let (g, caps, lens) = load_graph(&args.graph)?;
    let prop = parse_property(&args.property, &g, &caps, &lens)?;
    let system = build_orientation_system(&g, &prop, args.max_edges)?;
    let prof = profile(&system);
    let lopsided = find_symmetric_restriction_with_limit(&system, args.max_lopsided)?;
    let se = prof.shattered == prof.strongly_shattered;
    match args.format {
        Format::Report => {
            println!("graph: n={} m={}", g.n(), g.m());
            println!("property: {}", args.property);
            println!("orientations: {}", prof.size);
            println!("vc: {}", prof.vc);
            println!("dual_vc: {}", prof.dvc);
            println!("shattered: {}", prof.shattered.size());
            println!("strongly_shattered: {}", prof.strongly_shattered.size());
            println!("extremal: {se}");
            match &lopsided {
                Some(c) => println!("symmetric_restriction: {c:?}"),
                None => println!("symmetric_restriction: none"),
            }
        }
        Format::Csv => {
            println!("size,vc,dvc,str,sstr,extremal");
            println!(
                "{},{},{},{},{},{se}",
                prof.size,
                prof.vc,
                prof.dvc,
                prof.shattered.size(),
                prof.strongly_shattered.size()
            );
        }
    }
    Ok(true)
}

fn run_verify(args: &VerifyArgs) -> Result<bool, InputError> {
    let graphs: Vec<(String, Graph)> = match &args.graph {
        Some(path) => {
            let (g, _, _) = load_graph(path)?;
            vec![(path.display().to_string(), g)]
        }
        None => orient_shatter::corpus::all_graphs_up_to(4),
    };
    let kinds: Vec<SuiteKind> = if args.suite.is_empty() {
        SuiteKind::all().to_vec()
    } else {
        args.suite.iter().map(|&s| s.into()).collect()
    };
    let limits = Limits {
        max_edges: args.max_edges,
        max_lopsided: args.max_lopsided,
    };
    let mut reports = run_suite(&graphs, &kinds, args.seed, limits)?;
    if args.corrupt_oracle {
        let mut r = Report {
            claim: "corrupt-oracle-self-test".into(),
            inputs: "synthetic".into(),
            quantities: vec![("injected".into(), "VIOLATED".into())],
            verdict: Verdict::Fail,
            witness: Some("deliberately corrupted oracle value".into()),
            findings: Vec::new(),
        };
        r.quantities.shrink_to_fit();
        reports.push(r);
    }
    print_reports(&reports, args.format);
    Ok(reports.iter().all(|r| r.passed()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.parallel.or_else(|| {
        std::env::var("ORIENT_SHATTER_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        if t >= 1 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
    }
    let outcome = match &cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
