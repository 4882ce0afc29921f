use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use maso::io::{instance_id, read_instance, to_json};
use maso::report::{overall, write_csv, write_json};
use maso::{generate, run, run_suite, Algorithm, ExperimentSpec, GenParams, GeneratorKind, GraphShape, NamedInstance, Suite};
use maso_core::lifting::lift_graph;
use maso_core::Graph;
use serde::Serialize;

const EXIT_SPEC: u8 = 3;
const EXIT_VIOLATION: u8 = 2;

#[derive(Parser)]
#[command(name = "maso", version, about = "Multi-agent submodular optimization at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a seeded instance as JSON.
    Generate {
        #[arg(long, value_enum)]
        kind: GeneratorKind,
        /// Items, or graph nodes for graph-based kinds.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        /// complete:N, path:N, cycle:N or random:N[:p].
        #[arg(long)]
        graph: Option<GraphShape>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every (instance, algorithm, seed) cell and write a report.
    Run {
        #[arg(long = "instance", required = true)]
        instances: Vec<PathBuf>,
        #[arg(long = "algo", value_enum)]
        algos: Vec<Algorithm>,
        /// Half-open range `a..b`, or a single seed.
        #[arg(long, default_value = "0..1", value_parser = parse_seeds)]
        seeds: Range<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Largest (k+1)^n the certifying brute force may enumerate.
        #[arg(long)]
        caps_override: Option<u64>,
        /// Fill the runtime_ms column.
        #[arg(long)]
        timings: bool,
    },
    /// Run a property suite; exits nonzero on any violation.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Refused: suites run at fixed caps.
        #[arg(long)]
        caps_override: Option<u64>,
    },
    /// Print the k-fold lifted multigraph as an adjacency list.
    LiftGraph {
        #[arg(long)]
        graph: GraphShape,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_seeds(s: &str) -> Result<Range<u64>, String> {
    let range = match s.split_once("..") {
        Some((a, b)) => {
            let a = a.trim().parse::<u64>().map_err(|e| format!("bad seed `{a}`: {e}"))?;
            let b = b.trim().parse::<u64>().map_err(|e| format!("bad seed `{b}`: {e}"))?;
            a..b
        }
        None => {
            let a = s.trim().parse::<u64>().map_err(|e| format!("bad seed `{s}`: {e}"))?;
            a..a + 1
        }
    };
    if range.start > range.end {
        return Err(format!("empty seed range `{s}`"));
    }
    Ok(range)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Serialize)]
struct Neighbor {
    node: usize,
    edge: usize,
}

#[derive(Serialize)]
struct LiftedGraphJson {
    nodes: usize,
    edges: Vec<(usize, usize)>,
    pi: Vec<usize>,
    adjacency: Vec<Vec<Neighbor>>,
}

fn lifted_graph_json(g: &Graph, k: usize) -> Result<LiftedGraphJson> {
    let lifted = lift_graph(g, k)?;
    let mut adjacency: Vec<Vec<Neighbor>> = (0..lifted.graph.nodes).map(|_| Vec::new()).collect();
    for (e, &(u, v)) in lifted.graph.edges.iter().enumerate() {
        adjacency[u].push(Neighbor { node: v, edge: e });
        if u != v {
            adjacency[v].push(Neighbor { node: u, edge: e });
        }
    }
    Ok(LiftedGraphJson {
        nodes: lifted.graph.nodes,
        edges: lifted.graph.edges,
        pi: lifted.pi,
        adjacency,
    })
}

fn execute(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Generate { kind, n, k, seed, budget, arity, graph, out } => {
            let params = GenParams { n, k, budget, arity, graph };
            let spec = generate(kind, &params, seed)?;
            let mut w = output(out.as_deref())?;
            w.write_all(to_json(&spec)?.as_bytes())?;
            w.flush()?;
            Ok(0)
        }
        Command::Run { instances, algos, seeds, out, format, caps_override, timings } => {
            let named = instances
                .iter()
                .map(|p| Ok(NamedInstance { id: instance_id(p), spec: read_instance(p)? }))
                .collect::<Result<Vec<_>>>()?;
            let mut spec = ExperimentSpec::new(named, algos, seeds);
            spec.timings = timings;
            if let Some(cap) = caps_override {
                spec.cert_cap = cap;
            }
            let rows = run(&spec)?;
            let json = match format {
                Some(f) => f == Format::Json,
                None => out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "json")),
            };
            let mut w = output(out.as_deref())?;
            if json {
                write_json(&mut w, &rows)?;
            } else {
                write_csv(&mut w, &rows)?;
            }
            w.flush()?;
            Ok(overall(&rows).exit_code() as u8)
        }
        Command::Verify { suite, caps_override } => {
            if caps_override.is_some() {
                bail!("--caps-override is refused for verification suites");
            }
            let results = run_suite(suite, |r| println!("{}", r.line()));
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("{} passed, {failed} failed", results.len() - failed);
            Ok(if failed == 0 { 0 } else { EXIT_VIOLATION })
        }
        Command::LiftGraph { graph, k, seed } => {
            let g = graph.build(&mut maso::generate::rng(seed))?;
            let mut w = output(None)?;
            serde_json::to_writer_pretty(&mut w, &lifted_graph_json(&g, k)?)?;
            writeln!(w)?;
            w.flush()?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_SPEC } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_SPEC)
        }
    }
}
