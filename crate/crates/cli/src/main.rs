//! `onepw` — workbench for 1-planar drawings of bipartite graphs:
//! validation, certificate replay, crossing searches, edge bounds, and
//! schematic figure export.
//!
//! Exit codes: 0 pass, 1 check failed, 2 usage or parse error,
//! 3 hypothesis failure, 4 budget exhausted.

mod cache;
mod config;
mod export;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use onepw_core::bounds::{certify, czap_bound, karpov_bound, main_bound, removal_lower_bound};
use onepw_core::drawing::validate_drawing;
use onepw_core::extension::extend;
use onepw_core::graph::{complete_bipartite, Bipartition, SimpleGraph};
use onepw_core::search::{
    decide_one_planar, disc_min_crossings, extremal_search, min_crossings_parallel,
};
use onepw_core::textio::{
    parse_drawing, parse_embedding, parse_graph, serialize_drawing,
};

use config::{Overrides, RunConfig};
use export::{to_dot, to_svg, Diagram};

#[derive(Parser)]
#[command(name = "onepw", version, about = "1-planar bipartite drawing workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    budget: BudgetFlags,
}

#[derive(Args, Debug, Default)]
struct BudgetFlags {
    /// search no deeper than this many crossings
    #[arg(long, global = true)]
    max_crossings: Option<usize>,
    /// abort a search after this many explored nodes
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// wall-clock limit in seconds
    #[arg(long, global = true)]
    time_limit_secs: Option<u64>,
    /// orbit pruning with graph automorphisms (on by default)
    #[arg(long, global = true)]
    symmetry: Option<bool>,
    /// parallel search workers
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// result cache file
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a drawing file against every structural invariant
    Validate { path: PathBuf },
    /// Replay the edge-bound certificate chain on a bipartite drawing
    Certify { path: PathBuf },
    /// Decide 1-planarity / minimize crossings / extremal edge counts
    Search {
        kind: SearchKind,
        /// graph file, `K{x},{y}` shorthand, or `x` for extremal
        spec: String,
        /// second part size (extremal only)
        y: Option<usize>,
        /// rim part for disc search (only X is supported)
        #[arg(long, default_value = "X")]
        rim: String,
        /// where to write a witness drawing
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the closed-form edge bounds
    Bounds {
        /// total vertex count
        #[arg(long)]
        n: Option<usize>,
        /// part sizes x y
        #[arg(long, num_args = 2)]
        parts: Option<Vec<usize>>,
    },
    /// Emit a schematic DOT or SVG diagram of a drawing or embedding
    Export {
        path: PathBuf,
        #[arg(long)]
        format: ExportFormat,
        /// draw the extension (hug edges dashed) instead of the drawing
        #[arg(long)]
        bundle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchKind {
    #[value(name = "1planar")]
    OnePlanar,
    Mincross,
    Disc,
    Extremal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Dot,
    Svg,
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_HYPOTHESIS: u8 = 3;
const EXIT_BUDGET: u8 = 4;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = Overrides {
        max_crossings: cli.budget.max_crossings,
        max_nodes: cli.budget.max_nodes,
        time_limit_secs: cli.budget.time_limit_secs,
        symmetry: cli.budget.symmetry,
        jobs: cli.budget.jobs,
        cache: cli.budget.cache.clone(),
    };
    let cfg = match config::resolve(flags) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    match cli.command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Certify { path } => cmd_certify(&path),
        Command::Search {
            kind,
            spec,
            y,
            rim,
            out,
        } => cmd_search(kind, &spec, y, &rim, out, &cfg),
        Command::Bounds { n, parts } => cmd_bounds(n, parts),
        Command::Export {
            path,
            format,
            bundle,
            out,
        } => cmd_export(&path, format, bundle, out),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| usage_error(&format!("{}: {e}", path.display())))
}

fn cmd_validate(path: &PathBuf) -> ExitCode {
    let text = match read(path) {
        Ok(t) => t,
        Err(c) => return c,
    };
    let d = match parse_drawing(&text) {
        Ok(d) => d,
        Err(e) => return usage_error(&e.to_string()),
    };
    let rep = validate_drawing(&d);
    if rep.is_valid() {
        println!(
            "valid 1-planar drawing: {} vertices, {} edges, {} crossings",
            d.graph.vertex_count(),
            d.graph.edge_count(),
            d.crossing_count()
        );
        ExitCode::SUCCESS
    } else {
        for v in &rep.violations {
            println!("violation: {v}");
        }
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn cmd_certify(path: &PathBuf) -> ExitCode {
    let text = match read(path) {
        Ok(t) => t,
        Err(c) => return c,
    };
    let d = match parse_drawing(&text) {
        Ok(d) => d,
        Err(e) => return usage_error(&e.to_string()),
    };
    let cert = match certify(&d) {
        Ok(c) => c,
        Err(e) => return usage_error(&e.to_string()),
    };
    print!("{}", cert.serialize());
    if let Some(h) = &cert.failed_hypothesis {
        eprintln!("hypothesis failed: {h}");
        return ExitCode::from(EXIT_HYPOTHESIS);
    }
    if cert.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

/// `K{x},{y}` shorthand or a graph file path.
fn load_graph(spec: &str) -> Result<(SimpleGraph, Option<Bipartition>), String> {
    if let Some(rest) = spec.strip_prefix('K') {
        if let Some((xs, ys)) = rest.split_once(',') {
            if let (Ok(x), Ok(y)) = (xs.parse::<usize>(), ys.parse::<usize>()) {
                let (g, bip) = complete_bipartite(x, y).map_err(|e| e.to_string())?;
                return Ok((g, Some(bip)));
            }
        }
        return Err(format!("bad shorthand `{spec}`, expected K<x>,<y>"));
    }
    let text =
        std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
    parse_graph(&text).map_err(|e| e.to_string())
}

fn cmd_search(
    kind: SearchKind,
    spec: &str,
    y: Option<usize>,
    rim: &str,
    out: Option<PathBuf>,
    cfg: &RunConfig,
) -> ExitCode {
    let question = match kind {
        SearchKind::OnePlanar => "1planar",
        SearchKind::Mincross => "mincross",
        SearchKind::Disc => "disc",
        SearchKind::Extremal => "extremal",
    };
    if let SearchKind::Extremal = kind {
        return cmd_search_extremal(spec, y, out, cfg);
    }
    let (g, bip) = match load_graph(spec) {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    let key = cache::graph_key(&g, bip.as_ref());
    let bkey = cache::budget_key(&cfg.budget, cfg.jobs);
    if let Some(verdict) = cache::lookup(&cfg.cache, &key, question, &bkey) {
        println!("{verdict}");
        return ExitCode::SUCCESS;
    }
    let decision = match kind {
        SearchKind::Disc => {
            if rim != "X" {
                return usage_error("only `--rim X` is supported");
            }
            let Some(b) = bip.as_ref() else {
                return usage_error("disc search needs a bipartite graph");
            };
            disc_min_crossings(&g, b, &cfg.budget)
        }
        SearchKind::OnePlanar if cfg.jobs == 1 => decide_one_planar(&g, bip.as_ref(), &cfg.budget),
        _ => min_crossings_parallel(&g, bip.as_ref(), &cfg.budget, cfg.jobs),
    };
    let dec = match decision {
        Ok(d) => d,
        Err(e) => return usage_error(&e.to_string()),
    };
    let (verdict, witness_path) = match (&dec.drawing, dec.exhausted) {
        (Some(d), _) => {
            let k = dec.crossings.expect("drawing implies a crossing count");
            let path = out.unwrap_or_else(|| PathBuf::from(format!("witness-{question}.drawing")));
            if let Err(e) = std::fs::write(&path, serialize_drawing(d)) {
                return usage_error(&format!("{}: {e}", path.display()));
            }
            let v = match kind {
                SearchKind::OnePlanar => format!("YES crossings={k}"),
                _ => format!("k={k}"),
            };
            (v, path.display().to_string())
        }
        (None, true) => {
            let v = match kind {
                SearchKind::OnePlanar => "NO".to_string(),
                _ => "infeasible".to_string(),
            };
            (v, "-".to_string())
        }
        (None, false) => {
            for p in &dec.provenance {
                eprintln!("note: {p}");
            }
            eprintln!("budget exhausted after {} nodes, no verdict", dec.nodes);
            return ExitCode::from(EXIT_BUDGET);
        }
    };
    println!("{verdict}");
    for p in &dec.provenance {
        eprintln!("note: {p}");
    }
    if let Err(e) = cache::append(&cfg.cache, &key, question, &verdict, &witness_path, &bkey) {
        eprintln!("warning: cache append failed: {e}");
    }
    ExitCode::SUCCESS
}

fn cmd_search_extremal(
    spec: &str,
    y: Option<usize>,
    out: Option<PathBuf>,
    cfg: &RunConfig,
) -> ExitCode {
    let (Ok(x), Some(y)) = (spec.parse::<usize>(), y) else {
        return usage_error("extremal search takes part sizes: `search extremal <x> <y>`");
    };
    let (g, bip) = match complete_bipartite(x.min(y).max(1), x.max(y)) {
        Ok(v) => v,
        Err(e) => return usage_error(&e.to_string()),
    };
    let key = cache::graph_key(&g, Some(&bip));
    let bkey = cache::budget_key(&cfg.budget, cfg.jobs);
    if let Some(verdict) = cache::lookup(&cfg.cache, &key, "extremal", &bkey) {
        println!("{verdict}");
        return ExitCode::SUCCESS;
    }
    let res = match extremal_search(x, y, &cfg.budget) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    if !res.exhausted && res.witness.is_none() {
        eprintln!("budget exhausted, no maximal witness found");
        return ExitCode::from(EXIT_BUDGET);
    }
    let verdict = format!("max_edges={} exhausted={}", res.max_edges, res.exhausted);
    let witness_path = match &res.witness {
        Some(d) => {
            let path =
                out.unwrap_or_else(|| PathBuf::from(format!("witness-extremal-{x}-{y}.drawing")));
            if let Err(e) = std::fs::write(&path, serialize_drawing(d)) {
                return usage_error(&format!("{}: {e}", path.display()));
            }
            path.display().to_string()
        }
        None => "-".to_string(),
    };
    println!("{verdict}");
    if let Err(e) = cache::append(&cfg.cache, &key, "extremal", &verdict, &witness_path, &bkey) {
        eprintln!("warning: cache append failed: {e}");
    }
    ExitCode::SUCCESS
}

fn cmd_bounds(n: Option<usize>, parts: Option<Vec<usize>>) -> ExitCode {
    match (n, parts) {
        (Some(n), None) => match karpov_bound(n) {
            Ok(k) => {
                println!("karpov={k}");
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(&e.to_string()),
        },
        (None, Some(p)) if p.len() == 2 => {
            let (x, y) = (p[0].min(p[1]), p[0].max(p[1]));
            let n = x + y;
            let mut line = Vec::new();
            if let Ok(k) = karpov_bound(n) {
                line.push(format!("karpov={k}"));
            }
            if let Ok(c) = czap_bound(n, x) {
                line.push(format!("czap={c}"));
            }
            if let Ok(m) = main_bound(n, x) {
                line.push(format!("main={m}"));
            }
            if let Ok(r) = removal_lower_bound(x, y) {
                line.push(format!("removal={r}"));
            }
            if line.is_empty() {
                return usage_error("part sizes out of range for every bound");
            }
            println!("{}", line.join(" "));
            ExitCode::SUCCESS
        }
        _ => usage_error("pass exactly one of --n <n> or --parts <x> <y>"),
    }
}

fn cmd_export(
    path: &PathBuf,
    format: ExportFormat,
    bundle: bool,
    out: Option<PathBuf>,
) -> ExitCode {
    let text = match read(path) {
        Ok(t) => t,
        Err(c) => return c,
    };
    let diagram = if bundle {
        let d = match parse_drawing(&text) {
            Ok(d) => d,
            Err(e) => return usage_error(&e.to_string()),
        };
        let b = match extend(&d) {
            Ok(b) => b,
            Err(e) => return usage_error(&e.to_string()),
        };
        let dashed: Vec<usize> = b
            .ew_slot
            .values()
            .filter_map(|&slot| b.dxw.edge_map.get(slot).copied().flatten())
            .collect();
        Diagram::from_embedding(&b.dxw.embedding, &dashed)
    } else if let Ok(d) = parse_drawing(&text) {
        Diagram::from_embedding(&d.planarization, &[])
    } else if let Ok(emb) = parse_embedding(&text) {
        Diagram::from_embedding(&emb, &[])
    } else {
        return usage_error(&format!("{}: not a drawing or embedding file", path.display()));
    };
    let rendered = match format {
        ExportFormat::Dot => to_dot(&diagram),
        ExportFormat::Svg => to_svg(&diagram),
    };
    let ext = match format {
        ExportFormat::Dot => "dot",
        ExportFormat::Svg => "svg",
    };
    let out = out.unwrap_or_else(|| path.with_extension(ext));
    if let Err(e) = std::fs::write(&out, rendered) {
        return usage_error(&format!("{}: {e}", out.display()));
    }
    println!("wrote {}", out.display());
    ExitCode::SUCCESS
}
