//! Command-line front end for the rigidity toolkit.
//!
//! Subcommands: `analyze` (rank, connectivity, redundancy, global-rigidity
//! verdict, degree-threshold probe for one graph), `construct` (family builders),
//! `probe-orderings` (dependence search over ordering-induced subgraphs),
//! and `verify-tightness` (end-to-end counterexample verification).
//!
//! Exit codes: 0 ok, 2 input error, 3 resource limit, 4 validation failure,
//! 5 property violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rigi_core::automorphism::SearchLimits;
use rigi_core::cliques::DEFAULT_CLIQUE_LIMIT;
use rigi_core::connectivity::vertex_connectivity_with_cut;
use rigi_core::construct::{construct, verify_tightness, FamilySpec};
use rigi_core::global::{global_rigidity_verdict, degree_threshold_probe, VerdictConfig};
use rigi_core::graph::Graph;
use rigi_core::ordered_subgraph::find_dependent_subgraph;
use rigi_core::rank::{rank_report, redundancy, RankOpts};
use rigi_core::{Error, Result};

#[derive(Parser)]
#[command(name = "rigi", version, about = "combinatorial rigidity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct CommonOpts {
    /// Dimension d of the ambient space
    #[arg(long = "dim", default_value_t = 2)]
    dim: usize,
    /// Master seed; every randomized sub-result derives from it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent random realizations per rank query
    #[arg(long, default_value_t = 3)]
    trials: u32,
    /// Certificate attempts before reporting inconclusive
    #[arg(long, default_value_t = 5)]
    retries: u32,
    /// Search-node budget for the automorphism backtracking
    #[arg(long = "automorphism-budget", default_value_t = 10_000_000)]
    automorphism_budget: u64,
    /// Abort clique enumeration beyond this many maximal cliques
    #[arg(long = "clique-limit", default_value_t = DEFAULT_CLIQUE_LIMIT)]
    clique_limit: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the primary artifact (report, or graph for `construct`) here
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonOpts {
    fn rank_opts(&self) -> RankOpts {
        RankOpts {
            trials: self.trials,
            seed: self.seed,
        }
    }

    fn limits(&self) -> SearchLimits {
        SearchLimits {
            node_budget: self.automorphism_budget,
            ..SearchLimits::default()
        }
    }

    fn verdict_config(&self) -> VerdictConfig {
        VerdictConfig {
            rank: self.rank_opts(),
            retries: self.retries,
            limits: self.limits(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full rigidity analysis of an edge-list file
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Build a graph family member (e.g. `tight-counterexample d=2`,
    /// `circulant n=13 s=1,2,3`)
    Construct {
        /// Family spec tokens
        spec: Vec<String>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Search for a rank-dependent ordering-induced subgraph
    ProbeOrderings {
        path: PathBuf,
        /// Subgraph samples before giving up
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Construct the degree-d(d+1)-1 counterexample and verify its tightness
    VerifyTightness {
        #[command(flatten)]
        opts: CommonOpts,
    },
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    Graph::parse_edge_list(&text)
}

fn cmd_analyze(path: &Path, opts: &CommonOpts) -> Result<Value> {
    let g = read_graph(path)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned());
    let rank = rank_report(&g, opts.dim, &opts.rank_opts(), label.clone())?;
    let (kappa, cut) = vertex_connectivity_with_cut(&g)?;
    let redundancy = redundancy(&g, opts.dim, &opts.rank_opts())?;
    let cfg = opts.verdict_config();
    let verdict = global_rigidity_verdict(&g, opts.dim, &cfg)?;
    let probe = degree_threshold_probe(&g, opts.dim, &cfg)?;
    Ok(json!({
        "command": "analyze",
        "input": path.to_string_lossy(),
        "config": config_value(opts),
        "rank_report": serde_json::to_value(&rank).expect("serializable"),
        "connectivity": { "kappa": kappa, "min_cut": cut },
        "redundancy": serde_json::to_value(&redundancy).expect("serializable"),
        "global_rigidity": serde_json::to_value(&verdict).expect("serializable"),
        "threshold_probe": serde_json::to_value(&probe).expect("serializable"),
    }))
}

fn cmd_construct(spec_tokens: &[String], opts: &CommonOpts) -> Result<Value> {
    if spec_tokens.is_empty() {
        return Err(Error::Input("construct needs a family spec".into()));
    }
    let spec = FamilySpec::parse(&spec_tokens.join(" "))?;
    let built = construct(&spec)?;
    let g = &built.graph;
    let vt = rigi_core::automorphism::is_vertex_transitive(g, &opts.limits())?;
    if let Some(out) = &opts.out {
        fs::write(out, g.to_edge_list())?;
        if let Some(prov) = &built.provenance {
            let sidecar = out.with_extension("provenance.json");
            fs::write(
                &sidecar,
                serde_json::to_string_pretty(prov).expect("serializable"),
            )?;
        }
    }
    Ok(json!({
        "command": "construct",
        "spec": built.spec.label(),
        "n": g.n(),
        "m": g.edge_count(),
        "regular_degree": g.regular_degree(),
        "vertex_transitive": vt,
        "provenance": built
            .provenance
            .as_ref()
            .map(|p| serde_json::to_value(p).expect("serializable")),
        "out": opts.out.as_ref().map(|p| p.to_string_lossy().into_owned()),
    }))
}

fn cmd_probe_orderings(path: &Path, budget: usize, opts: &CommonOpts) -> Result<Value> {
    let g = read_graph(path)?;
    let outcome = find_dependent_subgraph(
        &g,
        opts.dim,
        budget,
        opts.seed,
        &opts.rank_opts(),
        opts.clique_limit,
    )?;
    let witness = outcome.witness.as_ref().map(|w| {
        json!({
            "edges": w.graph().edges(),
            "edge_count": w.graph().edge_count(),
            "provenance": serde_json::to_value(w.to_provenance()).expect("serializable"),
        })
    });
    Ok(json!({
        "command": "probe-orderings",
        "input": path.to_string_lossy(),
        "config": config_value(opts),
        "budget": budget,
        "hypotheses": serde_json::to_value(outcome.hypotheses).expect("serializable"),
        "sampled": outcome.sampled,
        "dependent_found": witness.is_some(),
        "witness": witness,
    }))
}

fn cmd_verify_tightness(opts: &CommonOpts) -> Result<Value> {
    if opts.dim < 2 {
        return Err(Error::Input(format!(
            "tightness verification needs dim >= 2, got {}",
            opts.dim
        )));
    }
    let built = construct(&FamilySpec::TightCounterexample { d: opts.dim })?;
    let report = verify_tightness(&built, opts.dim, &opts.rank_opts(), &opts.limits())?;
    if let Some(out) = &opts.out {
        fs::write(out, built.graph.to_edge_list())?;
    }
    Ok(json!({
        "command": "verify-tightness",
        "config": config_value(opts),
        "report": serde_json::to_value(&report).expect("serializable"),
        "verdict": if report.not_globally_rigid {
            "certified_not_globally_rigid"
        } else {
            "undetermined"
        },
    }))
}

fn config_value(opts: &CommonOpts) -> Value {
    json!({
        "dim": opts.dim,
        "seed": opts.seed,
        "trials": opts.trials,
        "retries": opts.retries,
        "automorphism_budget": opts.automorphism_budget,
        "clique_limit": opts.clique_limit,
    })
}

/// Flattens a document into sorted `path = value` lines (serde_json maps
/// iterate in key order, so output is diff-stable).
fn render_text(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, child) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                render_text(child, &path, out);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|v| !v.is_object() && !v.is_array()) {
                let flat: Vec<String> = items.iter().map(render_scalar).collect();
                out.push_str(&format!("{prefix} = [{}]\n", flat.join(", ")));
            } else {
                for (i, child) in items.iter().enumerate() {
                    render_text(child, &format!("{prefix}[{i}]"), out);
                }
            }
        }
        scalar => out.push_str(&format!("{prefix} = {}\n", render_scalar(scalar))),
    }
}

fn render_scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Analyze { path, opts } => cmd_analyze(path, opts),
        Command::Construct { spec, opts } => cmd_construct(spec, opts),
        Command::ProbeOrderings { path, budget, opts } => {
            cmd_probe_orderings(path, *budget, opts)
        }
        Command::VerifyTightness { opts } => cmd_verify_tightness(opts),
    }
}

fn output_format(cli: &Cli) -> Format {
    match &cli.command {
        Command::Analyze { opts, .. }
        | Command::Construct { opts, .. }
        | Command::ProbeOrderings { opts, .. }
        | Command::VerifyTightness { opts } => opts.format,
    }
}

fn report_out_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        // construct writes the graph itself to --out
        Command::Construct { .. } => None,
        Command::Analyze { opts, .. }
        | Command::ProbeOrderings { opts, .. }
        | Command::VerifyTightness { opts } => opts.out.as_ref(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let rendered = match output_format(&cli) {
                Format::Structured => {
                    serde_json::to_string_pretty(&value).expect("serializable")
                }
                Format::Text => {
                    let mut out = String::new();
                    render_text(&value, "", &mut out);
                    out.trim_end().to_string()
                }
            };
            println!("{rendered}");
            if let Some(path) = report_out_path(&cli) {
                if let Err(err) = fs::write(path, rendered + "\n") {
                    eprintln!("error: failed to write {}: {err}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
