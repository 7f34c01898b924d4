//! Command-line front end. Every subcommand produces one JSON report; the
//! exit status classifies the outcome.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::color::{
    bbs_color, choose_edges, chromatic_index, is_proper_coloring, is_proper_tuple_coloring, tuple_color, ListAssignment,
};
use crate::digraph::{Certificate, Demand, LineDigraph};
use crate::error::{ColorError, GraphError, OrientError, PaintError, VerifyError};
use crate::gen::random_lists;
use crate::graph::{line_graph, Graph};
use crate::io::{parse_graph, Format};
use crate::orient::{orient_gstar_at, orient_strong};
use crate::paint::{
    exhaustive_paintability, kernel_strategy_counterexample, play_game, KernelPainter, RandomLister, Winner,
};
use crate::recognize::{gstar_oracle, in_gstar, DEFAULT_CYCLE_BUDGET};
use crate::verify::{
    check_kernel_perfect, diamond_sweep, every_clique_has_sink, maffray_experiment, search_orientation,
    verify_nok4minus, verify_windmill_sharpness, SearchMode, KERNEL_ORACLE_CAP,
};

pub const DEFAULT_SEED: u64 = 0x0DDC_7C1E;

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exit {
    Success = 0,
    PropertyFalse = 1,
    Usage = 2,
    Budget = 3,
    Internal = 4,
}

#[derive(Parser, Debug)]
#[command(name = "oddcycle", version, about = "Kernel-perfect line-graph orientations and list edge coloring")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Graph file; "-" reads standard input.
    pub input: PathBuf,
    /// Input format; inferred from the extension (.g6 is graph6) when omitted.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Graph6,
    Edgelist,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Graph6 => Format::Graph6,
            FormatArg::Edgelist => Format::Edgelist,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Block decomposition and class membership.
    Classify(InputArgs),
    /// Kernel-perfect orientation of the line graph.
    Orient {
        #[command(flatten)]
        input: InputArgs,
        /// Uniform demand t; defaults to max(4, Δ).
        #[arg(long)]
        t: Option<usize>,
        /// With --v, build an f_{k,v}-orientation instead.
        #[arg(long)]
        k: Option<usize>,
        /// Distinguished vertex.
        #[arg(long)]
        v: Option<usize>,
    },
    /// List edge coloring.
    Color {
        #[command(flatten)]
        input: InputArgs,
        /// JSON lists {"edge": [colors]}; random lists are drawn when omitted.
        #[arg(long)]
        lists: Option<PathBuf>,
        /// Color from a t-orientation with kernel rounds instead of the
        /// chromatic-index solver.
        #[arg(long)]
        t: Option<usize>,
        /// Colors per edge (tuple coloring, needs --t).
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Color universe for random lists.
        #[arg(long, default_value_t = 10)]
        universe: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Online list-coloring game.
    Paint {
        #[command(flatten)]
        input: InputArgs,
        /// Uniform budget t; defaults to max(4, Δ).
        #[arg(long)]
        t: Option<usize>,
        /// With --v, use the budget f_{k,v}.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        v: Option<usize>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Random games played by the kernel painter.
        #[arg(long, default_value_t = 100)]
        games: usize,
        /// Also solve the game exactly.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Oracles and reproductions.
    Verify {
        /// Orientation report to check.
        #[arg(long, conflicts_with = "lemma")]
        check: Option<PathBuf>,
        #[arg(long, value_enum)]
        lemma: Option<Lemma>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        universe: u32,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Classify, orient and color every graph in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Also compare membership with the pairwise odd-cycle oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Lemma {
    Nok4minus,
    Windmill,
    Maffray,
    Diamond,
}

/// A finished command: report plus exit status.
#[derive(Debug)]
pub struct Outcome {
    pub exit: Exit,
    pub report: Value,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { exit: Exit::Success, report }
    }

    fn with(exit: Exit, report: Value) -> Self {
        Outcome { exit, report }
    }

    fn error(exit: Exit, kind: &str, message: impl ToString, detail: Value) -> Self {
        Outcome { exit, report: json!({"error": {"kind": kind, "message": message.to_string(), "detail": detail}}) }
    }
}

fn graph_error(e: GraphError) -> Outcome {
    Outcome::error(Exit::Usage, "input", e, Value::Null)
}

fn orient_error(e: OrientError) -> Outcome {
    match &e {
        OrientError::NotInClass { cycle1, cycle2 } => {
            Outcome::error(Exit::PropertyFalse, "not_in_class", &e, json!({"cycle1": cycle1, "cycle2": cycle2}))
        }
        OrientError::NotInClassNoWitness { block } => {
            Outcome::error(Exit::PropertyFalse, "not_in_class", &e, json!({"block": block}))
        }
        OrientError::ParameterTooSmall { .. } | OrientError::DiamondTipImpossible => {
            Outcome::error(Exit::Usage, "precondition", &e, Value::Null)
        }
        OrientError::BoundViolation { .. }
        | OrientError::ContractViolation(_)
        | OrientError::MissingPair(..)
        | OrientError::NonAdjacentArc(..) => Outcome::error(Exit::Internal, "internal", &e, Value::Null),
    }
}

fn color_error(e: ColorError) -> Outcome {
    match e {
        ColorError::Orient(o) => orient_error(o),
        ColorError::Demand { edge, have, need } => Outcome::error(
            Exit::Usage,
            "list_too_short",
            ColorError::Demand { edge, have, need },
            json!({"edge": edge, "have": have, "need": need}),
        ),
        other => Outcome::error(Exit::Internal, "internal", other, Value::Null),
    }
}

fn paint_error(e: PaintError) -> Outcome {
    match e {
        PaintError::Size(_) => Outcome::error(Exit::Budget, "size_cap", e, Value::Null),
        PaintError::StrategyFailure(_) => Outcome::error(Exit::PropertyFalse, "no_kernel_strategy", e, Value::Null),
        PaintError::Protocol(_) => Outcome::error(Exit::Internal, "protocol", e, Value::Null),
    }
}

fn verify_error(e: VerifyError) -> Outcome {
    match e {
        VerifyError::SizeCap(_) | VerifyError::Budget { .. } => Outcome::error(Exit::Budget, "budget", e, Value::Null),
        VerifyError::Orient(o) => orient_error(o),
        VerifyError::Reduction(_) => Outcome::error(Exit::Internal, "internal", e, Value::Null),
    }
}

fn format_for(path: &Path, explicit: Option<FormatArg>) -> Format {
    match explicit {
        Some(f) => f.into(),
        None if path.extension().is_some_and(|x| x == "g6") => Format::Graph6,
        None => Format::Edgelist,
    }
}

fn read_text(path: &Path) -> Result<String, Outcome> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin())
            .map_err(|e| Outcome::error(Exit::Usage, "io", e, Value::Null));
    }
    fs::read_to_string(path)
        .map_err(|e| Outcome::error(Exit::Usage, "io", format!("{}: {e}", path.display()), Value::Null))
}

fn load(input: &InputArgs) -> Result<Graph, Outcome> {
    let text = read_text(&input.input)?;
    parse_graph(&text, format_for(&input.input, input.format)).map_err(graph_error)
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), Outcome> {
    if v >= g.vertex_count() {
        return Err(Outcome::error(
            Exit::Usage,
            "usage",
            format!("vertex {v} out of range for {} vertices", g.vertex_count()),
            Value::Null,
        ));
    }
    Ok(())
}

fn usage(message: impl ToString) -> Outcome {
    Outcome::error(Exit::Usage, "usage", message, Value::Null)
}

/// Orientation as written by `orient` and read by `verify --check`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrientationReport {
    pub graph: Graph,
    pub demand: Demand,
    pub arcs: Vec<(usize, usize)>,
    pub certificate: Option<Certificate>,
    pub outdegrees: Vec<usize>,
    pub max_outdegree: usize,
    pub bidirected_pairs: Vec<(usize, usize)>,
}

/// Builds the orientation requested by `--t` or `--k/--v`.
fn build_orientation(
    g: &Graph,
    t: Option<usize>,
    k: Option<usize>,
    v: Option<usize>,
) -> Result<(crate::digraph::Oriented, Demand), Outcome> {
    match (k, v) {
        (Some(k), Some(v)) => {
            check_vertex(g, v)?;
            crate::orient::require_gstar(g).map_err(orient_error)?;
            let o = orient_strong(g, v, k).map_err(orient_error)?;
            Ok((o, Demand::f_kv(g, k, v)))
        }
        (Some(_), None) => Err(usage("--k requires --v")),
        (None, v) => {
            let t = t.unwrap_or_else(|| g.max_degree().max(4));
            if t == 0 {
                return Err(usage("t must be at least 1"));
            }
            let v = match v {
                Some(v) => {
                    check_vertex(g, v)?;
                    v
                }
                None => g.non_isolated().next().unwrap_or(0),
            };
            let o = orient_gstar_at(g, t, v).map_err(orient_error)?;
            Ok((o, Demand::uniform(g, t)))
        }
    }
}

fn classify(g: &Graph) -> Outcome {
    let class = in_gstar(g);
    let exit = if class.in_gstar { Exit::Success } else { Exit::PropertyFalse };
    Outcome::with(
        exit,
        json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "max_degree": g.max_degree(),
            "in_gstar": class.in_gstar,
            "in_g1": class.in_g1,
            "blocks": class.blocks,
            "witness": class.witness,
        }),
    )
}

fn orient(g: &Graph, t: Option<usize>, k: Option<usize>, v: Option<usize>) -> Outcome {
    let (o, demand) = match build_orientation(g, t, k, v) {
        Ok(x) => x,
        Err(out) => return out,
    };
    let report = OrientationReport {
        graph: g.clone(),
        demand,
        arcs: o.digraph.arcs(),
        certificate: Some(o.certificate),
        outdegrees: o.digraph.outdegrees(),
        max_outdegree: o.digraph.max_outdegree(),
        bidirected_pairs: o.digraph.bidirected_pairs(),
    };
    Outcome::ok(serde_json::to_value(report).expect("serializable"))
}

#[allow(clippy::too_many_arguments)]
fn color(g: &Graph, lists: Option<&Path>, t: Option<usize>, m: usize, universe: u32, seed: u64) -> Outcome {
    if m == 0 {
        return usage("m must be at least 1");
    }
    if m > 1 && t.is_none() {
        return usage("tuple coloring (--m > 1) needs --t");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let oriented = match t {
        Some(t) => match build_orientation(g, Some(t), None, None) {
            Ok((o, _)) => Some(o),
            Err(out) => return out,
        },
        None => None,
    };
    let lists = match lists {
        Some(path) => {
            let text = match read_text(path) {
                Ok(s) => s,
                Err(out) => return out,
            };
            match serde_json::from_str::<ListAssignment>(&text) {
                Ok(l) if l.len() == g.edge_count() => l,
                Ok(l) => return usage(format!("{} lists for {} edges", l.len(), g.edge_count())),
                Err(e) => return usage(format!("lists: {e}")),
            }
        }
        None => {
            let sizes: Vec<usize> = match &oriented {
                Some(o) => (0..g.edge_count()).map(|e| m * (o.digraph.outdegree(e) + 1)).collect(),
                None => {
                    if let Err(e) = crate::orient::require_gstar(g) {
                        return orient_error(e);
                    }
                    component_chromatic_indices(g)
                }
            };
            if sizes.iter().any(|&s| s > universe as usize) {
                return usage(format!("universe {universe} is smaller than a required list size"));
            }
            random_lists(&mut rng, &sizes, universe)
        }
    };
    match oriented {
        Some(o) if m > 1 => match tuple_color(g, &o.digraph, &lists, m, Some(&o.certificate)) {
            Ok(c) => {
                let proper = is_proper_tuple_coloring(g, &c.sets, &lists, m);
                Outcome::ok(json!({"mode": "tuple", "m": m, "lists": lists, "coloring": c, "proper": proper}))
            }
            Err(e) => color_error(e),
        },
        Some(o) => match bbs_color(g, &o.digraph, &lists, Some(&o.certificate)) {
            Ok(c) => {
                let proper = is_proper_coloring(g, &c.colors, Some(&lists));
                Outcome::ok(json!({"mode": "kernel", "lists": lists, "coloring": c, "proper": proper}))
            }
            Err(e) => color_error(e),
        },
        None => match choose_edges(g, &lists) {
            Ok(c) => {
                let proper = is_proper_coloring(g, &c.colors, Some(&lists));
                Outcome::ok(json!({"mode": "choose", "lists": lists, "coloring": c, "proper": proper}))
            }
            Err(e) => color_error(e),
        },
    }
}

/// Per-edge chromatic index of the edge's component.
fn component_chromatic_indices(g: &Graph) -> Vec<usize> {
    let mut sizes = vec![0; g.edge_count()];
    for comp in g.components() {
        let mut es: Vec<usize> = comp.iter().flat_map(|&v| g.incident_edges(v)).collect();
        es.sort_unstable();
        es.dedup();
        if es.is_empty() {
            continue;
        }
        let chi = chromatic_index(&g.edge_subgraph(&es).graph);
        es.iter().for_each(|&e| sizes[e] = chi);
    }
    sizes
}

#[allow(clippy::too_many_arguments)]
fn paint(
    g: &Graph,
    t: Option<usize>,
    k: Option<usize>,
    v: Option<usize>,
    m: usize,
    games: usize,
    exact: bool,
    seed: u64,
) -> Outcome {
    if m == 0 {
        return usage("m must be at least 1");
    }
    let budget: Vec<usize> = match (k, v) {
        (Some(k), Some(v)) => {
            if let Err(out) = check_vertex(g, v) {
                return out;
            }
            Demand::f_kv(g, k, v).values.iter().map(|&f| f * m).collect()
        }
        (Some(_), None) => return usage("--k requires --v"),
        _ => vec![m * t.unwrap_or_else(|| g.max_degree().max(4)); g.edge_count()],
    };
    let mut report = serde_json::Map::new();
    report.insert("budget".into(), json!(budget));
    report.insert("m".into(), json!(m));
    // a kernel strategy needs an orientation with f(e) >= m (outdeg(e) + 1)
    let demand = Demand::custom(budget.iter().map(|&b| b / m).collect());
    let orientation = match (k, v) {
        (Some(_), Some(_)) | (None, Some(_)) => build_orientation(g, t, k, v).ok().map(|(o, _)| o),
        _ => build_orientation(g, t, None, None).ok().map(|(o, _)| o),
    }
    .filter(|o| o.digraph.check_demand(&demand).is_ok());
    let orientation = orientation.or_else(|| {
        (line_graph(g).size <= KERNEL_ORACLE_CAP)
            .then(|| search_orientation(g, &demand, SearchMode::Pruned, 50_000_000).ok())
            .flatten()
            .and_then(|s| s.orientation)
            .map(|d| crate::digraph::Oriented {
                certificate: Certificate::leaf("search", (0..g.edge_count()).collect()),
                digraph: d,
            })
    });
    match &orientation {
        Some(o) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut wins = 0;
            let mut last = None;
            for _ in 0..games {
                let mut lister = RandomLister { rng: ChaCha8Rng::seed_from_u64(rand::Rng::gen(&mut rng)) };
                let mut painter = KernelPainter { digraph: &o.digraph, certificate: Some(&o.certificate) };
                match play_game(g, &budget, m, &mut lister, &mut painter) {
                    Ok(r) => {
                        wins += usize::from(r.winner == Winner::Painter);
                        last = Some(r);
                    }
                    Err(e) => return paint_error(e),
                }
            }
            report.insert("kernel_strategy".into(), json!(true));
            report.insert("arcs".into(), json!(o.digraph.arcs()));
            report.insert("games".into(), json!(games));
            report.insert("painter_wins".into(), json!(wins));
            report.insert("last_transcript".into(), json!(last.map(|r| r.transcript)));
            if exact {
                match kernel_strategy_counterexample(g, &o.digraph, &budget, m, Some(&o.certificate)) {
                    Ok(c) => {
                        report.insert("kernel_strategy_unbeatable".into(), json!(c.is_none()));
                        report.insert("kernel_counterexample".into(), json!(c));
                    }
                    Err(e) => return paint_error(e),
                }
            }
        }
        None => {
            report.insert("kernel_strategy".into(), json!(false));
            report.insert("note".into(), json!("no kernel-perfect orientation meets the budget"));
        }
    }
    let mut exit = Exit::Success;
    if exact || orientation.is_none() {
        match exhaustive_paintability(g, &budget, m) {
            Ok(p) => {
                if !p.paintable {
                    exit = Exit::PropertyFalse;
                }
                report.insert("paintable".into(), json!(p.paintable));
                report.insert("states_explored".into(), json!(p.states_explored));
                report.insert("strategy_size".into(), json!(p.strategy.len()));
            }
            Err(e) if orientation.is_some() => {
                report.insert("exact".into(), json!(e.to_string()));
            }
            Err(e) => return paint_error(e),
        }
    }
    Outcome::with(exit, Value::Object(report))
}

fn check_orientation(path: &Path) -> Outcome {
    let text = match read_text(path) {
        Ok(s) => s,
        Err(out) => return out,
    };
    let report: OrientationReport = match serde_json::from_str(&text) {
        Ok(r) => r,
        Err(e) => return usage(format!("orientation report: {e}")),
    };
    let g = &report.graph;
    let d = match LineDigraph::from_graph(g, report.arcs.iter().copied()) {
        Ok(d) => d,
        Err(e) => return Outcome::error(Exit::PropertyFalse, "malformed_orientation", e, Value::Null),
    };
    let kp = match check_kernel_perfect(&d) {
        Ok(r) => r,
        Err(e) => return verify_error(e),
    };
    let demand_ok = report.demand.values.len() == g.edge_count() && d.check_demand(&report.demand).is_ok();
    let certificate_ok = report.certificate.as_ref().map(|c| c.covers_exactly(g.edge_count()) && c.respects_order(&d));
    let all_cliques = every_clique_has_sink(&d);
    let exit = if kp.kernel_perfect && demand_ok && certificate_ok != Some(false) {
        Exit::Success
    } else {
        Exit::PropertyFalse
    };
    Outcome::with(
        exit,
        json!({
            "kernel_perfect": kp.kernel_perfect,
            "failing_subset": kp.failing_subset,
            "subsets_checked": kp.subsets_checked,
            "demand_satisfied": demand_ok,
            "certificate_consistent": certificate_ok,
            "every_clique_has_sink": all_cliques,
        }),
    )
}

fn verify(lemma: Lemma, trials: usize, universe: u32, budget: u64, seed: u64) -> Outcome {
    match lemma {
        Lemma::Nok4minus => match verify_nok4minus() {
            Ok(log) => {
                let search = log.steps.iter().find(|s| s.name == "nok4minus/search").expect("search step");
                let mut out = json!({
                    "orientations_scanned": search.detail["orientations_scanned"],
                    "found": search.detail["found"],
                });
                out["log"] = json!(log);
                Outcome::with(if log.certified { Exit::Success } else { Exit::PropertyFalse }, out)
            }
            Err(e) => verify_error(e),
        },
        Lemma::Windmill => match verify_windmill_sharpness() {
            Ok(log) => Outcome::with(if log.certified { Exit::Success } else { Exit::PropertyFalse }, json!(log)),
            Err(e) => verify_error(e),
        },
        Lemma::Maffray => match maffray_experiment(seed, trials, 12) {
            Ok(r) => Outcome::with(if r.disagreements == 0 { Exit::Success } else { Exit::PropertyFalse }, json!(r)),
            Err(e) => verify_error(e),
        },
        Lemma::Diamond => {
            if !(3..=12).contains(&universe) {
                return usage("--universe must be between 3 and 12 for the diamond sweep");
            }
            let pairs = (universe as u64 * (universe as u64 - 1)) / 2;
            let triples = pairs * (universe as u64 - 2) / 3;
            if pairs * pairs * triples.pow(3) > budget {
                return Outcome::error(
                    Exit::Budget,
                    "budget",
                    format!("sweep exceeds the budget of {budget}"),
                    Value::Null,
                );
            }
            let r = diamond_sweep(universe);
            Outcome::with(if r.failures == 0 { Exit::Success } else { Exit::PropertyFalse }, json!(r))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchRow {
    pub name: String,
    pub status: String,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub max_degree: Option<usize>,
    pub in_gstar: Option<bool>,
    pub in_g1: Option<bool>,
    pub oracle_agrees: Option<bool>,
    pub oriented: Option<bool>,
    pub kernel_perfect: Option<bool>,
    pub colored: Option<bool>,
    pub error: Option<String>,
}

impl BatchRow {
    fn failed(name: String, error: String) -> Self {
        BatchRow {
            name,
            status: "error".into(),
            vertices: None,
            edges: None,
            max_degree: None,
            in_gstar: None,
            in_g1: None,
            oracle_agrees: None,
            oriented: None,
            kernel_perfect: None,
            colored: None,
            error: Some(error),
        }
    }
}

fn batch_row(name: String, g: Graph, oracle: bool, seed: u64) -> BatchRow {
    let class = in_gstar(&g);
    let oracle_agrees = oracle.then(|| match gstar_oracle(&g, DEFAULT_CYCLE_BUDGET) {
        Ok(w) => w.is_none() == class.in_gstar,
        Err(_) => false,
    });
    let mut row = BatchRow {
        name,
        status: "ok".into(),
        vertices: Some(g.vertex_count()),
        edges: Some(g.edge_count()),
        max_degree: Some(g.max_degree()),
        in_gstar: Some(class.in_gstar),
        in_g1: Some(class.in_g1),
        oracle_agrees,
        oriented: None,
        kernel_perfect: None,
        colored: None,
        error: None,
    };
    if !class.in_gstar {
        return row;
    }
    let t = g.max_degree().max(4);
    let v = g.non_isolated().next().unwrap_or(0);
    match orient_gstar_at(&g, t, v) {
        Ok(o) => {
            row.oriented = Some(true);
            if o.digraph.size() <= 18 {
                row.kernel_perfect = check_kernel_perfect(&o.digraph).ok().map(|r| r.kernel_perfect);
            }
        }
        Err(e) => {
            row.oriented = Some(false);
            row.error = Some(e.to_string());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes = component_chromatic_indices(&g);
    let universe = sizes.iter().copied().max().unwrap_or(1).max(1) as u32 + 3;
    let lists = random_lists(&mut rng, &sizes, universe);
    match choose_edges(&g, &lists) {
        Ok(c) => row.colored = Some(is_proper_coloring(&g, &c.colors, Some(&lists))),
        Err(e) => {
            row.colored = Some(false);
            row.error = Some(e.to_string());
        }
    }
    if row.oriented == Some(false) || row.colored == Some(false) || row.kernel_perfect == Some(false) {
        row.status = "failed".into();
    }
    row
}

/// Runs the batch pipeline; returns the rows in file-name order.
pub fn batch_rows(dir: &Path, format: Option<FormatArg>, oracle: bool, seed: u64) -> std::io::Result<Vec<BatchRow>> {
    let mut files: Vec<PathBuf> =
        fs::read_dir(dir)?.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.is_file()).collect();
    files.sort();
    let jobs: Vec<(String, Result<Graph, String>)> = files
        .iter()
        .flat_map(|path| {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let fmt = format_for(path, format);
            match fs::read_to_string(path) {
                Err(e) => vec![(name, Err(e.to_string()))],
                Ok(text) if fmt == Format::Graph6 => {
                    let lines: Vec<&str> =
                        text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
                    if lines.len() == 1 {
                        vec![(name, parse_graph(lines[0], fmt).map_err(|e| e.to_string()))]
                    } else {
                        lines
                            .iter()
                            .enumerate()
                            .map(|(i, l)| (format!("{name}#{}", i + 1), parse_graph(l, fmt).map_err(|e| e.to_string())))
                            .collect()
                    }
                }
                Ok(text) => vec![(name, parse_graph(&text, fmt).map_err(|e| e.to_string()))],
            }
        })
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(name, g)| match g {
            Ok(g) => batch_row(name, g, oracle, seed),
            Err(e) => BatchRow::failed(name, e),
        })
        .collect())
}

/// CSV rendering of batch rows.
pub fn rows_to_csv(rows: &[BatchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("rows serialize");
    }
    if rows.is_empty() {
        w.write_record([
            "name",
            "status",
            "vertices",
            "edges",
            "max_degree",
            "in_gstar",
            "in_g1",
            "oracle_agrees",
            "oriented",
            "kernel_perfect",
            "colored",
            "error",
        ])
        .expect("header");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn batch(dir: &Path, format: Option<FormatArg>, oracle: bool, seed: u64, out: Option<&Path>) -> Outcome {
    let rows = match batch_rows(dir, format, oracle, seed) {
        Ok(r) => r,
        Err(e) => return Outcome::error(Exit::Usage, "io", format!("{}: {e}", dir.display()), Value::Null),
    };
    let count = |f: &dyn Fn(&BatchRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let summary = json!({
        "graphs": rows.len(),
        "errors": count(&|r| r.status == "error"),
        "failed": count(&|r| r.status == "failed"),
        "in_gstar": count(&|r| r.in_gstar == Some(true)),
        "in_g1": count(&|r| r.in_g1 == Some(true)),
        "oracle_disagreements": count(&|r| r.oracle_agrees == Some(false)),
    });
    if let Some(path) = out {
        let csv_path = path.with_extension("csv");
        if let Err(e) = fs::write(&csv_path, rows_to_csv(&rows)) {
            return Outcome::error(Exit::Usage, "io", format!("{}: {e}", csv_path.display()), Value::Null);
        }
    }
    let exit = if rows.iter().any(|r| r.status == "failed") { Exit::Internal } else { Exit::Success };
    Outcome::with(exit, json!({"summary": summary, "rows": rows}))
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let load_or = |input: &InputArgs| load(input);
    match &cli.command {
        Command::Classify(input) => match load_or(input) {
            Ok(g) => classify(&g),
            Err(o) => o,
        },
        Command::Orient { input, t, k, v } => match load_or(input) {
            Ok(g) => orient(&g, *t, *k, *v),
            Err(o) => o,
        },
        Command::Color { input, lists, t, m, universe, seed } => match load_or(input) {
            Ok(g) => color(&g, lists.as_deref(), *t, *m, *universe, *seed),
            Err(o) => o,
        },
        Command::Paint { input, t, k, v, m, games, exact, seed } => match load_or(input) {
            Ok(g) => paint(&g, *t, *k, *v, *m, *games, *exact, *seed),
            Err(o) => o,
        },
        Command::Verify { check, lemma, trials, universe, budget, seed } => match (check, lemma) {
            (Some(path), _) => check_orientation(path),
            (None, Some(l)) => verify(*l, *trials, *universe, *budget, *seed),
            (None, None) => usage("verify needs --check FILE or --lemma NAME"),
        },
        Command::Batch { dir, format, oracle, seed } => batch(dir, *format, *oracle, *seed, cli.out.as_deref()),
    }
}

/// Writes the report and returns the process exit code.
pub fn emit(cli: &Cli, outcome: &Outcome) -> i32 {
    let text = serde_json::to_string_pretty(&outcome.report).expect("json") + "\n";
    let target = match (&cli.command, &cli.out) {
        (Command::Batch { .. }, Some(p)) => Some(p.with_extension("json")),
        (_, Some(p)) => Some(p.clone()),
        _ => None,
    };
    match target {
        Some(path) => {
            if let Err(e) = fs::write(&path, &text) {
                eprintln!("oddcycle: cannot write {}: {e}", path.display());
                return Exit::Usage as i32;
            }
        }
        None => print!("{text}"),
    }
    if let Some(err) = outcome.report.get("error") {
        eprintln!("oddcycle: {}", err["message"].as_str().unwrap_or("error"));
    }
    outcome.exit as i32
}
