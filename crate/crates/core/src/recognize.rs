//! Membership in the class of graphs whose odd cycles pairwise share at most
//! one edge, decided block by block, plus the direct odd-cycle-pair oracle.
//!
//! A block belongs to the class exactly when it is bipartite, is `K4`, or is a
//! Θ-graph with one unit path and all other paths of even length. The
//! subclass with no odd cycle longer than a triangle allows bipartite blocks,
//! `K4`, and crowns `K2 ∨ K̄r` (Θ with a unit path and all others of length 2).

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::blocks::{blocks, is_block};
use crate::cycles::{for_each_cycle, odd_cycles, shared_edges};
use crate::error::{CycleError, RecognizeError};
use crate::graph::{is_bipartite, Graph};

/// Default bound on odd cycles enumerated by the oracle.
pub const DEFAULT_CYCLE_BUDGET: usize = 1_000_000;

/// Θ-graph structure of a 2-connected block: two hubs joined by internally
/// disjoint paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSignature {
    pub hubs: (usize, usize),
    /// Edge ids of each path, listed from `hubs.0` to `hubs.1`. Paths are
    /// sorted by length, then by first edge id.
    pub paths: Vec<Vec<usize>>,
    /// Vertex sequence of each path, hubs included.
    pub path_vertices: Vec<Vec<usize>>,
    pub path_lengths: Vec<usize>,
    pub includes_unit: bool,
    /// Set when the block is a bare cycle split at its smallest edge.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl ThetaSignature {
    /// Unit path present and every other path even.
    pub fn is_odd_unit(&self) -> bool {
        self.includes_unit && self.path_lengths.iter().filter(|&&p| p != 1).all(|&p| p % 2 == 0)
    }

    /// `K2 ∨ K̄r`: a unit path and every other path of length 2.
    pub fn is_crown(&self) -> bool {
        self.includes_unit
            && self.path_lengths.len() >= 2
            && self.path_lengths.iter().filter(|&&p| p != 1).all(|&p| p == 2)
    }

    /// Lengths of the non-unit paths.
    pub fn other_lengths(&self) -> Vec<usize> {
        self.path_lengths.iter().copied().filter(|&p| p != 1).collect()
    }

    pub fn unit_edge(&self) -> Option<usize> {
        self.paths.iter().find(|p| p.len() == 1).map(|p| p[0])
    }

    pub fn is_cycle(&self) -> bool {
        self.paths.len() == 2
    }
}

pub fn recognize_theta(block: &Graph) -> Option<ThetaSignature> {
    let n = block.vertex_count();
    if block.edge_count() < 3 {
        return None;
    }
    let big: Vec<usize> = (0..n).filter(|&v| block.degree(v) >= 3).collect();
    if (0..n).any(|v| block.degree(v) < 2) {
        return None;
    }
    let (x1, x2, convention) = match big.len() {
        0 => {
            // A bare cycle: split it at the endpoints of its smallest edge.
            let (a, b) = block.edge(0);
            (a, b, Some("cycle-as-theta".to_string()))
        }
        2 => (big[0], big[1], None),
        _ => return None,
    };
    let mut paths = Vec::new();
    let mut path_vertices = Vec::new();
    let mut used = vec![false; block.edge_count()];
    for &(first, e0) in block.neighbors(x1) {
        if used[e0] {
            continue;
        }
        let mut edges = vec![e0];
        let mut verts = vec![x1, first];
        used[e0] = true;
        let mut prev_edge = e0;
        let mut cur = first;
        while cur != x2 {
            if cur == x1 || block.degree(cur) != 2 {
                return None;
            }
            let &(next, e) =
                block.neighbors(cur).iter().find(|&&(_, e)| e != prev_edge).expect("degree-2 vertex has a second edge");
            if used[e] {
                return None;
            }
            used[e] = true;
            edges.push(e);
            verts.push(next);
            prev_edge = e;
            cur = next;
        }
        paths.push(edges);
        path_vertices.push(verts);
    }
    if used.iter().any(|&u| !u) || paths.len() < 2 {
        return None;
    }
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by_key(|&i| (paths[i].len(), paths[i][0]));
    let paths: Vec<Vec<usize>> = order.iter().map(|&i| paths[i].clone()).collect();
    let path_vertices: Vec<Vec<usize>> = order.iter().map(|&i| path_vertices[i].clone()).collect();
    let path_lengths: Vec<usize> = paths.iter().map(Vec::len).collect();
    let units = path_lengths.iter().filter(|&&p| p == 1).count();
    debug_assert!(units <= 1);
    Some(ThetaSignature { hubs: (x1, x2), paths, path_vertices, includes_unit: units == 1, path_lengths, convention })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Bipartite,
    K4,
    ThetaOneEven,
    Other,
}

/// Per-block classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockVerdict {
    pub verdict: Verdict,
    /// `K2 ∨ K̄r` (only set together with `ThetaOneEven`).
    pub crown: bool,
    pub theta: Option<ThetaSignature>,
}

impl BlockVerdict {
    pub fn in_gstar(&self) -> bool {
        self.verdict != Verdict::Other
    }

    pub fn in_g1(&self) -> bool {
        matches!(self.verdict, Verdict::Bipartite | Verdict::K4) || self.crown
    }
}

fn is_k4(block: &Graph) -> bool {
    block.vertex_count() == 4 && block.edge_count() == 6 && (0..4).all(|v| block.degree(v) == 3)
}

pub fn classify_block(block: &Graph) -> Result<BlockVerdict, RecognizeError> {
    if !is_block(block) {
        return Err(RecognizeError::ContractViolation(
            "classify_block expects a 2-connected graph or a single edge".into(),
        ));
    }
    if is_bipartite(block) {
        return Ok(BlockVerdict { verdict: Verdict::Bipartite, crown: false, theta: None });
    }
    if is_k4(block) {
        return Ok(BlockVerdict { verdict: Verdict::K4, crown: false, theta: None });
    }
    match recognize_theta(block) {
        Some(sig) if sig.is_odd_unit() => {
            Ok(BlockVerdict { verdict: Verdict::ThetaOneEven, crown: sig.is_crown(), theta: Some(sig) })
        }
        sig => Ok(BlockVerdict { verdict: Verdict::Other, crown: false, theta: sig }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub cycle1: Vec<usize>,
    pub cycle2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub edges: Vec<usize>,
    pub verdict: Verdict,
    pub crown: bool,
    /// Θ signature in the parent graph's vertex and edge ids.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaSignature>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockClassification {
    pub in_gstar: bool,
    pub in_g1: bool,
    pub blocks: Vec<BlockReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

fn lift_theta(sig: ThetaSignature, vmap: &[usize], emap: &[usize]) -> ThetaSignature {
    ThetaSignature {
        hubs: (vmap[sig.hubs.0], vmap[sig.hubs.1]),
        paths: sig.paths.iter().map(|p| p.iter().map(|&e| emap[e]).collect()).collect(),
        path_vertices: sig.path_vertices.iter().map(|p| p.iter().map(|&v| vmap[v]).collect()).collect(),
        ..sig
    }
}

pub fn in_gstar(g: &Graph) -> BlockClassification {
    let decomposition = blocks(g);
    let mut reports = Vec::with_capacity(decomposition.blocks.len());
    let mut witness = None;
    for block_edges in &decomposition.blocks {
        let sub = g.edge_subgraph(block_edges);
        let verdict = classify_block(&sub.graph).expect("blocks are blocks");
        if verdict.verdict == Verdict::Other && witness.is_none() {
            witness = block_witness(&sub.graph).map(|w| Witness {
                cycle1: lift_sorted(&w.cycle1, &sub.edge_map),
                cycle2: lift_sorted(&w.cycle2, &sub.edge_map),
            });
        }
        reports.push(BlockReport {
            edges: block_edges.clone(),
            verdict: verdict.verdict,
            crown: verdict.crown,
            theta: verdict.theta.map(|t| lift_theta(t, &sub.vertex_map, &sub.edge_map)),
        });
    }
    let in_gstar = reports.iter().all(|r| r.verdict != Verdict::Other);
    let in_g1 = reports.iter().all(|r| matches!(r.verdict, Verdict::Bipartite | Verdict::K4) || r.crown);
    BlockClassification { in_gstar, in_g1, blocks: reports, witness }
}

fn lift_sorted(edges: &[usize], map: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = edges.iter().map(|&e| map[e]).collect();
    out.sort_unstable();
    out
}

/// Witness inside a block known to be outside the class: the ordered oracle
/// when enumeration fits the budget, otherwise the first violating pair met
/// during streaming enumeration.
fn block_witness(block: &Graph) -> Option<Witness> {
    match gstar_oracle(block, DEFAULT_CYCLE_BUDGET) {
        Ok(w) => w,
        Err(_) => streaming_violation(block),
    }
}

/// The lexicographically first pair of distinct odd cycles sharing at least
/// two edges, with cycles ordered by length and then by sorted edge set.
pub fn gstar_oracle(g: &Graph, max_count: usize) -> Result<Option<Witness>, CycleError> {
    let cycles = odd_cycles(g, max_count)?;
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            if shared_edges(a, b) >= 2 {
                return Ok(Some(Witness { cycle1: a.clone(), cycle2: b.clone() }));
            }
        }
    }
    Ok(None)
}

/// Stops at the first odd cycle that shares two edges with an earlier one.
pub fn streaming_violation(g: &Graph) -> Option<Witness> {
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut found = None;
    let _ = for_each_cycle(g, |edges| {
        if edges.len() % 2 == 0 {
            return ControlFlow::Continue(());
        }
        let mut set = edges.to_vec();
        set.sort_unstable();
        if let Some(prev) = seen.iter().find(|p| shared_edges(p, &set) >= 2) {
            found = Some(Witness { cycle1: prev.clone(), cycle2: set });
            return ControlFlow::Break(());
        }
        seen.push(set);
        ControlFlow::Continue(())
    });
    found
}
