//! Orientations of line graphs (2-cycles allowed), outdegree demands, and the
//! composition certificates that record how an orientation was assembled.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::OrientError;
use crate::graph::{line_graph, Graph, LineGraph};

/// An orientation of `L(G)`: every adjacent pair of `G`-edges carries one arc
/// or both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineDigraph {
    base: LineGraph,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl LineDigraph {
    /// Validates that arcs join adjacent edges and cover every adjacent pair.
    pub fn new<I>(base: LineGraph, arcs: I) -> Result<Self, OrientError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let d = Self::new_partial(base, arcs)?;
        for &(e, f) in &d.base.pairs {
            if !d.has_arc(e, f) && !d.has_arc(f, e) {
                return Err(OrientError::MissingPair(e, f));
            }
        }
        Ok(d)
    }

    /// Like `new` but allows adjacent pairs without arcs (used during search).
    pub fn new_partial<I>(base: LineGraph, arcs: I) -> Result<Self, OrientError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let m = base.size;
        let mut out: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
        for (e, f) in arcs {
            if e >= m || f >= m || !base.adjacent(e, f) {
                return Err(OrientError::NonAdjacentArc(e, f));
            }
            out[e].insert(f);
        }
        let out: Vec<Vec<usize>> = out.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut inn = vec![Vec::new(); m];
        for (e, row) in out.iter().enumerate() {
            for &f in row {
                inn[f].push(e);
            }
        }
        Ok(LineDigraph { base, out, inn })
    }

    pub fn from_graph<I>(g: &Graph, arcs: I) -> Result<Self, OrientError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(line_graph(g), arcs)
    }

    pub fn base(&self) -> &LineGraph {
        &self.base
    }

    /// Number of vertices (edges of the underlying graph).
    pub fn size(&self) -> usize {
        self.base.size
    }

    pub fn out_neighbors(&self, e: usize) -> &[usize] {
        &self.out[e]
    }

    pub fn in_neighbors(&self, e: usize) -> &[usize] {
        &self.inn[e]
    }

    pub fn outdegree(&self, e: usize) -> usize {
        self.out[e].len()
    }

    pub fn outdegrees(&self) -> Vec<usize> {
        self.out.iter().map(Vec::len).collect()
    }

    pub fn max_outdegree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_arc(&self, e: usize, f: usize) -> bool {
        self.out[e].binary_search(&f).is_ok()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// All arcs, sorted lexicographically.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.out.iter().enumerate().flat_map(|(e, row)| row.iter().map(move |&f| (e, f))).collect()
    }

    pub fn bidirected_pairs(&self) -> Vec<(usize, usize)> {
        self.base.pairs.iter().copied().filter(|&(e, f)| self.has_arc(e, f) && self.has_arc(f, e)).collect()
    }

    /// First edge whose outdegree reaches its demand, if any.
    pub fn check_demand(&self, demand: &Demand) -> Result<(), OrientError> {
        for e in 0..self.size() {
            let cap = demand.values[e];
            if self.outdegree(e) + 1 > cap {
                return Err(OrientError::BoundViolation {
                    edge: e,
                    outdegree: self.outdegree(e),
                    cap: cap.saturating_sub(1),
                });
            }
        }
        Ok(())
    }

    /// Whether `e` has an arc to every other member of `clique`.
    pub fn is_source_of(&self, e: usize, clique: &[usize]) -> bool {
        clique.iter().all(|&f| f == e || self.has_arc(e, f))
    }

    /// Whether every other member of `clique` has an arc to `e`.
    pub fn is_sink_of(&self, e: usize, clique: &[usize]) -> bool {
        clique.iter().all(|&f| f == e || self.has_arc(f, e))
    }

    /// Whether `s` is a kernel of the subdigraph induced by `z`.
    pub fn is_kernel(&self, z: &[usize], s: &[usize]) -> bool {
        let zs: BTreeSet<usize> = z.iter().copied().collect();
        let ss: BTreeSet<usize> = s.iter().copied().collect();
        if !ss.is_subset(&zs) {
            return false;
        }
        for &a in &ss {
            if self.base.adj[a].iter().any(|b| ss.contains(b)) {
                return false;
            }
        }
        zs.iter().filter(|e| !ss.contains(e)).all(|&e| self.out[e].iter().any(|f| ss.contains(f)))
    }
}

/// Collects arcs before validation.
#[derive(Clone, Debug, Default)]
pub struct ArcSet {
    arcs: BTreeSet<(usize, usize)>,
}

impl ArcSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, e: usize, f: usize) {
        self.arcs.insert((e, f));
    }

    pub fn add_both(&mut self, e: usize, f: usize) {
        self.arcs.insert((e, f));
        self.arcs.insert((f, e));
    }

    pub fn extend_mapped(&mut self, d: &LineDigraph, edge_map: &[usize]) {
        for (e, f) in d.arcs() {
            self.add(edge_map[e], edge_map[f]);
        }
    }

    pub fn into_digraph(self, g: &Graph) -> Result<LineDigraph, OrientError> {
        LineDigraph::from_graph(g, self.arcs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DemandKind {
    Uniform { t: usize },
    Fkv { k: usize, v: usize },
    Custom,
}

/// Per-edge list sizes `f(e)`; an orientation meets it when
/// `outdeg(e) <= f(e) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Demand {
    pub kind: DemandKind,
    pub values: Vec<usize>,
}

impl Demand {
    pub fn uniform(g: &Graph, t: usize) -> Self {
        Demand { kind: DemandKind::Uniform { t }, values: vec![t; g.edge_count()] }
    }

    /// `d(v)` on edges at `v`, `k` elsewhere.
    pub fn f_kv(g: &Graph, k: usize, v: usize) -> Self {
        let values = (0..g.edge_count()).map(|e| if g.is_incident(e, v) { g.degree(v) } else { k }).collect();
        Demand { kind: DemandKind::Fkv { k, v }, values }
    }

    pub fn custom(values: Vec<usize>) -> Self {
        Demand { kind: DemandKind::Custom, values }
    }

    pub fn total(&self) -> usize {
        self.values.iter().sum()
    }
}

/// How an orientation was assembled. At `Partition` and `BlockJoin` nodes the
/// children are ordered so that every arc between two children runs from the
/// later child into the earlier one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Certificate {
    Leaf {
        construction: String,
        edges: Vec<usize>,
    },
    /// `children[0]` covers `x`, `children[1]` covers `y`; arcs across run
    /// from `y` to `x`.
    Partition {
        x: Vec<usize>,
        y: Vec<usize>,
        children: Vec<Certificate>,
    },
    BlockJoin {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        cut_vertex: Option<usize>,
        children: Vec<Certificate>,
    },
}

impl Certificate {
    pub fn leaf(construction: &str, edges: Vec<usize>) -> Self {
        Certificate::Leaf { construction: construction.to_string(), edges }
    }

    pub fn partition(x: Certificate, y: Certificate) -> Self {
        let mut xs = x.edges();
        let mut ys = y.edges();
        xs.sort_unstable();
        ys.sort_unstable();
        Certificate::Partition { x: xs, y: ys, children: vec![x, y] }
    }

    pub fn children(&self) -> &[Certificate] {
        match self {
            Certificate::Leaf { .. } => &[],
            Certificate::Partition { children, .. } | Certificate::BlockJoin { children, .. } => children,
        }
    }

    /// Edges covered by the leaves, sorted.
    pub fn edges(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_edges(&mut out);
        out.sort_unstable();
        out
    }

    fn collect_edges(&self, out: &mut Vec<usize>) {
        match self {
            Certificate::Leaf { edges, .. } => out.extend_from_slice(edges),
            _ => self.children().iter().for_each(|c| c.collect_edges(out)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Certificate::Leaf { .. } => 1,
            _ => self.children().iter().map(Certificate::leaf_count).sum(),
        }
    }

    /// Rewrites local edge and vertex ids into parent ids.
    pub fn remap(&self, edge_map: &[usize], vertex_map: &[usize]) -> Certificate {
        let map_edges = |es: &[usize]| es.iter().map(|&e| edge_map[e]).collect::<Vec<_>>();
        match self {
            Certificate::Leaf { construction, edges } => {
                Certificate::Leaf { construction: construction.clone(), edges: map_edges(edges) }
            }
            Certificate::Partition { x, y, children } => Certificate::Partition {
                x: map_edges(x),
                y: map_edges(y),
                children: children.iter().map(|c| c.remap(edge_map, vertex_map)).collect(),
            },
            Certificate::BlockJoin { cut_vertex, children } => Certificate::BlockJoin {
                cut_vertex: cut_vertex.map(|v| vertex_map[v]),
                children: children.iter().map(|c| c.remap(edge_map, vertex_map)).collect(),
            },
        }
    }

    /// Every leaf edge appears exactly once and the leaves cover `0..m`.
    pub fn covers_exactly(&self, m: usize) -> bool {
        let mut all = Vec::new();
        self.collect_edges(&mut all);
        all.sort_unstable();
        all.len() == m && all.iter().enumerate().all(|(i, &e)| i == e)
    }

    /// No arc of `d` runs from an earlier child into a later one, at any node.
    pub fn respects_order(&self, d: &LineDigraph) -> bool {
        let children = self.children();
        let sets: Vec<Vec<usize>> = children.iter().map(Certificate::edges).collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                for &e in &sets[i] {
                    if sets[j].iter().any(|&f| d.has_arc(e, f)) {
                        return false;
                    }
                }
            }
        }
        children.iter().all(|c| c.respects_order(d))
    }
}

/// An orientation together with its assembly certificate.
#[derive(Clone, Debug)]
pub struct Oriented {
    pub digraph: LineDigraph,
    pub certificate: Certificate,
}
