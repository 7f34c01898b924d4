//! Simple undirected graphs with canonical edge identifiers.
//!
//! Edges are stored as `(u, v)` with `u < v`, sorted lexicographically; an
//! edge id is the index into that sorted list and never changes afterwards.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// A simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `adj[v]` holds `(neighbor, edge id)` sorted by neighbor.
    adj: Vec<Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        Graph::new(raw.n, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph { n: g.n, edges: g.edges }
    }
}

impl Graph {
    /// Builds a graph on `n` vertices, canonicalizing the edge order.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop { vertex: u });
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge { u: w[0].0, v: w[0].1 });
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj })
    }

    /// Builds a graph whose vertex count is one more than the largest endpoint.
    pub fn from_edges<I>(edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Graph::new(n, edges)
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `(neighbor, edge id)` pairs at `v`, sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Edge ids incident to `v`, in increasing id order.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        let mut ids: Vec<usize> = self.adj[v].iter().map(|&(_, e)| e).collect();
        ids.sort_unstable();
        ids
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u].binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| self.adj[u][i].1)
    }

    pub fn is_incident(&self, e: usize, v: usize) -> bool {
        let (a, b) = self.edges[e];
        a == v || b == v
    }

    /// The shared endpoint of two distinct adjacent edges.
    pub fn common_vertex(&self, e: usize, f: usize) -> Option<usize> {
        if e == f {
            return None;
        }
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        if a == c || a == d {
            Some(a)
        } else if b == c || b == d {
            Some(b)
        } else {
            None
        }
    }

    pub fn other_endpoint(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Vertices of positive degree.
    pub fn non_isolated(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| !self.adj[v].is_empty())
    }

    /// Connected components as sorted vertex lists (isolated vertices included).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(w, _) in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subgraph spanned by a set of edge ids, relabeled to local ids.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> Subgraph {
        let mut ids = edge_ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut vertices: Vec<usize> = ids.iter().flat_map(|&e| [self.edges[e].0, self.edges[e].1]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let local = |v: usize| vertices.binary_search(&v).expect("endpoint present");
        let pairs: Vec<_> = ids.iter().map(|&e| (local(self.edges[e].0), local(self.edges[e].1))).collect();
        // Relabeling is monotone, so the canonical order of the local edges
        // matches the order of `ids`.
        let graph = Graph::new(vertices.len(), pairs).expect("subgraph of a simple graph");
        Subgraph { graph, vertex_map: vertices, edge_map: ids }
    }

    /// Rebuilds adjacency from the edge list and compares.
    pub fn check_consistency(&self) -> bool {
        match Graph::new(self.n, self.edges.iter().copied()) {
            Ok(g) => g == *self,
            Err(_) => false,
        }
    }
}

/// A graph carved out of a parent graph, with maps back to parent ids.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// local vertex -> parent vertex (increasing)
    pub vertex_map: Vec<usize>,
    /// local edge -> parent edge (increasing)
    pub edge_map: Vec<usize>,
}

impl Subgraph {
    pub fn local_vertex(&self, parent: usize) -> Option<usize> {
        self.vertex_map.binary_search(&parent).ok()
    }

    pub fn local_edge(&self, parent: usize) -> Option<usize> {
        self.edge_map.binary_search(&parent).ok()
    }
}

/// Line graph of `G` together with the vertex cliques that generate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineGraph {
    /// Number of line-graph vertices (= edges of `G`).
    pub size: usize,
    /// Sorted neighbor lists.
    pub adj: Vec<Vec<usize>>,
    /// Adjacent pairs `(e, f)` with `e < f`, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// `(v, edges at v)` for every vertex with degree at least 2.
    pub cliques: Vec<(usize, Vec<usize>)>,
}

impl LineGraph {
    pub fn adjacent(&self, e: usize, f: usize) -> bool {
        self.adj[e].binary_search(&f).is_ok()
    }

    pub fn degree(&self, e: usize) -> usize {
        self.adj[e].len()
    }
}

pub fn line_graph(g: &Graph) -> LineGraph {
    let m = g.edge_count();
    let mut adj = vec![Vec::new(); m];
    let mut cliques = Vec::new();
    for v in 0..g.vertex_count() {
        let at = g.incident_edges(v);
        if at.len() < 2 {
            continue;
        }
        for (i, &e) in at.iter().enumerate() {
            for &f in &at[i + 1..] {
                adj[e].push(f);
                adj[f].push(e);
            }
        }
        cliques.push((v, at));
    }
    // Simple graphs: two edges share at most one endpoint, so no duplicates.
    for row in &mut adj {
        row.sort_unstable();
    }
    let mut pairs: Vec<(usize, usize)> =
        adj.iter().enumerate().flat_map(|(e, row)| row.iter().filter(move |&&f| f > e).map(move |&f| (e, f))).collect();
    pairs.sort_unstable();
    LineGraph { size: m, adj, pairs, cliques }
}

/// A proper 2-coloring by BFS layering, or `None` if the graph has an odd cycle.
///
/// Each component's smallest vertex gets side 0.
pub fn bipartition(g: &Graph) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in g.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartition(g).is_some()
}
