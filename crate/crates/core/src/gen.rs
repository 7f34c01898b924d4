//! Seeded generators for test corpora: graphs glued from legal blocks,
//! random orientations and list assignments, and exhaustive enumeration of
//! small connected graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::color::ListAssignment;
use crate::digraph::LineDigraph;
use crate::graph::{line_graph, Graph, LineGraph};
use crate::named;

/// Blocks that keep a graph inside the class with odd cycles sharing at
/// most one edge pairwise.
fn gstar_block<R: Rng>(rng: &mut R) -> Graph {
    match rng.gen_range(0..12) {
        0 => named::path(2),
        1 => named::cycle(2 * rng.gen_range(2..=4)),
        2 => named::complete_bipartite(2, rng.gen_range(2..=4)),
        3 => named::complete_bipartite(3, 3),
        4 => named::theta(&[2, 2, 4]),
        5 => named::theta(&[1, 3, 3]),
        6 => named::complete(4),
        7 => named::cycle(2 * rng.gen_range(1..=3) + 1),
        8 => named::crown(rng.gen_range(1..=4)),
        9 => named::theta(&[1, 2, 4]),
        10 => named::theta(&[1, 4, 4]),
        _ => named::theta(&[1, 2, 2, 4]),
    }
}

/// Blocks whose odd cycles are all triangles.
fn g1_block<R: Rng>(rng: &mut R) -> Graph {
    match rng.gen_range(0..8) {
        0 | 1 => named::path(2),
        2 => named::cycle(4),
        3 => named::complete_bipartite(2, 3),
        4 => named::complete(4),
        5 => named::cycle(3),
        6 => named::diamond(),
        _ => named::crown(rng.gen_range(1..=3)),
    }
}

/// Glues random blocks at single vertices (and occasionally starts a new
/// component) until no further block fits within the limits.
fn glue<R: Rng>(rng: &mut R, max_degree: usize, max_edges: usize, mut block: impl FnMut(&mut R) -> Graph) -> Graph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut n = 0usize;
    let mut degree: Vec<usize> = Vec::new();
    let target = rng.gen_range(1..=6);
    let mut placed = 0;
    let mut attempts = 0;
    while placed < target && attempts < 60 {
        attempts += 1;
        let b = block(rng);
        if b.max_degree() > max_degree || edges.len() + b.edge_count() > max_edges {
            continue;
        }
        let fresh = placed == 0 || rng.gen_bool(0.1);
        let mut map: Vec<usize> = (0..b.vertex_count()).map(|i| n + i).collect();
        if !fresh {
            let host = rng.gen_range(0..n);
            let y = rng.gen_range(0..b.vertex_count());
            if degree[host] + b.degree(y) > max_degree {
                continue;
            }
            for slot in map.iter_mut().skip(y + 1) {
                *slot -= 1;
            }
            map[y] = host;
        }
        let added = b.vertex_count() - usize::from(!fresh);
        degree.resize(n + added, 0);
        n += added;
        for &(a, c) in b.edges() {
            let (x, z) = (map[a], map[c]);
            degree[x] += 1;
            degree[z] += 1;
            edges.push((x, z));
        }
        placed += 1;
    }
    Graph::new(n, edges).expect("glued blocks form a simple graph")
}

/// A random member of the class with `Δ <= max_degree` and at most
/// `max_edges` edges.
pub fn random_gstar<R: Rng>(rng: &mut R, max_degree: usize, max_edges: usize) -> Graph {
    glue(rng, max_degree, max_edges, gstar_block)
}

/// A random graph whose odd cycles are all triangles.
pub fn random_g1<R: Rng>(rng: &mut R, max_degree: usize, max_edges: usize) -> Graph {
    glue(rng, max_degree, max_edges, g1_block)
}

/// Each adjacent pair independently forward, backward or both.
pub fn random_orientation<R: Rng>(rng: &mut R, line: &LineGraph) -> LineDigraph {
    let mut arcs = Vec::with_capacity(2 * line.pairs.len());
    for &(e, f) in &line.pairs {
        match rng.gen_range(0..3) {
            0 => arcs.push((e, f)),
            1 => arcs.push((f, e)),
            _ => {
                arcs.push((e, f));
                arcs.push((f, e));
            }
        }
    }
    LineDigraph::new(line.clone(), arcs).expect("every pair oriented")
}

/// Orients along a random linear order (later to earlier), bidirecting each
/// pair with probability `p_both`.
pub fn random_ordered_orientation<R: Rng>(rng: &mut R, line: &LineGraph, p_both: f64) -> LineDigraph {
    let mut rank: Vec<usize> = (0..line.size).collect();
    rank.shuffle(rng);
    let mut arcs = Vec::with_capacity(2 * line.pairs.len());
    for &(e, f) in &line.pairs {
        let (hi, lo) = if rank[e] > rank[f] { (e, f) } else { (f, e) };
        arcs.push((hi, lo));
        if rng.gen_bool(p_both) {
            arcs.push((lo, hi));
        }
    }
    LineDigraph::new(line.clone(), arcs).expect("every pair oriented")
}

/// Lists of the given sizes drawn without replacement from `1..=universe`.
pub fn random_lists<R: Rng>(rng: &mut R, sizes: &[usize], universe: u32) -> ListAssignment {
    let palette: Vec<u32> = (1..=universe).collect();
    ListAssignment::new(sizes.iter().map(|&k| {
        assert!(k <= palette.len(), "list size exceeds the universe");
        palette.choose_multiple(rng, k).copied().collect::<Vec<_>>()
    }))
}

/// All connected labeled graphs on exactly `n` vertices, by edge subsets of
/// `K_n` in increasing bitmask order.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 8, "edge masks are limited to 28 pairs");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let total = 1u64 << pairs.len();
    (0..total).filter_map(move |mask| {
        if !mask_connected(n, &pairs, mask) {
            return None;
        }
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p);
        Some(Graph::new(n, edges).expect("pairs are distinct"))
    })
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    if n <= 1 {
        return true;
    }
    let mut adj = vec![0u32; n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if mask & (1 << i) != 0 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen.count_ones() as usize == n
}

/// Convenience: the line graph and a uniformly random orientation of it.
pub fn random_line_orientation<R: Rng>(rng: &mut R, g: &Graph) -> LineDigraph {
    random_orientation(rng, &line_graph(g))
}
