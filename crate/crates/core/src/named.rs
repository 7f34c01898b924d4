//! Constructors for the small named graphs used throughout the crate.

use crate::graph::Graph;

pub fn path(vertices: usize) -> Graph {
    Graph::new(vertices, (1..vertices).map(|i| (i - 1, i))).expect("path is simple")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph is simple")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)));
    Graph::new(a + b, edges).expect("complete bipartite graph is simple")
}

pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

/// Θ-graph with hubs 0 and 1 and one internally disjoint path per length.
pub fn theta(lengths: &[usize]) -> Graph {
    assert!(lengths.iter().all(|&p| p >= 1));
    assert!(lengths.iter().filter(|&&p| p == 1).count() <= 1, "at most one unit path");
    let mut edges = Vec::new();
    let mut next = 2;
    for &p in lengths {
        let mut prev = 0;
        for _ in 1..p {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::new(next, edges).expect("theta graph is simple")
}

/// `K2 ∨ K̄r`: hubs 0 and 1 joined, plus `r` common neighbors.
pub fn crown(r: usize) -> Graph {
    let mut lengths = vec![1];
    lengths.extend(std::iter::repeat_n(2, r));
    theta(&lengths)
}

/// `K2 ∨ K̄2` with hubs 0 and 1 and tips 2 and 3.
pub fn diamond() -> Graph {
    crown(2)
}

/// Two triangles sharing vertex 0.
pub fn bowtie() -> Graph {
    Graph::new(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).expect("bowtie is simple")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, edges).expect("Petersen graph is simple")
}

/// Three diamonds, each with a degree-2 tip joined to a central vertex.
///
/// Vertex 0 is the center. Diamond `i` (for `i` in 0..3) uses vertices
/// `1 + 4i` (tip joined to the center), `2 + 4i` and `3 + 4i` (the joined
/// pair) and `4 + 4i` (far tip).
pub fn three_diamond_windmill() -> Graph {
    let mut edges = Vec::new();
    for i in 0..3 {
        let base = 1 + 4 * i;
        let (tip, w, z, far) = (base, base + 1, base + 2, base + 3);
        edges.extend([(0, tip), (tip, w), (tip, z), (w, z), (far, w), (far, z)]);
    }
    Graph::new(13, edges).expect("windmill is simple")
}
