//! Bounded enumeration of simple cycles.
//!
//! Cycles are found by depth-first search from each root `r` through vertices
//! larger than `r`; a cycle is reported once, in the direction whose second
//! vertex is smaller than its last.

use std::ops::ControlFlow;

use crate::error::CycleError;
use crate::graph::Graph;

/// Calls `visit` with the edge ids of every simple cycle (in traversal order).
/// Stops early when `visit` breaks.
pub fn for_each_cycle<F>(g: &Graph, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    let mut path_vertices: Vec<usize> = Vec::new();
    let mut path_edges: Vec<usize> = Vec::new();
    for root in 0..n {
        on_path[root] = true;
        path_vertices.push(root);
        // (vertex, next neighbor index)
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(top) = stack.last_mut() {
            let (u, next) = *top;
            if next < g.degree(u) {
                top.1 += 1;
                let (w, e) = g.neighbors(u)[next];
                if w == root {
                    if path_vertices.len() >= 3 && path_vertices[1] < u {
                        path_edges.push(e);
                        let flow = visit(&path_edges);
                        path_edges.pop();
                        flow?;
                    }
                } else if w > root && !on_path[w] {
                    on_path[w] = true;
                    path_vertices.push(w);
                    path_edges.push(e);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
                on_path[u] = false;
                path_vertices.pop();
                if !stack.is_empty() {
                    path_edges.pop();
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// Every odd simple cycle as a sorted edge-id set, ordered by length and then
/// lexicographically. Fails once more than `max_count` odd cycles are seen.
pub fn odd_cycles(g: &Graph, max_count: usize) -> Result<Vec<Vec<usize>>, CycleError> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let flow = for_each_cycle(g, |edges| {
        if edges.len() % 2 == 1 {
            if out.len() == max_count {
                return ControlFlow::Break(());
            }
            let mut set = edges.to_vec();
            set.sort_unstable();
            out.push(set);
        }
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        return Err(CycleError::BudgetExceeded { bound: max_count });
    }
    out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Size of the intersection of two sorted edge-id sets.
pub fn shared_edges(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Checks that an edge set forms one simple cycle; returns its length.
pub fn is_simple_cycle(g: &Graph, edges: &[usize]) -> Option<usize> {
    if edges.len() < 3 {
        return None;
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.iter().any(|&e| e >= g.edge_count()) {
        return None;
    }
    let sub = g.edge_subgraph(&sorted);
    let h = &sub.graph;
    if (0..h.vertex_count()).any(|v| h.degree(v) != 2) || !h.is_connected() {
        return None;
    }
    Some(sorted.len())
}
