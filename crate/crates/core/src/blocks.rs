//! Block (biconnected component) decomposition and the block-cut tree.

use serde::Serialize;

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Edge ids of each block, sorted; blocks ordered by smallest edge id.
    pub blocks: Vec<Vec<usize>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<usize>,
    /// For every vertex, the indices of the blocks containing it.
    pub blocks_at: Vec<Vec<usize>>,
    /// Vertices of each block, sorted.
    pub block_vertices: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.blocks_at[v].len() >= 2
    }

    /// Edges of the block-cut tree as `(block index, cut vertex)` pairs.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &c in &self.cut_vertices {
            for &b in &self.blocks_at[c] {
                out.push((b, c));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Biconnected components by the iterative Hopcroft–Tarjan edge-stack method.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut raw_blocks: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, edge id used to enter it, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (u, parent_edge, next) = *top;
            if next < g.degree(u) {
                top.2 += 1;
                let (w, e) = g.neighbors(u)[next];
                if e == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[u] {
                    edge_stack.push(e);
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == parent_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        raw_blocks.push(block);
                    }
                }
            }
        }
    }

    raw_blocks.sort_unstable_by_key(|b| b[0]);
    let mut blocks_at = vec![Vec::new(); n];
    let mut block_vertices = Vec::with_capacity(raw_blocks.len());
    for (i, block) in raw_blocks.iter().enumerate() {
        let mut vs: Vec<usize> = block.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            blocks_at[v].push(i);
        }
        block_vertices.push(vs);
    }
    let cut_vertices = (0..n).filter(|&v| blocks_at[v].len() >= 2).collect();
    BlockDecomposition { blocks: raw_blocks, cut_vertices, blocks_at, block_vertices }
}

/// True for a connected graph with at least one edge and no cut vertex
/// (a single edge counts).
pub fn is_block(g: &Graph) -> bool {
    if g.edge_count() == 0 {
        return false;
    }
    if g.non_isolated().count() != g.vertex_count() {
        return false;
    }
    blocks(g).blocks.len() == 1
}
