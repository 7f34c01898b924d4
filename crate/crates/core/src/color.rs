//! List edge colorings from kernel-perfect orientations of line graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::blocks::blocks;
use crate::digraph::{Certificate, LineDigraph};
use crate::error::ColorError;
use crate::graph::Graph;
use crate::orient::{orient_block, orient_gstar_at, orient_strong, require_gstar};
use crate::recognize::recognize_theta;

/// A finite list of allowed colors per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<usize, Vec<u32>>", into = "BTreeMap<usize, Vec<u32>>")]
pub struct ListAssignment {
    pub lists: Vec<BTreeSet<u32>>,
}

impl TryFrom<BTreeMap<usize, Vec<u32>>> for ListAssignment {
    type Error = String;

    fn try_from(map: BTreeMap<usize, Vec<u32>>) -> Result<Self, String> {
        let mut lists = Vec::with_capacity(map.len());
        for (i, (e, colors)) in map.into_iter().enumerate() {
            if e != i {
                return Err(format!("list for edge {i} is missing"));
            }
            if colors.is_empty() {
                return Err(format!("edge {e} has an empty list"));
            }
            lists.push(colors.into_iter().collect());
        }
        Ok(ListAssignment { lists })
    }
}

impl From<ListAssignment> for BTreeMap<usize, Vec<u32>> {
    fn from(l: ListAssignment) -> Self {
        l.lists.into_iter().enumerate().map(|(e, s)| (e, s.into_iter().collect())).collect()
    }
}

impl ListAssignment {
    pub fn new<I, L>(lists: I) -> Self
    where
        I: IntoIterator<Item = L>,
        L: IntoIterator<Item = u32>,
    {
        ListAssignment { lists: lists.into_iter().map(|l| l.into_iter().collect()).collect() }
    }

    /// The same list `1..=k` on each of `m` edges.
    pub fn uniform(m: usize, k: u32) -> Self {
        ListAssignment { lists: vec![(1..=k).collect(); m] }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.lists.iter().map(BTreeSet::len).collect()
    }

    /// Lists of the edges `edge_map[0], edge_map[1], ...`.
    pub fn restrict(&self, edge_map: &[usize]) -> Self {
        ListAssignment { lists: edge_map.iter().map(|&e| self.lists[e].clone()).collect() }
    }
}

/// One color per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "BTreeMap<usize, u32>", into = "BTreeMap<usize, u32>")]
pub struct EdgeColoring {
    pub colors: Vec<u32>,
}

impl From<BTreeMap<usize, u32>> for EdgeColoring {
    fn from(map: BTreeMap<usize, u32>) -> Self {
        EdgeColoring { colors: map.into_values().collect() }
    }
}

impl From<EdgeColoring> for BTreeMap<usize, u32> {
    fn from(c: EdgeColoring) -> Self {
        c.colors.into_iter().enumerate().collect()
    }
}

/// An `m`-set of colors per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "BTreeMap<usize, Vec<u32>>", into = "BTreeMap<usize, Vec<u32>>")]
pub struct TupleColoring {
    pub sets: Vec<Vec<u32>>,
}

impl From<BTreeMap<usize, Vec<u32>>> for TupleColoring {
    fn from(map: BTreeMap<usize, Vec<u32>>) -> Self {
        TupleColoring { sets: map.into_values().collect() }
    }
}

impl From<TupleColoring> for BTreeMap<usize, Vec<u32>> {
    fn from(c: TupleColoring) -> Self {
        c.sets.into_iter().enumerate().collect()
    }
}

/// Adjacent edges get distinct colors, and each color comes from its list
/// when lists are given.
pub fn is_proper_coloring(g: &Graph, colors: &[u32], lists: Option<&ListAssignment>) -> bool {
    if colors.len() != g.edge_count() {
        return false;
    }
    if let Some(l) = lists {
        if l.len() != colors.len() || colors.iter().zip(&l.lists).any(|(c, list)| !list.contains(c)) {
            return false;
        }
    }
    (0..g.vertex_count()).all(|v| {
        let mut seen = BTreeSet::new();
        g.neighbors(v).iter().all(|&(_, e)| seen.insert(colors[e]))
    })
}

/// Every edge gets `m` distinct colors from its list and adjacent edges get
/// disjoint sets.
pub fn is_proper_tuple_coloring(g: &Graph, sets: &[Vec<u32>], lists: &ListAssignment, m: usize) -> bool {
    if sets.len() != g.edge_count() || lists.len() != sets.len() {
        return false;
    }
    for (set, list) in sets.iter().zip(&lists.lists) {
        let distinct: BTreeSet<u32> = set.iter().copied().collect();
        if distinct.len() != m || set.len() != m || !distinct.is_subset(list) {
            return false;
        }
    }
    (0..g.vertex_count()).all(|v| {
        let mut seen = BTreeSet::new();
        g.neighbors(v).iter().all(|&(_, e)| sets[e].iter().all(|&c| seen.insert(c)))
    })
}

/// Backtracking kernel search on the subdigraph induced by `z`.
fn search_kernel(d: &LineDigraph, z: &[usize]) -> Option<Vec<usize>> {
    let n = z.len();
    let mut local = vec![usize::MAX; d.size()];
    for (i, &e) in z.iter().enumerate() {
        local[e] = i;
    }
    let mut out = vec![FixedBitSet::with_capacity(n); n];
    let mut inn = vec![FixedBitSet::with_capacity(n); n];
    for (i, &e) in z.iter().enumerate() {
        for &f in d.out_neighbors(e) {
            if local[f] != usize::MAX {
                out[i].insert(local[f]);
                inn[local[f]].insert(i);
            }
        }
    }
    let adj: Vec<FixedBitSet> = (0..n)
        .map(|i| {
            let mut a = out[i].clone();
            a.union_with(&inn[i]);
            a
        })
        .collect();

    fn rec(
        out: &[FixedBitSet],
        inn: &[FixedBitSet],
        adj: &[FixedBitSet],
        cand: &FixedBitSet,
        covered: &FixedBitSet,
        chosen: &mut Vec<usize>,
    ) -> bool {
        let n = out.len();
        let mut best: Option<FixedBitSet> = None;
        for w in (0..n).filter(|&w| !covered.contains(w)) {
            let mut options = out[w].clone();
            options.insert(w);
            options.intersect_with(cand);
            let count = options.count_ones(..);
            if count == 0 {
                return false;
            }
            if best.as_ref().is_none_or(|b| count < b.count_ones(..)) {
                best = Some(options);
            }
        }
        let Some(options) = best else {
            return true;
        };
        for c in options.ones() {
            let mut next_cand = cand.clone();
            next_cand.set(c, false);
            next_cand.difference_with(&adj[c]);
            let mut next_cov = covered.clone();
            next_cov.insert(c);
            next_cov.union_with(&inn[c]);
            chosen.push(c);
            if rec(out, inn, adj, &next_cand, &next_cov, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut cand = FixedBitSet::with_capacity(n);
    cand.insert_range(..);
    let covered = FixedBitSet::with_capacity(n);
    let mut chosen = Vec::new();
    rec(&out, &inn, &adj, &cand, &covered, &mut chosen).then(|| {
        let mut s: Vec<usize> = chosen.into_iter().map(|i| z[i]).collect();
        s.sort_unstable();
        s
    })
}

/// Kernel of the part of `z` covered by `cert`, built child by child: each
/// later child only contributes a kernel of its members not already
/// dominated by the kernel chosen so far.
fn kernel_along(d: &LineDigraph, cert: &Certificate, z: &FixedBitSet) -> Option<Vec<usize>> {
    match cert {
        Certificate::Leaf { edges, .. } => {
            let part: Vec<usize> = edges.iter().copied().filter(|&e| z.contains(e)).collect();
            search_kernel(d, &part)
        }
        _ => {
            let mut kernel = FixedBitSet::with_capacity(d.size());
            for child in cert.children() {
                let mut sub = FixedBitSet::with_capacity(d.size());
                for e in child.edges() {
                    if z.contains(e) && !d.out_neighbors(e).iter().any(|&f| kernel.contains(f)) {
                        sub.insert(e);
                    }
                }
                for e in kernel_along(d, child, &sub)? {
                    kernel.insert(e);
                }
            }
            Some(kernel.ones().collect())
        }
    }
}

/// A kernel of `d[z]`. With a certificate the kernel is assembled along it;
/// otherwise it is found by backtracking.
pub fn find_kernel(d: &LineDigraph, z: &[usize], cert: Option<&Certificate>) -> Result<Vec<usize>, ColorError> {
    let mut zs: Vec<usize> = z.to_vec();
    zs.sort_unstable();
    zs.dedup();
    if zs.iter().any(|&e| e >= d.size()) {
        return Err(ColorError::ContractViolation("vertex outside the digraph".into()));
    }
    let kernel = match cert {
        Some(c) => {
            if !c.covers_exactly(d.size()) {
                return Err(ColorError::ContractViolation("certificate does not cover the digraph".into()));
            }
            let mut set = FixedBitSet::with_capacity(d.size());
            zs.iter().for_each(|&e| set.insert(e));
            let k = kernel_along(d, c, &set).ok_or_else(|| ColorError::KernelAbsent { z: zs.clone() })?;
            if !d.is_kernel(&zs, &k) {
                return Err(ColorError::ContractViolation("certificate order does not match the orientation".into()));
            }
            k
        }
        None => search_kernel(d, &zs).ok_or_else(|| ColorError::KernelAbsent { z: zs.clone() })?,
    };
    Ok(kernel)
}

/// Kernel rounds with multiplicities: each edge must be picked `m` times.
fn kernel_rounds(
    g: &Graph,
    d: &LineDigraph,
    lists: &ListAssignment,
    m: usize,
    cert: Option<&Certificate>,
) -> Result<Vec<Vec<u32>>, ColorError> {
    let size = g.edge_count();
    if d.size() != size || lists.len() != size {
        return Err(ColorError::ContractViolation(format!(
            "graph has {size} edges, digraph {} vertices, lists {}",
            d.size(),
            lists.len()
        )));
    }
    if m == 0 {
        return Err(ColorError::ContractViolation("m must be at least 1".into()));
    }
    for e in 0..size {
        let need = m * (d.outdegree(e) + 1);
        if lists.lists[e].len() < need {
            return Err(ColorError::Demand { edge: e, have: lists.lists[e].len(), need });
        }
    }
    let mut remaining = lists.lists.clone();
    let mut need = vec![m; size];
    let mut chosen: Vec<Vec<u32>> = vec![Vec::with_capacity(m); size];
    loop {
        let alive: Vec<usize> = (0..size).filter(|&e| need[e] > 0).collect();
        if alive.is_empty() {
            break;
        }
        let c = alive
            .iter()
            .filter_map(|&e| remaining[e].first().copied())
            .min()
            .ok_or_else(|| ColorError::ContractViolation("alive edge with an empty list".into()))?;
        let u: Vec<usize> = alive.iter().copied().filter(|&e| remaining[e].contains(&c)).collect();
        let kernel = find_kernel(d, &u, cert)?;
        for &e in &kernel {
            chosen[e].push(c);
            need[e] -= 1;
        }
        for &e in &u {
            remaining[e].remove(&c);
        }
        for &e in alive.iter().filter(|&&e| need[e] > 0) {
            let owed: usize = need[e] + d.out_neighbors(e).iter().map(|&f| need[f]).sum::<usize>();
            if remaining[e].len() < owed {
                return Err(ColorError::ContractViolation(format!(
                    "kernel invariant broken at edge {e}: {} colors left, {owed} owed",
                    remaining[e].len()
                )));
            }
        }
    }
    Ok(chosen)
}

/// Colors `g` from lists of size at least `outdeg(e) + 1` by repeatedly
/// giving the smallest remaining color to a kernel of the edges that still
/// have it.
pub fn bbs_color(
    g: &Graph,
    d: &LineDigraph,
    lists: &ListAssignment,
    cert: Option<&Certificate>,
) -> Result<EdgeColoring, ColorError> {
    let chosen = kernel_rounds(g, d, lists, 1, cert)?;
    Ok(EdgeColoring { colors: chosen.into_iter().map(|c| c[0]).collect() })
}

/// `m` colors per edge from lists of size at least `m (outdeg(e) + 1)`.
pub fn tuple_color(
    g: &Graph,
    d: &LineDigraph,
    lists: &ListAssignment,
    m: usize,
    cert: Option<&Certificate>,
) -> Result<TupleColoring, ColorError> {
    Ok(TupleColoring { sets: kernel_rounds(g, d, lists, m, cert)? })
}

/// Kernel rounds on a 4-vertex digraph given by bitmasks.
fn small_rounds(out: [u8; 4], adj: [u8; 4], mut lists: [u64; 4]) -> Option<[u32; 4]> {
    let mut colors = [u32::MAX; 4];
    let mut alive = 0b1111u8;
    while alive != 0 {
        let c = (0..4).filter(|&i| alive & (1 << i) != 0 && lists[i] != 0).map(|i| lists[i].trailing_zeros()).min()?;
        let u = (0..4).filter(|&i| alive & (1 << i) != 0 && lists[i] & (1 << c) != 0).fold(0u8, |m, i| m | 1 << i);
        let kernel = (0..=u).filter(|&s| s & !u == 0).find(|&s| {
            (0..4).all(|i| if s & (1 << i) != 0 { adj[i] & s == 0 } else { u & (1 << i) == 0 || out[i] & s != 0 })
        })?;
        for i in 0..4 {
            if kernel & (1 << i) != 0 {
                colors[i] = c;
                alive &= !(1 << i);
            }
            if u & (1 << i) != 0 {
                lists[i] &= !(1u64 << c);
            }
        }
    }
    Some(colors)
}

fn arcs_to_masks(arcs: &[(usize, usize)]) -> ([u8; 4], [u8; 4]) {
    let mut out = [0u8; 4];
    let mut adj = [0u8; 4];
    for &(a, b) in arcs {
        out[a] |= 1 << b;
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    (out, adj)
}

/// Colors the diamond from bitmask lists in the order `[e1, e2, h, f1, f2]`,
/// where `e1 = vw`, `e2 = vz`, `h = wz`, `f1 = uz`, `f2 = uw` for the tips
/// `v`, `u` and hubs `w`, `z`. Needs at least 2 colors on `e1`, `e2` and 3
/// elsewhere. Returns color indices.
pub fn diamond_color_masks(l: [u64; 5]) -> Option<[u32; 5]> {
    const E1: usize = 0;
    const E2: usize = 1;
    const H: usize = 2;
    const F1: usize = 3;
    const F2: usize = 4;
    let lowest = |m: u64| (m != 0).then(|| m.trailing_zeros());
    // a matching edge pair (e_i, f_i) sharing a color
    for (ei, fi, ej, fj) in [(E1, F1, E2, F2), (E2, F2, E1, F1)] {
        if let Some(c) = lowest(l[ei] & l[fi]) {
            let cm = !(1u64 << c);
            let a = lowest(l[ej] & cm)?;
            let b = lowest(l[H] & cm & !(1u64 << a))?;
            let f = lowest(l[fj] & cm & !(1u64 << b))?;
            let mut out = [0u32; 5];
            out[ei] = c;
            out[fi] = c;
            out[ej] = a;
            out[H] = b;
            out[fj] = f;
            return Some(out);
        }
    }
    let ch = lowest(l[H] & !l[E1])?;
    let hm = !(1u64 << ch);
    // C4 in the order e1, e2, f1, f2
    let rest = [l[E1] & hm, l[E2] & hm, l[F1] & hm, l[F2] & hm];
    let arcs: &[(usize, usize)] =
        if rest[1].count_ones() >= 2 { &[(0, 1), (1, 2), (2, 3), (3, 0)] } else { &[(0, 1), (2, 1), (3, 2), (3, 0)] };
    let (out, adj) = arcs_to_masks(arcs);
    let c4 = small_rounds(out, adj, rest)?;
    Some([c4[0], c4[1], ch, c4[2], c4[3]])
}

/// Names the diamond edges around the tip `v`: `[e1, e2, h, f1, f2]`.
pub fn diamond_labels(g: &Graph, v: usize) -> Result<[usize; 5], ColorError> {
    let sig = recognize_theta(g)
        .filter(|s| s.is_crown() && g.edge_count() == 5)
        .ok_or_else(|| ColorError::ContractViolation("expected the diamond K2 ∨ K̄2".into()))?;
    if v >= g.vertex_count() || g.degree(v) != 2 {
        return Err(ColorError::ContractViolation("v must be a degree-2 vertex of the diamond".into()));
    }
    let (w, z) = sig.hubs;
    let u = (0..4).find(|&x| x != v && g.degree(x) == 2).expect("two tips");
    let edge = |a, b| g.edge_between(a, b).expect("diamond edge");
    Ok([edge(v, w), edge(v, z), edge(w, z), edge(u, z), edge(u, w)])
}

/// Colors the diamond from lists of sizes at least 2 on the edges at the
/// tip `v` and at least 3 elsewhere, although it has no matching orientation.
pub fn diamond_color(g: &Graph, v: usize, lists: &ListAssignment) -> Result<EdgeColoring, ColorError> {
    let labels = diamond_labels(g, v)?;
    if lists.len() != 5 {
        return Err(ColorError::ContractViolation("five lists expected".into()));
    }
    let need = [2, 2, 3, 3, 3];
    // only the smallest needed colors of each list take part
    let mut palette = BTreeSet::new();
    for (&e, &k) in labels.iter().zip(&need) {
        let list = &lists.lists[e];
        if list.len() < k {
            return Err(ColorError::Demand { edge: e, have: list.len(), need: k });
        }
        palette.extend(list.iter().take(k));
    }
    let palette: Vec<u32> = palette.into_iter().collect();
    let index = |c: &u32| palette.binary_search(c).expect("color in palette");
    let mut masks = [0u64; 5];
    for (slot, (&e, &k)) in labels.iter().zip(&need).enumerate() {
        masks[slot] = lists.lists[e].iter().take(k).fold(0u64, |m, c| m | 1 << index(c));
    }
    let found = diamond_color_masks(masks).ok_or(ColorError::Uncolorable)?;
    let mut colors = vec![0u32; 5];
    for (slot, &e) in labels.iter().enumerate() {
        colors[e] = palette[found[slot] as usize];
    }
    Ok(EdgeColoring { colors })
}

/// Plain backtracking over edges in id order.
pub fn backtrack_color(g: &Graph, lists: &ListAssignment) -> Option<EdgeColoring> {
    let m = g.edge_count();
    let earlier: Vec<Vec<usize>> = (0..m)
        .map(|e| {
            let (a, b) = g.edge(e);
            let mut n: Vec<usize> =
                g.incident_edges(a).into_iter().chain(g.incident_edges(b)).filter(|&f| f < e).collect();
            n.sort_unstable();
            n.dedup();
            n
        })
        .collect();
    fn rec(e: usize, earlier: &[Vec<usize>], lists: &ListAssignment, colors: &mut Vec<u32>) -> bool {
        if e == earlier.len() {
            return true;
        }
        for &c in &lists.lists[e] {
            if earlier[e].iter().all(|&f| colors[f] != c) {
                colors.push(c);
                if rec(e + 1, earlier, lists, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    let mut colors = Vec::with_capacity(m);
    rec(0, &earlier, lists, &mut colors).then_some(EdgeColoring { colors })
}

/// Chromatic index of a connected member of the class with at least one
/// edge: 3 for odd cycles, `Δ` otherwise.
pub fn chromatic_index(component: &Graph) -> usize {
    let odd_cycle = component.edge_count() % 2 == 1 && component.non_isolated().all(|v| component.degree(v) == 2);
    if odd_cycle {
        3
    } else {
        component.max_degree()
    }
}

/// Colors a graph of the class from any lists of size at least the chromatic
/// index of the edge's component.
pub fn choose_edges(g: &Graph, lists: &ListAssignment) -> Result<EdgeColoring, ColorError> {
    require_gstar(g)?;
    if lists.len() != g.edge_count() {
        return Err(ColorError::ContractViolation(format!("{} lists for {} edges", lists.len(), g.edge_count())));
    }
    let mut colors = vec![0u32; g.edge_count()];
    for comp in g.components() {
        let comp_edges: Vec<usize> = {
            let mut es: Vec<usize> = comp.iter().flat_map(|&v| g.incident_edges(v)).collect();
            es.sort_unstable();
            es.dedup();
            es
        };
        if comp_edges.is_empty() {
            continue;
        }
        let sub = g.edge_subgraph(&comp_edges);
        let h = &sub.graph;
        let chi = chromatic_index(h);
        for &e in &comp_edges {
            if lists.lists[e].len() < chi {
                return Err(ColorError::Demand { edge: e, have: lists.lists[e].len(), need: chi });
            }
        }
        let local = lists.restrict(&sub.edge_map);
        let delta = h.max_degree();
        let start = (0..h.vertex_count()).max_by_key(|&x| (h.degree(x), std::cmp::Reverse(x))).expect("non-empty");
        let coloring = if h.vertex_count() == 4 && h.edge_count() == 6 {
            backtrack_color(h, &local).ok_or(ColorError::Uncolorable)?
        } else if delta >= 4 {
            let o = orient_gstar_at(h, delta, start)?;
            bbs_color(h, &o.digraph, &local, Some(&o.certificate))?
        } else if delta <= 2 {
            let o = orient_strong(h, start, chi)?;
            bbs_color(h, &o.digraph, &local, Some(&o.certificate))?
        } else {
            color_subcubic(h, &local, start)?
        };
        for (i, &e) in sub.edge_map.iter().enumerate() {
            colors[e] = coloring.colors[i];
        }
    }
    if !is_proper_coloring(g, &colors, Some(lists)) {
        return Err(ColorError::ContractViolation("assembled coloring is not proper".into()));
    }
    Ok(EdgeColoring { colors })
}

/// Subcubic connected case: blocks are colored outward from the block of
/// `root`. A block reached through the cut vertex `z` sees at most
/// `3 - d_B(z)` colors already used at `z`, so its lists meet `f_{3,z}`.
fn color_subcubic(g: &Graph, lists: &ListAssignment, root: usize) -> Result<EdgeColoring, ColorError> {
    let dec = blocks(g);
    let mut colors: Vec<Option<u32>> = vec![None; g.edge_count()];
    let mut done = vec![false; dec.blocks.len()];
    let first = dec.blocks_at[root][0];
    let mut queue = VecDeque::from([(first, root)]);
    done[first] = true;
    while let Some((b, z)) = queue.pop_front() {
        let sub = g.edge_subgraph(&dec.blocks[b]);
        let block = &sub.graph;
        let local_z = sub.local_vertex(z).expect("attachment vertex in block");
        let mut local = lists.restrict(&sub.edge_map);
        for (i, &e) in sub.edge_map.iter().enumerate() {
            let (a, c) = g.edge(e);
            for f in g.incident_edges(a).into_iter().chain(g.incident_edges(c)) {
                if let Some(used) = colors[f] {
                    local.lists[i].remove(&used);
                }
            }
        }
        let is_diamond_tip = block.vertex_count() == 4 && block.edge_count() == 5 && block.degree(local_z) == 2;
        let coloring = if is_diamond_tip {
            diamond_color(block, local_z, &local)?
        } else {
            let o = orient_block(block, local_z, 3)?;
            bbs_color(block, &o.digraph, &local, Some(&o.certificate))?
        };
        for (i, &e) in sub.edge_map.iter().enumerate() {
            colors[e] = Some(coloring.colors[i]);
        }
        for &w in &dec.block_vertices[b] {
            for &next in &dec.blocks_at[w] {
                if !done[next] {
                    done[next] = true;
                    queue.push_back((next, w));
                }
            }
        }
    }
    Ok(EdgeColoring { colors: colors.into_iter().map(|c| c.expect("every block colored")).collect() })
}
