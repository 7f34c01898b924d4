//! The online list-coloring game on the edges of a graph.
//!
//! Each round Lister marks a nonempty set of alive edges, spending one unit
//! of each marked edge's budget, and Painter answers with an independent
//! (pairwise non-adjacent) subset of the marked edges. An edge selected
//! `m` times is deleted. Lister wins once some alive edge has fewer budget
//! units left than selections it still needs.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use serde::Serialize;

use crate::color::find_kernel;
use crate::digraph::{Certificate, LineDigraph};
use crate::error::PaintError;
use crate::graph::{line_graph, Graph, LineGraph};

/// Largest instance the exhaustive solvers accept.
pub const MAX_GAME_EDGES: usize = 8;
pub const MAX_GAME_BUDGET: usize = 24;
/// Budget cap when only Lister's moves are searched (Painter is fixed).
pub const MAX_KERNEL_GAME_BUDGET: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GameState {
    /// Marks each edge can still receive.
    pub budget: Vec<usize>,
    /// Selections each edge still needs; 0 means deleted.
    pub multiplicity: Vec<usize>,
}

impl GameState {
    pub fn new(f: &[usize], m: usize) -> Self {
        GameState { budget: f.to_vec(), multiplicity: vec![m; f.len()] }
    }

    pub fn is_alive(&self, e: usize) -> bool {
        self.multiplicity[e] > 0
    }

    pub fn alive(&self) -> Vec<usize> {
        (0..self.budget.len()).filter(|&e| self.is_alive(e)).collect()
    }

    pub fn lister_won(&self) -> bool {
        (0..self.budget.len()).any(|e| self.is_alive(e) && self.budget[e] < self.multiplicity[e])
    }

    pub fn painter_won(&self) -> bool {
        self.multiplicity.iter().all(|&m| m == 0)
    }

    /// Applies one round. Deleted edges are normalized to zero budget so
    /// equal positions compare equal.
    pub fn apply(&self, marked: &[usize], selected: &[usize]) -> GameState {
        let mut next = self.clone();
        for &e in marked {
            next.budget[e] -= 1;
        }
        for &e in selected {
            next.multiplicity[e] -= 1;
            if next.multiplicity[e] == 0 {
                next.budget[e] = 0;
            }
        }
        next
    }

    fn check_marks(&self, marked: &[usize]) -> Result<(), PaintError> {
        if marked.is_empty() {
            return Err(PaintError::Protocol("Lister must mark a nonempty set".into()));
        }
        if let Some(&e) = marked.iter().find(|&&e| e >= self.budget.len() || !self.is_alive(e)) {
            return Err(PaintError::Protocol(format!("edge {e} is not alive")));
        }
        if marked.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PaintError::Protocol("marks must be sorted and distinct".into()));
        }
        Ok(())
    }
}

/// Kernel strategy: answer with a kernel of the marked edges.
pub fn painter_move(
    d: &LineDigraph,
    state: &GameState,
    marked: &[usize],
    cert: Option<&Certificate>,
) -> Result<Vec<usize>, PaintError> {
    state.check_marks(marked)?;
    find_kernel(d, marked, cert).map_err(|e| PaintError::StrategyFailure(e.to_string()))
}

pub trait Lister {
    fn mark(&mut self, state: &GameState) -> Vec<usize>;
}

pub trait Painter {
    fn select(&mut self, state: &GameState, marked: &[usize]) -> Result<Vec<usize>, PaintError>;
}

/// Marks each alive edge with probability 1/2 (at least one).
pub struct RandomLister<R: Rng> {
    pub rng: R,
}

impl<R: Rng> Lister for RandomLister<R> {
    fn mark(&mut self, state: &GameState) -> Vec<usize> {
        let alive = state.alive();
        loop {
            let marked: Vec<usize> = alive.iter().copied().filter(|_| self.rng.gen_bool(0.5)).collect();
            if !marked.is_empty() {
                return marked;
            }
        }
    }
}

pub struct KernelPainter<'a> {
    pub digraph: &'a LineDigraph,
    pub certificate: Option<&'a Certificate>,
}

impl Painter for KernelPainter<'_> {
    fn select(&mut self, state: &GameState, marked: &[usize]) -> Result<Vec<usize>, PaintError> {
        painter_move(self.digraph, state, marked, self.certificate)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Winner {
    Painter,
    Lister,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Round {
    pub marked: Vec<usize>,
    pub selected: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GameRecord {
    pub winner: Winner,
    pub transcript: Vec<Round>,
}

fn is_independent(line: &LineGraph, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &e)| set[i + 1..].iter().all(|&f| !line.adjacent(e, f)))
}

/// Plays one game to the end, checking both players' moves.
pub fn play_game(
    g: &Graph,
    f: &[usize],
    m: usize,
    lister: &mut dyn Lister,
    painter: &mut dyn Painter,
) -> Result<GameRecord, PaintError> {
    if f.len() != g.edge_count() || m == 0 {
        return Err(PaintError::Protocol("one budget per edge and m >= 1 are required".into()));
    }
    let line = line_graph(g);
    let mut state = GameState::new(f, m);
    let mut transcript = Vec::new();
    loop {
        if state.lister_won() {
            return Ok(GameRecord { winner: Winner::Lister, transcript });
        }
        if state.painter_won() {
            return Ok(GameRecord { winner: Winner::Painter, transcript });
        }
        let mut marked = lister.mark(&state);
        marked.sort_unstable();
        state.check_marks(&marked)?;
        let mut selected = painter.select(&state, &marked)?;
        selected.sort_unstable();
        selected.dedup();
        if !selected.iter().all(|e| marked.binary_search(e).is_ok()) || !is_independent(&line, &selected) {
            return Err(PaintError::Protocol("Painter must select an independent subset of the marks".into()));
        }
        state = state.apply(&marked, &selected);
        transcript.push(Round { marked, selected });
    }
}

fn check_caps(f: &[usize], max_budget: usize) -> Result<(), PaintError> {
    if f.len() > MAX_GAME_EDGES {
        return Err(PaintError::Size(format!("{} edges exceed the cap of {MAX_GAME_EDGES}", f.len())));
    }
    let total: usize = f.iter().sum();
    if total > max_budget {
        return Err(PaintError::Size(format!("total budget {total} exceeds the cap of {max_budget}")));
    }
    Ok(())
}

fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1u32..(1 << items.len()))
        .map(move |mask| items.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e).collect())
}

/// A Lister mark sequence defeating the kernel painter.
#[derive(Clone, Debug, Serialize)]
pub struct KernelCounterexample {
    pub transcript: Vec<Round>,
}

/// Searches every Lister strategy against the kernel painter. Returns a
/// losing line of play if one exists.
pub fn kernel_strategy_counterexample(
    g: &Graph,
    d: &LineDigraph,
    f: &[usize],
    m: usize,
    cert: Option<&Certificate>,
) -> Result<Option<KernelCounterexample>, PaintError> {
    if f.len() != g.edge_count() || d.size() != g.edge_count() || m == 0 {
        return Err(PaintError::Protocol("one budget per edge and m >= 1 are required".into()));
    }
    check_caps(f, MAX_KERNEL_GAME_BUDGET)?;
    struct Search<'a> {
        d: &'a LineDigraph,
        cert: Option<&'a Certificate>,
        safe: HashSet<GameState>,
    }
    impl Search<'_> {
        fn losing_line(&mut self, state: &GameState) -> Result<Option<Vec<Round>>, PaintError> {
            if state.lister_won() {
                return Ok(Some(Vec::new()));
            }
            if state.painter_won() || self.safe.contains(state) {
                return Ok(None);
            }
            let alive = state.alive();
            for marked in subsets(&alive) {
                let selected = painter_move(self.d, state, &marked, self.cert)?;
                let next = state.apply(&marked, &selected);
                if let Some(mut rest) = self.losing_line(&next)? {
                    rest.insert(0, Round { marked, selected });
                    return Ok(Some(rest));
                }
            }
            self.safe.insert(state.clone());
            Ok(None)
        }
    }
    let mut search = Search { d, cert, safe: HashSet::new() };
    Ok(search.losing_line(&GameState::new(f, m))?.map(|transcript| KernelCounterexample { transcript }))
}

/// One entry of a winning Painter strategy.
#[derive(Clone, Debug, Serialize)]
pub struct StrategyEntry {
    pub budget: Vec<usize>,
    pub multiplicity: Vec<usize>,
    pub marked: Vec<usize>,
    pub selected: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Paintability {
    pub paintable: bool,
    pub states_explored: usize,
    /// For every reachable winning position and mark, Painter's reply.
    pub strategy: Vec<StrategyEntry>,
}

/// Exact solution of the game by memoized search. Painter only considers
/// maximal independent subsets of the marks: selecting an extra edge never
/// hurts Painter, since the resulting position dominates.
pub fn exhaustive_paintability(g: &Graph, f: &[usize], m: usize) -> Result<Paintability, PaintError> {
    if f.len() != g.edge_count() || m == 0 {
        return Err(PaintError::Protocol("one budget per edge and m >= 1 are required".into()));
    }
    check_caps(f, MAX_GAME_BUDGET)?;
    let line = line_graph(g);
    let mut memo: HashMap<GameState, bool> = HashMap::new();
    let mut choice: HashMap<(GameState, Vec<usize>), Vec<usize>> = HashMap::new();
    let start = GameState::new(f, m);
    let paintable = solve(&line, &start, &mut memo, &mut choice);
    let mut strategy = Vec::new();
    if paintable {
        collect_strategy(&start, &choice, &mut strategy, &mut HashSet::new());
    }
    Ok(Paintability { paintable, states_explored: memo.len(), strategy })
}

fn maximal_independent_subsets(line: &LineGraph, marked: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(line: &LineGraph, marked: &[usize], i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == marked.len() {
            let maximal = marked.iter().all(|&e| cur.contains(&e) || cur.iter().any(|&c| line.adjacent(c, e)));
            if maximal {
                out.push(cur.clone());
            }
            return;
        }
        let e = marked[i];
        if cur.iter().all(|&c| !line.adjacent(c, e)) {
            cur.push(e);
            rec(line, marked, i + 1, cur, out);
            cur.pop();
        }
        rec(line, marked, i + 1, cur, out);
    }
    rec(line, marked, 0, &mut Vec::new(), &mut out);
    out
}

fn solve(
    line: &LineGraph,
    state: &GameState,
    memo: &mut HashMap<GameState, bool>,
    choice: &mut HashMap<(GameState, Vec<usize>), Vec<usize>>,
) -> bool {
    if state.lister_won() {
        return false;
    }
    if state.painter_won() {
        return true;
    }
    if let Some(&v) = memo.get(state) {
        return v;
    }
    let alive = state.alive();
    let mut wins = true;
    for marked in subsets(&alive) {
        let reply = maximal_independent_subsets(line, &marked)
            .into_iter()
            .find(|sel| solve(line, &state.apply(&marked, sel), memo, choice));
        match reply {
            Some(sel) => {
                choice.insert((state.clone(), marked), sel);
            }
            None => {
                wins = false;
                break;
            }
        }
    }
    memo.insert(state.clone(), wins);
    wins
}

fn collect_strategy(
    state: &GameState,
    choice: &HashMap<(GameState, Vec<usize>), Vec<usize>>,
    out: &mut Vec<StrategyEntry>,
    seen: &mut HashSet<GameState>,
) {
    if state.painter_won() || !seen.insert(state.clone()) {
        return;
    }
    for marked in subsets(&state.alive()) {
        let selected = choice[&(state.clone(), marked.clone())].clone();
        out.push(StrategyEntry {
            budget: state.budget.clone(),
            multiplicity: state.multiplicity.clone(),
            marked: marked.clone(),
            selected: selected.clone(),
        });
        collect_strategy(&state.apply(&marked, &selected), choice, out, seen);
    }
}

/// Replays a solved strategy.
pub struct TablePainter {
    table: HashMap<(GameState, Vec<usize>), Vec<usize>>,
}

impl TablePainter {
    pub fn new(strategy: &[StrategyEntry]) -> Self {
        let table = strategy
            .iter()
            .map(|s| {
                let state = GameState { budget: s.budget.clone(), multiplicity: s.multiplicity.clone() };
                ((state, s.marked.clone()), s.selected.clone())
            })
            .collect();
        TablePainter { table }
    }
}

impl Painter for TablePainter {
    fn select(&mut self, state: &GameState, marked: &[usize]) -> Result<Vec<usize>, PaintError> {
        self.table
            .get(&(state.clone(), marked.to_vec()))
            .cloned()
            .ok_or_else(|| PaintError::StrategyFailure("position missing from the strategy table".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::orient::orient_theta;
    use crate::recognize::recognize_theta;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_edge_game() {
        let g = named::path(2);
        let d = LineDigraph::from_graph(&g, []).unwrap();
        let mut painter = KernelPainter { digraph: &d, certificate: None };
        let mut lister = RandomLister { rng: ChaCha8Rng::seed_from_u64(0) };
        let r = play_game(&g, &[1], 1, &mut lister, &mut painter).unwrap();
        assert_eq!(r.winner, Winner::Painter);
        assert_eq!(r.transcript, vec![Round { marked: vec![0], selected: vec![0] }]);
    }

    #[test]
    fn painter_move_examples() {
        let c4 = named::cycle(4);
        let d = LineDigraph::from_graph(&c4, [(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap();
        let state = GameState::new(&[2; 4], 1);
        let k = painter_move(&d, &state, &[0, 1, 2, 3], None).unwrap();
        assert_eq!(k.len(), 2);
        assert!(d.is_kernel(&[0, 1, 2, 3], &k));
        let star = named::star(3);
        let t = LineDigraph::from_graph(&star, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(painter_move(&t, &GameState::new(&[3; 3], 1), &[0, 1, 2], None).unwrap(), vec![2]);
        assert!(matches!(painter_move(&t, &GameState::new(&[3; 3], 1), &[], None), Err(PaintError::Protocol(_))));
    }

    #[test]
    fn c5_kernel_strategy_survives_all_listers() {
        let c5 = named::cycle(5);
        let sig = recognize_theta(&c5).unwrap();
        let o = orient_theta(&c5, &sig, 0, 3).unwrap();
        let f: Vec<usize> = (0..5).map(|e| o.digraph.outdegree(e) + 1).collect();
        let bad = kernel_strategy_counterexample(&c5, &o.digraph, &f, 1, Some(&o.certificate)).unwrap();
        assert!(bad.is_none());
        assert!(kernel_strategy_counterexample(&c5, &o.digraph, &[3; 5], 1, None).unwrap().is_none());
    }

    #[test]
    fn exact_solver_examples() {
        assert!(exhaustive_paintability(&named::path(3), &[2, 2], 1).unwrap().paintable);
        assert!(exhaustive_paintability(&named::cycle(4), &[2; 4], 1).unwrap().paintable);
        assert!(!exhaustive_paintability(&named::cycle(5), &[2; 5], 1).unwrap().paintable);
        assert!(exhaustive_paintability(&named::cycle(5), &[3; 5], 1).unwrap().paintable);
        assert!(matches!(exhaustive_paintability(&named::cycle(9), &[3; 9], 1), Err(PaintError::Size(_))));
    }

    #[test]
    fn strategy_replays() {
        let c4 = named::cycle(4);
        let solved = exhaustive_paintability(&c4, &[2; 4], 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let mut painter = TablePainter::new(&solved.strategy);
            let mut lister = RandomLister { rng: ChaCha8Rng::seed_from_u64(rng.gen()) };
            assert_eq!(play_game(&c4, &[2; 4], 1, &mut lister, &mut painter).unwrap().winner, Winner::Painter);
        }
    }

    #[test]
    fn tuple_mode() {
        let e = named::path(2);
        assert!(exhaustive_paintability(&e, &[2], 2).unwrap().paintable);
        assert!(!exhaustive_paintability(&e, &[1], 2).unwrap().paintable);
        let p = named::path(3);
        assert!(exhaustive_paintability(&p, &[4, 4], 2).unwrap().paintable);
        assert!(!exhaustive_paintability(&p, &[3, 3], 2).unwrap().paintable);
        assert!(exhaustive_paintability(&p, &[2, 4], 2).unwrap().paintable);
        assert!(!exhaustive_paintability(&p, &[2, 3], 2).unwrap().paintable);
    }
}
