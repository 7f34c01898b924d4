//! Randomized properties checked against the brute-force oracles.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oddcycle::color::{backtrack_color, bbs_color, choose_edges, chromatic_index, is_proper_coloring, ListAssignment};
use oddcycle::digraph::Demand;
use oddcycle::gen::{connected_graphs, random_gstar, random_lists};
use oddcycle::io::{parse_graph, write_graph, Format};
use oddcycle::named;
use oddcycle::orient::{orient_gstar, orient_gstar_at};
use oddcycle::paint::{exhaustive_paintability, play_game, RandomLister, TablePainter, Winner};
use oddcycle::recognize::{gstar_oracle, in_gstar};
use oddcycle::verify::{check_choosable, check_kernel_perfect};
use oddcycle::Graph;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=9).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&p, _)| p);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn formats_round_trip(g in arb_graph()) {
        for format in [Format::Graph6, Format::Edgelist] {
            let text = write_graph(&g, format);
            let back = parse_graph(&text, format).unwrap();
            prop_assert_eq!(back.vertex_count(), g.vertex_count());
            let mut a: Vec<_> = g.edges().to_vec();
            let mut b: Vec<_> = back.edges().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn recognition_matches_oracle(g in arb_graph()) {
        let fast = in_gstar(&g);
        let oracle = gstar_oracle(&g, usize::MAX).unwrap();
        prop_assert_eq!(fast.in_gstar, oracle.is_none());
        if fast.in_g1 {
            prop_assert!(fast.in_gstar);
        }
        if let Some(w) = fast.witness {
            prop_assert!(!fast.in_gstar);
            let shared = w.cycle1.iter().filter(|e| w.cycle2.contains(e)).count();
            prop_assert!(shared >= 2);
        }
    }

    #[test]
    fn orientations_are_kernel_perfect(seed in any::<u64>(), delta in 2usize..=5) {
        let mut rng = seeded(seed);
        let g = random_gstar(&mut rng, delta, 14);
        let t = g.max_degree().max(4);
        let o = orient_gstar(&g, t).unwrap();
        let kp = check_kernel_perfect(&o.digraph).unwrap().kernel_perfect;
        prop_assert!(kp);
        prop_assert!(o.digraph.check_demand(&Demand::uniform(&g, t)).is_ok());
        prop_assert!(o.certificate.covers_exactly(g.edge_count()));
        prop_assert!(o.certificate.respects_order(&o.digraph));
        let first = g.non_isolated().next();
        if let Some(v) = first {
            let o = orient_gstar_at(&g, t, v).unwrap();
            let demand = Demand::f_kv(&g, t, v);
            prop_assert!(o.digraph.check_demand(&demand).is_ok());
        }
    }

    #[test]
    fn kernel_rounds_color_from_outdegree_lists(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let g = random_gstar(&mut rng, 5, 18);
        let o = orient_gstar(&g, g.max_degree().max(4)).unwrap();
        let sizes: Vec<usize> = o.digraph.outdegrees().iter().map(|d| d + 1).collect();
        let lists = random_lists(&mut rng, &sizes, 10);
        let c = bbs_color(&g, &o.digraph, &lists, Some(&o.certificate)).unwrap();
        prop_assert!(is_proper_coloring(&g, &c.colors, Some(&lists)));
        // without the certificate the kernels come from plain search
        let c = bbs_color(&g, &o.digraph, &lists, None).unwrap();
        prop_assert!(is_proper_coloring(&g, &c.colors, Some(&lists)));
    }

    #[test]
    fn choosability_equals_chromatic_index(seed in any::<u64>(), delta in 2usize..=4, universe in 4u32..=8) {
        let mut rng = seeded(seed);
        let g = random_gstar(&mut rng, delta, 12);
        let mut sizes = vec![0; g.edge_count()];
        for comp in g.components() {
            let mut es: Vec<usize> = comp.iter().flat_map(|&v| g.incident_edges(v)).collect();
            es.sort_unstable();
            es.dedup();
            if es.is_empty() {
                continue;
            }
            let sub = g.edge_subgraph(&es).graph;
            let chi = chromatic_index(&sub);
            // the claimed index is attained by the exhaustive colorer
            prop_assert!(backtrack_color(&sub, &ListAssignment::uniform(sub.edge_count(), chi as u32)).is_some());
            if chi > 1 {
                let fewer = ListAssignment::uniform(sub.edge_count(), chi as u32 - 1);
                prop_assert!(backtrack_color(&sub, &fewer).is_none());
            }
            es.iter().for_each(|&e| sizes[e] = chi);
        }
        let universe = universe.max(*sizes.iter().max().unwrap_or(&1) as u32);
        let lists = random_lists(&mut rng, &sizes, universe);
        let c = choose_edges(&g, &lists).unwrap();
        prop_assert!(is_proper_coloring(&g, &c.colors, Some(&lists)));
    }
}

/// Paintability implies choosability on every small connected graph and
/// budget vector with entries in 1..=3. Lists are drawn from at most seven
/// colors to keep the enumeration small.
#[test]
fn paintable_implies_choosable() {
    let mut checked = 0;
    for n in 2..=4 {
        for g in connected_graphs(n) {
            let m = g.edge_count();
            if m > 4 {
                continue;
            }
            for code in 0..3usize.pow(m as u32) {
                let f: Vec<usize> = (0..m).map(|i| code / 3usize.pow(i as u32) % 3 + 1).collect();
                let paint = exhaustive_paintability(&g, &f, 1).unwrap();
                if paint.paintable {
                    let universe: u32 = f.iter().sum::<usize>() as u32;
                    let choose = check_choosable(&g, &f, universe.min(7), u64::MAX).unwrap();
                    assert!(choose.choosable, "{:?} with f = {f:?}", g.edges());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

/// The diamond is f_{3,v}-paintable at a tip even though no kernel-perfect
/// orientation meets that budget; the solved strategy survives replay.
#[test]
fn diamond_tip_budget_is_paintable() {
    let g = named::diamond();
    let v = (0..g.vertex_count()).find(|&x| g.degree(x) == 2).unwrap();
    let f = Demand::f_kv(&g, 3, v).values;
    let solved = exhaustive_paintability(&g, &f, 1).unwrap();
    assert!(solved.paintable);
    let mut rng = seeded(3);
    for _ in 0..200 {
        let mut lister = RandomLister { rng: seeded(rand::Rng::gen(&mut rng)) };
        let mut painter = TablePainter::new(&solved.strategy);
        let record = play_game(&g, &f, 1, &mut lister, &mut painter).unwrap();
        assert_eq!(record.winner, Winner::Painter);
    }
    // one less color at a hub edge is too few
    let mut short = f.clone();
    let hub = (0..g.edge_count()).find(|&e| !g.is_incident(e, v)).unwrap();
    short[hub] -= 1;
    assert!(!exhaustive_paintability(&g, &short, 1).unwrap().paintable);
}
