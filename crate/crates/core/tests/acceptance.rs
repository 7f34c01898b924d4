//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oddcycle::color::{
    bbs_color, diamond_color, diamond_labels, is_proper_coloring, is_proper_tuple_coloring, tuple_color,
};
use oddcycle::digraph::{Demand, Oriented};
use oddcycle::gen::{connected_graphs, random_gstar, random_lists};
use oddcycle::orient::{orient_gstar, orient_k4};
use oddcycle::paint::{exhaustive_paintability, kernel_strategy_counterexample};
use oddcycle::recognize::{gstar_oracle, in_gstar};
use oddcycle::verify::{
    check_choosable, check_kernel_perfect, diamond_sweep, maffray_experiment, search_orientation, verify_nok4minus,
    verify_windmill_sharpness, SearchMode,
};
use oddcycle::{named, Graph};

const SEED: u64 = 0x0DDC_7C1E;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Recognition results over every connected graph on up to seven vertices,
/// computed once and shared by the first two criteria.
struct Census {
    graphs: u64,
    members: u64,
    g1: u64,
    mismatches: Vec<String>,
    g1_outside: Vec<String>,
}

fn census() -> Census {
    let mut c = Census { graphs: 0, members: 0, g1: 0, mismatches: Vec::new(), g1_outside: Vec::new() };
    for n in 1..=7 {
        for g in connected_graphs(n) {
            c.graphs += 1;
            let fast = in_gstar(&g);
            let oracle = gstar_oracle(&g, usize::MAX).expect("no cycle budget").is_none();
            c.members += u64::from(fast.in_gstar);
            c.g1 += u64::from(fast.in_g1);
            if fast.in_gstar != oracle && c.mismatches.len() < 3 {
                c.mismatches.push(format!("{:?}", g.edges()));
            }
            if fast.in_g1 && !fast.in_gstar && c.g1_outside.len() < 3 {
                c.g1_outside.push(format!("{:?}", g.edges()));
            }
        }
    }
    c
}

fn criterion1(c: &Census, secs: f64) -> Verdict {
    ensure(c.mismatches.is_empty(), format!("disagreements, e.g. {:?}", c.mismatches))?;
    ensure(secs < 300.0, format!("took {secs:.1}s"))?;
    Ok(format!("{} graphs, {} members, agreement 100%, {secs:.1}s", c.graphs, c.members))
}

fn criterion2(c: &Census) -> Verdict {
    ensure(c.g1_outside.is_empty(), format!("in_g1 but not in_gstar: {:?}", c.g1_outside))?;
    Ok(format!("{} graphs flagged in_g1, all in_gstar", c.g1))
}

fn criterion3() -> Verdict {
    let g = named::complete(4);
    let v = 0;
    let o = orient_k4(&g, v).map_err(|e| e.to_string())?;
    let d = &o.digraph;
    let kp = check_kernel_perfect(d).map_err(|e| e.to_string())?;
    ensure(kp.kernel_perfect, "not kernel-perfect")?;
    ensure(d.max_outdegree() == 3, format!("max outdegree {}", d.max_outdegree()))?;
    let at_v = g.incident_edges(v).iter().map(|&e| d.outdegree(e)).max().unwrap_or(0);
    ensure(at_v <= 2, format!("outdegree {at_v} at the distinguished vertex"))?;
    let both = d.bidirected_pairs().len();
    ensure(both == 1, format!("{both} bidirected pairs"))?;
    Ok(format!("{} arcs, max outdegree 3, <= 2 at v, 1 bidirected pair", d.arc_count()))
}

/// The 200 seeded instances shared by criteria 4, 5 and 9.
fn instances() -> Vec<(Graph, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..200)
        .map(|_| {
            let g = random_gstar(&mut rng, 5, 18);
            let t = g.max_degree().max(4);
            (g, t)
        })
        .collect()
}

fn criterion4(inst: &[(Graph, usize)], out: &mut Vec<Oriented>) -> Verdict {
    let start = Instant::now();
    for (i, (g, t)) in inst.iter().enumerate() {
        let o = orient_gstar(g, *t).map_err(|e| format!("instance {i}: {e}"))?;
        let kp = check_kernel_perfect(&o.digraph).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(kp.kernel_perfect, format!("instance {i}: not kernel-perfect"))?;
        o.digraph.check_demand(&Demand::uniform(g, *t)).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(o.digraph.max_outdegree() < *t, format!("instance {i}: outdegree bound"))?;
        out.push(o);
    }
    let edges: usize = inst.iter().map(|(g, _)| g.edge_count()).sum();
    Ok(format!("200/200 oriented and kernel-perfect ({edges} edges total), {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion5(inst: &[(Graph, usize)], oriented: &[Oriented]) -> Verdict {
    ensure(oriented.len() == inst.len(), "criterion 4 did not produce all orientations")?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    for (i, ((g, _), o)) in inst.iter().zip(oriented).enumerate() {
        let sizes: Vec<usize> = o.digraph.outdegrees().iter().map(|d| d + 1).collect();
        let lists = random_lists(&mut rng, &sizes, 10);
        let c = bbs_color(g, &o.digraph, &lists, Some(&o.certificate)).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(is_proper_coloring(g, &c.colors, Some(&lists)), format!("instance {i}: improper"))?;
    }
    Ok("200/200 proper in-list colorings".into())
}

fn criterion6() -> Verdict {
    let start = Instant::now();
    let h = named::diamond();
    let v = (0..h.vertex_count()).find(|&x| h.degree(x) == 2).expect("tip");
    let three =
        search_orientation(&h, &Demand::f_kv(&h, 3, v), SearchMode::Raw, u64::MAX).map_err(|e| e.to_string())?;
    let four = search_orientation(&h, &Demand::f_kv(&h, 4, v), SearchMode::Raw, u64::MAX).map_err(|e| e.to_string())?;
    let log = verify_nok4minus().map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(three.orientations_scanned == 6561, format!("scanned {}", three.orientations_scanned))?;
    ensure(three.found == 0, format!("f3 found {}", three.found))?;
    ensure(four.found >= 1, "no f4 orientation")?;
    ensure(log.certified, "proof log not certified")?;
    ensure(secs < 1.0, format!("took {secs:.2}s"))?;
    Ok(format!("f3: 6561 scanned, 0 found; f4: {} found; {secs:.3}s", four.found))
}

fn criterion7() -> Verdict {
    let log = verify_windmill_sharpness().map_err(|e| e.to_string())?;
    ensure(
        log.certified,
        format!("failed steps: {:?}", log.steps.iter().filter(|s| !s.passed).map(|s| &s.name).collect::<Vec<_>>()),
    )?;
    let g = named::three_diamond_windmill();
    let o = orient_gstar(&g, 4).map_err(|e| e.to_string())?;
    let kp = check_kernel_perfect(&o.digraph).map_err(|e| e.to_string())?;
    ensure(kp.kernel_perfect && o.digraph.max_outdegree() <= 3, "t = 4 orientation invalid")?;
    Ok(format!("{} proof steps certified; t = 4 orientation kernel-perfect", log.steps.len()))
}

fn criterion8() -> Verdict {
    let start = Instant::now();
    let sweep = diamond_sweep(7);
    ensure(sweep.failures == 0, format!("{} failing assignments", sweep.failures))?;
    let g = named::diamond();
    let v = (0..g.vertex_count()).find(|&x| g.degree(x) == 2).expect("tip");
    let sizes: Vec<usize> = (0..g.edge_count()).map(|e| if g.is_incident(e, v) { 2 } else { 3 }).collect();
    let report = check_choosable(&g, &sizes, 7, u64::MAX).map_err(|e| e.to_string())?;
    ensure(report.choosable, format!("bad assignment {:?}", report.bad_assignment))?;
    // the high-level entry point on a random sample
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let labels = diamond_labels(&g, v).map_err(|e| e.to_string())?;
    for _ in 0..1000 {
        let lists = random_lists(&mut rng, &sizes, 7);
        let c = diamond_color(&g, v, &lists).map_err(|e| e.to_string())?;
        ensure(is_proper_coloring(&g, &c.colors, Some(&lists)), format!("improper on {labels:?}"))?;
    }
    Ok(format!(
        "sweep {} assignments, 0 failures; exhaustive choosability {} assignments; {:.1}s",
        sweep.assignments,
        report.assignments_checked,
        start.elapsed().as_secs_f64()
    ))
}

fn criterion9(inst: &[(Graph, usize)], oriented: &[Oriented]) -> Verdict {
    ensure(oriented.len() == inst.len(), "criterion 4 did not produce all orientations")?;
    let mut games = 0;
    for (i, ((g, _), o)) in inst.iter().zip(oriented).enumerate() {
        if g.edge_count() > 8 {
            continue;
        }
        let f: Vec<usize> = o.digraph.outdegrees().iter().map(|d| d + 1).collect();
        let cex = kernel_strategy_counterexample(g, &o.digraph, &f, 1, Some(&o.certificate))
            .map_err(|e| format!("instance {i}: {e}"))?;
        ensure(cex.is_none(), format!("instance {i}: Lister wins"))?;
        games += 1;
    }
    let c5 = exhaustive_paintability(&named::cycle(5), &[2; 5], 1).map_err(|e| e.to_string())?;
    let c4 = exhaustive_paintability(&named::cycle(4), &[2; 4], 1).map_err(|e| e.to_string())?;
    ensure(!c5.paintable, "C5 with f = 2 reported paintable")?;
    ensure(c4.paintable, "C4 with f = 2 reported unpaintable")?;
    ensure(games > 0, "no instance with at most 8 edges")?;
    Ok(format!("kernel painter unbeaten on {games} instances; C5 f=2 false, C4 f=2 true"))
}

fn criterion10() -> Verdict {
    let g = named::bowtie();
    let o = orient_gstar(&g, 4).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    for trial in 0..100 {
        let universe = rng.gen_range(8..=16);
        let lists = random_lists(&mut rng, &vec![8; g.edge_count()], universe);
        let c =
            tuple_color(&g, &o.digraph, &lists, 2, Some(&o.certificate)).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(
            is_proper_tuple_coloring(&g, &c.sets, &lists, 2),
            format!("trial {trial}: not a proper 2-tuple coloring"),
        )?;
    }
    Ok("100/100 proper disjoint 2-set colorings".into())
}

fn criterion11() -> Verdict {
    let r = maffray_experiment(SEED, 10_000, 12).map_err(|e| e.to_string())?;
    ensure(r.disagreements == 0, format!("{} disagreements with the clique-sink criterion", r.disagreements))?;
    Ok(format!(
        "{} trials, {} kernel-perfect, 0 disagreements over all cliques (vertex cliques only: {} disagreements)",
        r.trials, r.kernel_perfect, r.vertex_clique_disagreements
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, v: Verdict| match v {
        Ok(msg) => println!("criterion {n:>2} PASS  {name}: {msg}"),
        Err(msg) => {
            failed += 1;
            println!("criterion {n:>2} FAIL  {name}: {msg}");
        }
    };
    let start = Instant::now();
    let c = census();
    let secs = start.elapsed().as_secs_f64();
    report(1, "recognition agrees with cycle oracle (n <= 7)", criterion1(&c, secs));
    report(2, "in_g1 implies in_gstar", criterion2(&c));
    report(3, "K4 orientation", criterion3());
    let inst = instances();
    let mut oriented = Vec::new();
    report(4, "random class members orient", criterion4(&inst, &mut oriented));
    report(5, "kernel-round coloring", criterion5(&inst, &oriented));
    report(6, "diamond orientation search", criterion6());
    report(7, "windmill sharpness", criterion7());
    report(8, "diamond choosability", criterion8());
    report(9, "kernel painter", criterion9(&inst, &oriented));
    report(10, "2-tuple coloring of the bowtie", criterion10());
    report(11, "clique-sink criterion", criterion11());
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
