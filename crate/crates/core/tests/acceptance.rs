//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_graphs, all_words, dec_all, enc_all, Oracle, W};
use pcg::dmnf::dm_normal_form_of;
use pcg::geq::{dominates, random_type12, tribes_from_solution, planted_instance, GeneralisedEquation};
use pcg::io::parse_tower;
use pcg::pcgraph::{CommutationGraph, EdgeTag};
use pcg::quadnf::{apply, check_normalization, normalize, parse_normal_shape, random_quadratic};
use pcg::repro::{embedding_bounds, figure2, width_table};
use pcg::towers::{Floor, FloorKind, GraphTower, TowerCase};
use pcg::words::{
    block_decomposition, dependent, equal, invert, is_irreducible, least_root, random_geodesic, GroupWord, Letter,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Outcome {
    ensure(t.elapsed() < limit, || format!("took {:.2?}, limit {limit:?}", t.elapsed()))
}

fn width_criterion() -> Outcome {
    let t = Instant::now();
    let table = width_table().map_err(|e| e.to_string())?;
    ensure(table.pass, || table.lines().join("; "))?;
    ensure(table.join_pairs == 75 * 75, || format!("{} join pairs", table.join_pairs))?;
    within(t, Duration::from_secs(1))
}

fn figure2_criterion() -> Outcome {
    let r = figure2().map_err(|e| e.to_string())?;
    ensure(r.pass, || r.diffs.join("; "))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Arc<CommutationGraph> {
    let mut g = CommutationGraph::edgeless(n, "g");
    let p = rng.gen_range(0.0..1.0);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b, EdgeTag::D).unwrap();
            }
        }
    }
    Arc::new(g)
}

/// Uniformly chosen linearisation of the trace of `w`, built greedily.
fn shuffle(g: &CommutationGraph, w: &[Letter], rng: &mut ChaCha8Rng) -> Vec<Letter> {
    let mut left: Vec<Letter> = w.to_vec();
    let mut out = Vec::with_capacity(w.len());
    while !left.is_empty() {
        let free: Vec<usize> = (0..left.len()).filter(|&j| (0..j).all(|i| !dependent(g, left[i], left[j]))).collect();
        out.push(left.remove(free[rng.gen_range(0..free.len())]));
    }
    out
}

fn dm_criterion() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..10_000 {
        let n = rng.gen_range(1..=6);
        let g = random_graph(&mut rng, n);
        let len = rng.gen_range(0..=20);
        let w = random_geodesic(&g, len, &mut rng);
        let nf = dm_normal_form_of(&g, &w).map_err(|e| e.to_string())?;
        let gw = GroupWord::new(g.clone(), w.clone()).unwrap();
        ensure(equal(&gw, &gw.with_letters(nf.clone())).unwrap(), || format!("sample {k}: nf changes the element"))?;
        let nf_inv = dm_normal_form_of(&g, &invert(&w)).map_err(|e| e.to_string())?;
        ensure(nf_inv == invert(&nf), || format!("sample {k}: nf(w⁻¹) ≠ nf(w)⁻¹"))?;
        let nf_shuffled = dm_normal_form_of(&g, &shuffle(&g, &w, &mut rng)).map_err(|e| e.to_string())?;
        ensure(nf_shuffled == nf, || format!("sample {k}: nf depends on the shuffle"))?;
    }
    within(t, Duration::from_secs(30))
}

fn embedding_criterion() -> Outcome {
    let r = embedding_bounds(0, 1000, 100).map_err(|e| e.to_string())?;
    ensure(r.pass && r.sandwich_checks == 1000 && r.displacement_checks == 100, || r.failures.join("; "))
}

/// Library and oracle agree on one graph for every word of length ≤ 5.
fn word_engine_on(g: &Arc<CommutationGraph>, words: &[W]) -> Outcome {
    let o = Oracle::new(g);
    let short: Vec<(W, GroupWord)> = words
        .iter()
        .filter(|w| w.len() <= 2)
        .map(|w| (o.canon(w), GroupWord::new(g.clone(), dec_all(w)).unwrap()))
        .collect();
    let mut seen: HashMap<W, ()> = HashMap::new();
    for w in words {
        let canon = o.canon(w);
        let gw = GroupWord::new(g.clone(), dec_all(w)).unwrap();
        let show = || format!("{} over {:?}", gw, g.edges());
        for (sc, sw) in &short {
            ensure(equal(&gw, sw).unwrap() == (&canon == sc), || format!("equal({}, {sw}) for {}", gw, show()))?;
        }
        if canon.is_empty() || seen.insert(canon.clone(), ()).is_some() {
            continue;
        }
        let (oroot, oexp) = o.least_root(w).unwrap();
        let (root, exp) = least_root(&gw).map_err(|e| e.to_string())?;
        ensure(exp == oexp && enc_all(root.canonical()) == oroot, || format!("least_root of {}: {root}^{exp}", show()))?;
        ensure(is_irreducible(&gw).unwrap() == o.irreducible(w), || format!("is_irreducible of {}", show()))?;
        let bd = block_decomposition(&gw);
        let comps = o.components(&o.alphabet(w));
        let parts: BTreeSet<BTreeSet<usize>> = bd.partition.iter().cloned().collect();
        ensure(parts == comps.iter().cloned().collect(), || format!("block partition of {}", show()))?;
        for (b, p) in bd.blocks.iter().zip(&bd.partition) {
            ensure(o.canon(&enc_all(b.letters())) == o.project(w, p), || format!("block {b} of {}", show()))?;
        }
    }
    Ok(())
}

fn word_engine_criterion() -> Outcome {
    let t = Instant::now();
    let words = all_words(4, 5);
    for g in all_graphs(4) {
        word_engine_on(&Arc::new(g), &words)?;
    }
    within(t, Duration::from_secs(60))
}

/// Transport, tribe dominance and minimal-tribe monotonicity along one run.
fn check_steps(eq: &GeneralisedEquation, h: &[GroupWord]) -> Outcome {
    let g = h[0].graph().clone();
    let steps = eq.complete_entire_transformation(Some(h), 20).map_err(|e| e.to_string())?;
    ensure(!steps.is_empty(), || "no transformation step applied".into())?;
    let (mut cur, mut sol) = (eq.clone(), h.to_vec());
    let none = BTreeSet::new();
    for (n, s) in steps.iter().enumerate() {
        let next = s.solution.clone().ok_or("step lost the solution")?;
        ensure(s.equation.check_solution(&next).unwrap(), || format!("step {n}: transported tuple is not a solution"))?;
        let back = GeneralisedEquation::pull_back(&s.item_map, &next).map_err(|e| e.to_string())?;
        ensure(back.iter().zip(&sol).all(|(a, b)| a.canonical() == b.canonical()), || format!("step {n}: pull-back differs"))?;
        let (told, tnew) = (tribes_from_solution(&sol), tribes_from_solution(&next));
        for (i, img) in s.item_map.iter().enumerate() {
            for sym in &img.0 {
                let j: usize = sym.name[1..].parse().map_err(|_| format!("item name {}", sym.name))?;
                ensure(dominates(&g, &tnew[&j], &told[&(i + 1)]).unwrap(), || format!("step {n}: h{j} does not dominate old h{}", i + 1))?;
            }
        }
        let old_min = cur.minimal_tribes(&g, &told, &none).map_err(|e| e.to_string())?;
        let new_min = s.equation.minimal_tribes(&g, &tnew, &none).map_err(|e| e.to_string())?;
        for m in &new_min {
            ensure(old_min.iter().any(|o| dominates(&g, m, o).unwrap()), || format!("step {n}: minimal tribe {m:?} dominates none before"))?;
        }
        cur = s.equation.clone();
        sol = next;
    }
    Ok(())
}

fn geq_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..50 {
        let (eq, h) = planted_instance(&mut rng);
        check_steps(&eq, &h).map_err(|e| format!("instance {k}: {e}"))?;
    }
    for k in 0..5 {
        let eq = random_type12(&mut rng, 4 + k, k % 2 == 1, 0.2);
        ensure(eq.check_round_trip().unwrap_or(false), || format!("round trip fails on {eq:?}"))?;
    }
    Ok(())
}

fn quadratic_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..100 {
        let nvars = rng.gen_range(1..=8);
        let ncoeffs = rng.gen_range(0..=4);
        let letters = rng.gen_range(0..=6);
        let w = random_quadratic(&mut rng, nvars, ncoeffs, letters, 0.3);
        let n = normalize(&w).map_err(|e| format!("{}: {e}", w.to_text()))?;
        let show = || format!("sample {k}: {} → {}", w.to_text(), n.nf.to_text());
        parse_normal_shape(&n.nf).map_err(|e| format!("{}: {e}", show()))?;
        ensure(check_normalization(&w, &n).unwrap(), || format!("{}: auto(W) ≠ nf", show()))?;
        ensure(equal(&apply(&n.auto, &w).unwrap().as_group_word(), &n.nf.as_group_word()).unwrap(), || format!("{}: apply differs", show()))?;
        for c in (0..w.graph.len()).filter(|&c| !w.is_variable(c)) {
            ensure(n.auto.image(c).letters() == [Letter::pos(c)], || format!("{}: coefficient moved", show()))?;
        }
        for x in 0..w.graph.len() {
            let back = n.inverse.apply(n.auto.image(x)).unwrap();
            ensure(back.canonical() == [Letter::pos(x)], || format!("{}: inverse∘auto moves generator {x}", show()))?;
        }
    }
    Ok(())
}

/// Text after `T^{l-1} *_{` must have the shape of its case.
fn case_shape(case: TowerCase, level: usize, fresh: &[String], text: &str) -> bool {
    let xs = fresh.join(", ");
    let Some(rest) = text.strip_prefix(&format!("T^{} *_{{", level - 1)) else { return false };
    match case {
        TowerCase::A1 => rest.ends_with(&format!(" × ⟨{xs}⟩)")),
        TowerCase::A2 | TowerCase::B1 | TowerCase::B2 => rest.ends_with(&format!(" × ⟨{xs} | [x_i,x_j]=1⟩)")),
        TowerCase::C => rest.contains(&format!("{xs} | ")) && rest.contains("} (⟨") && rest.ends_with(")"),
    }
}

fn tower_criterion() -> Outcome {
    let load = |text: &str| parse_tower(text).map_err(|e| e.to_string());
    let mixed = load(include_str!("../../../data/tower.json"))?;
    let basic = load(include_str!("../../../data/tower_basic.json"))?;
    let mut kinds = BTreeSet::new();
    let mut cases = BTreeSet::new();
    for t in [&mixed, &basic] {
        for (l, f) in t.floors.iter().enumerate() {
            kinds.insert(match f.kind {
                FloorKind::Basic => "basic",
                FloorKind::AbelianRoot { .. } | FloorKind::AbelianBasic => "abelian",
                FloorKind::Quadratic { .. } => "quadratic",
            });
            let p = t.presentation(l + 1).map_err(|e| e.to_string())?;
            cases.insert(p.case.to_string());
            ensure(case_shape(p.case, l + 1, &f.fresh, &p.decomposition), || format!("case {} text `{}`", p.case, p.decomposition))?;
            p.presentation.validate().map_err(|e| e.to_string())?;
        }
        for (l, g) in t.graphs.iter().enumerate() {
            g.check_ec_property().map_err(|e| format!("Γ_{l}: {e}"))?;
        }
        t.retraction_check().map_err(|e| e.to_string())?;
    }
    ensure(kinds.len() == 3, || format!("floor kinds {kinds:?}"))?;
    ensure(cases.len() == 4, || format!("cases {cases:?}"))?;
    ensure(basic.extra_relations().is_empty(), || "basic tower has extra relations".into())?;
    let k22 = basic.graphs[0].clone();
    let mut only_basic = GraphTower::new(k22).map_err(|e| e.to_string())?;
    for (l, k) in [vec!["a1", "a2"], vec!["b1", "b2", "x1_1"]].iter().enumerate() {
        let f = Floor { kind: FloorKind::Basic, fresh: vec![format!("x{}_1", l + 1)], k: k.iter().map(|s| s.to_string()).collect() };
        only_basic = only_basic.add_floor(f).map_err(|e| e.to_string())?;
    }
    ensure(only_basic.extra_relations().is_empty(), || "basic-only tower has extra relations".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("width table", width_criterion),
        ("worked equation reproduction", figure2_criterion),
        ("normal-form laws", dm_criterion),
        ("embedding constants", embedding_criterion),
        ("word-engine oracle equivalence", word_engine_criterion),
        ("generalised-equation laws", geq_criterion),
        ("quadratic normalization", quadratic_criterion),
        ("tower validation", tower_criterion),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let t = Instant::now();
        match f() {
            Ok(()) => println!("criterion {} ({name}): PASS [{:.2?}]", k + 1, t.elapsed()),
            Err(e) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{:.2?}] {e}", k + 1, t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
