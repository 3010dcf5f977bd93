//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//! Criteria known to be unattainable are listed in `EXPECTED_FAILURES` with
//! the reason; the test fails if any other criterion fails, or if one of
//! those starts passing.

use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use genuslab::automata::{Dfa, LanguageFamily};
use genuslab::bounds::{complete_graph_genus, genus_lower_bound, hierarchy_genus, rho};
use genuslab::decide::{class_membership, decide_genus, two_letter_nonplanar_certificate, ClassMembership};
use genuslab::embedding::{face_census_genus, genus_exact, planar, trace_faces, RotationSystem, WitnessClaim};
use genuslab::emulator::{
    fibered_product, lift_cycle, lift_to_automaton, random_fiber_sizes, random_tight_emulator,
    search_min_genus_emulator, EmulatorMap, SearchOutcome,
};
use genuslab::fixtures::{cascade_trie, complete_graph, torus_rotation, z6_planar_emulator};
use genuslab::graphs::{girth, simplify, underlying_multigraph, CycleWitness, Multigraph, SimpleDigraph};
use genuslab::Budget;

const MINIMIZE_LIMIT: Duration = Duration::from_secs(1);
const GENUS_LIMIT: Duration = Duration::from_secs(60);
const ZMOD5_LIMIT: Duration = Duration::from_secs(300);
const SHUFFLE_LIMIT: Duration = Duration::from_secs(60);
const Z6_SEARCH_NODES: u64 = 1_000_000_000;
const ORACLE_GRAPHS: usize = 200;
const ORACLE_MAX_DARTS: usize = 14;
const ORACLE_MAX_ROTATIONS: u64 = 20_000;
const CENSUS_SAMPLES: usize = 100;
const GIRTH_SAMPLES: usize = 500;
const LIFT_SAMPLES: usize = 500;
const PRODUCT_SAMPLES: usize = 100;

/// The minimal automaton of the generated two-letter hierarchy automaton
/// has 18 states, not 30: letter 1 identifies (i, j) with (i + 3, j) on
/// every row j ≠ 0, and the collapsed rows carry letter-0 triangles. Its
/// girth is 3, so the language is not in the class with threshold 5.
const EXPECTED_FAILURES: &[usize] = &[13];

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gen(f: LanguageFamily) -> Dfa {
    f.generate().expect("valid family")
}

fn zmod(modulus: u32, letters: &[u32]) -> Dfa {
    gen(LanguageFamily::Zmod {
        modulus,
        letters: letters.to_vec(),
    })
}

fn digraph(a: &Dfa) -> SimpleDigraph {
    simplify(&underlying_multigraph(a)).expect("oriented")
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, format!("{what} took {t:?}, limit {limit:?}"))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let z5 = zmod(5, &[0, 1, 2]).minimize();
    let z6 = zmod(6, &[0, 1, 2, 3, 4, 5]).minimize();
    let sh = gen(LanguageFamily::Shuffle { n: 4, p: 3 }).minimize();
    within(start, MINIMIZE_LIMIT, "minimization")?;
    ensure(z5.num_states() == 5, format!("|A_min(Z5)| = {}", z5.num_states()))?;
    ensure(z6.num_states() == 6, format!("|A_min(Z6)| = {}", z6.num_states()))?;
    ensure(sh.num_states() == 12, format!("|A_min(L43)| = {}", sh.num_states()))?;
    ensure(sh.num_transitions() == 24, format!("{} transitions", sh.num_transitions()))?;
    Ok("5, 6 and 12 states (24 transitions)".into())
}

fn criterion_2() -> Check {
    ensure(rho(2).ok() == Some(5), "rho(2)")?;
    ensure(rho(3).ok() == Some(4), "rho(3)")?;
    for m in 4..=10 {
        ensure(rho(m).ok() == Some(3), format!("rho({m})"))?;
    }
    Ok("rho table exact".into())
}

/// Minimum genus over every rotation system, with its own face tracing.
fn brute_force_genus(g: &Multigraph) -> usize {
    let n = g.num_vertices();
    let e = g.num_edges();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, edge) in g.edges().iter().enumerate() {
        at[edge.u].push(2 * i);
        at[edge.v].push(2 * i + 1);
    }
    let components = g.components().len();
    let isolated = at.iter().filter(|l| l.is_empty()).count();
    let mut best = usize::MAX;
    let mut orders = at.clone();
    fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
        if xs.len() <= 1 {
            return vec![xs.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..xs.len() {
            let mut rest = xs.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    // fixing the first dart at each vertex removes cyclic rotations
    let choices: Vec<Vec<Vec<usize>>> = at
        .iter()
        .map(|l| match l.split_first() {
            None => vec![Vec::new()],
            Some((&first, rest)) => permutations(rest)
                .into_iter()
                .map(|mut p| {
                    p.insert(0, first);
                    p
                })
                .collect(),
        })
        .collect();
    let mut idx = vec![0; n];
    loop {
        for v in 0..n {
            orders[v].clone_from(&choices[v][idx[v]]);
        }
        let mut next = vec![0; 2 * e];
        for l in &orders {
            for (i, &d) in l.iter().enumerate() {
                next[d] = l[(i + 1) % l.len()];
            }
        }
        let mut seen = vec![false; 2 * e];
        let mut faces = 0;
        for s in 0..2 * e {
            if seen[s] {
                continue;
            }
            faces += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = next[d ^ 1];
            }
        }
        let twice = 2 * components + e - n - faces - isolated;
        best = best.min(twice / 2);
        let Some(v) = (0..n).find(|&v| idx[v] + 1 < choices[v].len()) else {
            return best;
        };
        idx[v] += 1;
        idx[..v].iter_mut().for_each(|i| *i = 0);
    }
}

fn rotation_count(g: &Multigraph) -> u64 {
    (0..g.num_vertices())
        .map(|v| (1..g.degree(v).max(1) as u64).product::<u64>())
        .product()
}

fn criterion_3() -> Check {
    let mut rng = StdRng::seed_from_u64(31);
    let mut checked = 0;
    while checked < ORACLE_GRAPHS {
        let n = rng.gen_range(1..=6);
        let mut g = Multigraph::new(n);
        for v in 1..n {
            g.add_edge(rng.gen_range(0..v), v, false).unwrap();
        }
        let extra = rng.gen_range(0..=(ORACLE_MAX_DARTS / 2).saturating_sub(n - 1));
        for _ in 0..extra {
            g.add_edge(rng.gen_range(0..n), rng.gen_range(0..n), false).unwrap();
        }
        if rotation_count(&g) > ORACLE_MAX_ROTATIONS {
            continue;
        }
        let r = genus_exact(&g, &mut Budget::unlimited());
        let expected = brute_force_genus(&g);
        ensure(r.exact && r.upper == expected, format!("oracle {expected}, got {r:?} on {g:?}"))?;
        checked += 1;
    }
    let k33 = Multigraph::from_edges(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap();
    for (name, g, expected) in [
        ("K4", complete_graph(4), 0),
        ("K5", complete_graph(5), 1),
        ("K3,3", k33, 1),
        ("K6", complete_graph(6), 1),
    ] {
        let start = Instant::now();
        let r = genus_exact(&g, &mut Budget::unlimited());
        within(start, GENUS_LIMIT, name)?;
        ensure(r.exact && r.upper == expected, format!("{name}: {r:?}"))?;
        r.witness.unwrap().verify().map_err(|e| e.to_string())?;
    }
    Ok(format!("{checked} corpus graphs match the exhaustive minimum; K4, K5, K3,3, K6 = 0, 1, 1, 1"))
}

fn criterion_4() -> Check {
    let mut rng = StdRng::seed_from_u64(4);
    for i in 0..CENSUS_SAMPLES {
        let k = 2 + i % 4;
        let a = zmod(k as u32, &(0..k as u32).collect::<Vec<_>>());
        let g = underlying_multigraph(&a);
        let w = trace_faces(&g, &RotationSystem::random(&g, &mut rng)).map_err(|e| e.to_string())?;
        let by_census = face_census_genus(k, k, &w.census).map_err(|e| e.to_string())?;
        ensure(
            by_census == Rational64::from_integer(w.genus as i64),
            format!("k = {k}: census gives {by_census}, traced {}", w.genus),
        )?;
    }
    Ok(format!("{CENSUS_SAMPLES} random rotations agree exactly"))
}

fn criterion_5() -> Check {
    for k in 4..=50u64 {
        let h = hierarchy_genus(k).map_err(|e| e.to_string())?;
        ensure(h == complete_graph_genus(2 * k + 1).unwrap(), format!("k = {k}"))?;
        ensure(
            genus_lower_bound(k, 3, 2 * k + 1).ceil().to_integer() == h as i64,
            format!("bound at k = {k}"),
        )?;
    }
    Ok("k = 4..50 agree".into())
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let a = zmod(5, &[0, 1, 2]);
    let r = decide_genus(&a, &mut Budget::nodes(10_000_000));
    ensure(r.genus_exact && r.genus_upper == 0, format!("genus report {r:?}"))?;
    ensure(r.top_exact && r.top_size == 6, format!("topological size {}", r.top_size))?;
    let w = r.witness.ok_or("no witness")?;
    ensure(w.automaton.num_states() == 6, "witness size")?;
    w.emulator.verify().map_err(|e| e.to_string())?;
    w.embedding.verify().map_err(|e| e.to_string())?;
    let lifted = lift_to_automaton(&w.emulator, &a.minimize()).map_err(|e| e.to_string())?;
    ensure(lifted.equivalent(&a).unwrap(), "lift is not equivalent")?;
    let none = search_min_genus_emulator(&digraph(&a.minimize()), 5, 0, &mut Budget::unlimited());
    ensure(matches!(none.outcome, SearchOutcome::Exhausted), "size 5 search did not exhaust")?;
    within(start, ZMOD5_LIMIT, "Z5 end to end")?;
    Ok(format!("genus 0 at 6 states, size 5 exhausted, {:?}", start.elapsed()))
}

fn check_z6_emulator(m: &EmulatorMap, z6: &Dfa) -> Result<(), String> {
    m.verify().map_err(|e| e.to_string())?;
    ensure(m.total.num_vertices() == 12, "size")?;
    ensure(planar(&m.total.to_multigraph()).is_some(), "total is not planar")?;
    let b = lift_to_automaton(m, z6).map_err(|e| e.to_string())?;
    ensure(b.equivalent(z6).unwrap(), "lift is not equivalent")?;
    let w = planar(&underlying_multigraph(&b)).ok_or("lifted automaton is not planar")?;
    w.verify().map_err(|e| e.to_string())
}

fn criterion_7() -> Check {
    let z6 = zmod(6, &[0, 1, 2, 3, 4, 5]).minimize();
    let fixture = z6_planar_emulator().map_err(|e| e.to_string())?;
    ensure(fixture.base == digraph(&z6), "fixture base differs")?;
    check_z6_emulator(&fixture, &z6)?;
    let mut budget = Budget::nodes(Z6_SEARCH_NODES);
    let report = search_min_genus_emulator(&digraph(&z6), 12, 0, &mut budget);
    let (m, _) = report.found().ok_or("search found nothing at size 12")?;
    check_z6_emulator(m, &z6)?;
    ensure(report.exhausted_through == Some(11), "sizes below 12 not exhausted")?;
    Ok(format!("search found a 12-state planar emulator in {} nodes; fixture verified", report.nodes))
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let a = gen(LanguageFamily::Shuffle { n: 4, p: 4 }).minimize();
    ensure(planar(&underlying_multigraph(&a)).is_none(), "A_min is planar")?;
    ensure(two_letter_nonplanar_certificate(&a).ok() == Some(true), "certificate not true")?;
    let text = torus_rotation(&a).map_err(|e| e.to_string())?.to_text();
    let w = WitnessClaim::from_text(&text)
        .and_then(|c| c.check())
        .map_err(|e| e.to_string())?;
    ensure(w.genus == 1 && w.graph.num_vertices() == 16, "torus witness")?;
    within(start, SHUFFLE_LIMIT, "shuffle")?;
    Ok("nonplanar, certificate holds, torus witness verifies: g = 1".into())
}

fn criterion_9() -> Check {
    let a = gen(LanguageFamily::ExponentialCascade { n: 0 });
    let a_min = a.minimize().complete();
    ensure(planar(&underlying_multigraph(&a_min)).is_none(), "A_min is planar")?;
    let t = cascade_trie(0).map_err(|e| e.to_string())?;
    ensure(planar(&underlying_multigraph(&t)).is_some(), "trie is not planar")?;
    ensure(t.equivalent(&a).unwrap(), "trie not equivalent")?;
    Ok(format!(
        "A_min ({} states) nonplanar, planar trie ({} states) equivalent",
        a_min.num_states(),
        t.num_states()
    ))
}

fn girth_bases() -> Vec<SimpleDigraph> {
    let mut bases = vec![
        digraph(&gen(LanguageFamily::TwoLetterHierarchy { k: 5 })),
        digraph(&gen(LanguageFamily::TwoLetterHierarchy { k: 7 })),
        digraph(&gen(LanguageFamily::Shuffle { n: 4, p: 4 }).minimize()),
        digraph(&gen(LanguageFamily::Shuffle { n: 5, p: 4 }).minimize()),
    ];
    for n in 4..=7 {
        bases.push(SimpleDigraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap());
    }
    bases
}

fn criterion_10() -> Check {
    let bases = girth_bases();
    for b in &bases {
        ensure(girth(&b.to_multigraph()).is_none_or(|g| g >= 4), "base girth below 4")?;
    }
    let mut rng = StdRng::seed_from_u64(10);
    for i in 0..GIRTH_SAMPLES {
        let base = &bases[i % bases.len()];
        let sizes = random_fiber_sizes(&mut rng, base.num_vertices(), 3);
        let m = random_tight_emulator(base, &sizes, &mut rng);
        let g = girth(&m.total.to_multigraph());
        ensure(g.is_none_or(|g| g >= 4), format!("sample {i}: total girth {g:?}"))?;
    }
    Ok(format!("{GIRTH_SAMPLES} emulators, no cycle shorter than 4"))
}

/// Simple directed cycles, each listed once from its smallest vertex.
fn directed_cycles(g: &SimpleDigraph, cap: usize) -> Vec<Vec<usize>> {
    fn extend(g: &SimpleDigraph, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>, cap: usize) {
        let (s, v) = (path[0], *path.last().unwrap());
        for &w in g.out_neighbors(v) {
            if out.len() >= cap {
                return;
            }
            if w == s {
                out.push(path.clone());
            } else if w > s && !on[w] {
                on[w] = true;
                path.push(w);
                extend(g, path, on, out, cap);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.num_vertices()];
    for s in 0..g.num_vertices() {
        on[s] = true;
        extend(g, &mut vec![s], &mut on, &mut out, cap);
        on[s] = false;
    }
    out
}

fn cycle_bases() -> Vec<SimpleDigraph> {
    vec![
        digraph(&zmod(5, &[1, 2]).minimize()),
        digraph(&zmod(6, &[1, 2, 3]).minimize()),
        digraph(&gen(LanguageFamily::Shuffle { n: 3, p: 3 }).minimize()),
        digraph(&gen(LanguageFamily::TwoLetterHierarchy { k: 5 })),
    ]
}

fn criterion_11() -> Check {
    let bases = cycle_bases();
    let cycles: Vec<_> = bases.iter().map(|b| directed_cycles(b, 300)).collect();
    let mut rng = StdRng::seed_from_u64(11);
    for i in 0..LIFT_SAMPLES {
        let b = i % bases.len();
        let base = &bases[b];
        let vs = cycles[b].choose(&mut rng).ok_or("base without cycles")?;
        let c = CycleWitness::directed_from_vertices(base, vs).map_err(|e| e.to_string())?;
        let sizes = random_fiber_sizes(&mut rng, base.num_vertices(), 3);
        let m = random_tight_emulator(base, &sizes, &mut rng);
        let start = *m.fiber(vs[0]).choose(&mut rng).unwrap();
        let lifted = lift_cycle(&m, &c, start).map_err(|e| e.to_string())?;
        lifted.validate_directed(&m.total).map_err(|e| e.to_string())?;
        let mut edges = lifted.edges.clone();
        edges.sort_unstable();
        edges.dedup();
        ensure(edges.len() == lifted.len(), format!("sample {i}: repeated edge"))?;
        ensure(
            !lifted.is_empty() && lifted.len() % c.len() == 0,
            format!("sample {i}: length {} over {}", lifted.len(), c.len()),
        )?;
    }
    Ok(format!("{LIFT_SAMPLES} lifts are edge-simple multiples of the base length"))
}

fn criterion_12() -> Check {
    let bases = cycle_bases();
    let mut rng = StdRng::seed_from_u64(12);
    for i in 0..PRODUCT_SAMPLES {
        let base = &bases[i % bases.len()];
        let n = base.num_vertices();
        let p1 = random_tight_emulator(base, &random_fiber_sizes(&mut rng, n, 3), &mut rng);
        let p2 = random_tight_emulator(base, &random_fiber_sizes(&mut rng, n, 3), &mut rng);
        let fp = fibered_product(&p1, &p2).map_err(|e| e.to_string())?;
        fp.left.verify().map_err(|e| format!("sample {i}: left {e}"))?;
        fp.right.verify().map_err(|e| format!("sample {i}: right {e}"))?;
        fp.emulator.verify().map_err(|e| format!("sample {i}: product {e}"))?;
        for z in 0..fp.pairs.len() {
            let (l, r) = (p1.map[fp.left.map[z]], p2.map[fp.right.map[z]]);
            ensure(l == r && l == fp.emulator.map[z], format!("sample {i}: square fails at {z}"))?;
        }
    }
    Ok(format!("{PRODUCT_SAMPLES} products: projections verify, square commutes"))
}

fn criterion_13() -> Check {
    let bound = genus_lower_bound(2, 5, 30);
    ensure(bound == Rational64::from_integer(4), format!("bound {bound}"))?;
    for k in 5..20 {
        ensure(
            genus_lower_bound(2, 5, 6 * k + 6) > genus_lower_bound(2, 5, 6 * k),
            format!("bound not increasing at k = {k}"),
        )?;
    }
    let c = class_membership(&gen(LanguageFamily::TwoLetterHierarchy { k: 5 }));
    let expected = ClassMembership {
        m: 2,
        girth: Some(5),
        in_class: true,
    };
    ensure(
        c == expected,
        format!(
            "bound arithmetic holds (4, increasing to k = 20) but class_membership is ({}, {:?}, {}): A_min has {} states",
            c.m,
            c.girth,
            c.in_class,
            gen(LanguageFamily::TwoLetterHierarchy { k: 5 }).minimize().num_states()
        ),
    )?;
    Ok("in class, bound 4, increasing".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 13] = [
        ("minimization goldens", criterion_1),
        ("rho table", criterion_2),
        ("exact genus oracle", criterion_3),
        ("face census identity", criterion_4),
        ("hierarchy formula", criterion_5),
        ("Z5 end to end", criterion_6),
        ("Z6 planar at 12 states", criterion_7),
        ("toric two-letter language", criterion_8),
        ("cascade at n = 0", criterion_9),
        ("girth preservation", criterion_10),
        ("cycle lifting", criterion_11),
        ("fibered product", criterion_12),
        ("two-letter hierarchy bounds", criterion_13),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        match check() {
            Ok(detail) => println!("criterion {n:2} PASS {name}: {detail}"),
            Err(reason) => {
                println!("criterion {n:2} FAIL {name}: {reason}");
                failed.push(n);
            }
        }
    }
    assert_eq!(failed, EXPECTED_FAILURES, "unexpected acceptance results");
}
