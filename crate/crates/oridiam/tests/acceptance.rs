//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Built with `harness = false` so the lines always print.

mod common;

use common::{directed_cycle, path_avoiding, strong_orientation};
use itertools::Itertools;
use oridiam::dominating::{exact_dominating_set, greedy_dominating_set, DominatedPair};
use oridiam::generators::{gen_family, gen_named, random_bridgeless};
use oridiam::graph::{find_bridges, undirected_diameter, UndirectedGraph, VertexId};
use oridiam::oracle::{exact_min_oriented_diameter, exact_min_oriented_diameter_with, OracleOptions};
use oridiam::orientation::{diam_profile, diameter, is_strongly_connected, reverse_all, reverse_cycle, reverse_path, robbins_orient, Orientation};
use oridiam::pipeline::{orient_graph, OrientOptions, Route};
use oridiam::reductions::{lift_bound, lift_orientation, minimize, reduce_to_fixpoint};
use oridiam::spanning::{build_dominating_tree, extend_orientation, extract_minimal_subgraph, fix_to_bridgeless};
use oridiam::standard_form::{to_first_standard_form, verify_first_standard_form};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("C1 extremal family oracle values", c1),
        ("C2 oracle value 6 on petersen and k4_subdivided", c2),
        ("C3 orient_graph within 5γ-1 on the corpus", c3),
        ("C4 reduced route within 4γ, fallback fraction", c4),
        ("C5 oracle sandwich on graphs with at most 12 edges", c5),
        ("C6 oracle at most 4 when γ = 1 and n <= 7", c6),
        ("C7 transformation invariants", c7),
        ("C8 reversal facts", c8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{secs:.2}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// 200 seeded random bridgeless graphs with n in 4..=40 and a greedy
/// dominating set, then the family for γ = 1..=5.
fn corpus() -> Vec<(String, DominatedPair)> {
    let mut out: Vec<(String, DominatedPair)> = (0..200u64)
        .map(|seed| {
            let n = 4 + (seed as usize * 7) % 37;
            let g = random_bridgeless(n, n + n / 2, seed);
            let d = greedy_dominating_set(&g);
            (format!("random seed {seed}"), DominatedPair::new(g, d).unwrap())
        })
        .collect();
    for k in 1..=5 {
        let (g, d) = gen_family(k).unwrap();
        out.push((format!("family {k}"), DominatedPair::new(g, d).unwrap()));
    }
    out
}

fn c1() -> Outcome {
    let values: Vec<u32> = (1..=3).map(|k| exact_min_oriented_diameter(&gen_family(k).unwrap().0, None).unwrap().0).collect();
    check(values == [4, 8, 11], format!("values {values:?}, expected [4, 8, 11]"))
}

fn c2() -> Outcome {
    let values: Vec<u32> =
        ["petersen", "k4_subdivided"].iter().map(|n| exact_min_oriented_diameter(&gen_named(n).unwrap(), None).unwrap().0).collect();
    check(values == [6, 6], format!("values {values:?}, expected [6, 6]"))
}

fn c3() -> Outcome {
    let mut bad = vec![];
    let corpus = corpus();
    for (name, p) in &corpus {
        match orient_graph(p.graph(), Some(p.dset()), &OrientOptions::default()) {
            Ok((h, rep)) => {
                let d = diam_profile(&h, p.dset()).unwrap().diam;
                if !is_strongly_connected(&h) || d > 5 * p.dset().len() as u32 - 1 || d != rep.profile.diam {
                    bad.push(format!("{name}: diam {d}"));
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    check(bad.is_empty(), format!("{} instances, {} violations {:?}", corpus.len(), bad.len(), bad))
}

fn c4() -> Outcome {
    let corpus = corpus();
    let mut routes: BTreeMap<String, usize> = BTreeMap::new();
    let mut bad = vec![];
    for (name, p) in &corpus {
        let (_, rep) = orient_graph(p.graph(), Some(p.dset()), &OrientOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        *routes.entry(rep.route.to_string()).or_default() += 1;
        if rep.route == Route::Reduced4Gamma && !rep.within_4gamma {
            bad.push(name.clone());
        }
    }
    let fallback = routes.get(&Route::Fomin5Gamma.to_string()).copied().unwrap_or(0);
    check(
        bad.is_empty(),
        format!(
            "routes {routes:?}, fallback fraction {fallback}/{} = {:.3}, reduced-route violations {:?}",
            corpus.len(),
            fallback as f64 / corpus.len() as f64,
            bad
        ),
    )
}

/// Seeded draws of `random_bridgeless(n, 12, seed)` with `n = 3 + seed %
/// 10` until 10,000 distinct labelled graphs have been checked.
fn c5() -> Outcome {
    let mut seen = HashSet::new();
    let mut routes: BTreeMap<String, usize> = BTreeMap::new();
    let mut bad = vec![];
    let mut seed = 0u64;
    while seen.len() < 10_000 {
        seed += 1;
        let n = 3 + (seed as usize % 10);
        let g = random_bridgeless(n, 12, seed);
        if !seen.insert(g.clone()) {
            continue;
        }
        let lower = undirected_diameter(&g).unwrap();
        let (oracle, _) = exact_min_oriented_diameter(&g, None).unwrap();
        let gamma = exact_dominating_set(&g, 32).unwrap().len() as u32;
        let (h, rep) = orient_graph(&g, None, &OrientOptions::default()).unwrap();
        let ours = diameter(&h).unwrap();
        *routes.entry(rep.route.to_string()).or_default() += 1;
        if !(lower <= oracle && oracle <= ours && ours <= 4 * gamma) {
            bad.push(format!("seed {seed}: {lower} {oracle} {ours} 4γ={}", 4 * gamma));
        }
    }
    check(bad.is_empty(), format!("{} distinct graphs from {seed} draws, routes {routes:?}, violations {bad:?}", seen.len()))
}

/// Graphs on `0..=k` with 0 universal: one per isomorphism class of the
/// graph `H` on `1..=k`, which needs no isolated vertex for bridgelessness.
fn universal_vertex_graphs(k: usize) -> Vec<UndirectedGraph> {
    let pairs: Vec<(usize, usize)> = (0..k).tuple_combinations().collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let mut classes = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let covered = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0u32, |c, (_, &(a, b))| c | 1 << a | 1 << b);
        if covered != (1 << k) - 1 {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0u32, |m, (_, &(a, b))| {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    m | 1 << index[&(x, y)]
                })
            })
            .min()
            .unwrap();
        classes.insert(canon);
    }
    classes
        .into_iter()
        .map(|mask| {
            let h = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &(a, b))| (a + 1, b + 1));
            UndirectedGraph::new(k + 1, (1..=k).map(|v| (0, v)).chain(h)).unwrap()
        })
        .collect()
}

fn c6() -> Outcome {
    let mut count = 0;
    let mut worst = 0;
    let mut bad = vec![];
    for k in 2..=6 {
        for g in universal_vertex_graphs(k) {
            count += 1;
            let r = exact_min_oriented_diameter_with(&g, &OracleOptions { budget: Some(4), ..OracleOptions::default() }).unwrap();
            worst = worst.max(r.value);
            if r.value > 4 || !is_strongly_connected(&r.witness) {
                bad.push(g.edges().to_vec());
            }
        }
    }
    check(bad.is_empty(), format!("{count} graphs up to isomorphism with n in 3..=7, largest returned value {worst}, violations {bad:?}"))
}

fn c7() -> Outcome {
    let mut bad: Vec<String> = vec![];
    let mut steps = 0;
    let corpus = corpus();
    for (name, p) in &corpus {
        let (s, _) = to_first_standard_form(p).unwrap();
        if !verify_first_standard_form(&s).is_empty() {
            bad.push(format!("{name}: standard form"));
        }
        let k = s.dset().len();
        let core = fix_to_bridgeless(s.pair(), &build_dominating_tree(s.pair()).unwrap()).unwrap();
        let (local, _) = core.core.local();
        if !find_bridges(&local).unwrap().is_empty() || core.core.vertices().len() > 5 * k - 4 {
            bad.push(format!("{name}: core"));
        }
        let m = extract_minimal_subgraph(&s, &core).unwrap();
        let mp = m.local_pair(s.pair()).unwrap();
        let h = robbins_orient(mp.graph()).unwrap();
        let bound = diam_profile(&h, mp.dset()).unwrap().extension_bound();
        let ext = extend_orientation(s.pair(), &m, &h).unwrap();
        if diam_profile(&ext, s.dset()).unwrap().diam > bound {
            bad.push(format!("{name}: extension"));
        }

        let trace = reduce_to_fixpoint(&mp).unwrap();
        for step in &trace.steps {
            steps += 1;
            let hs: Vec<Orientation> = step.parts.iter().map(|q| robbins_orient(q.pair.graph()).unwrap()).collect();
            let profiles: Vec<[u32; 3]> =
                hs.iter().zip(&step.parts).map(|(h, q)| diam_profile(h, q.pair.dset()).unwrap().classes()).collect();
            match lift_orientation(step, &hs) {
                Ok(h) => {
                    let actual = diam_profile(&h, step.pre.dset()).unwrap().classes();
                    let b = lift_bound(step, &profiles);
                    if (0..3).any(|i| actual[i] > b[i]) {
                        bad.push(format!("{name}: {} lift {actual:?} > {b:?}", step.kind.name()));
                    }
                }
                Err(e) => bad.push(format!("{name}: {e}")),
            }
        }
        // the minimal subgraph must already be minimal
        if minimize(&mp).unwrap().edges().len() != mp.graph().m() {
            bad.push(format!("{name}: minimal subgraph not edge-minimal"));
        }
    }
    check(bad.is_empty(), format!("{} instances, {steps} reduction lifts checked, violations {bad:?}", corpus.len()))
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = vec![];
    let cases = 1000;
    for case in 0..cases {
        let (n, extra, seed) = (rng.gen_range(3..12), rng.gen_range(0..8), rng.gen::<u64>());
        let h = strong_orientation(n, extra, seed);

        let cyc = directed_cycle(&h, rng.gen_range(0..n), &mut rng);
        if !reverse_cycle(&h, &cyc).is_ok_and(|r| is_strongly_connected(&r)) {
            bad.push(format!("case {case}: cycle"));
        }

        let s: VertexId = rng.gen_range(0..n);
        let t = (s + rng.gen_range(1..n)) % n;
        let p1 = path_avoiding(&h, s, t, &BTreeSet::new()).unwrap();
        let detour = rng.gen_range(1..4);
        let walk: Vec<VertexId> = std::iter::once(s).chain(n..n + detour).chain(std::iter::once(t)).collect();
        let p2: Vec<(VertexId, VertexId)> = walk.windows(2).map(|w| (w[0], w[1])).collect();
        let g = UndirectedGraph::new(n + detour, h.base().edges().iter().copied().chain(p2.iter().copied())).unwrap();
        let mut arcs = h.arcs();
        arcs.extend(&p2);
        let h2 = Orientation::from_arcs(g, &arcs).unwrap();
        let ok = reverse_path(&h2, &p1, &p2).is_ok_and(|r| is_strongly_connected(&r))
            && reverse_path(&h2, &p2, &p1).is_ok_and(|r| is_strongly_connected(&r));
        if !ok {
            bad.push(format!("case {case}: paths"));
        }

        let r = reverse_all(&h);
        if !is_strongly_connected(&r) || diameter(&r) != diameter(&h) {
            bad.push(format!("case {case}: full reversal"));
        }
    }
    check(bad.is_empty(), format!("{cases} strong orientations, violations {bad:?}"))
}
