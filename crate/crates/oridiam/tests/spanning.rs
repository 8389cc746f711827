use oridiam::dominating::{greedy_dominating_set, DominatedPair};
use oridiam::generators::{gen_family, random_bridgeless};
use oridiam::graph::find_bridges;
use oridiam::orientation::{diam_profile, is_strongly_connected, robbins_orient};
use oridiam::spanning::{build_dominating_tree, extend_orientation, extract_minimal_subgraph, fix_to_bridgeless};
use oridiam::standard_form::{pull_back_orientation, to_first_standard_form, verify_first_standard_form};

fn corpus() -> Vec<DominatedPair> {
    let mut out: Vec<DominatedPair> = (0..200u64)
        .map(|seed| {
            let n = 4 + (seed as usize * 7) % 37;
            let g = random_bridgeless(n, n + n / 2, seed);
            let d = greedy_dominating_set(&g);
            DominatedPair::new(g, d).unwrap()
        })
        .collect();
    for k in 1..=5 {
        let (g, d) = gen_family(k).unwrap();
        out.push(DominatedPair::new(g, d).unwrap());
    }
    out
}

#[test]
fn cores_and_extensions_hold_their_bounds() {
    for (i, p) in corpus().iter().enumerate() {
        let (s, trace) = to_first_standard_form(p).unwrap();
        assert!(verify_first_standard_form(&s).is_empty(), "instance {i}");
        let k = s.dset().len();
        let t = build_dominating_tree(s.pair()).unwrap();
        assert!(t.tree.vertices().len() <= 3 * k - 2);
        let core = fix_to_bridgeless(s.pair(), &t).unwrap();
        assert!(core.violations.is_empty(), "instance {i}: {:?}", core.violations);
        let (local, _) = core.core.local();
        assert!(find_bridges(&local).unwrap().is_empty());
        assert!(core.core.vertices().len() <= 5 * k - 4);

        let m = extract_minimal_subgraph(&s, &core).unwrap();
        assert!(m.vertices().len() <= 5 * k - 4);
        let mp = m.local_pair(s.pair()).unwrap();
        let h = robbins_orient(mp.graph()).unwrap();
        let bound = diam_profile(&h, mp.dset()).unwrap().extension_bound();
        let ext = extend_orientation(s.pair(), &m, &h).unwrap();
        assert!(diam_profile(&ext, s.dset()).unwrap().diam <= bound);

        let back = pull_back_orientation(&trace, &ext).unwrap();
        assert!(is_strongly_connected(&back));
        assert!(diam_profile(&back, p.dset()).unwrap().diam < 5 * p.dset().len() as u32, "instance {i}");
    }
}

#[test]
fn minimal_subgraphs_have_no_chord_outside_d() {
    for p in corpus() {
        let (s, _) = to_first_standard_form(&p).unwrap();
        let t = build_dominating_tree(s.pair()).unwrap();
        let core = fix_to_bridgeless(s.pair(), &t).unwrap();
        let m = extract_minimal_subgraph(&s, &core).unwrap();
        let mp = m.local_pair(s.pair()).unwrap();
        // no edge between two non-dominators can be dropped while staying
        // bridgeless and connected
        for &(u, v) in mp.graph().edges() {
            if mp.is_dominator(u) || mp.is_dominator(v) {
                continue;
            }
            let rest = mp.graph().without_edges(&[(u, v)]);
            assert!(!oridiam::graph::is_bridgeless_connected(&rest), "removable edge {u}-{v}");
        }
    }
}

#[test]
fn replay_reproduces_the_standard_form() {
    for p in corpus().iter().take(60) {
        let (s, trace) = to_first_standard_form(p).unwrap();
        assert_eq!(trace.replay().unwrap(), s);
    }
}
