use oridiam::dominating::exact_dominating_set;
use oridiam::generators::{gen_family, gen_named, random_bridgeless};
use oridiam::graph::UndirectedGraph;
use oridiam::oracle::exact_min_oriented_diameter;
use oridiam::orientation::{diam_profile, diameter, is_strongly_connected};
use oridiam::pipeline::{orient_graph, OrientOptions, Route};
use oridiam::Error;

fn no_oracle() -> OrientOptions {
    OrientOptions { oracle_max_edges: 0, ..OrientOptions::default() }
}

#[test]
fn family_of_two_stays_within_eight() {
    let (g, d) = gen_family(2).unwrap();
    let (h, rep) = orient_graph(&g, Some(&d), &no_oracle()).unwrap();
    assert!(is_strongly_connected(&h));
    assert!(rep.profile.diam <= 8);
    assert_eq!(rep.route, Route::Reduced4Gamma);
}

#[test]
fn petersen_with_three_dominators() {
    let g = gen_named("petersen").unwrap();
    let d = exact_dominating_set(&g, 32).unwrap();
    assert_eq!(d.len(), 3);
    let (h, rep) = orient_graph(&g, Some(&d), &no_oracle()).unwrap();
    assert!(is_strongly_connected(&h));
    assert!(rep.profile.diam <= 12);
    let (best, _) = exact_min_oriented_diameter(&g, None).unwrap();
    assert_eq!(best, 6);
    assert!(best <= rep.profile.diam);
}

#[test]
fn six_cycle_is_forced() {
    let g = gen_named("cycle(6)").unwrap();
    let (h, rep) = orient_graph(&g, Some(&[0, 3]), &no_oracle()).unwrap();
    assert_eq!(diameter(&h), Some(5));
    assert_eq!(rep.profile.diam, 5);
    assert!(rep.within_4gamma);
}

#[test]
fn inputs_are_validated() {
    let bridged = UndirectedGraph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
    assert_eq!(orient_graph(&bridged, None, &OrientOptions::default()).unwrap_err(), Error::HasBridge(vec![(2, 3)]));

    let split = UndirectedGraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
    assert_eq!(orient_graph(&split, None, &OrientOptions::default()).unwrap_err(), Error::NotConnected);

    let c6 = gen_named("cycle(6)").unwrap();
    assert!(matches!(orient_graph(&c6, Some(&[0]), &OrientOptions::default()), Err(Error::NotDominating(_))));
}

#[test]
fn reports_match_a_recomputation() {
    for seed in 0..40u64 {
        let n = 5 + (seed as usize % 20);
        let g = random_bridgeless(n, n + n / 2, seed);
        let (h, rep) = orient_graph(&g, None, &OrientOptions::default()).unwrap();
        assert_eq!(h.base(), &g);
        assert_eq!(diam_profile(&h, &rep.dset).unwrap(), rep.profile);
        assert_eq!(rep.within_4gamma, rep.profile.diam <= 4 * rep.gamma as u32);
        assert!(rep.within_5gamma_minus_1, "seed {seed}");
        if rep.route == Route::Reduced4Gamma {
            assert!(rep.within_4gamma);
        }
    }
}
