use std::sync::Arc;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use genfilter::boolean::{build_ba_iso, check_powerset_lemma, verify_ba_iso_prefix, ClopenAlgebra, IntervalAlgebra};
use genfilter::dlo::{build_order_iso, verify_order_iso_prefix, CountableDlo, Dyadics, Rationals};
use genfilter::engine::finite::{check_instance, RandomInstance};
use genfilter::graphs::{
    build_graph_iso, check_extension_property, checked_witness, parse_graph, verify_graph_iso_prefix, CompleteGraph,
    CountableGraph, GraphError, Vertex,
};
use genfilter::partialiso::generic_query;
use genfilter::{CountableCarrier, Token};

#[test]
fn random_finite_instances_agree_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..50 {
        let inst = RandomInstance::generate(&mut rng, 24, 6);
        assert_eq!(check_instance(&inst), Ok(()), "instance {i}");
    }
}

#[test]
fn rationals_and_dyadics_prefixes_verify() {
    let mut b = build_order_iso(Arc::new(Rationals), Arc::new(Dyadics));
    let report = verify_order_iso_prefix(&mut b, 80);
    assert!(report.passed(), "{report}");
    let mut b = build_order_iso(Arc::new(Dyadics), Arc::new(Rationals));
    let report = verify_order_iso_prefix(&mut b, 80);
    assert!(report.passed(), "{report}");
}

#[test]
fn order_queries_are_stable_and_monotone() {
    let mut b = build_order_iso(Arc::new(Rationals), Arc::new(Dyadics));
    let xs: Vec<_> = (0..40).map(|i| Rationals.enumerate(i)).collect();
    let ys: Vec<_> = xs.iter().map(|x| generic_query(&mut b, x).expect("query")).collect();
    for (i, x1) in xs.iter().enumerate() {
        for (j, x2) in xs.iter().enumerate() {
            assert_eq!(Rationals.less(x1, x2), Dyadics.less(&ys[i], &ys[j]));
        }
    }
    let mut fresh = build_order_iso(Arc::new(Rationals), Arc::new(Dyadics));
    for (x, y) in xs.iter().zip(&ys).rev() {
        assert_eq!(generic_query(&mut fresh, x).expect("query").token(), y.token());
    }
}

#[test]
fn boolean_lemma_and_clopen_interval_prefix() {
    let report = check_powerset_lemma(3);
    assert!(report.passed(), "{report}");
    let mut b = build_ba_iso(Arc::new(ClopenAlgebra), Arc::new(IntervalAlgebra));
    let report = verify_ba_iso_prefix(&mut b, 20, 300, 1);
    assert!(report.passed(), "{report}");
}

#[test]
fn registered_graphs_have_the_extension_property() {
    for name in ["bit", "hf", "random:7", "complement:hf", "delete:hf:2", "toggle:bit:3-5"] {
        let g = parse_graph(name, None).expect("registered");
        assert_eq!(g.name(), name);
        let report = check_extension_property(&*g, 3, None);
        assert!(report.passed(), "{report}");
    }
    assert!(!check_extension_property(&CompleteGraph::new(4), 3, None).passed());
}

#[test]
fn graph_witnesses_satisfy_their_contract() {
    let g = parse_graph("bit", None).expect("registered");
    let a: Vec<Vertex> = [1u32, 6, 9].into_iter().map(Vertex::from).collect();
    let b: Vec<Vertex> = [0u32, 4].into_iter().map(Vertex::from).collect();
    let even = |v: &Vertex| v.bit(0);
    let v = checked_witness(&*g, &a, &b, &even, None).expect("witness");
    assert!(!v.bit(0));
    assert!(a.iter().all(|x| g.adjacent(&v, x)));
    assert!(b.iter().all(|x| !g.adjacent(&v, x) && *x != v));
}

#[test]
fn bit_graph_matches_a_perturbed_copy() {
    let bit: Arc<dyn CountableGraph> = parse_graph("bit", None).expect("registered");
    let mut b = build_graph_iso(bit, parse_graph("toggle:bit:2-7", None).expect("registered"), None);
    let report = verify_graph_iso_prefix(&mut b, 60);
    assert!(report.passed(), "{report}");
}

#[test]
fn unknown_graph_names_are_rejected() {
    for name in ["", "bits", "random:", "random:01", "toggle:bit:2-2", "delete:bit:x"] {
        assert!(matches!(parse_graph(name, None), Err(GraphError::UnknownGraph(_))), "{name:?}");
    }
}
