use std::sync::Arc;

use clap::ValueEnum;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use genfilter::boolean::{
    build_ba_iso, check_atomless, check_laws, check_powerset_lemma, verify_ba_iso_prefix, ClopenAlgebra, IntervalAlgebra,
};
use genfilter::dlo::{build_order_iso, verify_order_iso_prefix, Dyadics, Rationals};
use genfilter::engine::finite::{check_instance, RandomInstance};
use genfilter::graphs::{
    build_graph_iso, check_extension_property, parse_graph, verify_graph_iso_prefix, CompleteGraph, CountableGraph,
};
use genfilter::partialiso::{generic_query, DomainSchedule};
use genfilter::{Check, CountableCarrier, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Engine,
    Dlo,
    Boolean,
    Graph,
    All,
}

/// Runs one property suite. `seed` drives every random sample.
pub fn run_suite(suite: Suite, seed: u64) -> Report {
    match suite {
        Suite::Engine => engine_suite(seed),
        Suite::Dlo => dlo_suite(),
        Suite::Boolean => boolean_suite(seed),
        Suite::Graph => graph_suite(),
        Suite::All => {
            let mut report = engine_suite(seed);
            report.extend(dlo_suite());
            report.extend(boolean_suite(seed));
            report.extend(graph_suite());
            report
        }
    }
}

fn engine_suite(seed: u64) -> Report {
    let mut report = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let failure = (0..100).find_map(|i| {
        let inst = RandomInstance::generate(&mut rng, 32, 8);
        check_instance(&inst).err().map(|e| format!("instance {i}: {e}"))
    });
    report.push(Check::from_failure("engine/random-posets", failure));

    let mut b = build_order_iso(Arc::new(Rationals), Arc::new(Rationals));
    let mut failure = None;
    let mut answers = Vec::new();
    for i in 0..30 {
        let x = Rationals.enumerate(i);
        let stage = b.family().domain_stage(&x).expect("enumerated") + 1;
        match generic_query(&mut b, &x) {
            Ok(y) if b.chain()[stage].get(&x) == Some(&y) => answers.push((x, y)),
            Ok(_) => failure = Some(format!("f({x}) is not decided at stage {stage}")),
            Err(e) => failure = Some(e.to_string()),
        }
        if failure.is_some() {
            break;
        }
    }
    report.push(Check::from_failure("engine/query-stage", failure));
    let stage = b.stage();
    let _ = b.advance(stage + 25);
    let stale = answers
        .iter()
        .find(|(x, y)| generic_query(&mut b, x).ok().as_ref() != Some(y))
        .map(|(x, _)| format!("f({x}) changed after advancing"));
    report.push(Check::from_failure("engine/query-persistent", stale));

    let current = b.current().clone();
    let domain: Vec<_> = current.domain().cloned().collect();
    let mut sample: Vec<_> = b.chain().iter().step_by(5).cloned().collect();
    for k in (0..domain.len()).step_by(3) {
        sample.push(current.restrict(domain.iter().skip(k).take(4)));
    }
    report.extend(b.verify_filter_axioms(&sample).scoped("engine"));
    report
}

fn dlo_suite() -> Report {
    let mut report = Report::new();
    let mut b = build_order_iso(Arc::new(Rationals), Arc::new(Dyadics));
    report.extend(verify_order_iso_prefix(&mut b, 200).scoped("rationals-dyadics"));
    let mut b = build_order_iso(Arc::new(Dyadics), Arc::new(Rationals));
    report.extend(verify_order_iso_prefix(&mut b, 200).scoped("dyadics-rationals"));
    report
}

fn boolean_suite(seed: u64) -> Report {
    let mut report = check_powerset_lemma(4);
    report.extend(check_laws(&ClopenAlgebra, seed, 1000).scoped("clopen"));
    report.extend(check_laws(&IntervalAlgebra, seed, 1000).scoped("interval"));
    report.extend(check_atomless(&ClopenAlgebra, seed, 1000).scoped("clopen"));
    report.extend(check_atomless(&IntervalAlgebra, seed, 1000).scoped("interval"));
    let mut b = build_ba_iso(Arc::new(ClopenAlgebra), Arc::new(IntervalAlgebra));
    report.extend(verify_ba_iso_prefix(&mut b, 30, 500, seed).scoped("clopen-interval"));
    report
}

fn graph_suite() -> Report {
    let mut report = Report::new();
    for name in ["bit", "hf", "random:42", "delete:bit:0,3", "toggle:bit:0-1", "complement:bit"] {
        let g = parse_graph(name, None).expect("registered");
        report.extend(check_extension_property(&*g, 4, None));
    }
    let control = check_extension_property(&CompleteGraph::new(5), 4, None);
    report.push(Check::from_failure(
        "extension/negative-control",
        control.passed().then(|| "the complete graph on 5 vertices passed".to_string()),
    ));
    for (target, n) in [("bit", 20), ("delete:bit:0,3", 100), ("toggle:bit:0-1", 100)] {
        let bit: Arc<dyn CountableGraph> = parse_graph("bit", None).expect("registered");
        let mut b = build_graph_iso(bit, parse_graph(target, None).expect("registered"), None);
        report.extend(verify_graph_iso_prefix(&mut b, n).scoped(&format!("bit-{target}")));
    }
    report
}
