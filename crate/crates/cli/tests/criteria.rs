//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use genfilter::boolean::{
    build_ba_iso, check_atomless, check_laws, extend_iso, find_partner, powerset_partitions, simple_extension,
    verify_ba_iso_prefix, AtomIso, BooleanAlgebra, ClopenAlgebra, FiniteSubalgebra, IntervalAlgebra, PowersetAlgebra,
};
use genfilter::dlo::{build_order_iso, verify_order_iso_prefix, CountableDlo, Dyadics, Rationals};
use genfilter::engine::finite::RandomInstance;
use genfilter::graphs::{build_graph_iso, parse_graph, verify_graph_iso_prefix, CountableGraph, RandomGraph, Vertex};
use genfilter::{GenericBuilder, Report};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn from_report(report: &Report, ok_detail: impl Into<String>) -> Outcome {
    match report.first_failure() {
        None => outcome(true, ok_detail),
        Some(c) => outcome(false, c.to_string()),
    }
}

/// Builder chain against the brute-force definitions: stage `n + 1` lies in
/// the `n`-th dense set and below stage `n`, and the upward closure of the
/// chain is a filter meeting every dense set.
fn engine_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut largest = 0;
    for i in 0..100 {
        let inst = RandomInstance::generate(&mut rng, 32, 8);
        let poset = &inst.poset;
        let n = poset.len();
        largest = largest.max(n);
        let k = inst.dense.len();
        let mut b = GenericBuilder::new(Arc::clone(poset), inst.family(), inst.start);
        if let Err(e) = b.advance(k) {
            return outcome(false, format!("instance {i}: {e}"));
        }
        let chain = b.chain();
        for s in 0..k {
            if !inst.dense[s].members[chain[s + 1]] || !poset.relates(chain[s + 1], chain[s]) {
                return outcome(false, format!("instance {i}: stage {} misses {}", s + 1, inst.dense[s].label));
            }
        }
        let up: Vec<bool> = (0..n).map(|t| chain.iter().any(|&c| poset.relates(c, t))).collect();
        for t in 0..n {
            for s in 0..n {
                if up[t] && poset.relates(t, s) && !up[s] {
                    return outcome(false, format!("instance {i}: closure not upward closed"));
                }
                if up[t] && up[s] && !(0..n).any(|r| up[r] && poset.relates(r, t) && poset.relates(r, s)) {
                    return outcome(false, format!("instance {i}: {t} and {s} have no common lower bound"));
                }
            }
        }
        if let Some(d) = inst.dense.iter().find(|d| !(0..n).any(|t| up[t] && d.members[t])) {
            return outcome(false, format!("instance {i}: filter misses {}", d.label));
        }
    }
    outcome(true, format!("100 posets, up to {largest} conditions"))
}

fn cantor() -> Outcome {
    fn run<X: CountableDlo + 'static, Y: CountableDlo + 'static>(x: X, y: Y) -> Report {
        let mut b = build_order_iso(Arc::new(x), Arc::new(y));
        verify_order_iso_prefix(&mut b, 500)
    }
    let mut report = run(Rationals, Dyadics).scoped("rationals-dyadics");
    report.extend(run(Dyadics, Rationals).scoped("dyadics-rationals"));
    from_report(&report, "n = 500 both directions, 124750 pairs each")
}

/// Generated subalgebra of `P(4)` by closing under the operations.
fn closure(ba: &PowersetAlgebra, gens: &[u32]) -> BTreeSet<u32> {
    let mut set: BTreeSet<u32> = gens.iter().copied().chain([0, ba.one()]).collect();
    loop {
        let items: Vec<u32> = set.iter().copied().collect();
        let before = set.len();
        for &x in &items {
            set.insert(!x & ba.one());
            for &y in &items {
                set.insert(x & y);
                set.insert(x | y);
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

fn boolean_lemma() -> Outcome {
    let ba = PowersetAlgebra::new(4);
    let mut cases = 0;
    for atoms in powerset_partitions(4) {
        let c = FiniteSubalgebra::from_atoms(&ba, atoms.clone()).unwrap();
        let c_elems = closure(&ba, &atoms);
        let h = AtomIso::from_pairs(atoms.iter().map(|&a| (a, a)).collect());
        for u in 0..16u32 {
            cases += 1;
            let case = format!("C = {atoms:?}, u = {u}");
            let mut gens: Vec<u32> = c_elems.iter().copied().collect();
            gens.push(u);
            let expected = closure(&ba, &gens);
            let got: BTreeSet<u32> = simple_extension(&ba, &c, &u).elements(&ba).into_iter().collect();
            if got != expected {
                return outcome(false, format!("{case}: C(u) differs from the closure"));
            }
            let w = match find_partner(&ba, &ba, &h, &u) {
                Ok(w) => w,
                Err(e) => return outcome(false, format!("{case}: {e}")),
            };
            for &x in &c_elems {
                if (x & !u == 0) != (x & !w == 0) || (x & u == 0) != (x & w == 0) {
                    return outcome(false, format!("{case}: biconditional fails at {x}"));
                }
            }
            let big = match extend_iso(&ba, &ba, &h, &u, &w) {
                Ok(big) => big,
                Err(e) => return outcome(false, format!("{case}: {e}")),
            };
            let f = |x: u32| big.apply(&ba, &ba, &x);
            if f(u) != Some(w) || c_elems.iter().any(|&x| f(x) != Some(x)) {
                return outcome(false, format!("{case}: H does not extend h with H(u) = w"));
            }
            let mut images = BTreeSet::new();
            for &x in &expected {
                let Some(fx) = f(x) else {
                    return outcome(false, format!("{case}: H undefined at {x}"));
                };
                images.insert(fx);
                if f(!x & 15) != Some(!fx & 15) {
                    return outcome(false, format!("{case}: complement of {x}"));
                }
                for &y in &expected {
                    if f(x & y) != Some(fx & f(y).unwrap_or(0)) || f(x | y) != Some(fx | f(y).unwrap_or(0)) {
                        return outcome(false, format!("{case}: meet or join of {x} and {y}"));
                    }
                }
            }
            if images.len() != expected.len() {
                return outcome(false, format!("{case}: H not injective"));
            }
        }
    }
    outcome(true, format!("{cases} pairs (C, u) over P(4)"))
}

fn boolean_iso() -> Outcome {
    let mut b = build_ba_iso(Arc::new(ClopenAlgebra), Arc::new(IntervalAlgebra));
    let report = verify_ba_iso_prefix(&mut b, 50, 1000, 0);
    from_report(&report, format!("n = 50, 1000 pairs, {} atoms", b.current().pairs().len()))
}

fn law_suites() -> Outcome {
    let mut report = check_laws(&ClopenAlgebra, 11, 1000).scoped("clopen");
    report.extend(check_laws(&IntervalAlgebra, 11, 1000).scoped("interval"));
    report.extend(check_atomless(&ClopenAlgebra, 12, 1000).scoped("clopen"));
    report.extend(check_atomless(&IntervalAlgebra, 12, 1000).scoped("interval"));
    from_report(&report, "1000 triples and 1000 nonzero splits per algebra")
}

/// Every disjoint `(A, B)` over the first four vertices gets a witness that
/// rechecks against adjacency; for the random graph the reported search
/// bound must push `(1 − 2^−m)^k` below `1e-6`.
fn extension_property() -> Outcome {
    let mut worst = 0f64;
    for name in ["bit", "hf", "random:42"] {
        let g = parse_graph(name, None).unwrap();
        for code in 0..81u32 {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            let mut c = code;
            for i in 0..4u32 {
                match c % 3 {
                    1 => a.push(Vertex::from(i)),
                    2 => b.push(Vertex::from(i)),
                    _ => {}
                }
                c /= 3;
            }
            let v = match g.witness(&a, &b) {
                Ok(v) => v,
                Err(e) => return outcome(false, format!("{name}: {e}")),
            };
            let ok = !a.contains(&v)
                && !b.contains(&v)
                && a.iter().all(|x| g.adjacent(&v, x))
                && b.iter().all(|y| !g.adjacent(&v, y));
            if !ok {
                return outcome(false, format!("{name}: witness {v} fails for A = {a:?}, B = {b:?}"));
            }
            if name.starts_with("random") {
                let m = a.len() + b.len();
                let k = RandomGraph::default_bound(m) as f64;
                let risk = (1.0 - 0.5f64.powi(m as i32)).powf(k);
                let reported = g.failure_bound(m).unwrap_or(1.0);
                if (risk - reported).abs() > 1e-9 * risk {
                    return outcome(false, format!("random:42 reports {reported:e}, expected {risk:e}"));
                }
                worst = worst.max(risk);
            }
        }
    }
    outcome(worst < 1e-6, format!("k = 4 for bit, hf, random:42; worst failure bound {worst:e}"))
}

fn graph_iso() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (target, n) in [
        ("random:42", 300),
        ("complement:bit", 200),
        ("delete:bit:0,3", 200),
        ("toggle:bit:0-1", 200),
    ] {
        let bit: Arc<dyn CountableGraph> = parse_graph("bit", None).unwrap();
        let mut b = build_graph_iso(bit, parse_graph(target, None).unwrap(), None);
        let report = verify_graph_iso_prefix(&mut b, n);
        match report.first_failure() {
            None => parts.push(format!("bit-{target} n = {n} PASS")),
            Some(c) => {
                pass = false;
                let mut w = c.witness.clone().unwrap_or_default();
                if let Some(i) = w.rfind(": ") {
                    w = w[i + 2..].to_string();
                }
                parts.push(format!("bit-{target} n = {n} FAIL at {} ({} pairs built; {w})", c.name, b.current().len()));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

/// Each acceptance command run twice through the binary, compared byte for
/// byte.
fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_genfilter");
    let commands: Vec<Vec<&str>> = vec![
        vec!["build", "dlo", "rationals", "dyadics", "--steps", "500"],
        vec!["build", "dlo", "dyadics", "rationals", "--steps", "500"],
        vec!["build", "boolean", "clopen", "interval", "--steps", "50", "--pairs", "1000"],
        vec!["build", "graph", "bit", "random:42", "--steps", "300"],
        vec!["build", "graph", "bit", "complement:bit", "--steps", "200"],
        vec!["build", "graph", "bit", "delete:bit:0,3", "--steps", "200"],
        vec!["build", "graph", "bit", "toggle:bit:0-1", "--steps", "200"],
        vec!["verify", "all"],
    ];
    for args in &commands {
        let run = || Command::new(bin).args(args).output().expect("binary runs");
        let (first, second) = (run(), run());
        if first.stdout.is_empty() || first.stdout != second.stdout || first.status.code() != second.status.code() {
            return outcome(false, format!("{} differs between runs", args.join(" ")));
        }
    }
    outcome(true, format!("{} commands byte-identical across two runs", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("engine-soundness", engine_soundness),
        ("cantor-rationals-dyadics", cantor),
        ("boolean-lemma-p4", boolean_lemma),
        ("boolean-iso-clopen-interval", boolean_iso),
        ("boolean-law-suites", law_suites),
        ("graph-extension-property", extension_property),
        ("graph-iso-prefix", graph_iso),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let result = run();
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("{status} {name} ({}; {:.1}s)", result.detail, start.elapsed().as_secs_f64());
        failed += usize::from(!result.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
