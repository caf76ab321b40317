use std::collections::BTreeSet;

use genfilter::boolean::{BooleanAlgebra, ClopenAlgebra, FiniteSubalgebra, IntervalAlgebra};
use genfilter::dlo::{CountableDlo, Dyadics, Rationals};
use genfilter::graphs::{CountableGraph, Vertex};
use genfilter::{Check, Report, Token};

use crate::{graph, BooleanName, Certificate, CliError, DloName, Kind};

/// Re-verifies the pairs of a certificate from the structure oracles alone:
/// every token parses to an element, the pairs form an injective function,
/// and the relevant biconditional holds on every pair of pairs. Boolean
/// pairs are atom pairs; both atom lists must partition the unit.
pub fn recheck(cert: &Certificate, bound: Option<u64>) -> Result<Report, CliError> {
    let report = match cert.kind {
        Kind::Dlo => {
            let (s, t) = (DloName::parse(&cert.source)?, DloName::parse(&cert.target)?);
            match (s, t) {
                (DloName::Rationals, DloName::Rationals) => recheck_dlo(&Rationals, &Rationals, &cert.pairs),
                (DloName::Rationals, DloName::Dyadics) => recheck_dlo(&Rationals, &Dyadics, &cert.pairs),
                (DloName::Dyadics, DloName::Rationals) => recheck_dlo(&Dyadics, &Rationals, &cert.pairs),
                (DloName::Dyadics, DloName::Dyadics) => recheck_dlo(&Dyadics, &Dyadics, &cert.pairs),
            }
        }
        Kind::Boolean => {
            let (s, t) = (BooleanName::parse(&cert.source)?, BooleanName::parse(&cert.target)?);
            match (s, t) {
                (BooleanName::Clopen, BooleanName::Clopen) => recheck_ba(&ClopenAlgebra, &ClopenAlgebra, &cert.pairs),
                (BooleanName::Clopen, BooleanName::Interval) => recheck_ba(&ClopenAlgebra, &IntervalAlgebra, &cert.pairs),
                (BooleanName::Interval, BooleanName::Clopen) => recheck_ba(&IntervalAlgebra, &ClopenAlgebra, &cert.pairs),
                (BooleanName::Interval, BooleanName::Interval) => {
                    recheck_ba(&IntervalAlgebra, &IntervalAlgebra, &cert.pairs)
                }
            }
        }
        Kind::Graph => {
            let (s, t) = (graph(&cert.source, bound)?, graph(&cert.target, bound)?);
            recheck_graph(&*s, &*t, &cert.pairs)
        }
    };
    Ok(report.scoped("recheck"))
}

/// Parses every pair and checks membership, functionality and injectivity.
fn parse_pairs<S, T>(
    pairs: &[(String, String)],
    source_has: impl Fn(&S) -> bool,
    target_has: impl Fn(&T) -> bool,
    report: &mut Report,
) -> Option<Vec<(S, T)>>
where
    S: Token + Ord + Clone,
    T: Token + Ord + Clone,
{
    let mut parsed = Vec::with_capacity(pairs.len());
    let mut failure = None;
    for (a, b) in pairs {
        match (S::from_token(a), T::from_token(b)) {
            (Ok(x), Ok(y)) if source_has(&x) && target_has(&y) => parsed.push((x, y)),
            (Ok(_), Ok(_)) => {
                failure = Some(format!("{a} -> {b} leaves the carriers"));
                break;
            }
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e.to_string());
                break;
            }
        }
    }
    let ok = failure.is_none();
    report.push(Check::from_failure("parse", failure));
    if !ok {
        return None;
    }
    let keys: BTreeSet<&S> = parsed.iter().map(|(x, _)| x).collect();
    report.push(Check::from_failure(
        "functional",
        (keys.len() != parsed.len()).then(|| "a source token appears twice".to_string()),
    ));
    let values: BTreeSet<&T> = parsed.iter().map(|(_, y)| y).collect();
    report.push(Check::from_failure(
        "injective",
        (values.len() != parsed.len()).then(|| "a target token appears twice".to_string()),
    ));
    Some(parsed)
}

fn recheck_dlo<X: CountableDlo, Y: CountableDlo>(source: &X, target: &Y, pairs: &[(String, String)]) -> Report {
    let mut report = Report::new();
    let Some(parsed) = parse_pairs(pairs, |x| source.contains(x), |y| target.contains(y), &mut report) else {
        return report;
    };
    let mut failure = None;
    'pairs: for (i, (x1, y1)) in parsed.iter().enumerate() {
        for (x2, y2) in &parsed[i + 1..] {
            if source.less(x1, x2) != target.less(y1, y2) || source.less(x2, x1) != target.less(y2, y1) {
                failure = Some(format!("{} -> {}, {} -> {}", x1.token(), y1.token(), x2.token(), y2.token()));
                break 'pairs;
            }
        }
    }
    report.push(Check::from_failure("order", failure));
    report
}

fn recheck_ba<A: BooleanAlgebra, B: BooleanAlgebra>(source: &A, target: &B, pairs: &[(String, String)]) -> Report {
    let mut report = Report::new();
    let Some(parsed) = parse_pairs(pairs, |x| source.contains(x), |y| target.contains(y), &mut report) else {
        return report;
    };
    let (atoms_a, atoms_b): (Vec<_>, Vec<_>) = parsed.into_iter().unzip();
    report.extend(FiniteSubalgebra::from_atoms_unchecked(atoms_a).atom_axioms(source).scoped("source"));
    report.extend(FiniteSubalgebra::from_atoms_unchecked(atoms_b).atom_axioms(target).scoped("target"));
    report
}

fn recheck_graph(source: &dyn CountableGraph, target: &dyn CountableGraph, pairs: &[(String, String)]) -> Report {
    let mut report = Report::new();
    let Some(parsed) = parse_pairs::<Vertex, Vertex>(pairs, |x| source.has_vertex(x), |y| target.has_vertex(y), &mut report)
    else {
        return report;
    };
    let mut failure = None;
    'pairs: for (i, (x1, y1)) in parsed.iter().enumerate() {
        for (x2, y2) in &parsed[i + 1..] {
            if source.adjacent(x1, x2) != target.adjacent(y1, y2) {
                failure = Some(format!("{x1} ~ {x2} versus {y1} ~ {y2}"));
                break 'pairs;
            }
        }
    }
    report.push(Check::from_failure("adjacency", failure));
    report
}
