use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BooleanAlgebra;
use crate::report::{Check, Report};
use crate::token::Token;

/// Algebras that can draw random canonical elements for the law suites.
pub trait SampleElement: BooleanAlgebra {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Element;
}

type Law<A> = (&'static str, fn(&A, &E<A>, &E<A>, &E<A>) -> bool);
type E<A> = <A as crate::partialiso::CountableCarrier>::Element;

fn laws<A: BooleanAlgebra>() -> Vec<Law<A>> {
    vec![
        ("meet-associative", |s, a, b, c| s.meet(&s.meet(a, b), c) == s.meet(a, &s.meet(b, c))),
        ("join-associative", |s, a, b, c| s.join(&s.join(a, b), c) == s.join(a, &s.join(b, c))),
        ("meet-commutative", |s, a, b, _| s.meet(a, b) == s.meet(b, a)),
        ("join-commutative", |s, a, b, _| s.join(a, b) == s.join(b, a)),
        ("absorption", |s, a, b, _| s.meet(a, &s.join(a, b)) == *a && s.join(a, &s.meet(a, b)) == *a),
        ("meet-distributes", |s, a, b, c| {
            s.meet(a, &s.join(b, c)) == s.join(&s.meet(a, b), &s.meet(a, c))
        }),
        ("join-distributes", |s, a, b, c| {
            s.join(a, &s.meet(b, c)) == s.meet(&s.join(a, b), &s.join(a, c))
        }),
        ("de-morgan", |s, a, b, _| {
            s.complement(&s.meet(a, b)) == s.join(&s.complement(a), &s.complement(b))
                && s.complement(&s.join(a, b)) == s.meet(&s.complement(a), &s.complement(b))
        }),
        ("complementation", |s, a, _, _| {
            s.meet(a, &s.complement(a)) == s.zero() && s.join(a, &s.complement(a)) == s.one()
        }),
        ("involution", |s, a, _, _| s.complement(&s.complement(a)) == *a),
        ("bounds", |s, a, _, _| s.meet(a, &s.one()) == *a && s.join(a, &s.zero()) == *a),
        ("idempotent", |s, a, _, _| s.join(a, a) == *a && s.meet(a, a) == *a),
    ]
}

/// Every identity on `triples` random triples, plus `0 != 1` and token
/// round trips.
pub fn check_laws<A: SampleElement>(ba: &A, seed: u64, triples: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<[E<A>; 3]> = (0..triples)
        .map(|_| [ba.sample(&mut rng), ba.sample(&mut rng), ba.sample(&mut rng)])
        .collect();
    let mut report = Report::new();
    report.push(Check::from_failure(
        "laws/zero-is-not-one",
        (ba.zero() == ba.one()).then(|| "0 = 1".to_string()),
    ));
    for (name, law) in laws::<A>() {
        let failure = samples
            .iter()
            .find(|[a, b, c]| !law(ba, a, b, c))
            .map(|[a, b, c]| format!("{}, {}, {}", a.token(), b.token(), c.token()));
        report.push(Check::from_failure(format!("laws/{name}"), failure));
    }
    let failure = samples
        .iter()
        .flatten()
        .find(|a| E::<A>::from_token(&a.token()).as_ref() != Ok(*a))
        .map(|a| a.token());
    report.push(Check::from_failure("laws/token-round-trip", failure));
    report
}

/// `0 < split(u) < u` for `samples` random nonzero `u`.
pub fn check_atomless<A: SampleElement>(ba: &A, seed: u64, samples: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    let mut tested = 0;
    while tested < samples {
        let u = ba.sample(&mut rng);
        if ba.is_zero(&u) {
            continue;
        }
        tested += 1;
        match ba.split(&u) {
            Some(v) if !ba.is_zero(&v) && ba.leq(&v, &u) && v != u => {}
            Some(v) => {
                failure = Some(format!("split({}) = {}", u.token(), v.token()));
                break;
            }
            None => {
                failure = Some(format!("split({}) failed", u.token()));
                break;
            }
        }
    }
    let mut report = Report::new();
    let check = Check::from_failure("atomless/split", failure);
    report.push(if check.pass {
        check.with_witness(format!("{samples} nonzero samples"))
    } else {
        check
    });
    report
}
