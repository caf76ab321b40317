//! Order isomorphisms between countable dense linear orders without
//! endpoints, built by back-and-forth over order-preserving finite maps.

mod instances;

use std::sync::Arc;

use thiserror::Error;

use crate::engine::GenericBuilder;
use crate::partialiso::{
    domain_dense_set, generic_query, generic_query_inverse, image_dense_set, BackAndForth,
    CountableCarrier, FinitePartialFunction, FnPoset, PartialIsoError,
};
use crate::report::{Check, Report};
use crate::token::Token;

pub use instances::{Dyadics, Rationals};

/// A countable dense total order without endpoints, with closed-form
/// density and unboundedness witnesses.
pub trait CountableDlo: CountableCarrier {
    fn less(&self, a: &Self::Element, b: &Self::Element) -> bool;

    /// Some element strictly between `a` and `b`, given `a < b`.
    fn between(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn below(&self, a: &Self::Element) -> Self::Element;

    fn above(&self, a: &Self::Element) -> Self::Element;
}

impl<D: CountableDlo + ?Sized> CountableDlo for Arc<D> {
    fn less(&self, a: &Self::Element, b: &Self::Element) -> bool {
        (**self).less(a, b)
    }

    fn between(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        (**self).between(a, b)
    }

    fn below(&self, a: &Self::Element) -> Self::Element {
        (**self).below(a)
    }

    fn above(&self, a: &Self::Element) -> Self::Element {
        (**self).above(a)
    }
}

type El<X> = <X as CountableCarrier>::Element;

pub type OrderCondition<X, Y> = FinitePartialFunction<El<X>, El<Y>>;
pub type OrderFamily<X, Y> = BackAndForth<Arc<X>, Arc<Y>, OrderCondition<X, Y>>;
pub type OrderBuilder<X, Y> = GenericBuilder<FnPoset<El<X>, El<Y>>, OrderFamily<X, Y>>;

#[derive(Debug, Error)]
pub enum DloError {
    #[error("{0} is already in the domain")]
    InDomain(String),
    #[error("{0} is already in the image")]
    InImage(String),
    #[error(transparent)]
    PartialIso(#[from] PartialIsoError),
}

/// Elements of `dom(p)` strictly below `x` and strictly above `x`, reduced
/// to the nearest one on each side.
fn neighbours<'a, D: CountableDlo + ?Sized>(
    order: &D,
    keys: impl Iterator<Item = &'a D::Element>,
    x: &D::Element,
) -> (Option<&'a D::Element>, Option<&'a D::Element>) {
    let mut lower: Option<&D::Element> = None;
    let mut upper: Option<&D::Element> = None;
    for k in keys {
        if order.less(k, x) {
            if lower.is_none_or(|l| order.less(l, k)) {
                lower = Some(k);
            }
        } else if order.less(x, k) && upper.is_none_or(|u| order.less(k, u)) {
            upper = Some(k);
        }
    }
    (lower, upper)
}

/// The value chosen for `x` by the three cases on `x⁻` and `x⁺`: below the
/// least image, above the greatest image, or between the images of the
/// nearest neighbours. For an empty `p` it is `target.enumerate(0)`.
pub fn choose_value<X, Y>(p: &OrderCondition<X, Y>, x: &El<X>, source: &X, target: &Y) -> El<Y>
where
    X: CountableDlo + ?Sized,
    Y: CountableDlo + ?Sized,
{
    if p.is_empty() {
        return target.enumerate(0);
    }
    let (lower, upper) = neighbours(source, p.domain(), x);
    let image = |k: &El<X>| p.get(k).expect("neighbour is in the domain").clone();
    match (lower, upper) {
        (None, _) => {
            let least = extreme(target, p.image(), true);
            target.below(least)
        }
        (Some(_), None) => {
            let greatest = extreme(target, p.image(), false);
            target.above(greatest)
        }
        (Some(a), Some(b)) => target.between(&image(a), &image(b)),
    }
}

/// The key chosen for a new image value `a`: the same three cases, read on
/// the target side and answered with source-side witnesses.
pub fn choose_key<X, Y>(p: &OrderCondition<X, Y>, a: &El<Y>, source: &X, target: &Y) -> El<X>
where
    X: CountableDlo + ?Sized,
    Y: CountableDlo + ?Sized,
{
    if p.is_empty() {
        return source.enumerate(0);
    }
    let (lower, upper) = neighbours(target, p.image(), a);
    let preimage = |v: &El<Y>| p.preimage(v).expect("neighbour is in the image").clone();
    match (lower, upper) {
        (None, _) => source.below(extreme(source, p.domain(), true)),
        (Some(_), None) => source.above(extreme(source, p.domain(), false)),
        (Some(lo), Some(hi)) => source.between(&preimage(lo), &preimage(hi)),
    }
}

fn extreme<'a, D: CountableDlo + ?Sized>(
    order: &D,
    items: impl Iterator<Item = &'a D::Element>,
    least: bool,
) -> &'a D::Element {
    items
        .reduce(|best, e| {
            let better = if least { order.less(e, best) } else { order.less(best, e) };
            if better {
                e
            } else {
                best
            }
        })
        .expect("nonempty")
}

/// `p ∪ {(x, c)}` with `c` from [`choose_value`].
pub fn insert_point<X, Y>(
    p: &OrderCondition<X, Y>,
    x: &El<X>,
    source: &X,
    target: &Y,
) -> Result<OrderCondition<X, Y>, DloError>
where
    X: CountableDlo + ?Sized,
    Y: CountableDlo + ?Sized,
{
    if p.contains_key(x) {
        return Err(DloError::InDomain(x.token()));
    }
    let c = choose_value(p, x, source, target);
    Ok(p.with(x.clone(), c)?)
}

/// `p ∪ {(x, a)}` with `x` from [`choose_key`].
pub fn insert_value<X, Y>(
    p: &OrderCondition<X, Y>,
    a: &El<Y>,
    source: &X,
    target: &Y,
) -> Result<OrderCondition<X, Y>, DloError>
where
    X: CountableDlo + ?Sized,
    Y: CountableDlo + ?Sized,
{
    if p.preimage(a).is_some() {
        return Err(DloError::InImage(a.token()));
    }
    let x = choose_key(p, a, source, target);
    if p.contains_key(&x) {
        return Err(DloError::InDomain(x.token()));
    }
    Ok(p.with(x, a.clone())?)
}

/// First pair `(x, y)` of the domain on which `p` fails to preserve the
/// strict order in both directions.
pub fn order_violation<X, Y>(p: &OrderCondition<X, Y>, source: &X, target: &Y) -> Option<(El<X>, El<X>)>
where
    X: CountableDlo + ?Sized,
    Y: CountableDlo + ?Sized,
{
    let pairs: Vec<_> = p.iter().collect();
    for (i, (x1, y1)) in pairs.iter().enumerate() {
        for (x2, y2) in &pairs[i + 1..] {
            if source.less(x1, x2) != target.less(y1, y2) || source.less(x2, x1) != target.less(y2, y1) {
                return Some(((*x1).clone(), (*x2).clone()));
            }
        }
    }
    None
}

/// A builder over order-preserving finite maps `X → Y` with the
/// interleaved family `D_x` (even stages) and `E_y` (odd stages).
pub fn build_order_iso<X, Y>(source: Arc<X>, target: Arc<Y>) -> OrderBuilder<X, Y>
where
    X: CountableDlo + 'static,
    Y: CountableDlo + 'static,
{
    let (s1, t1) = (Arc::clone(&source), Arc::clone(&target));
    let (s2, t2) = (Arc::clone(&source), Arc::clone(&target));
    let family = BackAndForth::new(
        source,
        target,
        move |x: &El<X>| {
            let (s, t) = (Arc::clone(&s1), Arc::clone(&t1));
            domain_dense_set(x.clone(), move |p: &OrderCondition<X, Y>, x: &El<X>| {
                Ok(choose_value(p, x, &*s, &*t))
            })
        },
        move |y: &El<Y>| {
            let (s, t) = (Arc::clone(&s2), Arc::clone(&t2));
            image_dense_set(y.clone(), move |p: &OrderCondition<X, Y>, a: &El<Y>| {
                Ok(choose_key(p, a, &*s, &*t))
            })
        },
    );
    GenericBuilder::from_max(FnPoset::new(), family).expect("Fn has a maximum")
}

/// Queries `f` on the first `n` source points and `f⁻¹` on the first `n`
/// target points, then checks strict order preservation on every pair,
/// injectivity, codomain membership, and that the targets were attained.
pub fn verify_order_iso_prefix<X, Y>(b: &mut OrderBuilder<X, Y>, n: usize) -> Report
where
    X: CountableDlo + 'static,
    Y: CountableDlo + 'static,
{
    let mut report = Report::new();
    let source = Arc::clone(b.family().source());
    let target = Arc::clone(b.family().target());

    let mut points = Vec::with_capacity(n);
    let mut query_failure = None;
    for i in 0..n {
        let x = source.enumerate(i);
        match generic_query(b, &x) {
            Ok(y) => points.push((x, y)),
            Err(e) => {
                query_failure = Some(format!("f({}): {e}", x.token()));
                break;
            }
        }
    }
    if query_failure.is_none() {
        query_failure = (0..n)
            .map(|j| target.enumerate(j))
            .find_map(|y| generic_query_inverse(b, &y).err().map(|e| format!("f^-1({}): {e}", y.token())));
    }
    report.push(Check::from_failure("order/query", query_failure));

    let mut failure = None;
    'pairs: for (i, (x1, y1)) in points.iter().enumerate() {
        for (x2, y2) in &points[i + 1..] {
            if source.less(x1, x2) != target.less(y1, y2) || source.less(x2, x1) != target.less(y2, y1) {
                failure = Some(format!(
                    "{} -> {}, {} -> {}",
                    x1.token(),
                    y1.token(),
                    x2.token(),
                    y2.token()
                ));
                break 'pairs;
            }
        }
    }
    let pairs = n * n.saturating_sub(1) / 2;
    report.push(
        Check::from_failure("order/strict-preservation", failure.clone())
            .with_witness(failure.unwrap_or_else(|| format!("{pairs} pairs"))),
    );

    let mut images: Vec<&El<Y>> = points.iter().map(|(_, y)| y).collect();
    images.sort();
    let dup = images.windows(2).find(|w| w[0] == w[1]).map(|w| w[0].token());
    report.push(Check::from_failure(
        "order/injective",
        dup.map(|y| format!("{y} has two preimages")),
    ));

    let outside = points
        .iter()
        .find(|(_, y)| !target.contains(y))
        .map(|(x, y)| format!("f({}) = {} is not in the target", x.token(), y.token()));
    report.push(Check::from_failure("order/codomain", outside));

    let current = b.current().clone();
    let missing = (0..n)
        .map(|j| target.enumerate(j))
        .find(|y| current.preimage(y).is_none())
        .map(|y| format!("{} not attained", y.token()));
    report.push(Check::from_failure("order/targets-attained", missing));

    let broken = order_violation(&current, &*source, &*target)
        .map(|(x1, x2)| format!("condition breaks order on {} and {}", x1.token(), x2.token()));
    report.push(Check::from_failure("order/condition", broken));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::Fraction;
    use proptest::prelude::*;

    type Q = FinitePartialFunction<Fraction, Fraction>;

    fn f(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q)
    }

    fn q(pairs: &[(Fraction, Fraction)]) -> Q {
        Q::from_pairs(pairs.iter().cloned()).unwrap()
    }

    #[test]
    fn insert_into_empty_uses_the_seed() {
        let r = Rationals;
        let p = insert_point(&Q::new(), &f(7, 3), &r, &r).unwrap();
        assert_eq!(p, q(&[(f(7, 3), r.enumerate(0))]));
        let p = insert_value(&Q::new(), &f(7, 3), &r, &r).unwrap();
        assert_eq!(p, q(&[(r.enumerate(0), f(7, 3))]));
    }

    #[test]
    fn insert_point_middle_case_uses_midpoint() {
        let r = Rationals;
        let p = q(&[(f(0, 1), f(0, 1)), (f(1, 1), f(1, 1))]);
        let out = insert_point(&p, &f(1, 2), &r, &r).unwrap();
        assert_eq!(out.get(&f(1, 2)), Some(&f(1, 2)));
        assert_eq!(out.len(), 3);
    }

    #[test]
    fn insert_point_below_case() {
        let r = Rationals;
        let p = q(&[(f(5, 1), f(3, 1))]);
        let out = insert_point(&p, &f(2, 1), &r, &r).unwrap();
        assert_eq!(out.get(&f(2, 1)), Some(&f(2, 1)));
    }

    #[test]
    fn insert_point_above_case() {
        let r = Rationals;
        let p = q(&[(f(0, 1), f(0, 1)), (f(1, 1), f(5, 1))]);
        let out = insert_point(&p, &f(9, 1), &r, &r).unwrap();
        assert_eq!(out.get(&f(9, 1)), Some(&f(6, 1)));
    }

    #[test]
    fn insert_value_mirror_cases() {
        let r = Rationals;
        let p = q(&[(f(0, 1), f(0, 1)), (f(1, 1), f(1, 1))]);
        let out = insert_value(&p, &f(1, 2), &r, &r).unwrap();
        assert_eq!(out.get(&f(1, 2)), Some(&f(1, 2)));

        let p = q(&[(f(0, 1), f(0, 1))]);
        let out = insert_value(&p, &f(-7, 1), &r, &r).unwrap();
        assert_eq!(out.get(&f(-1, 1)), Some(&f(-7, 1)));
    }

    #[test]
    fn insert_rejects_covered_points() {
        let r = Rationals;
        let p = q(&[(f(0, 1), f(0, 1))]);
        assert!(matches!(insert_point(&p, &f(0, 1), &r, &r), Err(DloError::InDomain(_))));
        assert!(matches!(insert_value(&p, &f(0, 1), &r, &r), Err(DloError::InImage(_))));
    }

    #[test]
    fn empty_prefix_is_vacuous() {
        let mut b = build_order_iso(Arc::new(Rationals), Arc::new(Dyadics));
        assert_eq!(b.chain(), &[FinitePartialFunction::new()]);
        assert!(verify_order_iso_prefix(&mut b, 0).passed());
    }

    #[test]
    fn rationals_to_rationals_first_ten_queries() {
        let mut b = build_order_iso(Arc::new(Rationals), Arc::new(Rationals));
        let first = generic_query(&mut b, &f(0, 1)).unwrap();
        let r = verify_order_iso_prefix(&mut b, 10);
        assert!(r.passed(), "{r}");
        assert_eq!(generic_query(&mut b, &f(0, 1)).unwrap(), first);
    }

    #[test]
    fn rationals_to_dyadics_lands_in_dyadics() {
        let mut b = build_order_iso(Arc::new(Rationals), Arc::new(Dyadics));
        let r = verify_order_iso_prefix(&mut b, 100);
        assert!(r.passed(), "{r}");
        assert!(b.current().image().all(Fraction::is_dyadic));
    }

    #[test]
    fn both_directions() {
        let mut b = build_order_iso(Arc::new(Dyadics), Arc::new(Rationals));
        assert!(verify_order_iso_prefix(&mut b, 60).passed());
        let mut b = build_order_iso(Arc::new(Rationals), Arc::new(Dyadics));
        assert!(verify_order_iso_prefix(&mut b, 60).passed());
    }

    #[test]
    fn stages_restrict_to_earlier_stages() {
        let mut b = build_order_iso(Arc::new(Rationals), Arc::new(Dyadics));
        b.advance(40).unwrap();
        let chain = b.chain();
        for n in 0..chain.len() {
            for m in 0..n {
                assert_eq!(chain[n].restrict(chain[m].domain()), chain[m]);
            }
        }
    }

    /// Rationals whose `between` returns the left endpoint.
    struct BrokenBetween;

    impl CountableCarrier for BrokenBetween {
        type Element = Fraction;

        fn enumerate(&self, n: usize) -> Fraction {
            Rationals.enumerate(n)
        }

        fn index(&self, x: &Fraction) -> Option<usize> {
            Rationals.index(x)
        }
    }

    impl CountableDlo for BrokenBetween {
        fn less(&self, a: &Fraction, b: &Fraction) -> bool {
            a < b
        }

        fn between(&self, a: &Fraction, _b: &Fraction) -> Fraction {
            a.clone()
        }

        fn below(&self, a: &Fraction) -> Fraction {
            Rationals.below(a)
        }

        fn above(&self, a: &Fraction) -> Fraction {
            Rationals.above(a)
        }
    }

    #[test]
    fn sabotaged_between_is_caught_with_a_pair() {
        let mut b = build_order_iso(Arc::new(Rationals), Arc::new(BrokenBetween));
        let r = verify_order_iso_prefix(&mut b, 20);
        assert!(!r.passed());
        let failed = r
            .checks
            .iter()
            .find(|c| c.name == "order/strict-preservation")
            .unwrap();
        assert!(!failed.pass);
        assert!(failed.witness.as_deref().unwrap().contains("->"), "{r}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn inserts_keep_the_whole_condition_order_preserving(
            ops in proptest::collection::vec((any::<bool>(), -40i64..40, 1i64..9), 1..30)
        ) {
            let r = Rationals;
            let mut p = Q::new();
            for (forward, num, den) in ops {
                let e = f(num, den);
                let next = if forward {
                    if p.contains_key(&e) { continue; }
                    insert_point(&p, &e, &r, &r).unwrap()
                } else {
                    if p.preimage(&e).is_some() { continue; }
                    insert_value(&p, &e, &r, &r).unwrap()
                };
                prop_assert_eq!(next.len(), p.len() + 1);
                prop_assert!(next.extends(&p));
                prop_assert!(order_violation(&next, &r, &r).is_none());
                p = next;
            }
        }
    }
}
