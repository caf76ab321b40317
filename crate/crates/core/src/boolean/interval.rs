use num_traits::ToPrimitive;
use rand::Rng;

use super::laws::SampleElement;
use super::BooleanAlgebra;
use crate::fraction::Fraction;
use crate::partialiso::CountableCarrier;
use crate::token::{Token, TokenError};

/// A finite union of half-open intervals `[a, b) ⊆ [0, 1)` with rational
/// endpoints, stored as the strictly increasing list of boundary points
/// `a0 < b0 < a1 < b1 < ...`. Touching intervals are merged, so the form is
/// canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalSet {
    points: Vec<Fraction>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { points: Vec::new() }
    }

    pub fn unit() -> Self {
        IntervalSet {
            points: vec![Fraction::zero(), Fraction::one()],
        }
    }

    /// The union of `[a, b)` pairs, merged. Panics on an empty or
    /// out-of-range interval.
    pub fn from_intervals(intervals: &[(Fraction, Fraction)]) -> Self {
        intervals.iter().fold(IntervalSet::empty(), |acc, (a, b)| {
            assert!(Fraction::zero() <= *a && a < b && *b <= Fraction::one(), "bad interval");
            combine(&acc, &IntervalSet { points: vec![a.clone(), b.clone()] }, |x, y| x || y)
        })
    }

    pub fn intervals(&self) -> Vec<(Fraction, Fraction)> {
        self.points.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect()
    }

    pub fn points(&self) -> &[Fraction] {
        &self.points
    }
}

/// Pointwise combination by a sweep over the merged boundary points.
fn combine(a: &IntervalSet, b: &IntervalSet, f: impl Fn(bool, bool) -> bool) -> IntervalSet {
    let (mut i, mut j) = (0, 0);
    let (mut in_a, mut in_b) = (false, false);
    let mut current = f(false, false);
    debug_assert!(!current, "combination must map outside points to outside");
    let mut points = Vec::new();
    while i < a.points.len() || j < b.points.len() {
        let t = match (a.points.get(i), b.points.get(j)) {
            (Some(x), Some(y)) => x.min(y).clone(),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        if a.points.get(i) == Some(&t) {
            in_a = !in_a;
            i += 1;
        }
        if b.points.get(j) == Some(&t) {
            in_b = !in_b;
            j += 1;
        }
        let next = f(in_a, in_b);
        if next != current {
            points.push(t);
            current = next;
        }
    }
    IntervalSet { points }
}

impl Token for IntervalSet {
    /// JSON list of `[a, b]` fraction pairs, e.g. `[["0/1","1/2"]]`.
    fn token(&self) -> String {
        let pairs: Vec<[String; 2]> = self.intervals().iter().map(|(a, b)| [a.token(), b.token()]).collect();
        serde_json::to_string(&pairs).expect("pairs serialize")
    }

    fn from_token(text: &str) -> Result<Self, TokenError> {
        let err = |reason: &str| TokenError::new("interval", text, reason);
        let pairs: Vec<[String; 2]> = serde_json::from_str(text).map_err(|e| err(&e.to_string()))?;
        let mut points = Vec::with_capacity(2 * pairs.len());
        for [a, b] in &pairs {
            points.push(Fraction::from_token(a)?);
            points.push(Fraction::from_token(b)?);
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err("endpoints must be strictly increasing"));
        }
        if points.first().is_some_and(|p| *p < Fraction::zero()) || points.last().is_some_and(|p| *p > Fraction::one()) {
            return Err(err("intervals must lie in [0, 1)"));
        }
        Ok(IntervalSet { points })
    }
}

/// Rationals in `(0, 1]`: `1`, then by denominator and numerator.
fn unit_rational(j: usize) -> Fraction {
    if j == 0 {
        return Fraction::one();
    }
    let mut rest = j - 1;
    let mut q: i64 = 2;
    loop {
        let coprime: Vec<i64> = (1..q).filter(|p| num_integer::gcd(*p, q) == 1).collect();
        if rest < coprime.len() {
            return Fraction::new(coprime[rest], q);
        }
        rest -= coprime.len();
        q += 1;
    }
}

fn unit_rational_index(x: &Fraction) -> Option<usize> {
    if *x == Fraction::one() {
        return Some(0);
    }
    let q = x.denom().to_i64()?;
    let p = x.numer().to_i64()?;
    if q > 1 << 12 {
        return None;
    }
    let mut before = 1usize;
    for d in 2..q {
        before += (1..d).filter(|k| num_integer::gcd(*k, d) == 1).count();
    }
    Some(before + (1..p).filter(|k| num_integer::gcd(*k, q) == 1).count())
}

/// Finite unions of half-open rational intervals in `[0, 1)`, relative to
/// `[0, 1)`. Element `n` has the boundary points `r(i)` for each set bit
/// `i` of `n`, where `r` enumerates `(0, 1]`, plus `0` when that count is
/// odd. `split(u)` is the left half of the first interval of `u`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntervalAlgebra;

impl CountableCarrier for IntervalAlgebra {
    type Element = IntervalSet;

    fn enumerate(&self, n: usize) -> IntervalSet {
        let mut points: Vec<Fraction> = (0..usize::BITS as usize)
            .filter(|i| n >> i & 1 == 1)
            .map(unit_rational)
            .collect();
        if points.len() % 2 == 1 {
            points.push(Fraction::zero());
        }
        points.sort();
        IntervalSet { points }
    }

    fn index(&self, x: &IntervalSet) -> Option<usize> {
        let mut n = 0usize;
        for p in x.points.iter().filter(|p| !p.is_zero()) {
            let bit = unit_rational_index(p)?;
            n |= 1usize.checked_shl(u32::try_from(bit).ok()?)?;
        }
        Some(n)
    }

    fn contains(&self, _x: &IntervalSet) -> bool {
        true
    }
}

impl BooleanAlgebra for IntervalAlgebra {
    fn zero(&self) -> IntervalSet {
        IntervalSet::empty()
    }

    fn one(&self) -> IntervalSet {
        IntervalSet::unit()
    }

    fn meet(&self, a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
        combine(a, b, |x, y| x && y)
    }

    fn join(&self, a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
        combine(a, b, |x, y| x || y)
    }

    fn complement(&self, a: &IntervalSet) -> IntervalSet {
        combine(a, &IntervalSet::unit(), |x, y| x != y)
    }

    fn split(&self, u: &IntervalSet) -> Option<IntervalSet> {
        let (a, b) = (u.points.first()?, u.points.get(1)?);
        Some(IntervalSet {
            points: vec![a.clone(), a.midpoint(b)],
        })
    }
}

impl SampleElement for IntervalAlgebra {
    /// Up to eight boundary points with denominators up to 24.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> IntervalSet {
        let count = 2 * rng.gen_range(0..=4);
        let mut points: Vec<Fraction> = (0..count)
            .map(|_| {
                let q = rng.gen_range(1..=24i64);
                Fraction::new(rng.gen_range(0..=q), q)
            })
            .collect();
        points.sort();
        points.dedup();
        if points.len() % 2 == 1 {
            points.pop();
        }
        let pairs: Vec<(Fraction, Fraction)> = points.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
        IntervalSet::from_intervals(&pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn f(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q)
    }

    fn iv(pairs: &[(i64, i64, i64, i64)]) -> IntervalSet {
        let list: Vec<_> = pairs.iter().map(|&(a, b, c, d)| (f(a, b), f(c, d))).collect();
        IntervalSet::from_intervals(&list)
    }

    #[test]
    fn examples() {
        let alg = IntervalAlgebra;
        assert_eq!(alg.complement(&iv(&[(0, 1, 1, 2)])), iv(&[(1, 2, 1, 1)]));
        let a = iv(&[(0, 1, 1, 2), (3, 4, 1, 1)]);
        let b = iv(&[(1, 4, 7, 8)]);
        assert_eq!(alg.meet(&a, &b), iv(&[(1, 4, 1, 2), (3, 4, 7, 8)]));
        let s = alg.split(&iv(&[(1, 4, 3, 4)])).unwrap();
        assert_eq!(s, iv(&[(1, 4, 1, 2)]));
        assert_eq!(iv(&[(0, 1, 1, 2), (1, 2, 1, 1)]), IntervalSet::unit());
    }

    #[test]
    fn tokens() {
        let x = iv(&[(0, 1, 1, 2), (3, 4, 1, 1)]);
        assert_eq!(x.token(), r#"[["0/1","1/2"],["3/4","1/1"]]"#);
        assert_eq!(IntervalSet::from_token(&x.token()).unwrap(), x);
        assert_eq!(IntervalSet::empty().token(), "[]");
        for bad in [r#"[["1/2","1/2"]]"#, r#"[["0/1","1/2"],["1/2","1/1"]]"#, r#"[["0/1","3/2"]]"#] {
            assert!(IntervalSet::from_token(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn enumeration_prefix() {
        let alg = IntervalAlgebra;
        assert_eq!(alg.enumerate(0), IntervalSet::empty());
        assert_eq!(alg.enumerate(1), IntervalSet::unit());
        assert_eq!(alg.enumerate(2), iv(&[(0, 1, 1, 2)]));
        assert_eq!(alg.enumerate(3), iv(&[(1, 2, 1, 1)]));
    }

    #[test]
    fn enumeration_and_index_are_inverse() {
        let alg = IntervalAlgebra;
        let mut seen = BTreeSet::new();
        for n in (0..4096).chain([1 << 20, (1 << 40) + 5]) {
            let x = alg.enumerate(n);
            assert_eq!(alg.index(&x), Some(n));
            assert!(seen.insert(x));
        }
    }

    #[test]
    fn unit_rationals() {
        let got: Vec<String> = (0..6).map(|j| unit_rational(j).token()).collect();
        assert_eq!(got, ["1/1", "1/2", "1/3", "2/3", "1/4", "3/4"]);
        for j in 0..300 {
            assert_eq!(unit_rational_index(&unit_rational(j)), Some(j));
        }
    }
}
