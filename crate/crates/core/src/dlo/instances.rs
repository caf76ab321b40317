use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::CountableDlo;
use crate::fraction::Fraction;
use crate::partialiso::CountableCarrier;

/// Levels above this are not indexed; their elements are still members.
const LEVEL_CAP: u64 = 1 << 14;

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Sorts positive values ascending and emits each followed by its negation.
fn signed_level(mut positives: Vec<Fraction>) -> Vec<Fraction> {
    positives.sort();
    positives
        .into_iter()
        .flat_map(|v| {
            let neg = &Fraction::zero() - &v;
            [v, neg]
        })
        .collect()
}

fn level_position(level: &[Fraction], x: &Fraction) -> Option<usize> {
    level.iter().position(|e| e == x)
}

/// Walks levels `start..` until `n` falls inside one; returns the level and
/// the offset within it.
fn locate(mut n: usize, start: u64, count: impl Fn(u64) -> usize) -> (u64, usize) {
    let mut level = start;
    loop {
        let c = count(level);
        if n < c {
            return (level, n);
        }
        n -= c;
        level += 1;
    }
}

/// `(ℚ, <)`. The `n`-th rational is found by level `max(|p|, q)`: level 1 is
/// `0, 1, −1`, and level `L ≥ 2` holds its `4φ(L)` elements ordered by
/// absolute value, each positive before its negative.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Rationals {
    fn level_count(level: u64) -> usize {
        if level == 1 {
            3
        } else {
            4 * totient(level) as usize
        }
    }

    fn level(level: u64) -> Vec<Fraction> {
        if level == 1 {
            return vec![Fraction::zero(), Fraction::one(), Fraction::integer(-1)];
        }
        let l = level as i64;
        let mut positives = Vec::new();
        for k in 1..l {
            if k.gcd(&l) == 1 {
                positives.push(Fraction::new(k, l));
                positives.push(Fraction::new(l, k));
            }
        }
        signed_level(positives)
    }
}

impl CountableCarrier for Rationals {
    type Element = Fraction;

    fn enumerate(&self, n: usize) -> Fraction {
        let (level, offset) = locate(n, 1, Self::level_count);
        Self::level(level).swap_remove(offset)
    }

    fn index(&self, x: &Fraction) -> Option<usize> {
        let level = x.numer().abs().max(x.denom().clone()).to_u64()?;
        if level > LEVEL_CAP {
            return None;
        }
        let before: usize = (1..level).map(Self::level_count).sum();
        Some(before + level_position(&Self::level(level), x)?)
    }

    fn contains(&self, _x: &Fraction) -> bool {
        true
    }
}

impl CountableDlo for Rationals {
    fn less(&self, a: &Fraction, b: &Fraction) -> bool {
        a < b
    }

    fn between(&self, a: &Fraction, b: &Fraction) -> Fraction {
        a.midpoint(b)
    }

    fn below(&self, a: &Fraction) -> Fraction {
        a - &Fraction::one()
    }

    fn above(&self, a: &Fraction) -> Fraction {
        a + &Fraction::one()
    }
}

/// The dyadic rationals `m / 2^k`. Canonical forms have `m` odd or `k = 0`;
/// level `max(|m|, k)` is ordered like the rational levels.
#[derive(Debug, Clone, Copy, Default)]
pub struct Dyadics;

impl Dyadics {
    fn level_count(level: u64) -> usize {
        if level == 0 {
            return 1;
        }
        let l = level as usize;
        let with_numer_l = 1 + if l % 2 == 1 { l } else { 0 };
        2 * with_numer_l + 2 * (l / 2)
    }

    fn level(level: u64) -> Vec<Fraction> {
        if level == 0 {
            return vec![Fraction::zero()];
        }
        let one = BigInt::one();
        let pow = |k: u64| &one << (k as usize);
        let mut positives = vec![Fraction::integer(level)];
        if level % 2 == 1 {
            positives.extend((1..=level).map(|k| Fraction::new(BigInt::from(level), pow(k))));
        }
        positives.extend((1..level).step_by(2).map(|m| Fraction::new(BigInt::from(m), pow(level))));
        signed_level(positives)
    }

    fn exponent(x: &Fraction) -> Option<u64> {
        x.denom().bits().checked_sub(1)
    }
}

impl CountableCarrier for Dyadics {
    type Element = Fraction;

    fn enumerate(&self, n: usize) -> Fraction {
        let (level, offset) = locate(n, 0, Self::level_count);
        Self::level(level).swap_remove(offset)
    }

    fn index(&self, x: &Fraction) -> Option<usize> {
        if !x.is_dyadic() {
            return None;
        }
        let k = Self::exponent(x)?;
        let level = x.numer().abs().to_u64()?.max(k);
        if level > LEVEL_CAP {
            return None;
        }
        let before: usize = (0..level).map(Self::level_count).sum();
        Some(before + level_position(&Self::level(level), x)?)
    }

    fn contains(&self, x: &Fraction) -> bool {
        x.is_dyadic()
    }
}

impl CountableDlo for Dyadics {
    fn less(&self, a: &Fraction, b: &Fraction) -> bool {
        a < b
    }

    fn between(&self, a: &Fraction, b: &Fraction) -> Fraction {
        a.midpoint(b)
    }

    fn below(&self, a: &Fraction) -> Fraction {
        a - &Fraction::one()
    }

    fn above(&self, a: &Fraction) -> Fraction {
        a + &Fraction::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token::Token;
    use std::collections::BTreeSet;

    fn tokens<C: CountableCarrier>(c: &C, n: usize) -> Vec<String> {
        (0..n).map(|i| c.enumerate(i).token()).collect()
    }

    #[test]
    fn rational_enumeration_prefix() {
        assert_eq!(
            tokens(&Rationals, 11),
            ["0/1", "1/1", "-1/1", "1/2", "-1/2", "2/1", "-2/1", "1/3", "-1/3", "2/3", "-2/3"]
        );
    }

    #[test]
    fn dyadic_enumeration_prefix() {
        assert_eq!(tokens(&Dyadics, 5), ["0/1", "1/2", "-1/2", "1/1", "-1/1"]);
    }

    #[test]
    fn level_counts_match_generated_levels() {
        for l in 1..60 {
            assert_eq!(Rationals::level(l).len(), Rationals::level_count(l), "rational level {l}");
        }
        for l in 0..60 {
            assert_eq!(Dyadics::level(l).len(), Dyadics::level_count(l), "dyadic level {l}");
        }
    }

    fn check_bijective<C: CountableCarrier<Element = Fraction>>(c: &C, n: usize) {
        let mut seen = BTreeSet::new();
        for i in 0..n {
            let x = c.enumerate(i);
            assert_eq!(c.index(&x), Some(i), "{}", x.token());
            assert!(c.contains(&x));
            assert!(seen.insert(x));
        }
    }

    #[test]
    fn enumeration_and_index_are_inverse() {
        check_bijective(&Rationals, 3000);
        check_bijective(&Dyadics, 3000);
    }

    #[test]
    fn every_small_rational_is_enumerated() {
        // brute force: all p/q with |p|, q <= 12 appear, and nothing else
        // comes before the last of them
        let mut expected = BTreeSet::new();
        for q in 1..=12i64 {
            for p in -12..=12i64 {
                expected.insert(Fraction::new(p, q));
            }
        }
        let got: BTreeSet<_> = (0..expected.len()).map(|i| Rationals.enumerate(i)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn non_dyadics_are_rejected() {
        assert!(!Dyadics.contains(&Fraction::new(1, 3)));
        assert_eq!(Dyadics.index(&Fraction::new(1, 3)), None);
    }

    #[test]
    fn witnesses_honour_their_inequalities() {
        for d in [&Rationals as &dyn CountableDlo<Element = Fraction>, &Dyadics] {
            for i in 0..200 {
                let a = d.enumerate(i);
                let b = d.enumerate(i + 1);
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                let m = d.between(&lo, &hi);
                assert!(d.less(&lo, &m) && d.less(&m, &hi));
                assert!(d.contains(&m));
                assert!(d.less(&d.below(&lo), &lo));
                assert!(d.less(&hi, &d.above(&hi)));
            }
        }
    }
}
