use super::BooleanAlgebra;
use crate::partialiso::CountableCarrier;

/// The powerset of `{0, .., n-1}` as bitmasks. Finite, so it has atoms and
/// `split` fails on singletons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowersetAlgebra {
    n: u32,
}

impl PowersetAlgebra {
    pub fn new(n: u32) -> Self {
        assert!((1..=20).contains(&n), "powerset size out of range");
        PowersetAlgebra { n }
    }

    fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }
}

impl CountableCarrier for PowersetAlgebra {
    type Element = u32;

    fn enumerate(&self, i: usize) -> u32 {
        (i % (1usize << self.n)) as u32
    }

    fn index(&self, x: &u32) -> Option<usize> {
        (*x <= self.full()).then_some(*x as usize)
    }

    fn len(&self) -> Option<usize> {
        Some(1 << self.n)
    }
}

impl BooleanAlgebra for PowersetAlgebra {
    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        self.full()
    }

    fn meet(&self, a: &u32, b: &u32) -> u32 {
        a & b
    }

    fn join(&self, a: &u32, b: &u32) -> u32 {
        a | b
    }

    fn complement(&self, a: &u32) -> u32 {
        !a & self.full()
    }

    /// The lowest element of `u`, when `u` has at least two.
    fn split(&self, u: &u32) -> Option<u32> {
        (u.count_ones() >= 2).then(|| u & u.wrapping_neg())
    }
}
