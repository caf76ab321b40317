use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{search_witness, Avoid, CountableGraph, GraphError, Vertex};

/// Largest witness, in bits, that closed-form graphs will build.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

/// Largest number of candidates a default bounded search examines.
pub const DEFAULT_SEARCH_CAP: u64 = 1 << 22;

const BIT_SCAN: u64 = 1024;

fn natural_index(v: &Vertex) -> Option<usize> {
    v.to_usize()
}

/// `i ∈ j` in the Ackermann coding: bit `i` of `j` is set.
fn member(i: &Vertex, j: &Vertex) -> bool {
    i.to_u64().is_some_and(|i| j.bit(i))
}

fn bit_adjacent(x: &Vertex, y: &Vertex) -> bool {
    match x.cmp(y) {
        std::cmp::Ordering::Less => member(x, y),
        std::cmp::Ordering::Greater => member(y, x),
        std::cmp::Ordering::Equal => false,
    }
}

/// `Σ 2^a` over `set`, or an overflow past `budget` bits.
fn code(set: &[Vertex], budget: u64) -> Result<Vertex, GraphError> {
    let mut out = BigUint::zero();
    for a in set {
        match a.to_u64() {
            Some(bit) if bit < budget => out.set_bit(bit, true),
            _ => {
                return Err(GraphError::WitnessOverflow {
                    index_bits: a.bits(),
                    budget,
                })
            }
        }
    }
    Ok(out)
}

/// The graph on ℕ with `i ~ j` for `i < j` iff bit `i` of `j` is set.
#[derive(Debug, Clone, Copy)]
pub struct BitGraph {
    budget: u64,
}

impl BitGraph {
    pub fn new() -> Self {
        BitGraph {
            budget: DEFAULT_BIT_BUDGET,
        }
    }

    pub fn with_budget(budget: u64) -> Self {
        BitGraph { budget }
    }
}

impl Default for BitGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl CountableGraph for BitGraph {
    fn name(&self) -> String {
        "bit".into()
    }

    fn vertex(&self, n: usize) -> Vertex {
        Vertex::from(n)
    }

    fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        natural_index(v)
    }

    fn has_vertex(&self, _v: &Vertex) -> bool {
        true
    }

    fn adjacent(&self, x: &Vertex, y: &Vertex) -> bool {
        bit_adjacent(x, y)
    }

    /// The least witness below 1024 if there is one, otherwise
    /// `Σ_{a∈A} 2^a + 2^t` for the least `t ∉ A ∪ B` at or above the bit
    /// length of `max(A ∪ B)` whose result `avoid` accepts.
    fn witness_avoiding(&self, a: &[Vertex], b: &[Vertex], avoid: Avoid<'_>, _bound: Option<u64>) -> Result<Vertex, GraphError> {
        if let Ok(v) = search_witness(self, a, b, avoid, BIT_SCAN) {
            return Ok(v);
        }
        let base = code(a, self.budget)?;
        let mut t = a.iter().chain(b).max().map_or(0, |m| m.bits());
        loop {
            if t >= self.budget {
                return Err(GraphError::WitnessOverflow {
                    index_bits: Vertex::from(t).bits(),
                    budget: self.budget,
                });
            }
            let tv = Vertex::from(t);
            if !a.contains(&tv) && !b.contains(&tv) {
                let mut v = base.clone();
                v.set_bit(t, true);
                if !avoid(&v) {
                    return Ok(v);
                }
            }
            t += 1;
        }
    }
}

/// Hereditarily finite sets under the Ackermann coding, with `x ~ y` iff
/// `x ∈ y` or `y ∈ x`. The edge relation coincides with [`BitGraph`].
#[derive(Debug, Clone, Copy)]
pub struct HfGraph {
    budget: u64,
}

impl HfGraph {
    pub fn new() -> Self {
        HfGraph {
            budget: DEFAULT_BIT_BUDGET,
        }
    }

    pub fn with_budget(budget: u64) -> Self {
        HfGraph { budget }
    }
}

impl Default for HfGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl CountableGraph for HfGraph {
    fn name(&self) -> String {
        "hf".into()
    }

    fn vertex(&self, n: usize) -> Vertex {
        Vertex::from(n)
    }

    fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        natural_index(v)
    }

    fn has_vertex(&self, _v: &Vertex) -> bool {
        true
    }

    fn adjacent(&self, x: &Vertex, y: &Vertex) -> bool {
        x != y && (member(x, y) || member(y, x))
    }

    /// The set `A ∪ {B'}` with `B' = B`, or `B` plus fresh elements when
    /// `avoid` rejects the plain witness.
    fn witness_avoiding(&self, a: &[Vertex], b: &[Vertex], avoid: Avoid<'_>, _bound: Option<u64>) -> Result<Vertex, GraphError> {
        let base = code(a, self.budget)?;
        let mut extra: Vec<Vertex> = b.to_vec();
        let mut fresh = a.iter().chain(b).max().map_or(BigUint::zero(), |m| m + 1u32);
        loop {
            let inner = code(&extra, self.budget)?;
            let v = base.clone() | code(&[inner], self.budget)?;
            if !avoid(&v) {
                return Ok(v);
            }
            extra.push(fresh.clone());
            fresh += 1u32;
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn absorb(mut h: u64, v: &Vertex) -> u64 {
    let mut len = 0u64;
    for d in v.iter_u64_digits() {
        h = splitmix64(h ^ d);
        len += 1;
    }
    splitmix64(h ^ len)
}

/// Pseudorandom graph on ℕ: `i ~ j` is one bit of a keyed hash of
/// `(seed, min, max)`. Witnesses come from a bounded search.
#[derive(Debug, Clone, Copy)]
pub struct RandomGraph {
    seed: u64,
    bound: Option<u64>,
}

impl RandomGraph {
    /// `bound` fixes the number of candidates searched; `None` uses
    /// `64 · 2^(|A|+|B|)`, capped at [`DEFAULT_SEARCH_CAP`].
    pub fn new(seed: u64, bound: Option<u64>) -> Self {
        RandomGraph { seed, bound }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn default_bound(constraints: usize) -> u64 {
        if constraints >= 40 {
            return DEFAULT_SEARCH_CAP;
        }
        (64u64 << constraints).min(DEFAULT_SEARCH_CAP)
    }

    fn bound_for(&self, constraints: usize, bound: Option<u64>) -> u64 {
        bound.or(self.bound).unwrap_or_else(|| Self::default_bound(constraints))
    }
}

impl CountableGraph for RandomGraph {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn vertex(&self, n: usize) -> Vertex {
        Vertex::from(n)
    }

    fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        natural_index(v)
    }

    fn has_vertex(&self, _v: &Vertex) -> bool {
        true
    }

    fn adjacent(&self, x: &Vertex, y: &Vertex) -> bool {
        if x == y {
            return false;
        }
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        absorb(absorb(splitmix64(self.seed), lo), hi) >> 63 == 1
    }

    fn witness_avoiding(&self, a: &[Vertex], b: &[Vertex], avoid: Avoid<'_>, bound: Option<u64>) -> Result<Vertex, GraphError> {
        search_witness(self, a, b, avoid, self.bound_for(a.len() + b.len(), bound))
    }

    fn failure_bound(&self, constraints: usize) -> Option<f64> {
        Some(super::search_failure_bound(constraints, self.bound_for(constraints, None)))
    }
}

/// The complete graph on `{0, .., n-1}`. It has no witness for any
/// nonempty `B`, so it fails the extension property.
#[derive(Debug, Clone, Copy)]
pub struct CompleteGraph {
    n: usize,
}

impl CompleteGraph {
    pub fn new(n: usize) -> Self {
        CompleteGraph { n }
    }
}

impl CountableGraph for CompleteGraph {
    fn name(&self) -> String {
        format!("complete:{}", self.n)
    }

    fn vertex(&self, n: usize) -> Vertex {
        Vertex::from(n % self.n.max(1))
    }

    fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        natural_index(v).filter(|&i| i < self.n)
    }

    fn has_vertex(&self, v: &Vertex) -> bool {
        self.vertex_index(v).is_some()
    }

    fn order(&self) -> Option<usize> {
        Some(self.n)
    }

    fn adjacent(&self, x: &Vertex, y: &Vertex) -> bool {
        x != y && self.has_vertex(x) && self.has_vertex(y)
    }

    fn witness_avoiding(&self, a: &[Vertex], b: &[Vertex], avoid: Avoid<'_>, _bound: Option<u64>) -> Result<Vertex, GraphError> {
        search_witness(self, a, b, avoid, self.n as u64)
    }
}
