//! Preorders of conditions, dense sets, and the generic-filter chain.
//!
//! A [`GenericBuilder`] holds a chain `q0 >= q1 >= ...` in which
//! `q(n+1)` is the refinement of `q(n)` into the `n`-th dense set of the
//! family. The filter is the upward closure of the chain. The builder only
//! ever knows a finite prefix, so [`GenericBuilder::filter_contains`] is
//! final when it answers `true` and provisional when it answers `false`.

pub mod finite;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{Check, Report};
use crate::BoxError;

/// A reflexive, transitive relation on conditions. `leq(p, q)` reads
/// "p is stronger than (extends) q".
pub trait Preorder {
    type Condition: Clone;

    fn leq(&self, p: &Self::Condition, q: &Self::Condition) -> bool;

    /// The weakest condition, when the preorder has one.
    fn max(&self) -> Option<Self::Condition> {
        None
    }

    /// Canonical serialized form. Equal conditions must describe identically.
    fn describe(&self, p: &Self::Condition) -> Value;
}

impl<P: Preorder + ?Sized> Preorder for Arc<P> {
    type Condition = P::Condition;

    fn leq(&self, p: &Self::Condition, q: &Self::Condition) -> bool {
        (**self).leq(p, q)
    }

    fn max(&self) -> Option<Self::Condition> {
        (**self).max()
    }

    fn describe(&self, p: &Self::Condition) -> Value {
        (**self).describe(p)
    }
}

type ContainsFn<C> = Arc<dyn Fn(&C) -> bool + Send + Sync>;
type ExtendFn<C> = Arc<dyn Fn(&C) -> Result<C, BoxError> + Send + Sync>;

/// A dense set given by a membership test and a refinement oracle.
///
/// `refine(p)` returns `p` itself when `p` is already a member; otherwise it
/// calls the extension oracle, which must return a member below `p`. The
/// builder checks that contract on every step.
pub struct DenseSet<C> {
    label: String,
    contains: ContainsFn<C>,
    extend: ExtendFn<C>,
}

impl<C> Clone for DenseSet<C> {
    fn clone(&self) -> Self {
        DenseSet {
            label: self.label.clone(),
            contains: Arc::clone(&self.contains),
            extend: Arc::clone(&self.extend),
        }
    }
}

impl<C> fmt::Debug for DenseSet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DenseSet").field("label", &self.label).finish()
    }
}

impl<C: Clone> DenseSet<C> {
    pub fn new<M, E>(label: impl Into<String>, contains: M, extend: E) -> Self
    where
        M: Fn(&C) -> bool + Send + Sync + 'static,
        E: Fn(&C) -> Result<C, BoxError> + Send + Sync + 'static,
    {
        DenseSet {
            label: label.into(),
            contains: Arc::new(contains),
            extend: Arc::new(extend),
        }
    }

    /// The whole poset, which is trivially dense.
    pub fn whole(label: impl Into<String>) -> Self {
        DenseSet::new(label, |_: &C| true, |p: &C| Ok(p.clone()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, p: &C) -> bool {
        (self.contains)(p)
    }

    pub fn refine(&self, p: &C) -> Result<C, BoxError> {
        if self.contains(p) {
            Ok(p.clone())
        } else {
            (self.extend)(p)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySize {
    Finite(usize),
    Unbounded,
}

/// A countable enumeration of dense sets, possibly with repetitions.
pub trait DenseFamily<C> {
    fn at(&self, n: usize) -> DenseSet<C>;
    fn size(&self) -> FamilySize;
}

/// A finite family enumerated cyclically: `at(n)` is `sets[n % len]`.
/// The empty family enumerates the whole poset.
pub struct FiniteFamily<C> {
    sets: Vec<DenseSet<C>>,
}

impl<C: Clone> FiniteFamily<C> {
    pub fn new(sets: Vec<DenseSet<C>>) -> Self {
        FiniteFamily { sets }
    }

    pub fn empty() -> Self {
        FiniteFamily { sets: Vec::new() }
    }

    pub fn sets(&self) -> &[DenseSet<C>] {
        &self.sets
    }
}

impl<C: Clone> DenseFamily<C> for FiniteFamily<C> {
    fn at(&self, n: usize) -> DenseSet<C> {
        if self.sets.is_empty() {
            DenseSet::whole("whole")
        } else {
            self.sets[n % self.sets.len()].clone()
        }
    }

    fn size(&self) -> FamilySize {
        FamilySize::Finite(self.sets.len())
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("dense set {label} has no refinement of {condition}: {source}")]
    Refinement {
        label: String,
        condition: String,
        #[source]
        source: BoxError,
    },
    #[error("dense set {label} refined {condition} to {refined}, which is not below it")]
    NotBelow {
        label: String,
        condition: String,
        refined: String,
    },
    #[error("dense set {label} refined {condition} to {refined}, which it does not contain")]
    NotMember {
        label: String,
        condition: String,
        refined: String,
    },
}

/// The decreasing chain of a generic-filter construction.
pub struct GenericBuilder<P: Preorder, F> {
    order: P,
    family: F,
    chain: Vec<P::Condition>,
}

impl<P, F> GenericBuilder<P, F>
where
    P: Preorder,
    F: DenseFamily<P::Condition>,
{
    pub fn new(order: P, family: F, start: P::Condition) -> Self {
        GenericBuilder {
            order,
            family,
            chain: vec![start],
        }
    }

    /// Starts from the maximum of the preorder, or `None` if it has none.
    pub fn from_max(order: P, family: F) -> Option<Self> {
        let start = order.max()?;
        Some(Self::new(order, family, start))
    }

    pub fn stage(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn chain(&self) -> &[P::Condition] {
        &self.chain
    }

    /// The strongest condition computed so far.
    pub fn current(&self) -> &P::Condition {
        self.chain.last().expect("chain is never empty")
    }

    pub fn order(&self) -> &P {
        &self.order
    }

    pub fn family(&self) -> &F {
        &self.family
    }

    /// Extends the chain until `stage() >= target`. Each new element is the
    /// refinement of its predecessor into the matching dense set; the result
    /// is checked to be below the predecessor and inside the set.
    pub fn advance(&mut self, target: usize) -> Result<(), EngineError> {
        while self.stage() < target {
            let n = self.stage();
            let set = self.family.at(n);
            let prev = &self.chain[n];
            let next = set.refine(prev).map_err(|source| EngineError::Refinement {
                label: set.label().to_string(),
                condition: self.order.describe(prev).to_string(),
                source,
            })?;
            if !self.order.leq(&next, prev) {
                return Err(EngineError::NotBelow {
                    label: set.label().to_string(),
                    condition: self.order.describe(prev).to_string(),
                    refined: self.order.describe(&next).to_string(),
                });
            }
            if !set.contains(&next) {
                return Err(EngineError::NotMember {
                    label: set.label().to_string(),
                    condition: self.order.describe(prev).to_string(),
                    refined: self.order.describe(&next).to_string(),
                });
            }
            self.chain.push(next);
        }
        Ok(())
    }

    /// Least chain index `n` with `chain[n] <= t`, among the computed prefix.
    pub fn filter_witness(&self, t: &P::Condition) -> Option<usize> {
        self.chain.iter().position(|q| self.order.leq(q, t))
    }

    pub fn filter_contains(&self, t: &P::Condition) -> bool {
        self.filter_witness(t).is_some()
    }

    /// A chain element below both `t1` and `t2`: with `chain[m] <= t1` and
    /// `chain[k] <= t2`, the chain is decreasing, so `chain[max(m, k)]` is
    /// below both.
    pub fn lower_bound_witness(&self, t1: &P::Condition, t2: &P::Condition) -> Option<usize> {
        let m = self.filter_witness(t1)?;
        let k = self.filter_witness(t2)?;
        Some(m.max(k))
    }

    /// Checks the filter axioms on a finite sample of filter members.
    pub fn verify_filter_axioms(&self, sample: &[P::Condition]) -> Report {
        let mut report = Report::new();
        let desc = |p: &P::Condition| self.order.describe(p).to_string();

        let mut witnesses = Vec::with_capacity(sample.len());
        let mut outside = None;
        for t in sample {
            match self.filter_witness(t) {
                Some(n) => witnesses.push(n),
                None => {
                    outside.get_or_insert_with(|| desc(t));
                    witnesses.push(usize::MAX);
                }
            }
        }
        report.push(Check::from_failure(
            "filter/membership",
            outside.map(|t| format!("{t} is not above any chain element")),
        ));
        if !report.passed() {
            return report;
        }

        let mut failure = None;
        let mut deepest = 0;
        'pairs: for (i, t1) in sample.iter().enumerate() {
            for (j, t2) in sample.iter().enumerate().skip(i) {
                let w = witnesses[i].max(witnesses[j]);
                let r = &self.chain[w];
                if !(self.order.leq(r, t1) && self.order.leq(r, t2)) {
                    failure = Some(format!(
                        "chain[{w}] is not below both {} and {}",
                        desc(t1),
                        desc(t2)
                    ));
                    break 'pairs;
                }
                deepest = deepest.max(w);
            }
        }
        let check = Check::from_failure("filter/lower-bounds", failure);
        report.push(if check.pass && !sample.is_empty() {
            check.with_witness(format!("chain[{deepest}]"))
        } else {
            check
        });

        let mut failure = None;
        'closure: for (i, t) in sample.iter().enumerate() {
            for s in sample {
                if self.order.leq(t, s) && !self.order.leq(&self.chain[witnesses[i]], s) {
                    failure = Some(format!(
                        "chain[{}] <= {} <= {} but chain[{}] is not below {}",
                        witnesses[i],
                        desc(t),
                        desc(s),
                        witnesses[i],
                        desc(s)
                    ));
                    break 'closure;
                }
            }
        }
        report.push(Check::from_failure("filter/upward-closure", failure));
        report
    }

    /// `{"chain": [...], "stage": n}` with conditions in canonical form.
    pub fn certificate_fragment(&self) -> Value {
        let chain: Vec<Value> = self.chain.iter().map(|p| self.order.describe(p)).collect();
        json!({ "stage": self.stage(), "chain": chain })
    }
}
