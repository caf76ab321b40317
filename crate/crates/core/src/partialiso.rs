//! Finite partial functions ordered by reverse inclusion, countable
//! carriers, and the domain/image dense sets shared by every
//! back-and-forth construction.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::marker::PhantomData;
use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use crate::engine::{DenseFamily, DenseSet, EngineError, FamilySize, GenericBuilder, Preorder};
use crate::token::Token;
use crate::BoxError;

/// An enumerated set. `enumerate` is injective on `0..len()` (or on all
/// naturals when `len()` is `None`) and `index` inverts it.
pub trait CountableCarrier: Send + Sync {
    type Element: Clone + Ord + Debug + Token + Send + Sync + 'static;

    fn enumerate(&self, n: usize) -> Self::Element;

    /// Position of `x` in the enumeration; `None` for non-members and for
    /// members whose position does not fit in a `usize`.
    fn index(&self, x: &Self::Element) -> Option<usize>;

    fn contains(&self, x: &Self::Element) -> bool {
        self.index(x).is_some()
    }

    /// Number of elements, `None` when infinite.
    fn len(&self) -> Option<usize> {
        None
    }
}

impl<C: CountableCarrier + ?Sized> CountableCarrier for Arc<C> {
    type Element = C::Element;

    fn enumerate(&self, n: usize) -> Self::Element {
        (**self).enumerate(n)
    }

    fn index(&self, x: &Self::Element) -> Option<usize> {
        (**self).index(x)
    }

    fn contains(&self, x: &Self::Element) -> bool {
        (**self).contains(x)
    }

    fn len(&self) -> Option<usize> {
        (**self).len()
    }
}

/// A finite carrier listed explicitly.
#[derive(Debug, Clone)]
pub struct FiniteCarrier<T> {
    elements: Vec<T>,
}

impl<T: Ord + Clone> FiniteCarrier<T> {
    /// Panics on an empty or repeating list.
    pub fn new(elements: Vec<T>) -> Self {
        assert!(!elements.is_empty(), "finite carrier must be nonempty");
        let mut sorted = elements.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), elements.len(), "finite carrier repeats an element");
        FiniteCarrier { elements }
    }
}

impl<T> CountableCarrier for FiniteCarrier<T>
where
    T: Clone + Ord + Debug + Token + Send + Sync + 'static,
{
    type Element = T;

    fn enumerate(&self, n: usize) -> T {
        self.elements[n % self.elements.len()].clone()
    }

    fn index(&self, x: &T) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    fn len(&self) -> Option<usize> {
        Some(self.elements.len())
    }
}

#[derive(Debug, Error)]
pub enum PartialIsoError {
    #[error("incompatible values for {key}: {left} vs {right}")]
    Incompatible {
        key: String,
        left: String,
        right: String,
    },
    #[error("unreachable element {0}: no dense set in the family covers it")]
    Unreachable(String),
    #[error("condition at stage {stage} does not cover {element}")]
    Uncovered { element: String, stage: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A finite function, stored sorted by domain element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePartialFunction<K: Ord, V> {
    pairs: BTreeMap<K, V>,
}

impl<K: Ord, V> Default for FinitePartialFunction<K, V> {
    fn default() -> Self {
        FinitePartialFunction {
            pairs: BTreeMap::new(),
        }
    }
}

impl<K, V> FinitePartialFunction<K, V>
where
    K: Ord + Clone + Token,
    V: Eq + Clone + Token,
{
    pub fn new() -> Self {
        Self::default()
    }

    /// Fails if the same key is given two different values.
    pub fn from_pairs<I: IntoIterator<Item = (K, V)>>(pairs: I) -> Result<Self, PartialIsoError> {
        let mut f = Self::new();
        for (k, v) in pairs {
            f.insert(k, v)?;
        }
        Ok(f)
    }

    pub fn insert(&mut self, k: K, v: V) -> Result<(), PartialIsoError> {
        if let Some(old) = self.pairs.get(&k) {
            if *old != v {
                return Err(PartialIsoError::Incompatible {
                    key: k.token(),
                    left: old.token(),
                    right: v.token(),
                });
            }
            return Ok(());
        }
        self.pairs.insert(k, v);
        Ok(())
    }

    /// `self ∪ {(k, v)}` for a `k` outside the domain.
    pub fn with(&self, k: K, v: V) -> Result<Self, PartialIsoError> {
        let mut f = self.clone();
        f.insert(k, v)?;
        Ok(f)
    }

    pub fn get(&self, k: &K) -> Option<&V> {
        self.pairs.get(k)
    }

    pub fn contains_key(&self, k: &K) -> bool {
        self.pairs.contains_key(k)
    }

    /// Some key mapped to `v`. Linear scan.
    pub fn preimage(&self, v: &V) -> Option<&K> {
        self.pairs.iter().find(|(_, w)| *w == v).map(|(k, _)| k)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &V)> {
        self.pairs.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &K> {
        self.pairs.keys()
    }

    pub fn image(&self) -> impl Iterator<Item = &V> {
        self.pairs.values()
    }

    pub fn map(&self) -> &BTreeMap<K, V> {
        &self.pairs
    }

    /// `self ⊇ other`.
    pub fn extends(&self, other: &Self) -> bool {
        other.len() <= self.len() && other.iter().all(|(k, v)| self.pairs.get(k) == Some(v))
    }

    /// Whether `self ∪ other` is still a function.
    pub fn compatible(&self, other: &Self) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .iter()
            .all(|(k, v)| large.pairs.get(k).is_none_or(|w| w == v))
    }

    pub fn union(&self, other: &Self) -> Result<Self, PartialIsoError> {
        let mut f = self.clone();
        for (k, v) in other.iter() {
            f.insert(k.clone(), v.clone())?;
        }
        Ok(f)
    }

    pub fn restrict<'a, I: IntoIterator<Item = &'a K>>(&self, keys: I) -> Self
    where
        K: 'a,
    {
        let mut f = Self::new();
        for k in keys {
            if let Some(v) = self.pairs.get(k) {
                f.pairs.insert(k.clone(), v.clone());
            }
        }
        f
    }

    /// Whether no two keys share a value.
    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<&V> = Vec::with_capacity(self.len());
        for v in self.image() {
            if seen.contains(&v) {
                return false;
            }
            seen.push(v);
        }
        true
    }

    /// Token pairs in domain order.
    pub fn token_pairs(&self) -> Vec<(String, String)> {
        self.iter().map(|(k, v)| (k.token(), v.token())).collect()
    }

    /// A sorted JSON array of `[domain-token, value-token]` pairs.
    pub fn describe(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|(k, v)| Value::Array(vec![Value::String(k.token()), Value::String(v.token())]))
                .collect(),
        )
    }
}

impl<K, V> FinitePartialFunction<K, V>
where
    K: Ord + Clone + Token,
    V: Ord + Clone + Token,
{
    /// The inverse function; `None` if not injective.
    pub fn inverse(&self) -> Option<FinitePartialFunction<V, K>> {
        let mut inv = BTreeMap::new();
        for (k, v) in self.iter() {
            if inv.insert(v.clone(), k.clone()).is_some() {
                return None;
            }
        }
        Some(FinitePartialFunction { pairs: inv })
    }
}

pub fn fn_compatible<K, V>(p: &FinitePartialFunction<K, V>, q: &FinitePartialFunction<K, V>) -> bool
where
    K: Ord + Clone + Token,
    V: Eq + Clone + Token,
{
    p.compatible(q)
}

/// Union of a pairwise-compatible sequence. An incompatible pair is a bug in
/// whatever produced the chain and is returned as an error.
pub fn union_of_chain<K, V>(
    chain: &[FinitePartialFunction<K, V>],
) -> Result<FinitePartialFunction<K, V>, PartialIsoError>
where
    K: Ord + Clone + Token,
    V: Eq + Clone + Token,
{
    chain
        .iter()
        .try_fold(FinitePartialFunction::new(), |acc, p| acc.union(p))
}

/// `Fn(X, Y)` ordered by reverse inclusion, with maximum `∅`.
pub struct FnPoset<K, V> {
    _marker: PhantomData<fn() -> (K, V)>,
}

impl<K, V> FnPoset<K, V> {
    pub fn new() -> Self {
        FnPoset {
            _marker: PhantomData,
        }
    }
}

impl<K, V> Default for FnPoset<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K, V> Preorder for FnPoset<K, V>
where
    K: Ord + Clone + Token,
    V: Eq + Clone + Token,
{
    type Condition = FinitePartialFunction<K, V>;

    fn leq(&self, p: &Self::Condition, q: &Self::Condition) -> bool {
        p.extends(q)
    }

    fn max(&self) -> Option<Self::Condition> {
        Some(FinitePartialFunction::new())
    }

    fn describe(&self, p: &Self::Condition) -> Value {
        p.describe()
    }
}

/// A preorder whose conditions are finite partial maps that can be
/// evaluated in both directions.
pub trait PartialIsoPoset: Preorder {
    type Source: Clone + Token;
    type Target: Clone + Token;

    fn apply(&self, p: &Self::Condition, x: &Self::Source) -> Option<Self::Target>;
    fn apply_inverse(&self, p: &Self::Condition, y: &Self::Target) -> Option<Self::Source>;
}

impl<K, V> PartialIsoPoset for FnPoset<K, V>
where
    K: Ord + Clone + Token,
    V: Eq + Clone + Token,
{
    type Source = K;
    type Target = V;

    fn apply(&self, p: &Self::Condition, x: &K) -> Option<V> {
        p.get(x).cloned()
    }

    fn apply_inverse(&self, p: &Self::Condition, y: &V) -> Option<K> {
        p.preimage(y).cloned()
    }
}

impl<P: PartialIsoPoset + ?Sized> PartialIsoPoset for Arc<P> {
    type Source = P::Source;
    type Target = P::Target;

    fn apply(&self, p: &Self::Condition, x: &Self::Source) -> Option<Self::Target> {
        (**self).apply(p, x)
    }

    fn apply_inverse(&self, p: &Self::Condition, y: &Self::Target) -> Option<Self::Source> {
        (**self).apply_inverse(p, y)
    }
}

/// `D_x = {p : x ∈ dom(p)}`. Outside the set, `p` is refined to
/// `p ∪ {(x, picker(p, x))}`.
pub fn domain_dense_set<K, V, F>(x: K, picker: F) -> DenseSet<FinitePartialFunction<K, V>>
where
    K: Ord + Clone + Token + Send + Sync + 'static,
    V: Eq + Clone + Token + Send + Sync + 'static,
    F: Fn(&FinitePartialFunction<K, V>, &K) -> Result<V, BoxError> + Send + Sync + 'static,
{
    let label = format!("D[{}]", x.token());
    let key = x.clone();
    DenseSet::new(
        label,
        move |p: &FinitePartialFunction<K, V>| p.contains_key(&key),
        move |p: &FinitePartialFunction<K, V>| {
            let y = picker(p, &x)?;
            Ok(p.with(x.clone(), y)?)
        },
    )
}

/// `E_y = {p : y ∈ img(p)}`. Outside the set, `p` is refined to
/// `p ∪ {(picker(p, y), y)}`.
pub fn image_dense_set<K, V, F>(y: V, picker: F) -> DenseSet<FinitePartialFunction<K, V>>
where
    K: Ord + Clone + Token + Send + Sync + 'static,
    V: Eq + Clone + Token + Send + Sync + 'static,
    F: Fn(&FinitePartialFunction<K, V>, &V) -> Result<K, BoxError> + Send + Sync + 'static,
{
    let label = format!("E[{}]", y.token());
    let value = y.clone();
    DenseSet::new(
        label,
        move |p: &FinitePartialFunction<K, V>| p.preimage(&value).is_some(),
        move |p: &FinitePartialFunction<K, V>| {
            let x = picker(p, &y)?;
            if p.contains_key(&x) {
                return Err(format!("picked key {} is already in the domain", x.token()).into());
            }
            Ok(p.with(x, y.clone())?)
        },
    )
}

/// A value picker that returns the least-index carrier element accepted by
/// `legal`, trying at most `limit` candidates.
pub fn least_index_picker<K, C, L>(
    carrier: C,
    legal: L,
    limit: usize,
) -> impl Fn(&FinitePartialFunction<K, C::Element>, &K) -> Result<C::Element, BoxError> + Send + Sync + 'static
where
    K: Ord + Clone + Token,
    C: CountableCarrier + 'static,
    L: Fn(&FinitePartialFunction<K, C::Element>, &K, &C::Element) -> bool + Send + Sync + 'static,
{
    move |p, x| {
        let bound = carrier.len().map_or(limit, |n| n.min(limit));
        (0..bound)
            .map(|i| carrier.enumerate(i))
            .find(|y| legal(p, x, y))
            .ok_or_else(|| format!("no legal value for {} among {bound} candidates", x.token()).into())
    }
}

/// Families that know at which index the dense set forcing `x` into the
/// domain appears.
pub trait DomainSchedule<X> {
    fn domain_stage(&self, x: &X) -> Option<usize>;
}

/// Families that know at which index the dense set forcing `y` into the
/// image appears.
pub trait ImageSchedule<Y> {
    fn image_stage(&self, y: &Y) -> Option<usize>;
}

type DenseFactory<E, C> = Arc<dyn Fn(&E) -> DenseSet<C> + Send + Sync>;

/// `{D_x : x ∈ source}` in the source enumeration order.
pub struct ForwardFamily<S: CountableCarrier, C> {
    source: S,
    forward: DenseFactory<S::Element, C>,
}

impl<S: CountableCarrier, C> ForwardFamily<S, C> {
    pub fn new<F>(source: S, forward: F) -> Self
    where
        F: Fn(&S::Element) -> DenseSet<C> + Send + Sync + 'static,
    {
        ForwardFamily {
            source,
            forward: Arc::new(forward),
        }
    }
}

impl<S: CountableCarrier, C> DenseFamily<C> for ForwardFamily<S, C> {
    fn at(&self, n: usize) -> DenseSet<C> {
        (self.forward)(&self.source.enumerate(n))
    }

    fn size(&self) -> FamilySize {
        self.source.len().map_or(FamilySize::Unbounded, FamilySize::Finite)
    }
}

impl<S: CountableCarrier, C> DomainSchedule<S::Element> for ForwardFamily<S, C> {
    fn domain_stage(&self, x: &S::Element) -> Option<usize> {
        self.source.index(x)
    }
}

/// `{D_x} ∪ {E_y}` interleaved: index `2i` is `D` of the `i`-th source
/// element and index `2i + 1` is `E` of the `i`-th target element.
pub struct BackAndForth<S: CountableCarrier, T: CountableCarrier, C> {
    source: S,
    target: T,
    forward: DenseFactory<S::Element, C>,
    backward: DenseFactory<T::Element, C>,
}

impl<S: CountableCarrier, T: CountableCarrier, C> BackAndForth<S, T, C> {
    pub fn new<F, B>(source: S, target: T, forward: F, backward: B) -> Self
    where
        F: Fn(&S::Element) -> DenseSet<C> + Send + Sync + 'static,
        B: Fn(&T::Element) -> DenseSet<C> + Send + Sync + 'static,
    {
        BackAndForth {
            source,
            target,
            forward: Arc::new(forward),
            backward: Arc::new(backward),
        }
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn target(&self) -> &T {
        &self.target
    }
}

impl<S: CountableCarrier, T: CountableCarrier, C> DenseFamily<C> for BackAndForth<S, T, C> {
    fn at(&self, n: usize) -> DenseSet<C> {
        if n % 2 == 0 {
            (self.forward)(&self.source.enumerate(n / 2))
        } else {
            (self.backward)(&self.target.enumerate(n / 2))
        }
    }

    fn size(&self) -> FamilySize {
        match (self.source.len(), self.target.len()) {
            (Some(a), Some(b)) => FamilySize::Finite(a + b),
            _ => FamilySize::Unbounded,
        }
    }
}

impl<S: CountableCarrier, T: CountableCarrier, C> DomainSchedule<S::Element> for BackAndForth<S, T, C> {
    fn domain_stage(&self, x: &S::Element) -> Option<usize> {
        self.source.index(x).and_then(|i| i.checked_mul(2))
    }
}

impl<S: CountableCarrier, T: CountableCarrier, C> ImageSchedule<T::Element> for BackAndForth<S, T, C> {
    fn image_stage(&self, y: &T::Element) -> Option<usize> {
        self.target
            .index(y)
            .and_then(|i| i.checked_mul(2))
            .and_then(|i| i.checked_add(1))
    }
}

/// The value of the generic map at `x`: advances to one past the stage of
/// `D_x` and reads the condition there. Later stages extend it, so the
/// answer never changes.
pub fn generic_query<P, F>(b: &mut GenericBuilder<P, F>, x: &P::Source) -> Result<P::Target, PartialIsoError>
where
    P: PartialIsoPoset,
    F: DenseFamily<P::Condition> + DomainSchedule<P::Source>,
{
    let n = b
        .family()
        .domain_stage(x)
        .ok_or_else(|| PartialIsoError::Unreachable(x.token()))?;
    let stage = n.checked_add(1).ok_or_else(|| PartialIsoError::Unreachable(x.token()))?;
    b.advance(stage)?;
    b.order()
        .apply(&b.chain()[stage], x)
        .ok_or_else(|| PartialIsoError::Uncovered {
            element: x.token(),
            stage,
        })
}

/// The preimage of `y` under the generic map, via the stage of `E_y`.
pub fn generic_query_inverse<P, F>(
    b: &mut GenericBuilder<P, F>,
    y: &P::Target,
) -> Result<P::Source, PartialIsoError>
where
    P: PartialIsoPoset,
    F: DenseFamily<P::Condition> + ImageSchedule<P::Target>,
{
    let n = b
        .family()
        .image_stage(y)
        .ok_or_else(|| PartialIsoError::Unreachable(y.token()))?;
    let stage = n.checked_add(1).ok_or_else(|| PartialIsoError::Unreachable(y.token()))?;
    b.advance(stage)?;
    b.order()
        .apply_inverse(&b.chain()[stage], y)
        .ok_or_else(|| PartialIsoError::Uncovered {
            element: y.token(),
            stage,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Pf = FinitePartialFunction<char, u32>;

    fn pf(pairs: &[(char, u32)]) -> Pf {
        Pf::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn compatibility_is_agreement_on_shared_keys() {
        assert!(!fn_compatible(&pf(&[('x', 0)]), &pf(&[('x', 1)])));
        assert!(fn_compatible(&pf(&[]), &pf(&[('x', 1), ('y', 0)])));
        let p = pf(&[('x', 0), ('y', 1)]);
        let q = pf(&[('y', 1), ('z', 0)]);
        assert!(fn_compatible(&p, &q));
        assert_eq!(p.union(&q).unwrap().len(), 3);
    }

    #[test]
    fn conflicting_pairs_are_rejected() {
        assert!(matches!(
            Pf::from_pairs([('x', 0), ('x', 1)]),
            Err(PartialIsoError::Incompatible { .. })
        ));
    }

    #[test]
    fn union_of_chain_examples() {
        assert_eq!(union_of_chain::<char, u32>(&[pf(&[])]).unwrap(), pf(&[]));
        let chain = [pf(&[]), pf(&[('x', 0)]), pf(&[('x', 0), ('y', 1)])];
        assert_eq!(union_of_chain(&chain).unwrap(), pf(&[('x', 0), ('y', 1)]));
        let broken = [pf(&[('x', 0)]), pf(&[('x', 1)])];
        let err = union_of_chain(&broken).unwrap_err();
        assert!(err.to_string().contains('x'));
    }

    #[test]
    fn describe_is_sorted_token_pairs() {
        let p = pf(&[('y', 1), ('x', 0)]);
        assert_eq!(p.describe().to_string(), r#"[["x","0"],["y","1"]]"#);
    }

    #[test]
    fn domain_dense_set_with_constant_picker() {
        let d = domain_dense_set('x', |_: &Pf, _: &char| Ok(7u32));
        assert_eq!(d.refine(&pf(&[])).unwrap(), pf(&[('x', 7)]));
        let p = pf(&[('x', 3)]);
        assert_eq!(d.refine(&p).unwrap(), p);
        assert_eq!(d.label(), "D[x]");
    }

    #[test]
    fn least_index_picker_takes_first_legal_value() {
        let values = FiniteCarrier::new(vec![0u32, 1, 2]);
        // legal: value not already used
        let picker = least_index_picker(values, |p: &Pf, _: &char, y: &u32| p.preimage(y).is_none(), 100);
        let d = domain_dense_set('x', picker);
        assert_eq!(d.refine(&pf(&[('z', 1)])).unwrap(), pf(&[('z', 1), ('x', 0)]));
        assert_eq!(d.refine(&pf(&[('z', 0)])).unwrap(), pf(&[('z', 0), ('x', 1)]));
    }

    #[test]
    fn picker_failure_propagates() {
        let values = FiniteCarrier::new(vec![0u32]);
        let picker = least_index_picker(values, |_: &Pf, _: &char, _: &u32| false, 100);
        let d = domain_dense_set('x', picker);
        assert!(d.refine(&pf(&[])).is_err());
    }

    fn fn_x_to_2() -> GenericBuilder<FnPoset<char, u32>, ForwardFamily<FiniteCarrier<char>, Pf>> {
        let family = ForwardFamily::new(FiniteCarrier::new(vec!['x']), |x: &char| {
            domain_dense_set(*x, |_: &Pf, _: &char| Ok(0u32))
        });
        GenericBuilder::from_max(FnPoset::new(), family).unwrap()
    }

    #[test]
    fn one_step_over_fn_x_2() {
        let mut b = fn_x_to_2();
        b.advance(1).unwrap();
        let next = &b.chain()[1];
        assert!(next.contains_key(&'x'));
        assert!(next.extends(&b.chain()[0]));
        // the only refinements of ∅ into D_x are {(x,0)} and {(x,1)}
        assert!([pf(&[('x', 0)]), pf(&[('x', 1)])].contains(next));
    }

    #[test]
    fn incompatible_condition_never_enters_the_filter() {
        let mut b = fn_x_to_2();
        b.advance(1).unwrap();
        assert_eq!(b.chain(), &[pf(&[]), pf(&[('x', 0)])]);
        assert!(b.filter_contains(&pf(&[])));
        assert!(!b.filter_contains(&pf(&[('x', 1)])));
        b.advance(10).unwrap();
        assert!(!b.filter_contains(&pf(&[('x', 1)])));
    }

    #[test]
    fn generic_query_is_stable() {
        let mut b = fn_x_to_2();
        assert_eq!(generic_query(&mut b, &'x').unwrap(), 0);
        assert_eq!(generic_query(&mut b, &'x').unwrap(), 0);
        assert!(matches!(
            generic_query(&mut b, &'q'),
            Err(PartialIsoError::Unreachable(_))
        ));
    }

    #[test]
    fn filter_lower_bound_witness_on_fn() {
        // Fn(N, 2) with D_n forcing n into the domain with value n % 2.
        let family = ForwardFamily::new(FiniteCarrier::new((0u32..8).collect()), |x: &u32| {
            domain_dense_set(*x, |_: &FinitePartialFunction<u32, u32>, x: &u32| Ok(x % 2))
        });
        let mut b = GenericBuilder::from_max(FnPoset::new(), family).unwrap();
        b.advance(8).unwrap();
        let c5 = b.chain()[5].clone();
        let sub = c5.restrict([4u32].iter());
        assert!(c5.extends(&sub));
        let r = b.verify_filter_axioms(&[c5.clone(), sub.clone()]);
        assert!(r.passed(), "{r}");
        assert_eq!(b.lower_bound_witness(&c5, &sub), Some(5));
        assert_eq!(r.checks[1].witness.as_deref(), Some("chain[5]"));
    }

    proptest! {
        #[test]
        fn compatible_iff_union_is_functional(
            a in proptest::collection::btree_map(0u8..6, 0u8..3, 0..5),
            b in proptest::collection::btree_map(0u8..6, 0u8..3, 0..5),
        ) {
            let p = FinitePartialFunction::<u8, u8>::from_pairs(a.clone()).unwrap();
            let q = FinitePartialFunction::<u8, u8>::from_pairs(b.clone()).unwrap();
            let functional = a.iter().all(|(k, v)| b.get(k).is_none_or(|w| w == v));
            prop_assert_eq!(fn_compatible(&p, &q), functional);
            prop_assert_eq!(p.union(&q).is_ok(), functional);
            if let Ok(u) = p.union(&q) {
                prop_assert!(u.extends(&p) && u.extends(&q));
            }
        }
    }
}
