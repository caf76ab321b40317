//! Isomorphisms between countable atomless Boolean algebras, built from
//! finite partial isomorphisms given on atoms.
//!
//! A finite subalgebra is stored as its atom list; an element belongs to it
//! iff it is the join of the atoms below it. A condition of the
//! back-and-forth is an [`AtomIso`], a bijection between the atoms of a
//! finite source subalgebra and the atoms of a finite target subalgebra.

mod clopen;
mod interval;
mod laws;
mod lemma;
mod powerset;

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use thiserror::Error;

use crate::engine::{DenseSet, GenericBuilder, Preorder};
use crate::partialiso::{generic_query, generic_query_inverse, BackAndForth, CountableCarrier, PartialIsoPoset};
use crate::report::{Check, Report};
use crate::token::Token;

pub use clopen::{Clopen, ClopenAlgebra};
pub use interval::{IntervalAlgebra, IntervalSet};
pub use laws::{check_atomless, check_laws, SampleElement};
pub use lemma::{check_powerset_lemma, generated_subalgebra, powerset_partitions};
pub use powerset::PowersetAlgebra;

/// A Boolean algebra on an enumerated carrier whose elements are kept in
/// canonical form, so `==` is equality in the algebra.
pub trait BooleanAlgebra: CountableCarrier {
    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;
    fn meet(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn join(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn complement(&self, a: &Self::Element) -> Self::Element;

    /// Some `v` with `0 < v < u`, or `None` when `u` is zero or an atom.
    fn split(&self, u: &Self::Element) -> Option<Self::Element>;

    fn leq(&self, a: &Self::Element, b: &Self::Element) -> bool {
        self.meet(a, b) == *a
    }

    /// `a − b = a ∧ b'`.
    fn diff(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.meet(a, &self.complement(b))
    }

    fn is_zero(&self, a: &Self::Element) -> bool {
        *a == self.zero()
    }

    fn join_all<'a, I>(&self, items: I) -> Self::Element
    where
        I: IntoIterator<Item = &'a Self::Element>,
        Self::Element: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.join(&acc, x))
    }
}

impl<A: BooleanAlgebra + ?Sized> BooleanAlgebra for Arc<A> {
    fn zero(&self) -> Self::Element {
        (**self).zero()
    }

    fn one(&self) -> Self::Element {
        (**self).one()
    }

    fn meet(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        (**self).meet(a, b)
    }

    fn join(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        (**self).join(a, b)
    }

    fn complement(&self, a: &Self::Element) -> Self::Element {
        (**self).complement(a)
    }

    fn split(&self, u: &Self::Element) -> Option<Self::Element> {
        (**self).split(u)
    }
}

type El<A> = <A as CountableCarrier>::Element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BooleanError {
    #[error("not a subalgebra element: {0}")]
    NotSubalgebraElement(String),
    #[error("split failed on {0}: the algebra is not atomless there")]
    NotAtomless(String),
    #[error("partner contract violated at atom {atom}: {detail}")]
    PartnerContract { atom: String, detail: String },
    #[error("invalid atom set: {0}")]
    InvalidAtoms(String),
}

/// A finite subalgebra given by its atoms, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSubalgebra<E> {
    atoms: Vec<E>,
}

impl<E: Clone + Ord + Token> FiniteSubalgebra<E> {
    /// `{0, 1}`.
    pub fn trivial<A: BooleanAlgebra<Element = E> + ?Sized>(ba: &A) -> Self {
        FiniteSubalgebra { atoms: vec![ba.one()] }
    }

    /// Checks that the atoms are nonzero, pairwise disjoint, and join to one.
    pub fn from_atoms<A: BooleanAlgebra<Element = E> + ?Sized>(ba: &A, atoms: Vec<E>) -> Result<Self, BooleanError> {
        let c = Self::from_atoms_unchecked(atoms);
        let report = c.atom_axioms(ba);
        match report.first_failure() {
            None => Ok(c),
            Some(check) => Err(BooleanError::InvalidAtoms(check.to_string())),
        }
    }

    /// No validation. Meant for building defective inputs for the checkers.
    pub fn from_atoms_unchecked(mut atoms: Vec<E>) -> Self {
        atoms.sort();
        atoms.dedup();
        FiniteSubalgebra { atoms }
    }

    pub fn atoms(&self) -> &[E] {
        &self.atoms
    }

    /// The join of the atoms selected by `mask`, bit `i` selecting atom `i`.
    pub fn element<A: BooleanAlgebra<Element = E> + ?Sized>(&self, ba: &A, mask: u64) -> E {
        ba.join_all(self.atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| a))
    }

    /// All `2^k` elements, indexed by atom mask. Only for small `k`.
    pub fn elements<A: BooleanAlgebra<Element = E> + ?Sized>(&self, ba: &A) -> Vec<E> {
        assert!(self.atoms.len() <= 20, "too many atoms to list every element");
        (0..1u64 << self.atoms.len()).map(|m| self.element(ba, m)).collect()
    }

    pub fn contains<A: BooleanAlgebra<Element = E> + ?Sized>(&self, ba: &A, a: &E) -> bool {
        atoms_below(ba, self, a).is_ok()
    }

    /// Nonzero, pairwise disjoint, join to one.
    pub fn atom_axioms<A: BooleanAlgebra<Element = E> + ?Sized>(&self, ba: &A) -> Report {
        let mut report = Report::new();
        let zero_atom = self.atoms.iter().find(|a| ba.is_zero(a)).map(|a| format!("{} is zero", a.token()));
        report.push(Check::from_failure("atoms/nonzero", zero_atom));
        let mut overlap = None;
        'outer: for (i, a) in self.atoms.iter().enumerate() {
            for b in &self.atoms[i + 1..] {
                if !ba.is_zero(&ba.meet(a, b)) {
                    overlap = Some(format!("{} meets {}", a.token(), b.token()));
                    break 'outer;
                }
            }
        }
        report.push(Check::from_failure("atoms/disjoint", overlap));
        let total = ba.join_all(&self.atoms);
        report.push(Check::from_failure(
            "atoms/join-is-one",
            (total != ba.one()).then(|| format!("join is {}", total.token())),
        ));
        report
    }
}

/// The atoms of `c` below `a`; fails if `a` is not their join.
pub fn atoms_below<A>(ba: &A, c: &FiniteSubalgebra<El<A>>, a: &El<A>) -> Result<Vec<El<A>>, BooleanError>
where
    A: BooleanAlgebra + ?Sized,
{
    let below: Vec<El<A>> = c.atoms.iter().filter(|x| ba.leq(x, a)).cloned().collect();
    if ba.join_all(&below) == *a {
        Ok(below)
    } else {
        Err(BooleanError::NotSubalgebraElement(a.token()))
    }
}

/// Every nonzero element of `c` has an atom below it, and for every set
/// `E` of atoms and nonzero `a ≤ ⋁E` in `c` some `x ∈ E` meets `a`.
/// Also runs [`FiniteSubalgebra::atom_axioms`].
pub fn dense_atom_check<A>(ba: &A, c: &FiniteSubalgebra<El<A>>) -> Report
where
    A: BooleanAlgebra + ?Sized,
{
    let mut report = c.atom_axioms(ba);
    let k = c.atoms.len();
    assert!(k <= 12, "exhaustive atom check is limited to 12 atoms");
    let elements = c.elements(ba);

    let mut failure = None;
    for b in elements.iter().filter(|b| !ba.is_zero(b)) {
        if !c.atoms.iter().any(|x| ba.leq(x, b)) {
            failure = Some(format!("no atom below {}", b.token()));
            break;
        }
    }
    report.push(Check::from_failure("atoms/dense", failure));

    let mut failure = None;
    'sup: for e_mask in 0..1u64 << k {
        let e: Vec<&El<A>> = (0..k).filter(|i| e_mask >> i & 1 == 1).map(|i| &c.atoms[i]).collect();
        let sup = ba.join_all(e.iter().copied());
        for a in elements.iter().filter(|a| !ba.is_zero(a) && ba.leq(a, &sup)) {
            if !e.iter().any(|x| !ba.is_zero(&ba.meet(a, x))) {
                failure = Some(format!("{} is below the join but meets no atom of it", a.token()));
                break 'sup;
            }
        }
    }
    report.push(Check::from_failure("atoms/supremum", failure));
    report
}

/// `C(u)`: its atoms are the nonzero elements among `a ∧ u` and `a − u`
/// for the atoms `a` of `C`.
pub fn simple_extension<A>(ba: &A, c: &FiniteSubalgebra<El<A>>, u: &El<A>) -> FiniteSubalgebra<El<A>>
where
    A: BooleanAlgebra + ?Sized,
{
    let mut atoms = Vec::with_capacity(2 * c.atoms.len());
    for a in &c.atoms {
        for piece in [ba.meet(a, u), ba.diff(a, u)] {
            if !ba.is_zero(&piece) {
                atoms.push(piece);
            }
        }
    }
    FiniteSubalgebra::from_atoms_unchecked(atoms)
}

/// The atoms of `C` below `u`, below `u'`, and split by `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomClasses<E> {
    pub below: Vec<E>,
    pub disjoint: Vec<E>,
    pub split: Vec<E>,
}

pub fn classify_atoms<A>(ba: &A, c: &FiniteSubalgebra<El<A>>, u: &El<A>) -> AtomClasses<El<A>>
where
    A: BooleanAlgebra + ?Sized,
{
    let mut classes = AtomClasses {
        below: Vec::new(),
        disjoint: Vec::new(),
        split: Vec::new(),
    };
    let not_u = ba.complement(u);
    for a in &c.atoms {
        if ba.leq(a, u) {
            classes.below.push(a.clone());
        } else if ba.leq(a, &not_u) {
            classes.disjoint.push(a.clone());
        } else {
            classes.split.push(a.clone());
        }
    }
    classes
}

/// A bijection between the atoms of two finite subalgebras, sorted by
/// source atom. It induces `h(⋁S) = ⋁h[S]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomIso<S, T> {
    pairs: Vec<(S, T)>,
}

impl<S: Clone + Ord + Token, T: Clone + Ord + Token> AtomIso<S, T> {
    /// `{(1, 1)}`, the atom form of `{(0, 0), (1, 1)}`.
    pub fn trivial<A, B>(a: &A, b: &B) -> Self
    where
        A: BooleanAlgebra<Element = S> + ?Sized,
        B: BooleanAlgebra<Element = T> + ?Sized,
    {
        AtomIso {
            pairs: vec![(a.one(), b.one())],
        }
    }

    pub fn from_pairs(mut pairs: Vec<(S, T)>) -> Self {
        pairs.sort();
        AtomIso { pairs }
    }

    pub fn pairs(&self) -> &[(S, T)] {
        &self.pairs
    }

    pub fn source(&self) -> FiniteSubalgebra<S> {
        FiniteSubalgebra::from_atoms_unchecked(self.pairs.iter().map(|(s, _)| s.clone()).collect())
    }

    pub fn target(&self) -> FiniteSubalgebra<T> {
        FiniteSubalgebra::from_atoms_unchecked(self.pairs.iter().map(|(_, t)| t.clone()).collect())
    }

    pub fn image_of_atom(&self, a: &S) -> Option<&T> {
        self.pairs.iter().find(|(s, _)| s == a).map(|(_, t)| t)
    }

    pub fn inverse(&self) -> AtomIso<T, S> {
        AtomIso::from_pairs(self.pairs.iter().map(|(s, t)| (t.clone(), s.clone())).collect())
    }

    /// `h(x)`, or `None` if `x` is not in the source subalgebra.
    pub fn apply<A, B>(&self, a: &A, b: &B, x: &S) -> Option<T>
    where
        A: BooleanAlgebra<Element = S> + ?Sized,
        B: BooleanAlgebra<Element = T> + ?Sized,
    {
        let mut covered = a.zero();
        let mut image = b.zero();
        for (s, t) in &self.pairs {
            if a.leq(s, x) {
                covered = a.join(&covered, s);
                image = b.join(&image, t);
            }
        }
        (covered == *x).then_some(image)
    }

    /// `h⁻¹(y)`, or `None` if `y` is not in the target subalgebra.
    pub fn apply_inverse<A, B>(&self, a: &A, b: &B, y: &T) -> Option<S>
    where
        A: BooleanAlgebra<Element = S> + ?Sized,
        B: BooleanAlgebra<Element = T> + ?Sized,
    {
        let mut covered = b.zero();
        let mut image = a.zero();
        for (s, t) in &self.pairs {
            if b.leq(t, y) {
                covered = b.join(&covered, t);
                image = a.join(&image, s);
            }
        }
        (covered == *y).then_some(image)
    }

    pub fn token_pairs(&self) -> Vec<(String, String)> {
        self.pairs.iter().map(|(s, t)| (s.token(), t.token())).collect()
    }

    pub fn describe(&self) -> Value {
        Value::Array(
            self.pairs
                .iter()
                .map(|(s, t)| Value::Array(vec![Value::String(s.token()), Value::String(t.token())]))
                .collect(),
        )
    }
}

/// `w = ⋁{split(h(y)) : y split by u} ∨ ⋁h[{a : a ≤ u}]`.
pub fn find_partner<A, B>(a: &A, b: &B, h: &AtomIso<El<A>, El<B>>, u: &El<A>) -> Result<El<B>, BooleanError>
where
    A: BooleanAlgebra + ?Sized,
    B: BooleanAlgebra + ?Sized,
{
    let classes = classify_atoms(a, &h.source(), u);
    let image = |x: &El<A>| h.image_of_atom(x).expect("classified atoms come from h").clone();
    let mut w = b.zero();
    for y in &classes.split {
        let hy = image(y);
        let piece = b.split(&hy).ok_or_else(|| BooleanError::NotAtomless(hy.token()))?;
        w = b.join(&w, &piece);
    }
    for x in &classes.below {
        w = b.join(&w, &image(x));
    }
    Ok(w)
}

/// The extension `H` of `h` to `C(u) → D(w)`: each atom `a` of `C`
/// contributes `a ∧ u ↦ h(a) ∧ w` and `a − u ↦ h(a) − w`. Fails when one
/// side of a pair is zero and the other is not.
pub fn extend_iso<A, B>(
    a: &A,
    b: &B,
    h: &AtomIso<El<A>, El<B>>,
    u: &El<A>,
    w: &El<B>,
) -> Result<AtomIso<El<A>, El<B>>, BooleanError>
where
    A: BooleanAlgebra + ?Sized,
    B: BooleanAlgebra + ?Sized,
{
    let mut pairs = Vec::with_capacity(2 * h.pairs.len());
    for (s, t) in &h.pairs {
        for (x, y, side) in [(a.meet(s, u), b.meet(t, w), "inside"), (a.diff(s, u), b.diff(t, w), "outside")] {
            match (a.is_zero(&x), b.is_zero(&y)) {
                (true, true) => {}
                (false, false) => pairs.push((x, y)),
                (zx, _) => {
                    let detail = if zx {
                        format!("source piece {side} is zero but target piece {} is not", y.token())
                    } else {
                        format!("source piece {} {side} is nonzero but target piece is zero", x.token())
                    };
                    return Err(BooleanError::PartnerContract { atom: s.token(), detail });
                }
            }
        }
    }
    Ok(AtomIso::from_pairs(pairs))
}

/// [`extend_iso`] without the zero/nonzero comparison. Pairs whose source
/// piece is zero are dropped; everything else is kept as is.
pub fn extend_iso_unchecked<A, B>(
    a: &A,
    b: &B,
    h: &AtomIso<El<A>, El<B>>,
    u: &El<A>,
    w: &El<B>,
) -> AtomIso<El<A>, El<B>>
where
    A: BooleanAlgebra + ?Sized,
    B: BooleanAlgebra + ?Sized,
{
    let mut pairs = Vec::new();
    for (s, t) in &h.pairs {
        for (x, y) in [(a.meet(s, u), b.meet(t, w)), (a.diff(s, u), b.diff(t, w))] {
            if !a.is_zero(&x) {
                pairs.push((x, y));
            }
        }
    }
    AtomIso::from_pairs(pairs)
}

/// Exhaustive check that `big` is an isomorphism `C(u) → D(w)` extending
/// `h` with `H(u) = w`, and that `w` satisfies both partner biconditionals
/// on the elements of `C`. Limited to 12 atoms.
pub fn check_extension<A, B>(
    a: &A,
    b: &B,
    h: &AtomIso<El<A>, El<B>>,
    big: &AtomIso<El<A>, El<B>>,
    u: &El<A>,
    w: &El<B>,
) -> Report
where
    A: BooleanAlgebra + ?Sized,
    B: BooleanAlgebra + ?Sized,
{
    let mut report = Report::new();
    let c = h.source();
    let not_u = a.complement(u);
    let not_w = b.complement(w);
    let mut failure = None;
    for x in c.elements(a) {
        let hx = h.apply(a, b, &x).expect("element of C");
        if a.leq(&x, u) != b.leq(&hx, w) {
            failure = Some(format!("x = {}: x <= u disagrees with h(x) <= w", x.token()));
            break;
        }
        if a.leq(&x, &not_u) != b.leq(&hx, &not_w) {
            failure = Some(format!("x = {}: x <= u' disagrees with h(x) <= w'", x.token()));
            break;
        }
    }
    report.push(Check::from_failure("partner/biconditionals", failure));

    report.extend(big.source().atom_axioms(a).scoped("source"));
    report.extend(big.target().atom_axioms(b).scoped("target"));

    let restricts = c
        .elements(a)
        .into_iter()
        .find(|x| big.apply(a, b, x) != h.apply(a, b, x))
        .map(|x| format!("H and h differ at {}", x.token()));
    report.push(Check::from_failure("extension/restricts", restricts));
    report.push(Check::from_failure(
        "extension/maps-u-to-w",
        (big.apply(a, b, u).as_ref() != Some(w)).then(|| "H(u) != w".to_string()),
    ));

    let cu = big.source();
    let elements = cu.elements(a);
    let images: Vec<El<B>> = elements.iter().map(|x| big.apply(a, b, x).expect("element of C(u)")).collect();
    let mut failure = None;
    'hom: for (i, x) in elements.iter().enumerate() {
        if b.complement(&images[i]) != big.apply(a, b, &a.complement(x)).expect("closed") {
            failure = Some(format!("complement of {}", x.token()));
            break;
        }
        for (j, y) in elements.iter().enumerate() {
            let m = big.apply(a, b, &a.meet(x, y)).expect("closed");
            let jn = big.apply(a, b, &a.join(x, y)).expect("closed");
            if m != b.meet(&images[i], &images[j]) || jn != b.join(&images[i], &images[j]) {
                failure = Some(format!("meet or join of {} and {}", x.token(), y.token()));
                break 'hom;
            }
        }
    }
    report.push(Check::from_failure("extension/homomorphism", failure));
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    report.push(Check::from_failure(
        "extension/injective",
        (sorted.len() != images.len()).then(|| "two elements share an image".to_string()),
    ));
    report
}

/// Conditions of the Boolean back-and-forth ordered by extension.
pub struct IsoPoset<A, B> {
    source: Arc<A>,
    target: Arc<B>,
}

impl<A, B> IsoPoset<A, B> {
    pub fn new(source: Arc<A>, target: Arc<B>) -> Self {
        IsoPoset { source, target }
    }

    pub fn source(&self) -> &Arc<A> {
        &self.source
    }

    pub fn target(&self) -> &Arc<B> {
        &self.target
    }
}

pub type BaCondition<A, B> = AtomIso<El<A>, El<B>>;
pub type BaFamily<A, B> = BackAndForth<Arc<A>, Arc<B>, BaCondition<A, B>>;
pub type BaBuilder<A, B> = GenericBuilder<IsoPoset<A, B>, BaFamily<A, B>>;

impl<A: BooleanAlgebra, B: BooleanAlgebra> Preorder for IsoPoset<A, B> {
    type Condition = BaCondition<A, B>;

    /// `p` extends `q`: it agrees with `q` on every atom of `q`.
    fn leq(&self, p: &Self::Condition, q: &Self::Condition) -> bool {
        q.pairs
            .iter()
            .all(|(s, t)| p.apply(&*self.source, &*self.target, s).as_ref() == Some(t))
    }

    fn max(&self) -> Option<Self::Condition> {
        Some(AtomIso::trivial(&*self.source, &*self.target))
    }

    fn describe(&self, p: &Self::Condition) -> Value {
        p.describe()
    }
}

impl<A: BooleanAlgebra, B: BooleanAlgebra> PartialIsoPoset for IsoPoset<A, B> {
    type Source = El<A>;
    type Target = El<B>;

    fn apply(&self, p: &Self::Condition, x: &El<A>) -> Option<El<B>> {
        p.apply(&*self.source, &*self.target, x)
    }

    fn apply_inverse(&self, p: &Self::Condition, y: &El<B>) -> Option<El<A>> {
        p.apply_inverse(&*self.source, &*self.target, y)
    }
}

/// Chooses the target partner of a new source element.
pub type PartnerFn<A, B> =
    Arc<dyn Fn(&A, &B, &BaCondition<A, B>, &El<A>) -> Result<El<B>, BooleanError> + Send + Sync>;

/// The builder with the lemma partner in both directions: `D_a` extends
/// forward with `u = a`, and `E_b` extends the inverse with `u = b` and
/// inverts back.
pub fn build_ba_iso<A, B>(source: Arc<A>, target: Arc<B>) -> BaBuilder<A, B>
where
    A: BooleanAlgebra + 'static,
    B: BooleanAlgebra + 'static,
{
    let partner: PartnerFn<A, B> = Arc::new(|a: &A, b: &B, h: &BaCondition<A, B>, u: &El<A>| find_partner(a, b, h, u));
    build_ba_iso_with(source, target, partner, true)
}

/// Like [`build_ba_iso`], with a caller-supplied forward partner. With
/// `checked = false` the forward extension skips the partner contract.
pub fn build_ba_iso_with<A, B>(
    source: Arc<A>,
    target: Arc<B>,
    partner: PartnerFn<A, B>,
    checked: bool,
) -> BaBuilder<A, B>
where
    A: BooleanAlgebra + 'static,
    B: BooleanAlgebra + 'static,
{
    let (s1, t1) = (Arc::clone(&source), Arc::clone(&target));
    let (s2, t2) = (Arc::clone(&source), Arc::clone(&target));
    let family = BackAndForth::new(
        Arc::clone(&source),
        Arc::clone(&target),
        move |x: &El<A>| {
            let (s, t, partner) = (Arc::clone(&s1), Arc::clone(&t1), Arc::clone(&partner));
            let (s_in, t_in) = (Arc::clone(&s1), Arc::clone(&t1));
            let key = x.clone();
            let u = x.clone();
            DenseSet::new(
                format!("D[{}]", x.token()),
                move |p: &BaCondition<A, B>| p.apply(&*s_in, &*t_in, &key).is_some(),
                move |p: &BaCondition<A, B>| {
                    let w = partner(&s, &t, p, &u)?;
                    if checked {
                        Ok(extend_iso(&*s, &*t, p, &u, &w)?)
                    } else {
                        Ok(extend_iso_unchecked(&*s, &*t, p, &u, &w))
                    }
                },
            )
        },
        move |y: &El<B>| {
            let (s, t) = (Arc::clone(&s2), Arc::clone(&t2));
            let (s_in, t_in) = (Arc::clone(&s2), Arc::clone(&t2));
            let key = y.clone();
            let v = y.clone();
            DenseSet::new(
                format!("E[{}]", y.token()),
                move |p: &BaCondition<A, B>| p.apply_inverse(&*s_in, &*t_in, &key).is_some(),
                move |p: &BaCondition<A, B>| {
                    let inv = p.inverse();
                    let w = find_partner(&*t, &*s, &inv, &v)?;
                    Ok(extend_iso(&*t, &*s, &inv, &v, &w)?.inverse())
                },
            )
        },
    );
    GenericBuilder::from_max(IsoPoset::new(source, target), family).expect("trivial condition")
}

/// Queries `f` on the first `n` source elements and `f⁻¹` on the first `n`
/// target elements, then checks bounds, meet/join/complement on
/// `pair_samples` pairs drawn with `seed`, injectivity, attained targets,
/// and the atom axioms of the final condition.
pub fn verify_ba_iso_prefix<A, B>(b: &mut BaBuilder<A, B>, n: usize, pair_samples: usize, seed: u64) -> Report
where
    A: BooleanAlgebra + 'static,
    B: BooleanAlgebra + 'static,
{
    let mut report = Report::new();
    let src = Arc::clone(b.order().source());
    let tgt = Arc::clone(b.order().target());

    let mut points = Vec::with_capacity(n);
    let mut query_failure = None;
    for i in 0..n {
        let x = src.enumerate(i);
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
            .map(|j| tgt.enumerate(j))
            .find_map(|y| generic_query_inverse(b, &y).err().map(|e| format!("f^-1({}): {e}", y.token())));
    }
    report.push(Check::from_failure("boolean/query", query_failure));

    let p = b.current().clone();
    let f = |x: &El<A>| p.apply(&*src, &*tgt, x);

    let stale = points
        .iter()
        .find(|(x, y)| f(x).as_ref() != Some(y))
        .map(|(x, _)| format!("answer for {} changed", x.token()));
    report.push(Check::from_failure("boolean/persistent", stale));

    let bounds = (f(&src.zero()) != Some(tgt.zero()) || f(&src.one()) != Some(tgt.one()))
        .then(|| "f does not fix 0 and 1".to_string());
    report.push(Check::from_failure("boolean/bounds", bounds));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    if !points.is_empty() {
        for _ in 0..pair_samples {
            let (x, fx) = points.choose(&mut rng).expect("nonempty");
            let (y, fy) = points.choose(&mut rng).expect("nonempty");
            let pair = || format!("{} and {}", x.token(), y.token());
            if f(&src.meet(x, y)) != Some(tgt.meet(fx, fy)) {
                failure = Some(format!("meet of {}", pair()));
            } else if f(&src.join(x, y)) != Some(tgt.join(fx, fy)) {
                failure = Some(format!("join of {}", pair()));
            } else if f(&src.complement(x)) != Some(tgt.complement(fx)) {
                failure = Some(format!("complement of {}", x.token()));
            }
            if failure.is_some() {
                break;
            }
        }
    }
    let check = Check::from_failure("boolean/homomorphism", failure);
    report.push(if check.pass {
        check.with_witness(format!("{pair_samples} pairs"))
    } else {
        check
    });

    let mut images: Vec<&El<B>> = points.iter().map(|(_, y)| y).collect();
    images.sort();
    let dup = images.windows(2).find(|w| w[0] == w[1]).map(|w| format!("{} has two preimages", w[0].token()));
    report.push(Check::from_failure("boolean/injective", dup));

    let missing = (0..n)
        .map(|j| tgt.enumerate(j))
        .find(|y| p.apply_inverse(&*src, &*tgt, y).is_none())
        .map(|y| format!("{} not attained", y.token()));
    report.push(Check::from_failure("boolean/targets-attained", missing));

    report.extend(p.source().atom_axioms(&*src).scoped("boolean/source"));
    report.extend(p.target().atom_axioms(&*tgt).scoped("boolean/target"));
    report
}
