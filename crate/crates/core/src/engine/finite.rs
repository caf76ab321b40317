//! Finite preorders with explicitly listed dense sets, used as a brute-force
//! oracle for the engine.

use std::sync::Arc;

use rand::Rng;
use serde_json::Value;

use super::{DenseFamily, DenseSet, FiniteFamily, Preorder};

/// A preorder on `0..len` stored as a full relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Reflexive-transitive closure of `pairs`, where `(p, q)` means `p <= q`.
    pub fn from_relation(len: usize, pairs: &[(usize, usize)]) -> Self {
        let mut leq = vec![vec![false; len]; len];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(p, q) in pairs {
            leq[p][q] = true;
        }
        // Warshall
        for k in 0..len {
            for i in 0..len {
                if leq[i][k] {
                    for j in 0..len {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        FinitePoset { leq }
    }

    /// A random preorder with `len` conditions. Each ordered pair is related
    /// with probability `density` before closure, so cycles (and therefore
    /// non-antisymmetric preorders) are possible.
    pub fn random<R: Rng>(rng: &mut R, len: usize, density: f64) -> Self {
        let mut pairs = Vec::new();
        for p in 0..len {
            for q in 0..len {
                if p != q && rng.gen_bool(density) {
                    pairs.push((p, q));
                }
            }
        }
        Self::from_relation(len, &pairs)
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn relates(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }

    /// All conditions below `p`, in index order.
    pub fn down_set(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.leq[q][p]).collect()
    }

    pub fn is_dense(&self, members: &[bool]) -> bool {
        (0..self.len()).all(|p| self.down_set(p).into_iter().any(|q| members[q]))
    }

    /// Upward closure of a set of conditions.
    pub fn upward_closure(&self, from: &[usize]) -> Vec<bool> {
        (0..self.len())
            .map(|t| from.iter().any(|&q| self.leq[q][t]))
            .collect()
    }

    /// `None` if `set` is a nonempty filter, otherwise a description of the
    /// first violated axiom.
    pub fn filter_violation(&self, set: &[bool]) -> Option<String> {
        let n = self.len();
        if !set.iter().any(|&b| b) {
            return Some("empty".into());
        }
        for q in 0..n {
            if !set[q] {
                continue;
            }
            for p in 0..n {
                if self.leq[q][p] && !set[p] {
                    return Some(format!("not upward closed: {q} <= {p}, {p} missing"));
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                if set[p] && set[q] && !(0..n).any(|r| set[r] && self.leq[r][p] && self.leq[r][q]) {
                    return Some(format!("no lower bound for {p} and {q} inside the set"));
                }
            }
        }
        None
    }

    /// Every filter containing `start` that meets all of `dense`, by
    /// enumerating subsets. Only for tiny posets.
    pub fn generic_filters_through(&self, start: usize, dense: &[ExplicitDense]) -> Vec<Vec<bool>> {
        let n = self.len();
        assert!(n <= 16, "brute-force enumeration is limited to 16 conditions");
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & (1 << start) == 0 {
                continue;
            }
            let set: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
            let generic = dense
                .iter()
                .all(|d| (0..n).any(|i| set[i] && d.members[i]));
            if generic && self.filter_violation(&set).is_none() {
                out.push(set);
            }
        }
        out
    }
}

impl Preorder for FinitePoset {
    type Condition = usize;

    fn leq(&self, p: &usize, q: &usize) -> bool {
        self.leq[*p][*q]
    }

    fn max(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|p| self.leq[p][m]))
    }

    fn describe(&self, p: &usize) -> Value {
        Value::from(*p)
    }
}

/// A dense set listed extensionally. The refinement oracle picks the
/// least-index member below the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitDense {
    pub label: String,
    pub members: Vec<bool>,
}

impl ExplicitDense {
    pub fn new(label: impl Into<String>, members: Vec<bool>) -> Self {
        ExplicitDense {
            label: label.into(),
            members,
        }
    }

    /// A random subset, then patched to be dense: every condition without a
    /// member below it gets a random element of its down-set added.
    pub fn random<R: Rng>(poset: &FinitePoset, rng: &mut R, label: impl Into<String>) -> Self {
        let n = poset.len();
        let mut members: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.25)).collect();
        for p in 0..n {
            let down = poset.down_set(p);
            if !down.iter().any(|&q| members[q]) {
                members[down[rng.gen_range(0..down.len())]] = true;
            }
        }
        ExplicitDense::new(label, members)
    }

    pub fn to_dense_set(&self, poset: Arc<FinitePoset>) -> DenseSet<usize> {
        let members = Arc::new(self.members.clone());
        let in_set = Arc::clone(&members);
        DenseSet::new(
            self.label.clone(),
            move |p: &usize| in_set[*p],
            move |p: &usize| {
                poset
                    .down_set(*p)
                    .into_iter()
                    .find(|&q| members[q])
                    .ok_or_else(|| format!("no member below {p}").into())
            },
        )
    }
}

/// A random finite poset together with a random family of dense sets.
pub struct RandomInstance {
    pub poset: Arc<FinitePoset>,
    pub dense: Vec<ExplicitDense>,
    pub start: usize,
}

impl RandomInstance {
    pub fn generate<R: Rng>(rng: &mut R, max_len: usize, max_sets: usize) -> Self {
        let len = rng.gen_range(1..=max_len);
        let density = rng.gen_range(0.02..0.3);
        let poset = Arc::new(FinitePoset::random(rng, len, density));
        let sets = rng.gen_range(1..=max_sets);
        let dense = (0..sets)
            .map(|k| ExplicitDense::random(&poset, rng, format!("D{k}")))
            .collect();
        let start = rng.gen_range(0..len);
        RandomInstance { poset, dense, start }
    }

    pub fn family(&self) -> FiniteFamily<usize> {
        FiniteFamily::new(
            self.dense
                .iter()
                .map(|d| d.to_dense_set(Arc::clone(&self.poset)))
                .collect(),
        )
    }
}

/// Runs the builder on a random instance and checks it against the
/// brute-force definitions. Returns the first discrepancy.
pub fn check_instance(inst: &RandomInstance) -> Result<(), String> {
    let family = inst.family();
    let sets = match family.size() {
        super::FamilySize::Finite(k) => k,
        super::FamilySize::Unbounded => unreachable!(),
    };
    let mut b = super::GenericBuilder::new(Arc::clone(&inst.poset), family, inst.start);
    b.advance(sets).map_err(|e| e.to_string())?;
    for n in 0..sets {
        let next = b.chain()[n + 1];
        if !inst.dense[n].members[next] {
            return Err(format!("chain[{}] = {next} misses {}", n + 1, inst.dense[n].label));
        }
        if !inst.poset.relates(next, b.chain()[n]) {
            return Err(format!("chain not decreasing at {n}"));
        }
    }
    let closure = inst.poset.upward_closure(b.chain());
    if let Some(v) = inst.poset.filter_violation(&closure) {
        return Err(format!("upward closure is not a filter: {v}"));
    }
    for d in &inst.dense {
        if !(0..inst.poset.len()).any(|i| closure[i] && d.members[i]) {
            return Err(format!("upward closure misses {}", d.label));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::GenericBuilder;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closure_is_reflexive_and_transitive() {
        let p = FinitePoset::from_relation(3, &[(0, 1), (1, 2)]);
        assert!(p.relates(0, 2));
        assert!(p.relates(1, 1));
        assert!(!p.relates(2, 0));
        assert_eq!(p.max(), Some(2));
    }

    #[test]
    fn random_dense_sets_are_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = FinitePoset::random(&mut rng, 12, 0.15);
            let d = ExplicitDense::random(&p, &mut rng, "D");
            assert!(p.is_dense(&d.members));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_preorders_satisfy_the_preorder_laws(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = FinitePoset::random(&mut rng, 10, 0.2);
            for a in 0..p.len() {
                prop_assert!(p.leq(&a, &a));
                for b in 0..p.len() {
                    for c in 0..p.len() {
                        if p.leq(&a, &b) && p.leq(&b, &c) {
                            prop_assert!(p.leq(&a, &c));
                        }
                    }
                }
                if let Some(m) = p.max() {
                    prop_assert!(p.leq(&a, &m));
                }
            }
        }

        #[test]
        fn builder_matches_brute_force(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let inst = RandomInstance::generate(&mut rng, 10, 4);
            prop_assert_eq!(check_instance(&inst), Ok(()));

            let mut b = GenericBuilder::new(Arc::clone(&inst.poset), inst.family(), inst.start);
            b.advance(inst.dense.len()).unwrap();
            let closure = inst.poset.upward_closure(b.chain());
            let all = inst.poset.generic_filters_through(inst.start, &inst.dense);
            prop_assert!(all.contains(&closure));
        }

        #[test]
        fn upward_closure_is_consistent_with_filter_contains(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let inst = RandomInstance::generate(&mut rng, 16, 4);
            let mut b = GenericBuilder::new(Arc::clone(&inst.poset), inst.family(), inst.start);
            for stage in 0..=inst.dense.len() {
                b.advance(stage).unwrap();
                for t in 0..inst.poset.len() {
                    for s in 0..inst.poset.len() {
                        if b.filter_contains(&t) && inst.poset.leq(&t, &s) {
                            prop_assert!(b.filter_contains(&s));
                        }
                    }
                }
            }
        }
    }
}
