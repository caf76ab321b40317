use std::sync::Arc;

use rand::Rng;

use super::laws::SampleElement;
use super::BooleanAlgebra;
use crate::partialiso::CountableCarrier;
use crate::token::{Token, TokenError};

/// A clopen subset of Cantor space as a reduced binary trie. `Branch(l, r)`
/// splits on the next coordinate, `l` for 0 and `r` for 1. No branch has two
/// `Empty` or two `Full` children, so equal sets have equal tries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clopen {
    Empty,
    Full,
    Branch(Arc<Clopen>, Arc<Clopen>),
}

use Clopen::{Branch, Empty, Full};

impl Clopen {
    pub fn node(l: Clopen, r: Clopen) -> Clopen {
        match (&l, &r) {
            (Empty, Empty) => Empty,
            (Full, Full) => Full,
            _ => Branch(Arc::new(l), Arc::new(r)),
        }
    }

    /// The basic clopen set `[s]` of sequences extending the binary string `s`.
    pub fn basic(s: &str) -> Clopen {
        s.bytes().rev().fold(Full, |t, b| match b {
            b'0' => Clopen::node(t, Empty),
            b'1' => Clopen::node(Empty, t),
            _ => panic!("binary string expected"),
        })
    }

    /// Number of branch nodes.
    pub fn size(&self) -> usize {
        match self {
            Empty | Full => 0,
            Branch(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// The minimal antichain: paths to `Full` leaves, in lexicographic order.
    pub fn strings(&self) -> Vec<String> {
        fn go(t: &Clopen, path: &mut String, out: &mut Vec<String>) {
            match t {
                Empty => {}
                Full => out.push(path.clone()),
                Branch(l, r) => {
                    path.push('0');
                    go(l, path, out);
                    path.pop();
                    path.push('1');
                    go(r, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut String::new(), &mut out);
        out
    }

    fn first_full_path(&self) -> Option<String> {
        match self {
            Empty => None,
            Full => Some(String::new()),
            Branch(l, r) => l
                .first_full_path()
                .map(|s| format!("0{s}"))
                .or_else(|| r.first_full_path().map(|s| format!("1{s}"))),
        }
    }
}

fn meet(a: &Clopen, b: &Clopen) -> Clopen {
    match (a, b) {
        (Empty, _) | (_, Empty) => Empty,
        (Full, x) | (x, Full) => x.clone(),
        (Branch(l1, r1), Branch(l2, r2)) => Clopen::node(meet(l1, l2), meet(r1, r2)),
    }
}

fn join(a: &Clopen, b: &Clopen) -> Clopen {
    match (a, b) {
        (Full, _) | (_, Full) => Full,
        (Empty, x) | (x, Empty) => x.clone(),
        (Branch(l1, r1), Branch(l2, r2)) => Clopen::node(join(l1, l2), join(r1, r2)),
    }
}

fn complement(a: &Clopen) -> Clopen {
    match a {
        Empty => Full,
        Full => Empty,
        Branch(l, r) => Clopen::node(complement(l), complement(r)),
    }
}

impl Token for Clopen {
    /// JSON list of the antichain strings, e.g. `["01","1"]`.
    fn token(&self) -> String {
        serde_json::to_string(&self.strings()).expect("strings serialize")
    }

    fn from_token(text: &str) -> Result<Self, TokenError> {
        let err = |reason: &str| TokenError::new("clopen", text, reason);
        let strings: Vec<String> = serde_json::from_str(text).map_err(|e| err(&e.to_string()))?;
        if strings.iter().any(|s| !s.bytes().all(|b| b == b'0' || b == b'1')) {
            return Err(err("strings must be binary"));
        }
        let set = strings.iter().fold(Empty, |acc, s| join(&acc, &Clopen::basic(s)));
        if set.strings() != strings {
            return Err(err("not a sorted minimal antichain"));
        }
        Ok(set)
    }
}

/// Counts of reduced tries with exactly `k` branch nodes, for `k <= max`.
/// Entries are `None` once they overflow.
fn counts(max: usize) -> Vec<Option<u128>> {
    let mut c: Vec<Option<u128>> = vec![Some(2), Some(2)];
    for k in 2..=max {
        let mut total = Some(0u128);
        for i in 0..k {
            let term = c[i].zip(c[k - 1 - i]).and_then(|(x, y)| x.checked_mul(y));
            total = total.zip(term).and_then(|(t, x)| t.checked_add(x));
        }
        c.push(total);
    }
    c.truncate(max + 1);
    c
}

/// Position among the tries of the same size. Order: by the size of the
/// left child, then by the left child, then by the right child.
fn rank(t: &Clopen, c: &[Option<u128>]) -> Option<u128> {
    match t {
        Empty => Some(0),
        Full => Some(1),
        Branch(l, r) => {
            let k = t.size();
            if k == 1 {
                return Some(if **l == Empty { 0 } else { 1 });
            }
            let i = l.size();
            let mut before = 0u128;
            for j in 0..i {
                before = before.checked_add(c[j]?.checked_mul(c[k - 1 - j]?)?)?;
            }
            let right = c[k - 1 - i]?;
            before
                .checked_add(rank(l, c)?.checked_mul(right)?)?
                .checked_add(rank(r, c)?)
        }
    }
}

fn unrank(k: usize, mut n: u128, c: &[Option<u128>]) -> Clopen {
    match k {
        0 => [Empty, Full][n as usize].clone(),
        1 => [Clopen::node(Empty, Full), Clopen::node(Full, Empty)][n as usize].clone(),
        _ => {
            for i in 0..k {
                let right = c[k - 1 - i].expect("in range");
                let block = c[i].expect("in range") * right;
                if n < block {
                    let l = unrank(i, n / right, c);
                    let r = unrank(k - 1 - i, n % right, c);
                    return Clopen::node(l, r);
                }
                n -= block;
            }
            unreachable!("rank within size exceeds count")
        }
    }
}

/// The clopen algebra of Cantor space. Enumerated by number of branch
/// nodes, then by [`rank`] within a size; `split(u)` is `[s0]` for the
/// least string `s` of `u`'s antichain.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClopenAlgebra;

impl CountableCarrier for ClopenAlgebra {
    type Element = Clopen;

    fn enumerate(&self, n: usize) -> Clopen {
        let mut rest = n as u128;
        let mut k = 0;
        loop {
            let c = counts(k);
            let here = c[k].expect("usize index stays below overflow");
            if rest < here {
                return unrank(k, rest, &c);
            }
            rest -= here;
            k += 1;
        }
    }

    fn index(&self, x: &Clopen) -> Option<usize> {
        let k = x.size();
        let c = counts(k);
        let mut before = 0u128;
        for count in &c[..k] {
            before = before.checked_add((*count)?)?;
        }
        usize::try_from(before.checked_add(rank(x, &c)?)?).ok()
    }

    fn contains(&self, _x: &Clopen) -> bool {
        true
    }
}

impl BooleanAlgebra for ClopenAlgebra {
    fn zero(&self) -> Clopen {
        Empty
    }

    fn one(&self) -> Clopen {
        Full
    }

    fn meet(&self, a: &Clopen, b: &Clopen) -> Clopen {
        meet(a, b)
    }

    fn join(&self, a: &Clopen, b: &Clopen) -> Clopen {
        join(a, b)
    }

    fn complement(&self, a: &Clopen) -> Clopen {
        complement(a)
    }

    fn split(&self, u: &Clopen) -> Option<Clopen> {
        u.first_full_path().map(|s| Clopen::basic(&format!("{s}0")))
    }
}

impl SampleElement for ClopenAlgebra {
    /// A random trie of depth at most 6.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Clopen {
        fn go<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> Clopen {
            if depth == 0 || rng.gen_bool(0.3) {
                if rng.gen_bool(0.5) {
                    Full
                } else {
                    Empty
                }
            } else {
                Clopen::node(go(rng, depth - 1), go(rng, depth - 1))
            }
        }
        go(rng, 6)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn set(strings: &[&str]) -> Clopen {
        strings.iter().fold(Empty, |acc, s| join(&acc, &Clopen::basic(s)))
    }

    #[test]
    fn basic_examples() {
        let a = ClopenAlgebra;
        assert_eq!(a.complement(&set(&["0"])), set(&["1"]));
        assert_eq!(a.meet(&set(&["0"]), &set(&["01"])), set(&["01"]));
        let s = a.split(&set(&["1"])).unwrap();
        assert_eq!(s, set(&["10"]));
        assert!(a.leq(&s, &set(&["1"])) && s != set(&["1"]) && s != Empty);
        assert!(a.leq(&set(&["11"]), &a.diff(&set(&["1"]), &s)));
        assert_eq!(set(&["0", "1"]), Full);
        assert_eq!(set(&["00", "01"]), set(&["0"]));
    }

    #[test]
    fn tokens() {
        let x = set(&["1", "01"]);
        assert_eq!(x.token(), r#"["01","1"]"#);
        assert_eq!(Clopen::from_token(r#"["01","1"]"#).unwrap(), x);
        assert_eq!(Empty.token(), "[]");
        assert_eq!(Full.token(), r#"[""]"#);
        for bad in [r#"["1","01"]"#, r#"["0","1"]"#, r#"["0","01"]"#, r#"["2"]"#, "x"] {
            assert!(Clopen::from_token(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn split_uses_least_string() {
        let a = ClopenAlgebra;
        assert_eq!(a.split(&set(&["01", "1"])).unwrap(), set(&["010"]));
        assert_eq!(a.split(&Full).unwrap(), set(&["0"]));
        assert_eq!(a.split(&Empty), None);
    }

    #[test]
    fn enumeration_prefix() {
        let a = ClopenAlgebra;
        let first: Vec<Clopen> = (0..4).map(|i| a.enumerate(i)).collect();
        assert_eq!(first, [Empty, Full, set(&["1"]), set(&["0"])]);
    }

    /// Every reduced trie of size `k`, generated directly.
    fn all_of_size(k: usize) -> Vec<Clopen> {
        if k == 0 {
            return vec![Empty, Full];
        }
        let mut out = Vec::new();
        for i in 0..k {
            for l in all_of_size(i) {
                for r in all_of_size(k - 1 - i) {
                    if let Branch(..) = Clopen::node(l.clone(), r.clone()) {
                        out.push(Branch(Arc::new(l.clone()), Arc::new(r)));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn counts_match_brute_force() {
        let c = counts(6);
        for (k, count) in c.iter().enumerate() {
            assert_eq!(count.unwrap() as usize, all_of_size(k).len(), "size {k}");
        }
    }

    #[test]
    fn enumeration_is_a_bijection_onto_small_tries() {
        let a = ClopenAlgebra;
        let c = counts(4);
        let n: u128 = c.iter().map(|x| x.unwrap()).sum();
        let listed: BTreeSet<Clopen> = (0..n as usize).map(|i| a.enumerate(i)).collect();
        let expected: BTreeSet<Clopen> = (0..=4).flat_map(all_of_size).collect();
        assert_eq!(listed, expected);
        for i in 0..n as usize {
            assert_eq!(a.index(&a.enumerate(i)), Some(i));
        }
    }

    #[test]
    fn enumerated_elements_are_canonical() {
        let a = ClopenAlgebra;
        for i in 0..2000 {
            let x = a.enumerate(i);
            assert_eq!(Clopen::from_token(&x.token()).unwrap(), x);
        }
    }
}
