use std::collections::BTreeSet;

use super::{check_extension, extend_iso, find_partner, simple_extension, AtomIso, BooleanAlgebra, FiniteSubalgebra, PowersetAlgebra};
use crate::report::{Check, Report};

/// Every partition of `{0, .., n-1}` as a list of block masks.
pub fn powerset_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(i: u32, n: u32, blocks: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for k in 0..blocks.len() {
            blocks[k] |= 1 << i;
            go(i + 1, n, blocks, out);
            blocks[k] &= !(1 << i);
        }
        blocks.push(1 << i);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// The subalgebra generated by `gens`, closing under the operations until
/// nothing new appears.
pub fn generated_subalgebra(ba: &PowersetAlgebra, gens: &[u32]) -> BTreeSet<u32> {
    let mut set: BTreeSet<u32> = gens.iter().copied().collect();
    set.insert(ba.zero());
    set.insert(ba.one());
    loop {
        let items: Vec<u32> = set.iter().copied().collect();
        let before = set.len();
        for &x in &items {
            set.insert(ba.complement(&x));
            for &y in &items {
                set.insert(ba.meet(&x, &y));
                set.insert(ba.join(&x, &y));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// For every subalgebra `C` of `P(n)` and every `u`: `C(u)` from atoms
/// equals the generated closure, and the identity on `C` extends through
/// [`find_partner`] and [`extend_iso`] to an isomorphism passing
/// [`check_extension`].
pub fn check_powerset_lemma(n: u32) -> Report {
    let ba = PowersetAlgebra::new(n);
    let (mut closure_failure, mut extension_failure) = (None, None);
    let mut cases = 0;
    'all: for atoms in powerset_partitions(n) {
        let c = FiniteSubalgebra::from_atoms(&ba, atoms.clone()).expect("a partition");
        let h = AtomIso::from_pairs(atoms.iter().map(|&a| (a, a)).collect());
        for u in 0..=ba.one() {
            cases += 1;
            let generated: BTreeSet<u32> = simple_extension(&ba, &c, &u).elements(&ba).into_iter().collect();
            let mut gens = c.elements(&ba);
            gens.push(u);
            if generated != generated_subalgebra(&ba, &gens) {
                closure_failure = Some(format!("C = {atoms:?}, u = {u}"));
                break 'all;
            }
            let outcome = find_partner(&ba, &ba, &h, &u).and_then(|w| {
                let big = extend_iso(&ba, &ba, &h, &u, &w)?;
                Ok(check_extension(&ba, &ba, &h, &big, &u, &w))
            });
            let failure = match outcome {
                Ok(r) => r.first_failure().map(|c| c.to_string()),
                Err(e) => Some(e.to_string()),
            };
            if let Some(f) = failure {
                extension_failure = Some(format!("C = {atoms:?}, u = {u}: {f}"));
                break 'all;
            }
        }
    }
    let mut report = Report::new();
    let witness = format!("{cases} pairs (C, u)");
    for (name, failure) in [("lemma/closure", closure_failure), ("lemma/extension", extension_failure)] {
        let check = Check::from_failure(name, failure);
        report.push(if check.pass { check.with_witness(witness.clone()) } else { check });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_holds_on_small_powersets() {
        for n in 1..=4 {
            let r = check_powerset_lemma(n);
            assert!(r.passed(), "{r}");
        }
        assert_eq!(check_powerset_lemma(4).checks[0].witness.as_deref(), Some("240 pairs (C, u)"));
    }
}
