//! Classical two-valued semantics: evaluation, and tautology / consequence
//! checking by exhaustive enumeration of assignments.
//!
//! Enumeration visits assignments in lexicographic order over the atoms in
//! increasing index order, with `F` before `T`, so the first countermodel
//! reported is deterministic. This is meant for desk-scale formulas (up to
//! roughly 20 atoms).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::formula::{AtomSet, Formula, Kind};

/// A finite map from atom indices to truth values.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Assignment(BTreeMap<u32, bool>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("assignment has no value for atom p{0}")]
pub struct MissingAtom(pub u32);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, bool)>) -> Assignment {
        Assignment(pairs.into_iter().collect())
    }

    /// The assignment over `atoms` that makes exactly the members of `truths` true.
    pub fn from_partition(atoms: &AtomSet, truths: &AtomSet) -> Assignment {
        Assignment(atoms.indices().map(|i| (i, truths.contains(i))).collect())
    }

    pub fn set(&mut self, atom: u32, value: bool) {
        self.0.insert(atom, value);
    }

    pub fn get(&self, atom: u32) -> Option<bool> {
        self.0.get(&atom).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    /// Restriction to the given atoms.
    pub fn restrict(&self, atoms: &AtomSet) -> Assignment {
        Assignment(self.iter().filter(|(i, _)| atoms.contains(*i)).collect())
    }

    /// All assignments over `atoms`, in the canonical enumeration order.
    pub fn enumerate(atoms: &AtomSet) -> impl Iterator<Item = Assignment> + '_ {
        let members: Vec<u32> = atoms.indices().collect();
        let n = members.len();
        (0..1u64 << n).map(move |row| {
            Assignment(
                members
                    .iter()
                    .enumerate()
                    .map(|(k, &atom)| (atom, row >> (n - 1 - k) & 1 == 1))
                    .collect(),
            )
        })
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (atom, value)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "p{atom}={}", if value { 'T' } else { 'F' })?;
        }
        Ok(())
    }
}

/// Truth value of `f` under `v`.
pub fn eval(v: &Assignment, f: &Formula) -> Result<bool, MissingAtom> {
    Ok(match f.kind() {
        Kind::Atom(i) => v.get(*i).ok_or(MissingAtom(*i))?,
        Kind::Impl(a, b) => !eval(v, a)? || eval(v, b)?,
        Kind::Disj(a, b) => eval(v, a)? || eval(v, b)?,
        Kind::Conj(a, b) => eval(v, a)? && eval(v, b)?,
    })
}

/// Outcome of a semantic decision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Valid,
    Countermodel(Assignment),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn countermodel(&self) -> Option<&Assignment> {
        match self {
            Verdict::Valid => None,
            Verdict::Countermodel(v) => Some(v),
        }
    }
}

/// Evaluates a formula on many rows at once: bit `r` of the result is the
/// value under row `r`, where `columns[k]` holds the rows of the `k`-th atom.
fn eval_rows(f: &Formula, column: &impl Fn(u32) -> u64) -> u64 {
    match f.kind() {
        Kind::Atom(i) => column(*i),
        Kind::Impl(a, b) => !eval_rows(a, column) | eval_rows(b, column),
        Kind::Disj(a, b) => eval_rows(a, column) | eval_rows(b, column),
        Kind::Conj(a, b) => eval_rows(a, column) & eval_rows(b, column),
    }
}

/// Decides whether `f` is a tautology, returning the first falsifying
/// assignment otherwise.
pub fn is_tautology(f: &Formula) -> Verdict {
    entails(&[], f)
}

/// Decides whether `f` is a tautological consequence of `hyps`.
pub fn entails(hyps: &[Formula], f: &Formula) -> Verdict {
    let atoms = hyps.iter().fold(f.atoms(), |acc, h| acc.union(&h.atoms()));
    let members: Vec<u32> = atoms.indices().collect();
    let n = members.len();
    assert!(n < 40, "too many atoms for exhaustive enumeration");
    let total: u64 = 1 << n;
    // rows are processed 64 at a time; row r assigns bit (n-1-k) of r to atom k
    let mut base = 0u64;
    while base < total {
        let width = (total - base).min(64);
        let live = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        let columns: Vec<u64> = (0..n)
            .map(|k| {
                let shift = n - 1 - k;
                (0..width)
                    .filter(|r| (base + r) >> shift & 1 == 1)
                    .fold(0u64, |bits, r| bits | 1 << r)
            })
            .collect();
        let column = |atom: u32| -> u64 {
            columns[members.binary_search(&atom).expect("atom collected above")]
        };
        let premises = hyps.iter().fold(live, |acc, h| acc & eval_rows(h, &column));
        let bad = premises & !eval_rows(f, &column) & live;
        if bad != 0 {
            let row = base + u64::from(bad.trailing_zeros());
            let v = Assignment(
                members
                    .iter()
                    .enumerate()
                    .map(|(k, &atom)| (atom, row >> (n - 1 - k) & 1 == 1))
                    .collect(),
            );
            return Verdict::Countermodel(v);
        }
        base += width;
    }
    Verdict::Valid
}

/// Truth-table equivalence.
pub fn equivalent(a: &Formula, b: &Formula) -> bool {
    entails(std::slice::from_ref(a), b).is_valid() && entails(std::slice::from_ref(b), a).is_valid()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn brute_force(hyps: &[Formula], c: &Formula) -> Verdict {
        let atoms = hyps.iter().fold(c.atoms(), |acc, h| acc.union(&h.atoms()));
        for v in Assignment::enumerate(&atoms) {
            if hyps.iter().all(|h| eval(&v, h).unwrap()) && !eval(&v, c).unwrap() {
                return Verdict::Countermodel(v);
            }
        }
        Verdict::Valid
    }

    #[test]
    fn eval_examples() {
        let v = Assignment::from_pairs([(1, true), (2, false)]);
        assert!(!eval(&v, &f("p1 -> p2")).unwrap());
        let v = Assignment::from_pairs([(1, false), (2, false)]);
        assert!(eval(&v, &f("p1 v (p1 -> p2)")).unwrap());
        let v = Assignment::from_pairs([(1, true), (2, true)]);
        assert!(eval(&v, &f("p1 & p2")).unwrap());
        assert_eq!(eval(&v, &f("p1 & p3")), Err(MissingAtom(3)));
    }

    #[test]
    fn tautology_examples() {
        assert_eq!(is_tautology(&f("((p1 -> p2) -> p1) -> p1")), Verdict::Valid);
        assert_eq!(
            is_tautology(&f("p1 -> p2")),
            Verdict::Countermodel(Assignment::from_pairs([(1, true), (2, false)]))
        );
        let l = f("p1 v (p2 & p3)");
        let r = f("(p1 v p2) & (p1 v p3)");
        assert_eq!(is_tautology(&Formula::iff(l, r)), Verdict::Valid);
    }

    #[test]
    fn entails_examples() {
        assert!(entails(&[f("p1"), f("p1 -> p2")], &f("p2")).is_valid());
        assert!(entails(&[f("p1 v p2"), f("p1 -> p2")], &f("p2")).is_valid());
        assert_eq!(
            entails(&[f("p1")], &f("p2")),
            Verdict::Countermodel(Assignment::from_pairs([(1, true), (2, false)]))
        );
    }

    #[test]
    fn enumeration_order_puts_false_first() {
        let atoms = AtomSet::from_iter([1, 2]);
        let rows: Vec<String> = Assignment::enumerate(&atoms).map(|v| v.to_string()).collect();
        assert_eq!(rows, ["p1=F p2=F", "p1=F p2=T", "p1=T p2=F", "p1=T p2=T"]);
    }

    #[test]
    fn bit_parallel_matches_brute_force() {
        let cases = [
            (vec![], "p1 v (p1 -> p2)"),
            (vec![], "p1 -> p2 -> p3 -> p4 -> p5 -> p6 -> p7 -> p1"),
            (vec![], "p1 -> p2 -> p3 -> p4 -> p5 -> p6 -> p7 -> p8"),
            (vec!["p1 v p2", "p2 -> p3"], "p1 v p3"),
            (vec!["p1 v p2"], "p1 & p2"),
            (vec!["p1", "p2", "p3", "p4", "p5", "p6", "p7"], "p8 v p3"),
        ];
        for (hyps, c) in cases {
            let hyps: Vec<Formula> = hyps.into_iter().map(f).collect();
            assert_eq!(entails(&hyps, &f(c)), brute_force(&hyps, &f(c)), "{c}");
        }
    }
}
