//! Exhaustive enumeration of the formulas of a fragment over a fixed set of
//! atoms, by number of connectives.

use crate::formula::{Formula, Fragment};

/// Calls `visit` on every formula over atoms `p1..=p{atoms}` in `fragment`
/// with at most `max_connectives` connectives.
///
/// Formulas come by increasing number of connectives; within one size the
/// order is deterministic (root connective, then left operand size, then the
/// operands' own generation order) but is not the order R. Only the formulas
/// below the largest size are kept in memory.
pub fn for_each_formula(atoms: u32, max_connectives: usize, fragment: Fragment, mut visit: impl FnMut(&Formula)) {
    let mut levels: Vec<Vec<Formula>> = vec![(1..=atoms).map(Formula::atom).collect()];
    for f in &levels[0] {
        visit(f);
    }
    for n in 1..=max_connectives {
        let last = n == max_connectives;
        let mut level = Vec::new();
        for &c in fragment.connectives() {
            for k in 0..n {
                for l in &levels[k] {
                    for r in &levels[n - 1 - k] {
                        let f = Formula::binary(c, l.clone(), r.clone());
                        visit(&f);
                        if !last {
                            level.push(f);
                        }
                    }
                }
            }
        }
        levels.push(level);
    }
}

/// All formulas of [`for_each_formula`], sorted by the order R.
pub fn formulas(atoms: u32, max_connectives: usize, fragment: Fragment) -> Vec<Formula> {
    let mut all = Vec::new();
    for_each_formula(atoms, max_connectives, fragment, |f| all.push(f.clone()));
    all.sort();
    all
}

/// Number of formulas with exactly `n` connectives, by the recurrence the
/// enumeration follows.
pub fn count(atoms: u32, n: usize, fragment: Fragment) -> u128 {
    let c = fragment.connectives().len() as u128;
    let mut t = vec![atoms as u128];
    for m in 1..=n {
        t.push(c * (0..m).map(|k| t[k] * t[m - 1 - k]).sum::<u128>());
    }
    t[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_closed_form() {
        // over 3 atoms with three connectives: 3, 27, 486, 10935, 275562
        let expect = [3u128, 27, 486, 10935, 275562, 7440174];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(count(3, n, Fragment::Positive), *e);
        }
        for n in 0..=3 {
            let mut seen = 0u128;
            for_each_formula(3, n, Fragment::Positive, |f| seen += u128::from(f.connectives() == n));
            assert_eq!(seen, count(3, n, Fragment::Positive));
        }
    }

    #[test]
    fn fragments_restrict_connectives() {
        let all = formulas(2, 3, Fragment::ImplicativeDisjunctive);
        assert!(all.iter().all(|f| Fragment::ImplicativeDisjunctive.contains(f)));
        let distinct: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.len() as u128, (0..=3).map(|n| count(2, n, Fragment::ImplicativeDisjunctive)).sum::<u128>());
    }
}
