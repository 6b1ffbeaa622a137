//! Proof-producing tactics: the deduction theorem, the lemma library,
//! syntactical equivalence with substitution of equivalents, and conjunction
//! assembly. Every public entry point hands back kernel-checked derivations.

mod equiv;
mod lemmas;
#[cfg(test)]
mod tests;

pub use equiv::{congruence, substitute_equivalents, EquivalencePair, Mode};
pub(crate) use equiv::Rewrite;
pub use lemmas::{lemma, Arity, LemmaId, LemmaOutput};

pub(crate) use lemmas::*;

use crate::builder::ProofBuilder;
use crate::error::{Error, Result};
use crate::kernel::{check, CalculusId, Derivation, SchemeId};

/// Deduction theorem: from `d` proving `C` under hypotheses containing `a`,
/// a derivation of `a -> C` under the remaining hypotheses.
///
/// Line by line: `a` itself becomes the five-step proof of `a -> a`, any
/// other axiom or hypothesis `b` becomes `b`, `b -> a -> b`, `a -> b`, and a
/// modus ponens line becomes an Ax2 instance and two modus ponens steps. The
/// output has at most `3n + 2` steps for an input of `n` steps.
pub fn deduction(d: &Derivation, a: &crate::formula::Formula) -> Result<Derivation> {
    check(d)?;
    if !d.hypotheses().contains(a) {
        return Err(Error::NotAHypothesis(a.clone()));
    }
    let mut b = ProofBuilder::new(d.calculus());
    for h in d.hypotheses() {
        if h != a {
            b.declare(h.clone());
        }
    }
    let line = b.discharge(d, a, &[]);
    Ok(b.finish(line)?)
}

fn require_conjunction(c: CalculusId) -> Result<()> {
    if c.has_scheme(SchemeId::Ax9) {
        Ok(())
    } else {
        Err(Error::InsufficientCalculus { need: CalculusId::IC, have: c })
    }
}

/// From closed proofs of `B1, ..., Bn`, a closed proof of `B1 & ... & Bn`.
pub fn conjoin(ds: &[Derivation]) -> Result<Derivation> {
    let first = ds.first().ok_or_else(|| Error::Precondition("nothing to conjoin".into()))?;
    let calc = first.calculus();
    for d in ds {
        if d.calculus() != calc {
            return Err(Error::WrongCalculus { expected: calc, found: d.calculus() });
        }
        if !d.is_closed() {
            return Err(Error::OpenHypotheses);
        }
        check(d)?;
    }
    if ds.len() == 1 {
        return Ok(first.clone());
    }
    require_conjunction(calc)?;
    let mut b = ProofBuilder::new(calc);
    let lines: Vec<_> = ds.iter().map(|d| b.cut(d, &[])).collect();
    let items: Vec<_> = ds.iter().map(|d| d.conclusion().clone()).collect();
    let line = b.conj_build(&items, &lines);
    Ok(b.finish(line)?)
}

/// From a closed proof of `B1 & ... & Bn`, closed proofs of each `Bj`. The
/// conjunction is read along its right spine; `Bn` is whatever remains after
/// `n - 1` steps, so it may itself be a conjunction.
pub fn split_conjunction(d: &Derivation, n: usize) -> Result<Vec<Derivation>> {
    if !d.is_closed() {
        return Err(Error::OpenHypotheses);
    }
    check(d)?;
    if n == 0 {
        return Err(Error::Precondition("cannot split into zero conjuncts".into()));
    }
    if n == 1 {
        return Ok(vec![d.clone()]);
    }
    require_conjunction(d.calculus())?;
    let mut items = Vec::with_capacity(n);
    let mut rest = d.conclusion().clone();
    for _ in 0..n - 1 {
        let (x, y) = rest
            .as_conj()
            .map(|(x, y)| (x.clone(), y.clone()))
            .ok_or_else(|| Error::Precondition(format!("`{}` is not a {n}-fold conjunction", d.conclusion())))?;
        items.push(x);
        rest = y;
    }
    items.push(rest);
    (0..n)
        .map(|j| {
            let mut b = ProofBuilder::new(d.calculus());
            let l = b.cut(d, &[]);
            let p = b.project(l, &items, j);
            Ok(b.finish(p)?)
        })
        .collect()
}
