//! Kalmár-style completeness: for each assignment, a derivation of the
//! formula's positive or negative encoding from its true atoms, then
//! elimination of the atoms one at a time to reach a closed proof.
//!
//! The per-connective constructions are emitted into a shared builder so
//! that subproofs common to several cases are derived once.

use std::collections::BTreeMap;

use crate::builder::{Line, ProofBuilder};
use crate::error::{require_fragment, Error, Result};
use crate::formula::{delta_set, gamma_set, neg_encode, pos_encode, AtomSet, Formula, Kind, Side};
use crate::kernel::{check, CalculusId, Derivation, SchemeId::*};
use crate::semantics::{entails, eval, is_tautology, Assignment, Verdict};
use crate::tactics::{l2_12, l2_13, l2_14, l2_17, l2_18, l2_25_backward};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A derivation of `(Δ)^A` (positive) or `(Δ)^~A` (negative) from `Γ`,
/// where `Γ` and `Δ` are the true and false atoms of the formula.
#[derive(Debug, Clone)]
pub struct LineCertificate {
    pub formula: Formula,
    pub assignment: Assignment,
    pub polarity: Polarity,
    pub derivation: Derivation,
}

impl LineCertificate {
    /// Re-establishes every invariant of the certificate from scratch.
    pub fn verify(&self) -> Result<()> {
        let value = eval(&self.assignment, &self.formula)?;
        let expected_polarity = if value { Polarity::Positive } else { Polarity::Negative };
        if self.polarity != expected_polarity {
            return Err(Error::Precondition(format!("polarity disagrees with the value of `{}`", self.formula)));
        }
        let gamma = gamma_set(&self.assignment, &self.formula)?;
        let delta = delta_set(&self.assignment, &self.formula)?;
        let concl = match self.polarity {
            Polarity::Positive => pos_encode(&delta, &self.formula),
            Polarity::Negative => neg_encode(&delta, &self.formula),
        };
        if self.derivation.conclusion() != &concl {
            return Err(Error::FormulaMismatch { expected: concl, found: self.derivation.conclusion().clone() });
        }
        let hyps: std::collections::BTreeSet<Formula> = gamma.formulas().into_iter().collect();
        if self.derivation.hypotheses() != &hyps {
            return Err(Error::Precondition(format!("hypotheses differ from the true atoms {gamma}")));
        }
        check(&self.derivation)?;
        Ok(())
    }
}

/// Result of a synthesis attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Proof(Derivation),
    Countermodel(Assignment),
}

impl Outcome {
    pub fn proof(&self) -> Option<&Derivation> {
        match self {
            Outcome::Proof(d) => Some(d),
            Outcome::Countermodel(_) => None,
        }
    }

    pub fn into_proof(self) -> Option<Derivation> {
        match self {
            Outcome::Proof(d) => Some(d),
            Outcome::Countermodel(_) => None,
        }
    }

    pub fn countermodel(&self) -> Option<&Assignment> {
        match self {
            Outcome::Proof(_) => None,
            Outcome::Countermodel(v) => Some(v),
        }
    }
}

fn delta_items(v: &Assignment, f: &Formula) -> Vec<Formula> {
    delta_set(v, f).expect("assignment covers the formula").formulas()
}

fn value(v: &Assignment, f: &Formula) -> bool {
    eval(v, f).expect("assignment covers the formula")
}

fn with_last(items: &[Formula], last: &Formula) -> Vec<Formula> {
    let mut all = items.to_vec();
    all.push(last.clone());
    all
}

/// `(items v ... v x) -> (targets v ... )` where each of `items` occurs in
/// `targets` and `x` is carried to a target disjunct by the implication on
/// line `via` (or occurs itself when `via` is `None`).
fn carry(b: &mut ProofBuilder, items: &[Formula], targets: &[Formula], via: Option<Line>) -> Line {
    let target = Formula::disj_list(targets);
    let mut cases = Vec::with_capacity(items.len());
    let (head, last) = items.split_at(items.len() - 1);
    for a in head {
        let j = targets.iter().position(|t| t == a).expect("disjunct occurs in the target");
        cases.push(b.disj_intro(targets, j));
    }
    let last_case = match via {
        None => {
            let j = targets.iter().position(|t| t == &last[0]).expect("disjunct occurs in the target");
            b.disj_intro(targets, j)
        }
        Some(imp) => {
            let into = b.formula(imp).as_impl().expect("implication").1.clone();
            let j = targets.iter().position(|t| t == &into).expect("image occurs in the target");
            let intro = b.disj_intro(targets, j);
            b.chain(imp, intro)
        }
    };
    cases.push(last_case);
    b.disj_cases(items, &target, &cases)
}

/// The consequent of `a -> b` true: from `(Δb)^b` to `(Δ(a->b))^(a->b)`.
fn emit_3_1(b: &mut ProofBuilder, v: &Assignment, a: &Formula, x: &Formula, prem: Line) -> Line {
    let whole = Formula::imp(a.clone(), x.clone());
    let cs = delta_items(v, &whole);
    let bs = delta_items(v, x);
    if cs.is_empty() {
        let ax1 = b.axiom(Ax1, &[x.clone(), a.clone()]);
        return b.mp(ax1, prem);
    }
    let grouped = if bs.is_empty() {
        l2_14(b, prem, &Formula::disj_list(&cs), a)
    } else {
        let regrouped = b.reassoc_left_apply(prem, &bs, x);
        let sub = b.subsume(&bs, &cs).expect("false atoms of the consequent are false atoms of the whole");
        let ax1 = b.axiom(Ax1, &[x.clone(), a.clone()]);
        l2_12(b, regrouped, sub, ax1)
    };
    b.reassoc_right_apply(grouped, &cs, &whole)
}

/// The antecedent of `a -> b` false: from `(Δa)^~a` to `(Δ(a->b))^(a->b)`.
fn emit_3_2(b: &mut ProofBuilder, v: &Assignment, a: &Formula, x: &Formula, prem: Line) -> Line {
    let whole = Formula::imp(a.clone(), x.clone());
    let cs = delta_items(v, &whole);
    let as_ = delta_items(v, a);
    let sub = b.subsume(&as_, &cs).expect("false atoms of the antecedent are false atoms of the whole");
    let a_cs = b.chain(prem, sub);
    let grouped = l2_13(b, a_cs, x);
    b.reassoc_right_apply(grouped, &cs, &whole)
}

/// Antecedent true, consequent false: from `(Δa)^a` and `(Δb)^~b` to
/// `(Δ(a->b))^~(a->b)`.
fn emit_3_3(b: &mut ProofBuilder, v: &Assignment, a: &Formula, x: &Formula, la: Line, lb: Line) -> Line {
    let whole = Formula::imp(a.clone(), x.clone());
    let cs = delta_items(v, &whole);
    let as_ = delta_items(v, a);
    let bs = delta_items(v, x);
    let spread = b
        .subsume_apply(la, &with_last(&as_, a), &with_last(&cs, a))
        .expect("false atoms of the antecedent are false atoms of the whole");
    let grouped = b.reassoc_left_apply(spread, &cs, a);
    let sub = b.subsume(&bs, &cs).expect("false atoms of the consequent are false atoms of the whole");
    let b_cs = b.chain(lb, sub);
    l2_17(b, grouped, b_cs)
}

/// One disjunct true: from `(Δa)^a` to `(Δ(a v o))^(a v o)` when `side` is
/// `Left`, or to `(Δ(o v a))^(o v a)` when it is `Right`.
fn emit_3_4(b: &mut ProofBuilder, v: &Assignment, a: &Formula, other: &Formula, side: Side, prem: Line) -> Line {
    let (whole, intro) = match side {
        Side::Left => (Formula::disj(a.clone(), other.clone()), b.axiom(Ax4, &[a.clone(), other.clone()])),
        Side::Right => (Formula::disj(other.clone(), a.clone()), b.axiom(Ax5, &[a.clone(), other.clone()])),
    };
    let cs = delta_items(v, &whole);
    let as_ = delta_items(v, a);
    let imp = carry(b, &with_last(&as_, a), &with_last(&cs, &whole), Some(intro));
    b.mp(imp, prem)
}

/// Both disjuncts false: from `(Δa)^~a` and `(Δb)^~b` to `(Δ(a v b))^~(a v b)`.
fn emit_3_5(b: &mut ProofBuilder, v: &Assignment, a: &Formula, x: &Formula, la: Line, lb: Line) -> Line {
    let whole = Formula::disj(a.clone(), x.clone());
    let cs = delta_items(v, &whole);
    let target = Formula::disj_list(&cs);
    let sa = b.subsume(&delta_items(v, a), &cs).expect("subset");
    let sb = b.subsume(&delta_items(v, x), &cs).expect("subset");
    let a_cs = b.chain(la, sa);
    let b_cs = b.chain(lb, sb);
    let ax6 = b.axiom(Ax6, &[a.clone(), x.clone(), target]);
    b.mp_all(ax6, &[a_cs, b_cs])
}

/// Both conjuncts true: from `(Δa)^a` and `(Δb)^b` to `(Δ(a & b))^(a & b)`.
fn emit_4_1(b: &mut ProofBuilder, v: &Assignment, a: &Formula, x: &Formula, la: Line, lb: Line) -> Line {
    let whole = Formula::conj(a.clone(), x.clone());
    let cs = delta_items(v, &whole);
    if cs.is_empty() {
        return b.conj_build(&[a.clone(), x.clone()], &[la, lb]);
    }
    let mut grouped = Vec::with_capacity(2);
    for (f, l) in [(a, la), (x, lb)] {
        let spread = b
            .subsume_apply(l, &with_last(&delta_items(v, f), f), &with_last(&cs, f))
            .expect("false atoms of a conjunct are false atoms of the whole");
        grouped.push(b.reassoc_left_apply(spread, &cs, f));
    }
    let c = Formula::disj_list(&cs);
    let items = [Formula::disj(c.clone(), a.clone()), Formula::disj(c, x.clone())];
    let both = b.conj_build(&items, &grouped);
    let distributed = l2_25_backward(b, both);
    b.reassoc_right_apply(distributed, &cs, &whole)
}

/// One conjunct false: from `(Δa)^~a`, the lines of `(Δ(a & o))^~(a & o)`
/// and `(Δ(o & a))^~(o & a)`.
fn emit_4_2(b: &mut ProofBuilder, v: &Assignment, a: &Formula, other: &Formula, la: Line) -> (Line, Line) {
    let cs = delta_items(v, &Formula::conj(a.clone(), other.clone()));
    let sub = b.subsume(&delta_items(v, a), &cs).expect("subset");
    let a_cs = b.chain(la, sub);
    let ax7 = b.axiom(Ax7, &[a.clone(), other.clone()]);
    let left = b.chain(ax7, a_cs);
    let ax8 = b.axiom(Ax8, &[other.clone(), a.clone()]);
    let right = b.chain(ax8, a_cs);
    (left, right)
}

/// Emits the encoded line of `f` under `v`; returns the line and `V(f)`.
fn emit_line(b: &mut ProofBuilder, v: &Assignment, f: &Formula) -> (Line, bool) {
    match f.kind() {
        Kind::Atom(_) => {
            if value(v, f) {
                (b.hyp(f.clone()), true)
            } else {
                (b.refl(f), false)
            }
        }
        Kind::Impl(x, y) => {
            if value(v, y) {
                let (ly, _) = emit_line(b, v, y);
                (emit_3_1(b, v, x, y, ly), true)
            } else if !value(v, x) {
                let (lx, _) = emit_line(b, v, x);
                (emit_3_2(b, v, x, y, lx), true)
            } else {
                let (lx, _) = emit_line(b, v, x);
                let (ly, _) = emit_line(b, v, y);
                (emit_3_3(b, v, x, y, lx, ly), false)
            }
        }
        Kind::Disj(x, y) => {
            if value(v, x) {
                let (lx, _) = emit_line(b, v, x);
                (emit_3_4(b, v, x, y, Side::Left, lx), true)
            } else if value(v, y) {
                let (ly, _) = emit_line(b, v, y);
                (emit_3_4(b, v, y, x, Side::Right, ly), true)
            } else {
                let (lx, _) = emit_line(b, v, x);
                let (ly, _) = emit_line(b, v, y);
                (emit_3_5(b, v, x, y, lx, ly), false)
            }
        }
        Kind::Conj(x, y) => {
            let (vx, vy) = (value(v, x), value(v, y));
            if vx && vy {
                let (lx, _) = emit_line(b, v, x);
                let (ly, _) = emit_line(b, v, y);
                (emit_4_1(b, v, x, y, lx, ly), true)
            } else if !vx {
                let (lx, _) = emit_line(b, v, x);
                (emit_4_2(b, v, x, y, lx).0, false)
            } else {
                let (ly, _) = emit_line(b, v, y);
                (emit_4_2(b, v, y, x, ly).1, false)
            }
        }
    }
}

fn require_engine_calculus(calc: CalculusId) -> Result<()> {
    match calc {
        CalculusId::ID | CalculusId::P => Ok(()),
        other => Err(Error::InsufficientCalculus { need: CalculusId::ID, have: other }),
    }
}

/// The encoded line of `a` under `v`, derived from exactly the true atoms.
pub fn build_line(v: &Assignment, a: &Formula, calc: CalculusId) -> Result<LineCertificate> {
    require_engine_calculus(calc)?;
    require_fragment(calc.fragment(), a)?;
    let gamma = gamma_set(v, a)?;
    let mut b = ProofBuilder::new(calc);
    for g in gamma.formulas() {
        b.declare(g);
    }
    let (line, truth) = emit_line(&mut b, v, a);
    Ok(LineCertificate {
        formula: a.clone(),
        assignment: v.restrict(&a.atoms()),
        polarity: if truth { Polarity::Positive } else { Polarity::Negative },
        derivation: b.finish(line)?,
    })
}

fn premise(b: &mut ProofBuilder, d: &Derivation, expected: &Formula) -> Result<Line> {
    if d.conclusion() != expected {
        return Err(Error::FormulaMismatch { expected: expected.clone(), found: d.conclusion().clone() });
    }
    check(d)?;
    Ok(b.cut(d, &[]))
}

fn pos_of(v: &Assignment, f: &Formula) -> Result<Formula> {
    Ok(pos_encode(&delta_set(v, f)?, f))
}

fn neg_of(v: &Assignment, f: &Formula) -> Result<Formula> {
    Ok(neg_encode(&delta_set(v, f)?, f))
}

fn require_value(v: &Assignment, f: &Formula, expected: bool) -> Result<()> {
    if eval(v, f)? == expected {
        Ok(())
    } else {
        let t = if expected { 'T' } else { 'F' };
        Err(Error::Precondition(format!("`{f}` must take value {t} under {v}")))
    }
}

fn engine(calc: CalculusId, parts: &[&Formula]) -> Result<ProofBuilder> {
    require_engine_calculus(calc)?;
    for f in parts {
        require_fragment(calc.fragment(), f)?;
    }
    Ok(ProofBuilder::new(calc))
}

/// `(Δb)^b |- (Δ(a->b))^(a->b)` for `V(b) = T`, given a derivation `db` of
/// the premise. The result keeps `db`'s hypotheses.
pub fn lemma_3_1(v: &Assignment, a: &Formula, x: &Formula, db: &Derivation) -> Result<Derivation> {
    let mut b = engine(db.calculus(), &[a, x])?;
    require_value(v, x, true)?;
    let l = premise(&mut b, db, &pos_of(v, x)?)?;
    let line = emit_3_1(&mut b, v, a, x, l);
    Ok(b.finish(line)?)
}

/// `(Δa)^~a |- (Δ(a->b))^(a->b)` for `V(a) = F`.
pub fn lemma_3_2(v: &Assignment, a: &Formula, x: &Formula, da: &Derivation) -> Result<Derivation> {
    let mut b = engine(da.calculus(), &[a, x])?;
    require_value(v, a, false)?;
    eval(v, x)?;
    let l = premise(&mut b, da, &neg_of(v, a)?)?;
    let line = emit_3_2(&mut b, v, a, x, l);
    Ok(b.finish(line)?)
}

/// `(Δa)^a, (Δb)^~b |- (Δ(a->b))^~(a->b)` for `V(a) = T`, `V(b) = F`.
pub fn lemma_3_3(v: &Assignment, a: &Formula, x: &Formula, da: &Derivation, db: &Derivation) -> Result<Derivation> {
    let mut b = engine(da.calculus(), &[a, x])?;
    require_value(v, a, true)?;
    require_value(v, x, false)?;
    let la = premise(&mut b, da, &pos_of(v, a)?)?;
    let lb = premise(&mut b, db, &neg_of(v, x)?)?;
    let line = emit_3_3(&mut b, v, a, x, la, lb);
    Ok(b.finish(line)?)
}

/// `(Δa)^a |- (Δ(a v o))^(a v o)` (side `Left`) or `(Δ(o v a))^(o v a)`
/// (side `Right`) for `V(a) = T`.
pub fn lemma_3_4(v: &Assignment, a: &Formula, other: &Formula, side: Side, da: &Derivation) -> Result<Derivation> {
    let mut b = engine(da.calculus(), &[a, other])?;
    require_value(v, a, true)?;
    eval(v, other)?;
    let l = premise(&mut b, da, &pos_of(v, a)?)?;
    let line = emit_3_4(&mut b, v, a, other, side, l);
    Ok(b.finish(line)?)
}

/// `(Δa)^~a, (Δb)^~b |- (Δ(a v b))^~(a v b)` for `V(a) = V(b) = F`.
pub fn lemma_3_5(v: &Assignment, a: &Formula, x: &Formula, da: &Derivation, db: &Derivation) -> Result<Derivation> {
    let mut b = engine(da.calculus(), &[a, x])?;
    require_value(v, a, false)?;
    require_value(v, x, false)?;
    let la = premise(&mut b, da, &neg_of(v, a)?)?;
    let lb = premise(&mut b, db, &neg_of(v, x)?)?;
    let line = emit_3_5(&mut b, v, a, x, la, lb);
    Ok(b.finish(line)?)
}

fn require_positive(calc: CalculusId) -> Result<()> {
    if calc == CalculusId::P {
        Ok(())
    } else {
        Err(Error::InsufficientCalculus { need: CalculusId::P, have: calc })
    }
}

/// `(Δa)^a, (Δb)^b |- (Δ(a & b))^(a & b)` for `V(a) = V(b) = T`.
pub fn lemma_4_1(v: &Assignment, a: &Formula, x: &Formula, da: &Derivation, db: &Derivation) -> Result<Derivation> {
    require_positive(da.calculus())?;
    let mut b = engine(da.calculus(), &[a, x])?;
    require_value(v, a, true)?;
    require_value(v, x, true)?;
    let la = premise(&mut b, da, &pos_of(v, a)?)?;
    let lb = premise(&mut b, db, &pos_of(v, x)?)?;
    let line = emit_4_1(&mut b, v, a, x, la, lb);
    Ok(b.finish(line)?)
}

/// For `V(a) = F`, derivations of `(Δ(a & o))^~(a & o)` and
/// `(Δ(o & a))^~(o & a)` from `(Δa)^~a`.
pub fn lemma_4_2(v: &Assignment, a: &Formula, other: &Formula, da: &Derivation) -> Result<(Derivation, Derivation)> {
    require_positive(da.calculus())?;
    let mut b = engine(da.calculus(), &[a, other])?;
    require_value(v, a, false)?;
    eval(v, other)?;
    let la = premise(&mut b, da, &neg_of(v, a)?)?;
    let (l, r) = emit_4_2(&mut b, v, a, other, la);
    Ok((b.finish(l)?, b.finish(r)?))
}

/// Hypothesis elimination. `leaves` maps each set `H` of true atoms (a
/// subset of `atoms`) to a derivation of `(atoms \ H)^a` from hypotheses
/// within `H`. Atoms are removed in increasing order: for the least atom `B`,
/// the leaf for `H + B` yields `B -> (J)^a` by the deduction theorem, the
/// leaf for `H` proves `B v (J)^a` outright, and 2.18 combines them.
pub fn eliminate(
    a: &Formula,
    atoms: &AtomSet,
    leaves: &BTreeMap<AtomSet, Derivation>,
    calc: CalculusId,
) -> Result<Derivation> {
    require_engine_calculus(calc)?;
    let mut current: BTreeMap<AtomSet, Derivation> = BTreeMap::new();
    for h in atoms.subsets() {
        let d = leaves.get(&h).ok_or_else(|| Error::MissingPartition(h.clone()))?;
        if d.calculus() != calc {
            return Err(Error::WrongCalculus { expected: calc, found: d.calculus() });
        }
        let expected = pos_encode(&atoms.difference(&h), a);
        if d.conclusion() != &expected {
            return Err(Error::FormulaMismatch { expected, found: d.conclusion().clone() });
        }
        let allowed: std::collections::BTreeSet<Formula> = h.formulas().into_iter().collect();
        if !d.hypotheses().is_subset(&allowed) {
            return Err(Error::Precondition(format!("leaf for {h} uses hypotheses outside it")));
        }
        check(d)?;
        current.insert(h, d.clone());
    }
    let d = eliminate_unchecked(atoms, current, calc);
    check(&d)?;
    Ok(d)
}

// Leaves are trusted here; callers check the result once at the end.
fn eliminate_unchecked(
    atoms: &AtomSet,
    mut current: BTreeMap<AtomSet, Derivation>,
    calc: CalculusId,
) -> Derivation {
    let mut remaining = atoms.clone();
    while let Some(first) = remaining.first() {
        remaining.remove(first);
        let atom = Formula::atom(first);
        let mut next = BTreeMap::new();
        for h in remaining.subsets() {
            let mut with = h.clone();
            with.insert(first);
            let d1 = &current[&with];
            let d2 = &current[&h];
            let mut b = ProofBuilder::new(calc);
            for f in h.formulas() {
                b.declare(f);
            }
            let implied = b.discharge_lean(d1, &atom, &[]);
            // the least atom heads the encoding, so this is already B v (J)^a
            let split = b.cut(d2, &[]);
            let line = l2_18(&mut b, split, implied);
            next.insert(h, b.build(line));
        }
        current = next;
    }
    current.remove(&AtomSet::new()).expect("the empty partition remains")
}

/// Completeness for the implicative-disjunctive calculus (`ID`) and, through
/// the conjunction cases, for the positive calculus (`P`).
pub fn prove(a: &Formula, calc: CalculusId) -> Result<Outcome> {
    require_engine_calculus(calc)?;
    require_fragment(calc.fragment(), a)?;
    if let Verdict::Countermodel(v) = is_tautology(a) {
        return Ok(Outcome::Countermodel(v));
    }
    let atoms = a.atoms();
    let mut leaves = BTreeMap::new();
    for h in atoms.subsets() {
        let v = Assignment::from_partition(&atoms, &h);
        let mut b = ProofBuilder::new(calc);
        for g in h.formulas() {
            b.declare(g);
        }
        let (line, truth) = emit_line(&mut b, &v, a);
        debug_assert!(truth);
        leaves.insert(h, b.build(line));
    }
    let d = eliminate_unchecked(&atoms, leaves, calc);
    check(&d)?;
    Ok(Outcome::Proof(d))
}

/// `hyps |- a`, through a proof of `h1 -> ... -> hn -> a` and modus ponens
/// with each hypothesis in list order.
pub fn derive_from_hypotheses(hyps: &[Formula], a: &Formula, calc: CalculusId) -> Result<Outcome> {
    derive_with(hyps, a, calc, prove)
}

pub(crate) fn derive_with(
    hyps: &[Formula],
    a: &Formula,
    calc: CalculusId,
    prover: impl FnOnce(&Formula, CalculusId) -> Result<Outcome>,
) -> Result<Outcome> {
    for h in hyps {
        require_fragment(calc.fragment(), h)?;
    }
    require_fragment(calc.fragment(), a)?;
    if let Verdict::Countermodel(v) = entails(hyps, a) {
        return Ok(Outcome::Countermodel(v));
    }
    let chain = Formula::imp_chain(hyps, a.clone());
    let proof = match prover(&chain, calc)? {
        Outcome::Proof(d) => d,
        Outcome::Countermodel(v) => return Ok(Outcome::Countermodel(v)),
    };
    let mut b = ProofBuilder::new(calc);
    let mut line = b.cut(&proof, &[]);
    for h in hyps {
        let hl = b.hyp(h.clone());
        line = b.mp(line, hl);
    }
    Ok(Outcome::Proof(b.finish(line)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::for_each_formula;
    use crate::formula::Fragment;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn v(pairs: &[(u32, bool)]) -> Assignment {
        Assignment::from_pairs(pairs.iter().copied())
    }

    fn sound(d: &Derivation) {
        check(d).unwrap();
        let hs: Vec<_> = d.hypotheses().iter().cloned().collect();
        assert!(entails(&hs, d.conclusion()).is_valid());
    }

    fn assumed(calc: CalculusId, s: &str) -> Derivation {
        Derivation::assume(calc, f(s)).unwrap()
    }

    #[test]
    fn lemma_3_1_cases() {
        let id = CalculusId::ID;
        let all_t = v(&[(1, true), (2, true)]);
        let d = lemma_3_1(&all_t, &f("p1"), &f("p2"), &assumed(id, "p2")).unwrap();
        assert_eq!(d.conclusion(), &f("p1 -> p2"));

        let d = lemma_3_1(&v(&[(1, false), (2, true)]), &f("p1"), &f("p2"), &assumed(id, "p2")).unwrap();
        assert_eq!(d.conclusion(), &f("p1 v (p1 -> p2)"));
        sound(&d);

        let w = v(&[(1, false), (2, true), (3, false)]);
        let d = lemma_3_1(&w, &f("p1"), &f("p2 v p3"), &assumed(id, "p3 v p2 v p3")).unwrap();
        assert_eq!(d.conclusion(), &f("p1 v p3 v (p1 -> p2 v p3)"));
        assert_eq!(d.hypotheses().len(), 1);
        sound(&d);

        let bad = lemma_3_1(&w, &f("p1"), &f("p3"), &assumed(id, "p3"));
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn lemma_3_2_to_3_5_examples() {
        let id = CalculusId::ID;
        let ff = v(&[(1, false), (2, false)]);
        let d = lemma_3_2(&ff, &f("p1"), &f("p2"), &assumed(id, "p1 -> p1")).unwrap();
        assert_eq!(d.conclusion(), &f("p1 v p2 v (p1 -> p2)"));
        sound(&d);

        let d = lemma_3_4(&v(&[(1, true), (2, false)]), &f("p1"), &f("p2"), Side::Left, &assumed(id, "p1")).unwrap();
        assert_eq!(d.conclusion(), &f("p2 v p1 v p2"));
        sound(&d);
        let d = lemma_3_4(&v(&[(1, true), (2, false)]), &f("p1"), &f("p2"), Side::Right, &assumed(id, "p1")).unwrap();
        assert_eq!(d.conclusion(), &f("p2 v p2 v p1"));
        sound(&d);

        let d = lemma_3_5(&ff, &f("p1"), &f("p2"), &assumed(id, "p1 -> p1"), &assumed(id, "p2 -> p2")).unwrap();
        assert_eq!(d.conclusion(), &f("p1 v p2 -> p1 v p2"));
        sound(&d);

        let tf = v(&[(1, true), (2, false)]);
        let d = lemma_3_3(&tf, &f("p1"), &f("p2"), &assumed(id, "p1"), &assumed(id, "p2 -> p2")).unwrap();
        assert_eq!(d.conclusion(), &f("(p1 -> p2) -> p2"));
        sound(&d);
    }

    #[test]
    fn lemma_4_examples() {
        let p = CalculusId::P;
        let tt = v(&[(1, true), (2, true)]);
        let d = lemma_4_1(&tt, &f("p1"), &f("p2"), &assumed(p, "p1"), &assumed(p, "p2")).unwrap();
        assert_eq!(d.conclusion(), &f("p1 & p2"));
        assert_eq!(d.hypotheses().len(), 2);

        let w = v(&[(1, true), (2, true), (3, false)]);
        let d = lemma_4_1(&w, &f("p1 v p3"), &f("p2"), &assumed(p, "p3 v p1 v p3"), &assumed(p, "p2")).unwrap();
        assert_eq!(d.conclusion(), &f("p3 v (p1 v p3) & p2"));
        sound(&d);

        let ft = v(&[(1, false), (2, true)]);
        let (l, r) = lemma_4_2(&ft, &f("p1"), &f("p2"), &assumed(p, "p1 -> p1")).unwrap();
        assert_eq!(l.conclusion(), &f("p1 & p2 -> p1"));
        assert_eq!(r.conclusion(), &f("p2 & p1 -> p1"));
        sound(&l);
        sound(&r);

        let id = lemma_4_1(&tt, &f("p1"), &f("p2"), &assumed(CalculusId::ID, "p1"), &assumed(CalculusId::ID, "p2"));
        assert!(matches!(id, Err(Error::InsufficientCalculus { .. })));
    }

    #[test]
    fn build_line_examples() {
        let c = build_line(&v(&[(1, true)]), &f("p1"), CalculusId::ID).unwrap();
        assert_eq!(c.polarity, Polarity::Positive);
        assert_eq!(c.derivation.len(), 1);
        assert_eq!(c.derivation.conclusion(), &f("p1"));

        let c = build_line(&v(&[(1, false)]), &f("p1"), CalculusId::ID).unwrap();
        assert_eq!(c.polarity, Polarity::Negative);
        assert!(c.derivation.is_closed());
        assert_eq!(c.derivation.conclusion(), &f("p1 -> p1"));

        let c = build_line(&v(&[(1, true), (2, false)]), &f("p1 -> p2"), CalculusId::ID).unwrap();
        assert_eq!(c.polarity, Polarity::Negative);
        assert_eq!(c.derivation.conclusion(), &f("(p1 -> p2) -> p2"));
        assert_eq!(c.derivation.hypotheses().iter().cloned().collect::<Vec<_>>(), vec![f("p1")]);
        c.verify().unwrap();

        assert!(matches!(build_line(&v(&[(1, true)]), &f("p1 & p1"), CalculusId::ID), Err(Error::Fragment { .. })));
        assert!(build_line(&v(&[(1, true)]), &f("p1 & p2"), CalculusId::P).is_err());
    }

    #[test]
    fn line_property_holds_exhaustively_on_small_formulas() {
        for (fragment, calc) in [(Fragment::ImplicativeDisjunctive, CalculusId::ID), (Fragment::Positive, CalculusId::P)] {
            for_each_formula(2, 3, fragment, |a| {
                let atoms = a.atoms();
                for h in atoms.subsets() {
                    let w = Assignment::from_partition(&atoms, &h);
                    let c = build_line(&w, a, calc).unwrap();
                    c.verify().unwrap_or_else(|e| panic!("{a} under {w}: {e}"));
                    sound(&c.derivation);
                }
            });
        }
    }

    #[test]
    fn eliminate_examples() {
        // with no atoms to eliminate the single leaf is returned unchanged
        let a = f("p1 -> p1");
        let closed = crate::tactics::lemma(crate::tactics::LemmaId::L2_5, &[f("p1")], CalculusId::ID).unwrap();
        let closed = closed.derivation().unwrap().clone();
        let leaves = BTreeMap::from([(AtomSet::new(), closed.clone())]);
        assert_eq!(eliminate(&a, &AtomSet::new(), &leaves, CalculusId::ID).unwrap(), closed);

        let a = f("p1 v (p1 -> p2)");
        let atoms = a.atoms();
        let mut leaves = BTreeMap::new();
        for h in atoms.subsets() {
            let w = Assignment::from_partition(&atoms, &h);
            leaves.insert(h, build_line(&w, &a, CalculusId::ID).unwrap().derivation);
        }
        let d = eliminate(&a, &atoms, &leaves, CalculusId::ID).unwrap();
        assert!(d.is_closed());
        assert_eq!(d.conclusion(), &a);
        check(&d).unwrap();

        leaves.remove(&AtomSet::from_iter([2]));
        assert_eq!(
            eliminate(&a, &atoms, &leaves, CalculusId::ID),
            Err(Error::MissingPartition(AtomSet::from_iter([2])))
        );
    }

    #[test]
    fn prove_examples() {
        for s in ["((p1 -> p2) -> p1) -> p1", "p1 v (p1 -> p2)", "(p1 -> p2) -> (p2 -> p3) -> p1 -> p3"] {
            let d = prove(&f(s), CalculusId::ID).unwrap().into_proof().unwrap();
            assert!(d.is_closed());
            assert_eq!(d.conclusion(), &f(s));
            check(&d).unwrap();
        }
        assert_eq!(
            prove(&f("p1 -> p2"), CalculusId::ID).unwrap(),
            Outcome::Countermodel(v(&[(1, true), (2, false)]))
        );
        let d = prove(&f("p1 -> p2 -> p1 & p2"), CalculusId::P).unwrap().into_proof().unwrap();
        check(&d).unwrap();
        assert!(matches!(prove(&f("p1 & p2 -> p1"), CalculusId::ID), Err(Error::Fragment { .. })));
        assert!(matches!(prove(&f("p1 -> p1"), CalculusId::I), Err(Error::InsufficientCalculus { .. })));
    }

    #[test]
    fn derive_from_hypotheses_examples() {
        let hyps = [f("p1 v p2"), f("p1 -> p2")];
        let d = derive_from_hypotheses(&hyps, &f("p2"), CalculusId::ID).unwrap().into_proof().unwrap();
        assert_eq!(d.hypotheses(), &hyps.iter().cloned().collect());
        assert_eq!(d.conclusion(), &f("p2"));
        check(&d).unwrap();
        let t = derive_from_hypotheses(&[], &f("p1 v (p1 -> p2)"), CalculusId::ID).unwrap();
        assert_eq!(t, prove(&f("p1 v (p1 -> p2)"), CalculusId::ID).unwrap());
        let c = derive_from_hypotheses(&[f("p1")], &f("p2"), CalculusId::ID).unwrap();
        assert_eq!(c, Outcome::Countermodel(v(&[(1, true), (2, false)])));
    }
}
