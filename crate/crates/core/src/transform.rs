//! The rewriting translations and the reduction routes to completeness.
//!
//! `gamma` pushes `&` outward until the formula is a conjunction of
//! implicative-disjunctive formulas; `tau` replaces every `B v C` by
//! `(B -> C) -> C`. Both come with equivalence proofs, and together with the
//! translation of ID-derivations into I they give completeness for I, IC and
//! (a second time) for P.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::builder::ProofBuilder;
use crate::error::{require_fragment, Error, Result};
use crate::formula::{Connective, Formula, Fragment, Kind, Side};
use crate::kalmar::{self, Outcome};
use crate::kernel::{check, CalculusId, Derivation, SchemeId, Step};
use crate::semantics::{is_tautology, Verdict};
use crate::tactics::{
    equivalence_rewrite, l2_18, l2_19, l2_7, l2_8, l5_1, EquivalencePair, LemmaId, Rewrite,
};

/// The four rewrite rules of the `gamma` normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `C -> (D & E)` to `(C -> D) & (C -> E)`
    I,
    /// `(C & D) -> E` to `C -> (D -> E)`
    II,
    /// `C v (D & E)` to `(C v D) & (C v E)`
    III,
    /// `(C & D) v E` to `(C v E) & (D v E)`
    IV,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::I, Rule::II, Rule::III, Rule::IV];

    pub fn name(self) -> &'static str {
        match self {
            Rule::I => "i",
            Rule::II => "ii",
            Rule::III => "iii",
            Rule::IV => "iv",
        }
    }

    /// The equivalence lemma justifying the rule.
    pub fn lemma(self) -> LemmaId {
        match self {
            Rule::I => LemmaId::L2_21,
            Rule::II => LemmaId::L2_22,
            Rule::III => LemmaId::L2_25,
            Rule::IV => LemmaId::L2_26,
        }
    }

    // C, D, E of the redex; these are also the lemma's arguments
    fn parts(self, f: &Formula) -> Option<[Formula; 3]> {
        let split = |x: &Formula| x.as_conj().map(|(a, b)| (a.clone(), b.clone()));
        match (self, f.kind()) {
            (Rule::I, Kind::Impl(c, de)) | (Rule::III, Kind::Disj(c, de)) => {
                let (d, e) = split(de)?;
                Some([c.clone(), d, e])
            }
            (Rule::II, Kind::Impl(cd, e)) | (Rule::IV, Kind::Disj(cd, e)) => {
                let (c, d) = split(cd)?;
                Some([c, d, e.clone()])
            }
            _ => None,
        }
    }

    /// The contractum, if `f` is a redex of this rule.
    pub fn rewrite(self, f: &Formula) -> Option<Formula> {
        let [c, d, e] = self.parts(f)?;
        Some(match self {
            Rule::I => Formula::conj(Formula::imp(c.clone(), d), Formula::imp(c, e)),
            Rule::II => Formula::imp(c, Formula::imp(d, e)),
            Rule::III => Formula::conj(Formula::disj(c.clone(), d), Formula::disj(c, e)),
            Rule::IV => Formula::conj(Formula::disj(c, e.clone()), Formula::disj(d, e)),
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Rule, String> {
        Rule::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// The first rule, in rule order, having `f` as a redex. A node can be a
/// redex of both (i) and (ii), or of both (iii) and (iv); the lower-numbered
/// rule wins, which matters because the two choices for `v` lead to
/// differently arranged normal forms.
pub fn redex_rule(f: &Formula) -> Option<Rule> {
    Rule::ALL.into_iter().find(|r| r.parts(f).is_some())
}

/// The innermost-leftmost redex: the first redex met in a left-to-right
/// post-order walk.
pub fn find_redex(f: &Formula) -> Option<(Rule, Vec<Side>)> {
    fn walk(f: &Formula, path: &mut Vec<Side>) -> Option<Rule> {
        if let Some((_, l, r)) = f.as_binary() {
            for (side, child) in [(Side::Left, l), (Side::Right, r)] {
                path.push(side);
                if let Some(rule) = walk(child, path) {
                    return Some(rule);
                }
                path.pop();
            }
        }
        redex_rule(f)
    }
    let mut path = Vec::new();
    walk(f, &mut path).map(|rule| (rule, path))
}

/// `&` occurs only along the top conjunction spine.
pub fn is_gamma_normal(f: &Formula) -> bool {
    match f.as_conj() {
        Some((x, y)) => is_gamma_normal(x) && is_gamma_normal(y),
        None => Fragment::ImplicativeDisjunctive.contains(f),
    }
}

/// Rewrites the occurrence at `path` by `rule`.
pub fn apply_rule(f: &Formula, rule: Rule, path: &[Side]) -> Option<Formula> {
    let contractum = rule.rewrite(f.at_path(path)?)?;
    f.replace_at(path, contractum)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaForm {
    pub formula: Formula,
    pub trace: Vec<(Rule, Vec<Side>)>,
}

impl GammaForm {
    /// Replays the trace from `source`; `None` if some step does not apply.
    pub fn replay(&self, source: &Formula) -> Option<Formula> {
        self.trace.iter().try_fold(source.clone(), |f, (rule, path)| apply_rule(&f, *rule, path))
    }
}

pub fn gamma(a: &Formula) -> GammaForm {
    let mut formula = a.clone();
    let mut trace = Vec::new();
    while let Some((rule, path)) = find_redex(&formula) {
        formula = apply_rule(&formula, rule, &path).expect("redex found at this path");
        trace.push((rule, path));
    }
    GammaForm { formula, trace }
}

/// The rewrite from `a` to `gamma(a)`, one lemma instance per trace step.
fn gamma_rewrite(a: &Formula) -> Rewrite<'static> {
    let g = gamma(a);
    let mut current = a.clone();
    let mut steps = Vec::with_capacity(g.trace.len());
    for (rule, path) in &g.trace {
        let redex = current.at_path(path).expect("trace path is valid");
        let args = rule.parts(redex).expect("trace step is a redex");
        let step = Rewrite::at_path(&current, path, equivalence_rewrite(rule.lemma(), &args));
        current = step.to().clone();
        steps.push(step);
    }
    Rewrite::chain(a, steps)
}

/// The pair between `a` and `gamma(a)` in calculus `calc`, which must have
/// the lemmas for every rule fired (IC suffices for `v`-free input).
pub(crate) fn gamma_equivalence_in(a: &Formula, calc: CalculusId) -> Result<EquivalencePair> {
    require_fragment(calc.fragment(), a)?;
    gamma_rewrite(a).into_pair(calc)
}

/// A derivability-form P-pair between `a` and `gamma(a).formula`.
pub fn gamma_equivalence(a: &Formula) -> Result<EquivalencePair> {
    gamma_equivalence_in(a, CalculusId::P)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub conjuncts: Vec<Formula>,
    /// Between the source and the right-associated conjunction of `conjuncts`.
    pub equivalence: EquivalencePair,
}

impl Decomposition {
    pub fn conjunction(&self) -> &Formula {
        self.equivalence.right()
    }
}

/// Flattens the conjunction tree of `f` into a right-associated list.
fn flatten(f: &Formula) -> (Vec<Formula>, Rewrite<'static>) {
    let Some((x, y)) = f.as_conj() else {
        return (vec![f.clone()], Rewrite::Refl(f.clone()));
    };
    let (xs, ex) = flatten(x);
    let (ys, ey) = flatten(y);
    let mut steps = vec![Rewrite::cong(Connective::Conj, ex, ey)];
    if xs.len() > 1 {
        let mut args = xs.clone();
        args.push(Formula::conj_list(&ys));
        steps.push(equivalence_rewrite(LemmaId::L2_23, &args));
    }
    let mut items = xs;
    items.extend(ys);
    (items, Rewrite::chain(f, steps))
}

fn decompose_rewrite(a: &Formula, calc: CalculusId) -> Result<(Vec<Formula>, Rewrite<'static>)> {
    require_fragment(calc.fragment(), a)?;
    let to_gamma = gamma_rewrite(a);
    let (conjuncts, flat) = flatten(to_gamma.to());
    Ok((conjuncts, Rewrite::chain(a, vec![to_gamma, flat])))
}

pub(crate) fn decompose_in(a: &Formula, calc: CalculusId) -> Result<Decomposition> {
    let (conjuncts, rw) = decompose_rewrite(a, calc)?;
    Ok(Decomposition { conjuncts, equivalence: rw.into_pair(calc)? })
}

/// Implicative-disjunctive conjuncts of `a`, with a P-pair between `a` and
/// their conjunction.
pub fn decompose(a: &Formula) -> Result<Decomposition> {
    decompose_in(a, CalculusId::P)
}

/// The implicative translation. Fails on formulas containing `&`.
pub fn tau(a: &Formula) -> Result<Formula> {
    require_fragment(Fragment::ImplicativeDisjunctive, a)?;
    Ok(tau_unchecked(a))
}

fn tau_unchecked(a: &Formula) -> Formula {
    match a.kind() {
        Kind::Atom(_) => a.clone(),
        Kind::Impl(x, y) => Formula::imp(tau_unchecked(x), tau_unchecked(y)),
        Kind::Disj(x, y) => {
            let (tx, ty) = (tau_unchecked(x), tau_unchecked(y));
            Formula::imp(Formula::imp(tx, ty.clone()), ty)
        }
        Kind::Conj(..) => unreachable!("tau on a conjunction"),
    }
}

/// A derivability-form ID-pair between `a` and `tau(a)`.
pub fn tau_equivalence(a: &Formula) -> Result<EquivalencePair> {
    require_fragment(Fragment::ImplicativeDisjunctive, a)?;
    tau_rewrite(a).into_pair(CalculusId::ID)
}

fn tau_rewrite(a: &Formula) -> Rewrite<'static> {
    match a.kind() {
        Kind::Atom(_) => Rewrite::Refl(a.clone()),
        Kind::Impl(x, y) => Rewrite::cong(Connective::Impl, tau_rewrite(x), tau_rewrite(y)),
        Kind::Disj(x, y) => {
            let inner = Rewrite::cong(Connective::Disj, tau_rewrite(x), tau_rewrite(y));
            let (tx, ty) = inner.to().as_disj().map(|(p, q)| (p.clone(), q.clone())).expect("disjunction");
            let txy = Formula::imp(tx, ty.clone());
            let outer = Rewrite::Step {
                from: inner.to().clone(),
                to: Formula::imp(txy.clone(), ty),
                forward: Box::new(move |s, h| s.suppose(&txy, &[h], |t, hxy, p| l2_18(t, p[0], hxy))),
                backward: Box::new(l2_19),
            };
            Rewrite::chain(a, vec![inner, outer])
        }
        Kind::Conj(..) => unreachable!("fragment checked"),
    }
}

/// From a closed ID-derivation of `A`, a closed I-derivation of `tau(A)`.
pub fn translate_derivation(d: &Derivation) -> Result<Derivation> {
    if d.calculus() != CalculusId::ID {
        return Err(Error::WrongCalculus { expected: CalculusId::ID, found: d.calculus() });
    }
    if !d.is_closed() {
        return Err(Error::OpenHypotheses);
    }
    check(d)?;
    let mut b = ProofBuilder::new(CalculusId::I);
    let mut map = Vec::with_capacity(d.len());
    for step in d.steps() {
        let line = match step {
            Step::Axiom { scheme, formula } => {
                let target = tau_unchecked(formula);
                match b.find(&target) {
                    Some(line) => line,
                    None => translate_axiom(&mut b, *scheme, formula, target),
                }
            }
            Step::Mp { major, minor, .. } => b.mp(map[*major], map[*minor]),
            Step::Hyp { .. } => unreachable!("closed derivation"),
        };
        map.push(line);
    }
    Ok(b.finish(*map.last().expect("non-empty"))?)
}

fn translate_axiom(b: &mut ProofBuilder, scheme: SchemeId, formula: &Formula, target: Formula) -> usize {
    let impl_parts = |f: &Formula| f.as_impl().map(|(x, y)| (x.clone(), y.clone())).expect("implication");
    let disj_parts = |f: &Formula| f.as_disj().map(|(x, y)| (x.clone(), y.clone())).expect("disjunction");
    match scheme {
        // tau commutes with `->`, so these stay instances of the same scheme
        SchemeId::Ax1 | SchemeId::Ax2 | SchemeId::Ax3 => b.axiom_formula(scheme, target),
        SchemeId::Ax4 => {
            let (a, avb) = impl_parts(formula);
            let (_, x) = disj_parts(&avb);
            b.instantiate(ax4_image(), &[tau_unchecked(&a), tau_unchecked(&x)], &[])
        }
        SchemeId::Ax5 => {
            let (a, bva) = impl_parts(formula);
            let (x, _) = disj_parts(&bva);
            l2_8(b, &tau_unchecked(&a), &tau_unchecked(&x))
        }
        SchemeId::Ax6 => {
            let (ac, rest) = impl_parts(formula);
            let (_, rest) = impl_parts(&rest);
            let (avb, _) = impl_parts(&rest);
            let (a, x) = disj_parts(&avb);
            let (_, c) = impl_parts(&ac);
            b.instantiate(ax6_image(), &[tau_unchecked(&a), tau_unchecked(&x), tau_unchecked(&c)], &[])
        }
        SchemeId::Ax7 | SchemeId::Ax8 | SchemeId::Ax9 => unreachable!("not a scheme of ID"),
    }
}

fn schematic(i: u32) -> Formula {
    Formula::atom(i)
}

// `p1 -> (p1 -> p2) -> p2` by 2.7, instantiated per Ax4 step
fn ax4_image() -> &'static Derivation {
    static IMAGE: OnceLock<Derivation> = OnceLock::new();
    IMAGE.get_or_init(|| {
        let mut b = ProofBuilder::new(CalculusId::I);
        let line = l2_7(&mut b, &schematic(1), &schematic(2));
        b.finish(line).expect("template checks")
    })
}

// `(p1 -> p3) -> (p2 -> p3) -> ((p1 -> p2) -> p2) -> p3`: 5.1 with its
// three hypotheses discharged, instantiated per Ax6 step
fn ax6_image() -> &'static Derivation {
    static IMAGE: OnceLock<Derivation> = OnceLock::new();
    IMAGE.get_or_init(|| {
        let (a, x, c) = (schematic(1), schematic(2), schematic(3));
        let h1 = Formula::imp(a.clone(), c.clone());
        let h2 = Formula::imp(x.clone(), c);
        let h3 = Formula::imp(Formula::imp(a, x.clone()), x);
        let mut b = ProofBuilder::new(CalculusId::I);
        let line = b.suppose(&h1, &[], |s, l1, _| {
            s.suppose(&h2, &[l1], |t, l2, p| t.suppose(&h3, &[p[0], l2], |u, l3, q| l5_1(u, q[0], q[1], l3)))
        });
        b.finish(line).expect("template checks")
    })
}

/// Completeness for I: the ID engine, then translation (the identity on
/// implicative formulas).
pub fn prove_i(a: &Formula) -> Result<Outcome> {
    require_fragment(Fragment::Implicative, a)?;
    Ok(match kalmar::prove(a, CalculusId::ID)? {
        Outcome::Proof(d) => Outcome::Proof(translate_derivation(&d)?),
        countermodel => countermodel,
    })
}

// Conjunct proofs lifted into `calc`, conjoined, then pulled back through
// the decomposition.
fn prove_by_decomposition(
    a: &Formula,
    calc: CalculusId,
    prove_conjunct: impl Fn(&Formula) -> Result<Outcome>,
) -> Result<Outcome> {
    if let Verdict::Countermodel(v) = is_tautology(a) {
        return Ok(Outcome::Countermodel(v));
    }
    let dec = decompose_in(a, calc)?;
    let mut b = ProofBuilder::new(calc);
    let mut lines = Vec::with_capacity(dec.conjuncts.len());
    for c in &dec.conjuncts {
        let d = prove_conjunct(c)?.into_proof().expect("conjuncts of a tautology are tautologies");
        lines.push(b.cut(&d, &[]));
    }
    // the Ax9 assembly of `conjoin`, checked once with the rest
    let whole = b.conj_build(&dec.conjuncts, &lines);
    let line = dec.equivalence.apply_backward(&mut b, whole);
    Ok(Outcome::Proof(b.finish(line)?))
}

/// Completeness for IC through implicative conjuncts. On `v`-free input
/// only rules (i) and (ii) ever fire.
pub fn prove_ic(a: &Formula) -> Result<Outcome> {
    require_fragment(Fragment::ImplicativeConjunctive, a)?;
    prove_by_decomposition(a, CalculusId::IC, prove_i)
}

/// Completeness for P through implicative-disjunctive conjuncts proved by
/// the ID engine.
pub fn prove_p_reduction(a: &Formula) -> Result<Outcome> {
    require_fragment(Fragment::Positive, a)?;
    prove_by_decomposition(a, CalculusId::P, |c| kalmar::prove(c, CalculusId::ID))
}

/// Implicative conjuncts of `a`: `decompose`, then `tau` on every conjunct.
pub fn decompose_to_implicative(a: &Formula) -> Result<Decomposition> {
    let calc = CalculusId::P;
    let (conjuncts, dec) = decompose_rewrite(a, calc)?;
    let taus: Vec<_> = conjuncts.iter().map(tau_rewrite).collect();
    let conjuncts = taus.iter().map(|t| t.to().clone()).collect();
    let all = taus.into_iter().rev().reduce(|acc, t| Rewrite::cong(Connective::Conj, t, acc)).expect("a conjunct");
    let equivalence = Rewrite::chain(a, vec![dec, all]).into_pair(calc)?;
    Ok(Decomposition { conjuncts, equivalence })
}

/// How a thesis of P is synthesized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Route {
    /// The Kalmár construction run directly in the target calculus.
    #[default]
    Direct,
    /// Decomposition into conjuncts proved by the ID engine.
    Reduction,
}

impl FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Route, String> {
        match s {
            "direct" => Ok(Route::Direct),
            "reduction" => Ok(Route::Reduction),
            _ => Err(format!("unknown route `{s}` (expected direct or reduction)")),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Direct => "direct",
            Route::Reduction => "reduction",
        })
    }
}

/// A closed proof of `a` in `calc`, or a countermodel. I and IC have only
/// the reduction route and ID only the direct one, so `route` matters for P
/// alone.
pub fn synthesize(a: &Formula, calc: CalculusId, route: Route) -> Result<Outcome> {
    match (calc, route) {
        (CalculusId::I, _) => prove_i(a),
        (CalculusId::ID, _) => kalmar::prove(a, CalculusId::ID),
        (CalculusId::IC, _) => prove_ic(a),
        (CalculusId::P, Route::Direct) => kalmar::prove(a, CalculusId::P),
        (CalculusId::P, Route::Reduction) => prove_p_reduction(a),
    }
}
