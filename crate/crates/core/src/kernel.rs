//! The trusted core: the four calculi, axiom-scheme recognition, the
//! [`Derivation`] proof object and the proof checker.
//!
//! Nothing in this module searches for proofs. Derivations are flat step
//! lists; every other module only builds them, and [`check`] is the single
//! place where validity is decided.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, Fragment};

/// The four calculi.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum CalculusId {
    /// Implicative: Ax1-Ax3.
    I,
    /// Implicative-disjunctive: Ax1-Ax6.
    ID,
    /// Implicative-conjunctive: Ax1-Ax3, Ax7-Ax9.
    IC,
    /// Positive: Ax1-Ax9.
    P,
}

impl CalculusId {
    pub const ALL: [CalculusId; 4] = [CalculusId::I, CalculusId::ID, CalculusId::IC, CalculusId::P];

    pub fn fragment(self) -> Fragment {
        match self {
            CalculusId::I => Fragment::Implicative,
            CalculusId::ID => Fragment::ImplicativeDisjunctive,
            CalculusId::IC => Fragment::ImplicativeConjunctive,
            CalculusId::P => Fragment::Positive,
        }
    }

    pub fn has_scheme(self, s: SchemeId) -> bool {
        use SchemeId::*;
        match s {
            Ax1 | Ax2 | Ax3 => true,
            Ax4 | Ax5 | Ax6 => matches!(self, CalculusId::ID | CalculusId::P),
            Ax7 | Ax8 | Ax9 => matches!(self, CalculusId::IC | CalculusId::P),
        }
    }

    pub fn schemes(self) -> impl Iterator<Item = SchemeId> {
        SchemeId::ALL.into_iter().filter(move |&s| self.has_scheme(s))
    }

    /// Whether `other` is an extension of `self` (same or more schemes, larger language).
    pub fn is_sub_calculus_of(self, other: CalculusId) -> bool {
        other.fragment().includes(self.fragment())
    }

    pub fn name(self) -> &'static str {
        match self {
            CalculusId::I => "I",
            CalculusId::ID => "ID",
            CalculusId::IC => "IC",
            CalculusId::P => "P",
        }
    }
}

impl fmt::Display for CalculusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CalculusId {
    type Err = String;

    fn from_str(s: &str) -> Result<CalculusId, String> {
        match s {
            "I" => Ok(CalculusId::I),
            "ID" => Ok(CalculusId::ID),
            "IC" => Ok(CalculusId::IC),
            "P" => Ok(CalculusId::P),
            _ => Err(format!("unknown calculus `{s}` (expected I, ID, IC or P)")),
        }
    }
}

/// Axiom schemes Ax1-Ax9.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum SchemeId {
    Ax1,
    Ax2,
    Ax3,
    Ax4,
    Ax5,
    Ax6,
    Ax7,
    Ax8,
    Ax9,
}

impl SchemeId {
    pub const ALL: [SchemeId; 9] = [
        SchemeId::Ax1,
        SchemeId::Ax2,
        SchemeId::Ax3,
        SchemeId::Ax4,
        SchemeId::Ax5,
        SchemeId::Ax6,
        SchemeId::Ax7,
        SchemeId::Ax8,
        SchemeId::Ax9,
    ];

    pub fn name(self) -> &'static str {
        ["Ax1", "Ax2", "Ax3", "Ax4", "Ax5", "Ax6", "Ax7", "Ax8", "Ax9"][self as usize]
    }

    /// Metavariables occurring in the scheme.
    pub fn metavars(self) -> &'static [MetaVar] {
        use MetaVar::*;
        match self {
            SchemeId::Ax2 | SchemeId::Ax6 => &[A, B, C],
            _ => &[A, B],
        }
    }

    fn pattern(self) -> &'static Pat {
        match self {
            SchemeId::Ax1 => &AX1,
            SchemeId::Ax2 => &AX2,
            SchemeId::Ax3 => &AX3,
            SchemeId::Ax4 => &AX4,
            SchemeId::Ax5 => &AX5,
            SchemeId::Ax6 => &AX6,
            SchemeId::Ax7 => &AX7,
            SchemeId::Ax8 => &AX8,
            SchemeId::Ax9 => &AX9,
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = String;

    fn from_str(s: &str) -> Result<SchemeId, String> {
        SchemeId::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown axiom scheme `{s}`"))
    }
}

/// Scheme metavariables.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MetaVar {
    A,
    B,
    C,
}

enum Pat {
    Var(MetaVar),
    Impl(&'static Pat, &'static Pat),
    Disj(&'static Pat, &'static Pat),
    Conj(&'static Pat, &'static Pat),
}

use Pat::{Conj as PC, Disj as PD, Impl as PI};
const VA: Pat = Pat::Var(MetaVar::A);
const VB: Pat = Pat::Var(MetaVar::B);
const VC: Pat = Pat::Var(MetaVar::C);

// A -> B -> A
static AX1: Pat = PI(&VA, &PI(&VB, &VA));
// (A -> B -> C) -> (A -> B) -> A -> C
static AX2: Pat = PI(&PI(&VA, &PI(&VB, &VC)), &PI(&PI(&VA, &VB), &PI(&VA, &VC)));
// ((A -> B) -> A) -> A
static AX3: Pat = PI(&PI(&PI(&VA, &VB), &VA), &VA);
// A -> A v B
static AX4: Pat = PI(&VA, &PD(&VA, &VB));
// A -> B v A
static AX5: Pat = PI(&VA, &PD(&VB, &VA));
// (A -> C) -> (B -> C) -> A v B -> C
static AX6: Pat = PI(&PI(&VA, &VC), &PI(&PI(&VB, &VC), &PI(&PD(&VA, &VB), &VC)));
// A & B -> A
static AX7: Pat = PI(&PC(&VA, &VB), &VA);
// A & B -> B
static AX8: Pat = PI(&PC(&VA, &VB), &VB);
// A -> B -> A & B
static AX9: Pat = PI(&VA, &PI(&VB, &PC(&VA, &VB)));

/// An assignment of formulas to scheme metavariables.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Subst([Option<Formula>; 3]);

impl Subst {
    pub fn new() -> Subst {
        Subst::default()
    }

    /// Binds A, B, C in order to the given formulas.
    pub fn of(formulas: &[Formula]) -> Subst {
        let mut s = Subst::new();
        for (slot, f) in s.0.iter_mut().zip(formulas) {
            *slot = Some(f.clone());
        }
        s
    }

    pub fn with(mut self, v: MetaVar, f: Formula) -> Subst {
        self.0[v as usize] = Some(f);
        self
    }

    pub fn get(&self, v: MetaVar) -> Option<&Formula> {
        self.0[v as usize].as_ref()
    }

    fn bind(&mut self, v: MetaVar, f: &Formula) -> bool {
        match &self.0[v as usize] {
            Some(bound) => bound == f,
            None => {
                self.0[v as usize] = Some(f.clone());
                true
            }
        }
    }
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, slot) in [MetaVar::A, MetaVar::B, MetaVar::C].iter().zip(&self.0) {
            if let Some(x) = slot {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "{v:?} := {x}")?;
            }
        }
        Ok(())
    }
}

fn match_pat(p: &Pat, f: &Formula, s: &mut Subst) -> bool {
    match p {
        Pat::Var(v) => s.bind(*v, f),
        PI(x, y) => f.as_impl().is_some_and(|(a, b)| match_pat(x, a, s) && match_pat(y, b, s)),
        PD(x, y) => f.as_disj().is_some_and(|(a, b)| match_pat(x, a, s) && match_pat(y, b, s)),
        PC(x, y) => f.as_conj().is_some_and(|(a, b)| match_pat(x, a, s) && match_pat(y, b, s)),
    }
}

fn build_pat(p: &Pat, s: &Subst) -> Option<Formula> {
    Some(match p {
        Pat::Var(v) => s.get(*v)?.clone(),
        PI(x, y) => Formula::imp(build_pat(x, s)?, build_pat(y, s)?),
        PD(x, y) => Formula::disj(build_pat(x, s)?, build_pat(y, s)?),
        PC(x, y) => Formula::conj(build_pat(x, s)?, build_pat(y, s)?),
    })
}

/// Structural matching of a formula against an axiom scheme.
pub fn match_scheme(s: SchemeId, f: &Formula) -> Option<Subst> {
    let mut subst = Subst::new();
    match_pat(s.pattern(), f, &mut subst).then_some(subst)
}

/// The scheme instance under `subst`; `None` if a metavariable is unbound.
pub fn instantiate(s: SchemeId, subst: &Subst) -> Option<Formula> {
    build_pat(s.pattern(), subst)
}

/// The instance of `s` binding A, B, C in order. Panics on too few arguments.
pub fn instance(s: SchemeId, args: &[Formula]) -> Formula {
    instantiate(s, &Subst::of(args)).unwrap_or_else(|| panic!("{s} needs {} arguments", s.metavars().len()))
}

/// One line of a derivation. MP indices are zero-based positions of earlier steps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Step {
    Axiom { scheme: SchemeId, formula: Formula },
    Hyp { formula: Formula },
    Mp { major: usize, minor: usize, formula: Formula },
}

impl Step {
    pub fn formula(&self) -> &Formula {
        match self {
            Step::Axiom { formula, .. } | Step::Hyp { formula } | Step::Mp { formula, .. } => formula,
        }
    }
}

/// A Hilbert-style derivation: a calculus, a set of hypotheses and a
/// non-empty list of steps whose last formula is the conclusion.
///
/// A `Derivation` value is not valid by construction; [`check`] decides that.
/// All constructors outside the kernel run [`check`] before handing a
/// derivation out.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    calculus: CalculusId,
    hypotheses: BTreeSet<Formula>,
    steps: Vec<Step>,
}

impl Derivation {
    /// Assembles a derivation without checking it.
    pub fn from_parts(calculus: CalculusId, hypotheses: BTreeSet<Formula>, steps: Vec<Step>) -> Derivation {
        Derivation { calculus, hypotheses, steps }
    }

    /// Assembles and checks.
    pub fn new(calculus: CalculusId, hypotheses: BTreeSet<Formula>, steps: Vec<Step>) -> Result<Derivation, CheckError> {
        let d = Derivation::from_parts(calculus, hypotheses, steps);
        check(&d)?;
        Ok(d)
    }

    /// The one-line derivation `{f} |- f`.
    pub fn assume(calculus: CalculusId, f: Formula) -> Result<Derivation, CheckError> {
        Derivation::new(calculus, BTreeSet::from([f.clone()]), vec![Step::Hyp { formula: f }])
    }

    pub fn calculus(&self) -> CalculusId {
        self.calculus
    }

    pub fn hypotheses(&self) -> &BTreeSet<Formula> {
        &self.hypotheses
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.hypotheses.is_empty()
    }

    /// Formula of the last step. Panics on an empty derivation.
    pub fn conclusion(&self) -> &Formula {
        self.steps.last().expect("empty derivation").formula()
    }

    /// Adds hypotheses to the declared set. Checked derivations stay valid
    /// provided the new hypotheses lie in the fragment.
    pub fn weaken(mut self, extra: impl IntoIterator<Item = Formula>) -> Result<Derivation, CheckError> {
        self.hypotheses.extend(extra);
        check(&self)?;
        Ok(self)
    }

    /// The same step list re-tagged with another calculus, then checked.
    pub fn lift(&self, calculus: CalculusId) -> Result<Derivation, CheckError> {
        Derivation::new(calculus, self.hypotheses.clone(), self.steps.clone())
    }

    /// Occurrences of each axiom scheme.
    pub fn scheme_histogram(&self) -> [usize; 9] {
        let mut h = [0; 9];
        for s in &self.steps {
            if let Step::Axiom { scheme, .. } = s {
                h[*scheme as usize] += 1;
            }
        }
        h
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckErrorKind {
    #[error("derivation has no steps")]
    Empty,
    #[error("{scheme} is not a scheme of calculus {calculus}")]
    SchemeNotInCalculus { scheme: SchemeId, calculus: CalculusId },
    #[error("`{formula}` is not an instance of {scheme}")]
    BadAxiomInstance { scheme: SchemeId, formula: Formula },
    #[error("hypothesis `{0}` is not declared")]
    HypothesisNotDeclared(Formula),
    #[error("modus ponens mismatch: major `{major}`, minor `{minor}`, conclusion `{conclusion}`")]
    MpMismatch { major: Formula, minor: Formula, conclusion: Formula },
    #[error("reference to step {0}, which is not earlier")]
    ForwardReference(usize),
    #[error("`{formula}` lies outside the {fragment} fragment")]
    FragmentViolation { formula: Formula, fragment: Fragment },
}

/// A checker diagnostic. `step` is the zero-based offending step, or `None`
/// for problems with the declared hypotheses or the derivation as a whole.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct CheckError {
    pub step: Option<usize>,
    pub kind: CheckErrorKind,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(i) => write!(f, "step {}: {}", i + 1, self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

/// Decides whether `d` is a correct derivation of its conclusion from its
/// declared hypotheses in its calculus.
pub fn check(d: &Derivation) -> Result<(), CheckError> {
    let fragment = d.calculus.fragment();
    let whole = |kind| CheckError { step: None, kind };
    if d.steps.is_empty() {
        return Err(whole(CheckErrorKind::Empty));
    }
    for h in &d.hypotheses {
        if !fragment.contains(h) {
            return Err(whole(CheckErrorKind::FragmentViolation { formula: h.clone(), fragment }));
        }
    }
    for (i, step) in d.steps.iter().enumerate() {
        let at = |kind| CheckError { step: Some(i), kind };
        let formula = step.formula();
        if !fragment.contains(formula) {
            return Err(at(CheckErrorKind::FragmentViolation { formula: formula.clone(), fragment }));
        }
        match step {
            Step::Axiom { scheme, formula } => {
                if !d.calculus.has_scheme(*scheme) {
                    return Err(at(CheckErrorKind::SchemeNotInCalculus { scheme: *scheme, calculus: d.calculus }));
                }
                if match_scheme(*scheme, formula).is_none() {
                    return Err(at(CheckErrorKind::BadAxiomInstance { scheme: *scheme, formula: formula.clone() }));
                }
            }
            Step::Hyp { formula } => {
                if !d.hypotheses.contains(formula) {
                    return Err(at(CheckErrorKind::HypothesisNotDeclared(formula.clone())));
                }
            }
            Step::Mp { major, minor, formula } => {
                for &j in [major, minor] {
                    if j >= i {
                        return Err(at(CheckErrorKind::ForwardReference(j)));
                    }
                }
                let maj = d.steps[*major].formula();
                let min = d.steps[*minor].formula();
                let fits = maj.as_impl().is_some_and(|(a, b)| a == min && b == formula);
                if !fits {
                    return Err(at(CheckErrorKind::MpMismatch {
                        major: maj.clone(),
                        minor: min.clone(),
                        conclusion: formula.clone(),
                    }));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("{scheme} is not a scheme of calculus {calculus}")]
    SchemeNotInCalculus { scheme: SchemeId, calculus: CalculusId },
    #[error("substitution leaves a metavariable of {0} unbound")]
    UnboundMetavariable(SchemeId),
    #[error("calculus mismatch: {0} vs {1}")]
    CalculusMismatch(CalculusId, CalculusId),
    #[error("modus ponens does not apply: `{major}` to `{minor}`")]
    MpMismatch { major: Formula, minor: Formula },
    #[error("nothing to concatenate")]
    NothingToConcatenate,
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// The one-step derivation of an axiom instance.
pub fn axiom(c: CalculusId, s: SchemeId, subst: &Subst) -> Result<Derivation, KernelError> {
    if !c.has_scheme(s) {
        return Err(KernelError::SchemeNotInCalculus { scheme: s, calculus: c });
    }
    let formula = instantiate(s, subst).ok_or(KernelError::UnboundMetavariable(s))?;
    Ok(Derivation::new(c, BTreeSet::new(), vec![Step::Axiom { scheme: s, formula }])?)
}

/// Splices derivations one after another, shifting MP indices. The result's
/// hypotheses are the union and its conclusion is that of the last argument.
pub fn concat(ds: &[&Derivation]) -> Result<Derivation, KernelError> {
    let first = ds.first().ok_or(KernelError::NothingToConcatenate)?;
    let calculus = first.calculus;
    let mut hypotheses = BTreeSet::new();
    let mut steps = Vec::with_capacity(ds.iter().map(|d| d.len()).sum());
    for d in ds {
        if d.calculus != calculus {
            return Err(KernelError::CalculusMismatch(calculus, d.calculus));
        }
        let offset = steps.len();
        hypotheses.extend(d.hypotheses.iter().cloned());
        steps.extend(d.steps.iter().map(|s| match s {
            Step::Mp { major, minor, formula } => Step::Mp {
                major: major + offset,
                minor: minor + offset,
                formula: formula.clone(),
            },
            other => other.clone(),
        }));
    }
    Ok(Derivation::new(calculus, hypotheses, steps)?)
}

/// Concatenates a derivation of `a -> b` with one of `a` and closes with MP.
pub fn modus_ponens(major: &Derivation, minor: &Derivation) -> Result<Derivation, KernelError> {
    let joined = concat(&[major, minor])?;
    let b = match major.conclusion().as_impl() {
        Some((a, b)) if a == minor.conclusion() => b.clone(),
        _ => {
            return Err(KernelError::MpMismatch {
                major: major.conclusion().clone(),
                minor: minor.conclusion().clone(),
            })
        }
    };
    let mut steps = joined.steps;
    let m = major.len() - 1;
    let n = steps.len() - 1;
    steps.push(Step::Mp { major: m, minor: n, formula: b });
    Ok(Derivation::new(joined.calculus, joined.hypotheses, steps)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn p(i: u32) -> Formula {
        Formula::atom(i)
    }

    #[test]
    fn match_scheme_examples() {
        let s = match_scheme(SchemeId::Ax1, &f("p1 -> p2 -> p1")).unwrap();
        assert_eq!(s, Subst::new().with(MetaVar::A, p(1)).with(MetaVar::B, p(2)));
        let s = match_scheme(SchemeId::Ax3, &f("((p1 -> p2) -> p1) -> p1")).unwrap();
        assert_eq!(s, Subst::of(&[p(1), p(2)]));
        assert_eq!(match_scheme(SchemeId::Ax1, &f("p1 -> p1")), None);
        assert!(match_scheme(SchemeId::Ax6, &f("(p1 -> p3) -> (p2 -> p3) -> p1 v p2 -> p3")).is_some());
        assert!(match_scheme(SchemeId::Ax6, &f("(p1 -> p3) -> (p2 -> p3) -> p2 v p1 -> p3")).is_none());
    }

    #[test]
    fn match_then_instantiate_roundtrips() {
        for s in SchemeId::ALL {
            let args = [f("p1 -> p2"), f("p3 v p1"), f("p2 & p2")];
            let inst = instance(s, &args[..s.metavars().len()]);
            let subst = match_scheme(s, &inst).unwrap();
            assert_eq!(instantiate(s, &subst).unwrap(), inst);
            assert_eq!(subst, Subst::of(&args[..s.metavars().len()]));
        }
    }

    #[test]
    fn axiom_constructor() {
        let d = axiom(CalculusId::ID, SchemeId::Ax4, &Subst::of(&[p(1), p(2)])).unwrap();
        assert_eq!(d.conclusion(), &f("p1 -> p1 v p2"));
        assert!(d.is_closed());
        assert_eq!(
            axiom(CalculusId::I, SchemeId::Ax4, &Subst::of(&[p(1), p(2)])),
            Err(KernelError::SchemeNotInCalculus { scheme: SchemeId::Ax4, calculus: CalculusId::I })
        );
        let d = axiom(CalculusId::P, SchemeId::Ax9, &Subst::of(&[p(1), p(2)])).unwrap();
        assert_eq!(d.conclusion(), &f("p1 -> p2 -> p1 & p2"));
        let err = axiom(CalculusId::ID, SchemeId::Ax1, &Subst::of(&[f("p1 & p2"), p(1)])).unwrap_err();
        assert!(matches!(err, KernelError::Check(CheckError { kind: CheckErrorKind::FragmentViolation { .. }, .. })));
        assert_eq!(
            axiom(CalculusId::I, SchemeId::Ax2, &Subst::of(&[p(1), p(2)])),
            Err(KernelError::UnboundMetavariable(SchemeId::Ax2))
        );
    }

    #[test]
    fn check_examples() {
        let d = Derivation::from_parts(
            CalculusId::I,
            BTreeSet::new(),
            vec![Step::Axiom { scheme: SchemeId::Ax1, formula: f("p1 -> p2 -> p1") }],
        );
        assert_eq!(check(&d), Ok(()));

        let d = Derivation::from_parts(
            CalculusId::I,
            BTreeSet::from([p(1), f("p1 -> p2")]),
            vec![
                Step::Hyp { formula: p(1) },
                Step::Hyp { formula: f("p1 -> p2") },
                Step::Mp { major: 1, minor: 0, formula: p(2) },
            ],
        );
        assert_eq!(check(&d), Ok(()));

        let d = Derivation::from_parts(
            CalculusId::ID,
            BTreeSet::new(),
            vec![Step::Axiom { scheme: SchemeId::Ax1, formula: f("p1 & p2 -> p3 -> p1 & p2") }],
        );
        assert!(matches!(check(&d).unwrap_err().kind, CheckErrorKind::FragmentViolation { .. }));
    }

    #[test]
    fn check_diagnostics() {
        let bad = |calc, hyps: &[&str], steps: Vec<Step>| {
            check(&Derivation::from_parts(calc, hyps.iter().map(|h| f(h)).collect(), steps)).unwrap_err()
        };
        let e = bad(CalculusId::I, &[], vec![Step::Hyp { formula: p(1) }]);
        assert_eq!(e, CheckError { step: Some(0), kind: CheckErrorKind::HypothesisNotDeclared(p(1)) });
        let e = bad(CalculusId::I, &[], vec![Step::Axiom { scheme: SchemeId::Ax1, formula: f("p1 -> p1") }]);
        assert!(matches!(e.kind, CheckErrorKind::BadAxiomInstance { .. }));
        let e = bad(CalculusId::I, &[], vec![Step::Axiom { scheme: SchemeId::Ax4, formula: f("p1 -> p1") }]);
        assert!(matches!(e.kind, CheckErrorKind::SchemeNotInCalculus { .. }));
        let e = bad(CalculusId::I, &["p1"], vec![Step::Mp { major: 0, minor: 0, formula: p(1) }]);
        assert_eq!(e.kind, CheckErrorKind::ForwardReference(0));
        let e = bad(
            CalculusId::I,
            &["p1", "p2 -> p3"],
            vec![Step::Hyp { formula: p(1) }, Step::Hyp { formula: f("p2 -> p3") }, Step::Mp { major: 1, minor: 0, formula: p(3) }],
        );
        assert!(matches!(e.kind, CheckErrorKind::MpMismatch { .. }));
        assert_eq!(bad(CalculusId::I, &[], vec![]).kind, CheckErrorKind::Empty);
        let e = bad(CalculusId::I, &["p1 v p2"], vec![Step::Axiom { scheme: SchemeId::Ax1, formula: f("p1 -> p1 -> p1") }]);
        assert_eq!(e.step, None);
    }

    #[test]
    fn concat_and_modus_ponens() {
        let ab = Derivation::assume(CalculusId::I, f("p1 -> p2")).unwrap();
        let a = Derivation::assume(CalculusId::I, p(1)).unwrap();
        let b = modus_ponens(&ab, &a).unwrap();
        assert_eq!(b.conclusion(), &p(2));
        assert_eq!(b.hypotheses(), &BTreeSet::from([p(1), f("p1 -> p2")]));

        let twice = concat(&[&b, &b]).unwrap();
        assert_eq!(twice.conclusion(), b.conclusion());
        assert_eq!(twice.len(), 2 * b.len());

        let id = Derivation::assume(CalculusId::ID, p(1)).unwrap();
        assert_eq!(concat(&[&a, &id]), Err(KernelError::CalculusMismatch(CalculusId::I, CalculusId::ID)));
    }

    #[test]
    fn monotone_lift() {
        let d = axiom(CalculusId::I, SchemeId::Ax3, &Subst::of(&[p(1), p(2)])).unwrap();
        for c in CalculusId::ALL {
            assert!(d.lift(c).is_ok());
        }
        let d = axiom(CalculusId::ID, SchemeId::Ax4, &Subst::of(&[p(1), p(2)])).unwrap();
        assert!(d.lift(CalculusId::P).is_ok());
        assert!(d.lift(CalculusId::IC).is_err());
    }
}
