//! Syntactical equivalence as a pair of derivations, and substitution of
//! equivalents.
//!
//! A pair is kept in one of two shapes. In derivability form the forward
//! derivation proves the right formula from the single hypothesis left and the
//! backward derivation proves left from right. In thesis form both are closed
//! proofs of `left -> right` and `right -> left`. Neither shape needs `&`, so
//! pairs work in every calculus.

use std::borrow::Cow;
use std::collections::BTreeSet;

use crate::builder::{Line, ProofBuilder};
use crate::error::{Error, Result};
use crate::formula::{Connective, Formula, Side};
use crate::kernel::{CalculusId, Derivation, SchemeId::*};

use super::deduction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Thesis,
    Derivability,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalencePair {
    left: Formula,
    right: Formula,
    forward: Derivation,
    backward: Derivation,
    mode: Mode,
}

impl EquivalencePair {
    /// A derivability-form pair whose directions are emitted by `forward`
    /// and `backward`, each given a builder and the line of its hypothesis.
    pub fn build(
        calculus: CalculusId,
        left: Formula,
        right: Formula,
        forward: impl FnOnce(&mut ProofBuilder, Line) -> Line,
        backward: impl FnOnce(&mut ProofBuilder, Line) -> Line,
    ) -> Result<EquivalencePair> {
        let fwd = one_way(calculus, &left, &right, forward)?;
        let bwd = one_way(calculus, &right, &left, backward)?;
        Ok(EquivalencePair { left, right, forward: fwd, backward: bwd, mode: Mode::Derivability })
    }

    /// Wraps two existing derivations after validating their shape.
    pub fn from_derivations(
        left: Formula,
        right: Formula,
        forward: Derivation,
        backward: Derivation,
        mode: Mode,
    ) -> Result<EquivalencePair> {
        if forward.calculus() != backward.calculus() {
            return Err(Error::WrongCalculus { expected: forward.calculus(), found: backward.calculus() });
        }
        crate::kernel::check(&forward)?;
        crate::kernel::check(&backward)?;
        for (d, from, to) in [(&forward, &left, &right), (&backward, &right, &left)] {
            let (hyps, concl) = match mode {
                Mode::Thesis => (BTreeSet::new(), Formula::imp(from.clone(), to.clone())),
                Mode::Derivability => (BTreeSet::from([from.clone()]), to.clone()),
            };
            if d.conclusion() != &concl {
                return Err(Error::FormulaMismatch { expected: concl, found: d.conclusion().clone() });
            }
            if !d.hypotheses().is_subset(&hyps) {
                return Err(Error::Precondition(format!("unexpected hypotheses in a proof of `{concl}`")));
            }
        }
        Ok(EquivalencePair { left, right, forward, backward, mode })
    }

    /// The pair between `a` and itself.
    pub fn refl(calculus: CalculusId, a: Formula) -> Result<EquivalencePair> {
        EquivalencePair::build(calculus, a.clone(), a, |_, h| h, |_, h| h)
    }

    pub fn left(&self) -> &Formula {
        &self.left
    }

    pub fn right(&self) -> &Formula {
        &self.right
    }

    pub fn forward(&self) -> &Derivation {
        &self.forward
    }

    pub fn backward(&self) -> &Derivation {
        &self.backward
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn calculus(&self) -> CalculusId {
        self.forward.calculus()
    }

    pub fn is_reflexive(&self) -> bool {
        self.left == self.right
    }

    /// Swaps the two sides.
    pub fn symm(self) -> EquivalencePair {
        EquivalencePair {
            left: self.right,
            right: self.left,
            forward: self.backward,
            backward: self.forward,
            mode: self.mode,
        }
    }

    /// Converts to thesis form by the deduction theorem.
    pub fn thesis(&self) -> Result<EquivalencePair> {
        if self.mode == Mode::Thesis {
            return Ok(self.clone());
        }
        let forward = deduction(&self.forward, &self.left)?;
        let backward = deduction(&self.backward, &self.right)?;
        Ok(EquivalencePair { forward, backward, mode: Mode::Thesis, ..self.clone() })
    }

    /// Converts to derivability form by modus ponens.
    pub fn derivability(&self) -> Result<EquivalencePair> {
        if self.mode == Mode::Derivability {
            return Ok(self.clone());
        }
        let c = self.calculus();
        let (fwd, bwd) = (&self.forward, &self.backward);
        EquivalencePair::build(
            c,
            self.left.clone(),
            self.right.clone(),
            |s, h| {
                let t = s.cut(fwd, &[]);
                s.mp(t, h)
            },
            |s, h| {
                let t = s.cut(bwd, &[]);
                s.mp(t, h)
            },
        )
    }

    pub fn with_mode(&self, mode: Mode) -> Result<EquivalencePair> {
        match mode {
            Mode::Thesis => self.thesis(),
            Mode::Derivability => self.derivability(),
        }
    }

    /// The same pair re-checked in a larger calculus.
    pub fn lift(&self, calculus: CalculusId) -> Result<EquivalencePair> {
        Ok(EquivalencePair {
            forward: self.forward.lift(calculus)?,
            backward: self.backward.lift(calculus)?,
            ..self.clone()
        })
    }

    /// Emits into `b` the step from a line of the left formula to the right.
    pub fn apply_forward(&self, b: &mut ProofBuilder, line: Line) -> Line {
        apply(b, &self.forward, self.mode, line)
    }

    /// Emits into `b` the step from a line of the right formula to the left.
    pub fn apply_backward(&self, b: &mut ProofBuilder, line: Line) -> Line {
        apply(b, &self.backward, self.mode, line)
    }

    /// Composition: `self` then `next`, which must start where `self` ends.
    /// The result has the mode of `self`.
    pub fn trans(&self, next: &EquivalencePair) -> Result<EquivalencePair> {
        if self.right != next.left {
            return Err(Error::FormulaMismatch { expected: self.right.clone(), found: next.left.clone() });
        }
        if self.calculus() != next.calculus() {
            return Err(Error::WrongCalculus { expected: self.calculus(), found: next.calculus() });
        }
        if self.is_reflexive() {
            return next.with_mode(self.mode);
        }
        if next.is_reflexive() {
            return Ok(self.clone());
        }
        let pair = EquivalencePair::build(
            self.calculus(),
            self.left.clone(),
            next.right.clone(),
            |s, h| {
                let mid = self.apply_forward(s, h);
                next.apply_forward(s, mid)
            },
            |s, h| {
                let mid = next.apply_backward(s, h);
                self.apply_backward(s, mid)
            },
        )?;
        pair.with_mode(self.mode)
    }

    /// Packs a thesis-form pair into one derivation of
    /// `(left -> right) & (right -> left)`; needs a calculus with `&`.
    pub fn to_biconditional(&self) -> Result<Derivation> {
        let c = self.calculus();
        if !c.has_scheme(Ax9) {
            return Err(Error::InsufficientCalculus { need: CalculusId::IC, have: c });
        }
        let t = self.thesis()?;
        let mut b = ProofBuilder::new(c);
        let f = b.cut(&t.forward, &[]);
        let g = b.cut(&t.backward, &[]);
        let line = super::lemmas::l2_20(&mut b, f, g);
        Ok(b.finish(line)?)
    }

    /// Unpacks a closed derivation of `(A -> B) & (B -> A)` into a
    /// thesis-form pair.
    pub fn from_biconditional(d: &Derivation) -> Result<EquivalencePair> {
        if !d.is_closed() {
            return Err(Error::OpenHypotheses);
        }
        crate::kernel::check(d)?;
        let shape = || Error::Precondition(format!("`{}` is not a biconditional", d.conclusion()));
        let (ab, ba) = d.conclusion().as_conj().ok_or_else(shape)?;
        let (a, x) = ab.as_impl().ok_or_else(shape)?;
        if ba != &Formula::imp(x.clone(), a.clone()) {
            return Err(shape());
        }
        let items = [ab.clone(), ba.clone()];
        let half = |j: usize| -> Result<Derivation> {
            let mut b = ProofBuilder::new(d.calculus());
            let l = b.cut(d, &[]);
            let p = b.project(l, &items, j);
            Ok(b.finish(p)?)
        };
        EquivalencePair::from_derivations(a.clone(), x.clone(), half(0)?, half(1)?, Mode::Thesis)
    }
}

fn one_way(
    calculus: CalculusId,
    from: &Formula,
    to: &Formula,
    body: impl FnOnce(&mut ProofBuilder, Line) -> Line,
) -> Result<Derivation> {
    let mut b = ProofBuilder::new(calculus);
    let h = b.hyp(from.clone());
    let line = body(&mut b, h);
    if b.formula(line) != to {
        return Err(Error::FormulaMismatch { expected: to.clone(), found: b.formula(line).clone() });
    }
    Ok(b.finish(line)?)
}

fn apply(b: &mut ProofBuilder, d: &Derivation, mode: Mode, line: Line) -> Line {
    match mode {
        Mode::Derivability => b.cut(d, &[line]),
        Mode::Thesis => {
            let t = b.cut(d, &[]);
            b.mp(t, line)
        }
    }
}

/// From pairs `X <-> X'` and `Y <-> Y'`, the pair `X o Y <-> X' o Y'` for the
/// connective `o`. The result is in derivability form.
pub fn congruence(conn: Connective, l: &EquivalencePair, r: &EquivalencePair) -> Result<EquivalencePair> {
    if l.calculus() != r.calculus() {
        return Err(Error::WrongCalculus { expected: l.calculus(), found: r.calculus() });
    }
    Rewrite::cong(conn, Rewrite::pair(l), Rewrite::pair(r)).into_pair(l.calculus())
}

/// Replaces the occurrence of `e.left()` at `path` in `c` by `e.right()`,
/// returning the pair between `c` and the result, in the mode of `e`.
pub fn substitute_equivalents(c: &Formula, path: &[Side], e: &EquivalencePair) -> Result<EquivalencePair> {
    let found = c.at_path(path).ok_or_else(|| Error::InvalidPath(c.clone()))?;
    if found != e.left() {
        return Err(Error::FormulaMismatch { expected: e.left().clone(), found: found.clone() });
    }
    if path.is_empty() {
        return Ok(e.clone());
    }
    Rewrite::at_path(c, path, Rewrite::pair(e)).into_pair(e.calculus())?.with_mode(e.mode())
}

pub(crate) type StepFn<'a> = Box<dyn Fn(&mut ProofBuilder, Line) -> Line + 'a>;

/// A rewrite of one formula into an equivalent one, kept as a recipe and
/// emitted straight into a builder.
///
/// Nesting congruences as checked pairs rebuilds and rechecks every level, so
/// a substitution at depth `d` costs `d` full derivations. A recipe is only
/// expanded once, by whoever finally needs the lines.
pub(crate) enum Rewrite<'a> {
    Refl(Formula),
    Pair(Cow<'a, EquivalencePair>),
    Step { from: Formula, to: Formula, forward: StepFn<'a>, backward: StepFn<'a> },
    Cong { conn: Connective, from: Formula, to: Formula, parts: Box<[Rewrite<'a>; 2]> },
    Chain(Vec<Rewrite<'a>>),
}

impl<'a> Rewrite<'a> {
    pub(crate) fn pair(e: &'a EquivalencePair) -> Rewrite<'a> {
        if e.is_reflexive() {
            Rewrite::Refl(e.left.clone())
        } else {
            Rewrite::Pair(Cow::Borrowed(e))
        }
    }

    pub(crate) fn cong(conn: Connective, l: Rewrite<'a>, r: Rewrite<'a>) -> Rewrite<'a> {
        let from = Formula::binary(conn, l.from().clone(), r.from().clone());
        if l.is_refl() && r.is_refl() {
            return Rewrite::Refl(from);
        }
        let to = Formula::binary(conn, l.to().clone(), r.to().clone());
        Rewrite::Cong { conn, from, to, parts: Box::new([l, r]) }
    }

    /// `steps` run end to end starting from `start`.
    pub(crate) fn chain(start: &Formula, steps: Vec<Rewrite<'a>>) -> Rewrite<'a> {
        let mut steps: Vec<_> = steps.into_iter().filter(|s| !s.is_refl()).collect();
        match steps.len() {
            0 => Rewrite::Refl(start.clone()),
            1 => steps.pop().unwrap(),
            _ => Rewrite::Chain(steps),
        }
    }

    /// `leaf` applied at `path` inside `c`. The path must lead to `leaf.from()`.
    pub(crate) fn at_path(c: &Formula, path: &[Side], leaf: Rewrite<'a>) -> Rewrite<'a> {
        let Some((side, rest)) = path.split_first() else {
            return leaf;
        };
        let (conn, l, r) = c.as_binary().expect("path leads into a binary formula");
        match side {
            Side::Left => Rewrite::cong(conn, Rewrite::at_path(l, rest, leaf), Rewrite::Refl(r.clone())),
            Side::Right => Rewrite::cong(conn, Rewrite::Refl(l.clone()), Rewrite::at_path(r, rest, leaf)),
        }
    }

    pub(crate) fn is_refl(&self) -> bool {
        matches!(self, Rewrite::Refl(_))
    }

    pub(crate) fn from(&self) -> &Formula {
        match self {
            Rewrite::Refl(f) => f,
            Rewrite::Pair(e) => &e.left,
            Rewrite::Step { from, .. } | Rewrite::Cong { from, .. } => from,
            Rewrite::Chain(steps) => steps[0].from(),
        }
    }

    pub(crate) fn to(&self) -> &Formula {
        match self {
            Rewrite::Refl(f) => f,
            Rewrite::Pair(e) => &e.right,
            Rewrite::Step { to, .. } | Rewrite::Cong { to, .. } => to,
            Rewrite::Chain(steps) => steps[steps.len() - 1].to(),
        }
    }

    /// Source and target in the given direction.
    fn ends(&self, forward: bool) -> (&Formula, &Formula) {
        if forward {
            (self.from(), self.to())
        } else {
            (self.to(), self.from())
        }
    }

    /// From a line of the source (or, backward, the target), the line of the
    /// other side.
    pub(crate) fn apply(&self, b: &mut ProofBuilder, h: Line, forward: bool) -> Line {
        match self {
            Rewrite::Refl(_) => h,
            Rewrite::Pair(e) if forward => e.apply_forward(b, h),
            Rewrite::Pair(e) => e.apply_backward(b, h),
            Rewrite::Step { forward: f, .. } if forward => f(b, h),
            Rewrite::Step { backward, .. } => backward(b, h),
            Rewrite::Cong { conn, parts, .. } => congruence_step(b, *conn, h, &parts[0], &parts[1], forward),
            Rewrite::Chain(steps) if forward => steps.iter().fold(h, |l, s| s.apply(b, l, true)),
            Rewrite::Chain(steps) => steps.iter().rev().fold(h, |l, s| s.apply(b, l, false)),
        }
    }

    /// The derivability-form pair, checked once per direction.
    pub(crate) fn into_pair(self, calculus: CalculusId) -> Result<EquivalencePair> {
        match self {
            Rewrite::Refl(f) => EquivalencePair::refl(calculus, f),
            Rewrite::Pair(e) if e.mode == Mode::Derivability && e.calculus() == calculus => Ok(e.into_owned()),
            rw => EquivalencePair::build(
                calculus,
                rw.from().clone(),
                rw.to().clone(),
                |s, h| rw.apply(s, h, true),
                |s, h| rw.apply(s, h, false),
            ),
        }
    }
}

/// From a line of `X o Y`, the line of `X' o Y'`, where `l` and `r` rewrite
/// `X` and `Y` (read backward when `forward` is false).
fn congruence_step(b: &mut ProofBuilder, conn: Connective, h: Line, l: &Rewrite, r: &Rewrite, forward: bool) -> Line {
    let (x, x2) = l.ends(forward);
    let (y, y2) = r.ends(forward);
    match conn {
        Connective::Impl => b.suppose(x2, &[h], |s, hx2, p| {
            let hx = l.apply(s, hx2, !forward);
            let hy = s.mp(p[0], hx);
            r.apply(s, hy, forward)
        }),
        Connective::Disj => {
            let target = Formula::disj(x2.clone(), y2.clone());
            let from_x = b.suppose(x, &[], |s, hx, _| {
                let l2 = l.apply(s, hx, forward);
                let ax4 = s.axiom(Ax4, &[x2.clone(), y2.clone()]);
                s.mp(ax4, l2)
            });
            let from_y = b.suppose(y, &[], |s, hy, _| {
                let r2 = r.apply(s, hy, forward);
                let ax5 = s.axiom(Ax5, &[y2.clone(), x2.clone()]);
                s.mp(ax5, r2)
            });
            let ax6 = b.axiom(Ax6, &[x.clone(), y.clone(), target]);
            b.mp_all(ax6, &[from_x, from_y, h])
        }
        Connective::Conj => {
            let items = [x.clone(), y.clone()];
            let hx = b.project(h, &items, 0);
            let hy = b.project(h, &items, 1);
            let hx2 = l.apply(b, hx, forward);
            let hy2 = r.apply(b, hy, forward);
            b.conj_build(&[x2.clone(), y2.clone()], &[hx2, hy2])
        }
    }
}
