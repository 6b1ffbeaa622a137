//! Derivation templates for the named lemma schemata.
//!
//! Every template is a function that emits steps into a [`ProofBuilder`].
//! Hypotheses of a schema are passed in as lines, so the same template serves
//! both the standalone [`lemma`] entry point and the larger constructions that
//! splice lemma instances into their own proofs. Metavariables are read back
//! from the formulas of those lines where possible. Schemata of fixed arity
//! are derived once over schematic atoms and then instantiated.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::builder::{Line, ProofBuilder};
use crate::error::{require_fragment, Error, Result};
use crate::formula::Formula;
use crate::kernel::{CalculusId, Derivation, SchemeId::*};

use super::equiv::{EquivalencePair, Rewrite, StepFn};

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::imp(a.clone(), b.clone())
}

fn disj(a: &Formula, b: &Formula) -> Formula {
    Formula::disj(a.clone(), b.clone())
}

fn conj(a: &Formula, b: &Formula) -> Formula {
    Formula::conj(a.clone(), b.clone())
}

fn split_impl(b: &ProofBuilder, line: Line) -> (Formula, Formula) {
    let (x, y) = b.formula(line).as_impl().expect("implication expected");
    (x.clone(), y.clone())
}

fn split_disj(b: &ProofBuilder, line: Line) -> (Formula, Formula) {
    let (x, y) = b.formula(line).as_disj().expect("disjunction expected");
    (x.clone(), y.clone())
}

fn split_conj(b: &ProofBuilder, line: Line) -> (Formula, Formula) {
    let (x, y) = b.formula(line).as_conj().expect("conjunction expected");
    (x.clone(), y.clone())
}

// `|- A -> (A -> B) -> B`
fn emit_2_7(b: &mut ProofBuilder, a: &Formula, x: &Formula) -> Line {
    let ab = imp(a, x);
    b.suppose(a, &[], |s, ha, _| s.suppose(&ab, &[ha], |t, hab, p| t.mp(hab, p[0])))
}

/// `|- A -> (B -> A) -> A`, an instance of Ax1.
pub(crate) fn l2_8(b: &mut ProofBuilder, a: &Formula, x: &Formula) -> Line {
    b.axiom(Ax1, &[a.clone(), imp(x, a)])
}

// `|- (A -> (A -> B)) -> A -> B`
fn emit_2_9(b: &mut ProofBuilder, a: &Formula, x: &Formula) -> Line {
    let aab = imp(a, &imp(a, x));
    b.suppose(&aab, &[], |s, h, _| s.suppose(a, &[h], |t, ha, p| t.mp_all(p[0], &[ha, ha])))
}

// `(A -> B) -> B, A -> C |- (C -> B) -> B`
fn emit_2_10(b: &mut ProofBuilder, abb: Line, ac: Line) -> Line {
    let (_, x) = split_impl(b, abb);
    let (_, c) = split_impl(b, ac);
    b.suppose(&imp(&c, &x), &[abb, ac], |s, hcb, p| {
        let ab = s.chain(p[1], hcb);
        s.mp(p[0], ab)
    })
}

// `|- A v (A -> B)`
fn emit_2_11(b: &mut ProofBuilder, a: &Formula, x: &Formula) -> Line {
    let ab = imp(a, x);
    let goal = disj(a, &ab);
    let inner = b.suppose(&imp(&goal, x), &[], |s, h, _| {
        let to_goal = s.axiom(Ax4, &[a.clone(), ab.clone()]);
        let a_to_b = s.chain(to_goal, h);
        let ax5 = s.axiom(Ax5, &[ab.clone(), a.clone()]);
        s.mp(ax5, a_to_b)
    });
    let peirce = b.axiom(Ax3, &[goal, x.clone()]);
    b.mp(peirce, inner)
}

// `A v B, A -> C, B -> D |- C v D`
fn emit_2_12(b: &mut ProofBuilder, avb: Line, ac: Line, bd: Line) -> Line {
    let (a, x) = split_disj(b, avb);
    let (_, c) = split_impl(b, ac);
    let (_, d) = split_impl(b, bd);
    let cd = disj(&c, &d);
    let ax4 = b.axiom(Ax4, &[c.clone(), d.clone()]);
    let left = b.chain(ac, ax4);
    let ax5 = b.axiom(Ax5, &[d, c]);
    let right = b.chain(bd, ax5);
    let ax6 = b.axiom(Ax6, &[a, x, cd]);
    b.mp_all(ax6, &[left, right, avb])
}

// `A -> B |- B v (A -> C)`
fn emit_2_13(b: &mut ProofBuilder, ab: Line, c: &Formula) -> Line {
    let (a, x) = split_impl(b, ab);
    let ac = imp(&a, c);
    let goal = disj(&x, &ac);
    let excluded = l2_11(b, &a, c);
    let ax4 = b.axiom(Ax4, &[x.clone(), ac.clone()]);
    let left = b.chain(ab, ax4);
    let right = b.axiom(Ax5, &[ac.clone(), x]);
    let ax6 = b.axiom(Ax6, &[a, ac, goal]);
    b.mp_all(ax6, &[left, right, excluded])
}

// `A |- B v (C -> A)`
fn emit_2_14(b: &mut ProofBuilder, a: Line, x: &Formula, c: &Formula) -> Line {
    let af = b.formula(a).clone();
    let ax1 = b.axiom(Ax1, &[af.clone(), c.clone()]);
    let ca = b.mp(ax1, a);
    let ax5 = b.axiom(Ax5, &[imp(c, &af), x.clone()]);
    b.mp(ax5, ca)
}

// `A v B, C -> A |- (B -> C) -> A`
fn emit_2_17(b: &mut ProofBuilder, avb: Line, ca: Line) -> Line {
    let (a, x) = split_disj(b, avb);
    let (c, _) = split_impl(b, ca);
    b.suppose(&imp(&x, &c), &[avb, ca], |s, hbc, p| {
        let refl = s.refl(&a);
        let ba = s.chain(hbc, p[1]);
        let ax6 = s.axiom(Ax6, &[a.clone(), x.clone(), a.clone()]);
        s.mp_all(ax6, &[refl, ba, p[0]])
    })
}

// `A v B, A -> B |- B`
fn emit_2_18(b: &mut ProofBuilder, avb: Line, ab: Line) -> Line {
    let (a, x) = split_disj(b, avb);
    let refl = b.refl(&x);
    let ax6 = b.axiom(Ax6, &[a, x.clone(), x]);
    b.mp_all(ax6, &[ab, refl, avb])
}

// `(A -> B) -> B |- A v B`
fn emit_2_19(b: &mut ProofBuilder, abb: Line) -> Line {
    let (ab, x) = split_impl(b, abb);
    let (a, _) = ab.as_impl().map(|(a, x)| (a.clone(), x.clone())).expect("implication expected");
    let avb = disj(&a, &x);
    let excluded = l2_11(b, &a, &x);
    let left = b.axiom(Ax4, &[a.clone(), x.clone()]);
    let ax5 = b.axiom(Ax5, &[x, a.clone()]);
    let right = b.chain(abb, ax5);
    let ax6 = b.axiom(Ax6, &[a, ab, avb]);
    b.mp_all(ax6, &[left, right, excluded])
}

/// `A -> B, B -> A |- (A -> B) & (B -> A)`
pub(crate) fn l2_20(b: &mut ProofBuilder, ab: Line, ba: Line) -> Line {
    let items = [b.formula(ab).clone(), b.formula(ba).clone()];
    b.conj_build(&items, &[ab, ba])
}

// `A -> (B & C)` to `(A -> B) & (A -> C)`.
fn emit_2_21_forward(b: &mut ProofBuilder, h: Line) -> Line {
    let (a, bc) = split_impl(b, h);
    let (x, c) = bc.as_conj().map(|(x, c)| (x.clone(), c.clone())).expect("conjunction expected");
    let ax7 = b.axiom(Ax7, &[x.clone(), c.clone()]);
    let ab = b.chain(h, ax7);
    let ax8 = b.axiom(Ax8, &[x.clone(), c.clone()]);
    let ac = b.chain(h, ax8);
    b.conj_build(&[imp(&a, &x), imp(&a, &c)], &[ab, ac])
}

// `(A -> B) & (A -> C)` to `A -> (B & C)`.
fn emit_2_21_backward(b: &mut ProofBuilder, h: Line) -> Line {
    let (ab, ac) = split_conj(b, h);
    let items = [ab.clone(), ac.clone()];
    let lab = b.project(h, &items, 0);
    let lac = b.project(h, &items, 1);
    let a = ab.as_impl().expect("implication expected").0.clone();
    b.suppose(&a, &[lab, lac], |s, ha, p| {
        let x = s.mp(p[0], ha);
        let c = s.mp(p[1], ha);
        let items = [s.formula(x).clone(), s.formula(c).clone()];
        s.conj_build(&items, &[x, c])
    })
}

// `(A & B) -> C` to `A -> B -> C`.
fn emit_2_22_forward(b: &mut ProofBuilder, h: Line) -> Line {
    let (ab, _) = split_impl(b, h);
    let (a, x) = ab.as_conj().map(|(a, x)| (a.clone(), x.clone())).expect("conjunction expected");
    b.suppose(&a, &[h], |s, ha, p| {
        s.suppose(&x, &[p[0], ha], |t, hb, q| {
            let both = t.conj_build(&[a.clone(), x.clone()], &[q[1], hb]);
            t.mp(q[0], both)
        })
    })
}

// `A -> B -> C` to `(A & B) -> C`.
fn emit_2_22_backward(b: &mut ProofBuilder, h: Line) -> Line {
    let (a, bc) = split_impl(b, h);
    let x = bc.as_impl().expect("implication expected").0.clone();
    b.suppose(&conj(&a, &x), &[h], |s, hab, p| {
        let items = [a.clone(), x.clone()];
        let la = s.project(hab, &items, 0);
        let lb = s.project(hab, &items, 1);
        s.mp_all(p[0], &[la, lb])
    })
}

/// `(A1 & ... & An) & B` to `A1 & ... & An & B`.
pub(crate) fn l2_23_forward(b: &mut ProofBuilder, h: Line, items: &[Formula], last: &Formula) -> Line {
    if items.len() == 1 {
        return h;
    }
    let outer = [Formula::conj_list(items), last.clone()];
    let group = b.project(h, &outer, 0);
    let lb = b.project(h, &outer, 1);
    let mut lines: Vec<Line> = (0..items.len()).map(|j| b.project(group, items, j)).collect();
    lines.push(lb);
    let mut all = items.to_vec();
    all.push(last.clone());
    b.conj_build(&all, &lines)
}

/// `A1 & ... & An & B` to `(A1 & ... & An) & B`.
pub(crate) fn l2_23_backward(b: &mut ProofBuilder, h: Line, items: &[Formula], last: &Formula) -> Line {
    if items.len() == 1 {
        return h;
    }
    let mut all = items.to_vec();
    all.push(last.clone());
    let lines: Vec<Line> = (0..all.len()).map(|j| b.project(h, &all, j)).collect();
    let group = b.conj_build(items, &lines[..items.len()]);
    b.conj_build(&[Formula::conj_list(items), last.clone()], &[group, lines[items.len()]])
}

// `C v (A & B)` to `(C v A) & (C v B)`.
fn emit_2_25_forward(b: &mut ProofBuilder, h: Line) -> Line {
    let (c, ab) = split_disj(b, h);
    let (a, x) = ab.as_conj().map(|(a, x)| (a.clone(), x.clone())).expect("conjunction expected");
    let items = [disj(&c, &a), disj(&c, &x)];
    let target = Formula::conj_list(&items);
    let from_c = b.suppose(&c, &[], |s, hc, _| {
        let l = s.axiom(Ax4, &[c.clone(), a.clone()]);
        let l = s.mp(l, hc);
        let r = s.axiom(Ax4, &[c.clone(), x.clone()]);
        let r = s.mp(r, hc);
        s.conj_build(&items, &[l, r])
    });
    let from_ab = b.suppose(&ab, &[], |s, hab, _| {
        let pair = [a.clone(), x.clone()];
        let la = s.project(hab, &pair, 0);
        let lb = s.project(hab, &pair, 1);
        let l = s.axiom(Ax5, &[a.clone(), c.clone()]);
        let l = s.mp(l, la);
        let r = s.axiom(Ax5, &[x.clone(), c.clone()]);
        let r = s.mp(r, lb);
        s.conj_build(&items, &[l, r])
    });
    let ax6 = b.axiom(Ax6, &[c.clone(), ab.clone(), target]);
    b.mp_all(ax6, &[from_c, from_ab, h])
}

// `(C v A) & (C v B)` to `C v (A & B)`.
fn emit_2_25_backward(b: &mut ProofBuilder, h: Line) -> Line {
    let (ca, cb) = split_conj(b, h);
    let (c, a) = ca.as_disj().map(|(c, a)| (c.clone(), a.clone())).expect("disjunction expected");
    let x = cb.as_disj().expect("disjunction expected").1.clone();
    let ab = conj(&a, &x);
    let goal = disj(&c, &ab);
    let items = [ca.clone(), cb.clone()];
    let lca = b.project(h, &items, 0);
    let lcb = b.project(h, &items, 1);
    let c_goal = b.axiom(Ax4, &[c.clone(), ab.clone()]);
    let a_goal = b.suppose(&a, &[lcb, c_goal], |s, ha, p| {
        let b_goal = s.suppose(&x, &[ha], |t, hb, q| {
            let both = t.conj_build(&[a.clone(), x.clone()], &[q[0], hb]);
            let ax5 = t.axiom(Ax5, &[ab.clone(), c.clone()]);
            t.mp(ax5, both)
        });
        let ax6 = s.axiom(Ax6, &[c.clone(), x.clone(), goal.clone()]);
        s.mp_all(ax6, &[p[1], b_goal, p[0]])
    });
    let ax6 = b.axiom(Ax6, &[c.clone(), a.clone(), goal.clone()]);
    b.mp_all(ax6, &[c_goal, a_goal, lca])
}

// `(A & B) v C` to `(A v C) & (B v C)`.
fn emit_2_26_forward(b: &mut ProofBuilder, h: Line) -> Line {
    let (ab, c) = split_disj(b, h);
    let (a, x) = ab.as_conj().map(|(a, x)| (a.clone(), x.clone())).expect("conjunction expected");
    let items = [disj(&a, &c), disj(&x, &c)];
    let target = Formula::conj_list(&items);
    let from_ab = b.suppose(&ab, &[], |s, hab, _| {
        let pair = [a.clone(), x.clone()];
        let la = s.project(hab, &pair, 0);
        let lb = s.project(hab, &pair, 1);
        let l = s.axiom(Ax4, &[a.clone(), c.clone()]);
        let l = s.mp(l, la);
        let r = s.axiom(Ax4, &[x.clone(), c.clone()]);
        let r = s.mp(r, lb);
        s.conj_build(&items, &[l, r])
    });
    let from_c = b.suppose(&c, &[], |s, hc, _| {
        let l = s.axiom(Ax5, &[c.clone(), a.clone()]);
        let l = s.mp(l, hc);
        let r = s.axiom(Ax5, &[c.clone(), x.clone()]);
        let r = s.mp(r, hc);
        s.conj_build(&items, &[l, r])
    });
    let ax6 = b.axiom(Ax6, &[ab.clone(), c.clone(), target]);
    b.mp_all(ax6, &[from_ab, from_c, h])
}

// `(A v C) & (B v C)` to `(A & B) v C`.
fn emit_2_26_backward(b: &mut ProofBuilder, h: Line) -> Line {
    let (ac, bc) = split_conj(b, h);
    let (a, c) = ac.as_disj().map(|(a, c)| (a.clone(), c.clone())).expect("disjunction expected");
    let x = bc.as_disj().expect("disjunction expected").0.clone();
    let ab = conj(&a, &x);
    let goal = disj(&ab, &c);
    let items = [ac.clone(), bc.clone()];
    let lac = b.project(h, &items, 0);
    let lbc = b.project(h, &items, 1);
    let c_goal = b.axiom(Ax5, &[c.clone(), ab.clone()]);
    let a_goal = b.suppose(&a, &[lbc, c_goal], |s, ha, p| {
        let b_goal = s.suppose(&x, &[ha], |t, hb, q| {
            let both = t.conj_build(&[a.clone(), x.clone()], &[q[0], hb]);
            let ax4 = t.axiom(Ax4, &[ab.clone(), c.clone()]);
            t.mp(ax4, both)
        });
        let ax6 = s.axiom(Ax6, &[x.clone(), c.clone(), goal.clone()]);
        s.mp_all(ax6, &[b_goal, p[1], p[0]])
    });
    let ax6 = b.axiom(Ax6, &[a.clone(), c.clone(), goal.clone()]);
    b.mp_all(ax6, &[a_goal, c_goal, lac])
}

// `B -> D, C -> D, (B -> C) -> C |- D`
fn emit_5_1(b: &mut ProofBuilder, bd: Line, cd: Line, bcc: Line) -> Line {
    let (_, d) = split_impl(b, bd);
    let (c, _) = split_impl(b, cd);
    // (D -> C) -> C
    let dcc = l2_10(b, bcc, bd);
    // (D -> C) -> D
    let dcd = b.chain(dcc, cd);
    let peirce = b.axiom(Ax3, &[d, c]);
    b.mp(peirce, dcd)
}

// Fixed-arity templates are emitted once over the schematic atoms p1, p2, ...
// and instantiated per use; each wrapper reads the metavariables off its
// argument lines.
fn cached(
    slot: &'static OnceLock<Derivation>,
    hyps: &[Formula],
    emit: impl FnOnce(&mut ProofBuilder, &[Line]) -> Line,
) -> &'static Derivation {
    slot.get_or_init(|| {
        let mut b = ProofBuilder::new(CalculusId::P);
        let lines: Vec<Line> = hyps.iter().map(|h| b.hyp(h.clone())).collect();
        let line = emit(&mut b, &lines);
        b.finish(line).expect("template checks")
    })
}

fn p(i: u32) -> Formula {
    Formula::atom(i)
}

fn parts(f: &Formula) -> (Formula, Formula) {
    let (_, x, y) = f.as_binary().expect("binary formula expected");
    (x.clone(), y.clone())
}

/// `|- A -> (A -> B) -> B`
pub(crate) fn l2_7(b: &mut ProofBuilder, a: &Formula, x: &Formula) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let t = cached(&T, &[], |s, _| emit_2_7(s, &p(1), &p(2)));
    b.instantiate(t, &[a.clone(), x.clone()], &[])
}

/// `|- (A -> (A -> B)) -> A -> B`
pub(crate) fn l2_9(b: &mut ProofBuilder, a: &Formula, x: &Formula) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let t = cached(&T, &[], |s, _| emit_2_9(s, &p(1), &p(2)));
    b.instantiate(t, &[a.clone(), x.clone()], &[])
}

/// `(A -> B) -> B, A -> C |- (C -> B) -> B`
pub(crate) fn l2_10(b: &mut ProofBuilder, abb: Line, ac: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (ab, x) = split_impl(b, abb);
    let (a, c) = split_impl(b, ac);
    debug_assert_eq!(ab, imp(&a, &x));
    let hyps = [imp(&imp(&p(1), &p(2)), &p(2)), imp(&p(1), &p(3))];
    let t = cached(&T, &hyps, |s, h| emit_2_10(s, h[0], h[1]));
    b.instantiate(t, &[a, x, c], &[abb, ac])
}

/// `|- A v (A -> B)`
pub(crate) fn l2_11(b: &mut ProofBuilder, a: &Formula, x: &Formula) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let t = cached(&T, &[], |s, _| emit_2_11(s, &p(1), &p(2)));
    b.instantiate(t, &[a.clone(), x.clone()], &[])
}

/// `A v B, A -> C, B -> D |- C v D`
pub(crate) fn l2_12(b: &mut ProofBuilder, avb: Line, ac: Line, bd: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (a, x) = split_disj(b, avb);
    let (_, c) = split_impl(b, ac);
    let (_, d) = split_impl(b, bd);
    let hyps = [disj(&p(1), &p(2)), imp(&p(1), &p(3)), imp(&p(2), &p(4))];
    let t = cached(&T, &hyps, |s, h| emit_2_12(s, h[0], h[1], h[2]));
    b.instantiate(t, &[a, x, c, d], &[avb, ac, bd])
}

/// `A -> B |- B v (A -> C)`
pub(crate) fn l2_13(b: &mut ProofBuilder, ab: Line, c: &Formula) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (a, x) = split_impl(b, ab);
    let t = cached(&T, &[imp(&p(1), &p(2))], |s, h| emit_2_13(s, h[0], &p(3)));
    b.instantiate(t, &[a, x, c.clone()], &[ab])
}

/// `A |- B v (C -> A)`
pub(crate) fn l2_14(b: &mut ProofBuilder, a: Line, x: &Formula, c: &Formula) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let af = b.formula(a).clone();
    let t = cached(&T, &[p(1)], |s, h| emit_2_14(s, h[0], &p(2), &p(3)));
    b.instantiate(t, &[af, x.clone(), c.clone()], &[a])
}

/// `A v B, C -> A |- (B -> C) -> A`
pub(crate) fn l2_17(b: &mut ProofBuilder, avb: Line, ca: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (a, x) = split_disj(b, avb);
    let (c, _) = split_impl(b, ca);
    let hyps = [disj(&p(1), &p(2)), imp(&p(3), &p(1))];
    let t = cached(&T, &hyps, |s, h| emit_2_17(s, h[0], h[1]));
    b.instantiate(t, &[a, x, c], &[avb, ca])
}

/// `A v B, A -> B |- B`
pub(crate) fn l2_18(b: &mut ProofBuilder, avb: Line, ab: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (a, x) = split_disj(b, avb);
    let hyps = [disj(&p(1), &p(2)), imp(&p(1), &p(2))];
    let t = cached(&T, &hyps, |s, h| emit_2_18(s, h[0], h[1]));
    b.instantiate(t, &[a, x], &[avb, ab])
}

/// `(A -> B) -> B |- A v B`
pub(crate) fn l2_19(b: &mut ProofBuilder, abb: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (ab, _) = split_impl(b, abb);
    let (a, x) = parts(&ab);
    let t = cached(&T, &[imp(&imp(&p(1), &p(2)), &p(2))], |s, h| emit_2_19(s, h[0]));
    b.instantiate(t, &[a, x], &[abb])
}

/// `A -> (B & C)` to `(A -> B) & (A -> C)`.
pub(crate) fn l2_21_forward(b: &mut ProofBuilder, h: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (a, bc) = split_impl(b, h);
    let (x, c) = parts(&bc);
    let t = cached(&T, &[imp(&p(1), &conj(&p(2), &p(3)))], |s, l| emit_2_21_forward(s, l[0]));
    b.instantiate(t, &[a, x, c], &[h])
}

/// `(A -> B) & (A -> C)` to `A -> (B & C)`.
pub(crate) fn l2_21_backward(b: &mut ProofBuilder, h: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (ab, ac) = split_conj(b, h);
    let (a, x) = parts(&ab);
    let (_, c) = parts(&ac);
    let t = cached(&T, &[conj(&imp(&p(1), &p(2)), &imp(&p(1), &p(3)))], |s, l| emit_2_21_backward(s, l[0]));
    b.instantiate(t, &[a, x, c], &[h])
}

/// `(A & B) -> C` to `A -> B -> C`.
pub(crate) fn l2_22_forward(b: &mut ProofBuilder, h: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (ab, c) = split_impl(b, h);
    let (a, x) = parts(&ab);
    let t = cached(&T, &[imp(&conj(&p(1), &p(2)), &p(3))], |s, l| emit_2_22_forward(s, l[0]));
    b.instantiate(t, &[a, x, c], &[h])
}

/// `A -> B -> C` to `(A & B) -> C`.
pub(crate) fn l2_22_backward(b: &mut ProofBuilder, h: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (a, bc) = split_impl(b, h);
    let (x, c) = parts(&bc);
    let t = cached(&T, &[imp(&p(1), &imp(&p(2), &p(3)))], |s, l| emit_2_22_backward(s, l[0]));
    b.instantiate(t, &[a, x, c], &[h])
}

/// `C v (A & B)` to `(C v A) & (C v B)`.
pub(crate) fn l2_25_forward(b: &mut ProofBuilder, h: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (c, ab) = split_disj(b, h);
    let (a, x) = parts(&ab);
    let t = cached(&T, &[disj(&p(1), &conj(&p(2), &p(3)))], |s, l| emit_2_25_forward(s, l[0]));
    b.instantiate(t, &[c, a, x], &[h])
}

/// `(C v A) & (C v B)` to `C v (A & B)`.
pub(crate) fn l2_25_backward(b: &mut ProofBuilder, h: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (ca, cb) = split_conj(b, h);
    let (c, a) = parts(&ca);
    let (_, x) = parts(&cb);
    let t = cached(&T, &[conj(&disj(&p(1), &p(2)), &disj(&p(1), &p(3)))], |s, l| emit_2_25_backward(s, l[0]));
    b.instantiate(t, &[c, a, x], &[h])
}

/// `(A & B) v C` to `(A v C) & (B v C)`.
pub(crate) fn l2_26_forward(b: &mut ProofBuilder, h: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (ab, c) = split_disj(b, h);
    let (a, x) = parts(&ab);
    let t = cached(&T, &[disj(&conj(&p(1), &p(2)), &p(3))], |s, l| emit_2_26_forward(s, l[0]));
    b.instantiate(t, &[a, x, c], &[h])
}

/// `(A v C) & (B v C)` to `(A & B) v C`.
pub(crate) fn l2_26_backward(b: &mut ProofBuilder, h: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (ac, bc) = split_conj(b, h);
    let (a, c) = parts(&ac);
    let (x, _) = parts(&bc);
    let t = cached(&T, &[conj(&disj(&p(1), &p(3)), &disj(&p(2), &p(3)))], |s, l| emit_2_26_backward(s, l[0]));
    b.instantiate(t, &[a, x, c], &[h])
}

/// `B -> D, C -> D, (B -> C) -> C |- D`
pub(crate) fn l5_1(b: &mut ProofBuilder, bd: Line, cd: Line, bcc: Line) -> Line {
    static T: OnceLock<Derivation> = OnceLock::new();
    let (x, d) = split_impl(b, bd);
    let (c, _) = split_impl(b, cd);
    let hyps = [imp(&p(1), &p(3)), imp(&p(2), &p(3)), imp(&imp(&p(1), &p(2)), &p(2))];
    let t = cached(&T, &hyps, |s, l| emit_5_1(s, l[0], l[1], l[2]));
    b.instantiate(t, &[x, c, d], &[bd, cd, bcc])
}

/// The named lemma schemata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    L2_5,
    L2_6,
    L2_7,
    L2_8,
    L2_9,
    L2_10,
    L2_11,
    L2_12,
    L2_13,
    L2_14,
    L2_15,
    L2_16,
    L2_17,
    L2_18,
    L2_19,
    L2_20,
    L2_21,
    L2_22,
    L2_23,
    L2_24,
    L2_25,
    L2_26,
    L5_1,
}

/// How many formula arguments a lemma takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Exactly(usize),
    AtLeast(usize),
}

impl Arity {
    pub fn admits(self, n: usize) -> bool {
        match self {
            Arity::Exactly(k) => n == k,
            Arity::AtLeast(k) => n >= k,
        }
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arity::Exactly(k) => write!(f, "{k}"),
            Arity::AtLeast(k) => write!(f, "at least {k}"),
        }
    }
}

impl LemmaId {
    pub const ALL: [LemmaId; 23] = [
        LemmaId::L2_5,
        LemmaId::L2_6,
        LemmaId::L2_7,
        LemmaId::L2_8,
        LemmaId::L2_9,
        LemmaId::L2_10,
        LemmaId::L2_11,
        LemmaId::L2_12,
        LemmaId::L2_13,
        LemmaId::L2_14,
        LemmaId::L2_15,
        LemmaId::L2_16,
        LemmaId::L2_17,
        LemmaId::L2_18,
        LemmaId::L2_19,
        LemmaId::L2_20,
        LemmaId::L2_21,
        LemmaId::L2_22,
        LemmaId::L2_23,
        LemmaId::L2_24,
        LemmaId::L2_25,
        LemmaId::L2_26,
        LemmaId::L5_1,
    ];

    /// Arguments bind the schema's metavariables in order of first occurrence
    /// in its statement. The list lemmas take their items followed by the
    /// final formula; 2.16 takes the source and target disjunctions.
    pub fn arity(self) -> Arity {
        use LemmaId::*;
        match self {
            L2_5 => Arity::Exactly(1),
            L2_7 | L2_8 | L2_9 | L2_11 | L2_16 | L2_18 | L2_19 | L2_20 => Arity::Exactly(2),
            L2_15 | L2_23 => Arity::AtLeast(2),
            L2_24 => Arity::AtLeast(1),
            L2_12 => Arity::Exactly(4),
            _ => Arity::Exactly(3),
        }
    }

    /// The least calculus whose schemes suffice.
    pub fn calculus(self) -> CalculusId {
        use LemmaId::*;
        match self {
            L2_5 | L2_6 | L2_7 | L2_8 | L2_9 | L2_10 | L5_1 => CalculusId::I,
            L2_11 | L2_12 | L2_13 | L2_14 | L2_15 | L2_16 | L2_17 | L2_18 | L2_19 => CalculusId::ID,
            L2_20 | L2_21 | L2_22 | L2_23 | L2_24 => CalculusId::IC,
            L2_25 | L2_26 => CalculusId::P,
        }
    }

    /// Whether the lemma states a syntactical equivalence.
    pub fn is_equivalence(self) -> bool {
        use LemmaId::*;
        matches!(self, L2_15 | L2_21 | L2_22 | L2_23 | L2_25 | L2_26)
    }

    pub fn name(self) -> &'static str {
        use LemmaId::*;
        match self {
            L2_5 => "2.5",
            L2_6 => "2.6",
            L2_7 => "2.7",
            L2_8 => "2.8",
            L2_9 => "2.9",
            L2_10 => "2.10",
            L2_11 => "2.11",
            L2_12 => "2.12",
            L2_13 => "2.13",
            L2_14 => "2.14",
            L2_15 => "2.15",
            L2_16 => "2.16",
            L2_17 => "2.17",
            L2_18 => "2.18",
            L2_19 => "2.19",
            L2_20 => "2.20",
            L2_21 => "2.21",
            L2_22 => "2.22",
            L2_23 => "2.23",
            L2_24 => "2.24",
            L2_25 => "2.25",
            L2_26 => "2.26",
            L5_1 => "5.1",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<LemmaId, String> {
        let s = s.trim_start_matches('L').replace('_', ".");
        LemmaId::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown lemma `{s}`"))
    }
}

/// A lemma instance: a derivation, or for equivalence-shaped lemmas a pair.
#[derive(Debug, Clone)]
pub enum LemmaOutput {
    Derivation(Derivation),
    Equivalence(EquivalencePair),
}

impl LemmaOutput {
    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            LemmaOutput::Derivation(d) => Some(d),
            LemmaOutput::Equivalence(_) => None,
        }
    }

    pub fn equivalence(&self) -> Option<&EquivalencePair> {
        match self {
            LemmaOutput::Derivation(_) => None,
            LemmaOutput::Equivalence(e) => Some(e),
        }
    }

    /// All derivations contained in the output.
    pub fn derivations(&self) -> Vec<&Derivation> {
        match self {
            LemmaOutput::Derivation(d) => vec![d],
            LemmaOutput::Equivalence(e) => vec![e.forward(), e.backward()],
        }
    }
}

/// Instantiates lemma `id` at `args` in calculus `target`.
///
/// Derivations have exactly the schema's hypotheses. Equivalences stated with
/// a biconditional come back as thesis-form pairs; 2.15 is stated as mutual
/// derivability and comes back in that form.
pub fn lemma(id: LemmaId, args: &[Formula], target: CalculusId) -> Result<LemmaOutput> {
    use LemmaId::*;
    if !id.arity().admits(args.len()) {
        return Err(Error::Arity { lemma: id.to_string(), expected: id.arity().to_string(), got: args.len() });
    }
    if !id.calculus().is_sub_calculus_of(target) {
        return Err(Error::InsufficientCalculus { need: id.calculus(), have: target });
    }
    for a in args {
        require_fragment(target.fragment(), a)?;
    }
    let mut b = ProofBuilder::new(target);
    let a = |i: usize| args[i].clone();
    let line = match id {
        L2_5 => b.refl(&a(0)),
        L2_6 => {
            let ab = b.hyp(imp(&a(0), &a(1)));
            let bc = b.hyp(imp(&a(1), &a(2)));
            b.chain(ab, bc)
        }
        L2_7 => l2_7(&mut b, &a(0), &a(1)),
        L2_8 => l2_8(&mut b, &a(0), &a(1)),
        L2_9 => l2_9(&mut b, &a(0), &a(1)),
        L2_10 => {
            let abb = b.hyp(imp(&imp(&a(0), &a(1)), &a(1)));
            let ac = b.hyp(imp(&a(0), &a(2)));
            l2_10(&mut b, abb, ac)
        }
        L2_11 => l2_11(&mut b, &a(0), &a(1)),
        L2_12 => {
            let avb = b.hyp(disj(&a(0), &a(1)));
            let ac = b.hyp(imp(&a(0), &a(2)));
            let bd = b.hyp(imp(&a(1), &a(3)));
            l2_12(&mut b, avb, ac, bd)
        }
        L2_13 => {
            let ab = b.hyp(imp(&a(0), &a(1)));
            l2_13(&mut b, ab, &a(2))
        }
        L2_14 => {
            let h = b.hyp(a(0));
            l2_14(&mut b, h, &a(1), &a(2))
        }
        L2_16 => {
            let source = args[0].disjuncts();
            let target_items = args[1].disjuncts();
            let h = b.hyp(args[0].clone());
            b.subsume_apply(h, &source, &target_items).ok_or_else(|| {
                Error::Precondition(format!("some disjunct of `{}` does not occur in `{}`", args[0], args[1]))
            })?
        }
        L2_17 => {
            let avb = b.hyp(disj(&a(0), &a(1)));
            let ca = b.hyp(imp(&a(2), &a(0)));
            l2_17(&mut b, avb, ca)
        }
        L2_18 => {
            let avb = b.hyp(disj(&a(0), &a(1)));
            let ab = b.hyp(imp(&a(0), &a(1)));
            l2_18(&mut b, avb, ab)
        }
        L2_19 => {
            let abb = b.hyp(imp(&imp(&a(0), &a(1)), &a(1)));
            l2_19(&mut b, abb)
        }
        L2_20 => {
            let ab = b.hyp(imp(&a(0), &a(1)));
            let ba = b.hyp(imp(&a(1), &a(0)));
            l2_20(&mut b, ab, ba)
        }
        L2_24 => {
            let lines: Vec<Line> = args.iter().map(|f| b.hyp(f.clone())).collect();
            b.conj_build(args, &lines)
        }
        L5_1 => {
            // arguments in order of first occurrence: B, D, C
            let (x, d, c) = (a(0), a(1), a(2));
            let bd = b.hyp(imp(&x, &d));
            let cd = b.hyp(imp(&c, &d));
            let bcc = b.hyp(imp(&imp(&x, &c), &c));
            l5_1(&mut b, bd, cd, bcc)
        }
        L2_15 => {
            let (items, last) = args.split_at(args.len() - 1);
            let (items, last) = (items.to_vec(), last[0].clone());
            let left = disj(&Formula::disj_list(&items), &last);
            let mut all = items.clone();
            all.push(last.clone());
            let right = Formula::disj_list(&all);
            let pair = EquivalencePair::build(
                target,
                left,
                right,
                |s, h| s.reassoc_right_apply(h, &items, &last),
                |s, h| s.reassoc_left_apply(h, &items, &last),
            )?;
            return Ok(LemmaOutput::Equivalence(pair));
        }
        L2_21 | L2_22 | L2_23 | L2_25 | L2_26 => {
            let pair = equivalence_lemma(id, args, target)?;
            return Ok(LemmaOutput::Equivalence(pair.thesis()?));
        }
    };
    Ok(LemmaOutput::Derivation(b.finish(line)?))
}

/// The derivability-form pair behind an equivalence lemma stated with a
/// biconditional.
pub(crate) fn equivalence_lemma(id: LemmaId, args: &[Formula], target: CalculusId) -> Result<EquivalencePair> {
    equivalence_rewrite(id, args).into_pair(target)
}

/// The same lemma as an unexpanded rewrite.
pub(crate) fn equivalence_rewrite(id: LemmaId, args: &[Formula]) -> Rewrite<'static> {
    use LemmaId::*;
    let a = |i: usize| args[i].clone();
    let step = |from, to, forward: StepFn<'static>, backward: StepFn<'static>| Rewrite::Step { from, to, forward, backward };
    match id {
        L2_21 => step(
            imp(&a(0), &conj(&a(1), &a(2))),
            conj(&imp(&a(0), &a(1)), &imp(&a(0), &a(2))),
            Box::new(l2_21_forward),
            Box::new(l2_21_backward),
        ),
        L2_22 => step(
            imp(&conj(&a(0), &a(1)), &a(2)),
            imp(&a(0), &imp(&a(1), &a(2))),
            Box::new(l2_22_forward),
            Box::new(l2_22_backward),
        ),
        L2_23 => {
            let (items, last) = args.split_at(args.len() - 1);
            let (items, last) = (items.to_vec(), last[0].clone());
            let mut all = items.clone();
            all.push(last.clone());
            let (i2, l2) = (items.clone(), last.clone());
            step(
                conj(&Formula::conj_list(&items), &last),
                Formula::conj_list(&all),
                Box::new(move |s, h| l2_23_forward(s, h, &items, &last)),
                Box::new(move |s, h| l2_23_backward(s, h, &i2, &l2)),
            )
        }
        // arguments in order of first occurrence: C, A, B
        L2_25 => step(
            disj(&a(0), &conj(&a(1), &a(2))),
            conj(&disj(&a(0), &a(1)), &disj(&a(0), &a(2))),
            Box::new(l2_25_forward),
            Box::new(l2_25_backward),
        ),
        L2_26 => step(
            disj(&conj(&a(0), &a(1)), &a(2)),
            conj(&disj(&a(0), &a(2)), &disj(&a(1), &a(2))),
            Box::new(l2_26_forward),
            Box::new(l2_26_backward),
        ),
        _ => unreachable!("{id} is not a biconditional lemma"),
    }
}
