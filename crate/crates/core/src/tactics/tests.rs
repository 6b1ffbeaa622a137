use std::collections::BTreeSet;

use super::*;
use crate::formula::{Formula, Side};
use crate::kernel::Step;
use crate::semantics::{entails, equivalent};

fn f(s: &str) -> Formula {
    Formula::parse(s).unwrap()
}

fn fs(items: &[&str]) -> Vec<Formula> {
    items.iter().map(|s| f(s)).collect()
}

fn hyps(items: &[&str]) -> BTreeSet<Formula> {
    fs(items).into_iter().collect()
}

fn sound(d: &Derivation) {
    check(d).unwrap();
    let hs: Vec<_> = d.hypotheses().iter().cloned().collect();
    assert!(entails(&hs, d.conclusion()).is_valid(), "unsound: {}", d.conclusion());
}

#[test]
fn deduction_on_trivial_derivation_is_identity_proof() {
    let d = Derivation::assume(CalculusId::I, f("p1")).unwrap();
    let e = deduction(&d, &f("p1")).unwrap();
    assert!(e.is_closed());
    assert_eq!(e.conclusion(), &f("p1 -> p1"));
    assert_eq!(e.len(), 5);
}

fn one_mp() -> Derivation {
    let mut b = ProofBuilder::new(CalculusId::I);
    let a = b.hyp(f("p1"));
    let ab = b.hyp(f("p1 -> p2"));
    let l = b.mp(ab, a);
    b.finish(l).unwrap()
}

#[test]
fn deduction_examples() {
    let d = one_mp();
    let e = deduction(&d, &f("p1")).unwrap();
    assert_eq!(e.hypotheses(), &hyps(&["p1 -> p2"]));
    assert_eq!(e.conclusion(), &f("p1 -> p2"));
    sound(&e);

    let e2 = deduction(&e, &f("p1 -> p2")).unwrap();
    assert!(e2.is_closed());
    assert_eq!(e2.conclusion(), &f("(p1 -> p2) -> p1 -> p2"));

    let other = deduction(&d, &f("p1 -> p2")).unwrap();
    let other = deduction(&other, &f("p1")).unwrap();
    assert_eq!(other.conclusion(), &f("p1 -> (p1 -> p2) -> p2"));
    let l27 = lemma(LemmaId::L2_7, &fs(&["p1", "p2"]), CalculusId::I).unwrap();
    assert_eq!(other.conclusion(), l27.derivation().unwrap().conclusion());
    assert!(e.len() <= 3 * d.len() + 2);
}

#[test]
fn deduction_keeps_unused_hypotheses() {
    let d = one_mp().weaken([f("p3")]).unwrap();
    let e = deduction(&d, &f("p1")).unwrap();
    assert_eq!(e.hypotheses(), &hyps(&["p1 -> p2", "p3"]));
}

#[test]
fn deduction_rejects_foreign_formula() {
    let d = one_mp();
    assert_eq!(deduction(&d, &f("p3")), Err(Error::NotAHypothesis(f("p3"))));
}

fn expect(id: LemmaId, args: &[&str], calc: CalculusId, hs: &[&str], concl: &str) {
    let out = lemma(id, &fs(args), calc).unwrap();
    let d = out.derivation().unwrap_or_else(|| panic!("{id} should be a derivation"));
    sound(d);
    assert_eq!(d.hypotheses(), &hyps(hs), "{id}");
    assert_eq!(d.conclusion(), &f(concl), "{id}");
}

fn expect_pair(id: LemmaId, args: &[&str], calc: CalculusId, left: &str, right: &str) {
    let out = lemma(id, &fs(args), calc).unwrap();
    let e = out.equivalence().unwrap_or_else(|| panic!("{id} should be an equivalence"));
    assert_eq!(e.left(), &f(left), "{id}");
    assert_eq!(e.right(), &f(right), "{id}");
    for d in out.derivations() {
        sound(d);
    }
    assert!(equivalent(e.left(), e.right()));
}

#[test]
fn identity_proof_shape() {
    let l25 = lemma(LemmaId::L2_5, &fs(&["p1"]), CalculusId::I).unwrap();
    let d = l25.derivation().unwrap();
    assert_eq!(d.len(), 5);
    let schemes: Vec<_> = d
        .steps()
        .iter()
        .map(|s| match s {
            Step::Axiom { scheme, .. } => Some(*scheme),
            _ => None,
        })
        .collect();
    assert_eq!(schemes, [Some(SchemeId::Ax2), Some(SchemeId::Ax1), None, Some(SchemeId::Ax1), None]);
}

#[test]
fn lemma_goldens() {
    use CalculusId::*;
    use LemmaId::*;
    expect(L2_5, &["p1"], I, &[], "p1 -> p1");
    expect(L2_6, &["p1", "p2", "p3"], I, &["p1 -> p2", "p2 -> p3"], "p1 -> p3");
    expect(L2_7, &["p1", "p2"], I, &[], "p1 -> (p1 -> p2) -> p2");
    expect(L2_8, &["p1", "p2"], I, &[], "p1 -> (p2 -> p1) -> p1");
    expect(L2_9, &["p1", "p2"], I, &[], "(p1 -> p1 -> p2) -> p1 -> p2");
    expect(L2_10, &["p1", "p2", "p3"], I, &["(p1 -> p2) -> p2", "p1 -> p3"], "(p3 -> p2) -> p2");
    expect(L2_11, &["p1", "p2"], ID, &[], "p1 v (p1 -> p2)");
    expect(L2_12, &["p1", "p2", "p3", "p4"], ID, &["p1 v p2", "p1 -> p3", "p2 -> p4"], "p3 v p4");
    expect(L2_13, &["p1", "p2", "p3"], ID, &["p1 -> p2"], "p2 v (p1 -> p3)");
    expect(L2_14, &["p1", "p2", "p3"], ID, &["p1"], "p2 v (p3 -> p1)");
    expect_pair(L2_15, &["p1", "p2", "p3"], ID, "(p1 v p2) v p3", "p1 v p2 v p3");
    expect(L2_16, &["p2 v p1 v p2", "p1 v p3 v p2"], ID, &["p2 v p1 v p2"], "p1 v p3 v p2");
    expect(L2_17, &["p1", "p2", "p3"], ID, &["p1 v p2", "p3 -> p1"], "(p2 -> p3) -> p1");
    expect(L2_18, &["p1", "p2"], ID, &["p1 v p2", "p1 -> p2"], "p2");
    expect(L2_19, &["p1", "p2"], ID, &["(p1 -> p2) -> p2"], "p1 v p2");
    expect(L2_20, &["p1", "p2"], IC, &["p1 -> p2", "p2 -> p1"], "(p1 -> p2) & (p2 -> p1)");
    expect_pair(L2_21, &["p1", "p2", "p3"], IC, "p1 -> p2 & p3", "(p1 -> p2) & (p1 -> p3)");
    expect_pair(L2_22, &["p1", "p2", "p3"], IC, "p1 & p2 -> p3", "p1 -> p2 -> p3");
    expect_pair(L2_23, &["p1", "p2", "p3", "p4"], IC, "(p1 & p2 & p3) & p4", "p1 & p2 & p3 & p4");
    expect(L2_24, &["p1", "p2", "p3"], IC, &["p1", "p2", "p3"], "p1 & p2 & p3");
    expect_pair(L2_25, &["p3", "p1", "p2"], P, "p3 v p1 & p2", "(p3 v p1) & (p3 v p2)");
    expect_pair(L2_26, &["p1", "p2", "p3"], P, "p1 & p2 v p3", "(p1 v p3) & (p2 v p3)");
    expect(L5_1, &["p1", "p2", "p3"], I, &["p1 -> p2", "p3 -> p2", "(p1 -> p3) -> p3"], "p2");
}

#[test]
fn lemmas_with_compound_arguments() {
    use CalculusId::*;
    use LemmaId::*;
    expect(L2_11, &["p1 -> p2", "p2 v p3"], ID, &[], "(p1 -> p2) v ((p1 -> p2) -> p2 v p3)");
    expect(L2_18, &["p1 v p2", "p1"], ID, &["(p1 v p2) v p1", "p1 v p2 -> p1"], "p1");
    expect_pair(L2_15, &["p1", "p2"], ID, "p1 v p2", "p1 v p2");
    expect_pair(L2_23, &["p1 & p2", "p3"], IC, "(p1 & p2) & p3", "(p1 & p2) & p3");
    expect(L2_24, &["p1 -> p2"], IC, &["p1 -> p2"], "p1 -> p2");
    expect(L5_1, &["p1 -> p2", "p1", "p2 v p3"], P, &[
        "(p1 -> p2) -> p1",
        "p2 v p3 -> p1",
        "((p1 -> p2) -> p2 v p3) -> p2 v p3",
    ], "p1");
}

#[test]
fn lemma_preconditions() {
    use CalculusId::*;
    use LemmaId::*;
    assert!(matches!(lemma(L2_11, &fs(&["p1", "p2"]), I), Err(Error::InsufficientCalculus { .. })));
    assert!(matches!(lemma(L2_25, &fs(&["p1", "p2", "p3"]), IC), Err(Error::InsufficientCalculus { .. })));
    assert!(matches!(lemma(L2_7, &fs(&["p1"]), I), Err(Error::Arity { .. })));
    assert!(matches!(lemma(L2_16, &fs(&["p1 v p4", "p1 v p2"]), ID), Err(Error::Precondition(_))));
    assert!(matches!(lemma(L2_5, &fs(&["p1 v p2"]), I), Err(Error::Fragment { .. })));
    // a lemma holds in every larger calculus
    expect(L2_7, &["p1 & p2", "p3"], P, &[], "p1 & p2 -> (p1 & p2 -> p3) -> p3");
}

#[test]
fn lemma_ids_parse_back() {
    for id in LemmaId::ALL {
        assert_eq!(id.name().parse::<LemmaId>(), Ok(id));
    }
    assert_eq!("L5_1".parse::<LemmaId>(), Ok(LemmaId::L5_1));
}

#[test]
fn equivalence_modes_convert() {
    let e = lemma(LemmaId::L2_15, &fs(&["p1", "p2", "p3"]), CalculusId::ID).unwrap();
    let e = e.equivalence().unwrap().clone();
    assert_eq!(e.mode(), Mode::Derivability);
    assert_eq!(e.forward().hypotheses(), &hyps(&["(p1 v p2) v p3"]));
    let t = e.thesis().unwrap();
    assert!(t.forward().is_closed() && t.backward().is_closed());
    assert_eq!(t.forward().conclusion(), &f("(p1 v p2) v p3 -> p1 v p2 v p3"));
    let back = t.derivability().unwrap();
    assert_eq!(back.forward().conclusion(), &f("p1 v p2 v p3"));
    let iff = lemma(LemmaId::L2_21, &fs(&["p1", "p2", "p3"]), CalculusId::IC).unwrap();
    let bic = iff.equivalence().unwrap().to_biconditional().unwrap();
    sound(&bic);
    let round = EquivalencePair::from_biconditional(&bic).unwrap();
    assert_eq!(round.left(), &f("p1 -> p2 & p3"));
    assert_eq!(round.right(), &f("(p1 -> p2) & (p1 -> p3)"));
}

#[test]
fn trans_composes() {
    let a = lemma(LemmaId::L2_22, &fs(&["p1", "p2", "p3"]), CalculusId::IC).unwrap();
    let a = a.equivalence().unwrap();
    let back = a.clone().symm();
    let round = a.trans(&back).unwrap();
    assert_eq!(round.left(), round.right());
    sound(round.forward());
    assert!(a.trans(a).is_err());
}

#[test]
fn substitution_at_root_returns_pair() {
    let e = lemma(LemmaId::L2_15, &fs(&["p1", "p2", "p3"]), CalculusId::ID).unwrap();
    let e = e.equivalence().unwrap();
    let s = substitute_equivalents(e.left(), &[], e).unwrap();
    assert_eq!(&s, e);
}

#[test]
fn substitution_examples() {
    let e = lemma(LemmaId::L2_15, &fs(&["p1", "p2", "p4"]), CalculusId::ID).unwrap();
    let e = e.equivalence().unwrap();
    let c = f("p3 -> (p1 v p2) v p4");
    let s = substitute_equivalents(&c, &[Side::Right], e).unwrap();
    assert_eq!(s.right(), &f("p3 -> p1 v p2 v p4"));
    sound(s.forward());
    sound(s.backward());

    let e = lemma(LemmaId::L2_15, &fs(&["p1", "p2", "p3"]), CalculusId::ID).unwrap();
    let e = e.equivalence().unwrap();
    let c = f("((p1 v p2) v p3) v p4");
    let s = substitute_equivalents(&c, &[Side::Left], e).unwrap();
    assert_eq!(s.right(), &f("(p1 v p2 v p3) v p4"));
    sound(s.forward());
    sound(s.backward());

    let e = lemma(LemmaId::L2_25, &fs(&["p3", "p1", "p2"]), CalculusId::P).unwrap();
    let e = e.equivalence().unwrap();
    let c = f("p1 -> p3 v p1 & p2");
    let s = substitute_equivalents(&c, &[Side::Right], e).unwrap();
    assert_eq!(s.left(), &c);
    assert_eq!(s.right(), &f("p1 -> (p3 v p1) & (p3 v p2)"));
    assert_eq!(s.mode(), Mode::Thesis);
    sound(s.forward());
    sound(s.backward());

    for (path, formula) in [
        (vec![Side::Left], "(p3 v p1 & p2) v p4"),
        (vec![Side::Left, Side::Left], "((p3 v p1 & p2) -> p4) & p1"),
        (vec![Side::Right], "p4 & (p3 v p1 & p2)"),
    ] {
        let c = f(formula);
        let s = substitute_equivalents(&c, &path, e).unwrap();
        assert_eq!(s.right(), &c.replace_at(&path, e.right().clone()).unwrap());
        assert!(equivalent(s.left(), s.right()));
        sound(s.forward());
        sound(s.backward());
    }
    let bad = substitute_equivalents(&f("p1 -> p2"), &[Side::Right], e);
    assert!(matches!(bad, Err(Error::FormulaMismatch { .. })));
    let bad = substitute_equivalents(&f("p1"), &[Side::Right], e);
    assert!(matches!(bad, Err(Error::InvalidPath(_))));
}

#[test]
fn conjoin_and_split() {
    let a = lemma(LemmaId::L2_5, &fs(&["p1"]), CalculusId::IC).unwrap();
    let b = lemma(LemmaId::L2_5, &fs(&["p2"]), CalculusId::IC).unwrap();
    let ds = vec![a.derivation().unwrap().clone(), b.derivation().unwrap().clone()];
    let both = conjoin(&ds).unwrap();
    assert_eq!(both.conclusion(), &f("(p1 -> p1) & (p2 -> p2)"));
    sound(&both);
    let parts = split_conjunction(&both, 2).unwrap();
    let concl: Vec<_> = parts.iter().map(|d| d.conclusion().clone()).collect();
    assert_eq!(concl, fs(&["p1 -> p1", "p2 -> p2"]));
    assert_eq!(conjoin(&ds[..1]).unwrap(), ds[0]);
    let i = lemma(LemmaId::L2_5, &fs(&["p1"]), CalculusId::I).unwrap();
    let i = i.derivation().unwrap().clone();
    assert!(matches!(conjoin(&[i.clone(), i]), Err(Error::InsufficientCalculus { .. })));
    let open = Derivation::assume(CalculusId::IC, f("p1")).unwrap();
    assert_eq!(conjoin(&[open]), Err(Error::OpenHypotheses));
}
