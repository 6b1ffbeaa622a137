//! Incremental construction of derivations.
//!
//! The builder sits outside the kernel: it appends steps, reuses an earlier
//! line whenever the same formula is already derived, and on completion drops
//! every line the conclusion does not depend on. [`ProofBuilder::finish`]
//! runs the kernel checker on the result.
//!
//! Besides single steps it offers the small derived rules that every lemma
//! uses (identity, syllogism, disjunction introduction and elimination over
//! right-associated lists, conjunction projection and assembly), plus
//! [`ProofBuilder::cut`] for splicing a derivation onto existing lines and
//! [`ProofBuilder::discharge`], the deduction-theorem transformation.

use std::collections::BTreeSet;

use crate::formula::{Formula, FormulaMap};
use crate::kernel::{check, instance, CalculusId, CheckError, Derivation, SchemeId, Step};

use SchemeId::*;

/// Index of a line in a builder.
pub type Line = usize;

pub struct ProofBuilder {
    calculus: CalculusId,
    hypotheses: BTreeSet<Formula>,
    steps: Vec<Step>,
    index: FormulaMap<Line>,
}

impl ProofBuilder {
    pub fn new(calculus: CalculusId) -> ProofBuilder {
        ProofBuilder {
            calculus,
            hypotheses: BTreeSet::new(),
            steps: Vec::new(),
            index: FormulaMap::default(),
        }
    }

    pub fn calculus(&self) -> CalculusId {
        self.calculus
    }

    pub fn formula(&self, line: Line) -> &Formula {
        self.steps[line].formula()
    }

    /// An existing line deriving `f`.
    pub fn find(&self, f: &Formula) -> Option<Line> {
        self.index.get(f).copied()
    }

    fn push(&mut self, step: Step) -> Line {
        if let Some(&line) = self.index.get(step.formula()) {
            return line;
        }
        let line = self.steps.len();
        self.index.insert(step.formula().clone(), line);
        self.steps.push(step);
        line
    }

    /// Adds `f` to the declared hypotheses without citing it.
    pub fn declare(&mut self, f: Formula) {
        self.hypotheses.insert(f);
    }

    /// Declares and cites a hypothesis.
    pub fn hyp(&mut self, f: Formula) -> Line {
        self.hypotheses.insert(f.clone());
        self.push(Step::Hyp { formula: f })
    }

    /// The instance of `scheme` binding A, B, C to `args` in order.
    pub fn axiom(&mut self, scheme: SchemeId, args: &[Formula]) -> Line {
        let formula = instance(scheme, args);
        self.axiom_formula(scheme, formula)
    }

    pub fn axiom_formula(&mut self, scheme: SchemeId, formula: Formula) -> Line {
        if let Some(line) = self.find(&formula) {
            return line;
        }
        self.push(Step::Axiom { scheme, formula })
    }

    /// Modus ponens. Panics if `major` is not an implication whose antecedent
    /// is the formula of `minor`; that is a construction bug.
    pub fn mp(&mut self, major: Line, minor: Line) -> Line {
        let (a, b) = self
            .formula(major)
            .as_impl()
            .unwrap_or_else(|| panic!("modus ponens on non-implication {}", self.formula(major)));
        assert!(
            a == self.formula(minor),
            "modus ponens mismatch: {} applied to {}",
            self.formula(major),
            self.formula(minor)
        );
        let formula = b.clone();
        self.push(Step::Mp { major, minor, formula })
    }

    /// Repeated modus ponens: `major` applied to each minor in turn.
    pub fn mp_all(&mut self, major: Line, minors: &[Line]) -> Line {
        minors.iter().fold(major, |acc, &m| self.mp(acc, m))
    }

    /// The compacted derivation of the formula at `conclusion`, unchecked.
    ///
    /// Only lines the conclusion depends on are kept; since every line depends
    /// on earlier ones only, the conclusion ends up last.
    pub fn build(&self, conclusion: Line) -> Derivation {
        let mut needed = vec![false; conclusion + 1];
        needed[conclusion] = true;
        for i in (0..=conclusion).rev() {
            if needed[i] {
                if let Step::Mp { major, minor, .. } = &self.steps[i] {
                    needed[*major] = true;
                    needed[*minor] = true;
                }
            }
        }
        let mut renumber = vec![usize::MAX; conclusion + 1];
        let mut steps = Vec::new();
        for i in 0..=conclusion {
            if !needed[i] {
                continue;
            }
            renumber[i] = steps.len();
            steps.push(match &self.steps[i] {
                Step::Mp { major, minor, formula } => Step::Mp {
                    major: renumber[*major],
                    minor: renumber[*minor],
                    formula: formula.clone(),
                },
                other => other.clone(),
            });
        }
        Derivation::from_parts(self.calculus, self.hypotheses.clone(), steps)
    }

    /// [`build`](Self::build), then the kernel check.
    pub fn finish(&self, conclusion: Line) -> Result<Derivation, CheckError> {
        let d = self.build(conclusion);
        check(&d)?;
        Ok(d)
    }

    fn premise_map(&self, premises: &[Line]) -> FormulaMap<Line> {
        premises.iter().map(|&l| (self.formula(l).clone(), l)).collect()
    }

    /// Splices `d` in, citing `premises` for those of its hypotheses they
    /// derive; its remaining hypotheses become hypotheses here. Returns the
    /// line of `d`'s conclusion.
    pub fn cut(&mut self, d: &Derivation, premises: &[Line]) -> Line {
        let premise_lines = self.premise_map(premises);
        for h in d.hypotheses() {
            if !premise_lines.contains_key(h) {
                self.declare(h.clone());
            }
        }
        let mut map = Vec::with_capacity(d.len());
        for step in d.steps() {
            let line = match step {
                Step::Hyp { formula } => match premise_lines.get(formula) {
                    Some(&l) => l,
                    None => self.hyp(formula.clone()),
                },
                Step::Axiom { scheme, formula } => self.axiom_formula(*scheme, formula.clone()),
                Step::Mp { major, minor, .. } => self.mp(map[*major], map[*minor]),
            };
            map.push(line);
        }
        *map.last().expect("empty derivation")
    }

    /// Emits `template`, a derivation over the schematic atoms `p1, p2, ...`,
    /// with `args` substituted for them. Substituted hypotheses are cited
    /// through `premises` where possible and declared otherwise.
    pub fn instantiate(&mut self, template: &Derivation, args: &[Formula], premises: &[Line]) -> Line {
        let premise_lines = self.premise_map(premises);
        let mut memo = FormulaMap::default();
        let mut map = Vec::with_capacity(template.len());
        for step in template.steps() {
            let line = match step {
                Step::Hyp { formula } => {
                    let f = formula.substitute_memo(args, &mut memo);
                    match premise_lines.get(&f) {
                        Some(&l) => l,
                        None => self.hyp(f),
                    }
                }
                Step::Axiom { scheme, formula } => self.axiom_formula(*scheme, formula.substitute_memo(args, &mut memo)),
                Step::Mp { major, minor, .. } => self.mp(map[*major], map[*minor]),
            };
            map.push(line);
        }
        *map.last().expect("empty derivation")
    }

    /// Like [`discharge`](Self::discharge), except that a line not depending
    /// on `a` is copied unchanged and weakened once where a dependent line
    /// needs it, instead of being transformed step by step.
    pub fn discharge_lean(&mut self, d: &Derivation, a: &Formula, premises: &[Line]) -> Line {
        let premise_lines = self.premise_map(premises);
        for h in d.hypotheses() {
            if h != a && !premise_lines.contains_key(h) {
                self.declare(h.clone());
            }
        }
        let steps = d.steps();
        let last = steps.len() - 1;
        let mut needed = vec![false; steps.len()];
        needed[last] = true;
        let mut depends = vec![false; steps.len()];
        for i in (0..steps.len()).rev() {
            if needed[i] {
                if let Step::Mp { major, minor, .. } = &steps[i] {
                    needed[*major] = true;
                    needed[*minor] = true;
                }
            }
        }
        for (i, step) in steps.iter().enumerate() {
            depends[i] = match step {
                Step::Hyp { formula } => formula == a,
                Step::Axiom { .. } => false,
                Step::Mp { major, minor, .. } => depends[*major] || depends[*minor],
            };
        }
        // plain[i]: line of the step's own formula; implied[i]: line of a -> it
        let mut plain = vec![usize::MAX; steps.len()];
        let mut implied = vec![usize::MAX; steps.len()];
        for (i, step) in steps.iter().enumerate() {
            if !needed[i] {
                continue;
            }
            if !depends[i] {
                plain[i] = match step {
                    Step::Hyp { formula } => match premise_lines.get(formula) {
                        Some(&l) => l,
                        None => self.hyp(formula.clone()),
                    },
                    Step::Axiom { scheme, formula } => self.axiom_formula(*scheme, formula.clone()),
                    Step::Mp { major, minor, .. } => self.mp(plain[*major], plain[*minor]),
                };
                continue;
            }
            let target = Formula::imp(a.clone(), step.formula().clone());
            if let Some(line) = self.find(&target) {
                implied[i] = line;
                continue;
            }
            implied[i] = match step {
                Step::Mp { major, minor, .. } => {
                    let lift = |b: &mut ProofBuilder, j: usize| {
                        if depends[j] {
                            implied[j]
                        } else {
                            let t = Formula::imp(a.clone(), steps[j].formula().clone());
                            b.weaken_to(plain[j], t)
                        }
                    };
                    let a_maj = lift(self, *major);
                    let a_min = lift(self, *minor);
                    let inner = Formula::imp(self.formula(a_min).clone(), target);
                    let ax2 = self.axiom_formula(Ax2, Formula::imp(self.formula(a_maj).clone(), inner));
                    self.mp_all(ax2, &[a_maj, a_min])
                }
                _ => self.refl(a),
            };
        }
        if depends[last] {
            implied[last]
        } else {
            let t = Formula::imp(a.clone(), steps[last].formula().clone());
            self.weaken_to(plain[last], t)
        }
    }

    /// Deduction-theorem transformation of `d` with respect to `a`, emitted
    /// here: returns the line of `a -> conclusion(d)`. Hypotheses of `d`
    /// matching a premise line are cited through it; other hypotheses except
    /// `a` become hypotheses here.
    ///
    /// Hypothesis `a` becomes the identity proof of `a -> a`; an axiom or other
    /// hypothesis `b` becomes `b`, `b -> a -> b` (Ax1) and MP; an MP line uses
    /// Ax2 and two MPs.
    pub fn discharge(&mut self, d: &Derivation, a: &Formula, premises: &[Line]) -> Line {
        let premise_lines = self.premise_map(premises);
        for h in d.hypotheses() {
            if h != a && !premise_lines.contains_key(h) {
                self.declare(h.clone());
            }
        }
        let steps = d.steps();
        let last = steps.len() - 1;
        let mut needed = vec![false; steps.len()];
        needed[last] = true;
        for i in (0..steps.len()).rev() {
            if needed[i] {
                if let Step::Mp { major, minor, .. } = &steps[i] {
                    needed[*major] = true;
                    needed[*minor] = true;
                }
            }
        }
        let mut map = vec![usize::MAX; steps.len()];
        for (i, step) in steps.iter().enumerate() {
            if !needed[i] {
                continue;
            }
            let target = Formula::imp(a.clone(), step.formula().clone());
            if let Some(line) = self.find(&target) {
                map[i] = line;
                continue;
            }
            map[i] = match step {
                Step::Hyp { formula } if formula == a => self.refl(a),
                Step::Hyp { formula } => {
                    let line = match premise_lines.get(formula) {
                        Some(&l) => l,
                        None => self.hyp(formula.clone()),
                    };
                    self.weaken_to(line, target)
                }
                Step::Axiom { scheme, formula } => {
                    let line = self.axiom_formula(*scheme, formula.clone());
                    self.weaken_to(line, target)
                }
                Step::Mp { major, minor, .. } => {
                    // Ax2 assembled from the lines it connects
                    let (a_maj, a_min) = (map[*major], map[*minor]);
                    let inner = Formula::imp(self.formula(a_min).clone(), target);
                    let ax2 = self.axiom_formula(Ax2, Formula::imp(self.formula(a_maj).clone(), inner));
                    self.mp_all(ax2, &[a_maj, a_min])
                }
            };
        }
        map[last]
    }

    /// Proves `a -> x` by running `body` in a fresh builder where `a` and the
    /// formulas of `premises` are hypotheses, then discharging `a`. `body`
    /// receives the line of `a` and the lines of the premises in that builder.
    pub fn suppose(
        &mut self,
        a: &Formula,
        premises: &[Line],
        body: impl FnOnce(&mut ProofBuilder, Line, &[Line]) -> Line,
    ) -> Line {
        let mut sub = ProofBuilder::new(self.calculus);
        let inner: Vec<Line> = premises.iter().map(|&l| sub.hyp(self.formula(l).clone())).collect();
        let ha = sub.hyp(a.clone());
        let concl = body(&mut sub, ha, &inner);
        let d = sub.build(concl);
        self.discharge_lean(&d, a, premises)
    }

    /// `a -> a` in five steps: Ax2, Ax1, MP, Ax1, MP.
    pub fn refl(&mut self, a: &Formula) -> Line {
        let aa = Formula::imp(a.clone(), a.clone());
        if let Some(line) = self.find(&aa) {
            return line;
        }
        let ax2 = self.axiom(Ax2, &[a.clone(), aa.clone(), a.clone()]);
        let ax1 = self.axiom(Ax1, &[a.clone(), aa]);
        let l = self.mp(ax2, ax1);
        let ax1b = self.axiom(Ax1, &[a.clone(), a.clone()]);
        self.mp(l, ax1b)
    }

    /// From a line of `x`, the line `a -> x` via Ax1.
    pub fn weaken(&mut self, line: Line, a: &Formula) -> Line {
        let target = Formula::imp(a.clone(), self.formula(line).clone());
        self.weaken_to(line, target)
    }

    // `target` must be `a -> x` for the formula `x` on `line`.
    fn weaken_to(&mut self, line: Line, target: Formula) -> Line {
        if let Some(l) = self.find(&target) {
            return l;
        }
        let ax1 = Formula::imp(self.formula(line).clone(), target);
        let ax1 = self.axiom_formula(Ax1, ax1);
        self.mp(ax1, line)
    }

    /// Hypothetical syllogism: from `a -> b` and `b -> c`, the line `a -> c`.
    pub fn chain(&mut self, ab: Line, bc: Line) -> Line {
        let (a, b) = self.formula(ab).as_impl().map(|(x, y)| (x.clone(), y.clone())).expect("chain: not an implication");
        let c = match self.formula(bc).as_impl() {
            Some((b2, c)) if *b2 == b => c.clone(),
            _ => panic!("chain: {} does not continue {}", self.formula(bc), self.formula(ab)),
        };
        if a == b {
            return bc;
        }
        if b == c {
            return ab;
        }
        let a_bc = self.weaken(bc, &a);
        let ax2 = self.axiom(Ax2, &[a, b, c]);
        self.mp_all(ax2, &[a_bc, ab])
    }

    /// `items[j] -> (items[0] v ... v items[n-1])`.
    pub fn disj_intro(&mut self, items: &[Formula], j: usize) -> Line {
        if items.len() == 1 {
            return self.refl(&items[0]);
        }
        let rest = Formula::disj_list(&items[1..]);
        if j == 0 {
            return self.axiom(Ax4, &[items[0].clone(), rest]);
        }
        let inner = self.disj_intro(&items[1..], j - 1);
        let ax5 = self.axiom(Ax5, &[rest, items[0].clone()]);
        self.chain(inner, ax5)
    }

    /// `(items[0] v ... v items[n-1]) -> target`, given a line of
    /// `items[i] -> target` for each `i`.
    pub fn disj_cases(&mut self, items: &[Formula], target: &Formula, cases: &[Line]) -> Line {
        debug_assert_eq!(items.len(), cases.len());
        if items.len() == 1 {
            return cases[0];
        }
        let rest_formula = Formula::disj_list(&items[1..]);
        let rest = self.disj_cases(&items[1..], target, &cases[1..]);
        let ax6 = self.axiom(Ax6, &[items[0].clone(), rest_formula, target.clone()]);
        self.mp_all(ax6, &[cases[0], rest])
    }

    /// `(a1 v ... v an) -> (b1 v ... v bk)` where every `ai` is some `bj`.
    /// Returns `None` if some disjunct of the source is missing from the target.
    pub fn subsume(&mut self, source: &[Formula], target: &[Formula]) -> Option<Line> {
        let target_formula = Formula::disj_list(target);
        let goal = Formula::imp(Formula::disj_list(source), target_formula.clone());
        if let Some(line) = self.find(&goal) {
            return Some(line);
        }
        let mut cases = Vec::with_capacity(source.len());
        for a in source {
            let j = target.iter().position(|b| b == a)?;
            cases.push(self.disj_intro(target, j));
        }
        Some(self.disj_cases(source, &target_formula, &cases))
    }

    /// Applies [`subsume`](Self::subsume) to a line of the source disjunction;
    /// no steps are added when source and target are the same formula.
    pub fn subsume_apply(&mut self, line: Line, source: &[Formula], target: &[Formula]) -> Option<Line> {
        if Formula::disj_list(source) == Formula::disj_list(target) {
            return Some(line);
        }
        let imp = self.subsume(source, target)?;
        Some(self.mp(imp, line))
    }

    /// `((a1 v ... v an) v b) -> (a1 v ... v an v b)`.
    pub fn reassoc_right(&mut self, items: &[Formula], b: &Formula) -> Line {
        let mut all = items.to_vec();
        all.push(b.clone());
        let grouped = Formula::disj_list(items);
        let head = self.subsume(items, &all).expect("prefix is included");
        let tail = self.disj_intro(&all, items.len());
        self.disj_cases(&[grouped, b.clone()], &Formula::disj_list(&all), &[head, tail])
    }

    /// `(a1 v ... v an v b) -> ((a1 v ... v an) v b)`.
    pub fn reassoc_left(&mut self, items: &[Formula], b: &Formula) -> Line {
        let mut all = items.to_vec();
        all.push(b.clone());
        let grouped = Formula::disj_list(items);
        let target = Formula::disj(grouped.clone(), b.clone());
        let left = self.axiom(Ax4, &[grouped.clone(), b.clone()]);
        let mut cases = Vec::with_capacity(all.len());
        for j in 0..items.len() {
            let into_group = self.disj_intro(items, j);
            cases.push(self.chain(into_group, left));
        }
        cases.push(self.axiom(Ax5, &[b.clone(), grouped]));
        self.disj_cases(&all, &target, &cases)
    }

    /// From a line of `(a1 v ... v an) v b`, the line of `a1 v ... v an v b`.
    pub fn reassoc_right_apply(&mut self, line: Line, items: &[Formula], b: &Formula) -> Line {
        if items.len() == 1 {
            return line;
        }
        let imp = self.reassoc_right(items, b);
        self.mp(imp, line)
    }

    /// From a line of `a1 v ... v an v b`, the line of `(a1 v ... v an) v b`.
    pub fn reassoc_left_apply(&mut self, line: Line, items: &[Formula], b: &Formula) -> Line {
        if items.len() == 1 {
            return line;
        }
        let imp = self.reassoc_left(items, b);
        self.mp(imp, line)
    }

    /// From a line of `c1 & ... & cn`, the line of `cj`.
    pub fn project(&mut self, line: Line, items: &[Formula], j: usize) -> Line {
        let mut cur = line;
        for k in 0..j {
            let ax8 = self.axiom(Ax8, &[items[k].clone(), Formula::conj_list(&items[k + 1..])]);
            cur = self.mp(ax8, cur);
        }
        if j + 1 < items.len() {
            let ax7 = self.axiom(Ax7, &[items[j].clone(), Formula::conj_list(&items[j + 1..])]);
            cur = self.mp(ax7, cur);
        }
        cur
    }

    /// From lines of `c1, ..., cn`, the line of `c1 & ... & cn`.
    pub fn conj_build(&mut self, items: &[Formula], lines: &[Line]) -> Line {
        let n = items.len();
        let mut acc = lines[n - 1];
        for k in (0..n - 1).rev() {
            let ax9 = self.axiom(Ax9, &[items[k].clone(), Formula::conj_list(&items[k + 1..])]);
            acc = self.mp_all(ax9, &[lines[k], acc]);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn refl_is_five_steps() {
        let mut b = ProofBuilder::new(CalculusId::I);
        let l = b.refl(&f("p1"));
        let d = b.finish(l).unwrap();
        assert_eq!(d.len(), 5);
        assert_eq!(d.conclusion(), &f("p1 -> p1"));
    }

    #[test]
    fn dedup_reuses_lines() {
        let mut b = ProofBuilder::new(CalculusId::I);
        let x = b.hyp(f("p1"));
        let y = b.hyp(f("p1"));
        assert_eq!(x, y);
        let r1 = b.refl(&f("p2"));
        let r2 = b.refl(&f("p2"));
        assert_eq!(r1, r2);
    }

    #[test]
    fn compaction_drops_unused_lines() {
        let mut b = ProofBuilder::new(CalculusId::I);
        b.refl(&f("p2"));
        let h = b.hyp(f("p1"));
        let d = b.finish(h).unwrap();
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn disjunction_helpers_check() {
        let items = [f("p1"), f("p2"), f("p3")];
        let mut b = ProofBuilder::new(CalculusId::ID);
        for j in 0..3 {
            let l = b.disj_intro(&items, j);
            assert_eq!(b.formula(l), &Formula::imp(items[j].clone(), Formula::disj_list(&items)));
            b.finish(l).unwrap();
        }
        let l = b.subsume(&[f("p3"), f("p1"), f("p3")], &items).unwrap();
        assert_eq!(b.formula(l), &f("p3 v p1 v p3 -> p1 v p2 v p3"));
        b.finish(l).unwrap();
        assert!(b.subsume(&[f("p4")], &items).is_none());
        let l = b.reassoc_right(&items[..2], &items[2]);
        assert_eq!(b.formula(l), &f("(p1 v p2) v p3 -> p1 v p2 v p3"));
        b.finish(l).unwrap();
        let l = b.reassoc_left(&items[..2], &items[2]);
        assert_eq!(b.formula(l), &f("p1 v p2 v p3 -> (p1 v p2) v p3"));
        b.finish(l).unwrap();
    }

    #[test]
    fn conjunction_helpers_check() {
        let items = [f("p1"), f("p2 v p3"), f("p4")];
        let mut b = ProofBuilder::new(CalculusId::P);
        let lines: Vec<Line> = items.iter().map(|x| b.hyp(x.clone())).collect();
        let c = b.conj_build(&items, &lines);
        assert_eq!(b.formula(c), &Formula::conj_list(&items));
        for j in 0..3 {
            let l = b.project(c, &items, j);
            assert_eq!(b.formula(l), &items[j]);
        }
        b.finish(c).unwrap();
    }

    #[test]
    fn discharge_builds_implication() {
        let mut s = ProofBuilder::new(CalculusId::I);
        let a = s.hyp(f("p1"));
        let ab = s.hyp(f("p1 -> p2"));
        let b_ = s.mp(ab, a);
        let d = s.build(b_);
        let mut b = ProofBuilder::new(CalculusId::I);
        let l = b.discharge(&d, &f("p1"), &[]);
        let out = b.finish(l).unwrap();
        assert_eq!(out.conclusion(), &f("p1 -> p2"));
        assert_eq!(out.hypotheses(), &BTreeSet::from([f("p1 -> p2")]));
    }

    #[test]
    fn cut_cites_premises() {
        let mut s = ProofBuilder::new(CalculusId::I);
        let a = s.hyp(f("p1"));
        let ab = s.hyp(f("p1 -> p2"));
        let l = s.mp(ab, a);
        let d = s.build(l);
        let mut b = ProofBuilder::new(CalculusId::I);
        let ax = b.axiom(Ax1, &[f("p1"), f("p1")]);
        let x = b.hyp(f("p1 -> p2"));
        let y = b.hyp(f("p1"));
        let _ = ax;
        let l = b.cut(&d, &[x, y]);
        let out = b.finish(l).unwrap();
        assert_eq!(out.conclusion(), &f("p2"));
        assert_eq!(out.hypotheses().len(), 2);
    }
}
