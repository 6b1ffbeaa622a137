//! Positive propositional formulas: the AST, the concrete ASCII syntax, fragment
//! classification, occurrence paths and the fixed linear order on formulas.
//!
//! Formulas are immutable, reference-counted trees. Cloning is cheap and values
//! can be shared freely across threads. Every node caches its size and a
//! structural hash so that equality and hashing stay cheap on the large
//! derivations produced by the completeness engine.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::semantics::{Assignment, MissingAtom};

/// A formula of the positive language: atoms `p1, p2, ...` closed under
/// `->`, `v` and `&`.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

struct Node {
    kind: Kind,
    size: u32,
    hash: u64,
    // bit 0: contains `v`, bit 1: contains `&`
    flags: u8,
}

/// The shape of a formula node.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Kind {
    Atom(u32),
    Impl(Formula, Formula),
    Disj(Formula, Formula),
    Conj(Formula, Formula),
}

/// Binary connectives.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Connective {
    Impl,
    Disj,
    Conj,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Impl => "->",
            Connective::Disj => "v",
            Connective::Conj => "&",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            Connective::Impl => 1,
            Connective::Disj => 2,
            Connective::Conj => 3,
        }
    }
}

const fn mix(mut h: u64) -> u64 {
    h ^= h >> 33;
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^= h >> 33;
    h = h.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    h ^ (h >> 33)
}

impl Formula {
    fn from_kind(kind: Kind) -> Formula {
        let (size, hash, flags) = match &kind {
            Kind::Atom(i) => (1, mix(u64::from(*i)), 0),
            Kind::Impl(a, b) | Kind::Disj(a, b) | Kind::Conj(a, b) => {
                let tag = match &kind {
                    Kind::Impl(..) => 1u64,
                    Kind::Disj(..) => 2,
                    _ => 3,
                };
                let h = mix(a.0.hash.rotate_left(17) ^ b.0.hash.wrapping_mul(31) ^ (tag << 56));
                let own = match tag {
                    2 => 1,
                    3 => 2,
                    _ => 0,
                };
                (1 + a.0.size + b.0.size, h, a.0.flags | b.0.flags | own)
            }
        };
        Formula(Arc::new(Node { kind, size, hash, flags }))
    }

    /// The atom `p<index>`. Atom indices start at 1.
    pub fn atom(index: u32) -> Formula {
        assert!(index >= 1, "atom indices start at 1");
        Formula::from_kind(Kind::Atom(index))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::Impl(a, b))
    }

    pub fn disj(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::Disj(a, b))
    }

    pub fn conj(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::Conj(a, b))
    }

    pub fn binary(c: Connective, a: Formula, b: Formula) -> Formula {
        match c {
            Connective::Impl => Formula::imp(a, b),
            Connective::Disj => Formula::disj(a, b),
            Connective::Conj => Formula::conj(a, b),
        }
    }

    /// `a <-> b`, which abbreviates `(a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::conj(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// Right-associated disjunction `f1 v (f2 v ... v fn)`. Panics on an empty list.
    pub fn disj_list(items: &[Formula]) -> Formula {
        Self::fold_right(items, Formula::disj)
    }

    /// Right-associated conjunction `f1 & (f2 & ... & fn)`. Panics on an empty list.
    pub fn conj_list(items: &[Formula]) -> Formula {
        Self::fold_right(items, Formula::conj)
    }

    /// Right-associated implication chain `f1 -> f2 -> ... -> fn`.
    pub fn imp_chain(premises: &[Formula], conclusion: Formula) -> Formula {
        premises
            .iter()
            .rev()
            .fold(conclusion, |acc, p| Formula::imp(p.clone(), acc))
    }

    fn fold_right(items: &[Formula], f: fn(Formula, Formula) -> Formula) -> Formula {
        let (last, init) = items.split_last().expect("empty formula list");
        init.iter().rev().fold(last.clone(), |acc, x| f(x.clone(), acc))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// Number of nodes (atoms plus connectives).
    pub fn size(&self) -> usize {
        self.0.size as usize
    }

    /// Number of binary connective occurrences.
    pub fn connectives(&self) -> usize {
        self.size() / 2
    }

    pub fn is_atom(&self) -> bool {
        matches!(self.kind(), Kind::Atom(_))
    }

    pub fn atom_index(&self) -> Option<u32> {
        match self.kind() {
            Kind::Atom(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_impl(&self) -> Option<(&Formula, &Formula)> {
        match self.kind() {
            Kind::Impl(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_disj(&self) -> Option<(&Formula, &Formula)> {
        match self.kind() {
            Kind::Disj(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_conj(&self) -> Option<(&Formula, &Formula)> {
        match self.kind() {
            Kind::Conj(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// The connective and operands of a compound formula.
    pub fn as_binary(&self) -> Option<(Connective, &Formula, &Formula)> {
        match self.kind() {
            Kind::Atom(_) => None,
            Kind::Impl(a, b) => Some((Connective::Impl, a, b)),
            Kind::Disj(a, b) => Some((Connective::Disj, a, b)),
            Kind::Conj(a, b) => Some((Connective::Conj, a, b)),
        }
    }

    pub fn contains(&self, c: Connective) -> bool {
        match c {
            Connective::Impl => self.as_binary().is_some_and(|(k, a, b)| {
                k == Connective::Impl || a.contains(c) || b.contains(c)
            }),
            Connective::Disj => self.0.flags & 1 != 0,
            Connective::Conj => self.0.flags & 2 != 0,
        }
    }

    /// The least fragment whose language contains this formula.
    pub fn fragment(&self) -> Fragment {
        match (self.contains(Connective::Disj), self.contains(Connective::Conj)) {
            (false, false) => Fragment::Implicative,
            (true, false) => Fragment::ImplicativeDisjunctive,
            (false, true) => Fragment::ImplicativeConjunctive,
            (true, true) => Fragment::Positive,
        }
    }

    /// The set of atomic subformulas.
    pub fn atoms(&self) -> AtomSet {
        let mut set = AtomSet::new();
        self.collect_atoms(&mut set);
        set
    }

    fn collect_atoms(&self, set: &mut AtomSet) {
        match self.as_binary() {
            None => {
                set.insert(self.atom_index().unwrap());
            }
            Some((_, a, b)) => {
                a.collect_atoms(set);
                b.collect_atoms(set);
            }
        }
    }

    /// All subformula occurrences in preorder, including the formula itself.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out = Vec::with_capacity(self.size());
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            if let Some((_, a, b)) = f.as_binary() {
                stack.push(b.clone());
                stack.push(a.clone());
            }
            out.push(f);
        }
        out
    }

    /// The subformula at an occurrence path, if the path is valid.
    pub fn at_path(&self, path: &[Side]) -> Option<&Formula> {
        let mut cur = self;
        for side in path {
            let (_, a, b) = cur.as_binary()?;
            cur = match side {
                Side::Left => a,
                Side::Right => b,
            };
        }
        Some(cur)
    }

    /// This formula with the occurrence at `path` replaced by `new`.
    pub fn replace_at(&self, path: &[Side], new: Formula) -> Option<Formula> {
        match path.split_first() {
            None => Some(new),
            Some((side, rest)) => {
                let (c, a, b) = self.as_binary()?;
                Some(match side {
                    Side::Left => Formula::binary(c, a.replace_at(rest, new)?, b.clone()),
                    Side::Right => Formula::binary(c, a.clone(), b.replace_at(rest, new)?),
                })
            }
        }
    }

    /// Applies `rename` to every atom index.
    pub fn rename_atoms(&self, rename: &impl Fn(u32) -> u32) -> Formula {
        match self.as_binary() {
            None => Formula::atom(rename(self.atom_index().unwrap())),
            Some((c, a, b)) => Formula::binary(c, a.rename_atoms(rename), b.rename_atoms(rename)),
        }
    }

    /// Simultaneous substitution of `args[i - 1]` for every atom `pi` with
    /// `i <= args.len()`; other atoms are kept.
    pub fn substitute(&self, args: &[Formula]) -> Formula {
        self.substitute_memo(args, &mut FormulaMap::default())
    }

    // shared subterms are rewritten once
    pub(crate) fn substitute_memo(&self, args: &[Formula], memo: &mut FormulaMap<Formula>) -> Formula {
        if let Some(done) = memo.get(self) {
            return done.clone();
        }
        let out = match self.as_binary() {
            None => {
                let i = self.atom_index().expect("atom");
                (i as usize).checked_sub(1).and_then(|k| args.get(k)).cloned().unwrap_or_else(|| self.clone())
            }
            Some((c, a, b)) => Formula::binary(c, a.substitute_memo(args, memo), b.substitute_memo(args, memo)),
        };
        memo.insert(self.clone(), out.clone());
        out
    }

    /// Disjuncts along the right spine: `a v (b v c)` gives `[a, b, c]`.
    pub fn disjuncts(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Some((a, b)) = cur.as_disj() {
            out.push(a.clone());
            cur = b;
        }
        out.push(cur.clone());
        out
    }

    /// Conjuncts along the right spine.
    pub fn conjuncts(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Some((a, b)) = cur.as_conj() {
            out.push(a.clone());
            cur = b;
        }
        out.push(cur.clone());
        out
    }

    fn preorder_tokens(&self) -> PreorderTokens<'_> {
        PreorderTokens { stack: vec![self] }
    }

    /// Compares two formulas under the fixed linear order: node count first,
    /// then the preorder token sequence. On atoms this is index order.
    pub fn compare_r(&self, other: &Formula) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.size()
            .cmp(&other.size())
            .then_with(|| self.preorder_tokens().cmp(other.preorder_tokens()))
    }

    /// Parses the ASCII concrete syntax.
    pub fn parse(text: &str) -> Result<Formula, ParseError> {
        Parser::new(text).parse_complete()
    }
}

/// Preorder tokens: atoms sort before connectives, by index; connectives
/// are ordered `->`, `v`, `&`.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum Token {
    Atom(u32),
    Connective(Connective),
}

struct PreorderTokens<'a> {
    stack: Vec<&'a Formula>,
}

impl Iterator for PreorderTokens<'_> {
    type Item = Token;

    fn next(&mut self) -> Option<Token> {
        let f = self.stack.pop()?;
        Some(match f.as_binary() {
            None => Token::Atom(f.atom_index().unwrap()),
            Some((c, a, b)) => {
                self.stack.push(b);
                self.stack.push(a);
                Token::Connective(c)
            }
        })
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash && self.0.size == other.0.size && self.0.kind == other.0.kind)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Hashes a formula by its cached structural hash, which is already mixed.
#[derive(Default, Clone, Copy)]
pub struct FormulaHasher(u64);

impl Hasher for FormulaHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = mix(self.0 ^ u64::from(b));
        }
    }

    fn write_u64(&mut self, n: u64) {
        self.0 ^= n;
    }
}

pub type FormulaMap<V> = std::collections::HashMap<Formula, V, std::hash::BuildHasherDefault<FormulaHasher>>;

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Formula) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Formulas are ordered by the fixed linear order used to arrange atom sets.
impl Ord for Formula {
    fn cmp(&self, other: &Formula) -> Ordering {
        self.compare_r(other)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

fn precedence(f: &Formula) -> u8 {
    f.as_binary().map_or(4, |(c, _, _)| c.precedence())
}

fn write_formula(formula: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match formula.as_binary() {
        None => write!(f, "p{}", formula.atom_index().unwrap()),
        Some((c, a, b)) => {
            let p = c.precedence();
            write_operand(a, precedence(a) <= p, f)?;
            write!(f, " {} ", c.symbol())?;
            write_operand(b, precedence(b) < p, f)
        }
    }
}

fn write_operand(formula: &Formula, parens: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if parens {
        f.write_str("(")?;
        write_formula(formula, f)?;
        f.write_str(")")
    } else {
        write_formula(formula, f)
    }
}

/// Canonical printing, same as `Display`.
pub fn print(f: &Formula) -> String {
    f.to_string()
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    Formula::parse(text)
}

/// The four languages, ordered by inclusion.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Fragment {
    Implicative,
    ImplicativeDisjunctive,
    ImplicativeConjunctive,
    Positive,
}

impl Fragment {
    /// Language inclusion.
    pub fn includes(self, other: Fragment) -> bool {
        use Fragment::*;
        match (self, other) {
            (Positive, _) | (_, Implicative) => true,
            (a, b) => a == b,
        }
    }

    pub fn contains(self, f: &Formula) -> bool {
        self.includes(f.fragment())
    }

    /// The connectives of the language.
    pub fn connectives(self) -> &'static [Connective] {
        use Connective::*;
        match self {
            Fragment::Implicative => &[Impl],
            Fragment::ImplicativeDisjunctive => &[Impl, Disj],
            Fragment::ImplicativeConjunctive => &[Impl, Conj],
            Fragment::Positive => &[Impl, Disj, Conj],
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::Implicative => "implicative",
            Fragment::ImplicativeDisjunctive => "implicative-disjunctive",
            Fragment::ImplicativeConjunctive => "implicative-conjunctive",
            Fragment::Positive => "positive",
        })
    }
}

/// Which operand of a binary node an occurrence path descends into. For an
/// implication `Left` is the antecedent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

/// A finite set of atoms, iterated in increasing index order (which is the
/// fixed linear order restricted to atoms).
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AtomSet(BTreeSet<u32>);

impl AtomSet {
    pub fn new() -> AtomSet {
        AtomSet(BTreeSet::new())
    }

    pub fn insert(&mut self, index: u32) -> bool {
        self.0.insert(index)
    }

    pub fn remove(&mut self, index: u32) -> bool {
        self.0.remove(&index)
    }

    pub fn contains(&self, index: u32) -> bool {
        self.0.contains(&index)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// Atom formulas in increasing order.
    pub fn formulas(&self) -> Vec<Formula> {
        self.0.iter().map(|&i| Formula::atom(i)).collect()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// All subsets, in the order of the binary counter over the members.
    pub fn subsets(&self) -> Vec<AtomSet> {
        let members: Vec<u32> = self.indices().collect();
        (0..1u64 << members.len())
            .map(|mask| {
                AtomSet(
                    members
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &a)| a)
                        .collect(),
                )
            })
            .collect()
    }
}

impl FromIterator<u32> for AtomSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> AtomSet {
        AtomSet(iter.into_iter().collect())
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "p{i}")?;
        }
        f.write_str("}")
    }
}

/// Γ[v; a]: the atoms of `a` that `v` makes true.
pub fn gamma_set(v: &Assignment, a: &Formula) -> Result<AtomSet, MissingAtom> {
    split_atoms(v, a).map(|(t, _)| t)
}

/// Δ[v; a]: the atoms of `a` that `v` makes false.
pub fn delta_set(v: &Assignment, a: &Formula) -> Result<AtomSet, MissingAtom> {
    split_atoms(v, a).map(|(_, f)| f)
}

/// Γ and Δ together.
pub fn split_atoms(v: &Assignment, a: &Formula) -> Result<(AtomSet, AtomSet), MissingAtom> {
    let mut truths = AtomSet::new();
    let mut falsities = AtomSet::new();
    for i in a.atoms().indices() {
        if v.get(i).ok_or(MissingAtom(i))? {
            truths.insert(i);
        } else {
            falsities.insert(i);
        }
    }
    Ok((truths, falsities))
}

/// (K)^A: `a` itself when `k` is empty, otherwise `k1 v ... v kn v a`.
pub fn pos_encode(k: &AtomSet, a: &Formula) -> Formula {
    let mut items = k.formulas();
    items.push(a.clone());
    Formula::disj_list(&items)
}

/// (K)^{~A}: `a` itself when `k` is empty, otherwise `a -> (k1 v ... v kn)`.
pub fn neg_encode(k: &AtomSet, a: &Formula) -> Formula {
    if k.is_empty() {
        a.clone()
    } else {
        Formula::imp(a.clone(), Formula::disj_list(&k.formulas()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {position}: expected {expected}, found {found}")]
pub struct ParseError {
    pub position: usize,
    pub expected: &'static str,
    pub found: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tok {
    Atom(u32),
    Arrow,
    Or,
    And,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Atom(i) => write!(f, "`p{i}`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Or => f.write_str("`v`"),
            Tok::And => f.write_str("`&`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    peeked: Option<(usize, Tok)>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser { src: text.as_bytes(), pos: 0, peeked: None }
    }

    fn err<T>(&self, position: usize, expected: &'static str, found: String) -> Result<T, ParseError> {
        Err(ParseError { position, expected, found })
    }

    fn lex(&mut self) -> Result<(usize, Tok), ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((start, Tok::End));
        };
        self.pos += 1;
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'&' => Tok::And,
            b'v' => Tok::Or,
            b'-' => {
                if self.src.get(self.pos) == Some(&b'>') {
                    self.pos += 1;
                    Tok::Arrow
                } else {
                    return self.err(start, "`->`", "`-`".into());
                }
            }
            b'p' => {
                let digits = self.pos;
                match self.src.get(self.pos) {
                    Some(b'1'..=b'9') => {}
                    other => {
                        return self.err(digits, "atom index (a positive integer)", describe(other));
                    }
                }
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[digits..self.pos]).unwrap();
                match text.parse::<u32>() {
                    Ok(i) => Tok::Atom(i),
                    Err(_) => return self.err(digits, "atom index that fits in 32 bits", text.into()),
                }
            }
            _ => {
                let ch = std::str::from_utf8(&self.src[start..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .map_or_else(|| format!("byte 0x{c:02x}"), |ch| format!("`{ch}`"));
                return self.err(start, "formula", ch);
            }
        };
        Ok((start, tok))
    }

    fn peek(&mut self) -> Result<(usize, Tok), ParseError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex()?);
        }
        Ok(self.peeked.unwrap())
    }

    fn bump(&mut self) -> Result<(usize, Tok), ParseError> {
        let t = self.peek()?;
        self.peeked = None;
        Ok(t)
    }

    fn parse_complete(&mut self) -> Result<Formula, ParseError> {
        let f = self.parse_impl()?;
        match self.bump()? {
            (_, Tok::End) => Ok(f),
            (pos, t) => self.err(pos, "end of input", t.to_string()),
        }
    }

    fn parse_impl(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_disj()?;
        if self.peek()?.1 == Tok::Arrow {
            self.bump()?;
            let rhs = self.parse_impl()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn parse_disj(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_conj()?;
        if self.peek()?.1 == Tok::Or {
            self.bump()?;
            let rhs = self.parse_disj()?;
            return Ok(Formula::disj(lhs, rhs));
        }
        Ok(lhs)
    }

    fn parse_conj(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_primary()?;
        if self.peek()?.1 == Tok::And {
            self.bump()?;
            let rhs = self.parse_conj()?;
            return Ok(Formula::conj(lhs, rhs));
        }
        Ok(lhs)
    }

    fn parse_primary(&mut self) -> Result<Formula, ParseError> {
        match self.bump()? {
            (_, Tok::Atom(i)) => Ok(Formula::atom(i)),
            (_, Tok::LParen) => {
                let f = self.parse_impl()?;
                match self.bump()? {
                    (_, Tok::RParen) => Ok(f),
                    (pos, t) => self.err(pos, "`)`", t.to_string()),
                }
            }
            (pos, t) => self.err(pos, "atom or `(`", t.to_string()),
        }
    }
}

fn describe(b: Option<&u8>) -> String {
    match b {
        None => "end of input".into(),
        Some(c) => format!("`{}`", *c as char),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> Formula {
        Formula::atom(i)
    }

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn parse_right_associates() {
        assert_eq!(f("p1 -> p2 -> p1"), Formula::imp(p(1), Formula::imp(p(2), p(1))));
        assert_eq!(f("p1"), p(1));
        assert_eq!(f("(p1 & p2) -> p1"), Formula::imp(Formula::conj(p(1), p(2)), p(1)));
        assert_eq!(f("p1 v p2 v p3"), Formula::disj(p(1), Formula::disj(p(2), p(3))));
    }

    #[test]
    fn precedence_golden() {
        // & binds tighter than v, which binds tighter than ->
        assert_eq!(
            f("p1 & p2 v p3 -> p4"),
            Formula::imp(Formula::disj(Formula::conj(p(1), p(2)), p(3)), p(4))
        );
        assert_eq!(f("p1 v p2 & p3"), Formula::disj(p(1), Formula::conj(p(2), p(3))));
        assert_eq!(f("((p1))"), p(1));
        assert_eq!(f("p1vp2"), Formula::disj(p(1), p(2)));
    }

    #[test]
    fn print_minimal_parentheses() {
        assert_eq!(print(&Formula::imp(p(1), Formula::imp(p(2), p(1)))), "p1 -> p2 -> p1");
        assert_eq!(print(&Formula::disj(Formula::disj(p(1), p(2)), p(3))), "(p1 v p2) v p3");
        assert_eq!(print(&Formula::conj(p(1), p(2))), "p1 & p2");
        assert_eq!(print(&f("p1 & (p2 v p3)")), "p1 & (p2 v p3)");
        assert_eq!(print(&f("(p1 -> p2) -> p1")), "(p1 -> p2) -> p1");
        assert_eq!(print(&f("p1 v p2 & p3 -> p1")), "p1 v p2 & p3 -> p1");
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = Formula::parse("p1 -> ").unwrap_err();
        assert_eq!(e.position, 6);
        assert_eq!(e.expected, "atom or `(`");
        let e = Formula::parse("p0").unwrap_err();
        assert_eq!(e.position, 1);
        let e = Formula::parse("(p1 v p2").unwrap_err();
        assert_eq!(e.expected, "`)`");
        let e = Formula::parse("p1 p2").unwrap_err();
        assert_eq!((e.position, e.expected), (3, "end of input"));
        assert!(Formula::parse("p1 - p2").is_err());
        assert!(Formula::parse("q1").is_err());
        assert!(Formula::parse("").is_err());
    }

    #[test]
    fn fragments() {
        assert_eq!(f("p1 -> p1").fragment(), Fragment::Implicative);
        assert_eq!(f("p1 v (p1 -> p2)").fragment(), Fragment::ImplicativeDisjunctive);
        assert_eq!(f("p1 & (p2 v p3)").fragment(), Fragment::Positive);
        assert_eq!(f("p1 & p2").fragment(), Fragment::ImplicativeConjunctive);
        assert!(Fragment::Positive.includes(Fragment::ImplicativeConjunctive));
        assert!(!Fragment::ImplicativeDisjunctive.includes(Fragment::ImplicativeConjunctive));
        assert!(Fragment::ImplicativeConjunctive.includes(Fragment::Implicative));
    }

    #[test]
    fn order_r_examples() {
        assert_eq!(p(1).compare_r(&p(2)), Ordering::Less);
        // sizes 1 and 3
        assert_eq!(p(3).compare_r(&f("p1 -> p1")), Ordering::Less);
        let g = f("p1 v p2");
        assert_eq!(g.compare_r(&g.clone()), Ordering::Equal);
        assert_eq!(f("p1 -> p2").compare_r(&f("p1 v p1")), Ordering::Less);
    }

    #[test]
    fn gamma_delta_examples() {
        let v = Assignment::from_pairs([(1, true), (2, false)]);
        let a = f("p1 -> p2");
        assert_eq!(gamma_set(&v, &a).unwrap(), AtomSet::from_iter([1]));
        assert_eq!(delta_set(&v, &a).unwrap(), AtomSet::from_iter([2]));
        let v = Assignment::from_pairs([(1, true)]);
        assert_eq!(gamma_set(&v, &p(1)).unwrap(), AtomSet::from_iter([1]));
        assert!(delta_set(&v, &p(1)).unwrap().is_empty());
        let v = Assignment::from_pairs([(1, false), (2, false)]);
        let a = f("(p1 v p2) & p1");
        assert!(gamma_set(&v, &a).unwrap().is_empty());
        assert_eq!(delta_set(&v, &a).unwrap(), AtomSet::from_iter([1, 2]));
        assert_eq!(gamma_set(&v, &f("p3")), Err(MissingAtom(3)));
    }

    #[test]
    fn encodings() {
        let a = f("p1 -> p2");
        assert_eq!(pos_encode(&AtomSet::new(), &a), a);
        assert_eq!(pos_encode(&AtomSet::from_iter([2]), &a), f("p2 v (p1 -> p2)"));
        assert_eq!(pos_encode(&AtomSet::from_iter([2, 1]), &p(3)), f("p1 v (p2 v p3)"));
        assert_eq!(neg_encode(&AtomSet::from_iter([2]), &a), f("(p1 -> p2) -> p2"));
        assert_eq!(neg_encode(&AtomSet::new(), &p(1)), p(1));
        assert_eq!(neg_encode(&AtomSet::from_iter([1, 2]), &p(1)), f("p1 -> p1 v p2"));
    }

    #[test]
    fn paths() {
        let c = f("p1 -> (p3 v (p1 & p2))");
        assert_eq!(c.at_path(&[Side::Right, Side::Right]), Some(&f("p1 & p2")));
        assert_eq!(c.at_path(&[Side::Left, Side::Left]), None);
        assert_eq!(c.replace_at(&[Side::Right, Side::Left], p(9)).unwrap(), f("p1 -> p9 v (p1 & p2)"));
    }
}
