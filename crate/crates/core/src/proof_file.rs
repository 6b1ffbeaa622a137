//! Text and JSON serialization of derivations.
//!
//! The text format is line oriented:
//!
//! ```text
//! calculus: ID
//! hyp: p1
//! hyp: p1 -> p2
//! 1. hyp p1
//! 2. hyp p1 -> p2
//! 3. mp 2 1 p2
//! ```
//!
//! Hypotheses are written in formula order, steps are numbered from 1, and
//! `mp i j` cites the major premise `i` (the implication) before the minor
//! premise `j`. [`to_text`] emits exactly this layout, so parsing its output
//! and printing again reproduces the text byte for byte.
//!
//! Parsing does not run the checker; a parsed file can be malformed as a proof
//! and is handed to [`check`](crate::kernel::check) separately.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, ParseError};
use crate::kernel::{CalculusId, Derivation, SchemeId, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("proof file has no steps")]
    Empty,
    #[error("invalid JSON proof: {0}")]
    Json(String),
}

fn syntax(line: usize, message: impl Into<String>) -> ProofFileError {
    ProofFileError::Syntax { line, message: message.into() }
}

pub fn to_text(d: &Derivation) -> String {
    let mut out = String::new();
    writeln!(out, "calculus: {}", d.calculus()).unwrap();
    for h in d.hypotheses() {
        writeln!(out, "hyp: {h}").unwrap();
    }
    for (i, s) in d.steps().iter().enumerate() {
        let n = i + 1;
        match s {
            Step::Axiom { scheme, formula } => writeln!(out, "{n}. axiom {scheme} {formula}"),
            Step::Hyp { formula } => writeln!(out, "{n}. hyp {formula}"),
            Step::Mp { major, minor, formula } => writeln!(out, "{n}. mp {} {} {formula}", major + 1, minor + 1),
        }
        .unwrap();
    }
    out
}

fn formula_at(line: usize, text: &str) -> Result<Formula, ProofFileError> {
    Formula::parse(text).map_err(|source| ProofFileError::Formula { line, source })
}

fn index_at(line: usize, step: usize, word: Option<&str>) -> Result<usize, ProofFileError> {
    let word = word.ok_or_else(|| syntax(line, "mp needs two step numbers"))?;
    let k: usize = word.parse().map_err(|_| syntax(line, format!("`{word}` is not a step number")))?;
    if k == 0 || k > step {
        return Err(syntax(line, format!("step {k} is out of range")));
    }
    Ok(k - 1)
}

/// Parses the text format. Blank lines and lines starting with `#` are
/// skipped. Step numbers must run 1, 2, 3, ... in order; an MP citation may
/// point anywhere up to the current step, since forward references are the
/// checker's business.
pub fn from_text(text: &str) -> Result<Derivation, ProofFileError> {
    let mut calculus = None;
    let mut hypotheses = BTreeSet::new();
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if let Some(rest) = l.strip_prefix("calculus:") {
            if calculus.is_some() {
                return Err(syntax(line, "duplicate calculus header"));
            }
            if !steps.is_empty() || !hypotheses.is_empty() {
                return Err(syntax(line, "calculus header must come first"));
            }
            calculus = Some(rest.trim().parse::<CalculusId>().map_err(|e| syntax(line, e))?);
            continue;
        }
        if calculus.is_none() {
            return Err(syntax(line, "missing `calculus:` header"));
        }
        if let Some(rest) = l.strip_prefix("hyp:") {
            if !steps.is_empty() {
                return Err(syntax(line, "hypotheses must precede the steps"));
            }
            hypotheses.insert(formula_at(line, rest.trim())?);
            continue;
        }
        let (num, rest) = l.split_once('.').ok_or_else(|| syntax(line, "expected `n. <step>`"))?;
        let n: usize = num.trim().parse().map_err(|_| syntax(line, format!("`{num}` is not a step number")))?;
        if n != steps.len() + 1 {
            return Err(syntax(line, format!("expected step {}, found {n}", steps.len() + 1)));
        }
        let rest = rest.trim_start();
        let (kind, rest) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        let step = match kind {
            "axiom" => {
                let rest = rest.trim_start();
                let (name, f) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let scheme: SchemeId = name.parse().map_err(|e| syntax(line, e))?;
                Step::Axiom { scheme, formula: formula_at(line, f.trim())? }
            }
            "hyp" => Step::Hyp { formula: formula_at(line, rest.trim())? },
            "mp" => {
                let mut words = rest.trim_start().splitn(3, char::is_whitespace);
                let major = index_at(line, n, words.next())?;
                let minor = index_at(line, n, words.next())?;
                Step::Mp { major, minor, formula: formula_at(line, words.next().unwrap_or("").trim())? }
            }
            other => return Err(syntax(line, format!("unknown step kind `{other}`"))),
        };
        steps.push(step);
    }
    let calculus = calculus.ok_or_else(|| syntax(1, "missing `calculus:` header"))?;
    if steps.is_empty() {
        return Err(ProofFileError::Empty);
    }
    Ok(Derivation::from_parts(calculus, hypotheses, steps))
}

/// JSON mirror of the text format. Formulas are strings in the ASCII syntax
/// and MP indices are 1-based, as in the text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofDocument {
    pub calculus: CalculusId,
    pub hypotheses: Vec<String>,
    pub steps: Vec<StepDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum StepDocument {
    Axiom { scheme: SchemeId, formula: String },
    Hyp { formula: String },
    Mp { major: usize, minor: usize, formula: String },
}

impl From<&Derivation> for ProofDocument {
    fn from(d: &Derivation) -> ProofDocument {
        let steps = d
            .steps()
            .iter()
            .map(|s| match s {
                Step::Axiom { scheme, formula } => StepDocument::Axiom { scheme: *scheme, formula: formula.to_string() },
                Step::Hyp { formula } => StepDocument::Hyp { formula: formula.to_string() },
                Step::Mp { major, minor, formula } => {
                    StepDocument::Mp { major: major + 1, minor: minor + 1, formula: formula.to_string() }
                }
            })
            .collect();
        ProofDocument {
            calculus: d.calculus(),
            hypotheses: d.hypotheses().iter().map(Formula::to_string).collect(),
            steps,
        }
    }
}

impl TryFrom<ProofDocument> for Derivation {
    type Error = ProofFileError;

    // Errors report 1-based positions: hypotheses first, then steps.
    fn try_from(doc: ProofDocument) -> Result<Derivation, ProofFileError> {
        let hyps = doc.hypotheses.len();
        let hypotheses = doc
            .hypotheses
            .iter()
            .enumerate()
            .map(|(i, h)| formula_at(i + 1, h))
            .collect::<Result<BTreeSet<_>, _>>()?;
        let mut steps = Vec::with_capacity(doc.steps.len());
        for (i, s) in doc.steps.into_iter().enumerate() {
            let at = hyps + i + 1;
            steps.push(match s {
                StepDocument::Axiom { scheme, formula } => Step::Axiom { scheme, formula: formula_at(at, &formula)? },
                StepDocument::Hyp { formula } => Step::Hyp { formula: formula_at(at, &formula)? },
                StepDocument::Mp { major, minor, formula } => {
                    let major = index_at(at, i + 1, Some(&major.to_string()))?;
                    let minor = index_at(at, i + 1, Some(&minor.to_string()))?;
                    Step::Mp { major, minor, formula: formula_at(at, &formula)? }
                }
            });
        }
        if steps.is_empty() {
            return Err(ProofFileError::Empty);
        }
        Ok(Derivation::from_parts(doc.calculus, hypotheses, steps))
    }
}

pub fn to_json(d: &Derivation) -> String {
    serde_json::to_string_pretty(&ProofDocument::from(d)).expect("proof documents always serialize")
}

pub fn from_json(text: &str) -> Result<Derivation, ProofFileError> {
    let doc: ProofDocument = serde_json::from_str(text).map_err(|e| ProofFileError::Json(e.to_string()))?;
    Derivation::try_from(doc)
}

/// Reads either format, picking JSON when the first non-blank character is `{`.
pub fn from_any(text: &str) -> Result<Derivation, ProofFileError> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalmar;
    use crate::kernel::check;
    use crate::kalmar::Outcome;

    const MP: &str = "calculus: I\nhyp: p1\nhyp: p1 -> p2\n1. hyp p1\n2. hyp p1 -> p2\n3. mp 2 1 p2\n";

    #[test]
    fn text_round_trip_is_exact() {
        let d = from_text(MP).unwrap();
        check(&d).unwrap();
        assert_eq!(d.conclusion().to_string(), "p2");
        assert_eq!(to_text(&d), MP);
        assert_eq!(from_json(&to_json(&d)).unwrap(), d);
    }

    #[test]
    fn generated_proofs_round_trip() {
        for s in ["p1 -> p1", "p1 v (p1 -> p2)", "((p1 -> p2) -> p1) -> p1", "(p1 & p2) -> (p2 & p1)"] {
            let a = Formula::parse(s).unwrap();
            let Outcome::Proof(d) = kalmar::prove(&a, CalculusId::P).unwrap() else { panic!("{s}") };
            let text = to_text(&d);
            let back = from_text(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(to_text(&back), text);
            let json = to_json(&d);
            assert_eq!(from_json(&json).unwrap(), d);
            assert_eq!(to_json(&from_any(&json).unwrap()), json);
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        let bad = [
            "hyp: p1\n1. hyp p1\n",
            "calculus: Q\n1. hyp p1\n",
            "calculus: I\n",
            "calculus: I\n2. hyp p1\n",
            "calculus: I\n1. axiom Ax10 p1\n",
            "calculus: I\n1. mp 1 1 p1\n1. hyp p1\n",
            "calculus: I\n1. hyp p1\n2. mp 3 1 p1\n",
            "calculus: I\n1. hyp p1 ->\n",
            "calculus: I\n1. hyp p1\nhyp: p1\n",
            "calculus: I\n1. frob p1\n",
        ];
        for t in bad {
            assert!(from_text(t).is_err(), "{t:?}");
        }
        assert!(from_json("{\"calculus\":\"I\",\"hypotheses\":[],\"steps\":[]}").is_err());
    }

    #[test]
    fn parsed_but_wrong_proofs_fail_the_checker() {
        let d = from_text("calculus: I\n1. axiom Ax1 p1 -> p1\n").unwrap();
        assert!(check(&d).is_err());
        let d = from_text("calculus: I\n1. hyp p1\n").unwrap();
        assert!(check(&d).is_err());
    }
}
