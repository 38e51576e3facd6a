//! Desubstitution of binary words and the derived-word classification.
//!
//! One desubstitution step removes a single letter from every maximal run
//! of the non-isolated letter (the one appearing doubled). Iterating until
//! the word is empty or contains both 00 and 11 yields the derived word,
//! whose shape against the diagonal automata decides whether the original
//! word is balanced, tangent, or analytic tangent.

use serde::Serialize;
use thiserror::Error;

use crate::automata;
use crate::word::Word;

/// Which letter a desubstitution step strips from each of its runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovalRule {
    RemovedZeros,
    RemovedOnes,
}

impl RemovalRule {
    pub fn letter(self) -> u8 {
        match self {
            RemovalRule::RemovedZeros => 0,
            RemovalRule::RemovedOnes => 1,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DerivationError {
    #[error("empty word cannot be desubstituted")]
    EmptyWord,
    #[error("word contains both 00 and 11 and cannot be desubstituted")]
    NotDesubstitutable,
    #[error("no inner run of the removed letter; acceleration does not apply")]
    NoInnerRun,
}

/// The two elementary substitutions inverted by desubstitution:
/// `Sigma0` maps 0 to 0 and 1 to 10; `Sigma1` maps 0 to 01 and 1 to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Morphism {
    Sigma0,
    Sigma1,
}

impl Morphism {
    pub fn apply(self, w: &Word) -> Word {
        let mut letters = Vec::with_capacity(2 * w.len());
        for &b in w.letters() {
            match (self, b) {
                (Morphism::Sigma0, 0) => letters.push(0),
                (Morphism::Sigma0, 1) => letters.extend_from_slice(&[1, 0]),
                (Morphism::Sigma1, 0) => letters.extend_from_slice(&[0, 1]),
                (Morphism::Sigma1, 1) => letters.push(1),
                _ => unreachable!("letters are 0 or 1"),
            }
        }
        Word::from_letters(letters)
    }
}

/// One desubstitution step with its input and output words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub input: Word,
    pub rule: RemovalRule,
    pub output: Word,
}

/// A full derivation: the recorded steps and the word they stop at, which
/// is either empty or contains both 00 and 11.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationTrace {
    pub steps: Vec<DerivationStep>,
    #[serde(rename = "final")]
    pub final_word: Word,
}

fn removal_rule(w: &Word) -> Result<RemovalRule, DerivationError> {
    if w.is_empty() {
        return Err(DerivationError::EmptyWord);
    }
    match (w.has_double(0), w.has_double(1)) {
        (true, true) => Err(DerivationError::NotDesubstitutable),
        (true, false) => Ok(RemovalRule::RemovedZeros),
        (false, true) => Ok(RemovalRule::RemovedOnes),
        // Alternating word: prefer removing zeros when any are present.
        (false, false) => {
            if w.count(0) > 0 {
                Ok(RemovalRule::RemovedZeros)
            } else {
                Ok(RemovalRule::RemovedOnes)
            }
        }
    }
}

fn strip_per_run(w: &Word, letter: u8, per_run: usize) -> Word {
    let mut letters = Vec::with_capacity(w.len());
    for run in w.runs().runs() {
        let keep = if run.letter == letter {
            run.length.saturating_sub(per_run)
        } else {
            run.length
        };
        letters.extend(std::iter::repeat_n(run.letter, keep));
    }
    Word::from_letters(letters)
}

/// One desubstitution step: removes one letter from every run of the
/// non-isolated letter, preferring zeros on alternating words.
pub fn desubstitute(w: &Word) -> Result<(Word, RemovalRule), DerivationError> {
    let rule = removal_rule(w)?;
    Ok((strip_per_run(w, rule.letter(), 1), rule))
}

/// Accelerated desubstitution, equal to `m` plain steps at once where `m`
/// is the shortest inner-run length of the removed letter. Removing zeros
/// strips `min(m, run length)` from every run directly; the tie-break
/// prefers zeros, so this stays the plain rule for all `m` steps. When
/// ones are removed and no run exceeds `m`, the last of the `m` steps
/// finds no 11 left and switches to the zero tie-break, so that step is
/// taken plainly.
pub fn desubstitute_accelerated(w: &Word) -> Result<(Word, RemovalRule), DerivationError> {
    let rule = removal_rule(w)?;
    let letter = rule.letter();
    let runs = w.runs();
    let m = runs.shortest_inner_run(letter).ok_or(DerivationError::NoInnerRun)?;
    if letter == 0 {
        return Ok((strip_per_run(w, 0, m), rule));
    }
    let longest =
        runs.runs().iter().filter(|r| r.letter == 1).map(|r| r.length).max().unwrap_or(0);
    if longest > m {
        Ok((strip_per_run(w, 1, m), rule))
    } else {
        let (word, _) = desubstitute(&strip_per_run(w, 1, m - 1))?;
        Ok((word, rule))
    }
}

fn is_terminal(w: &Word) -> bool {
    w.is_empty() || (w.has_double(0) && w.has_double(1))
}

fn derive_with(w: &Word, step: impl Fn(&Word) -> (Word, RemovalRule)) -> DerivationTrace {
    let mut steps = Vec::new();
    let mut current = w.clone();
    while !is_terminal(&current) {
        let (next, rule) = step(&current);
        steps.push(DerivationStep { input: current, rule, output: next.clone() });
        current = next;
    }
    DerivationTrace { steps, final_word: current }
}

/// Iterates plain desubstitution until the word is empty or contains both
/// 00 and 11, recording every step.
pub fn derive(w: &Word) -> DerivationTrace {
    derive_with(w, |cur| desubstitute(cur).expect("non-terminal word is desubstitutable"))
}

/// Like [`derive`], but each step takes the accelerated shortcut when an
/// inner run is available and falls back to a plain step otherwise.
pub fn derive_accelerated(w: &Word) -> DerivationTrace {
    derive_with(w, |cur| {
        desubstitute_accelerated(cur)
            .or_else(|_| desubstitute(cur))
            .expect("non-terminal word is desubstitutable")
    })
}

/// The derived word without the intermediate trace.
pub fn derived_word(w: &Word) -> Word {
    let mut current = w.clone();
    while !is_terminal(&current) {
        current = desubstitute_accelerated(&current)
            .or_else(|_| desubstitute(&current))
            .expect("non-terminal word is desubstitutable")
            .0;
    }
    current
}

/// True iff the derivation of `w` reaches the empty word.
pub fn is_balanced(w: &Word) -> bool {
    derived_word(w).is_empty()
}

/// True iff the derived word of `w` is diagonal.
pub fn is_tangent(w: &Word) -> bool {
    automata::is_diagonal(&derived_word(w))
}

/// True iff the derived word of `w` is non-oscillating diagonal.
pub fn is_analytic_tangent(w: &Word) -> bool {
    automata::is_non_oscillating_diagonal(&derived_word(w))
}
