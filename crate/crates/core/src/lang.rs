//! The four factorial languages under study, exhaustive prefix-extension
//! enumeration, complexity profiles, bispecial classification, and the
//! inclusion audit between the languages.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::automata;
use crate::derivation;
use crate::word::{all_words, Word};

/// Default cap on enumeration length; guards against accidental
/// exponential blowups, not against patient callers.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// One of the studied languages: balanced words, analytic tangent words,
/// tangent words, or k-balanced words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Language {
    Balanced,
    Analytic,
    Tangent,
    KBalanced(u32),
}

impl Serialize for Language {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Language {
    pub fn contains(&self, w: &Word) -> bool {
        match self {
            Language::Balanced => derivation::is_balanced(w),
            Language::Analytic => derivation::is_analytic_tangent(w),
            Language::Tangent => derivation::is_tangent(w),
            Language::KBalanced(k) => w.is_k_balanced(*k),
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Language::Balanced => write!(f, "balanced"),
            Language::Analytic => write!(f, "analytic"),
            Language::Tangent => write!(f, "tangent"),
            Language::KBalanced(k) => write!(f, "{k}balanced"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown language (expected balanced, analytic, tangent, or e.g. 2balanced)")]
pub struct ParseLanguageError;

impl FromStr for Language {
    type Err = ParseLanguageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "balanced" => Ok(Language::Balanced),
            "analytic" => Ok(Language::Analytic),
            "tangent" => Ok(Language::Tangent),
            _ => {
                let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
                let rest = &s[digits.len()..];
                match (digits.parse::<u32>(), rest) {
                    (Ok(k), "balanced") if k >= 1 => Ok(Language::KBalanced(k)),
                    _ => Err(ParseLanguageError),
                }
            }
        }
    }
}

/// Extension behaviour of a word inside a language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BispecialClass {
    NotBispecial,
    Weak,
    Ordinary,
    Strong,
}

/// All bispecial words of one length in one language, grouped by class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BispecialCensus {
    pub language: Language,
    pub length: usize,
    pub weak: Vec<Word>,
    pub ordinary: Vec<Word>,
    pub strong: Vec<Word>,
}

impl BispecialCensus {
    pub fn wb(&self) -> usize {
        self.weak.len()
    }

    pub fn sb(&self) -> usize {
        self.strong.len()
    }
}

/// Factor-complexity values p_0..p_N for one language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub language: Language,
    pub p: Vec<u64>,
}

impl ComplexityProfile {
    /// First differences s_n = p_{n+1} - p_n.
    pub fn first_differences(&self) -> Vec<u64> {
        self.p.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// A strictness witness for one inclusion: the lexicographically least
/// shortest word of the larger language missing from the smaller one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionWitness {
    pub larger: Language,
    pub smaller: Language,
    pub word: Word,
}

/// Result of verifying the chain balanced < analytic < tangent < 2-balanced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionAudit {
    pub max_len: usize,
    pub witnesses: Vec<InclusionWitness>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabError {
    #[error("requested length {requested} exceeds enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("inclusion {smaller} into {larger} fails at {word}")]
    ChainViolation { smaller: Language, larger: Language, word: Word },
}

/// Enumeration workbench carrying the configured length cap.
#[derive(Debug, Clone)]
pub struct LanguageLab {
    cap: usize,
}

impl Default for LanguageLab {
    fn default() -> Self {
        LanguageLab { cap: DEFAULT_ENUMERATION_CAP }
    }
}

impl LanguageLab {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: usize) -> Self {
        LanguageLab { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_cap(&self, requested: usize) -> Result<(), LabError> {
        if requested > self.cap {
            return Err(LabError::CapExceeded { requested, cap: self.cap });
        }
        Ok(())
    }

    /// All members of length `n` in lexicographic order, grown by prefix
    /// extension; sound because every language here is factorial.
    pub fn enumerate(&self, lang: Language, n: usize) -> Result<Vec<Word>, LabError> {
        self.check_cap(n)?;
        Ok(self.levels(lang, n).pop().unwrap())
    }

    /// Member lists for every length 0..=n, each lexicographically sorted.
    fn levels(&self, lang: Language, n: usize) -> Vec<Vec<Word>> {
        let mut levels = Vec::with_capacity(n + 1);
        let empty = Word::empty();
        debug_assert!(lang.contains(&empty));
        levels.push(vec![empty]);
        for _ in 0..n {
            let mut next = Vec::new();
            for member in levels.last().unwrap() {
                for letter in [0, 1] {
                    let candidate = member.push(letter);
                    if lang.contains(&candidate) {
                        next.push(candidate);
                    }
                }
            }
            levels.push(next);
        }
        levels
    }

    /// Complexity values p_0..p_{n_max} by exhaustive enumeration.
    pub fn complexity_profile(&self, lang: Language, n_max: usize) -> Result<ComplexityProfile, LabError> {
        self.check_cap(n_max)?;
        let p = self
            .levels(lang, n_max)
            .iter()
            .map(|level| level.len() as u64)
            .collect();
        Ok(ComplexityProfile { language: lang, p })
    }

    /// Classifies every member of length `n`; classification looks at
    /// extensions of length n + 2, hence the tighter cap.
    pub fn bispecial_census(&self, lang: Language, n: usize) -> Result<BispecialCensus, LabError> {
        if n + 2 > self.cap {
            return Err(LabError::CapExceeded { requested: n + 2, cap: self.cap });
        }
        let mut census = BispecialCensus {
            language: lang,
            length: n,
            weak: Vec::new(),
            ordinary: Vec::new(),
            strong: Vec::new(),
        };
        for member in self.enumerate(lang, n)? {
            match bispecial_class(lang, &member) {
                BispecialClass::NotBispecial => {}
                BispecialClass::Weak => census.weak.push(member),
                BispecialClass::Ordinary => census.ordinary.push(member),
                BispecialClass::Strong => census.strong.push(member),
            }
        }
        Ok(census)
    }

    /// Thin-diagonal members of length `n` with their bispecial classes,
    /// for inspecting how the class depends on length parity.
    pub fn thin_diagonal_classes(
        &self,
        lang: Language,
        n: usize,
    ) -> Result<Vec<(Word, BispecialClass)>, LabError> {
        if n + 2 > self.cap {
            return Err(LabError::CapExceeded { requested: n + 2, cap: self.cap });
        }
        Ok(self
            .enumerate(lang, n)?
            .into_iter()
            .filter(|w| automata::is_thin_diagonal(w))
            .map(|w| {
                let class = bispecial_class(lang, &w);
                (w, class)
            })
            .collect())
    }

    /// Verifies the inclusion chain on every word up to length `max_len`
    /// and reports one strictness witness per adjacent pair.
    pub fn inclusion_audit(&self, max_len: usize) -> Result<InclusionAudit, LabError> {
        let chain = [
            Language::Balanced,
            Language::Analytic,
            Language::Tangent,
            Language::KBalanced(2),
        ];
        self.check_cap(max_len)?;
        for n in 0..=max_len {
            for word in all_words(n) {
                for pair in chain.windows(2) {
                    if pair[0].contains(&word) && !pair[1].contains(&word) {
                        return Err(LabError::ChainViolation {
                            smaller: pair[0],
                            larger: pair[1],
                            word,
                        });
                    }
                }
            }
        }
        let mut witnesses = Vec::new();
        for pair in chain.windows(2) {
            if let Some(word) = self.strictness_witness(pair[1], pair[0], max_len)? {
                witnesses.push(InclusionWitness { larger: pair[1], smaller: pair[0], word });
            }
        }
        Ok(InclusionAudit { max_len, witnesses })
    }

    /// Lexicographically least shortest member of `larger` outside
    /// `smaller`, searched up to `max_len`.
    fn strictness_witness(
        &self,
        larger: Language,
        smaller: Language,
        max_len: usize,
    ) -> Result<Option<Word>, LabError> {
        for n in 0..=max_len {
            for word in self.enumerate(larger, n)? {
                if !smaller.contains(&word) {
                    return Ok(Some(word));
                }
            }
        }
        Ok(None)
    }
}

/// Classifies `w` by its extension behaviour in `lang`: bispecial words
/// (all one-letter extensions on both sides stay in the language) are
/// weak, ordinary, or strong as 2, 3, or 4 of the two-sided extensions
/// `a w b` are members.
pub fn bispecial_class(lang: Language, w: &Word) -> BispecialClass {
    let one_sided = [w.prepend(0), w.prepend(1), w.push(0), w.push(1)];
    if !one_sided.iter().all(|x| lang.contains(x)) {
        return BispecialClass::NotBispecial;
    }
    let mut count = 0;
    for a in [0, 1] {
        for b in [0, 1] {
            if lang.contains(&w.prepend(a).push(b)) {
                count += 1;
            }
        }
    }
    match count {
        2 => BispecialClass::Weak,
        3 => BispecialClass::Ordinary,
        4 => BispecialClass::Strong,
        // One-sided extensions of members of these languages always admit
        // a second letter on the other side.
        _ => unreachable!("bispecial word {w} has {count} two-sided extensions"),
    }
}

/// Smallest split position i such that both halves of `w` are balanced,
/// if any. Position 0 splits off the empty prefix.
pub fn splits_into_two_balanced(w: &Word) -> Option<usize> {
    (0..=w.len()).find(|&i| {
        derivation::is_balanced(&w.factor_at(0, i)) && derivation::is_balanced(&w.factor_at(i, w.len() - i))
    })
}
