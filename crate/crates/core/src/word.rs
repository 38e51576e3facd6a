//! Binary words over the alphabet {0, 1} and their basic combinatorics:
//! run decompositions, factor sets, and k-balance.
//!
//! The letter 0 is read as a horizontal step (crossing a vertical grid
//! line) and 1 as a vertical step throughout the crate.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// A finite word over {0, 1}, stored as one letter per byte.
///
/// Ordering is lexicographic with 0 < 1 (a proper prefix sorts before its
/// extensions), so `BTreeSet<Word>` iterates in the output order used by
/// the enumeration routines.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseWordError {
    #[error("invalid character at position {position}: expected '0' or '1'")]
    InvalidCharacter { position: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("factor length {requested} out of range for word of length {word_len}")]
pub struct LengthOutOfRange {
    pub requested: usize,
    pub word_len: usize,
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from raw letters, each of which must be 0 or 1.
    pub fn from_letters<I: IntoIterator<Item = u8>>(letters: I) -> Self {
        let letters: Vec<u8> = letters.into_iter().collect();
        debug_assert!(letters.iter().all(|&b| b <= 1));
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn letter(&self, i: usize) -> u8 {
        self.0[i]
    }

    /// The contiguous factor starting at `start` of length `len`.
    pub fn factor_at(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    /// Concatenation of `self` and `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self` with `letter` appended.
    pub fn push(&self, letter: u8) -> Word {
        debug_assert!(letter <= 1);
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    /// `letter` followed by `self`.
    pub fn prepend(&self, letter: u8) -> Word {
        debug_assert!(letter <= 1);
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Letterwise exchange of 0 and 1.
    pub fn complemented(&self) -> Word {
        Word(self.0.iter().map(|&b| 1 - b).collect())
    }

    pub fn count(&self, letter: u8) -> usize {
        self.0.iter().filter(|&&b| b == letter).count()
    }

    /// True iff the word contains the factor `letter letter`.
    pub fn has_double(&self, letter: u8) -> bool {
        self.0.windows(2).any(|w| w[0] == letter && w[1] == letter)
    }

    /// Maximal-run decomposition, left to right.
    pub fn runs(&self) -> RunDecomposition {
        let mut runs = Vec::new();
        for &b in &self.0 {
            match runs.last_mut() {
                Some(Run { letter, length }) if *letter == b => *length += 1,
                _ => runs.push(Run { letter: b, length: 1 }),
            }
        }
        RunDecomposition { runs }
    }

    /// The set of distinct factors of length `n`.
    pub fn factors(&self, n: usize) -> Result<BTreeSet<Word>, LengthOutOfRange> {
        if n > self.len() {
            return Err(LengthOutOfRange { requested: n, word_len: self.len() });
        }
        Ok((0..=self.len() - n).map(|i| self.factor_at(i, n)).collect())
    }

    /// True iff any two equal-length factors have 1-counts differing by at
    /// most `k`. Checked per window length with running prefix sums.
    pub fn is_k_balanced(&self, k: u32) -> bool {
        assert!(k >= 1, "balance order must be at least 1");
        let n = self.len();
        let mut prefix = vec![0usize; n + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i] + self.0[i] as usize;
        }
        for m in 1..=n {
            let mut min = usize::MAX;
            let mut max = 0usize;
            for i in 0..=n - m {
                let ones = prefix[i + m] - prefix[i];
                min = min.min(ones);
                max = max.max(ones);
            }
            if max - min > k as usize {
                return false;
            }
        }
        true
    }
}

/// A maximal run of one repeated letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub letter: u8,
    pub length: usize,
}

/// Ordered maximal runs of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecomposition {
    runs: Vec<Run>,
}

impl RunDecomposition {
    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Rebuilds the decomposed word.
    pub fn word(&self) -> Word {
        let mut letters = Vec::new();
        for run in &self.runs {
            letters.extend(std::iter::repeat_n(run.letter, run.length));
        }
        Word(letters)
    }

    /// Shortest length among runs of `letter` that touch neither end of
    /// the word.
    pub fn shortest_inner_run(&self, letter: u8) -> Option<usize> {
        if self.runs.len() < 3 {
            return None;
        }
        self.runs[1..self.runs.len() - 1]
            .iter()
            .filter(|r| r.letter == letter)
            .map(|r| r.length)
            .min()
    }
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::with_capacity(s.len());
        for (position, c) in s.chars().enumerate() {
            match c {
                '0' => letters.push(0),
                '1' => letters.push(1),
                _ => return Err(ParseWordError::InvalidCharacter { position }),
            }
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// All 2^n words of length `n` in lexicographic order.
pub fn all_words(n: usize) -> impl Iterator<Item = Word> {
    assert!(n < usize::BITS as usize - 1, "length too large for exhaustive iteration");
    (0..1usize << n).map(move |bits| {
        Word::from_letters((0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8))
    })
}
