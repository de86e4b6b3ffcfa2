//! Free group on countably many generators `g2, g3, ...`.
//!
//! Words are stored run-length encoded as syllables `g_n^e`; adjacent
//! syllables always have distinct generators and no exponent is zero, so the
//! representation of each group element is unique.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Smallest generator index; generators are numbered like the circles.
pub const FIRST_GENERATOR: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index must be >= 2, got {0}")]
    InvalidIndex(u32),
    #[error("malformed word literal `{0}`")]
    Syntax(String),
    #[error("exponent overflow")]
    Overflow,
}

/// A single signed letter `g_n` or `g_n^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: u32, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter::new(self.index, !self.inverse)
    }

    fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub index: u32,
    pub exponent: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: u32) -> Result<Self, WordError> {
        Word::from_syllables([(index, 1)])
    }

    /// Reduces an arbitrary sequence of `(index, exponent)` pairs.
    pub fn from_syllables<I>(raw: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = (u32, i64)>,
    {
        let mut word = Word::identity();
        for (index, exponent) in raw {
            if index < FIRST_GENERATOR {
                return Err(WordError::InvalidIndex(index));
            }
            word.push(index, exponent)?;
        }
        Ok(word)
    }

    fn push(&mut self, index: u32, exponent: i64) -> Result<(), WordError> {
        if exponent == 0 {
            return Ok(());
        }
        match self.syllables.last_mut() {
            Some(last) if last.index == index => {
                last.exponent = last.exponent.checked_add(exponent).ok_or(WordError::Overflow)?;
                if last.exponent == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(Syllable { index, exponent }),
        }
        Ok(())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters, `sum |e|`.
    pub fn letter_count(&self) -> u64 {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    /// Expands into individual letters.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.syllables.iter().flat_map(|s| {
            let letter = Letter::new(s.index, s.exponent < 0);
            std::iter::repeat_n(letter, s.exponent.unsigned_abs() as usize)
        })
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.index, s.exponent).expect("exponent overflow in product");
        }
        out
    }

    pub fn invert(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    index: s.index,
                    exponent: -s.exponent,
                })
                .collect(),
        }
    }

    /// Largest generator index used, if any.
    pub fn max_index(&self) -> Option<u32> {
        self.syllables.iter().map(|s| s.index).max()
    }
}

/// Normal form of a raw letter sequence by stack-based cancellation.
pub fn reduce(raw: &[Letter]) -> Result<Word, WordError> {
    Word::from_syllables(raw.iter().map(|l| (l.index, l.sign())))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if s.exponent == 1 {
                write!(f, "g{}", s.index)?;
            } else {
                write!(f, "g{}^{}", s.index, s.exponent)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Parses `g2 g3^-1 g2^4`; `1` is the identity. Tokens are reduced as
    /// they are read, so `g2 g2^-1` parses to the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut raw = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let body = token
                .strip_prefix('g')
                .ok_or_else(|| WordError::Syntax(token.to_string()))?;
            let (index, exponent) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|_| WordError::Syntax(token.to_string()))?),
                None => (body, 1),
            };
            let index = index.parse::<u32>().map_err(|_| WordError::Syntax(token.to_string()))?;
            raw.push((index, exponent));
        }
        Word::from_syllables(raw)
    }
}
