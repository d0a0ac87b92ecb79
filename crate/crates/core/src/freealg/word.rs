use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of free generators `d = n + 1`, i.e. `dim V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Arity(u8);

impl Arity {
    pub fn new(d: usize) -> Result<Self> {
        match u8::try_from(d) {
            Ok(v) if v >= 1 => Ok(Arity(v)),
            _ => Err(Error::InvalidArity(d)),
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn as_u8(self) -> u8 {
        self.0
    }

    /// `d^e`, panicking on overflow.
    pub fn pow(self, e: u32) -> u64 {
        (self.0 as u64).checked_pow(e).expect("graded dimension overflows u64")
    }

    /// `d^e` for a signed degree, zero when `e < 0`.
    pub fn pow_or_zero(self, e: i64) -> u64 {
        if e < 0 {
            0
        } else {
            self.pow(e as u32)
        }
    }

    pub fn check_same(self, other: Arity) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ArityMismatch { left: self.0, right: other.0 })
        }
    }
}

impl TryFrom<usize> for Arity {
    type Error = Error;
    fn try_from(d: usize) -> Result<Self> {
        Arity::new(d)
    }
}

impl From<Arity> for usize {
    fn from(a: Arity) -> usize {
        a.get()
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A monomial `x_{a_1} ⋯ x_{a_k}` of the free algebra; the empty word is `1`.
///
/// Ordered by length, then lexicographically on letter indices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn checked(letters: Vec<u8>, d: Arity) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= d.as_u8()) {
            return Err(Error::LetterOutOfRange { letter: bad as usize, arity: d.as_u8() });
        }
        Ok(Word(letters))
    }

    /// `x_i^k`.
    pub fn power(i: u8, k: usize) -> Self {
        Word(vec![i; k])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.len() as i64
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, letter: u8) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn split_at(&self, k: usize) -> (Word, Word) {
        (Word(self.0[..k].to_vec()), Word(self.0[k..].to_vec()))
    }

    /// If `self = u · suffix`, returns `u`.
    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        self.0.strip_suffix(suffix.0.as_slice()).map(|u| Word(u.to_vec()))
    }

    /// If `self = prefix · u`, returns `u`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|u| Word(u.to_vec()))
    }

    /// Position among words of the same length in lexicographic order
    /// (first letter most significant).
    pub fn rank(&self, d: Arity) -> usize {
        self.0.iter().fold(0usize, |acc, &l| acc * d.get() + l as usize)
    }

    pub fn from_rank(mut rank: usize, len: usize, d: Arity) -> Word {
        let mut v = vec![0u8; len];
        for slot in v.iter_mut().rev() {
            *slot = (rank % d.get()) as u8;
            rank /= d.get();
        }
        Word(v)
    }

    /// All words of length `len` in lexicographic order.
    pub fn all(d: Arity, len: usize) -> impl Iterator<Item = Word> {
        let count = d.pow(len as u32) as usize;
        (0..count).map(move |r| Word::from_rank(r, len, d))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("x{l}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
