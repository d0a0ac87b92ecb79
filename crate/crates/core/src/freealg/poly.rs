use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;

use super::word::Word;

/// A noncommutative polynomial: finite linear combination of words.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly<F> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> Default for NcPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> NcPoly<F> {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn monomial(w: Word, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { terms }
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, F::one())
    }

    pub fn letter(i: u8) -> Self {
        Self::word(Word::letter(i))
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The common length of all words, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Word::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.terms.keys().flat_map(|w| w.letters().iter().copied()).max()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, v)| (w.clone(), v.clone() * c.clone())).collect() }
    }

    /// `u · self`.
    pub fn left_mul_word(&self, u: &Word) -> Self {
        NcPoly { terms: self.terms.iter().map(|(w, v)| (u.concat(w), v.clone())).collect() }
    }

    /// Image under the anti-automorphism reversing every word.
    pub fn reversed(&self) -> Self {
        NcPoly { terms: self.terms.iter().map(|(w, v)| (w.reversed(), v.clone())).collect() }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// Prints in the input grammar, e.g. `x0 x1 - 1/2 x1 x0 + 3`.
impl<F: Field> fmt::Display for NcPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_display();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag} {w}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Add for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn add(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn sub(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Neg for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn neg(self) -> NcPoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Mul for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn mul(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        self.multiply(rhs)
    }
}
