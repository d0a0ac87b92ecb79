use serde::Serialize;

use crate::af_s::SElement;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{Arity, Word};
use crate::linalg::Matrix;

use super::QgrObject;

/// `O(-m)^rank`.
///
/// Its degree-`j` piece has basis `(w, c)` with `|w| = j - m` and `c < rank`,
/// indexed by `rank(w)·rank + c`, so raising a degree prepends a letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwistedFree {
    pub d: Arity,
    pub m: i64,
    pub rank: usize,
}

impl TwistedFree {
    pub fn new(d: Arity, m: i64, rank: usize) -> Self {
        TwistedFree { d, m, rank }
    }

    /// `dim` of the degree-`j` piece.
    pub fn dim_at(&self, j: i64) -> usize {
        self.rank * self.d.pow_or_zero(j - self.m) as usize
    }

    pub fn index(&self, w: &Word, c: usize) -> usize {
        w.rank(self.d) * self.rank + c
    }

    pub fn object(&self) -> QgrObject {
        QgrObject::from_witness(self.d, self.m, self.rank as u64)
    }
}

/// A morphism `O(-p)^A → O(-q)^B` in `qgr R`, given by the linear map it
/// induces on generators in some degree `j ≥ p, q`.
///
/// The matrix has size `B·d^(j-q) × A·d^(j-p)`; raising the degree applies
/// `1 ⊗ -`.
#[derive(Clone, Debug)]
pub struct QgrMorphism<F> {
    source: TwistedFree,
    target: TwistedFree,
    degree: i64,
    matrix: Matrix<F>,
}

impl<F: Field> QgrMorphism<F> {
    pub fn new(source: TwistedFree, target: TwistedFree, degree: i64, matrix: Matrix<F>) -> Result<Self> {
        if source.d != target.d {
            return Err(Error::ArityMismatch { left: source.d.as_u8(), right: target.d.as_u8() });
        }
        if degree < source.m || degree < target.m {
            return Err(Error::DimensionMismatch(format!("degree {degree} lies below a generator")));
        }
        if matrix.rows() != target.dim_at(degree) || matrix.cols() != source.dim_at(degree) {
            return Err(Error::DimensionMismatch(format!(
                "a morphism at degree {degree} needs a {}x{} matrix",
                target.dim_at(degree),
                source.dim_at(degree)
            )));
        }
        Ok(QgrMorphism { source, target, degree, matrix })
    }

    pub fn identity(obj: TwistedFree) -> Self {
        QgrMorphism { source: obj, target: obj, degree: obj.m, matrix: Matrix::identity(obj.rank) }
    }

    pub fn source(&self) -> TwistedFree {
        self.source
    }

    pub fn target(&self) -> TwistedFree {
        self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn at_degree(&self, j: i64) -> Result<Self> {
        if j < self.degree {
            return Err(Error::LevelDecrease { from: self.degree, to: j });
        }
        let outer = Matrix::identity(self.source.d.pow((j - self.degree) as u32) as usize);
        Ok(QgrMorphism { source: self.source, target: self.target, degree: j, matrix: outer.kron(&self.matrix) })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &QgrMorphism<F>) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch("morphisms do not compose".into()));
        }
        let j = self.degree.max(other.degree);
        let a = self.at_degree(j)?;
        let b = other.at_degree(j)?;
        Ok(QgrMorphism { source: self.source, target: other.target, degree: j, matrix: b.matrix.mul(&a.matrix) })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix.is_identity()
    }

    /// The `(b, a)` entry as an element of `S`, at level `degree - m` (common twist only).
    pub fn entry(&self, b: usize, a: usize) -> Result<SElement<F>> {
        if self.source.m != self.target.m {
            return Err(Error::DimensionMismatch("entries over S need a common twist".into()));
        }
        let level = (self.degree - self.source.m) as u32;
        let n = self.source.d.pow(level) as usize;
        let (sa, sb) = (self.source.rank, self.target.rank);
        let block = Matrix::from_fn(n, n, |u, v| self.matrix.get(u * sb + b, v * sa + a).clone());
        SElement::new(self.source.d, level, block)
    }
}

impl<F: Field> PartialEq for QgrMorphism<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        let j = self.degree.max(other.degree);
        self.at_degree(j).expect("raise").matrix == other.at_degree(j).expect("raise").matrix
    }
}

/// `Hom(F, G)` at level `r`: `B×A` matrices over `S_r`, after writing
/// `F ≅ O(-m)^A` and `G ≅ O(-m)^B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QgrMorphismSpace {
    pub source: TwistedFree,
    pub target: TwistedFree,
    pub level: u32,
}

impl QgrMorphismSpace {
    pub fn degree(&self) -> i64 {
        self.source.m + self.level as i64
    }

    pub fn dimension(&self) -> u64 {
        (self.source.rank * self.target.rank) as u64 * self.source.d.pow(2 * self.level)
    }

    /// The morphism with a single nonzero S-entry `E_{u,v}` at position `(b, a)`.
    pub fn basis_element<F: Field>(&self, b: usize, a: usize, u: usize, v: usize) -> QgrMorphism<F> {
        let j = self.degree();
        let mut m = Matrix::zeros(self.target.dim_at(j), self.source.dim_at(j));
        m.set(u * self.target.rank + b, v * self.source.rank + a, F::one());
        QgrMorphism { source: self.source, target: self.target, degree: j, matrix: m }
    }

    /// Assembles a morphism from its `B×A` S-entries at this level.
    pub fn from_entries<F: Field>(&self, entries: &[Vec<SElement<F>>]) -> Result<QgrMorphism<F>> {
        let j = self.degree();
        let n = self.source.d.pow(self.level) as usize;
        let (sa, sb) = (self.source.rank, self.target.rank);
        if entries.len() != sb || entries.iter().any(|row| row.len() != sa) {
            return Err(Error::DimensionMismatch(format!("expected {sb}x{sa} entries")));
        }
        let mut m = Matrix::zeros(sb * n, sa * n);
        for (b, row) in entries.iter().enumerate() {
            for (a, s) in row.iter().enumerate() {
                let s = s.embed(self.level)?;
                for (u, v, x) in s.matrix().nonzero_entries() {
                    m.set(u * sb + b, v * sa + a, x.clone());
                }
            }
        }
        QgrMorphism::new(self.source, self.target, j, m)
    }

    /// The unital copy of `M_{d^r}(k)` in `End F` (source equal to target):
    /// `E_{u,v} ⊗ I_A`.
    pub fn matrix_units<F: Field>(&self) -> Vec<Vec<QgrMorphism<F>>> {
        let n = self.source.d.pow(self.level) as usize;
        (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| {
                        let mut acc =
                            Matrix::zeros(self.target.dim_at(self.degree()), self.source.dim_at(self.degree()));
                        for a in 0..self.source.rank.min(self.target.rank) {
                            acc.set(u * self.target.rank + a, v * self.source.rank + a, F::one());
                        }
                        QgrMorphism { source: self.source, target: self.target, degree: self.degree(), matrix: acc }
                    })
                    .collect()
            })
            .collect()
    }
}

/// `Hom(F, G)` at level `r`, both rewritten at their common twist.
pub fn hom_space(f: &QgrObject, g: &QgrObject, level: u32) -> Result<QgrMorphismSpace> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch { left: f.arity().as_u8(), right: g.arity().as_u8() });
    }
    let m = f.class().common_twist(&g.class());
    let a = f.decompose(-m)? as usize;
    let b = g.decompose(-m)? as usize;
    let d = f.arity();
    Ok(QgrMorphismSpace { source: TwistedFree::new(d, m, a), target: TwistedFree::new(d, m, b), level })
}

/// The mutually inverse pair `O → O(-1)^d → O`, both given at degree 1 by
/// `x_a ↦ e_a` and `e_a ↦ x_a`.
pub fn structure_sheaf_splitting<F: Field>(d: Arity) -> (QgrMorphism<F>, QgrMorphism<F>) {
    let o = TwistedFree::new(d, 0, 1);
    let o1 = TwistedFree::new(d, 1, d.get());
    let n = d.get();
    // source basis x_a at index a; target basis (∅, a) at index a
    let fwd = Matrix::from_fn(n, n, |r, c| if r == c { F::one() } else { F::zero() });
    let there = QgrMorphism::new(o, o1, 1, fwd.clone()).expect("sizes match");
    let back = QgrMorphism::new(o1, o, 1, fwd).expect("sizes match");
    (there, back)
}
