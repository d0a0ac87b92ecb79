//! The limit algebra `S = lim M_d(k)^{⊗r}` along `a ↦ 1 ⊗ a`.
//!
//! An element at level `r` is a `d^r × d^r` matrix whose rows and columns
//! are indexed by words of length `r` in lex order. Embedding prepends a
//! tensor factor, so the new letter is the most significant index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{Arity, Word};
use crate::linalg::Matrix;
use crate::qgr::QgrClass;

#[derive(Clone, Debug)]
pub struct SElement<F> {
    d: Arity,
    level: u32,
    matrix: Matrix<F>,
}

/// `Σ_i u_i · a · v_i = 1`.
#[derive(Clone, Debug)]
pub struct SimplicityWitness<F> {
    pub left: Vec<SElement<F>>,
    pub right: Vec<SElement<F>>,
}

impl<F: Field> SimplicityWitness<F> {
    pub fn reconstruct(&self, a: &SElement<F>) -> SElement<F> {
        let mut acc = SElement::zero(a.d);
        for (u, v) in self.left.iter().zip(&self.right) {
            acc = acc.add(&u.mul(a).mul(v));
        }
        acc
    }
}

/// Wire form: `{"d", "level", "entries": [[row, col, "p/q"], …]}`.
#[derive(Serialize, Deserialize)]
struct SElementJson {
    d: usize,
    level: u32,
    entries: Vec<(usize, usize, String)>,
}

impl<F: Field> SElement<F> {
    pub fn new(d: Arity, level: u32, matrix: Matrix<F>) -> Result<Self> {
        let n = d.pow(level) as usize;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "level {level} needs a {n}x{n} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(SElement { d, level, matrix })
    }

    pub fn scalar(d: Arity, c: F) -> Self {
        SElement { d, level: 0, matrix: Matrix::from_fn(1, 1, |_, _| c.clone()) }
    }

    pub fn zero(d: Arity) -> Self {
        Self::scalar(d, F::zero())
    }

    pub fn one(d: Arity) -> Self {
        Self::scalar(d, F::one())
    }

    /// `E_{u,v}` at level `|u| = |v|`.
    pub fn matrix_unit(d: Arity, u: &Word, v: &Word) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch("matrix unit indices differ in length".into()));
        }
        let level = u.len() as u32;
        let n = d.pow(level) as usize;
        let mut m = Matrix::zeros(n, n);
        m.set(u.rank(d), v.rank(d), F::one());
        Ok(SElement { d, level, matrix: m })
    }

    /// `E_{p,q}` by lex index at the given level.
    pub fn unit_at(d: Arity, level: u32, p: usize, q: usize) -> Self {
        let n = d.pow(level) as usize;
        let mut m = Matrix::zeros(n, n);
        m.set(p, q, F::one());
        SElement { d, level, matrix: m }
    }

    pub fn arity(&self) -> Arity {
        self.d
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `θ^{r'-r}(a)`, iterated `a ↦ 1 ⊗ a`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target < self.level {
            return Err(Error::LevelDecrease { from: self.level as i64, to: target as i64 });
        }
        let steps = target - self.level;
        if steps == 0 {
            return Ok(self.clone());
        }
        let outer = Matrix::identity(self.d.pow(steps) as usize);
        Ok(SElement { d: self.d, level: target, matrix: outer.kron(&self.matrix) })
    }

    /// Least-level representative.
    pub fn canonical(&self) -> Self {
        let mut cur = self.clone();
        while let Some(lower) = cur.descend() {
            cur = lower;
        }
        cur
    }

    /// The `b` with `self = 1 ⊗ b`, if any.
    fn descend(&self) -> Option<Self> {
        if self.level == 0 {
            return None;
        }
        let d = self.d.get();
        let m = self.size() / d;
        for i in 0..d {
            for j in 0..d {
                for u in 0..m {
                    for v in 0..m {
                        let x = self.matrix.get(i * m + u, j * m + v);
                        let expected_zero = i != j;
                        if expected_zero {
                            if !x.is_zero() {
                                return None;
                            }
                        } else if x != self.matrix.get(u, v) {
                            return None;
                        }
                    }
                }
            }
        }
        let b = Matrix::from_fn(m, m, |u, v| self.matrix.get(u, v).clone());
        Some(SElement { d: self.d, level: self.level - 1, matrix: b })
    }

    fn common(&self, other: &Self) -> (Matrix<F>, Matrix<F>, u32) {
        assert_eq!(self.d, other.d, "elements of different limit algebras");
        let level = self.level.max(other.level);
        let a = self.embed(level).expect("level increases").matrix;
        let b = other.embed(level).expect("level increases").matrix;
        (a, b, level)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, level) = self.common(other);
        SElement { d: self.d, level, matrix: a.try_add(&b).expect("same size") }.canonical()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, level) = self.common(other);
        SElement { d: self.d, level, matrix: a.try_sub(&b).expect("same size") }.canonical()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b, level) = self.common(other);
        SElement { d: self.d, level, matrix: a.mul(&b) }.canonical()
    }

    pub fn scale(&self, c: &F) -> Self {
        SElement { d: self.d, level: self.level, matrix: self.matrix.scale(c) }.canonical()
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// `rank(e) · d^(-r)`.
    pub fn k0_class(&self) -> Result<QgrClass> {
        if !self.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        Ok(QgrClass::new(self.d, self.matrix.rank() as u64, self.level as i64))
    }

    /// `tr(a) / d^r`; `None` when `d` vanishes in the field.
    pub fn normalized_trace(&self) -> Option<F> {
        let n = F::from_i64(self.size() as i64);
        self.matrix.trace().div(&n)
    }

    /// An `x` at the same level with `a·x·a = a`.
    ///
    /// Factor `a = B·C` with `C` the nonzero rows of `rref(a)` and `B` the
    /// pivot columns of `a`; then `x = C⁺·B⁺` for one-sided inverses.
    pub fn vn_regular_witness(&self) -> Self {
        let n = self.size();
        let (_, pivots) = self.matrix.rref();
        let k = pivots.len();
        if k == 0 {
            return SElement { d: self.d, level: self.level, matrix: Matrix::zeros(n, n) };
        }
        let all_rows: Vec<usize> = (0..n).collect();
        let b = self.matrix.submatrix(&all_rows, &pivots);
        // C has an identity block on the pivot columns
        let mut c_plus = Matrix::zeros(n, k);
        for (col, &p) in pivots.iter().enumerate() {
            c_plus.set(p, col, F::one());
        }
        // rows of B forming an invertible k×k block
        let (_, row_pivots) = b.transpose().rref();
        let cols: Vec<usize> = (0..k).collect();
        let block_inv =
            b.submatrix(&row_pivots, &cols).inverse().expect("independent rows of a full-column-rank block");
        let mut b_plus = Matrix::zeros(k, n);
        for (c, &row) in row_pivots.iter().enumerate() {
            for r in 0..k {
                b_plus.set(r, row, block_inv.get(r, c).clone());
            }
        }
        SElement { d: self.d, level: self.level, matrix: c_plus.mul(&b_plus) }
    }

    /// `u_i = E_{ip}/a_{pq}`, `v_i = E_{qi}` for a chosen nonzero `a_{pq}`.
    pub fn simplicity_witness(&self) -> Result<SimplicityWitness<F>> {
        let (p, q, apq) =
            self.matrix.nonzero_entries().next().map(|(p, q, x)| (p, q, x.clone())).ok_or(Error::ZeroElement)?;
        let inv = apq.inv().expect("nonzero");
        let n = self.size();
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for i in 0..n {
            let mut u = Self::unit_at(self.d, self.level, i, p);
            u.matrix.set(i, p, inv.clone());
            left.push(u);
            right.push(Self::unit_at(self.d, self.level, q, i));
        }
        Ok(SimplicityWitness { left, right })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries = self.matrix.nonzero_entries().map(|(r, c, x)| (r, c, x.to_string())).collect();
        serde_json::to_value(SElementJson { d: self.d.get(), level: self.level, entries }).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: SElementJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse {
            line: 0,
            column: 0,
            message: e.to_string(),
        })?;
        let d = Arity::new(raw.d)?;
        let n = d.pow(raw.level) as usize;
        let mut m = Matrix::zeros(n, n);
        for (r, c, text) in raw.entries {
            if r >= n || c >= n {
                return Err(Error::DimensionMismatch(format!("entry ({r}, {c}) outside a {n}x{n} matrix")));
            }
            let x = F::parse_ratio(&text).ok_or_else(|| Error::Parse {
                line: 0,
                column: 0,
                message: format!("bad scalar {text:?}"),
            })?;
            m.add_to(r, c, x);
        }
        Self::new(d, raw.level, m)
    }
}

impl<F: Field> PartialEq for SElement<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.d != other.d {
            return false;
        }
        let (a, b, _) = self.common(other);
        a == b
    }
}

impl<F: Field> Eq for SElement<F> {}
