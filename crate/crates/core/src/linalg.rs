//! Dense and incremental sparse exact linear algebra.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// A dense row-major matrix over a field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> =
                self.data[r * self.cols..(r + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplication of matrices whose shapes are known to agree.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix shapes agree")
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`; row index `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, j, a) in self.nonzero_entries() {
            for (k, l, b) in other.nonzero_entries() {
                out.set(i * other.rows + k, j * other.cols + l, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i).clone();
        }
        acc
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c).clone() * inv.clone();
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pv = m.get(row, c).clone();
                    if !pv.is_zero() {
                        let v = m.get(r, c).clone() - factor.clone() * pv;
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = RowEchelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert_dense(self.row(r));
        }
        ech.rank()
    }

    /// Basis of the right null space `{v : self · v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red.get(r, n + c).clone()))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }
}

/// Sparse vector keyed by column.
pub type SparseRow<F> = BTreeMap<usize, F>;

/// Incrementally built row echelon basis of a subspace of `F^width`.
///
/// Pivot rows are normalized to leading coefficient one and stay sparse.
#[derive(Clone, Debug)]
pub struct RowEchelon<F> {
    width: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> RowEchelon<F> {
    pub fn new(width: usize) -> Self {
        RowEchelon { width, pivots: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0;
        loop {
            let next = row.range(cursor..).map(|(&c, _)| c).find(|c| self.pivots.contains_key(c));
            let Some(c) = next else { break };
            let factor = row[&c].clone();
            for (&k, pv) in &self.pivots[&c] {
                let entry = row.entry(k).or_insert_with(F::zero);
                *entry -= factor.clone() * pv.clone();
                if entry.is_zero() {
                    row.remove(&k);
                }
            }
            cursor = c + 1;
        }
        row
    }

    /// Adds `row` to the span; returns whether it was independent.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let reduced = self.reduce(row);
        let Some((&lead, lv)) = reduced.iter().next() else {
            return false;
        };
        debug_assert!(lead < self.width);
        let inv = lv.inv().expect("nonzero");
        let normalized = reduced.into_iter().map(|(k, v)| (k, v * inv.clone())).collect();
        self.pivots.insert(lead, normalized);
        true
    }

    pub fn insert_dense(&mut self, row: &[F]) -> bool {
        let sparse = row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k, v.clone())).collect();
        self.insert(sparse)
    }

    pub fn contains(&self, row: SparseRow<F>) -> bool {
        self.reduce(row).is_empty()
    }
}
