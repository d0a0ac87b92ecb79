use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, SparseRow};

use super::poly::NcPoly;
use super::word::{Arity, Word};

/// `R(-b_1) ⊕ ⋯ ⊕ R(-b_s)`: generator `e_α` sits in degree `b_α`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedFreeModule {
    arity: Arity,
    shifts: Vec<i64>,
}

/// Basis monomial `w · e_coord` of a graded free module.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    pub coord: usize,
    pub word: Word,
}

impl Monomial {
    pub fn new(coord: usize, word: Word) -> Self {
        Monomial { coord, word }
    }

    pub fn generator(coord: usize) -> Self {
        Monomial { coord, word: Word::empty() }
    }

    pub fn left_mul(&self, u: &Word) -> Self {
        Monomial { coord: self.coord, word: u.concat(&self.word) }
    }
}

impl GradedFreeModule {
    pub fn new(arity: Arity, shifts: Vec<i64>) -> Self {
        GradedFreeModule { arity, shifts }
    }

    /// The ring itself, `R`.
    pub fn ring(arity: Arity) -> Self {
        Self::new(arity, vec![0])
    }

    /// `R(-shift)^rank`.
    pub fn uniform(arity: Arity, shift: i64, rank: usize) -> Self {
        Self::new(arity, vec![shift; rank])
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shift(&self, coord: usize) -> i64 {
        self.shifts[coord]
    }

    pub fn max_shift(&self) -> Option<i64> {
        self.shifts.iter().copied().max()
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.shifts.iter().copied().min()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.arity.check_same(other.arity)?;
        let mut shifts = self.shifts.clone();
        shifts.extend_from_slice(&other.shifts);
        Ok(Self::new(self.arity, shifts))
    }

    /// `F(m)`: degrees move down by `m`.
    pub fn twist(&self, m: i64) -> Self {
        Self::new(self.arity, self.shifts.iter().map(|b| b - m).collect())
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        self.shifts[m.coord] + m.word.degree()
    }

    /// `dim_k F_j = Σ_{b ≤ j} d^(j-b)`.
    pub fn graded_piece_dim(&self, j: i64) -> u64 {
        self.shifts.iter().map(|&b| self.arity.pow_or_zero(j - b)).sum()
    }

    /// Canonical basis of `F_j`, ordered by coordinate then lexicographically.
    pub fn monomial_basis(&self, j: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        for (coord, &b) in self.shifts.iter().enumerate() {
            if j >= b {
                out.extend(Word::all(self.arity, (j - b) as usize).map(|w| Monomial::new(coord, w)));
            }
        }
        out
    }

    /// Index of `m` in [`Self::monomial_basis`] of its degree.
    pub fn basis_index(&self, m: &Monomial) -> usize {
        let j = self.monomial_degree(m);
        let offset: u64 = self.shifts[..m.coord].iter().map(|&b| self.arity.pow_or_zero(j - b)).sum();
        offset as usize + m.word.rank(self.arity)
    }

    pub fn basis_monomial(&self, j: i64, mut index: usize) -> Monomial {
        for (coord, &b) in self.shifts.iter().enumerate() {
            let n = self.arity.pow_or_zero(j - b) as usize;
            if index < n {
                return Monomial::new(coord, Word::from_rank(index, (j - b) as usize, self.arity));
            }
            index -= n;
        }
        panic!("basis index out of range");
    }
}

/// An element `Σ c_m m` of a graded free module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeElement<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for FreeElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> FreeElement<F> {
    pub fn zero() -> Self {
        FreeElement { terms: BTreeMap::new() }
    }

    pub fn basis(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, F::one());
        FreeElement { terms }
    }

    pub fn unit(coord: usize) -> Self {
        Self::basis(Monomial::generator(coord))
    }

    /// `Σ_α p_α e_α`.
    pub fn from_coordinates(polys: &[NcPoly<F>]) -> Self {
        let mut out = Self::zero();
        for (coord, p) in polys.iter().enumerate() {
            for (w, c) in p.terms() {
                out.add_term(Monomial::new(coord, w.clone()), c.clone());
            }
        }
        out
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone() * c.clone());
        }
    }

    /// `self += c · u · other`.
    pub fn add_scaled_left_multiple(&mut self, other: &Self, u: &Word, c: &F) {
        for (m, v) in &other.terms {
            self.add_term(m.left_mul(u), v.clone() * c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms strictly greater than `after` (all terms for `None`).
    pub fn terms_after<'a>(&'a self, after: Option<&Monomial>) -> Box<dyn Iterator<Item = (&'a Monomial, &'a F)> + 'a> {
        use std::ops::Bound;
        match after {
            None => Box::new(self.terms.iter()),
            Some(m) => Box::new(self.terms.range((Bound::Excluded(m.clone()), Bound::Unbounded))),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Least monomial with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreeElement { terms: self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-F::one());
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &F::one());
        out
    }

    pub fn left_mul_word(&self, u: &Word) -> Self {
        FreeElement { terms: self.terms.iter().map(|(m, v)| (m.left_mul(u), v.clone())).collect() }
    }

    pub fn left_mul_poly(&self, p: &NcPoly<F>) -> Self {
        let mut out = Self::zero();
        for (u, c) in p.terms() {
            out.add_scaled_left_multiple(self, u, c);
        }
        out
    }

    /// Coordinates `p_α` with `self = Σ p_α e_α`.
    pub fn coordinates(&self, rank: usize) -> Vec<NcPoly<F>> {
        let mut out = vec![NcPoly::zero(); rank];
        for (m, c) in &self.terms {
            out[m.coord].add_term(m.word.clone(), c.clone());
        }
        out
    }

    /// Degree in `module` if homogeneous and nonzero.
    pub fn degree_in(&self, module: &GradedFreeModule) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| module.monomial_degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_in(&self, module: &GradedFreeModule) -> bool {
        self.is_zero() || self.degree_in(module).is_some()
    }

    /// Checks coordinates and letters against `module`.
    pub fn fits(&self, module: &GradedFreeModule) -> bool {
        let d = module.arity().as_u8();
        self.terms.keys().all(|m| m.coord < module.rank() && m.word.letters().iter().all(|&l| l < d))
    }

    /// Sparse coordinate vector in the canonical basis of the element's degree.
    pub fn to_sparse(&self, module: &GradedFreeModule) -> SparseRow<F> {
        self.terms.iter().map(|(m, c)| (module.basis_index(m), c.clone())).collect()
    }

    pub fn to_dense(&self, module: &GradedFreeModule, j: i64) -> Vec<F> {
        let mut v = vec![F::zero(); module.graded_piece_dim(j) as usize];
        for (m, c) in &self.terms {
            debug_assert_eq!(module.monomial_degree(m), j);
            v[module.basis_index(m)] = c.clone();
        }
        v
    }

    pub fn from_dense(module: &GradedFreeModule, j: i64, v: &[F]) -> Self {
        Self::from_terms(
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (module.basis_monomial(j, k), c.clone())),
        )
    }

    /// Reindexes coordinates through `map` (old coordinate → new coordinate).
    pub fn recoordinate(&self, map: impl Fn(usize) -> usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (Monomial::new(map(m.coord), m.word.clone()), c.clone())))
    }
}

impl<F: Field> fmt::Display for FreeElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // one entry per coordinate up to the last nonzero one, as in a relation row
        let rank = self.terms.keys().map(|m| m.coord).max().map_or(0, |c| c + 1);
        let entries: Vec<String> = self.coordinates(rank).iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", entries.join(", "))
    }
}

/// A degree-preserving homomorphism of graded free modules.
///
/// Row `α` holds the image of the source generator `e_α`; elements act as row
/// vectors, so `φ(Σ r_α e_α) = Σ r_α φ(e_α)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleMap<F> {
    source: GradedFreeModule,
    target: GradedFreeModule,
    images: Vec<FreeElement<F>>,
}

impl<F: Field> ModuleMap<F> {
    /// Validates that row `α` has degree `b_α^src` in the target (or is zero).
    pub fn new(source: GradedFreeModule, target: GradedFreeModule, images: Vec<FreeElement<F>>) -> Result<Self> {
        source.arity().check_same(target.arity())?;
        if images.len() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for a source of rank {}",
                images.len(),
                source.rank()
            )));
        }
        for (row, img) in images.iter().enumerate() {
            if !img.fits(&target) {
                return Err(Error::DimensionMismatch(format!("row {row} does not fit the target module")));
            }
            for (m, _) in img.terms() {
                if target.monomial_degree(m) != source.shift(row) {
                    return Err(Error::NotDegreePreserving { row, col: m.coord });
                }
            }
        }
        Ok(ModuleMap { source, target, images })
    }

    /// Builds the map from a matrix of polynomial entries, `entries[α][β]`.
    pub fn from_matrix(source: GradedFreeModule, target: GradedFreeModule, entries: &[Vec<NcPoly<F>>]) -> Result<Self> {
        let images = entries
            .iter()
            .map(|row| {
                if row.len() != target.rank() {
                    return Err(Error::DimensionMismatch(format!(
                        "row of length {} for target rank {}",
                        row.len(),
                        target.rank()
                    )));
                }
                Ok(FreeElement::from_coordinates(row))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    /// The map `⊕ R(-deg g_i) → F`, `e_i ↦ g_i`. Zero generators need an explicit degree.
    pub fn from_generators(target: GradedFreeModule, gens: &[FreeElement<F>], degrees: &[i64]) -> Result<Self> {
        let source = GradedFreeModule::new(target.arity(), degrees.to_vec());
        Self::new(source, target, gens.to_vec())
    }

    pub fn identity(module: &GradedFreeModule) -> Self {
        let images = (0..module.rank()).map(FreeElement::unit).collect();
        ModuleMap { source: module.clone(), target: module.clone(), images }
    }

    pub fn zero(source: &GradedFreeModule, target: &GradedFreeModule) -> Self {
        ModuleMap { source: source.clone(), target: target.clone(), images: vec![FreeElement::zero(); source.rank()] }
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn images(&self) -> &[FreeElement<F>] {
        &self.images
    }

    pub fn entry(&self, row: usize, col: usize) -> NcPoly<F> {
        self.images[row].coordinates(self.target.rank()).swap_remove(col)
    }

    pub fn apply(&self, x: &FreeElement<F>) -> FreeElement<F> {
        let mut out = FreeElement::zero();
        for (m, c) in x.terms() {
            out.add_scaled_left_multiple(&self.images[m.coord], &m.word, c);
        }
        out
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap<F>) -> Result<ModuleMap<F>> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        let images = self.images.iter().map(|x| other.apply(x)).collect();
        Ok(ModuleMap { source: self.source.clone(), target: other.target.clone(), images })
    }

    /// Largest entry degree `b_α^src - b_β^tgt` over nonzero entries.
    pub fn max_entry_degree(&self) -> Option<i64> {
        self.images
            .iter()
            .enumerate()
            .flat_map(|(row, img)| img.terms().map(move |(m, _)| self.source.shift(row) - self.target.shift(m.coord)))
            .max()
    }

    /// Images of the degree-`j` source basis as sparse target vectors.
    pub fn sparse_in_degree(&self, j: i64) -> Vec<SparseRow<F>> {
        self.source
            .monomial_basis(j)
            .iter()
            .map(|m| {
                let mut row = SparseRow::new();
                for (t, c) in self.images[m.coord].terms() {
                    let idx = self.target.basis_index(&t.left_mul(&m.word));
                    *row.entry(idx).or_insert_with(F::zero) += c.clone();
                }
                row.retain(|_, v| !v.is_zero());
                row
            })
            .collect()
    }

    /// The linear map `F^src_j → F^tgt_j` in canonical bases (columns are images).
    pub fn map_in_degree(&self, j: i64) -> Matrix<F> {
        let rows = self.target.graded_piece_dim(j) as usize;
        let cols = self.source.graded_piece_dim(j) as usize;
        let mut m = Matrix::zeros(rows, cols);
        for (c, col) in self.sparse_in_degree(j).into_iter().enumerate() {
            for (r, v) in col {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn rank_in_degree(&self, j: i64) -> usize {
        let mut ech = crate::linalg::RowEchelon::new(self.target.graded_piece_dim(j) as usize);
        for row in self.sparse_in_degree(j) {
            ech.insert(row);
        }
        ech.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn d2() -> Arity {
        Arity::new(2).unwrap()
    }

    #[test]
    fn graded_dimensions() {
        let r = GradedFreeModule::ring(d2());
        assert_eq!(r.graded_piece_dim(5), 32);
        assert_eq!(r.graded_piece_dim(-1), 0);
        let f = GradedFreeModule::new(d2(), vec![1, 2]);
        assert_eq!(f.graded_piece_dim(3), 6);
    }

    #[test]
    fn basis_enumeration() {
        let r = GradedFreeModule::ring(d2());
        let b = r.monomial_basis(2);
        let words: Vec<Vec<u8>> = b.iter().map(|m| m.word.letters().to_vec()).collect();
        assert_eq!(words, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let f = GradedFreeModule::new(d2(), vec![1]);
        assert_eq!(f.monomial_basis(1), vec![Monomial::generator(0)]);
        let g = GradedFreeModule::new(d2(), vec![1, 0, 2]);
        for j in 0..5 {
            for (k, m) in g.monomial_basis(j).iter().enumerate() {
                assert_eq!(g.basis_index(m), k);
                assert_eq!(&g.basis_monomial(j, k), m);
            }
        }
    }

    #[test]
    fn degreewise_matrix() {
        let src = GradedFreeModule::uniform(d2(), 1, 2);
        let tgt = GradedFreeModule::ring(d2());
        let phi = ModuleMap::<Rational>::from_matrix(
            src.clone(),
            tgt.clone(),
            &[vec![NcPoly::letter(0)], vec![NcPoly::letter(1)]],
        )
        .unwrap();
        assert!(phi.map_in_degree(1).is_identity());
        let m0 = phi.map_in_degree(0);
        assert_eq!((m0.rows(), m0.cols()), (1, 0));
        assert!(ModuleMap::<Rational>::zero(&src, &tgt).map_in_degree(3).is_zero());
    }

    #[test]
    fn rejects_inhomogeneous_entries() {
        let src = GradedFreeModule::uniform(d2(), 1, 1);
        let tgt = GradedFreeModule::ring(d2());
        let bad = ModuleMap::<Rational>::from_matrix(src, tgt, &[vec![NcPoly::word(Word::new(vec![0, 0]))]]);
        assert!(matches!(bad, Err(Error::NotDegreePreserving { .. })));
    }
}
