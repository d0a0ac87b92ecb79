//! Finitely presented graded left modules `M = coker(F_1 → F_0)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{Arity, FreeElement, GradedFreeModule, ModuleMap, Monomial, Word};
use crate::linalg::{Matrix, RowEchelon, SparseRow};
use crate::qgr::class::{signed_power_sum, QgrClass};
use crate::submodules::{kernel, span_dim_in_degree, weak_basis_with_degrees, FreeBasis};

/// A finitely presented graded module together with a free basis of its
/// relation submodule `im(F_1 → F_0)`.
#[derive(Clone, Debug)]
pub struct FpModule<F> {
    presentation: ModuleMap<F>,
    relations: FreeBasis<F>,
}

/// Normal-form monomials spanning `M_j`, with their positions.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub degree: i64,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// `M_{≥i} ≅ R(-i)^{t_i}` for all `i ≥ i0`, with `t_{i+1} = d·t_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableProfile {
    pub arity: Arity,
    pub i0: i64,
    pub t_i0: u64,
    /// `max(generator shifts, relation-basis degrees)`; freeness above it is a scalar splitting.
    pub presentation_bound: i64,
}

impl StableProfile {
    /// `t_i`, for `i ≥ i0`.
    pub fn t(&self, i: i64) -> Option<u64> {
        (i >= self.i0).then(|| self.t_i0 * self.arity.pow((i - self.i0) as u32))
    }

    /// `t_{i0}, …, t_{i0+n-1}`.
    pub fn terms(&self, n: usize) -> Vec<u64> {
        (0..n as i64).map(|k| self.t(self.i0 + k).expect("i ≥ i0")).collect()
    }

    pub fn class(&self) -> QgrClass {
        QgrClass::new(self.arity, self.t_i0, self.i0)
    }
}

impl<F: Field> FpModule<F> {
    pub fn from_presentation(presentation: ModuleMap<F>) -> Self {
        let relations =
            weak_basis_with_degrees(presentation.target(), presentation.images(), presentation.source().shifts());
        FpModule { presentation, relations }
    }

    /// `F_0 / (R·rows)`; every row must be homogeneous.
    pub fn from_relations(generators: GradedFreeModule, rows: Vec<FreeElement<F>>) -> Result<Self> {
        let mut shifts = Vec::with_capacity(rows.len());
        for (k, row) in rows.iter().enumerate() {
            if !row.fits(&generators) {
                return Err(Error::DimensionMismatch(format!("relation {k} does not fit the generators")));
            }
            match row.degree_in(&generators) {
                Some(deg) => shifts.push(deg),
                None if row.is_zero() => shifts.push(generators.min_shift().unwrap_or(0)),
                None => return Err(Error::RowNotHomogeneous { row: k }),
            }
        }
        let source = GradedFreeModule::new(generators.arity(), shifts);
        Ok(Self::from_presentation(ModuleMap::new(source, generators, rows)?))
    }

    pub fn free(generators: GradedFreeModule) -> Self {
        Self::from_relations(generators, Vec::new()).expect("no relations")
    }

    /// `R`.
    pub fn ring(d: Arity) -> Self {
        Self::free(GradedFreeModule::ring(d))
    }

    /// `R/R_{≥m}`; `m = 1` gives the trivial module `k`.
    pub fn ring_mod_power(d: Arity, m: usize) -> Self {
        let rows = Word::all(d, m).map(|w| FreeElement::basis(Monomial::new(0, w))).collect();
        Self::from_relations(GradedFreeModule::ring(d), rows).expect("homogeneous")
    }

    pub fn trivial(d: Arity) -> Self {
        Self::ring_mod_power(d, 1)
    }

    pub fn presentation(&self) -> &ModuleMap<F> {
        &self.presentation
    }

    pub fn generators(&self) -> &GradedFreeModule {
        self.presentation.target()
    }

    pub fn relations(&self) -> &[FreeElement<F>] {
        self.presentation.images()
    }

    pub fn relation_basis(&self) -> &FreeBasis<F> {
        &self.relations
    }

    pub fn arity(&self) -> Arity {
        self.generators().arity()
    }

    /// `dim_k M_j`.
    pub fn hilbert(&self, j: i64) -> u64 {
        self.generators().graded_piece_dim(j) - self.relations.dim_in_degree(j)
    }

    /// `dim_k M_j` by degreewise rank of the relation span, without the weak algorithm.
    pub fn hilbert_by_rank(&self, j: i64) -> u64 {
        self.generators().graded_piece_dim(j) - span_dim_in_degree(self.generators(), self.relations(), j) as u64
    }

    pub fn degree_basis(&self, j: i64) -> DegreeBasis {
        let monomials: Vec<Monomial> = self
            .generators()
            .monomial_basis(j)
            .into_iter()
            .filter(|m| self.relations.reduce(&FreeElement::basis(m.clone())) == FreeElement::basis(m.clone()))
            .collect();
        let index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        DegreeBasis { degree: j, monomials, index }
    }

    /// Normal form of a homogeneous element of `F_0`.
    pub fn normal_form(&self, x: &FreeElement<F>) -> FreeElement<F> {
        self.relations.reduce(x)
    }

    pub fn is_zero_element(&self, x: &FreeElement<F>) -> bool {
        self.relations.contains(x)
    }

    /// Coordinates of the class of `x` in `basis`.
    pub fn coordinates(&self, x: &FreeElement<F>, basis: &DegreeBasis) -> Vec<F> {
        let mut v = vec![F::zero(); basis.len()];
        for (m, c) in self.normal_form(x).terms() {
            let k = basis.position(m).expect("normal form lies in the standard basis of its degree");
            v[k] = c.clone();
        }
        v
    }

    pub fn element_from_coordinates(basis: &DegreeBasis, v: &[F]) -> FreeElement<F> {
        FreeElement::from_terms(basis.monomials.iter().cloned().zip(v.iter().cloned()))
    }

    /// Matrix of `m ↦ u·m` from `M_j` to `M_{j+|u|}`.
    pub fn word_action(&self, u: &Word, source: &DegreeBasis, target: &DegreeBasis) -> Matrix<F> {
        let mut mat = Matrix::zeros(target.len(), source.len());
        for (c, m) in source.monomials.iter().enumerate() {
            let img = self.coordinates(&FreeElement::basis(m.left_mul(u)), target);
            for (r, v) in img.into_iter().enumerate() {
                mat.set(r, c, v);
            }
        }
        mat
    }

    /// `V ⊗ M_j → M_{j+1}`, columns ordered by (letter, basis index).
    pub fn multiplication_map(&self, j: i64) -> Matrix<F> {
        let src = self.degree_basis(j);
        let tgt = self.degree_basis(j + 1);
        let d = self.arity().get();
        let mut mat = Matrix::zeros(tgt.len(), d * src.len());
        for letter in 0..d {
            let a = self.word_action(&Word::letter(letter as u8), &src, &tgt);
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    mat.set(r, letter * src.len() + c, a.get(r, c).clone());
                }
            }
        }
        mat
    }

    /// Whether `V ⊗ M_j → M_{j+1}` is bijective, by sparse elimination.
    pub fn multiplication_bijective(&self, j: i64) -> bool {
        let d = self.arity().get();
        if self.hilbert(j + 1) != d as u64 * self.hilbert(j) {
            return false;
        }
        let src = self.degree_basis(j);
        let tgt = self.degree_basis(j + 1);
        let mut echelon = RowEchelon::new(tgt.len());
        for m in &src.monomials {
            for letter in 0..d {
                let y = self.normal_form(&FreeElement::basis(m.left_mul(&Word::letter(letter as u8))));
                let row: SparseRow<F> =
                    y.terms().map(|(k, c)| (tgt.position(k).expect("normal form is standard"), c.clone())).collect();
                if !echelon.insert(row) {
                    return false;
                }
            }
        }
        true
    }

    pub fn presentation_bound(&self) -> i64 {
        self.generators().shifts().iter().chain(self.relations.degrees()).copied().max().unwrap_or(0)
    }

    /// Least `i0` with `V ⊗ M_j → M_{j+1}` bijective for every `j ≥ i0`.
    ///
    /// Above the presentation bound the truncated resolution is
    /// `0 → R(-i)^r → R(-i)^s → M_{≥i} → 0` with a scalar, hence split,
    /// first map; below it each degree is checked directly.
    pub fn stable_profile(&self) -> StableProfile {
        let bound = self.presentation_bound();
        let floor = self.generators().min_shift().unwrap_or(bound);
        let mut i0 = bound;
        while i0 > floor && self.multiplication_bijective(i0 - 1) {
            i0 -= 1;
        }
        StableProfile { arity: self.arity(), i0, t_i0: self.hilbert(i0), presentation_bound: bound }
    }

    /// Checks the profile's freeness claim by linear algebra in degrees `i0..=cap`.
    pub fn verify_profile(&self, profile: &StableProfile, cap: i64) -> bool {
        (profile.i0..=cap).all(|j| self.multiplication_bijective(j) && Some(self.hilbert_by_rank(j)) == profile.t(j))
    }

    pub fn is_fdim(&self) -> bool {
        self.stable_profile().t_i0 == 0
    }

    /// `Σ_{F_0 shifts} d^(-b) − Σ_{relation basis} d^(-a)` in `Z[1/d]`.
    pub fn k0_class(&self) -> QgrClass {
        let q = signed_power_sum(self.arity(), self.generators().shifts(), self.relations.degrees());
        QgrClass::from_ratio(self.arity(), &q).expect("class of a module is a nonnegative element of Z[1/d]")
    }

    /// `dim_k M` when finite.
    pub fn total_dimension(&self) -> Option<u64> {
        let p = self.stable_profile();
        if p.t_i0 != 0 {
            return None;
        }
        let lo = self.generators().min_shift().unwrap_or(p.i0);
        Some((lo..p.i0).map(|j| self.hilbert(j)).sum())
    }

    /// `M(m)`, with `M(m)_i = M_{m+i}`.
    pub fn twist(&self, m: i64) -> Self {
        let target = self.generators().twist(m);
        let source = self.presentation.source().twist(m);
        Self::from_presentation(
            ModuleMap::new(source, target, self.relations().to_vec()).expect("twist preserves degrees"),
        )
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let gens = self.generators().direct_sum(other.generators())?;
        let offset = self.generators().rank();
        let mut rows = self.relations().to_vec();
        rows.extend(other.relations().iter().map(|r| r.recoordinate(|c| c + offset)));
        Self::from_relations(gens, rows)
    }

    /// `M / (R·extra)` with the quotient map.
    pub fn quotient(&self, extra: &[FreeElement<F>]) -> Result<(Self, FpMorphism<F>)> {
        let mut rows = self.relations().to_vec();
        rows.extend_from_slice(extra);
        let q = Self::from_relations(self.generators().clone(), rows)?;
        let map = FpMorphism::new(self.clone(), q.clone(), ModuleMap::identity(self.generators()))?;
        Ok((q, map))
    }

    /// The submodule generated by the classes of `gens`, presented on its own,
    /// with its inclusion.
    pub fn submodule(&self, gens: &[FreeElement<F>]) -> Result<(Self, FpMorphism<F>)> {
        let f0 = self.generators();
        let mut degrees = Vec::with_capacity(gens.len());
        for g in gens {
            degrees.push(g.degree_in(f0).ok_or(Error::NotHomogeneous)?);
        }
        let mut all = gens.to_vec();
        all.extend_from_slice(self.relations.elements());
        let mut all_degrees = degrees.clone();
        all_degrees.extend_from_slice(self.relations.degrees());
        let phi = ModuleMap::from_generators(f0.clone(), &all, &all_degrees)?;
        let ker = kernel(&phi)?;
        let s = gens.len();
        let gen_module = GradedFreeModule::new(self.arity(), degrees);
        let rows: Vec<FreeElement<F>> = ker
            .elements()
            .iter()
            .map(|k| {
                FreeElement::from_terms(k.terms().filter(|(m, _)| m.coord < s).map(|(m, c)| (m.clone(), c.clone())))
            })
            .filter(|r| !r.is_zero())
            .collect();
        let sub = Self::from_relations(gen_module.clone(), rows)?;
        let incl = FpMorphism::new(
            sub.clone(),
            self.clone(),
            ModuleMap::from_generators(f0.clone(), gens, gen_module.shifts())?,
        )?;
        Ok((sub, incl))
    }

    /// `M_{≥i}`, presented on the degree-`i` monomials of low generators and
    /// the remaining generators themselves.
    pub fn truncate(&self, i: i64) -> Self {
        self.truncation(i).0
    }

    /// `M_{≥i}` with its inclusion into `M`.
    pub fn truncation(&self, i: i64) -> (Self, FpMorphism<F>) {
        let f0 = self.generators();
        let d = self.arity();
        let mut shifts = Vec::new();
        let mut lifts = Vec::new();
        let mut index: HashMap<Monomial, usize> = HashMap::new();
        for (coord, &b) in f0.shifts().iter().enumerate() {
            if b >= i {
                index.insert(Monomial::generator(coord), shifts.len());
                shifts.push(b);
                lifts.push(FreeElement::unit(coord));
            } else {
                for w in Word::all(d, (i - b) as usize) {
                    let m = Monomial::new(coord, w);
                    index.insert(m.clone(), shifts.len());
                    shifts.push(i);
                    lifts.push(FreeElement::basis(m));
                }
            }
        }
        let g = GradedFreeModule::new(d, shifts);
        let rewrite = |x: &FreeElement<F>| -> FreeElement<F> {
            FreeElement::from_terms(x.terms().map(|(m, c)| {
                let b = f0.shift(m.coord);
                let key = if b >= i {
                    (Monomial::generator(m.coord), m.word.clone())
                } else {
                    let k = m.word.len() - (i - b) as usize;
                    let (head, tail) = m.word.split_at(k);
                    (Monomial::new(m.coord, tail), head)
                };
                (Monomial::new(index[&key.0], key.1), c.clone())
            }))
        };
        let mut rows = Vec::new();
        for (b, &deg) in self.relations.elements().iter().zip(self.relations.degrees()) {
            if deg >= i {
                rows.push(rewrite(b));
            } else {
                for u in Word::all(d, (i - deg) as usize) {
                    rows.push(rewrite(&b.left_mul_word(&u)));
                }
            }
        }
        let t = Self::from_relations(g.clone(), rows).expect("rewritten relations are homogeneous");
        let lift = ModuleMap::new(g, f0.clone(), lifts).expect("lifts are homogeneous");
        let incl = FpMorphism { source: t.clone(), target: self.clone(), lift };
        (t, incl)
    }

    /// The largest finite-dimensional graded submodule.
    pub fn torsion(&self) -> Torsion<F> {
        let profile = self.stable_profile();
        let i0 = profile.i0;
        let lo = self.generators().min_shift().unwrap_or(i0);
        let top = self.degree_basis(i0);
        let mut pieces: Vec<(i64, DegreeBasis, Vec<Vec<F>>)> = Vec::new();
        for j in lo..i0 {
            let basis = self.degree_basis(j);
            if basis.is_empty() {
                continue;
            }
            // m ∈ τM_j iff every word of length i0 - j kills it
            let words: Vec<Word> = Word::all(self.arity(), (i0 - j) as usize).collect();
            let mut stacked = Matrix::zeros(words.len() * top.len(), basis.len());
            for (k, u) in words.iter().enumerate() {
                let a = self.word_action(u, &basis, &top);
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        stacked.set(k * top.len() + r, c, a.get(r, c).clone());
                    }
                }
            }
            let ker = stacked.kernel();
            if !ker.is_empty() {
                pieces.push((j, basis, ker));
            }
        }
        Torsion::assemble(self, i0, pieces)
    }
}

/// The torsion submodule `τM` and the torsion-free quotient `M/τM`.
#[derive(Clone, Debug)]
pub struct Torsion<F> {
    /// Basis of `τM_j` as normal-form elements of `F_0`, per degree.
    pub elements: Vec<(i64, Vec<FreeElement<F>>)>,
    pub dimension: u64,
    pub submodule: FpModule<F>,
    pub inclusion: FpMorphism<F>,
    pub quotient: FpModule<F>,
}

impl<F: Field> Torsion<F> {
    fn assemble(m: &FpModule<F>, i0: i64, pieces: Vec<(i64, DegreeBasis, Vec<Vec<F>>)>) -> Self {
        let d = m.arity();
        let mut elements = Vec::new();
        let mut shifts = Vec::new();
        let mut lifts = Vec::new();
        // per degree: offset of the generators of that degree, and the coordinate matrix
        let mut by_degree: HashMap<i64, (usize, Matrix<F>)> = HashMap::new();
        for (j, basis, ker) in &pieces {
            let elts: Vec<FreeElement<F>> = ker.iter().map(|v| FpModule::element_from_coordinates(basis, v)).collect();
            let coords = Matrix::from_fn(basis.len(), ker.len(), |r, c| ker[c][r].clone());
            by_degree.insert(*j, (shifts.len(), coords));
            for e in &elts {
                shifts.push(*j);
                lifts.push(e.clone());
            }
            elements.push((*j, elts));
        }
        let gens = GradedFreeModule::new(d, shifts.clone());
        let mut rows = Vec::new();
        for (g, (&j, lift)) in shifts.iter().zip(&lifts).enumerate() {
            for letter in 0..d.as_u8() {
                let mut row = FreeElement::basis(Monomial::new(g, Word::letter(letter)));
                let y = m.normal_form(&lift.left_mul_word(&Word::letter(letter)));
                if j + 1 < i0 && !y.is_zero() {
                    let (offset, coords) = by_degree.get(&(j + 1)).expect("torsion is closed under multiplication");
                    let basis = m.degree_basis(j + 1);
                    let c = coords.solve(&m.coordinates(&y, &basis)).expect("image stays in the torsion");
                    for (k, v) in c.into_iter().enumerate() {
                        row.add_term(Monomial::generator(offset + k), -v);
                    }
                }
                rows.push(row);
            }
        }
        let submodule = FpModule::from_relations(gens.clone(), rows).expect("homogeneous torsion relations");
        let lift = ModuleMap::new(gens, m.generators().clone(), lifts.clone()).expect("lifts are homogeneous");
        let inclusion = FpMorphism { source: submodule.clone(), target: m.clone(), lift };
        let (quotient, _) = m.quotient(&lifts).expect("torsion elements are homogeneous");
        let dimension = elements.iter().map(|(_, e)| e.len() as u64).sum();
        Torsion { elements, dimension, submodule, inclusion, quotient }
    }
}

/// A homomorphism of finitely presented modules given by a lift `F_0 → F_0'`.
#[derive(Clone, Debug)]
pub struct FpMorphism<F> {
    source: FpModule<F>,
    target: FpModule<F>,
    lift: ModuleMap<F>,
}

impl<F: Field> FpMorphism<F> {
    /// Checks that every source relation lands in the target relations.
    pub fn new(source: FpModule<F>, target: FpModule<F>, lift: ModuleMap<F>) -> Result<Self> {
        if lift.source() != source.generators() || lift.target() != target.generators() {
            return Err(Error::DimensionMismatch("lift does not match the presentations".into()));
        }
        for (row, rel) in source.relations().iter().enumerate() {
            if !target.is_zero_element(&lift.apply(rel)) {
                return Err(Error::IllDefinedMorphism { row });
            }
        }
        Ok(FpMorphism { source, target, lift })
    }

    pub fn source(&self) -> &FpModule<F> {
        &self.source
    }

    pub fn target(&self) -> &FpModule<F> {
        &self.target
    }

    pub fn lift(&self) -> &ModuleMap<F> {
        &self.lift
    }

    /// Image of an element of the source `F_0`, in normal form.
    pub fn apply(&self, x: &FreeElement<F>) -> FreeElement<F> {
        self.target.normal_form(&self.lift.apply(x))
    }

    /// The linear map `M_j → N_j` in the standard bases.
    pub fn in_degree(&self, j: i64) -> Matrix<F> {
        let src = self.source.degree_basis(j);
        let tgt = self.target.degree_basis(j);
        self.in_bases(&src, &tgt)
    }

    pub fn in_bases(&self, src: &DegreeBasis, tgt: &DegreeBasis) -> Matrix<F> {
        let mut mat = Matrix::zeros(tgt.len(), src.len());
        for (c, m) in src.monomials.iter().enumerate() {
            let v = self.target.coordinates(&self.lift.apply(&FreeElement::basis(m.clone())), tgt);
            for (r, x) in v.into_iter().enumerate() {
                mat.set(r, c, x);
            }
        }
        mat
    }

    pub fn then(&self, other: &FpMorphism<F>) -> Result<FpMorphism<F>> {
        let lift = self.lift.then(&other.lift)?;
        Ok(FpMorphism { source: self.source.clone(), target: other.target.clone(), lift })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type M = FpModule<Rational>;

    fn d2() -> Arity {
        Arity::new(2).unwrap()
    }

    fn r_mod_x0() -> M {
        M::from_relations(GradedFreeModule::ring(d2()), vec![FreeElement::basis(Monomial::new(0, Word::letter(0)))])
            .unwrap()
    }

    /// `k ⊕ R`, presented on two generators with `x_0 e_1, x_1 e_1`.
    fn k_plus_r() -> M {
        let rows = (0..2).map(|l| FreeElement::basis(Monomial::new(0, Word::letter(l)))).collect();
        M::from_relations(GradedFreeModule::uniform(d2(), 0, 2), rows).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        let r = M::ring(d2());
        for j in 0..8 {
            assert_eq!(r.hilbert(j), 1 << j);
        }
        let k = M::trivial(d2());
        assert_eq!((k.hilbert(0), k.hilbert(1), k.hilbert(2)), (1, 0, 0));
        assert_eq!(r_mod_x0().hilbert(4), 8);
        assert_eq!(r_mod_x0().hilbert_by_rank(4), 8);
    }

    #[test]
    fn profiles() {
        let p = M::ring(d2()).stable_profile();
        assert_eq!((p.i0, p.t_i0), (0, 1));
        let p = M::trivial(d2()).stable_profile();
        assert_eq!((p.i0, p.t_i0), (1, 0));
        let m = r_mod_x0();
        let p = m.stable_profile();
        assert_eq!((p.i0, p.t_i0), (1, 1));
        assert_eq!(p.terms(4), vec![1, 2, 4, 8]);
        assert!(m.verify_profile(&p, 6));
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(M::ring(d2()).torsion().dimension, 0);
        let t = M::ring_mod_power(d2(), 2).torsion();
        assert_eq!(t.dimension, 3);
        let t = k_plus_r().torsion();
        assert_eq!(t.dimension, 1);
        assert_eq!(t.submodule.hilbert(0), 1);
        assert_eq!(t.submodule.total_dimension(), Some(1));
        assert_eq!(t.quotient.torsion().dimension, 0);
        for j in 0..5 {
            assert_eq!(t.quotient.hilbert(j), 1 << j);
        }
    }

    #[test]
    fn truncation_examples() {
        let t = M::ring(d2()).truncate(3);
        assert_eq!(t.generators().rank(), 8);
        assert!(t.relations().is_empty());
        assert_eq!(M::trivial(d2()).truncate(1).hilbert(1), 0);
        let t = r_mod_x0().truncate(1);
        assert_eq!(t.stable_profile().t_i0, 1);
        for j in 0..6 {
            let expected = if j >= 1 { r_mod_x0().hilbert(j) } else { 0 };
            assert_eq!(t.hilbert(j), expected);
        }
    }

    #[test]
    fn classes() {
        assert_eq!(M::ring(d2()).twist(-3).k0_class(), QgrClass::new(d2(), 1, 3));
        assert!(M::trivial(d2()).k0_class().is_zero());
        assert_eq!(r_mod_x0().k0_class(), QgrClass::new(d2(), 1, 1));
        assert!(M::trivial(d2()).is_fdim());
        assert!(!M::ring(d2()).is_fdim());
        assert!(!r_mod_x0().is_fdim());
    }

    #[test]
    fn morphisms_must_respect_relations() {
        let r = M::ring(d2());
        let k = M::trivial(d2());
        let id = ModuleMap::identity(r.generators());
        assert!(FpMorphism::new(r.clone(), k.clone(), id.clone()).is_ok());
        assert!(matches!(FpMorphism::new(k, r, id), Err(Error::IllDefinedMorphism { .. })));
    }
}
