//! The Leavitt algebra `L(1, d)` on `x_i, x_i*` with `x_i x_j* = δ_ij` and
//! `Σ_i x_i* x_i = 1`.
//!
//! Every element is a combination of monomials `w*·w′`, where
//! `(a_1⋯a_k)* = a_k*⋯a_1*`. Monomials of one degree and one level `|w|`
//! are linearly independent, so elements are compared after raising each
//! degree to a common level with `w*w′ = Σ_i (x_i w)*(x_i w′)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::af_s::SElement;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fpmod::FpModule;
use crate::freealg::{Arity, NcPoly, Word};
use crate::linalg::Matrix;
use crate::qgr::{normalized_rank, QgrClass};

/// `star* · plain`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LeavittMonomial {
    pub star: Word,
    pub plain: Word,
}

impl LeavittMonomial {
    pub fn new(star: Word, plain: Word) -> Self {
        LeavittMonomial { star, plain }
    }

    pub fn one() -> Self {
        Self::new(Word::empty(), Word::empty())
    }

    pub fn plain(w: Word) -> Self {
        Self::new(Word::empty(), w)
    }

    pub fn starred(w: Word) -> Self {
        Self::new(w, Word::empty())
    }

    pub fn degree(&self) -> i64 {
        self.plain.len() as i64 - self.star.len() as i64
    }

    pub fn level(&self) -> usize {
        self.star.len()
    }

    /// `Σ_i (x_i w)*(x_i w′)`.
    pub fn raise(&self, d: Arity) -> impl Iterator<Item = LeavittMonomial> + '_ {
        (0..d.as_u8()).map(move |i| LeavittMonomial::new(self.star.prepend(i), self.plain.prepend(i)))
    }
}

impl fmt::Display for LeavittMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.star.is_empty() && self.plain.is_empty() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self.star.letters().iter().rev().map(|a| format!("x{a}*")).collect();
        parts.extend(self.plain.letters().iter().map(|a| format!("x{a}")));
        write!(f, "{}", parts.join(" "))
    }
}

/// Product of monomials, cancelling `w_1′ · w_2*` at the junction.
pub fn mono_mul(a: &LeavittMonomial, b: &LeavittMonomial) -> Option<LeavittMonomial> {
    if let Some(u) = a.plain.strip_suffix(&b.star) {
        return Some(LeavittMonomial::new(a.star.clone(), u.concat(&b.plain)));
    }
    if let Some(v) = b.star.strip_suffix(&a.plain) {
        return Some(LeavittMonomial::new(v.concat(&a.star), b.plain.clone()));
    }
    None
}

#[derive(Clone, Debug)]
pub struct LeavittElement<F> {
    d: Arity,
    terms: BTreeMap<LeavittMonomial, F>,
}

impl<F: Field> LeavittElement<F> {
    pub fn zero(d: Arity) -> Self {
        LeavittElement { d, terms: BTreeMap::new() }
    }

    pub fn one(d: Arity) -> Self {
        Self::monomial(d, LeavittMonomial::one(), F::one())
    }

    pub fn monomial(d: Arity, m: LeavittMonomial, c: F) -> Self {
        let mut e = Self::zero(d);
        e.add_term(m, c);
        e
    }

    pub fn letter(d: Arity, i: u8) -> Self {
        Self::monomial(d, LeavittMonomial::plain(Word::letter(i)), F::one())
    }

    pub fn star_letter(d: Arity, i: u8) -> Self {
        Self::monomial(d, LeavittMonomial::starred(Word::letter(i)), F::one())
    }

    pub fn word(d: Arity, w: Word) -> Self {
        Self::monomial(d, LeavittMonomial::plain(w), F::one())
    }

    /// `w*`.
    pub fn star_word(d: Arity, w: Word) -> Self {
        Self::monomial(d, LeavittMonomial::starred(w), F::one())
    }

    /// The image of `p` under `R → L`.
    pub fn from_poly(d: Arity, p: &NcPoly<F>) -> Self {
        Self::from_terms(d, p.terms().map(|(w, c)| (LeavittMonomial::plain(w.clone()), c.clone())))
    }

    pub fn from_terms(d: Arity, iter: impl IntoIterator<Item = (LeavittMonomial, F)>) -> Self {
        let mut e = Self::zero(d);
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: LeavittMonomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn arity(&self) -> Arity {
        self.d
    }

    /// Stored terms; not a normal form.
    pub fn terms(&self) -> impl Iterator<Item = (&LeavittMonomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.d, self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.d);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(m) = mono_mul(a, b) {
                    out.add_term(m, x.clone() * y.clone());
                }
            }
        }
        out
    }

    /// Degrees with stored terms.
    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(LeavittMonomial::degree).collect()
    }

    /// The single degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let c = self.canonical();
        let degs = c.degrees();
        (degs.len() == 1).then(|| *degs.iter().next().expect("one degree"))
    }

    pub fn graded_component(&self, m: i64) -> Self {
        Self::from_terms(
            self.d,
            self.terms.iter().filter(|(k, _)| k.degree() == m).map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    pub fn max_level(&self, m: i64) -> Option<usize> {
        self.terms.keys().filter(|k| k.degree() == m).map(LeavittMonomial::level).max()
    }

    /// All degree-`m` monomials rewritten at level `r`.
    pub fn raise_level(&self, m: i64, r: usize) -> Result<Self> {
        if let Some(cur) = self.max_level(m) {
            if r < cur {
                return Err(Error::LevelDecrease { from: cur as i64, to: r as i64 });
            }
        }
        let mut out = Self::zero(self.d);
        for (k, c) in &self.terms {
            if k.degree() != m {
                out.add_term(k.clone(), c.clone());
                continue;
            }
            let mut layer = vec![k.clone()];
            for _ in k.level()..r {
                layer = layer.iter().flat_map(|x| x.raise(self.d).collect::<Vec<_>>()).collect();
            }
            for x in layer {
                out.add_term(x, c.clone());
            }
        }
        Ok(out)
    }

    /// Each degree raised to its maximal stored level; unique.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        for m in self.degrees() {
            let r = self.max_level(m).expect("degree present");
            out = out.raise_level(m, r).expect("raising to the maximum");
        }
        out
    }

    /// Each degree lowered as far as the pattern `Σ_i (x_i u)*(x_i u′)` allows.
    pub fn minimal_form(&self) -> Self {
        let canon = self.canonical();
        let mut out = Self::zero(self.d);
        for m in canon.degrees() {
            let mut comp = canon.graded_component(m);
            while let Some(lower) = comp.lower_once() {
                comp = lower;
            }
            out = out.add(&comp);
        }
        out
    }

    /// Lowers a single-level, single-degree component by one level.
    fn lower_once(&self) -> Option<Self> {
        let d = self.d.get();
        let mut groups: HashMap<(Word, Word), (usize, F)> = HashMap::new();
        for (k, c) in &self.terms {
            let (s, p) = (k.star.letters(), k.plain.letters());
            if s.is_empty() || p.is_empty() || s[0] != p[0] {
                return None;
            }
            let key = (Word::new(s[1..].to_vec()), Word::new(p[1..].to_vec()));
            match groups.get_mut(&key) {
                Some((n, x)) => {
                    if x != c {
                        return None;
                    }
                    *n += 1;
                }
                None => {
                    groups.insert(key, (1, c.clone()));
                }
            }
        }
        if groups.values().any(|(n, _)| *n != d) {
            return None;
        }
        Some(Self::from_terms(self.d, groups.into_iter().map(|((s, p), (_, c))| (LeavittMonomial::new(s, p), c))))
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().terms.is_empty()
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.d == other.d && self.sub(other).is_zero()
    }

    /// The preimage in `R`, when the element has no starred part.
    pub fn to_poly(&self) -> Option<NcPoly<F>> {
        let min = self.minimal_form();
        if min.terms.keys().any(|k| !k.star.is_empty()) {
            return None;
        }
        Some(NcPoly::from_terms(min.terms.into_iter().map(|(k, c)| (k.plain, c))))
    }
}

impl<F: Field> PartialEq for LeavittElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<F: Field> Eq for LeavittElement<F> {}

impl<F: Field> fmt::Display for LeavittElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_display();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_one = m.star.is_empty() && m.plain.is_empty();
            if mag.is_one() {
                write!(f, "{m}")?;
            } else if is_one {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag} {m}")?;
            }
        }
        Ok(())
    }
}

/// `L_0 → S`: `w*w′ ↦ E_{w,w′}` at the common level.
pub fn l0_to_s<F: Field>(a: &LeavittElement<F>) -> Result<SElement<F>> {
    for m in a.degrees() {
        if m != 0 && !a.graded_component(m).is_zero() {
            return Err(Error::NotDegreeZero(m));
        }
    }
    let canon = a.graded_component(0).canonical();
    let level = canon.max_level(0).unwrap_or(0);
    let n = a.d.pow(level as u32) as usize;
    let mut m = Matrix::zeros(n, n);
    for (k, c) in canon.terms() {
        m.set(k.star.rank(a.d), k.plain.rank(a.d), c.clone());
    }
    Ok(SElement::new(a.d, level as u32, m)?.canonical())
}

/// `S → L_0`: `E_{u,v} ↦ u*v`.
pub fn s_to_l0<F: Field>(s: &SElement<F>) -> LeavittElement<F> {
    let d = s.arity();
    let len = s.level() as usize;
    LeavittElement::from_terms(
        d,
        s.matrix()
            .nonzero_entries()
            .map(|(r, c, x)| (LeavittMonomial::new(Word::from_rank(r, len, d), Word::from_rank(c, len, d)), x.clone())),
    )
}

/// `a = Σ_{|w| = r} w*·r_w` with `r_w ∈ R`; every `w ∈ X_r` is present.
pub fn flat_decompose<F: Field>(a: &LeavittElement<F>, r: usize) -> Result<BTreeMap<Word, NcPoly<F>>> {
    let d = a.d;
    let mut out: BTreeMap<Word, NcPoly<F>> = Word::all(d, r).map(|w| (w, NcPoly::zero())).collect();
    let canon = a.canonical();
    for m in canon.degrees() {
        let mut comp = canon.graded_component(m);
        let needed_for_degree = (-m).max(0) as usize;
        let mut level = comp.max_level(m).expect("degree present");
        if level < r {
            comp = comp.raise_level(m, r)?;
            level = r;
        }
        while level > r {
            match comp.lower_once() {
                Some(lower) => {
                    comp = lower;
                    level -= 1;
                }
                None => break,
            }
        }
        if level != r || r < needed_for_degree {
            return Err(Error::NotInFiltrationLevel {
                level: r as u32,
                degree: m,
                needed: level.max(needed_for_degree) as u32,
            });
        }
        for (k, c) in comp.terms() {
            out.get_mut(&k.star).expect("level r word").add_term(k.plain.clone(), c.clone());
        }
    }
    Ok(out)
}

/// `Σ_w w*·r_w`.
pub fn flat_reassemble<F: Field>(d: Arity, parts: &BTreeMap<Word, NcPoly<F>>) -> LeavittElement<F> {
    let mut out = LeavittElement::zero(d);
    for (w, p) in parts {
        out = out.add(&LeavittElement::star_word(d, w.clone()).mul(&LeavittElement::from_poly(d, p)));
    }
    out
}

/// `z·a`, which equals `r_z` because `z w* = δ_{w,z}` on `X_r`.
pub fn flat_projection<F: Field>(a: &LeavittElement<F>, z: &Word) -> LeavittElement<F> {
    LeavittElement::word(a.d, z.clone()).mul(a)
}

/// `1 ∈ L_r L_{-r}` and `1 ∈ L_{-r} L_r`.
#[derive(Clone, Debug)]
pub struct StrongGrading<F> {
    pub r: usize,
    /// `x_0^r · (x_0^r)*`.
    pub positive: (LeavittElement<F>, LeavittElement<F>),
    /// `(w*, w)` for `w ∈ X_r`.
    pub negative: Vec<(LeavittElement<F>, LeavittElement<F>)>,
}

impl<F: Field> StrongGrading<F> {
    pub fn verify(&self) -> bool {
        let d = self.positive.0.arity();
        let one = LeavittElement::one(d);
        let r = self.r as i64;
        let graded = |e: &LeavittElement<F>, m: i64| e.homogeneous_degree() == Some(m);
        let (a, b) = &self.positive;
        let pos_ok = graded(a, r) && graded(b, -r) && a.mul(b) == one;
        let neg_sum = self.negative.iter().fold(LeavittElement::zero(d), |acc, (u, v)| acc.add(&u.mul(v)));
        let neg_ok = self.negative.iter().all(|(u, v)| graded(u, -r) && graded(v, r)) && neg_sum == one;
        pos_ok && neg_ok
    }
}

pub fn strongly_graded_witness<F: Field>(d: Arity, r: usize) -> StrongGrading<F> {
    let x0r = Word::power(0, r);
    let positive = (LeavittElement::word(d, x0r.clone()), LeavittElement::star_word(d, x0r));
    let negative =
        Word::all(d, r).map(|w| (LeavittElement::star_word(d, w.clone()), LeavittElement::word(d, w))).collect();
    StrongGrading { r, positive, negative }
}

/// Outcome of the test `L ⊗_R M = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VanishingCertificate {
    pub vanishes: bool,
    pub i0: i64,
    pub t_i0: u64,
    /// Level at which the normalized rank was read.
    pub level: i64,
    pub normalized_rank: QgrClass,
}

/// `L ⊗_R M = 0` iff `M` is finite-dimensional, cross-checked against the
/// normalized rank one level above `i0`.
pub fn tensor_vanishes<F: Field>(m: &FpModule<F>) -> Result<VanishingCertificate> {
    let profile = m.stable_profile();
    let level = profile.i0 + 1;
    let rank = normalized_rank(m, level)?;
    let vanishes = profile.t_i0 == 0;
    if vanishes != rank.is_zero() {
        return Err(Error::CertificateMismatch(format!(
            "stable rank {} disagrees with normalized rank {rank} at level {level}",
            profile.t_i0
        )));
    }
    Ok(VanishingCertificate { vanishes, i0: profile.i0, t_i0: profile.t_i0, level, normalized_rank: rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::freealg::{FreeElement, GradedFreeModule, Monomial};

    type L = LeavittElement<Rational>;

    fn d2() -> Arity {
        Arity::new(2).unwrap()
    }

    fn mono(star: &[u8], plain: &[u8]) -> LeavittMonomial {
        LeavittMonomial::new(Word::new(star.to_vec()), Word::new(plain.to_vec()))
    }

    #[test]
    fn junction_cancellation() {
        assert_eq!(mono_mul(&mono(&[], &[0]), &mono(&[0], &[])), Some(LeavittMonomial::one()));
        assert_eq!(mono_mul(&mono(&[], &[0]), &mono(&[1], &[])), None);
        assert_eq!(mono_mul(&mono(&[0], &[1]), &mono(&[1], &[0])), Some(mono(&[0], &[0])));
        // x0* x1 · (x1 x0)* leaves (x0 x0)* after cancelling x1 x1*
        assert_eq!(mono_mul(&mono(&[0], &[1]), &mono(&[0, 1], &[])), Some(mono(&[0, 0], &[])));
    }

    #[test]
    fn relations_hold() {
        let d = d2();
        for i in 0..2 {
            for j in 0..2 {
                let p = L::letter(d, i).mul(&L::star_letter(d, j));
                assert_eq!(p, if i == j { L::one(d) } else { L::zero(d) });
            }
        }
        let s = (0..2).fold(L::zero(d), |acc, i| acc.add(&L::star_letter(d, i).mul(&L::letter(d, i))));
        assert_eq!(s, L::one(d));
        assert_ne!(L::letter(d, 0), L::letter(d, 1));
    }

    #[test]
    fn raising() {
        let d = d2();
        let one = L::one(d).raise_level(0, 1).unwrap();
        assert_eq!(one.num_terms(), 2);
        assert!(one.terms().all(|(k, _)| k.level() == 1));
        let e = L::monomial(d, mono(&[0], &[0]), Rational::from_i64(1));
        let raised = e.raise_level(0, 2).unwrap();
        let expected = L::from_terms(d, (0..2).map(|i| (mono(&[i, 0], &[i, 0]), Rational::from_i64(1))));
        assert_eq!(raised.num_terms(), 2);
        assert_eq!(raised.sub(&expected).num_terms(), 0);
        assert_eq!(e.raise_level(0, 1).unwrap().num_terms(), 1);
        assert!(matches!(raised.raise_level(0, 1), Err(Error::LevelDecrease { .. })));
        assert_eq!(raised.minimal_form().num_terms(), 1);
    }

    #[test]
    fn components() {
        let d = d2();
        let a = L::letter(d, 0).add(&L::star_letter(d, 1));
        assert_eq!(a.degrees().into_iter().collect::<Vec<_>>(), vec![-1, 1]);
        assert_eq!(a.graded_component(1), L::letter(d, 0));
        assert_eq!(a.graded_component(-1).add(&a.graded_component(1)), a);
        assert_eq!(L::one(d).homogeneous_degree(), Some(0));
        assert_eq!(L::monomial(d, mono(&[0], &[1, 1]), Rational::from_i64(1)).homogeneous_degree(), Some(1));
    }

    #[test]
    fn strong_grading() {
        for r in 0..4 {
            let w = strongly_graded_witness::<Rational>(d2(), r);
            assert!(w.verify(), "r = {r}");
            assert_eq!(w.negative.len(), 1 << r);
        }
    }

    #[test]
    fn degree_zero_part_is_s() {
        let d = d2();
        assert_eq!(l0_to_s(&L::one(d)).unwrap(), SElement::one(d));
        let e = L::monomial(d, mono(&[0], &[0]), Rational::from_i64(1));
        let s = l0_to_s(&e).unwrap();
        assert_eq!(s, SElement::unit_at(d, 1, 0, 0));
        assert_eq!(s_to_l0(&s), e);
        assert!(matches!(l0_to_s(&L::letter(d, 0)), Err(Error::NotDegreeZero(1))));
        let a = L::monomial(d, mono(&[0, 1], &[1, 1]), Rational::from_i64(2));
        let b = L::monomial(d, mono(&[1], &[0]), Rational::from_i64(3));
        assert_eq!(l0_to_s(&a.mul(&b)).unwrap(), l0_to_s(&a).unwrap().mul(&l0_to_s(&b).unwrap()));
    }

    #[test]
    fn flat_filtration() {
        let d = d2();
        let parts = flat_decompose(&L::one(d), 1).unwrap();
        assert_eq!(parts[&Word::letter(0)], NcPoly::letter(0));
        assert_eq!(parts[&Word::letter(1)], NcPoly::letter(1));
        let parts = flat_decompose(&L::letter(d, 0), 0).unwrap();
        assert_eq!(parts[&Word::empty()], NcPoly::letter(0));
        let a = L::monomial(d, mono(&[0], &[1]), Rational::from_i64(1));
        let parts = flat_decompose(&a, 1).unwrap();
        assert_eq!(parts[&Word::letter(0)], NcPoly::letter(1));
        assert!(parts[&Word::letter(1)].is_zero());
        assert_eq!(flat_reassemble(d, &parts), a);
        for (z, rz) in &parts {
            assert_eq!(flat_projection(&a, z), L::from_poly(d, rz));
        }
        assert!(matches!(flat_decompose(&a, 0), Err(Error::NotInFiltrationLevel { level: 0, degree: 0, needed: 1 })));
        assert!(matches!(flat_decompose(&L::star_letter(d, 0), 0), Err(Error::NotInFiltrationLevel { .. })));
    }

    #[test]
    fn ring_embeds() {
        let d = d2();
        let p = &NcPoly::letter(0).multiply(&NcPoly::letter(1)) + &NcPoly::letter(1);
        let q = NcPoly::<Rational>::letter(1);
        let (lp, lq) = (L::from_poly(d, &p), L::from_poly(d, &q));
        assert_eq!(lp.mul(&lq).to_poly().unwrap(), p.multiply(&q));
        assert_eq!(L::one(d).raise_level(0, 2).unwrap().to_poly().unwrap(), NcPoly::one());
        assert!(L::star_letter(d, 0).to_poly().is_none());
    }

    #[test]
    fn vanishing() {
        let d = d2();
        let k = FpModule::<Rational>::trivial(d);
        assert!(tensor_vanishes(&k).unwrap().vanishes);
        assert!(!tensor_vanishes(&FpModule::<Rational>::ring(d)).unwrap().vanishes);
        let m = FpModule::<Rational>::from_relations(
            GradedFreeModule::ring(d),
            vec![FreeElement::basis(Monomial::new(0, Word::letter(0)))],
        )
        .unwrap();
        let c = tensor_vanishes(&m).unwrap();
        assert!(!c.vanishes);
        assert_eq!(c.normalized_rank, QgrClass::new(d, 1, 1));
    }

    #[test]
    fn display() {
        let d = d2();
        let e = L::monomial(d, mono(&[0, 1], &[1]), Rational::new(1, 2)).sub(&L::one(d));
        assert_eq!(e.to_string(), "-1 + 1/2 x1* x0* x1");
    }
}
