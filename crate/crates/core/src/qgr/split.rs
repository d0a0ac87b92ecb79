use crate::error::{Error, Result};
use crate::field::Field;
use crate::fpmod::{FpModule, FpMorphism};
use crate::freealg::{FreeElement, GradedFreeModule, ModuleMap, Word};
use crate::linalg::Matrix;

/// A section `σ: N_{≥i} → M` of `g: M → N`, with `N_{≥i}` written as the
/// free module on a basis of `N_i`.
#[derive(Clone, Debug)]
pub struct Section<F> {
    pub index: i64,
    /// `R(-i)^{t_i}`.
    pub free: FpModule<F>,
    /// `R(-i)^{t_i} ≅ N_{≥i} ⊂ N`.
    pub onto_target: FpMorphism<F>,
    /// `σ`.
    pub section: FpMorphism<F>,
    /// Degrees in which `g∘σ = id` was checked.
    pub verified: Vec<i64>,
}

fn exactness_checks<F: Field>(f: &FpMorphism<F>, g: &FpMorphism<F>, j: i64) -> Result<()> {
    let fail = |reason: &str| Err(Error::NotExactInput { degree: j, reason: reason.to_string() });
    let fj = f.in_degree(j);
    let gj = g.in_degree(j);
    let (l, m, n) = (fj.cols(), fj.rows(), gj.rows());
    if gj.cols() != m {
        return fail("maps do not share the middle module");
    }
    if fj.rank() != l {
        return fail("first map is not injective");
    }
    if gj.rank() != n {
        return fail("second map is not surjective");
    }
    if l + n != m {
        return fail("middle term has the wrong dimension");
    }
    if !gj.mul(&fj).is_zero() {
        return fail("composite is not zero");
    }
    Ok(())
}

/// Splits `0 → L → M → N → 0` over `M_{≥i}` for `i ≥ i0(N)`, checking
/// exactness and `g∘σ = id` in degrees up to `cap`.
pub fn split_sequence<F: Field>(f: &FpMorphism<F>, g: &FpMorphism<F>, i: i64, cap: i64) -> Result<Section<F>> {
    let n_mod = g.target();
    let m_mod = g.source();
    let lo = [f.source(), m_mod, n_mod].iter().filter_map(|x| x.generators().min_shift()).min().unwrap_or(i);
    for j in lo..=cap.max(i) {
        exactness_checks(f, g, j)?;
    }
    let profile = n_mod.stable_profile();
    if i < profile.i0 {
        return Err(Error::TruncationNotFree { index: i, i0: profile.i0 });
    }
    let d = n_mod.arity();
    let top = n_mod.degree_basis(i);
    let mid = m_mod.degree_basis(i);
    let gi = g.in_bases(&mid, &top);
    let mut lifts = Vec::with_capacity(top.len());
    for k in 0..top.len() {
        let mut e = vec![F::zero(); top.len()];
        e[k] = F::one();
        let x = gi.solve(&e).expect("surjective in degree i");
        lifts.push(FpModule::element_from_coordinates(&mid, &x));
    }
    let free_gens = GradedFreeModule::uniform(d, i, top.len());
    let free = FpModule::free(free_gens.clone());
    let targets: Vec<FreeElement<F>> = top.monomials.iter().cloned().map(FreeElement::basis).collect();
    let onto_target = FpMorphism::new(
        free.clone(),
        n_mod.clone(),
        ModuleMap::new(free_gens.clone(), n_mod.generators().clone(), targets)?,
    )?;
    let section =
        FpMorphism::new(free.clone(), m_mod.clone(), ModuleMap::new(free_gens, m_mod.generators().clone(), lifts)?)?;
    let composite = section.then(g)?;
    let mut verified = Vec::new();
    for j in i..=cap {
        // N_{≥i} is free on N_i, so the generator map is invertible in degree j
        let phi = onto_target.in_degree(j);
        if !(phi.is_square() && phi.rank() == phi.rows()) {
            return Err(Error::TruncationNotFree { index: i, i0: profile.i0 });
        }
        let gs = composite.in_degree(j);
        if gs != phi {
            return Err(Error::CertificateMismatch(format!("g∘σ differs from the identity in degree {j}")));
        }
        verified.push(j);
    }
    Ok(Section { index: i, free, onto_target, section, verified })
}

impl<F: Field> Section<F> {
    /// `σ` as a linear map `N_j → M_j`.
    pub fn in_degree(&self, j: i64) -> Matrix<F> {
        let inv = self.onto_target.in_degree(j).inverse().expect("truncation is free");
        self.section.in_degree(j).mul(&inv)
    }

    /// Generator degree words, for reporting.
    pub fn generator_count(&self) -> usize {
        self.free.generators().rank()
    }

    pub fn word_count(&self, j: i64) -> usize {
        Word::all(self.free.arity(), (j - self.index).max(0) as usize).count() * self.generator_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::freealg::{Arity, Monomial};
    use crate::submodules::kernel;

    type M = FpModule<Rational>;

    fn d2() -> Arity {
        Arity::new(2).unwrap()
    }

    fn x(c: usize, letter: u8) -> FreeElement<Rational> {
        FreeElement::basis(Monomial::new(c, Word::letter(letter)))
    }

    fn assert_identity_on_target(s: &Section<Rational>, g: &FpMorphism<Rational>) {
        for &j in &s.verified {
            let gs = g.in_degree(j).mul(&s.in_degree(j));
            assert!(gs.is_identity(), "degree {j}");
        }
    }

    #[test]
    fn residue_field_sequence() {
        let d = d2();
        let r = M::ring(d);
        let (trunc, incl) = r.truncation(1);
        let (k, proj) = r.quotient(&[x(0, 0), x(0, 1)]).unwrap();
        assert_eq!(k.hilbert(0), 1);
        let _ = trunc;
        let s = split_sequence(&incl, &proj, 1, 5).unwrap();
        assert_eq!(s.generator_count(), 0);
        assert!(matches!(split_sequence(&incl, &proj, 0, 5), Err(Error::TruncationNotFree { index: 0, i0: 1 })));
    }

    #[test]
    fn cover_of_the_augmentation_ideal() {
        let d = d2();
        let src = GradedFreeModule::uniform(d, 1, 3);
        let n_mod = M::ring(d).truncate(1);
        // R(-1)^3 → R_{≥1} ≅ R(-1)^2 by (x0, x1, x0)
        let g_lift = ModuleMap::new(
            src.clone(),
            n_mod.generators().clone(),
            vec![FreeElement::unit(0), FreeElement::unit(1), FreeElement::unit(0)],
        )
        .unwrap();
        let ker = kernel(&g_lift).unwrap();
        let l_mod = M::free(ker.free_module());
        let m_mod = M::free(src);
        let f = FpMorphism::new(l_mod, m_mod.clone(), ker.inclusion()).unwrap();
        let g = FpMorphism::new(m_mod, n_mod, g_lift).unwrap();
        let s = split_sequence(&f, &g, 1, 5).unwrap();
        assert_eq!(s.verified, vec![1, 2, 3, 4, 5]);
        assert_eq!(s.generator_count(), 2);
        assert_identity_on_target(&s, &g);
    }

    #[test]
    fn split_sum() {
        let d = d2();
        let r = M::ring(d);
        let sum = r.direct_sum(&r.twist(-1)).unwrap();
        let f = FpMorphism::new(
            r.clone(),
            sum.clone(),
            ModuleMap::new(r.generators().clone(), sum.generators().clone(), vec![FreeElement::unit(0)]).unwrap(),
        )
        .unwrap();
        let n = r.twist(-1);
        let g = FpMorphism::new(
            sum.clone(),
            n.clone(),
            ModuleMap::new(
                sum.generators().clone(),
                n.generators().clone(),
                vec![FreeElement::zero(), FreeElement::unit(0)],
            )
            .unwrap(),
        )
        .unwrap();
        let s = split_sequence(&f, &g, 1, 4).unwrap();
        assert_identity_on_target(&s, &g);
        // the section lands in the second summand
        let sigma = s.in_degree(2);
        let proj_first = f.in_degree(2).transpose();
        assert!(proj_first.mul(&sigma).is_zero());
    }

    #[test]
    fn rejects_non_exact_input() {
        let d = d2();
        let r = M::ring(d);
        let id = FpMorphism::new(r.clone(), r.clone(), ModuleMap::identity(r.generators())).unwrap();
        assert!(matches!(split_sequence(&id, &id, 0, 3), Err(Error::NotExactInput { .. })));
    }
}
