use std::collections::BTreeMap;

use ncproj_core::field::Fp;
use ncproj_core::fpmod::FpModule;
use ncproj_core::leavitt::{flat_decompose, flat_reassemble, l0_to_s, s_to_l0};
use ncproj_core::parse::{parse_leavitt, parse_poly, Presentation};
use ncproj_core::qgr::{gamma, normalized_rank, pi_star, QgrMorphism, TwistedFree};
use ncproj_core::random::{self, Rng64};
use ncproj_core::submodules::{kernel_with, span_dim_in_degree, KernelOptions};
use ncproj_core::{
    weak_basis, Arity, Field, FreeElement, GradedFreeModule, LeavittElement, Matrix, ModuleMap, NcPoly, Rational,
    SElement, Word,
};
use proptest::prelude::*;
use rand::Rng;

type Q = Rational;
type F7 = Fp<7>;

fn arity(d: usize) -> Arity {
    Arity::new(d).unwrap()
}

/// `PROPTEST_CASES` overrides the per-block default.
fn config(cases: u32) -> ProptestConfig {
    let cases = std::env::var("PROPTEST_CASES").ok().and_then(|v| v.parse().ok()).unwrap_or(cases);
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn random_module(rng: &mut Rng64, d: Arity, rank: usize) -> GradedFreeModule {
    GradedFreeModule::new(d, (0..rank).map(|_| rng.gen_range(0..=2)).collect())
}

/// A degree-preserving map `source → target` with random images.
fn random_map<F: Field>(rng: &mut Rng64, source: &GradedFreeModule, target: &GradedFreeModule) -> ModuleMap<F> {
    let images = (0..source.rank())
        .map(|c| {
            let j = source.shift(c);
            if target.graded_piece_dim(j) == 0 {
                FreeElement::zero()
            } else {
                random::free_element(rng, target, j, 3)
            }
        })
        .collect();
    ModuleMap::new(source.clone(), target.clone(), images).unwrap()
}

fn random_poly<F: Field>(rng: &mut Rng64, d: Arity) -> NcPoly<F> {
    let mut p = NcPoly::zero();
    for _ in 0..rng.gen_range(0..=4) {
        let deg = rng.gen_range(0..=3);
        p.add_term(random::word(rng, d, deg), random::nonzero_scalar(rng));
    }
    p
}

fn random_leavitt<F: Field>(rng: &mut Rng64, d: Arity) -> LeavittElement<F> {
    let mut a = LeavittElement::zero(d);
    for _ in 0..rng.gen_range(1..=3) {
        a.add_term(random::leavitt_monomial(rng, d, 3), random::nonzero_scalar(rng));
    }
    a
}

fn random_morphism(rng: &mut Rng64, source: TwistedFree, target: TwistedFree) -> QgrMorphism<Q> {
    let j = source.m.max(target.m) + rng.gen_range(0..=1);
    let m = Matrix::from_fn(target.dim_at(j), source.dim_at(j), |_, _| random::scalar(rng));
    QgrMorphism::new(source, target, j, m).unwrap()
}

/// An idempotent `P D P⁻¹` with `D` diagonal on `support`.
fn conjugated_projection(p: &Matrix<Q>, p_inv: &Matrix<Q>, support: &[usize]) -> Matrix<Q> {
    let n = p.rows();
    let diag = Matrix::from_fn(n, n, |r, c| if r == c && support.contains(&r) { Q::one() } else { Q::zero() });
    p.mul(&diag).mul(p_inv)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn products_are_associative_and_unital(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let (a, b, c) = (random_poly::<Q>(&mut rng, d), random_poly::<Q>(&mut rng, d), random_poly::<Q>(&mut rng, d));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        prop_assert_eq!(a.multiply(&NcPoly::one()), a.clone());
        prop_assert_eq!(NcPoly::one().multiply(&a), a);
    }

    #[test]
    fn graded_pieces_count_words(shifts in prop::collection::vec(-2i64..=3, 0..4), d in 1usize..=3, j in -3i64..=6) {
        let d = arity(d);
        let f = GradedFreeModule::new(d, shifts.clone());
        let expected: u64 = shifts.iter().map(|&b| d.pow_or_zero(j - b)).sum();
        prop_assert_eq!(f.graded_piece_dim(j), expected);
        prop_assert_eq!(f.monomial_basis(j).len() as u64, expected);
    }

    #[test]
    fn degreewise_matrices_compose(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let f1 = random_module(&mut rng, d, 2);
        let f2 = random_module(&mut rng, d, 2);
        let f3 = random_module(&mut rng, d, 2);
        let phi = random_map::<Q>(&mut rng, &f1, &f2);
        let psi = random_map::<Q>(&mut rng, &f2, &f3);
        let both = phi.then(&psi).unwrap();
        for j in 0..=4 {
            prop_assert_eq!(both.map_in_degree(j), psi.map_in_degree(j).mul(&phi.map_in_degree(j)));
        }
    }

    #[test]
    fn weak_bases_are_free_and_stable(seed in any::<u64>(), d in 2usize..=3, rank in 1usize..=2) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let ambient = random_module(&mut rng, d, rank);
        let count = rng.gen_range(1..=3);
        let gens = random::nonzero_elements::<Q>(&mut rng, &ambient, count, 1, 3);
        let b = weak_basis(&ambient, &gens).unwrap();
        for g in &gens {
            prop_assert!(b.reduce(g).is_zero());
        }
        for j in 0..=6 {
            let expected: u64 = b.degrees().iter().map(|&e| d.pow_or_zero(j - e)).sum();
            prop_assert_eq!(b.dim_in_degree(j), expected);
            prop_assert_eq!(expected, span_dim_in_degree(&ambient, &gens, j) as u64);
        }
        let again = weak_basis(&ambient, b.elements()).unwrap();
        prop_assert_eq!(again.degrees(), b.degrees());
    }

    #[test]
    fn kernels_vanish_and_certify(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let src = random_module(&mut rng, d, 3);
        let tgt = random_module(&mut rng, d, 1);
        let phi = random_map::<Q>(&mut rng, &src, &tgt);
        let (ker, cert) = kernel_with(&phi, &KernelOptions::default()).unwrap();
        for v in ker.elements() {
            prop_assert!(phi.apply(v).is_zero());
        }
        for &(_, s, k, im) in &cert.degrees {
            prop_assert_eq!(s, k + im);
        }
    }

    #[test]
    fn hilbert_counts_agree(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let m = random::presentation::<Q>(&mut rng, arity(d));
        for j in -1..=6 {
            prop_assert_eq!(m.hilbert(j), m.hilbert_by_rank(j));
        }
        let p = random::presentation::<F7>(&mut rng, arity(d));
        for j in 0..=5 {
            prop_assert_eq!(p.hilbert(j), p.hilbert_by_rank(j));
        }
    }

    #[test]
    fn profiles_hold_and_match_classes(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let m = random::presentation::<Q>(&mut rng, arity(d));
        let profile = m.stable_profile();
        prop_assert!(m.verify_profile(&profile, profile.i0 + 3));
        prop_assert_eq!(m.k0_class(), profile.class());
        prop_assert!(profile.i0 >= m.generators().min_shift().unwrap_or(0));
        if profile.i0 > m.generators().min_shift().unwrap_or(0) {
            prop_assert!(!m.multiplication_bijective(profile.i0 - 1));
        }
    }

    #[test]
    fn torsion_quotient_is_torsion_free(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let m = random::presentation::<Q>(&mut rng, arity(d));
        let t = m.torsion();
        prop_assert_eq!(t.quotient.torsion().dimension, 0);
        prop_assert!(pi_star(&t.quotient).is_isomorphic(&pi_star(&m)));
    }

    #[test]
    fn truncation_keeps_high_degrees(seed in any::<u64>(), d in 2usize..=3, i in 0i64..=4) {
        let mut rng = random::rng(seed);
        let m = random::presentation::<Q>(&mut rng, arity(d));
        let t = m.truncate(i);
        for j in 0..=6 {
            prop_assert_eq!(t.hilbert(j), if j >= i { m.hilbert(j) } else { 0 });
        }
        prop_assert!(pi_star(&t).is_isomorphic(&pi_star(&m)));
    }

    #[test]
    fn twisting_shifts_class(seed in any::<u64>(), d in 2usize..=3, s in -2i64..=2) {
        let mut rng = random::rng(seed);
        let m = random::presentation::<Q>(&mut rng, arity(d));
        let back = m.twist(s).twist(-s);
        for j in 0..=5 {
            prop_assert_eq!(back.hilbert(j), m.hilbert(j));
        }
        prop_assert!(pi_star(&m.twist(s)).is_isomorphic(&pi_star(&m).twist(s)));
    }

    #[test]
    fn normalized_rank_is_constant(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let m = random::presentation::<Q>(&mut rng, arity(d));
        let i0 = m.stable_profile().i0;
        let first = normalized_rank(&m, i0).unwrap();
        for r in i0 + 1..=i0 + 2 {
            prop_assert_eq!(normalized_rank(&m, r).unwrap(), first);
        }
        prop_assert_eq!(first, m.k0_class());
    }

    #[test]
    fn parse_prints_round_trip(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let p = random_poly::<Q>(&mut rng, d);
        prop_assert_eq!(parse_poly::<Q>(&p.to_string(), d).unwrap(), p);
        let a = random_leavitt::<Q>(&mut rng, d);
        prop_assert_eq!(parse_leavitt::<Q>(&a.to_string(), d).unwrap(), a);
        let m = random::presentation::<Q>(&mut rng, d);
        let text = Presentation::from_module(Some("random".into()), &m).to_string();
        let back = Presentation::<Q>::parse(&text).unwrap().module().unwrap();
        for j in 0..=5 {
            prop_assert_eq!(back.hilbert(j), m.hilbert(j));
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn transition_is_equivariant_and_injective(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let m = random::presentation::<Q>(&mut rng, d);
        let i0 = m.stable_profile().i0.max(0);
        for r in 0..=3u32 {
            let sec = gamma(&m, r);
            if sec.dimension() == 0 || sec.dimension() > 400 {
                continue;
            }
            let f = Matrix::from_fn(sec.basis().len(), sec.words(), |_, _| random::scalar::<Q>(&mut rng));
            let s = random::s_element::<Q>(&mut rng, d, r, None);
            let (next, tf) = sec.transition(&f);
            let (_, tfs) = sec.transition(&sec.act(&f, &s).unwrap());
            prop_assert_eq!(next.act(&tf, &s).unwrap(), tfs);
            if r as i64 >= i0 && !f.is_zero() {
                prop_assert!(!tf.is_zero());
            }
        }
    }

    #[test]
    fn morphism_composition_is_associative(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let mut obj = || TwistedFree::new(d, rng.gen_range(-1..=1), rng.gen_range(1..=2));
        let (a, b, c, e) = (obj(), obj(), obj(), obj());
        let f = random_morphism(&mut rng, a, b);
        let g = random_morphism(&mut rng, b, c);
        let h = random_morphism(&mut rng, c, e);
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(f.then(&QgrMorphism::identity(b)).unwrap(), f.clone());
        prop_assert_eq!(QgrMorphism::identity(a).then(&f).unwrap(), f);
    }

    #[test]
    fn embedding_is_a_homomorphism(seed in any::<u64>(), d in 2usize..=3, level in 0u32..=1) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let a = random::s_element::<Q>(&mut rng, d, level, None);
        let b = random::s_element::<Q>(&mut rng, d, level + 1, None);
        let top = level + 2;
        let (ea, eb) = (a.embed(top).unwrap(), b.embed(top).unwrap());
        prop_assert_eq!(a.mul(&b).embed(top).unwrap().matrix().clone(), ea.matrix().mul(eb.matrix()));
        prop_assert_eq!(a.add(&b).embed(top).unwrap().matrix().clone(), ea.matrix().try_add(eb.matrix()).unwrap());
        prop_assert_eq!(ea.canonical().matrix().clone(), a.canonical().matrix().clone());
        prop_assert_eq!(ea.normalized_trace(), a.normalized_trace());
        prop_assert_eq!(a.mul(&b).normalized_trace(), b.mul(&a).normalized_trace());
    }

    #[test]
    fn k0_is_additive_on_orthogonal_idempotents(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let n = d.pow(1) as usize;
        let (p, p_inv) = loop {
            let p = Matrix::from_fn(n, n, |_, _| random::scalar::<Q>(&mut rng));
            if let Some(inv) = p.inverse() {
                break (p, inv);
            }
        };
        let mut first = Vec::new();
        let mut second = Vec::new();
        for k in 0..n {
            match rng.gen_range(0..3) {
                0 => first.push(k),
                1 => second.push(k),
                _ => {}
            }
        }
        let both: Vec<usize> = first.iter().chain(&second).copied().collect();
        let e1 = SElement::new(d, 1, conjugated_projection(&p, &p_inv, &first)).unwrap();
        let e2 = SElement::new(d, 1, conjugated_projection(&p, &p_inv, &second)).unwrap();
        let e12 = SElement::new(d, 1, conjugated_projection(&p, &p_inv, &both)).unwrap();
        prop_assert!(e1.mul(&e2).is_zero());
        let sum = e1.k0_class().unwrap().checked_add(&e2.k0_class().unwrap()).unwrap();
        prop_assert_eq!(e12.k0_class().unwrap(), sum);
        prop_assert_eq!(e12.k0_class().unwrap(), e12.embed(2).unwrap().k0_class().unwrap());
    }

    #[test]
    fn regular_witness_solves(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let a = random::nonzero_s_element::<F7>(&mut rng, arity(d), 1);
        let b = a.vn_regular_witness();
        prop_assert_eq!(a.mul(&b).mul(&a), a);
    }

    #[test]
    fn leavitt_products_are_associative_and_graded(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let (a, b, c) = (random_leavitt::<Q>(&mut rng, d), random_leavitt::<Q>(&mut rng, d), random_leavitt::<Q>(&mut rng, d));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&LeavittElement::one(d)), a.clone());
        let (ma, mb) = (random::leavitt_monomial(&mut rng, d, 3), random::leavitt_monomial(&mut rng, d, 3));
        let x = LeavittElement::<Q>::monomial(d, ma.clone(), Q::one());
        let y = LeavittElement::<Q>::monomial(d, mb.clone(), Q::one());
        let xy = x.mul(&y);
        if !xy.is_zero() {
            prop_assert_eq!(xy.homogeneous_degree(), Some(ma.degree() + mb.degree()));
        }
    }

    #[test]
    fn the_free_algebra_embeds(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let (p, q) = (random_poly::<Q>(&mut rng, d), random_poly::<Q>(&mut rng, d));
        let prod = LeavittElement::from_poly(d, &p).mul(&LeavittElement::from_poly(d, &q));
        prop_assert_eq!(prod.to_poly(), Some(p.multiply(&q)));
        prop_assert_eq!(LeavittElement::from_poly(d, &p).to_poly(), Some(p));
    }

    #[test]
    fn degree_zero_part_matches_matrices(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let a = random::degree_zero_element::<Q>(&mut rng, d, 2, 3);
        let b = random::degree_zero_element::<Q>(&mut rng, d, 2, 3);
        let (sa, sb) = (l0_to_s(&a).unwrap(), l0_to_s(&b).unwrap());
        prop_assert_eq!(l0_to_s(&a.mul(&b)).unwrap(), sa.mul(&sb));
        prop_assert_eq!(s_to_l0(&sa), a);
    }

    #[test]
    fn flat_filtration_increases(seed in any::<u64>(), d in 2usize..=3, r in 0usize..=2) {
        let mut rng = random::rng(seed);
        let d = arity(d);
        let parts = random::flat_parts::<Q>(&mut rng, d, r);
        let a = random::disguised_flat_member(&mut rng, d, &parts);
        let found = flat_decompose(&a, r).unwrap();
        prop_assert_eq!(flat_reassemble(d, &found), a.clone());
        let higher: BTreeMap<Word, NcPoly<Q>> = flat_decompose(&a, r + 1).unwrap();
        prop_assert_eq!(flat_reassemble(d, &higher), a);
    }
}

#[test]
fn fixed_modules_have_free_truncations() {
    let d = arity(2);
    let m = FpModule::<Q>::ring_mod_power(d, 2);
    assert!(pi_star(&m).is_zero());
    let r = FpModule::<Q>::ring(d);
    for i in 0..=5 {
        assert!(pi_star(&r.truncate(i)).is_isomorphic(&pi_star(&r)));
    }
}
