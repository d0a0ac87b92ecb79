//! Seeded generators for property checks and the verification suite.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::af_s::SElement;
use crate::field::Field;
use crate::fpmod::{FpModule, FpMorphism};
use crate::freealg::{Arity, FreeElement, GradedFreeModule, Monomial, NcPoly, Word};
use crate::leavitt::{flat_reassemble, LeavittElement, LeavittMonomial};
use crate::linalg::Matrix;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small integer or ratio, possibly zero.
pub fn scalar<F: Field>(rng: &mut Rng64) -> F {
    let num = rng.gen_range(-3i64..=3);
    if rng.gen_bool(0.25) {
        let den = rng.gen_range(1i64..=3);
        F::from_i64(num).div(&F::from_i64(den)).unwrap_or_else(|| F::from_i64(num))
    } else {
        F::from_i64(num)
    }
}

pub fn nonzero_scalar<F: Field>(rng: &mut Rng64) -> F {
    loop {
        let c = scalar::<F>(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn word(rng: &mut Rng64, d: Arity, len: usize) -> Word {
    Word::new((0..len).map(|_| rng.gen_range(0..d.get()) as u8).collect())
}

/// Homogeneous of degree `deg`, with at most `terms` terms.
pub fn homogeneous_poly<F: Field>(rng: &mut Rng64, d: Arity, deg: usize, terms: usize) -> NcPoly<F> {
    let mut p = NcPoly::zero();
    for _ in 0..terms {
        p.add_term(word(rng, d, deg), nonzero_scalar(rng));
    }
    p
}

/// A homogeneous element of degree `j` in `module`, possibly zero.
pub fn free_element<F: Field>(rng: &mut Rng64, module: &GradedFreeModule, j: i64, terms: usize) -> FreeElement<F> {
    let mut e = FreeElement::zero();
    let coords: Vec<usize> = (0..module.rank()).filter(|&c| module.shift(c) <= j).collect();
    if coords.is_empty() {
        return e;
    }
    for _ in 0..terms {
        let c = *coords.choose(rng).expect("nonempty");
        let w = word(rng, module.arity(), (j - module.shift(c)) as usize);
        e.add_term(Monomial::new(c, w), nonzero_scalar(rng));
    }
    e
}

/// Random nonzero homogeneous elements of `module` in degrees `lo..=hi`.
pub fn nonzero_elements<F: Field>(
    rng: &mut Rng64,
    module: &GradedFreeModule,
    count: usize,
    lo: i64,
    hi: i64,
) -> Vec<FreeElement<F>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let j = rng.gen_range(lo..=hi);
        let terms = rng.gen_range(1..=3);
        let e = free_element(rng, module, j, terms);
        if !e.is_zero() {
            out.push(e);
        }
    }
    out
}

/// A module on at most three generators with shifts in `0..=1` and up to
/// three relations of degree at most two above the generators.
pub fn presentation<F: Field>(rng: &mut Rng64, d: Arity) -> FpModule<F> {
    let gens = GradedFreeModule::new(d, (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=1)).collect());
    let nrels = rng.gen_range(0..=3);
    let rels = nonzero_elements(rng, &gens, nrels, 1, 3);
    FpModule::from_relations(gens, rels).expect("random relations are homogeneous")
}

/// `0 → L → M → N → 0` with `L` generated by random elements of `M`.
pub struct ExactSequence<F: Field> {
    pub l: FpModule<F>,
    pub m: FpModule<F>,
    pub n: FpModule<F>,
    pub f: FpMorphism<F>,
    pub g: FpMorphism<F>,
}

pub fn exact_sequence<F: Field>(rng: &mut Rng64, d: Arity) -> ExactSequence<F> {
    let m = presentation::<F>(rng, d);
    let count = rng.gen_range(1..=2);
    let gens = nonzero_elements(rng, m.generators(), count, 1, 2);
    let (l, f) = m.submodule(&gens).expect("homogeneous generators");
    let (n, g) = m.quotient(&gens).expect("homogeneous generators");
    ExactSequence { l, m, n, f, g }
}

/// A dense random matrix at `level`, of rank at most `rank` when given.
pub fn s_element<F: Field>(rng: &mut Rng64, d: Arity, level: u32, rank: Option<usize>) -> SElement<F> {
    let n = d.pow(level) as usize;
    let m = match rank {
        None => Matrix::from_fn(n, n, |_, _| scalar(rng)),
        Some(k) => {
            let b = Matrix::from_fn(n, k, |_, _| scalar(rng));
            let c = Matrix::from_fn(k, n, |_, _| scalar(rng));
            b.mul(&c)
        }
    };
    SElement::new(d, level, m).expect("square of the right size")
}

pub fn nonzero_s_element<F: Field>(rng: &mut Rng64, d: Arity, level: u32) -> SElement<F> {
    loop {
        let n = d.pow(level) as usize;
        let rank = rng.gen_range(1..=n);
        let a = s_element(rng, d, level, Some(rank));
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn leavitt_monomial(rng: &mut Rng64, d: Arity, max_len: usize) -> LeavittMonomial {
    let a = rng.gen_range(0..=max_len);
    let b = rng.gen_range(0..=max_len);
    LeavittMonomial::new(word(rng, d, a), word(rng, d, b))
}

/// A degree-zero element with monomials at levels up to `max_level`.
pub fn degree_zero_element<F: Field>(rng: &mut Rng64, d: Arity, max_level: usize, terms: usize) -> LeavittElement<F> {
    let mut e = LeavittElement::zero(d);
    for _ in 0..terms {
        let r = rng.gen_range(0..=max_level);
        e.add_term(LeavittMonomial::new(word(rng, d, r), word(rng, d, r)), nonzero_scalar(rng));
    }
    e
}

/// Coefficients `r_w` for a member `Σ_w w*·r_w` of `F_r`, every word present.
pub fn flat_parts<F: Field>(rng: &mut Rng64, d: Arity, r: usize) -> BTreeMap<Word, NcPoly<F>> {
    Word::all(d, r)
        .map(|w| {
            let mut p = NcPoly::zero();
            if rng.gen_bool(0.7) {
                for _ in 0..rng.gen_range(1..=3) {
                    let deg = rng.gen_range(0..=3);
                    p.add_term(word(rng, d, deg), nonzero_scalar(rng));
                }
            }
            (w, p)
        })
        .collect()
}

/// `Σ_w w*·r_w`, with some degrees rewritten one or two levels higher.
pub fn disguised_flat_member<F: Field>(
    rng: &mut Rng64,
    d: Arity,
    parts: &BTreeMap<Word, NcPoly<F>>,
) -> LeavittElement<F> {
    let mut a = flat_reassemble(d, parts);
    for m in a.degrees() {
        if rng.gen_bool(0.5) {
            let lvl = a.max_level(m).expect("present") + rng.gen_range(1..=2);
            a = a.raise_level(m, lvl).expect("raising");
        }
    }
    a
}
