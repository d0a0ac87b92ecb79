use crate::af_s::SElement;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fpmod::{DegreeBasis, FpModule};
use crate::freealg::Word;
use crate::linalg::Matrix;

use super::QgrClass;

/// `Hom_k(V^{⊗r}, M_r)` with its right `S_r`-action by precomposition.
///
/// An element is a `dim M_r × d^r` matrix whose column `w` is the image of
/// the word `w`.
#[derive(Clone, Debug)]
pub struct Sections<'a, F: Field> {
    module: &'a FpModule<F>,
    level: u32,
    basis: DegreeBasis,
}

impl<'a, F: Field> Sections<'a, F> {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn basis(&self) -> &DegreeBasis {
        &self.basis
    }

    pub fn words(&self) -> usize {
        self.module.arity().pow(self.level) as usize
    }

    /// `d^r · dim M_r`.
    pub fn dimension(&self) -> usize {
        self.words() * self.basis.len()
    }

    pub fn zero(&self) -> Matrix<F> {
        Matrix::zeros(self.basis.len(), self.words())
    }

    /// `f · s = f ∘ s`.
    pub fn act(&self, f: &Matrix<F>, s: &SElement<F>) -> Result<Matrix<F>> {
        let s = s.embed(self.level)?;
        f.try_mul(s.matrix())
    }

    /// The transition `f ↦ (v ⊗ a ↦ v · f(a))` into level `r + 1`.
    pub fn transition(&self, f: &Matrix<F>) -> (Sections<'a, F>, Matrix<F>) {
        let next = gamma(self.module, self.level + 1);
        let d = self.module.arity().get();
        let n = self.words();
        let mut out = next.zero();
        for v in 0..d {
            let act = self.module.word_action(&Word::letter(v as u8), &self.basis, &next.basis);
            let image = act.mul(f);
            for a in 0..n {
                for r in 0..image.rows() {
                    out.set(r, v * n + a, image.get(r, a).clone());
                }
            }
        }
        (next, out)
    }
}

/// `Γ` at finite level `r`.
pub fn gamma<F: Field>(m: &FpModule<F>, level: u32) -> Sections<'_, F> {
    Sections { module: m, level, basis: m.degree_basis(level as i64) }
}

/// `dim M_r / d^r`, for `r ≥ i0`.
pub fn normalized_rank<F: Field>(m: &FpModule<F>, r: i64) -> Result<QgrClass> {
    let i0 = m.stable_profile().i0;
    if r < i0 {
        return Err(Error::RankNotStabilized { level: r, i0 });
    }
    Ok(QgrClass::new(m.arity(), m.hilbert_by_rank(r), r))
}

/// `ρ_i(f)` on `R_j`: `u·v ↦ u·f(v)` with `|v| = i`.
pub fn rho<F: Field>(f: &SElement<F>, i: u32, j: u32) -> Result<Matrix<F>> {
    if j < i {
        return Err(Error::LevelDecrease { from: i as i64, to: j as i64 });
    }
    let f = f.embed(i)?;
    let d = f.arity();
    let n = d.pow(i) as usize;
    let size = d.pow(j) as usize;
    let mut out = Matrix::zeros(size, size);
    for w in Word::all(d, j as usize) {
        let (u, v) = w.split_at((j - i) as usize);
        let col = w.rank(d);
        let head = u.rank(d) * n;
        let v = v.rank(d);
        for r in 0..n {
            let x = f.matrix().get(r, v);
            if !x.is_zero() {
                out.set(head + r, col, x.clone());
            }
        }
    }
    Ok(out)
}

/// `ψ_i(f)(a_0 ⊗ a_1 ⊗ ⋯ ⊗ a_i) = a_0 ⊗ f(a_1 ⊗ ⋯ ⊗ a_i)`, at level `i + 1`.
pub fn psi<F: Field>(f: &SElement<F>, i: u32) -> Result<SElement<F>> {
    let f = f.embed(i)?;
    let d = f.arity();
    let n = d.pow(i) as usize;
    let mut out = Matrix::zeros(n * d.get(), n * d.get());
    for a0 in 0..d.get() {
        for rest in 0..n {
            for r in 0..n {
                let x = f.matrix().get(r, rest);
                if !x.is_zero() {
                    out.set(a0 * n + r, a0 * n + rest, x.clone());
                }
            }
        }
    }
    SElement::new(d, i + 1, out)
}
