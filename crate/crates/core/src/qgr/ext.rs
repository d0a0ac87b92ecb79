use crate::error::Result;
use crate::field::Field;
use crate::fpmod::FpModule;
use crate::freealg::{Arity, FreeElement, GradedFreeModule, Monomial, NcPoly};

/// `coker(R → R(1)^d)`, `1 ↦ (x_0, …, x_{d-1})`, as a right module.
///
/// Right modules are left modules over the opposite ring, identified with
/// `R` by reversing words.
pub fn ext1_module<F: Field>(d: Arity) -> Result<FpModule<F>> {
    let row: Vec<NcPoly<F>> = (0..d.get()).map(|c| NcPoly::letter(c as u8).reversed()).collect();
    let target = GradedFreeModule::uniform(d, -1, d.get());
    let mut rel = FreeElement::zero();
    for (c, p) in row.iter().enumerate() {
        for (w, x) in p.terms() {
            rel.add_term(Monomial::new(c, w.clone()), x.clone());
        }
    }
    FpModule::from_relations(target, vec![rel])
}

/// `dim Ext¹_R(k, R)_j`, from the rank of the cokernel in degree `j`.
pub fn ext1_k_r_dim<F: Field>(d: Arity, j: i64) -> Result<u64> {
    Ok(ext1_module::<F>(d)?.hilbert_by_rank(j))
}

/// `d` at `j = -1`, `(d² - 1)·d^j` for `j ≥ 0`.
pub fn ext1_closed_form(d: Arity, j: i64) -> u64 {
    let n = d.get() as u64;
    match j {
        j if j < -1 => 0,
        -1 => n,
        j => (n * n - 1) * d.pow(j as u32),
    }
}
