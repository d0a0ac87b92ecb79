//! Free bases of graded left submodules of graded free modules.
//!
//! Over a free algebra, the leading monomial of `u·g` is `u·LM(g)`, so two
//! elements interfere only when one leading word is a suffix of the other
//! (in the same coordinate). Reducing generators degree by degree against
//! the basis built so far therefore yields a free basis directly; the
//! generators that reduce to zero record the relations among the inputs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{FreeElement, GradedFreeModule, ModuleMap, Monomial, NcPoly, Word};
use crate::linalg::RowEchelon;

/// A free basis of a graded submodule, with the change of generators.
#[derive(Clone, Debug)]
pub struct FreeBasis<F> {
    ambient: GradedFreeModule,
    elements: Vec<FreeElement<F>>,
    degrees: Vec<i64>,
    leading: HashMap<Monomial, usize>,
    generator_degrees: Vec<i64>,
    /// `b_k = Σ_i to_generators[k][i] · g_i`
    to_generators: Vec<Vec<NcPoly<F>>>,
    /// `g_i = Σ_k from_generators[i][k] · b_k`
    from_generators: Vec<Vec<NcPoly<F>>>,
    /// Coefficient rows `r` with `Σ_i r_i g_i = 0`, one per generator that reduced to zero.
    syzygy_rows: Vec<Vec<NcPoly<F>>>,
}

impl<F: Field> FreeBasis<F> {
    pub fn empty(ambient: GradedFreeModule) -> Self {
        FreeBasis {
            ambient,
            elements: Vec::new(),
            degrees: Vec::new(),
            leading: HashMap::new(),
            generator_degrees: Vec::new(),
            to_generators: Vec::new(),
            from_generators: Vec::new(),
            syzygy_rows: Vec::new(),
        }
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn elements(&self) -> &[FreeElement<F>] {
        &self.elements
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_generators(&self) -> &[Vec<NcPoly<F>>] {
        &self.to_generators
    }

    pub fn from_generators(&self) -> &[Vec<NcPoly<F>>] {
        &self.from_generators
    }

    pub fn syzygy_rows(&self) -> &[Vec<NcPoly<F>>] {
        &self.syzygy_rows
    }

    pub fn generator_degrees(&self) -> &[i64] {
        &self.generator_degrees
    }

    /// The free module `⊕_k R(-deg b_k)` this basis identifies with the submodule.
    pub fn free_module(&self) -> GradedFreeModule {
        GradedFreeModule::new(self.ambient.arity(), self.degrees.clone())
    }

    /// Inclusion `⊕_k R(-deg b_k) → ambient`.
    pub fn inclusion(&self) -> ModuleMap<F> {
        ModuleMap::new(self.free_module(), self.ambient.clone(), self.elements.clone())
            .expect("basis elements are homogeneous of their recorded degree")
    }

    /// `dim_k` of the submodule in degree `j`, read off from freeness.
    pub fn dim_in_degree(&self, j: i64) -> u64 {
        self.free_module().graded_piece_dim(j)
    }

    pub fn is_leading(&self, m: &Monomial) -> bool {
        self.leading.contains_key(m)
    }

    fn find_divisor(&self, m: &Monomial) -> Option<(usize, Word)> {
        let letters = m.word.letters();
        (0..=letters.len()).find_map(|k| {
            let suffix = Monomial::new(m.coord, Word::new(letters[k..].to_vec()));
            self.leading.get(&suffix).map(|&idx| (idx, Word::new(letters[..k].to_vec())))
        })
    }

    /// Normal form of `m`: no monomial of the result is a left multiple of a leading monomial.
    pub fn reduce(&self, m: &FreeElement<F>) -> FreeElement<F> {
        self.reduce_tracked(m).0
    }

    /// Normal form plus quotients: `m = Σ_k q_k b_k + reduce(m)`.
    pub fn reduce_tracked(&self, m: &FreeElement<F>) -> (FreeElement<F>, Vec<NcPoly<F>>) {
        let mut rem = m.clone();
        let mut quotients = vec![NcPoly::zero(); self.elements.len()];
        let mut cursor: Option<Monomial> = None;
        loop {
            let next = rem
                .terms_after(cursor.as_ref())
                .find_map(|(mon, c)| self.find_divisor(mon).map(|(idx, u)| (mon.clone(), c.clone(), idx, u)));
            let Some((mon, c, idx, u)) = next else { break };
            // basis elements are monic, so the factor is the coefficient itself
            rem.add_scaled_left_multiple(&self.elements[idx], &u, &-c.clone());
            quotients[idx].add_term(u, c);
            cursor = Some(mon);
        }
        (rem, quotients)
    }

    pub fn contains(&self, m: &FreeElement<F>) -> bool {
        self.reduce(m).is_zero()
    }

    /// Left linear independence checked degreewise: the elements `u·b_k`
    /// spanning degree `j` must have rank equal to their count.
    pub fn verify_free_in_degree(&self, j: i64) -> bool {
        let width = self.ambient.graded_piece_dim(j) as usize;
        let mut ech = RowEchelon::new(width);
        let mut count = 0usize;
        for (b, &deg) in self.elements.iter().zip(&self.degrees) {
            if deg > j {
                continue;
            }
            for u in Word::all(self.ambient.arity(), (j - deg) as usize) {
                count += 1;
                if !ech.insert(b.left_mul_word(&u).to_sparse(&self.ambient)) {
                    return false;
                }
            }
        }
        count == ech.rank()
    }

    fn push(&mut self, element: FreeElement<F>, degree: i64, row: Vec<NcPoly<F>>) {
        let (lead, _) = element.leading().expect("nonzero basis element");
        self.leading.insert(lead.clone(), self.elements.len());
        self.elements.push(element);
        self.degrees.push(degree);
        self.to_generators.push(row);
    }
}

/// Dimension of the span of `{u·g}` in degree `j`, by plain linear algebra.
pub fn span_dim_in_degree<F: Field>(ambient: &GradedFreeModule, gens: &[FreeElement<F>], j: i64) -> usize {
    let mut ech = RowEchelon::new(ambient.graded_piece_dim(j) as usize);
    for g in gens {
        let Some(deg) = g.degree_in(ambient) else { continue };
        if deg > j {
            continue;
        }
        for u in Word::all(ambient.arity(), (j - deg) as usize) {
            ech.insert(g.left_mul_word(&u).to_sparse(ambient));
        }
    }
    ech.rank()
}

/// Free basis of the submodule generated by homogeneous `generators`.
pub fn weak_basis<F: Field>(ambient: &GradedFreeModule, generators: &[FreeElement<F>]) -> Result<FreeBasis<F>> {
    let mut degrees = Vec::with_capacity(generators.len());
    for g in generators {
        if !g.fits(ambient) {
            return Err(Error::DimensionMismatch("generator does not fit the ambient module".into()));
        }
        match g.degree_in(ambient) {
            Some(deg) => degrees.push(deg),
            None if g.is_zero() => degrees.push(0),
            None => return Err(Error::NotHomogeneous),
        }
    }
    Ok(weak_basis_with_degrees(ambient, generators, &degrees))
}

/// As [`weak_basis`], with generator degrees supplied (needed for zero generators).
pub fn weak_basis_with_degrees<F: Field>(
    ambient: &GradedFreeModule,
    generators: &[FreeElement<F>],
    degrees: &[i64],
) -> FreeBasis<F> {
    let n = generators.len();
    let mut basis = FreeBasis::empty(ambient.clone());
    basis.generator_degrees = degrees.to_vec();
    basis.from_generators = vec![Vec::new(); n];

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| degrees[i]);

    for i in order {
        let (rem, quotients) = basis.reduce_tracked(&generators[i]);
        // e_i - Σ_k q_k c_k, expressed in the generators
        let mut row = vec![NcPoly::zero(); n];
        row[i] = NcPoly::one();
        for (q, c) in quotients.iter().zip(&basis.to_generators) {
            if q.is_zero() {
                continue;
            }
            for (slot, ck) in row.iter_mut().zip(c) {
                if !ck.is_zero() {
                    *slot = &*slot - &q.multiply(ck);
                }
            }
        }
        let mut expression = quotients;
        if rem.is_zero() {
            basis.syzygy_rows.push(row);
        } else {
            let lc = rem.leading().map(|(_, c)| c.clone()).expect("nonzero");
            let inv = lc.inv().expect("nonzero leading coefficient");
            let monic = rem.scale(&inv);
            let row = row.iter().map(|p| p.scale(&inv)).collect();
            basis.push(monic, degrees[i], row);
            expression.push(NcPoly::constant(lc));
        }
        basis.from_generators[i] = expression;
    }
    let k = basis.len();
    for e in &mut basis.from_generators {
        e.resize(k, NcPoly::zero());
    }
    basis
}

/// Options for [`kernel_with`].
#[derive(Clone, Copy, Debug)]
pub struct KernelOptions {
    /// Highest degree at which the Hilbert identity is checked; `None` uses
    /// `max source shift + max entry degree + slack`.
    pub cap: Option<i64>,
    pub slack: i64,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions { cap: None, slack: 4 }
    }
}

/// Degreewise evidence that a kernel basis generates the whole kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate {
    pub cap: i64,
    /// `(j, dim src_j, dim ker_j, rank φ_j)` for every checked degree.
    pub degrees: Vec<(i64, u64, u64, u64)>,
}

/// Free basis of `ker φ`, certified up to the default cap.
pub fn kernel<F: Field>(phi: &ModuleMap<F>) -> Result<FreeBasis<F>> {
    kernel_with(phi, &KernelOptions::default()).map(|(b, _)| b)
}

pub fn kernel_with<F: Field>(phi: &ModuleMap<F>, opts: &KernelOptions) -> Result<(FreeBasis<F>, KernelCertificate)> {
    let source = phi.source();
    let image_basis = weak_basis_with_degrees(phi.target(), phi.images(), source.shifts());
    let syz: Vec<FreeElement<F>> =
        image_basis.syzygy_rows().iter().map(|row| FreeElement::from_coordinates(row)).collect();
    let ker = weak_basis(source, &syz)?;

    let lo = source.min_shift().unwrap_or(0);
    let cap = opts
        .cap
        .unwrap_or_else(|| source.max_shift().unwrap_or(0) + phi.max_entry_degree().unwrap_or(0).max(0) + opts.slack);
    let mut cert = KernelCertificate { cap, degrees: Vec::new() };
    for j in lo..=cap {
        let src = source.graded_piece_dim(j);
        let k = ker.dim_in_degree(j);
        let im = phi.rank_in_degree(j) as u64;
        cert.degrees.push((j, src, k, im));
        if src != k + im {
            return Err(Error::GenerationNotCertified { cap, degree: j });
        }
    }
    Ok((ker, cert))
}

/// Relations among `generators`: free basis of the kernel of `e_i ↦ g_i`.
pub fn syzygies<F: Field>(ambient: &GradedFreeModule, generators: &[FreeElement<F>]) -> Result<FreeBasis<F>> {
    let degrees = generators
        .iter()
        .map(|g| match g.degree_in(ambient) {
            Some(d) => Ok(d),
            None if g.is_zero() => Ok(0),
            None => Err(Error::NotHomogeneous),
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = ModuleMap::from_generators(ambient.clone(), generators, &degrees)?;
    kernel(&phi)
}
