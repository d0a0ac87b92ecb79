//! Exact computations with graded modules over the free algebra
//! `R = k⟨x_0, …, x_n⟩` and three models of its noncommutative projective
//! space: stable-free classes of coherent objects, the limit algebra
//! `S = lim M_d(k)^{⊗r}`, and the Leavitt algebra `L(1, d)`.

pub mod af_s;
pub mod error;
pub mod field;
pub mod fpmod;
pub mod freealg;
pub mod leavitt;
pub mod linalg;
pub mod parse;
pub mod qgr;
pub mod random;
pub mod submodules;
pub mod verify;

pub use af_s::SElement;
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp, Rational};
pub use fpmod::{FpModule, FpMorphism, StableProfile};
pub use freealg::{Arity, FreeElement, GradedFreeModule, ModuleMap, Monomial, NcPoly, Word};
pub use leavitt::{LeavittElement, LeavittMonomial};
pub use linalg::Matrix;
pub use qgr::{QgrClass, QgrObject};
pub use submodules::{kernel, syzygies, weak_basis, FreeBasis};
