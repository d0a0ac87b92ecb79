//! Words, noncommutative polynomials and graded free modules over
//! `R = k⟨x_0, …, x_n⟩`.

mod module;
mod poly;
mod word;

pub use module::{FreeElement, GradedFreeModule, ModuleMap, Monomial};
pub use poly::NcPoly;
pub use word::{Arity, Word};
