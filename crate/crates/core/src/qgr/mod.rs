//! The quotient category `qgr R` of coherent objects modulo finite-dimensional ones.

pub mod class;
pub mod ext;
pub mod morphism;
pub mod object;
pub mod sections;
pub mod split;

pub use class::QgrClass;
pub use ext::{ext1_closed_form, ext1_k_r_dim, ext1_module};
pub use morphism::{hom_space, structure_sheaf_splitting, QgrMorphism, QgrMorphismSpace, TwistedFree};
pub use object::{pi_star, QgrObject};
pub use sections::{gamma, normalized_rank, psi, rho, Sections};
pub use split::{split_sequence, Section};
