//! Exact linear algebra over GF(p^k): dense matrices with reduced row
//! echelon form, canonical subspaces, and budgeted subspace enumeration.

mod enumerate;
mod mat;
mod subspace;

pub use enumerate::{enumerate_subspaces, gaussian_binomial, subspace_count};
pub use mat::Mat;
pub use subspace::Subspace;
