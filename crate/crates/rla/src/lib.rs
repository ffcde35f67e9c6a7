//! Workbench for finite-dimensional restricted Lie algebras over finite
//! fields: exact linear algebra over GF(p^k), subalgebra lattices, structure
//! theory (radicals, tori, root decompositions, Jordan-Chevalley), generator
//! families, and a harness that checks a catalog of lattice-theoretic
//! theorems on concrete instances.
//!
//! Everything is deterministic: identical inputs produce byte-identical
//! reports, witnesses are the first violations in canonical scan order, and
//! enumerations are budgeted rather than silently truncated.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod families;
pub mod field;
pub mod format;
pub mod harness;
pub mod lattice;
pub mod linalg;
pub mod structure;

pub use algebra::{Element, RestrictedLieAlgebra};
pub use error::Error;
pub use field::{FiniteField, Scalar};
pub use harness::{
    catalog, check_instance, corpus, matches_prop_solvable_form, theorem, AggregateReport,
    Analysis, AssertFailure, CorpusConfig, CorpusField, FieldHypothesis, FormMatch,
    InstanceReport, Mode, Outcome, SkippedCheck, TheoremRecord, Totals, DEFAULT_CORPUS_BUDGET,
};
pub use lattice::{LatticeMode, SubalgebraLattice};
pub use linalg::{Mat, Subspace};
pub use structure::{
    AlmostAbelian, ElementClass, Frattini, Radicals, RootDecomposition, SeriesKind,
    SeriesResult, Solvability, Supersolvability,
};

/// Schema version stamped into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// Default enumeration budget (number of subspaces or elements visited).
pub const DEFAULT_BUDGET: u64 = 1_000_000;
