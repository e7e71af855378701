//! Exact-arithmetic workbench for cyclic cohomology of finite-dimensional
//! algebras, with Hopf-algebra symmetries.
//!
//! The crate computes plain, constant, and equivariant cyclic cohomology over
//! the rationals from the Connes (b,B)-bicomplex, builds crossed products
//! A⋊H of module algebras, and machine-checks the correspondence between the
//! equivariant theory of A and the H-constant theory of A⋊H down to exact
//! matrix identities.

pub mod algebra;
pub mod algebra_complex;
pub mod cocyclic;
pub mod correspondence;
pub mod equivariant;
pub mod hopf;
pub mod registry;
pub mod report;
pub mod scalar;
pub mod sparse;
pub mod specfile;
pub mod subspace;

pub use algebra::{StructureConstantAlgebra, SubalgebraInclusion};
pub use hopf::{CrossedProductAlgebra, HopfAlgebraData, ModuleAlgebraAction};
pub use report::{HcReport, ValidationReport};
pub use scalar::Scalar;
pub use sparse::{LinalgError, SparseMatrix};
pub use subspace::{nullspace, rank, restrict_operator, LinearSubspace};
