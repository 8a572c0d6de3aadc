//! Exact computations with Lie triple systems and their non-abelian extensions.
//!
//! Scalars live in ℚ or a prime field and all arithmetic is exact. The crate
//! covers the axioms and representations of Lie triple systems, Yamaguti
//! cohomology, non-abelian 3-cocycles and the extensions they classify, the
//! graded Lie algebra of cochains with its Maurer-Cartan and gauge structure,
//! and inducibility of automorphism pairs through the Wells map.

pub mod deformation;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod linalg;
pub mod lts;
pub mod nonabelian;
pub mod report;
pub mod samples;
pub mod tensor;
pub mod wells;
pub mod yamaguti;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{Matrix, Subspace, Vector};
pub use lts::{LieAlgebra, LieTripleSystem, Representation};
pub use nonabelian::{Extension, NonAbelianCocycle};
pub use report::{AxiomReport, Check};
pub use tensor::Multilinear;
