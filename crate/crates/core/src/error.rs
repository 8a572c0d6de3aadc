use thiserror::Error;

use crate::field::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a Lie algebra: {axiom} fails at {witness:?}")]
    NotLieAlgebra { axiom: String, witness: Vec<usize> },
    #[error("cochain constraint {constraint} violated at {witness:?}")]
    CochainConstraint { constraint: String, witness: Vec<usize> },
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("bracket value at {0:?} escapes the image of h, so it is not an ideal")]
    NotIdeal(Vec<usize>),
    #[error("quotient bracket differs from the base bracket at {0:?}")]
    QuotientMismatch(Vec<usize>),
    #[error("exhaustive search over the rationals is unsupported; supply a witness")]
    SearchOverRationals,
    #[error("search needs {needed} candidates, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("{0} is singular")]
    Singular(String),
    #[error("{0} is not an automorphism")]
    NotAutomorphism(String),
    #[error("automorphism does not preserve the image of h")]
    NotRestricted,
    #[error("{what} is not a Maurer-Cartan element")]
    NotMaurerCartan { what: String },
    #[error("gauge parameter must map g into h and vanish on h")]
    GaugeShape,
    #[error("{0} is not invertible in {1}")]
    NotInvertible(i64, FieldSpec),
    #[error("witness rejected: {identity} fails at {witness:?}")]
    WitnessRejected { identity: String, witness: Vec<usize> },
    #[error("automorphism is not in the kernel of lambda")]
    NotInKernel,
    #[error("the image of h is not an abelian ideal")]
    NotAbelian,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
