//! Exact arithmetic: weighted polynomials over the rationals, integer
//! matrices, Smith and Hermite normal forms, and subquotient groups.

mod gens;
mod group;
mod hnf;
mod linear;
mod matrix;
mod parse;
mod poly;
mod snf;

pub use gens::{plain_table, table_of, typical_weight, Family, GenTable, Generator, Var};
pub use gens::{B, B_OUTER, C, L, M, T, V, X};
pub use group::{subquotient_group, FinAbGroup, Subquotient};
pub use hnf::{hermite_normal_form, Hnf};
pub use linear::{rational_rank, solve_rational_linear};
pub use matrix::IntMatrix;
pub use parse::parse_poly;
pub use poly::{q, GradedPoly, Monomial};
pub use snf::{invariant_factors, smith_normal_form, Snf};

pub type Q = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("generator tables differ: {0} vs {1}")]
    TableMismatch(String, String),
    #[error("adding homogeneous polynomials of weights {0} and {1}")]
    WeightMismatch(u32, u32),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("linear system is underdetermined (kernel dimension {kernel_dim})")]
    Underdetermined { kernel_dim: usize },
    #[error("differentials do not compose to zero: {0}")]
    ComplexViolation(String),
    #[error("non-integral result: {0}")]
    NonIntegral(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("degree {degree} beyond the supported range {limit}")]
    DegreeGuard { degree: u32, limit: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("identity failed: {0}")]
    Identity(String),
}

/// Serializes big integers as JSON numbers when they fit in an `i64` and as
/// decimal strings otherwise.
pub mod big_json {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::Serializer;

    pub fn value(x: &BigInt) -> serde_json::Value {
        match x.to_i64() {
            Some(v) => v.into(),
            None => x.to_string().into(),
        }
    }

    pub fn one<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_some(&value(x))
    }

    pub fn many<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(value))
    }
}
