//! Exact arithmetic: integer polynomials and matrices, number fields,
//! real quadratic fields, irreducibility and Pisot certificates.

mod factor;
mod field;
mod matrix;
mod perron;
mod pisot;
mod poly;
mod quadratic;
mod roots;

use thiserror::Error;

pub use factor::{factor, is_irreducible_over_q, Irreducibility};
pub use field::{q_linear_rank_field, FieldElement, NumberField};
pub use matrix::{hermite_normal_form, hnf_contains, rational_rank, IntMatrix};
pub use perron::{perron_data, PerronData};
pub use pisot::{is_pisot, pisot_certificate, unit_circle_split, PisotCertificate};
pub use poly::{IntPolynomial, RatPoly};
pub use quadratic::{check_square_free, parse_rational, q_linear_rank_quadratic, rational_string, QuadraticElement};
pub use roots::{largest_real_root, RootInterval, SturmChain};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational number (always reduced, positive denominator).
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("dimension mismatch: {left:?} times {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial has no real root greater than 1")]
    NoRootAboveOne,
    #[error("matrix is not primitive")]
    NotPrimitive,
    #[error("elements belong to different fields")]
    MixedFields,
    #[error("interval does not isolate exactly one root")]
    NotIsolating,
    #[error("{0} is not a positive square-free integer")]
    NotSquareFree(u32),
    #[error("cannot parse {0:?} as a rational number")]
    BadRational(String),
    #[error("exact certification did not converge")]
    CertificationFailed,
}

/// Either kind of field element, for rank computations.
#[derive(Clone, Debug)]
pub enum AlgebraicNumber {
    Field(FieldElement),
    Quadratic(QuadraticElement),
}

/// Dimension over `Q` of the span of `xs`; all elements must share a field.
pub fn q_linear_rank(xs: &[AlgebraicNumber]) -> Result<usize, AlgebraError> {
    let mut fe = Vec::new();
    let mut qe = Vec::new();
    for x in xs {
        match x {
            AlgebraicNumber::Field(f) => fe.push(f.clone()),
            AlgebraicNumber::Quadratic(q) => qe.push(q.clone()),
        }
    }
    match (fe.is_empty(), qe.is_empty()) {
        (true, true) => Ok(0),
        (false, true) => q_linear_rank_field(&fe),
        (true, false) => q_linear_rank_quadratic(&qe),
        (false, false) => Err(AlgebraError::MixedFields),
    }
}

/// Characteristic polynomial `det(xI − M)`.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial, AlgebraError> {
    m.char_poly()
}
