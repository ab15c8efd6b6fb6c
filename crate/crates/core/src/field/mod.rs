//! Exact arithmetic for the coefficient tower `Q → Q(α) → K(t)`, plus the
//! prime fields used for finite-residue enumeration.

mod cosine;
pub mod number_field;
pub mod parse;
mod place;
mod poly;
mod prime;
mod ratfunc;
mod scalar;

pub use cosine::builtin_cosine_field;
pub use number_field::{q, Nf, NumberField, RootInterval};
pub use parse::{parse_coeff, parse_place, parse_ratfunc, parse_rational, TextCoeff};
pub use place::{Place, Valuation};
pub use poly::Poly;
pub use prime::{is_prime, Fp, Modulus};
pub use ratfunc::{LaurentSeries, RatFunc};
pub use scalar::{CoeffDisplay, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible: the minimal polynomial has the factor {factor}")]
    NonInvertible { factor: String },
    #[error("series expansion of zero")]
    ZeroInput,
    #[error("unsupported place: {0}")]
    UnsupportedPlace(String),
    #[error("no built-in cosine field for ({0}, {1}, {2}); supply a number field with explicit cosines")]
    UnsupportedTriple(u32, u32, u32),
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinpoly(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// The four field operations on number-field elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// One arithmetic step in `Q(α)`, returning the reduced representative.
pub fn nf_arith(a: &Nf, b: &Nf, op: ArithOp) -> Result<Nf, FieldError> {
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.try_div(b)?,
    })
}

/// Valuation of `x` at `place`.
pub fn valuation<K: Scalar>(x: &RatFunc<K>, place: &Place<K>) -> Valuation {
    x.valuation(place)
}

/// Laurent expansion of `x` at `place` with `n_terms` coefficients.
pub fn series_expand<K: Scalar>(x: &RatFunc<K>, place: &Place<K>, n_terms: usize) -> Result<LaurentSeries<K>, FieldError> {
    x.series_expand(place, n_terms)
}
