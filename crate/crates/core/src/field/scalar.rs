use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use super::FieldError;

/// A constant field: the coefficients of the rational function field `K(t)`.
///
/// Elements carry their field context so that generic code can create zeros
/// and ones without a separate handle. Two backends exist: [`super::Nf`]
/// (the rationals or a single algebraic extension) and [`super::Fp`] (a prime
/// field, used for exhaustive enumeration over a finite residue field).
pub trait Scalar: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, value: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;

    /// True when the element lies in the prime field, so it can be printed
    /// without brackets.
    fn is_prime_field_element(&self) -> bool;

    /// Writes the element in the coefficient text format.
    fn write_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    /// Inverse that treats a failure as a broken invariant of the caller.
    ///
    /// Only reachable through a reducible user-supplied minimal polynomial,
    /// which is reported loudly rather than silently absorbed.
    fn inv_or_panic(&self) -> Self {
        match self.inv() {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }

    fn div_or_panic(&self, other: &Self) -> Self {
        self.mul(&other.inv_or_panic())
    }
}

/// Adapter that lets a scalar be used with `{}`.
pub struct CoeffDisplay<'a, K: Scalar>(pub &'a K);

impl<K: Scalar> Display for CoeffDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_coeff(f)
    }
}
