use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use super::{Poly, RatFunc, Scalar};

/// A degree-one place of `K(t)`: the points of the projective line over `K`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place<K: Scalar> {
    /// `t = 0`, uniformizer `t`.
    Zero,
    /// `t = ∞`, uniformizer `1/t`.
    Infinity,
    /// `t = a`, uniformizer `t - a`.
    Finite(K),
}

impl<K: Scalar> Place<K> {
    /// `Finite(0)` is the same place as `Zero`; fold it so places compare sanely.
    pub fn finite(a: K) -> Self {
        if a.is_zero() {
            Place::Zero
        } else {
            Place::Finite(a)
        }
    }

    /// The chosen uniformizer as an element of `K(t)`.
    pub fn uniformizer(&self, ctx: &K::Ctx) -> RatFunc<K> {
        match self {
            Place::Zero => RatFunc::var(ctx),
            Place::Infinity => RatFunc::var(ctx).inv().unwrap(),
            Place::Finite(a) => RatFunc::from_poly(Poly::new(ctx, vec![a.neg(), K::one(ctx)])),
        }
    }
}

impl<K: Scalar> fmt::Display for Place<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Zero => write!(f, "zero"),
            Place::Infinity => write!(f, "infinity"),
            Place::Finite(a) => {
                write!(f, "finite:")?;
                a.write_coeff(f)
            }
        }
    }
}

/// A value of a discrete valuation; `Infinity` (the valuation of zero) is
/// ordered above every integer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Valuation::Finite(v) if v < 0)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinity => s.serialize_str("inf"),
        }
    }
}
