use std::fmt;

use super::{FieldError, Scalar};

/// Residue class modulo a prime `p`. The modulus travels with every value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: Modulus,
}

/// A checked prime modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Modulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(modulus: Modulus, value: i64) -> Self {
        let p = modulus.0 as i64;
        Fp { value: value.rem_euclid(p) as u64, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    /// Every element of the field, in increasing order of representative.
    pub fn all(modulus: Modulus) -> impl Iterator<Item = Fp> {
        (0..modulus.0).map(move |v| Fp { value: v, modulus })
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Scalar for Fp {
    type Ctx = Modulus;

    fn ctx(&self) -> Modulus {
        self.modulus
    }

    fn zero(ctx: &Modulus) -> Self {
        Fp { value: 0, modulus: *ctx }
    }

    fn one(ctx: &Modulus) -> Self {
        Fp { value: 1 % ctx.0, modulus: *ctx }
    }

    fn from_i64(ctx: &Modulus, value: i64) -> Self {
        Fp::new(*ctx, value)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp { value: (self.value + other.value) % self.modulus.0, modulus: self.modulus }
    }

    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let p = self.modulus.0;
        Fp { value: (self.value + p - other.value) % p, modulus: self.modulus }
    }

    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp { value: (self.value * other.value) % self.modulus.0, modulus: self.modulus }
    }

    fn neg(&self) -> Self {
        let p = self.modulus.0;
        Fp { value: (p - self.value) % p, modulus: self.modulus }
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // Fermat: a^(p-2).
        let p = self.modulus.0;
        let (mut base, mut exp, mut acc) = (self.value, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Ok(Fp { value: acc, modulus: self.modulus })
    }

    fn is_prime_field_element(&self) -> bool {
        true
    }

    fn write_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
