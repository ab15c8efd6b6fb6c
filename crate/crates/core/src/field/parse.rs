//! Text format for rational functions: `3/2*t^2 - t + 1`, `(t^2+1)/t`,
//! `[0, 1/2]*s^-1`. Bracketed sequences are number-field coefficients in the
//! power basis of the generator.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{FieldError, Fp, Modulus, Nf, NumberField, Place, RatFunc, Scalar};

/// Scalars that can be read from the coefficient text format.
pub trait TextCoeff: Scalar {
    fn from_integer(ctx: &Self::Ctx, n: &BigInt) -> Self;
    fn from_power_basis(ctx: &Self::Ctx, coeffs: &[BigRational]) -> Result<Self, FieldError>;
}

impl TextCoeff for Nf {
    fn from_integer(ctx: &Arc<NumberField>, n: &BigInt) -> Self {
        Nf::rational(ctx, BigRational::from_integer(n.clone()))
    }

    fn from_power_basis(ctx: &Arc<NumberField>, coeffs: &[BigRational]) -> Result<Self, FieldError> {
        if coeffs.len() > ctx.degree() {
            return Err(FieldError::Parse {
                pos: 0,
                msg: format!("{} coefficients given for a degree-{} field", coeffs.len(), ctx.degree()),
            });
        }
        Ok(Nf::new(ctx, coeffs.to_vec()))
    }
}

impl TextCoeff for Fp {
    fn from_integer(ctx: &Modulus, n: &BigInt) -> Self {
        let p = BigInt::from(ctx.get());
        let r = ((n % &p) + &p) % &p;
        Fp::new(*ctx, r.to_i64().unwrap())
    }

    fn from_power_basis(ctx: &Modulus, coeffs: &[BigRational]) -> Result<Self, FieldError> {
        if coeffs.len() > 1 {
            return Err(FieldError::Parse { pos: 0, msg: "prime fields have no algebraic generator".into() });
        }
        let Some(c) = coeffs.first() else {
            return Ok(Fp::zero(ctx));
        };
        let num = Self::from_integer(ctx, c.numer());
        let den = Self::from_integer(ctx, c.denom());
        Ok(num.mul(&den.inv()?))
    }
}

struct Parser<'a, K: TextCoeff> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a K::Ctx,
    var: &'a str,
}

type PResult<T> = Result<T, FieldError>;

impl<'a, K: TextCoeff> Parser<'a, K> {
    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(FieldError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> PResult<RatFunc<K>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<RatFunc<K>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| FieldError::Parse { pos: at, msg: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<RatFunc<K>> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> PResult<RatFunc<K>> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            let e = n.to_i64().filter(|e| *e <= 10_000);
            let Some(e) = e else {
                return self.err("exponent too large");
            };
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return self.err("negative power of zero");
            }
            return Ok(base.powi(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn rational(&mut self) -> PResult<BigRational> {
        let neg = self.eat(b'-');
        let n = self.integer()?;
        let d = if self.eat(b'/') { self.integer()? } else { BigInt::one() };
        if d == BigInt::from(0) {
            return self.err("zero denominator");
        }
        let r = BigRational::new(n, d);
        Ok(if neg { -r } else { r })
    }

    fn atom(&mut self) -> PResult<RatFunc<K>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut coeffs = vec![self.rational()?];
                while self.eat(b',') {
                    coeffs.push(self.rational()?);
                }
                if !self.eat(b']') {
                    return self.err("expected ']'");
                }
                let at = self.pos;
                let c = K::from_power_basis(self.ctx, &coeffs).map_err(|e| match e {
                    FieldError::Parse { msg, .. } => FieldError::Parse { pos: at, msg },
                    other => other,
                })?;
                Ok(RatFunc::constant(c))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::constant(K::from_integer(self.ctx, &n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == self.var {
                    Ok(RatFunc::var(self.ctx))
                } else {
                    self.pos = start;
                    self.err(format!("unknown symbol '{name}' (variable is '{}')", self.var))
                }
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a rational function in the variable `var`.
pub fn parse_ratfunc<K: TextCoeff>(src: &str, ctx: &K::Ctx, var: &str) -> Result<RatFunc<K>, FieldError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, ctx, var };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Parses a constant: a rational (`-3/2`), an integer, or a bracketed
/// power-basis sequence.
pub fn parse_coeff<K: TextCoeff>(src: &str, ctx: &K::Ctx) -> Result<K, FieldError> {
    // No variable name can match an empty identifier, so any symbol is rejected.
    let v = parse_ratfunc::<K>(src, ctx, "")?;
    v.as_constant().ok_or(FieldError::Parse { pos: 0, msg: "expected a constant".into() })
}

/// Parses `zero`, `infinity`/`inf`, or `finite:<coeff>` (a bare coefficient is
/// also accepted).
pub fn parse_place<K: TextCoeff>(src: &str, ctx: &K::Ctx) -> Result<Place<K>, FieldError> {
    let s = src.trim();
    match s {
        "zero" | "0" => Ok(Place::Zero),
        "infinity" | "inf" => Ok(Place::Infinity),
        _ => {
            let body = s.strip_prefix("finite:").unwrap_or(s);
            Ok(Place::finite(parse_coeff(body, ctx)?))
        }
    }
}

/// Parses a rational number such as `-3/2`.
pub fn parse_rational(src: &str) -> Result<BigRational, FieldError> {
    let ctx = NumberField::rationals();
    let v = parse_coeff::<Nf>(src, &ctx)?;
    Ok(v.coeffs()[0].clone())
}
