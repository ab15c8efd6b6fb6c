use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{FieldError, Place, Poly, Scalar, Valuation};

/// An element of the rational function field `K(t)`.
///
/// Always stored in canonical form: numerator and denominator coprime, the
/// denominator monic, and zero represented as `0/1`. Structural equality is
/// therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<K: Scalar> {
    num: Poly<K>,
    den: Poly<K>,
}

/// Truncated Laurent expansion `Σ coeffs[i]·u^(leading+i)` in a local
/// uniformizer `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries<K: Scalar> {
    pub leading: i64,
    pub coeffs: Vec<K>,
}

impl<K: Scalar> LaurentSeries<K> {
    /// The truncation as a function of the local variable (i.e. at the place `Zero`).
    pub fn to_local_ratfunc(&self, ctx: &K::Ctx) -> RatFunc<K> {
        let poly = Poly::new(ctx, self.coeffs.clone());
        let t = RatFunc::var(ctx);
        &RatFunc::from_poly(poly) * &t.powi(self.leading)
    }
}

impl<K: Scalar> RatFunc<K> {
    /// Builds `num/den` and normalizes. Fails on a zero denominator.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<K>, den: Poly<K>) -> Self {
        let ctx = num.ctx().clone();
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(&ctx) };
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv_or_panic();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        let ctx = p.ctx().clone();
        RatFunc { num: p, den: Poly::one(&ctx) }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero(ctx: &K::Ctx) -> Self {
        Self::from_poly(Poly::zero(ctx))
    }

    pub fn one(ctx: &K::Ctx) -> Self {
        Self::from_poly(Poly::one(ctx))
    }

    pub fn from_i64(ctx: &K::Ctx, v: i64) -> Self {
        Self::constant(K::from_i64(ctx, v))
    }

    /// The function-field variable `t`.
    pub fn var(ctx: &K::Ctx) -> Self {
        Self::from_poly(Poly::var(ctx))
    }

    pub fn ctx(&self) -> &K::Ctx {
        self.num.ctx()
    }

    pub fn numer(&self) -> &Poly<K> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The constant value, if this is an element of `K`.
    pub fn as_constant(&self) -> Option<K> {
        (self.den.is_one() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self * &other.inv()?)
    }

    /// `self^k` for any integer `k`; `0^k` with `k < 0` panics.
    pub fn powi(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.ctx());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Normalized discrete valuation at `place`; `Valuation::Infinity` for zero.
    pub fn valuation(&self, place: &Place<K>) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinity;
        }
        let v = match place {
            Place::Zero => self.num.ord0().unwrap() as i64 - self.den.ord0().unwrap() as i64,
            Place::Infinity => self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64,
            Place::Finite(a) => {
                self.num.multiplicity_at(a).unwrap() as i64 - self.den.multiplicity_at(a).unwrap() as i64
            }
        };
        Valuation::Finite(v)
    }

    /// Is this element in the valuation ring of `place`?
    pub fn is_integral_at(&self, place: &Place<K>) -> bool {
        self.valuation(place) >= Valuation::Finite(0)
    }

    /// Pulls the function back along the automorphism of `K(t)` that moves
    /// `place` to `t = 0`; valuations at `place` become valuations at zero.
    pub fn to_local(&self, place: &Place<K>) -> Self {
        match place {
            Place::Zero => self.clone(),
            Place::Finite(a) => Self::normalized(self.num.shift(a), self.den.shift(a)),
            Place::Infinity => self.invert_variable(),
        }
    }

    /// Inverse of [`RatFunc::to_local`].
    pub fn from_local(&self, place: &Place<K>) -> Self {
        match place {
            Place::Zero => self.clone(),
            Place::Finite(a) => {
                let minus = a.neg();
                Self::normalized(self.num.shift(&minus), self.den.shift(&minus))
            }
            Place::Infinity => self.invert_variable(),
        }
    }

    /// `f(1/t)`.
    fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let num = self.num.reversed(dn).shift_up(dd);
        let den = self.den.reversed(dd).shift_up(dn);
        Self::normalized(num, den)
    }

    /// Exact Laurent expansion at `place` with `n_terms` coefficients starting
    /// at the valuation. For `Finite(a)` the expansion is in powers of `t - a`.
    pub fn series_expand(&self, place: &Place<K>, n_terms: usize) -> Result<LaurentSeries<K>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        if matches!(place, Place::Infinity) {
            return Err(FieldError::UnsupportedPlace(
                "series expansion at infinity: substitute t -> 1/t first".into(),
            ));
        }
        Ok(self.to_local(place).expand_at_zero(n_terms))
    }

    fn expand_at_zero(&self, n_terms: usize) -> LaurentSeries<K> {
        let a = self.num.ord0().unwrap();
        let b = self.den.ord0().unwrap();
        let p = self.num.shift_down(a);
        let q = self.den.shift_down(b);
        let q0_inv = q.coeff(0).inv_or_panic();
        let mut coeffs: Vec<K> = Vec::with_capacity(n_terms);
        for k in 0..n_terms {
            let mut acc = p.coeff(k);
            for j in 1..=k.min(q.degree().unwrap_or(0)) {
                acc = acc.sub(&q.coeff(j).mul(&coeffs[k - j]));
            }
            coeffs.push(acc.mul(&q0_inv));
        }
        LaurentSeries { leading: a as i64 - b as i64, coeffs }
    }

    /// For a function of the local variable at zero: the Laurent polynomial
    /// consisting of all terms of exponent `< below`. The difference
    /// `self - result` has valuation at least `below`.
    pub fn truncate_at_zero(&self, below: i64) -> Self {
        let ctx = self.ctx().clone();
        if self.is_zero() {
            return Self::zero(&ctx);
        }
        let v = self.num.ord0().unwrap() as i64 - self.den.ord0().unwrap() as i64;
        if v >= below {
            return Self::zero(&ctx);
        }
        if self.den.is_one() && v >= 0 {
            // Polynomial: keep the low-order coefficients.
            let coeffs = self.num.coeffs().iter().take(below as usize).cloned().collect();
            return Self::from_poly(Poly::new(&ctx, coeffs));
        }
        self.expand_at_zero((below - v) as usize).to_local_ratfunc(&ctx)
    }

    pub fn display<'a>(&'a self, var: &'a str) -> RatFuncDisplay<'a, K> {
        RatFuncDisplay { value: self, var }
    }
}

impl<K: Scalar> Add for &RatFunc<K> {
    type Output = RatFunc<K>;

    fn add(self, rhs: &RatFunc<K>) -> RatFunc<K> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::normalized(num, &self.den * &rhs.den)
    }
}

impl<K: Scalar> Sub for &RatFunc<K> {
    type Output = RatFunc<K>;

    fn sub(self, rhs: &RatFunc<K>) -> RatFunc<K> {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num - &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFunc::normalized(num, &self.den * &rhs.den)
    }
}

impl<K: Scalar> Mul for &RatFunc<K> {
    type Output = RatFunc<K>;

    fn mul(self, rhs: &RatFunc<K>) -> RatFunc<K> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.ctx());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel first to keep intermediate degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = (self.num.div_exact(&g1), rhs.den.div_exact(&g1));
        let (c, b) = (rhs.num.div_exact(&g2), self.den.div_exact(&g2));
        let num = &a * &c;
        let den = &b * &d;
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv_or_panic();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
}

impl<K: Scalar> Neg for &RatFunc<K> {
    type Output = RatFunc<K>;

    fn neg(self) -> RatFunc<K> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl<K: Scalar> $tr for RatFunc<K> {
            type Output = RatFunc<K>;

            fn $method(self, rhs: RatFunc<K>) -> RatFunc<K> {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<K: Scalar> Neg for RatFunc<K> {
    type Output = RatFunc<K>;

    fn neg(self) -> RatFunc<K> {
        -&self
    }
}

impl<K: Scalar> fmt::Debug for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

impl<K: Scalar> fmt::Display for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

pub struct RatFuncDisplay<'a, K: Scalar> {
    value: &'a RatFunc<K>,
    var: &'a str,
}

impl<K: Scalar> fmt::Display for RatFuncDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let RatFunc { num, den } = self.value;
        if den.is_one() {
            return write!(f, "{}", num.display(self.var));
        }
        let wrap = |p: &Poly<K>| {
            let s = p.display(self.var).to_string();
            if p.term_count() > 1 || s.contains('*') || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(num), wrap(den))
    }
}
