use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;

/// Dense univariate polynomial over a constant field, lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone)]
pub struct Poly<K: Scalar> {
    ctx: K::Ctx,
    coeffs: Vec<K>,
}

impl<K: Scalar> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<K: Scalar> Eq for Poly<K> {}

impl<K: Scalar> Hash for Poly<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<K: Scalar> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

impl<K: Scalar> Poly<K> {
    pub fn new(ctx: &K::Ctx, coeffs: Vec<K>) -> Self {
        let mut p = Poly { ctx: ctx.clone(), coeffs };
        p.trim();
        p
    }

    pub fn zero(ctx: &K::Ctx) -> Self {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &K::Ctx) -> Self {
        Self::constant(K::one(ctx))
    }

    pub fn constant(c: K) -> Self {
        let ctx = c.ctx();
        Self::new(&ctx, vec![c])
    }

    pub fn monomial(c: K, k: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![K::zero(&ctx); k];
        coeffs.push(c);
        Self::new(&ctx, coeffs)
    }

    /// The variable `t`.
    pub fn var(ctx: &K::Ctx) -> Self {
        Self::monomial(K::one(ctx), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(|| K::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn ord0(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv_or_panic()),
        }
    }

    /// Division with remainder; panics if `divisor` is zero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let db = divisor.degree().expect("polynomial division by zero");
        let Some(da) = self.degree() else {
            return (Self::zero(&self.ctx), Self::zero(&self.ctx));
        };
        if da < db {
            return (Self::zero(&self.ctx), self.clone());
        }
        let lead_inv = divisor.coeffs[db].inv_or_panic();
        let mut r = self.coeffs.clone();
        let mut q = vec![K::zero(&self.ctx); da - db + 1];
        for k in (db..=da).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = r[k].mul(&lead_inv);
            let shift = k - db;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                r[shift + j] = r[shift + j].sub(&c.mul(b));
            }
            q[shift] = c;
        }
        r.truncate(db);
        (Self::new(&self.ctx, q), Self::new(&self.ctx, r))
    }

    /// Exact quotient; debug-asserts the remainder vanishes.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `p(t + a)`, by Horner's scheme in the shifted variable.
    pub fn shift(&self, a: &K) -> Self {
        let lin = Self::new(&self.ctx, vec![a.clone(), K::one(&self.ctx)]);
        let mut acc = Self::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// `t^d p(1/t)` for `d ≥ deg p`.
    pub fn reversed(&self, d: usize) -> Self {
        let mut coeffs = vec![K::zero(&self.ctx); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c.clone();
        }
        Self::new(&self.ctx, coeffs)
    }

    /// Multiplicity of the root `a`.
    pub fn multiplicity_at(&self, a: &K) -> Option<usize> {
        if a.is_zero() {
            return self.ord0();
        }
        self.shift(a).ord0()
    }

    /// Drops the factor `t^k`; caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(&self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(&self.ctx, coeffs)
    }

    pub fn display<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, K> {
        PolyDisplay { poly: self, var }
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl<K: Scalar> Add for &Poly<K> {
    type Output = Poly<K>;

    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].add(c);
        }
        Poly::new(&self.ctx, coeffs)
    }
}

impl<K: Scalar> Sub for &Poly<K> {
    type Output = Poly<K>;

    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(&self.ctx, coeffs)
    }
}

impl<K: Scalar> Mul for &Poly<K> {
    type Output = Poly<K>;

    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut coeffs = vec![K::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::new(&self.ctx, coeffs)
    }
}

impl<K: Scalar> Neg for &Poly<K> {
    type Output = Poly<K>;

    fn neg(self) -> Poly<K> {
        Poly::new(&self.ctx, self.coeffs.iter().map(|c| c.neg()).collect())
    }
}

pub struct PolyDisplay<'a, K: Scalar> {
    poly: &'a Poly<K>,
    var: &'a str,
}

impl<K: Scalar> fmt::Display for PolyDisplay<'_, K> {
    /// Writes e.g. `3/2*t^2 - t + 1`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in p.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            // Pull a leading minus out of plain rational coefficients.
            let text = super::scalar::CoeffDisplay(c).to_string();
            let (neg, mag) = if c.is_prime_field_element() && text.starts_with('-') {
                (true, text[1..].to_string())
            } else {
                (false, text)
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{}", self.var)?,
                (1, false) => write!(f, "{mag}*{}", self.var)?,
                (_, true) => write!(f, "{}^{i}", self.var)?,
                (_, false) => write!(f, "{mag}*{}^{i}", self.var)?,
            }
        }
        Ok(())
    }
}
