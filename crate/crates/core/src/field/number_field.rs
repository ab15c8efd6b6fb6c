use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FieldError, Scalar};

/// `Q(α) = Q[x]/(m)` for a monic rational polynomial `m` of degree `d ≥ 1`.
///
/// Irreducibility of `m` is assumed. A reducible `m` surfaces as
/// [`FieldError::NonInvertible`] the first time a zero divisor is inverted.
#[derive(Clone, Debug)]
pub struct NumberField {
    minpoly: Vec<BigRational>,
    root: Option<RootInterval>,
}

/// Real interval known to contain the chosen embedding of `α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootInterval {
    pub lo: f64,
    pub hi: f64,
}

impl RootInterval {
    pub fn around(x: f64, radius: f64) -> Self {
        RootInterval { lo: x - radius, hi: x + radius }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl NumberField {
    /// `minpoly` lists coefficients from the constant term upward; the leading
    /// coefficient must be 1.
    pub fn new(minpoly: Vec<BigRational>, root: Option<RootInterval>) -> Result<Arc<Self>, FieldError> {
        let mut m = minpoly;
        while m.last().is_some_and(|c| c.is_zero()) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(FieldError::InvalidMinpoly("degree must be at least 1".into()));
        }
        if !m.last().unwrap().is_one() {
            return Err(FieldError::InvalidMinpoly("polynomial must be monic".into()));
        }
        if let Some(r) = root {
            if !(r.lo <= r.hi) || !r.lo.is_finite() || !r.hi.is_finite() {
                return Err(FieldError::InvalidMinpoly(format!("bad root interval [{}, {}]", r.lo, r.hi)));
            }
        }
        Ok(Arc::new(NumberField { minpoly: m, root }))
    }

    pub fn from_i64s(minpoly: &[i64], root: Option<RootInterval>) -> Result<Arc<Self>, FieldError> {
        Self::new(minpoly.iter().map(|&c| BigRational::from_integer(c.into())).collect(), root)
    }

    /// The field `Q`, presented by `m(x) = x`.
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            minpoly: vec![BigRational::zero(), BigRational::one()],
            root: Some(RootInterval { lo: 0.0, hi: 0.0 }),
        })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigRational] {
        &self.minpoly
    }

    pub fn root(&self) -> Option<RootInterval> {
        self.root
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }
}

/// An element of a [`NumberField`], stored as its reduced representative of
/// degree `< d` in the power basis of `α`.
#[derive(Clone)]
pub struct Nf {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl Nf {
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<BigRational>) -> Self {
        let d = field.degree();
        let mut c = coeffs;
        if c.len() > d {
            c = reduce_mod(&c, &field.minpoly);
        }
        c.resize(d, BigRational::zero());
        Nf { field: field.clone(), coeffs: c }
    }

    pub fn rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        let mut c = vec![BigRational::zero(); field.degree()];
        c[0] = q;
        Nf { field: field.clone(), coeffs: c }
    }

    pub fn from_ratio(field: &Arc<NumberField>, num: i64, den: i64) -> Self {
        Self::rational(field, BigRational::new(num.into(), den.into()))
    }

    /// The generator `α` itself.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| &self.coeffs[0])
    }

    /// Numeric value under the real embedding recorded on the field.
    pub fn to_f64(&self) -> Option<f64> {
        let alpha = self.field.root?.midpoint();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * alpha + c.to_f64()?;
        }
        Some(acc)
    }

    fn check_same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "number field mismatch"
        );
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inv()?))
    }
}

impl PartialEq for Nf {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for Nf {}

impl Hash for Nf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Nf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_coeff(f)
    }
}

impl fmt::Display for Nf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_coeff(f)
    }
}

impl Scalar for Nf {
    type Ctx = Arc<NumberField>;

    fn ctx(&self) -> Arc<NumberField> {
        self.field.clone()
    }

    fn zero(ctx: &Arc<NumberField>) -> Self {
        Nf { field: ctx.clone(), coeffs: vec![BigRational::zero(); ctx.degree()] }
    }

    fn one(ctx: &Arc<NumberField>) -> Self {
        Self::rational(ctx, BigRational::one())
    }

    fn from_i64(ctx: &Arc<NumberField>, value: i64) -> Self {
        Self::rational(ctx, BigRational::from_integer(value.into()))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn add(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Nf { field: self.field.clone(), coeffs }
    }

    fn sub(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Nf { field: self.field.clone(), coeffs }
    }

    fn mul(&self, other: &Self) -> Self {
        self.check_same_field(other);
        if self.field.degree() == 1 {
            return Nf { field: self.field.clone(), coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let prod = qpoly_mul(&self.coeffs, &other.coeffs);
        Nf::new(&self.field, prod)
    }

    fn neg(&self) -> Self {
        Nf { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(Nf { field: self.field.clone(), coeffs: vec![self.coeffs[0].recip()] });
        }
        // Extended Euclid: find u with u*a + v*m = g.
        let a = qpoly_trim(self.coeffs.clone());
        let m = self.field.minpoly.clone();
        let (g, u) = qpoly_ext_gcd(&a, &m);
        if g.len() > 1 {
            return Err(FieldError::NonInvertible { factor: format_qpoly(&g) });
        }
        let scale = g[0].recip();
        Ok(Nf::new(&self.field, u.into_iter().map(|c| c * &scale).collect()))
    }

    fn is_prime_field_element(&self) -> bool {
        self.as_rational().is_some()
    }

    fn write_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => {
                write!(f, "[")?;
                for (i, c) in self.coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

fn qpoly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    let out = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    qpoly_trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn reduce_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    for k in (d..r.len()).rev() {
        let c = std::mem::take(&mut r[k]);
        if c.is_zero() {
            continue;
        }
        for j in 0..d {
            let t = &c * &m[j];
            r[k - d + j] -= t;
        }
    }
    r.truncate(d);
    r
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = qpoly_trim(b.to_vec());
    let mut r = qpoly_trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().recip();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[shift + j] -= t;
        }
        q[shift] = c;
        r = qpoly_trim(r);
    }
    (q, r)
}

/// Returns `(g, u)` with `u*a ≡ g (mod m)` and `g = gcd(a, m)` (not normalized).
fn qpoly_ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut u0, mut u1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = qpoly_divrem(&r0, &r1);
        let u = qpoly_sub(&u0, &qpoly_mul(&q, &u1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
    }
    (r0, u0)
}

fn format_qpoly(p: &[BigRational]) -> String {
    let lead = p.last().cloned().unwrap_or_else(BigRational::one);
    let monic: Vec<BigRational> = p.iter().map(|c| c / &lead).collect();
    let mut parts = Vec::new();
    for (i, c) in monic.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        let body = match (i, mag.is_one()) {
            (0, _) => format!("{mag}"),
            (1, true) => "x".to_string(),
            (1, false) => format!("{mag}*x"),
            (_, true) => format!("x^{i}"),
            (_, false) => format!("{mag}*x^{i}"),
        };
        parts.push((sign, body));
    }
    let mut s = String::new();
    for (k, (sign, body)) in parts.into_iter().enumerate() {
        if k == 0 {
            if sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        s.push_str(&body);
    }
    s
}

/// Convenience for building rationals in tests and tables.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Arc<NumberField> {
        NumberField::from_i64s(&[-2, 0, 1], Some(RootInterval::around(2f64.sqrt(), 1e-12))).unwrap()
    }

    #[test]
    fn alpha_squared_is_two() {
        let k = sqrt2();
        let a = Nf::generator(&k);
        assert_eq!(a.mul(&a), Nf::from_i64(&k, 2));
    }

    #[test]
    fn conjugate_product() {
        let k = sqrt2();
        let a = Nf::generator(&k);
        let one = Nf::one(&k);
        assert_eq!(one.add(&a).mul(&one.sub(&a)), Nf::from_i64(&k, -1));
    }

    #[test]
    fn rational_sum() {
        let k = NumberField::rationals();
        let x = Nf::from_ratio(&k, 3, 2).add(&Nf::from_ratio(&k, 1, 2));
        assert_eq!(x, Nf::from_i64(&k, 2));
    }

    #[test]
    fn inverse_in_quadratic_field() {
        let k = sqrt2();
        let x = Nf::new(&k, vec![q(3, 1), q(-5, 7)]);
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn division_by_zero() {
        let k = sqrt2();
        assert!(matches!(Nf::zero(&k).inv(), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn reducible_minpoly_is_reported() {
        // x^2 - 1 = (x - 1)(x + 1): alpha - 1 is a zero divisor.
        let k = NumberField::from_i64s(&[-1, 0, 1], None).unwrap();
        let x = Nf::generator(&k).sub(&Nf::one(&k));
        match x.inv() {
            Err(FieldError::NonInvertible { factor }) => assert_eq!(factor, "x - 1"),
            other => panic!("expected NonInvertible, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_monic() {
        assert!(NumberField::from_i64s(&[1, 2], None).is_err());
        assert!(NumberField::from_i64s(&[3], None).is_err());
    }

    #[test]
    fn numeric_embedding() {
        let k = sqrt2();
        let x = Nf::new(&k, vec![q(1, 2), q(1, 2)]);
        assert!((x.to_f64().unwrap() - (0.5 + 0.5 * 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn display_forms() {
        let k = sqrt2();
        assert_eq!(Nf::from_ratio(&k, -3, 4).to_string(), "-3/4");
        assert_eq!(Nf::new(&k, vec![q(0, 1), q(1, 2)]).to_string(), "[0, 1/2]");
    }
}
