//! Triangle groups, the one-parameter `SL_3` family `ρ_s` of the reflection
//! group `Γ(p,q,r)`, its restriction to `Δ(p,q,r)`, and small Seifert fibred
//! spaces over `S²(p,q,r)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

use crate::field::{builtin_cosine_field, FieldError, Nf, NumberField, RatFunc};
use crate::group::{pullback, GroupError, GroupHom, GroupPresentation, Representation, Word};
use crate::lattice::Matrix;

/// Name of the family parameter in printed output.
pub const PARAMETER: &str = "s";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TriangleError {
    #[error("orders must be at least 3, got ({0}, {1}, {2})")]
    OrderTooSmall(u32, u32, u32),
    #[error("cosine for order {order} does not match cos(pi/{order}) numerically")]
    CosineMismatch { order: u32 },
    #[error("coprimality violated: gcd({0}, {1}) != 1")]
    CoprimalityViolation(i64, i64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Orders `p, q, r` with the exact values `cos(π/p), cos(π/q), cos(π/r)`.
#[derive(Clone, Debug)]
pub struct TriangleData {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub field: Arc<NumberField>,
    pub cosines: [Nf; 3],
}

impl TriangleData {
    /// Uses the built-in cosine table (orders 3–6 sharing one quadratic field).
    pub fn builtin(p: u32, q: u32, r: u32) -> Result<Self, TriangleError> {
        if p.min(q).min(r) < 3 {
            return Err(TriangleError::OrderTooSmall(p, q, r));
        }
        let (field, cosines) = builtin_cosine_field(p, q, r)?;
        Ok(TriangleData { p, q, r, field, cosines })
    }

    /// User-supplied cosines, checked against `f64` cosines through the
    /// field's real embedding.
    pub fn new(p: u32, q: u32, r: u32, field: Arc<NumberField>, cosines: [Nf; 3]) -> Result<Self, TriangleError> {
        if p.min(q).min(r) < 3 {
            return Err(TriangleError::OrderTooSmall(p, q, r));
        }
        for (k, c) in [p, q, r].into_iter().zip(&cosines) {
            let approx = c.to_f64().ok_or(TriangleError::CosineMismatch { order: k })?;
            if (2.0 * approx - 2.0 * (PI / k as f64).cos()).abs() >= 1e-9 {
                return Err(TriangleError::CosineMismatch { order: k });
            }
        }
        Ok(TriangleData { p, q, r, field, cosines })
    }

    fn c(&self, i: usize) -> RatFunc<Nf> {
        RatFunc::constant(self.cosines[i].clone())
    }
}

/// `Γ(p,q,r) = ⟨a, b, c | a², b², c², (ab)^p, (bc)^q, (ca)^r⟩`.
pub fn gamma_presentation(p: u32, q: u32, r: u32) -> GroupPresentation {
    GroupPresentation::parse(
        &["a", "b", "c"],
        &["a^2", "b^2", "c^2", &format!("(ab)^{p}"), &format!("(bc)^{q}"), &format!("(ca)^{r}")],
    )
    .expect("static presentation")
}

/// `Δ(p,q,r) = ⟨x, y | x^p, y^q, (xy)^r⟩`.
pub fn delta_presentation(p: u32, q: u32, r: u32) -> GroupPresentation {
    GroupPresentation::parse(&["x", "y"], &[&format!("x^{p}"), &format!("y^{q}"), &format!("(xy)^{r}")])
        .expect("static presentation")
}

/// The index-two inclusion `Δ → Γ`, `x ↦ ab`, `y ↦ bc`.
pub fn delta_inclusion(p: u32, q: u32, r: u32) -> GroupHom {
    let gamma = gamma_presentation(p, q, r);
    let images = vec![gamma.parse_word("ab").unwrap(), gamma.parse_word("bc").unwrap()];
    GroupHom::new(delta_presentation(p, q, r), gamma, images).expect("valid images")
}

/// The word `abac` of `Γ`, which is `x²y` in `Δ` since `ac = (ab)(bc)`.
pub fn abac_gamma_word() -> Word {
    Word::from_signed(&[1, 2, 1, 3])
}

pub fn abac_delta_word() -> Word {
    Word::from_signed(&[1, 1, 2])
}

/// The three matrices `ρ_s(a), ρ_s(b), ρ_s(c)` with `s` the function-field
/// variable.
pub fn gamma_matrices(td: &TriangleData) -> [Matrix<Nf>; 3] {
    let k = &td.field;
    let z = || RatFunc::zero(k);
    let one = || RatFunc::one(k);
    let m1 = || RatFunc::from_i64(k, -1);
    let s = RatFunc::var(k);
    let sinv = s.inv().unwrap();
    let m2 = RatFunc::from_i64(k, -2);
    let (cp, cq, cr) = (td.c(0), td.c(1), td.c(2));
    let a = Matrix::from_rows(vec![
        vec![one(), z(), z()],
        vec![&(&m2 * &s) * &cp, m1(), z()],
        vec![&m2 * &cr, z(), m1()],
    ]);
    let b = Matrix::from_rows(vec![
        vec![m1(), &(&m2 * &sinv) * &cp, z()],
        vec![z(), one(), z()],
        vec![z(), &m2 * &cq, m1()],
    ]);
    let c = Matrix::from_rows(vec![
        vec![m1(), z(), &m2 * &cr],
        vec![z(), m1(), &m2 * &cq],
        vec![z(), z(), one()],
    ]);
    [a, b, c]
}

/// `ρ_s` as a verified representation of `Γ(p,q,r)` over `F(s)`.
pub fn gamma_representation(td: &TriangleData) -> Result<Representation<Nf>, TriangleError> {
    let pres = gamma_presentation(td.p, td.q, td.r);
    Ok(Representation::verified(pres, gamma_matrices(td).to_vec())?)
}

/// `ρ_s` restricted to `Δ(p,q,r)`: `x ↦ ρ_s(a)ρ_s(b)`, `y ↦ ρ_s(b)ρ_s(c)`.
pub fn delta_restriction(td: &TriangleData) -> Result<Representation<Nf>, TriangleError> {
    let gamma = gamma_representation(td)?;
    Ok(pullback(&gamma, &delta_inclusion(td.p, td.q, td.r))?)
}

/// `8(s + s⁻¹) c_p c_q c_r + 16 c_p² c_r² + 4 c_q² − 1`.
pub fn closed_form_abac(td: &TriangleData) -> RatFunc<Nf> {
    let k = &td.field;
    let s = RatFunc::var(k);
    let s_sum = &s + &s.inv().unwrap();
    let (cp, cq, cr) = (td.c(0), td.c(1), td.c(2));
    let n = |v: i64| RatFunc::from_i64(k, v);
    let t1 = &(&(&n(8) * &s_sum) * &cp) * &(&cq * &cr);
    let t2 = &(&n(16) * &(&cp * &cp)) * &(&cr * &cr);
    let t3 = &n(4) * &(&cq * &cq);
    &(&(&t1 + &t2) + &t3) - &n(1)
}

#[derive(Clone, Debug)]
pub struct TraceIdentity {
    pub computed: RatFunc<Nf>,
    pub closed_form: RatFunc<Nf>,
    pub equal: bool,
}

/// The trace of the exact product `ρ_s(a)ρ_s(b)ρ_s(a)ρ_s(c)` against the
/// closed form.
pub fn trace_abac(td: &TriangleData) -> TraceIdentity {
    let [a, b, c] = gamma_matrices(td);
    let prod = &(&(&a * &b) * &a) * &c;
    let computed = prod.trace();
    let closed_form = closed_form_abac(td);
    let equal = computed == closed_form;
    TraceIdentity { computed, closed_form, equal }
}

/// Seifert invariants: `x^p = h^a`, `y^q = h^b`, `(xy)^r = h^c`, `h` central.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

#[derive(Clone, Debug)]
pub struct SeifertGroup {
    pub presentation: GroupPresentation,
    /// `x ↦ x`, `y ↦ y`, `h ↦ 1` onto `Δ(p,q,r)`.
    pub to_delta: GroupHom,
    /// `a/p + b/q = c/r`, equivalently `H_1` is infinite.
    pub haken: bool,
}

pub fn seifert_group(sd: &SeifertData) -> Result<SeifertGroup, TriangleError> {
    for (n, d) in [(sd.a, sd.p), (sd.b, sd.q), (sd.c, sd.r)] {
        if d == 0 || n.gcd(&(d as i64)) != 1 {
            return Err(TriangleError::CoprimalityViolation(n, d as i64));
        }
    }
    let SeifertData { p, q, r, a, b, c } = *sd;
    let pres = GroupPresentation::parse(
        &["x", "y", "h"],
        &[
            "x h x^-1 h^-1",
            "y h y^-1 h^-1",
            &format!("x^{p} = h^{a}"),
            &format!("y^{q} = h^{b}"),
            &format!("(xy)^{r} = h^{c}"),
        ],
    )?;
    let delta = delta_presentation(p, q, r);
    let to_delta = GroupHom::new(pres.clone(), delta, vec![Word::gen(0), Word::gen(1), Word::identity()])?;
    let ratio = |n: i64, d: u32| BigRational::new(n.into(), (d as i64).into());
    let haken = ratio(a, p) + ratio(b, q) == ratio(c, r);
    Ok(SeifertGroup { presentation: pres, to_delta, haken })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_ratfunc;

    #[test]
    fn matrices_for_thirds() {
        let td = TriangleData::builtin(3, 3, 3).unwrap();
        let [a, _, _] = gamma_matrices(&td);
        let k = &td.field;
        let expected: Matrix<Nf> = Matrix::from_rows(
            [["1", "0", "0"], ["-s", "-1", "0"], ["-1", "0", "-1"]]
                .iter()
                .map(|row| row.iter().map(|e| parse_ratfunc(e, k, "s").unwrap()).collect())
                .collect(),
        );
        assert_eq!(a, expected);
        assert!(a.pow(2).is_identity());
    }

    #[test]
    fn trace_identity_for_thirds() {
        let td = TriangleData::builtin(3, 3, 3).unwrap();
        let t = trace_abac(&td);
        assert!(t.equal);
        assert_eq!(t.computed, parse_ratfunc("s + 1 + 1/s", &td.field, "s").unwrap());
    }

    #[test]
    fn seifert_coprimality() {
        let sd = SeifertData { p: 3, q: 3, r: 3, a: 3, b: 1, c: 1 };
        assert_eq!(seifert_group(&sd).unwrap_err(), TriangleError::CoprimalityViolation(3, 3));
    }

    #[test]
    fn orders_below_three_rejected() {
        assert!(matches!(TriangleData::builtin(2, 3, 3), Err(TriangleError::OrderTooSmall(..))));
        let k = NumberField::rationals();
        let half = Nf::from_ratio(&k, 1, 2);
        let bad = Nf::from_ratio(&k, 1, 3);
        assert!(TriangleData::new(3, 3, 3, k.clone(), [half.clone(), half.clone(), half.clone()]).is_ok());
        assert_eq!(
            TriangleData::new(3, 3, 3, k, [half.clone(), bad, half]).unwrap_err(),
            TriangleError::CosineMismatch { order: 3 }
        );
    }
}
