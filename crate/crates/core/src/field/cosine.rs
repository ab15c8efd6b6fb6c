use std::f64::consts::PI;
use std::sync::Arc;

use super::number_field::q;
use super::{FieldError, Nf, NumberField, RootInterval};

/// `cos(π/k)` for the orders with a built-in exact value, as
/// `(rational part, irrational part, radicand)` meaning `a + b·√radicand`.
fn table_entry(k: u32) -> Option<((i64, i64), (i64, i64), i64)> {
    match k {
        3 => Some(((1, 2), (0, 1), 1)),
        4 => Some(((0, 1), (1, 2), 2)),
        5 => Some(((1, 4), (1, 4), 5)),
        6 => Some(((0, 1), (1, 2), 3)),
        _ => None,
    }
}

/// The smallest built-in field holding `cos(π/p)`, `cos(π/q)`, `cos(π/r)`,
/// together with those three values.
///
/// Supported orders are 3, 4, 5, 6; the three cosines must live in `Q` or a
/// single quadratic field `Q(√d)`. Each value is checked numerically against
/// `f64` cosines before being returned.
pub fn builtin_cosine_field(p: u32, q_: u32, r: u32) -> Result<(Arc<NumberField>, [Nf; 3]), FieldError> {
    let unsupported = || FieldError::UnsupportedTriple(p, q_, r);
    let entries = [p, q_, r].map(table_entry);
    let mut radicand = 1;
    for e in &entries {
        let (_, _, d) = e.ok_or_else(unsupported)?;
        if d != 1 {
            if radicand != 1 && radicand != d {
                return Err(unsupported());
            }
            radicand = d;
        }
    }
    let field = if radicand == 1 {
        NumberField::rationals()
    } else {
        let root = RootInterval::around((radicand as f64).sqrt(), 1e-12);
        NumberField::from_i64s(&[-radicand, 0, 1], Some(root))?
    };
    let values = entries.map(|e| {
        let ((a0, a1), (b0, b1), _) = e.unwrap();
        if field.degree() == 1 {
            Nf::rational(&field, q(a0, a1))
        } else {
            Nf::new(&field, vec![q(a0, a1), q(b0, b1)])
        }
    });
    for (k, v) in [p, q_, r].iter().zip(&values) {
        let approx = v.to_f64().ok_or_else(unsupported)?;
        let exact = (PI / *k as f64).cos();
        if (approx - exact).abs() >= 1e-9 {
            return Err(FieldError::InvalidMinpoly(format!("cosine table mismatch for order {k}")));
        }
    }
    let alpha = field.root().map(|r| r.midpoint()).unwrap_or(0.0);
    let residual: f64 = field
        .minpoly()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * alpha + num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN));
    if residual.abs() >= 1e-9 {
        return Err(FieldError::InvalidMinpoly("root approximation does not satisfy the minimal polynomial".into()));
    }
    Ok((field, values))
}
