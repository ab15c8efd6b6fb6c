//! Normal forms over the valuation ring at `t = 0`. Callers move other
//! places here with `to_local` first.

use crate::field::{Place, RatFunc, Scalar, Valuation};

use super::Matrix;

fn val0<K: Scalar>(x: &RatFunc<K>) -> Valuation {
    x.valuation(&Place::Zero)
}

fn axpy<K: Scalar>(col: &mut [RatFunc<K>], c: &RatFunc<K>, other: &[RatFunc<K>]) {
    for (x, y) in col.iter_mut().zip(other) {
        if !y.is_zero() {
            *x = &*x - &(c * y);
        }
    }
}

/// Lower-triangular column Hermite form of the lattice spanned by the columns
/// of `gens` (`n × m`, `m ≥ n`), normalized up to homothety.
///
/// Diagonal entries are exact powers `t^k_i` with `min k_i = 0`; the entry
/// below pivot `r` is a Laurent polynomial with exponents in `[.., k_r)`.
/// Returns `None` when the columns do not span.
pub fn hermite_local<K: Scalar>(gens: &Matrix<K>) -> Option<(Matrix<K>, Vec<i64>)> {
    let n = gens.rows();
    let ctx = gens.ctx().clone();
    let t = RatFunc::<K>::var(&ctx);
    let mut cols = gens.columns();
    let mut exps = Vec::with_capacity(n);
    for i in 0..n {
        let (j, k) = (i..cols.len())
            .filter_map(|j| val0(&cols[j][i]).finite().map(|v| (j, v)))
            .min_by_key(|&(j, v)| (v, j))?;
        cols.swap(i, j);
        let unit = (&t.powi(k)) * &cols[i][i].inv().unwrap();
        for x in cols[i].iter_mut() {
            *x = &*x * &unit;
        }
        let pinv = t.powi(-k);
        let pivot = cols[i].clone();
        for col in cols.iter_mut().skip(i + 1) {
            if col[i].is_zero() {
                continue;
            }
            let c = &col[i] * &pinv;
            axpy(col, &c, &pivot);
        }
        exps.push(k);
    }
    cols.truncate(n);
    let m = *exps.iter().min().unwrap_or(&0);
    if m != 0 {
        let s = t.powi(-m);
        for col in cols.iter_mut() {
            for x in col.iter_mut() {
                *x = &*x * &s;
            }
        }
        for e in exps.iter_mut() {
            *e -= m;
        }
    }
    for j in 0..n {
        for r in j + 1..n {
            let x = &cols[j][r];
            if x.is_zero() {
                continue;
            }
            let rep = x.truncate_at_zero(exps[r]);
            let c = &(x - &rep) * &t.powi(-exps[r]);
            if !c.is_zero() {
                let pivot = cols[r].clone();
                axpy(&mut cols[j], &c, &pivot);
            }
        }
    }
    Some((Matrix::from_columns(&cols), exps))
}

/// Valuations of the Smith invariants of a nonsingular square matrix,
/// ascending. Min-valuation pivoting, leftmost-uppermost on ties.
pub fn smith_valuations_local<K: Scalar>(m: &Matrix<K>) -> Option<Vec<i64>> {
    let n = m.rows();
    let mut a: Vec<Vec<RatFunc<K>>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if let Some(v) = val0(&a[i][j]).finite() {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, pi, pj) = best?;
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let pinv = a[k][k].inv().unwrap();
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] * &pinv;
            for j in k..n {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
        }
        out.push(v);
    }
    out.sort_unstable();
    Some(out)
}
