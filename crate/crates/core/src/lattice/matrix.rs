use std::fmt;
use std::ops::Mul;

use crate::field::{Place, RatFunc, Scalar, Valuation};

/// Dense matrix over `K(t)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<K: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc<K>>,
}

impl<K: Scalar> Matrix<K> {
    pub fn from_rows(rows: Vec<Vec<RatFunc<K>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc<K>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_columns(cols: &[Vec<RatFunc<K>>]) -> Self {
        let n = cols.first().map_or(0, |c| c.len());
        Self::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn zero(rows: usize, cols: usize, ctx: &K::Ctx) -> Self {
        Self::from_fn(rows, cols, |_, _| RatFunc::zero(ctx))
    }

    pub fn identity(n: usize, ctx: &K::Ctx) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { RatFunc::one(ctx) } else { RatFunc::zero(ctx) })
    }

    pub fn diag(entries: &[RatFunc<K>]) -> Self {
        let ctx = entries[0].ctx().clone();
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { RatFunc::zero(&ctx) })
    }

    /// `diag(t^e_1, …, t^e_n)` in the uniformizer of `place`.
    pub fn uniformizer_diag(place: &Place<K>, exps: &[i64], ctx: &K::Ctx) -> Self {
        let u = place.uniformizer(ctx);
        let entries: Vec<_> = exps.iter().map(|&e| u.powi(e)).collect();
        Self::diag(&entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc<K> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc<K>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFunc<K>> {
        self.data.iter()
    }

    pub fn ctx(&self) -> &K::Ctx {
        self.data[0].ctx()
    }

    pub fn column(&self, j: usize) -> Vec<RatFunc<K>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<RatFunc<K>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[RatFunc<K>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map(&self, f: impl Fn(&RatFunc<K>) -> RatFunc<K>) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &RatFunc<K>) -> Self {
        self.map(|x| x * c)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn trace(&self) -> RatFunc<K> {
        assert!(self.is_square());
        let mut acc = RatFunc::zero(self.ctx());
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn det(&self) -> RatFunc<K> {
        assert!(self.is_square());
        let n = self.rows;
        let ctx = self.ctx().clone();
        let mut a: Vec<Vec<RatFunc<K>>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = RatFunc::one(&ctx);
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return RatFunc::zero(&ctx);
            };
            if p != k {
                a.swap(p, k);
                det = -&det;
            }
            let pivot = a[k][k].clone();
            det = &det * &pivot;
            let pinv = pivot.inv().unwrap();
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] * &pinv;
                for j in k..n {
                    let d = &f * &a[k][j];
                    a[i][j] = &a[i][j] - &d;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let ctx = self.ctx().clone();
        let mut a: Vec<Vec<RatFunc<K>>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<RatFunc<K>>> = Self::identity(n, &ctx).columns();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(p, k);
            inv.swap(p, k);
            let pinv = a[k][k].inv().unwrap();
            for j in 0..n {
                a[k][j] = &a[k][j] * &pinv;
                inv[k][j] = &inv[k][j] * &pinv;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let d = &f * &a[k][j];
                    a[i][j] = &a[i][j] - &d;
                    let d = &f * &inv[k][j];
                    inv[i][j] = &inv[i][j] - &d;
                }
            }
        }
        Some(Self::from_rows(inv))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows, self.ctx());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let x = self.get(i, j);
                if i == j { x.is_one() } else { x.is_zero() }
            }))
    }

    /// Minimum valuation over all entries (`Infinity` for the zero matrix).
    pub fn min_valuation(&self, place: &Place<K>) -> Valuation {
        self.data.iter().map(|x| x.valuation(place)).min().unwrap_or(Valuation::Infinity)
    }

    /// All entries lie in the valuation ring at `place`.
    pub fn is_integral_at(&self, place: &Place<K>) -> bool {
        self.min_valuation(place) >= Valuation::Finite(0)
    }

    pub fn to_local(&self, place: &Place<K>) -> Self {
        self.map(|x| x.to_local(place))
    }

    pub fn from_local(&self, place: &Place<K>) -> Self {
        self.map(|x| x.from_local(place))
    }

    /// Elementary symmetric functions of the eigenvalues: `e_k` is the sum of
    /// the principal `k×k` minors, so `det(x - g) = Σ (-1)^k e_k x^(n-k)`.
    /// Division-free, hence valid in every characteristic.
    pub fn char_poly_symmetric(&self) -> Vec<RatFunc<K>> {
        assert!(self.is_square());
        let n = self.rows;
        let ctx = self.ctx().clone();
        let mut e = vec![RatFunc::zero(&ctx); n + 1];
        e[0] = RatFunc::one(&ctx);
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let minor = Self::from_fn(idx.len(), idx.len(), |a, b| self.get(idx[a], idx[b]).clone()).det();
            let k = idx.len();
            e[k] = &e[k] + &minor;
        }
        e
    }

    pub fn display<'a>(&'a self, var: &'a str) -> MatrixDisplay<'a, K> {
        MatrixDisplay { m: self, var }
    }

    /// Rows of entries in the text format.
    pub fn to_text_rows(&self, var: &str) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.display(var).to_string()).collect()).collect()
    }
}

impl<K: Scalar> Mul for &Matrix<K> {
    type Output = Matrix<K>;

    fn mul(self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let ctx = self.ctx().clone();
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = RatFunc::zero(&ctx);
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), rhs.get(k, j));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            acc
        })
    }
}

impl<K: Scalar> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

pub struct MatrixDisplay<'a, K: Scalar> {
    m: &'a Matrix<K>,
    var: &'a str,
}

impl<K: Scalar> fmt::Display for MatrixDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.m.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.m.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.m.get(i, j).display(self.var))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Nf, NumberField};

    fn m(rows: &[&[i64]]) -> Matrix<Nf> {
        let k = NumberField::rationals();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| RatFunc::from_i64(&k, x)).collect()).collect())
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let k = NumberField::rationals();
        assert_eq!(a.det(), RatFunc::from_i64(&k, 18));
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn char_poly_of_companion() {
        // companion of x^2 - 3x + 2 has e1 = 3, e2 = 2
        let a = m(&[&[0, -2], &[1, 3]]);
        let k = NumberField::rationals();
        let e = a.char_poly_symmetric();
        assert_eq!(e[1], RatFunc::from_i64(&k, 3));
        assert_eq!(e[2], RatFunc::from_i64(&k, 2));
    }
}
