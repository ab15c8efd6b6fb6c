//! Lattices over the valuation ring of a place, their homothety classes, and
//! the incidence structure of the building of `SL(n)` on those classes.

mod matrix;
mod normal_form;

pub use matrix::{Matrix, MatrixDisplay};
pub use normal_form::{hermite_local, smith_valuations_local};

use std::fmt;

use thiserror::Error;

use crate::field::{Place, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("basis matrix is singular")]
    SingularBasis,
    #[error("lattices live at different places")]
    PlaceMismatch,
    #[error("{given} vertices cannot form a simplex in dimension {dim}")]
    TooManyVertices { given: usize, dim: usize },
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// An `O`-lattice in `K(t)^n` given by the columns of a basis (or spanning)
/// matrix.
#[derive(Clone, Debug)]
pub struct Lattice<K: Scalar> {
    place: Place<K>,
    basis: Matrix<K>,
}

impl<K: Scalar> Lattice<K> {
    /// Lattice with the columns of `basis` as an `O`-basis.
    pub fn new(place: Place<K>, basis: Matrix<K>) -> Result<Self, LatticeError> {
        if !basis.is_square() {
            return Err(LatticeError::DimensionMismatch { expected: basis.rows(), got: basis.cols() });
        }
        if basis.det().is_zero() {
            return Err(LatticeError::SingularBasis);
        }
        Ok(Lattice { place, basis })
    }

    /// Lattice spanned over `O` by the columns of an `n × m` matrix; the
    /// result carries a Hermite basis.
    pub fn spanned_by(place: Place<K>, gens: &Matrix<K>) -> Result<Self, LatticeError> {
        let local = gens.to_local(&place);
        let (h, _) = hermite_local(&local).ok_or(LatticeError::SingularBasis)?;
        Ok(Lattice { basis: h.from_local(&place), place })
    }

    /// The standard lattice `O^n`.
    pub fn standard(n: usize, place: Place<K>, ctx: &K::Ctx) -> Self {
        Lattice { place, basis: Matrix::identity(n, ctx) }
    }

    pub fn place(&self) -> &Place<K> {
        &self.place
    }

    pub fn basis(&self) -> &Matrix<K> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Self) -> Result<bool, LatticeError> {
        same_place(&self.place, &other.place)?;
        let inv = other.basis.inverse().ok_or(LatticeError::SingularBasis)?;
        Ok((&inv * &self.basis).is_integral_at(&self.place))
    }

    /// Same lattice (not merely homothetic).
    pub fn same_lattice(&self, other: &Self) -> Result<bool, LatticeError> {
        Ok(self.is_contained_in(other)? && other.is_contained_in(self)?)
    }
}

fn same_place<K: Scalar>(a: &Place<K>, b: &Place<K>) -> Result<(), LatticeError> {
    if a == b {
        Ok(())
    } else {
        Err(LatticeError::PlaceMismatch)
    }
}

/// A homothety class of lattices, stored by its canonical basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexClass<K: Scalar> {
    place: Place<K>,
    basis: Matrix<K>,
}

impl<K: Scalar> VertexClass<K> {
    pub fn place(&self) -> &Place<K> {
        &self.place
    }

    pub fn canonical_basis(&self) -> &Matrix<K> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The class of the standard lattice.
    pub fn standard(n: usize, place: Place<K>, ctx: &K::Ctx) -> Self {
        VertexClass { place, basis: Matrix::identity(n, ctx) }
    }

    /// The class of the lattice spanned by the columns of `m`.
    pub fn from_matrix(place: Place<K>, m: &Matrix<K>) -> Result<Self, LatticeError> {
        canonical_form(&Lattice::new(place, m.clone())?)
    }

    pub fn as_lattice(&self) -> Lattice<K> {
        Lattice { place: self.place.clone(), basis: self.basis.clone() }
    }

    /// `{"place": ..., "basis": [[...]]}` with entries in the text format.
    pub fn to_json(&self, var: &str) -> serde_json::Value {
        serde_json::json!({
            "place": self.place.to_string(),
            "basis": self.basis.to_text_rows(var),
        })
    }
}

impl<K: Scalar> fmt::Debug for VertexClass<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} @ {}]", self.basis.display("t"), self.place)
    }
}

/// Canonical representative of the homothety class of `l`.
pub fn canonical_form<K: Scalar>(l: &Lattice<K>) -> Result<VertexClass<K>, LatticeError> {
    let local = l.basis.to_local(&l.place);
    let (h, _) = hermite_local(&local).ok_or(LatticeError::SingularBasis)?;
    Ok(VertexClass { place: l.place.clone(), basis: h.from_local(&l.place) })
}

/// Relative elementary divisors `a_1 ≤ … ≤ a_n`: there is a basis `f_i` with
/// `lp = Σ O f_i` and `l = Σ O ϖ^{a_i} f_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct DivisorVector(pub Vec<i64>);

impl DivisorVector {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Shifted so the first entry is zero.
    pub fn normalized(&self) -> DivisorVector {
        let a = self.0.first().copied().unwrap_or(0);
        DivisorVector(self.0.iter().map(|x| x - a).collect())
    }

    pub fn negated_reversed(&self) -> DivisorVector {
        DivisorVector(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

pub fn elementary_divisors<K: Scalar>(l: &Lattice<K>, lp: &Lattice<K>) -> Result<DivisorVector, LatticeError> {
    same_place(&l.place, &lp.place)?;
    let inv = lp.basis.inverse().ok_or(LatticeError::SingularBasis)?;
    let rel = (&inv * &l.basis).to_local(&l.place);
    smith_valuations_local(&rel).map(DivisorVector).ok_or(LatticeError::SingularBasis)
}

fn class_divisors<K: Scalar>(v: &VertexClass<K>, w: &VertexClass<K>) -> Result<DivisorVector, LatticeError> {
    elementary_divisors(&v.as_lattice(), &w.as_lattice())
}

/// Adjacency in the building: some representatives satisfy `ϖL' ⊊ L ⊊ L'`.
pub fn adjacent<K: Scalar>(v: &VertexClass<K>, w: &VertexClass<K>) -> Result<bool, LatticeError> {
    same_place(&v.place, &w.place)?;
    if v == w {
        return Ok(false);
    }
    let d = class_divisors(v, w)?.normalized();
    Ok(d.0.iter().all(|&x| x == 0 || x == 1) && d.0.contains(&1))
}

/// Whether the classes span a simplex: representatives forming a chain
/// `ϖL_r ⊊ L_1 ⊊ … ⊊ L_r`.
pub fn is_simplex<K: Scalar>(vs: &[VertexClass<K>]) -> Result<bool, LatticeError> {
    let Some(first) = vs.first() else {
        return Err(LatticeError::EmptyVertexSet);
    };
    for v in vs {
        same_place(&first.place, &v.place)?;
    }
    let n = first.dim();
    let distinct: Vec<&VertexClass<K>> = {
        let mut seen = Vec::new();
        for v in vs {
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        seen
    };
    if distinct.len() > n {
        return Err(LatticeError::TooManyVertices { given: distinct.len(), dim: n });
    }
    let reference = distinct[distinct.len() - 1];
    let ctx = first.basis.ctx().clone();
    let u = first.place.uniformizer(&ctx);

    // Representatives M with ϖR ⊆ M ⊆ R, paired with ν(det M).
    let mut reps: Vec<(i64, Lattice<K>)> = Vec::new();
    for v in &distinct[..distinct.len() - 1] {
        let d = class_divisors(v, reference)?;
        let (lo, hi) = (d.0[0], d.0[n - 1]);
        if hi - lo > 1 {
            return Ok(false);
        }
        let m = Lattice { place: first.place.clone(), basis: v.basis.scale(&u.powi(-lo)) };
        let det_val = m.basis.det().valuation(&first.place).finite().expect("nonsingular");
        reps.push((det_val, m));
    }
    // Larger lattices have smaller determinant valuation; a chain must list
    // them with strictly decreasing valuation.
    reps.sort_by_key(|(dv, _)| std::cmp::Reverse(*dv));
    for w in reps.windows(2) {
        if w[0].0 == w[1].0 || !w[0].1.is_contained_in(&w[1].1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ν(det B) mod n` for the canonical basis `B`.
pub fn vertex_type<K: Scalar>(v: &VertexClass<K>) -> u32 {
    let n = v.dim() as i64;
    let d = v.basis.det().valuation(&v.place).finite().expect("nonsingular canonical basis");
    d.rem_euclid(n) as u32
}

/// All classes `[Σ O ϖ^{m_j} f_j]` with `m_1 = 0` and `m_{j+1}` ranging over
/// `ranges[j]`, in lexicographic order of the exponent vector.
pub fn apartment_vertices<K: Scalar>(
    place: &Place<K>,
    f: &Matrix<K>,
    ranges: &[std::ops::RangeInclusive<i64>],
) -> Result<Vec<(Vec<i64>, VertexClass<K>)>, LatticeError> {
    let n = f.rows();
    if ranges.len() + 1 != n {
        return Err(LatticeError::DimensionMismatch { expected: n - 1, got: ranges.len() });
    }
    if f.det().is_zero() {
        return Err(LatticeError::SingularBasis);
    }
    let ctx = f.ctx().clone();
    let mut exps: Vec<Vec<i64>> = vec![vec![0]];
    for r in ranges {
        exps = exps.into_iter().flat_map(|e| r.clone().map(move |m| [e.clone(), vec![m]].concat())).collect();
    }
    let mut out: Vec<(Vec<i64>, VertexClass<K>)> = Vec::new();
    for e in exps {
        let b = f * &Matrix::uniformizer_diag(place, &e, &ctx);
        let v = VertexClass::from_matrix(place.clone(), &b)?;
        if out.iter().any(|(_, w)| w == &v) {
            continue;
        }
        out.push((e, v));
    }
    Ok(out)
}

/// `g · v`.
pub fn act<K: Scalar>(g: &Matrix<K>, v: &VertexClass<K>) -> Result<VertexClass<K>, LatticeError> {
    if g.rows() != v.dim() || !g.is_square() {
        return Err(LatticeError::DimensionMismatch { expected: v.dim(), got: g.rows() });
    }
    VertexClass::from_matrix(v.place.clone(), &(g * &v.basis))
}
