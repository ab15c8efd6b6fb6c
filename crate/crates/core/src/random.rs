//! Seeded generators for matrices, lattices, and vertices used by property
//! tests and the acceptance suite.

use rand::Rng;

use crate::field::number_field::q;
use crate::field::{Fp, Modulus, Nf, NumberField, Place, Poly, RatFunc, Scalar};
use crate::lattice::{Matrix, VertexClass};

/// Scalars with a small-height random sampler.
pub trait RandomScalar: Scalar {
    fn random<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R) -> Self;
}

impl RandomScalar for Nf {
    fn random<R: Rng + ?Sized>(ctx: &std::sync::Arc<NumberField>, rng: &mut R) -> Self {
        let coeffs = (0..ctx.degree()).map(|_| q(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect();
        Nf::new(ctx, coeffs)
    }
}

impl RandomScalar for Fp {
    fn random<R: Rng + ?Sized>(ctx: &Modulus, rng: &mut R) -> Self {
        Fp::new(*ctx, rng.gen_range(0..ctx.get() as i64))
    }
}

/// Random polynomial in the local uniformizer of `place`, degree `< terms`:
/// an element of the valuation ring.
pub fn integral_element<K: RandomScalar, R: Rng + ?Sized>(
    place: &Place<K>,
    ctx: &K::Ctx,
    terms: usize,
    rng: &mut R,
) -> RatFunc<K> {
    let coeffs = (0..terms).map(|_| K::random(ctx, rng)).collect();
    RatFunc::from_poly(Poly::new(ctx, coeffs)).from_local(place)
}

/// Random element `Σ c_k t^k` with `k ∈ [-span, span]`, not necessarily integral.
pub fn laurent_element<K: RandomScalar, R: Rng + ?Sized>(ctx: &K::Ctx, span: i64, rng: &mut R) -> RatFunc<K> {
    let t = RatFunc::var(ctx);
    let mut acc = RatFunc::zero(ctx);
    for k in -span..=span {
        if rng.gen_bool(0.5) {
            acc = &acc + &(&t.powi(k) * &RatFunc::constant(K::random(ctx, rng)));
        }
    }
    acc
}

fn elementary<K: Scalar>(n: usize, i: usize, j: usize, c: RatFunc<K>, ctx: &K::Ctx) -> Matrix<K> {
    let mut m = Matrix::identity(n, ctx);
    m.set(i, j, c);
    m
}

fn random_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Product of `steps` elementary matrices `I + c·E_ij` with `c` integral at
/// `place`: an element of `SL_n(O)`.
pub fn integral_sl<K: RandomScalar, R: Rng + ?Sized>(
    n: usize,
    place: &Place<K>,
    ctx: &K::Ctx,
    steps: usize,
    rng: &mut R,
) -> Matrix<K> {
    let mut m = Matrix::identity(n, ctx);
    for _ in 0..steps {
        let (i, j) = random_pair(n, rng);
        let c = integral_element(place, ctx, 2, rng);
        m = &m * &elementary(n, i, j, c, ctx);
    }
    m
}

/// An integral matrix whose determinant is a unit at `place`: an
/// `SL_n(O)` element times a diagonal of nonzero constants.
pub fn integral_unimodular<K: RandomScalar, R: Rng + ?Sized>(
    n: usize,
    place: &Place<K>,
    ctx: &K::Ctx,
    steps: usize,
    rng: &mut R,
) -> Matrix<K> {
    let d: Vec<RatFunc<K>> = (0..n)
        .map(|_| loop {
            let c = K::random(ctx, rng);
            if !c.is_zero() {
                break RatFunc::constant(c);
            }
        })
        .collect();
    &integral_sl(n, place, ctx, steps, rng) * &Matrix::diag(&d)
}

/// Product of `steps` elementary matrices with Laurent entries: an element of
/// `SL_n(K(t))`.
pub fn elementary_sl<K: RandomScalar, R: Rng + ?Sized>(
    n: usize,
    ctx: &K::Ctx,
    steps: usize,
    rng: &mut R,
) -> Matrix<K> {
    let mut m = Matrix::identity(n, ctx);
    for _ in 0..steps {
        let (i, j) = random_pair(n, rng);
        let c = laurent_element(ctx, 1, rng);
        m = &m * &elementary(n, i, j, c, ctx);
    }
    m
}

/// A random nonsingular basis `U · diag(ϖ^m) · W` with `U, W` integral
/// unimodular and exponents in `[-2, 2]`.
pub fn random_basis<K: RandomScalar, R: Rng + ?Sized>(
    n: usize,
    place: &Place<K>,
    ctx: &K::Ctx,
    rng: &mut R,
) -> Matrix<K> {
    let exps: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    let u = integral_unimodular(n, place, ctx, 3, rng);
    let w = integral_unimodular(n, place, ctx, 3, rng);
    &(&u * &Matrix::uniformizer_diag(place, &exps, ctx)) * &w
}

pub fn random_vertex<K: RandomScalar, R: Rng + ?Sized>(
    n: usize,
    place: &Place<K>,
    ctx: &K::Ctx,
    rng: &mut R,
) -> VertexClass<K> {
    VertexClass::from_matrix(place.clone(), &random_basis(n, place, ctx, rng)).expect("nonsingular by construction")
}

/// A nonzero scalar of `K(t)` for homothety checks.
pub fn nonzero_element<K: RandomScalar, R: Rng + ?Sized>(ctx: &K::Ctx, rng: &mut R) -> RatFunc<K> {
    loop {
        let x = laurent_element(ctx, 2, rng);
        if !x.is_zero() {
            return x;
        }
    }
}
