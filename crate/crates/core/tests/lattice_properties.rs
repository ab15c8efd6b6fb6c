use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tribranch_core::field::{Fp, Modulus, Nf, NumberField, Place, Poly, RatFunc, Scalar};
use tribranch_core::lattice::{
    act, adjacent, apartment_vertices, canonical_form, elementary_divisors, is_simplex, vertex_type, DivisorVector,
    Lattice, Matrix, VertexClass,
};
use tribranch_core::random::{
    elementary_sl, integral_unimodular, nonzero_element, random_basis, random_vertex, RandomScalar,
};

fn places_q() -> Vec<Place<Nf>> {
    let k = NumberField::rationals();
    vec![Place::Zero, Place::Infinity, Place::finite(Nf::from_i64(&k, 1))]
}

fn check_canonical<K: RandomScalar>(place: &Place<K>, ctx: &K::Ctx, n: usize, rng: &mut ChaCha8Rng) {
    let b = random_basis(n, place, ctx, rng);
    let l = Lattice::new(place.clone(), b.clone()).unwrap();
    let v = canonical_form(&l).unwrap();
    assert_eq!(canonical_form(&v.as_lattice()).unwrap(), v, "idempotence");
    let a = nonzero_element(ctx, rng);
    let scaled = Lattice::new(place.clone(), b.scale(&a)).unwrap();
    assert_eq!(canonical_form(&scaled).unwrap(), v, "homothety invariance");
    let u = integral_unimodular(n, place, ctx, 3, rng);
    let rebased = Lattice::new(place.clone(), &b * &u).unwrap();
    assert_eq!(canonical_form(&rebased).unwrap(), v, "change of basis");
}

#[test]
fn canonical_form_is_a_class_invariant() {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for place in places_q() {
        for n in 2..=3 {
            for _ in 0..8 {
                check_canonical(&place, &k, n, &mut rng);
            }
        }
    }
    let m = Modulus::new(2).unwrap();
    for _ in 0..10 {
        check_canonical::<Fp>(&Place::Zero, &m, 3, &mut rng);
    }
}

#[test]
fn canonical_basis_spans_a_homothetic_lattice() {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let t = RatFunc::<Nf>::var(&k);
    for _ in 0..10 {
        let b = random_basis(2, &Place::Zero, &k, &mut rng);
        let v = VertexClass::from_matrix(Place::Zero, &b).unwrap();
        let found = (-6..=6).any(|c| {
            let l = Lattice::new(Place::Zero, b.scale(&t.powi(c))).unwrap();
            l.same_lattice(&v.as_lattice()).unwrap()
        });
        assert!(found);
    }
}

#[test]
fn elementary_divisors_properties() {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for place in places_q() {
        for _ in 0..6 {
            let l = Lattice::new(place.clone(), random_basis(3, &place, &k, &mut rng)).unwrap();
            let lp = Lattice::new(place.clone(), random_basis(3, &place, &k, &mut rng)).unwrap();
            let d = elementary_divisors(&l, &lp).unwrap();
            assert!(d.entries().windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(elementary_divisors(&lp, &l).unwrap(), d.negated_reversed());
            let rel = &lp.basis().inverse().unwrap() * l.basis();
            assert_eq!(rel.det().valuation(&place).finite(), Some(d.sum()));
            let u = integral_unimodular(3, &place, &k, 3, &mut rng);
            let w = integral_unimodular(3, &place, &k, 3, &mut rng);
            let l2 = Lattice::new(place.clone(), l.basis() * &u).unwrap();
            let lp2 = Lattice::new(place.clone(), lp.basis() * &w).unwrap();
            assert_eq!(elementary_divisors(&l2, &lp2).unwrap(), d);
        }
    }
}

#[test]
fn divisors_of_conjugated_diagonal() {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let l0 = Lattice::<Nf>::standard(2, Place::Zero, &k);
    for _ in 0..5 {
        let u = integral_unimodular(2, &Place::Zero, &k, 3, &mut rng);
        let w = integral_unimodular(2, &Place::Zero, &k, 3, &mut rng);
        let b = &(&u * &Matrix::uniformizer_diag(&Place::Zero, &[3, 0], &k)) * &w;
        let l = Lattice::new(Place::Zero, b).unwrap();
        assert_eq!(elementary_divisors(&l, &l0).unwrap(), DivisorVector(vec![0, 3]));
    }
}

#[test]
fn adjacency_is_symmetric_and_matches_pair_simplices() {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let v0 = VertexClass::<Nf>::standard(3, Place::Zero, &k);
    let mut vs = vec![v0.clone()];
    let apt = apartment_vertices(&Place::Zero, &Matrix::<Nf>::identity(3, &k), &[-1..=1, -1..=1]).unwrap();
    vs.extend(apt.into_iter().map(|(_, v)| v));
    for _ in 0..4 {
        vs.push(random_vertex::<Nf, _>(3, &Place::Zero, &k, &mut rng));
    }
    for a in &vs {
        assert!(!adjacent(a, a).unwrap());
        for b in &vs {
            let ab = adjacent(a, b).unwrap();
            assert_eq!(ab, adjacent(b, a).unwrap());
            if a != b {
                assert_eq!(is_simplex(&[a.clone(), b.clone()]).unwrap(), ab);
            }
        }
    }
}

/// Searches all orderings and homothety shifts in a window for a chain
/// `ϖL_r ⊊ L_1 ⊊ … ⊊ L_r`.
fn chain_by_brute_force(vs: &[VertexClass<Nf>], k: &std::sync::Arc<NumberField>) -> bool {
    let t = RatFunc::<Nf>::var(k);
    let r = vs.len();
    let mut perm: Vec<usize> = (0..r).collect();
    let perms = permutations(&mut perm, 0);
    for p in perms {
        let shifts = (0..5i64.pow(r as u32)).map(|mut code| {
            (0..r)
                .map(|_| {
                    let s = code % 5 - 2;
                    code /= 5;
                    s
                })
                .collect::<Vec<i64>>()
        });
        for s in shifts {
            let ls: Vec<Lattice<Nf>> = p
                .iter()
                .zip(&s)
                .map(|(&i, &c)| Lattice::new(Place::Zero, vs[i].canonical_basis().scale(&t.powi(c))).unwrap())
                .collect();
            let last = &ls[r - 1];
            let bottom = Lattice::new(Place::Zero, last.basis().scale(&t)).unwrap();
            let mut chain = vec![bottom];
            chain.extend(ls.iter().cloned());
            let ok = chain.windows(2).all(|w| {
                w[0].is_contained_in(&w[1]).unwrap() && !w[1].is_contained_in(&w[0]).unwrap()
            });
            if ok {
                return true;
            }
        }
    }
    false
}

fn permutations(v: &mut Vec<usize>, k: usize) -> Vec<Vec<usize>> {
    if k == v.len() {
        return vec![v.clone()];
    }
    let mut out = Vec::new();
    for i in k..v.len() {
        v.swap(k, i);
        out.extend(permutations(v, k + 1));
        v.swap(k, i);
    }
    out
}

#[test]
fn simplex_test_agrees_with_brute_force() {
    let k = NumberField::rationals();
    let d = |es: &[i64]| VertexClass::from_matrix(Place::Zero, &Matrix::uniformizer_diag(&Place::Zero, es, &k)).unwrap();
    let v0 = d(&[0, 0, 0]);
    let cases = vec![
        vec![v0.clone(), d(&[0, 0, 1]), d(&[0, 1, 1])],
        vec![v0.clone(), d(&[0, 0, 1]), d(&[1, 0, 1])],
        vec![v0.clone(), d(&[0, 0, 1]), d(&[1, 0, 0])],
        vec![v0.clone(), d(&[0, 1, 2])],
        vec![d(&[0, 1, 0]), d(&[0, 0, 1]), d(&[1, 0, 0])],
        vec![d(&[0, 1, 1]), d(&[1, 0, 1]), d(&[0, 0, 1])],
    ];
    for vs in cases {
        assert_eq!(is_simplex(&vs).unwrap(), chain_by_brute_force(&vs, &k), "{vs:?}");
    }
    assert!(is_simplex(&[v0.clone(), d(&[0, 0, 1]), d(&[0, 1, 1])]).unwrap());
}

#[test]
fn pairwise_adjacency_versus_chains_in_an_apartment() {
    // Every pairwise-adjacent triple in a small apartment window is a chamber.
    let k = NumberField::rationals();
    let apt = apartment_vertices(&Place::Zero, &Matrix::<Nf>::identity(3, &k), &[-1..=1, -1..=1]).unwrap();
    let vs: Vec<_> = apt.into_iter().map(|(_, v)| v).collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for l in j + 1..vs.len() {
                let triple = [vs[i].clone(), vs[j].clone(), vs[l].clone()];
                let pairwise = adjacent(&vs[i], &vs[j]).unwrap()
                    && adjacent(&vs[j], &vs[l]).unwrap()
                    && adjacent(&vs[i], &vs[l]).unwrap();
                assert_eq!(is_simplex(&triple).unwrap(), pairwise);
            }
        }
    }
}

#[test]
fn apartment_window_of_rank_three() {
    let k = NumberField::rationals();
    let apt = apartment_vertices(&Place::Zero, &Matrix::<Nf>::identity(3, &k), &[0..=1, 0..=1]).unwrap();
    assert_eq!(apt.len(), 4);
    let find = |e: &[i64]| apt.iter().find(|(x, _)| x == e).unwrap().1.clone();
    assert!(is_simplex(&[find(&[0, 0, 0]), find(&[0, 0, 1]), find(&[0, 1, 1])]).unwrap());
    let f = random_basis::<Nf, _>(3, &Place::Zero, &k, &mut ChaCha8Rng::seed_from_u64(3));
    let single = apartment_vertices(&Place::Zero, &f, &[0..=0, 0..=0]).unwrap();
    assert_eq!(single.len(), 1);
    assert_eq!(single[0].1, VertexClass::from_matrix(Place::Zero, &f).unwrap());
}

#[test]
fn action_properties() {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..6 {
        let v = random_vertex::<Nf, _>(3, &Place::Zero, &k, &mut rng);
        let g = elementary_sl(3, &k, 3, &mut rng);
        let h = elementary_sl(3, &k, 3, &mut rng);
        let gv = act(&g, &v).unwrap();
        assert_eq!(vertex_type(&gv), vertex_type(&v));
        assert_eq!(act(&(&g * &h), &v).unwrap(), act(&g, &act(&h, &v).unwrap()).unwrap());
        assert_eq!(act(&g.inverse().unwrap(), &gv).unwrap(), v);
    }
    let v0 = VertexClass::<Nf>::standard(3, Place::Zero, &k);
    let u = integral_unimodular(3, &Place::Zero, &k, 4, &mut rng);
    assert_eq!(act(&u, &v0).unwrap(), v0);
}

#[test]
fn type_shifts_by_determinant_valuation() {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..6 {
        let v = random_vertex::<Nf, _>(3, &Place::Zero, &k, &mut rng);
        let g = Matrix::uniformizer_diag(&Place::Zero, &[1, 0, 0], &k);
        assert_eq!(vertex_type(&act(&g, &v).unwrap()), (vertex_type(&v) + 1) % 3);
    }
}

/// All classes adjacent to `[L₀]` among lattices with basis entries `a + b t`
/// over `F_p`, found by brute force.
fn neighbors_by_brute_force(p: u64) -> usize {
    let m = Modulus::new(p).unwrap();
    let v0 = VertexClass::<Fp>::standard(2, Place::Zero, &m);
    let entries: Vec<RatFunc<Fp>> = Fp::all(m)
        .flat_map(|a| Fp::all(m).map(move |b| RatFunc::from_poly(Poly::new(&m, vec![a, b]))))
        .collect();
    let mut found: Vec<VertexClass<Fp>> = Vec::new();
    for a in &entries {
        for b in &entries {
            for c in &entries {
                for d in &entries {
                    let mat = Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]);
                    if mat.det().is_zero() {
                        continue;
                    }
                    let v = VertexClass::from_matrix(Place::Zero, &mat).unwrap();
                    if adjacent(&v0, &v).unwrap() && !found.contains(&v) {
                        found.push(v);
                    }
                }
            }
        }
    }
    found.len()
}

#[test]
fn neighbor_counts_over_small_residue_fields() {
    assert_eq!(neighbors_by_brute_force(2), 3);
    assert_eq!(neighbors_by_brute_force(3), 4);
}

#[test]
fn scalar_fp_sanity() {
    let m = Modulus::new(5).unwrap();
    let x = Fp::new(m, 3);
    assert!(x.mul(&x.inv().unwrap()).is_one());
}
