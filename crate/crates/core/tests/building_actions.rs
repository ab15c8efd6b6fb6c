use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tribranch_core::field::{Fp, Modulus, Nf, NumberField, Place, RatFunc, Valuation};
use tribranch_core::group::{
    building_ball, fixed_vertex, link_of_standard, link_of_vertex, nontriviality_certificate, orbit_ball, pullback,
    reduced_words, FixedVertex, GroupError, GroupHom, GroupPresentation, Nontriviality, Representation, Word,
};
use tribranch_core::lattice::{act, adjacent, canonical_form, vertex_type, Lattice, Matrix, VertexClass};
use tribranch_core::random::{elementary_sl, integral_unimodular, random_vertex};
use tribranch_core::triangle::{delta_restriction, gamma_representation, TriangleData};

fn f2() -> Modulus {
    Modulus::new(2).unwrap()
}

fn t_power_diag<K: tribranch_core::field::Scalar>(exps: &[i64], ctx: &K::Ctx) -> Matrix<K> {
    Matrix::uniformizer_diag(&Place::Zero, exps, ctx)
}

/// Every vertex class with a representative between `t^d O^n` and `O^n`,
/// found by spanning all `n`-tuples of vectors over `F_p[t]/t^d` together
/// with `t^d O^n`.
fn ball_by_brute_force(n: usize, d: u32, p: Modulus) -> HashSet<VertexClass<Fp>> {
    let coeffs: Vec<RatFunc<Fp>> = {
        let q = p.get() as usize;
        let t = RatFunc::<Fp>::var(&p);
        (0..q.pow(d))
            .map(|mut code| {
                let mut f = RatFunc::zero(&p);
                for k in 0..d {
                    let c = RatFunc::constant(Fp::new(p, (code % q) as i64));
                    f = &f + &(&c * &t.powi(k as i64));
                    code /= q;
                }
                f
            })
            .collect()
    };
    let vectors: Vec<Vec<RatFunc<Fp>>> = (0..coeffs.len().pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let c = coeffs[code % coeffs.len()].clone();
                    code /= coeffs.len();
                    c
                })
                .collect()
        })
        .collect();
    let floor = t_power_diag::<Fp>(&vec![d as i64; n], &p);
    let mut out = HashSet::new();
    for code in 0..vectors.len().pow(n as u32) {
        let mut c = code;
        let mut cols = Vec::new();
        for _ in 0..n {
            cols.push(vectors[c % vectors.len()].clone());
            c /= vectors.len();
        }
        let gens = Matrix::from_columns(&cols).hstack(&floor);
        let l = Lattice::spanned_by(Place::Zero, &gens).unwrap();
        out.insert(canonical_form(&l).unwrap());
    }
    out
}

#[test]
fn evaluation_is_a_homomorphism() {
    let td = TriangleData::builtin(3, 3, 4).unwrap();
    let rep = gamma_representation(&td).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let random_word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..6);
        let s: Vec<i64> = (0..len).map(|_| rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 }).collect();
        Word::from_signed(&s)
    };
    for _ in 0..20 {
        let u = random_word(&mut rng);
        let v = random_word(&mut rng);
        let uv = rep.evaluate(&u.mul(&v)).unwrap();
        assert_eq!(uv, &rep.evaluate(&u).unwrap() * &rep.evaluate(&v).unwrap());
        assert!((&rep.evaluate(&u.inverse()).unwrap() * &rep.evaluate(&u).unwrap()).is_identity());
    }
    assert_eq!(
        rep.evaluate(&Word::from_signed(&[4])).unwrap_err(),
        GroupError::IndexOutOfRange { index: 3, count: 3 }
    );
}

#[test]
fn nontriviality_finds_the_first_pole_in_shortlex_order() {
    let td = TriangleData::builtin(3, 3, 3).unwrap();
    let delta = delta_restriction(&td).unwrap();
    for place in [Place::Zero, Place::Infinity] {
        let Nontriviality::Certificate { word, trace, valuation } = nontriviality_certificate(&delta, &place, 8) else {
            panic!("no certificate at {place}");
        };
        let expected = reduced_words(2, 8)
            .find(|w| matches!(delta.evaluate(w).unwrap().trace().valuation(&place), Valuation::Finite(v) if v < 0))
            .unwrap();
        assert_eq!(word, expected);
        assert_eq!(trace, delta.evaluate(&word).unwrap().trace());
        assert_eq!(Valuation::Finite(valuation), trace.valuation(&place));
        assert!(valuation < 0);
        // a word with a trace pole fixes no vertex
        let g = delta.evaluate(&word).unwrap();
        assert!(matches!(fixed_vertex(&g, &place).unwrap(), FixedVertex::NoFixedVertex(_)));
    }
}

#[test]
fn constant_representation_is_inconclusive() {
    let k = NumberField::rationals();
    let pres = GroupPresentation::free(&["a", "b"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let imgs = vec![integral_unimodular::<Nf, _>(3, &Place::Zero, &k, 0, &mut rng); 2];
    let rep = Representation::new(pres, imgs).unwrap();
    // 4 + 12 + 36 reduced words of length at most 3
    assert_eq!(nontriviality_certificate(&rep, &Place::Zero, 3), Nontriviality::Inconclusive { words_checked: 52 });
}

#[test]
fn integral_elements_fix_a_vertex_over_f2() {
    let p = f2();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in [2, 3] {
        for i in 0..50 {
            let g0 = integral_unimodular::<Fp, _>(n, &Place::Zero, &p, 4, &mut rng);
            // over F_2 the only nonzero constant is 1, so g0 is in SL_n(O)
            let g = if i % 2 == 0 {
                g0
            } else {
                let h = elementary_sl::<Fp, _>(n, &p, 3, &mut rng);
                &(&h * &g0) * &h.inverse().unwrap()
            };
            let FixedVertex::Fixed(v) = fixed_vertex(&g, &Place::Zero).unwrap() else {
                panic!("expected a fixed vertex for {g:?}");
            };
            assert_eq!(act(&g, &v).unwrap(), v);
        }
    }
}

#[test]
fn integral_elements_fix_a_vertex_over_q() {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let place = Place::Finite(Nf::from_ratio(&k, 1, 1));
    for _ in 0..20 {
        let g = tribranch_core::random::integral_sl::<Nf, _>(3, &place, &k, 4, &mut rng);
        let h = elementary_sl::<Nf, _>(3, &k, 2, &mut rng);
        let g = &(&h * &g) * &h.inverse().unwrap();
        let FixedVertex::Fixed(v) = fixed_vertex(&g, &place).unwrap() else { panic!() };
        assert_eq!(act(&g, &v).unwrap(), v);
    }
}

#[test]
fn hyperbolic_diagonals_fix_nothing_in_the_ball() {
    let p = f2();
    for exps in [vec![1, -1], vec![1, 0, -1]] {
        let n = exps.len();
        let g = t_power_diag::<Fp>(&exps, &p);
        let FixedVertex::NoFixedVertex(cert) = fixed_vertex(&g, &Place::Zero).unwrap() else {
            panic!("diagonal {exps:?} reported fixed");
        };
        assert_eq!(cert.valuation, -1);
        let center = VertexClass::<Fp>::standard(n, Place::Zero, &p);
        let ball = building_ball(&center, 3).unwrap();
        assert!(ball.iter().all(|v| act(&g, v).unwrap() != *v));
    }
}

#[test]
fn ball_enumeration_matches_brute_force() {
    let p = f2();
    let tree = building_ball(&VertexClass::<Fp>::standard(2, Place::Zero, &p), 3).unwrap();
    let set: HashSet<_> = tree.iter().cloned().collect();
    assert_eq!(set.len(), tree.len());
    assert_eq!(set, ball_by_brute_force(2, 3, p));
    // 1 + 3 + 6 + 12 in the 3-regular tree
    assert_eq!(tree.len(), 22);

    let star = building_ball(&VertexClass::<Fp>::standard(3, Place::Zero, &p), 1).unwrap();
    assert_eq!(star.into_iter().collect::<HashSet<_>>(), ball_by_brute_force(3, 1, p));
}

#[test]
fn link_sizes() {
    for p in [2u64, 3, 5, 7] {
        let l2 = link_of_standard(2, p).unwrap();
        assert_eq!(l2.len() as u64, p + 1);
        let l3 = link_of_standard(3, p).unwrap();
        assert_eq!(l3.len() as u64, 2 * (p * p + p + 1));
        let m = Modulus::new(p).unwrap();
        for (n, link) in [(2, &l2), (3, &l3)] {
            let center = VertexClass::<Fp>::standard(n, Place::Zero, &m);
            let distinct: HashSet<_> = link.iter().collect();
            assert_eq!(distinct.len(), link.len());
            assert!(link.iter().all(|v| adjacent(&center, v).unwrap()));
        }
        let type1 = l3.iter().filter(|v| vertex_type(v) == 1).count() as u64;
        assert_eq!(type1, p * p + p + 1);
    }
    assert_eq!(link_of_standard(4, 2).unwrap_err(), GroupError::UnsupportedDimension(4));
    assert!(link_of_standard(6, 2).is_err());
}

#[test]
fn links_of_random_vertices() {
    let p = Modulus::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let v = random_vertex::<Fp, _>(3, &Place::Zero, &p, &mut rng);
        let link = link_of_vertex(&v).unwrap();
        assert_eq!(link.len(), 26);
        assert!(link.iter().all(|w| adjacent(&v, w).unwrap()));
        let t = vertex_type(&v);
        assert!(link.iter().all(|w| vertex_type(w) != t));
    }
}

#[test]
fn orbit_of_a_hyperbolic_element_is_a_line() {
    let k = NumberField::rationals();
    let pres = GroupPresentation::free(&["g"]).unwrap();
    let g = t_power_diag::<Nf>(&[1, -1], &k);
    let rep = Representation::new(pres, vec![g.clone()]).unwrap();
    let base = VertexClass::<Nf>::standard(2, Place::Zero, &k);
    let orbit = orbit_ball(&rep, &base, 3).unwrap();
    let expected: HashSet<VertexClass<Nf>> = (-3..=3i64)
        .map(|j| VertexClass::from_matrix(Place::Zero, &t_power_diag::<Nf>(&[j, -j], &k)).unwrap())
        .collect();
    let got: HashSet<VertexClass<Nf>> = orbit.nodes.iter().map(|n| n.class.clone()).collect();
    assert_eq!(got, expected);
    assert_eq!(orbit.nodes.len(), 7);
    assert!(orbit.nodes.iter().all(|n| n.vertex_type == 0));
    for e in &orbit.edges {
        assert_eq!(act(&g, &orbit.nodes[e.from].class).unwrap(), orbit.nodes[e.to].class);
    }
    assert_eq!(orbit.edges.len(), 6);
    let names = vec!["g".to_string()];
    assert_eq!(orbit.to_json(&names, "t")["nodes"].as_array().unwrap().len(), 7);
    assert!(orbit.to_dot(&names, "t").starts_with("digraph"));
}

#[test]
fn triangle_orbit_edges_are_generator_moves() {
    let td = TriangleData::builtin(3, 3, 3).unwrap();
    let rep = delta_restriction(&td).unwrap();
    let base = VertexClass::<Nf>::standard(3, Place::Zero, &td.field);
    let orbit = orbit_ball(&rep, &base, 2).unwrap();
    assert!(orbit.nodes.len() > 1);
    assert!(orbit.nodes.iter().all(|n| n.vertex_type == 0));
    for e in &orbit.edges {
        assert_eq!(act(&rep.images()[e.generator], &orbit.nodes[e.from].class).unwrap(), orbit.nodes[e.to].class);
    }
    assert!(orbit.nodes.iter().all(|n| n.depth <= 2));
}

#[test]
fn pullback_checks_relators() {
    let td = TriangleData::builtin(3, 3, 3).unwrap();
    let delta = delta_restriction(&td).unwrap();
    let same = pullback(&delta, &GroupHom::identity(delta.presentation())).unwrap();
    assert_eq!(same.images(), delta.images());
    // u ↦ x does not respect u² = 1
    let source = GroupPresentation::parse(&["u"], &["u^2"]).unwrap();
    let h = GroupHom::new(source, delta.presentation().clone(), vec![Word::gen(0)]).unwrap();
    assert!(matches!(pullback(&delta, &h), Err(GroupError::RelatorFailure { .. })));
}
