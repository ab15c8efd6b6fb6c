//! The acceptance criteria, one timed check each. Prints one PASS/FAIL line
//! per criterion and fails if any criterion fails or runs over its limit.
//! Run with `cargo test -p tribranch-cli --test acceptance -- --nocapture`.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tribranch_core::characters::{analyze_ideal_point, character_equal, procesi_words, Verdict, DEFAULT_PROCESI_CAP};
use tribranch_core::field::{parse_ratfunc, Fp, Modulus, Nf, NumberField, Place, RatFunc, Valuation};
use tribranch_core::group::{
    abelianize, building_ball, fixed_vertex, link_of_standard, nontriviality_certificate, FixedVertex, Nontriviality,
};
use tribranch_core::lattice::{act, canonical_form, elementary_divisors, vertex_type, Lattice, Matrix, VertexClass};
use tribranch_core::random::{elementary_sl, integral_unimodular, nonzero_element, random_basis, random_vertex};
use tribranch_core::triangle::{
    delta_restriction, gamma_representation, seifert_group, trace_abac, SeifertData, TriangleData, PARAMETER,
};
use tribranch_scwol::{
    cog_isomorphic, development, quotient_cog, CellComplex, ComplexOfGroups, Element, FiniteGroupTable,
    GroupMorphism, LocalGroup, Scwol,
};

type Check = fn() -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const TRIPLES: [(u32, u32, u32); 4] = [(3, 3, 3), (3, 3, 4), (4, 4, 4), (3, 3, 5)];

/// The closed form simplified by hand with the built-in cosine values, in
/// the power basis of each triple's field.
fn hand_closed_form(p: u32, q: u32, r: u32) -> &'static str {
    match (p, q, r) {
        (3, 3, 3) => "s + 1 + s^-1",
        (3, 3, 4) => "[0,1]*(s + s^-1) + 2",
        (4, 4, 4) => "[0,2]*(s + s^-1) + 5",
        (3, 3, 5) => "[1/2,1/2]*(s + s^-1) + [3/2,1/2]",
        _ => unreachable!(),
    }
}

fn trace_identity() -> Result<(), String> {
    for (p, q, r) in TRIPLES {
        let start = Instant::now();
        let td = TriangleData::builtin(p, q, r).map_err(|e| e.to_string())?;
        let id = trace_abac(&td);
        ensure!(id.equal, "({p},{q},{r}): computed {} != closed form {}", id.computed, id.closed_form);
        let hand = parse_ratfunc::<Nf>(hand_closed_form(p, q, r), &td.field, PARAMETER).map_err(|e| e.to_string())?;
        ensure!(id.computed == hand, "({p},{q},{r}): trace differs from the hand-simplified value");
        ensure!(start.elapsed() < Duration::from_secs(1), "({p},{q},{r}) took {:?}", start.elapsed());
    }
    Ok(())
}

fn relators() -> Result<(), String> {
    for (p, q, r) in TRIPLES {
        let td = TriangleData::builtin(p, q, r).map_err(|e| e.to_string())?;
        let mut gamma = gamma_representation(&td).map_err(|e| e.to_string())?;
        let mut delta = delta_restriction(&td).map_err(|e| e.to_string())?;
        let g = gamma.verify();
        let d = delta.verify();
        ensure!(g.relators.len() == 6 && d.relators.len() == 3, "({p},{q},{r}): wrong relator counts");
        ensure!(g.all_passed(), "({p},{q},{r}): a relator of Gamma fails");
        ensure!(d.all_passed(), "({p},{q},{r}): a relator of Delta fails");
    }
    Ok(())
}

fn ideal_points() -> Result<(), String> {
    let td = TriangleData::builtin(3, 3, 3).map_err(|e| e.to_string())?;
    let tr = trace_abac(&td).computed;
    for place in [Place::Zero, Place::Infinity] {
        ensure!(tr.valuation(&place) == Valuation::Finite(-1), "valuation of tr(abac) at {place} is not -1");
    }
    let delta = delta_restriction(&td).map_err(|e| e.to_string())?;
    for place in [Place::Zero, Place::Infinity] {
        let c = nontriviality_certificate(&delta, &place, 8);
        ensure!(matches!(c, Nontriviality::Certificate { .. }), "no witness at {place}");
    }
    let words = procesi_words(3, 2, DEFAULT_PROCESI_CAP).map_err(|e| e.to_string())?;
    let one = Place::finite(Nf::from_ratio(&td.field, 1, 1));
    let report = analyze_ideal_point(&delta, &one, &words).map_err(|e| e.to_string())?;
    ensure!(report.verdict == Verdict::NoPoleFound, "a pole was found at s = 1");
    for place in [Place::Zero, Place::Infinity] {
        let report = analyze_ideal_point(&delta, &place, &words).map_err(|e| e.to_string())?;
        ensure!(report.verdict == Verdict::IdealPointCertified, "Procesi words certify nothing at {place}");
    }
    Ok(())
}

fn link_counts() -> Result<(), String> {
    for p in [2u64, 3, 5, 7] {
        let n2 = link_of_standard(2, p).map_err(|e| e.to_string())?.len() as u64;
        let n3 = link_of_standard(3, p).map_err(|e| e.to_string())?.len() as u64;
        ensure!(n2 == p + 1, "n = 2, p = {p}: {n2} neighbours");
        ensure!(n3 == 2 * (p * p + p + 1), "n = 3, p = {p}: {n3} neighbours");
    }
    Ok(())
}

fn type_preservation() -> Result<(), String> {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let vertices: Vec<VertexClass<Nf>> = (0..10).map(|_| random_vertex(3, &Place::Zero, &k, &mut rng)).collect();
    for i in 0..100 {
        let g = elementary_sl(3, &k, 3, &mut rng);
        for v in &vertices {
            let gv = act(&g, v).map_err(|e| e.to_string())?;
            ensure!(vertex_type(&gv) == vertex_type(v), "product {i} changes a vertex type");
        }
    }
    Ok(())
}

fn fixed_vertices() -> Result<(), String> {
    let m = Modulus::new(2).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in [2, 3] {
        for i in 0..50 {
            let g = integral_unimodular::<Fp, _>(n, &Place::Zero, &m, 4, &mut rng);
            match fixed_vertex(&g, &Place::Zero).map_err(|e| e.to_string())? {
                FixedVertex::Fixed(v) => {
                    ensure!(act(&g, &v).map_err(|e| e.to_string())? == v, "n = {n}, case {i}: vertex not fixed");
                }
                FixedVertex::NoFixedVertex(_) => return Err(format!("n = {n}, case {i}: no fixed vertex")),
            }
        }
    }
    let t = RatFunc::<Fp>::var(&m);
    let one = RatFunc::one(&m);
    let tinv = t.inv().map_err(|e| e.to_string())?;
    for g in [Matrix::diag(&[t.clone(), tinv.clone()]), Matrix::diag(&[t.clone(), one, tinv.clone()])] {
        let n = g.rows();
        ensure!(
            matches!(fixed_vertex(&g, &Place::Zero).map_err(|e| e.to_string())?, FixedVertex::NoFixedVertex(_)),
            "diagonal of size {n} has a fixed vertex"
        );
        let center = VertexClass::standard(n, Place::Zero, &m);
        let ball = building_ball(&center, 3).map_err(|e| e.to_string())?;
        for v in &ball {
            ensure!(act(&g, v).map_err(|e| e.to_string())? != *v, "diagonal of size {n} fixes a ball vertex");
        }
    }
    Ok(())
}

fn normal_forms() -> Result<(), String> {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let places = [Place::Zero, Place::Infinity, Place::finite(Nf::from_ratio(&k, 1, 1))];
    let e = |x: tribranch_core::lattice::LatticeError| x.to_string();
    for i in 0..200 {
        let place = &places[i % 3];
        let n = 2 + i % 2;
        let b = random_basis(n, place, &k, &mut rng);
        let v = canonical_form(&Lattice::new(place.clone(), b.clone()).map_err(e)?).map_err(e)?;
        ensure!(canonical_form(&v.as_lattice()).map_err(e)? == v, "case {i}: canonical form not idempotent");
        let c = nonzero_element(&k, &mut rng);
        let scaled = canonical_form(&Lattice::new(place.clone(), b.scale(&c)).map_err(e)?).map_err(e)?;
        ensure!(scaled == v, "case {i}: canonical form not homothety invariant");
    }
    for i in 0..200 {
        let place = &places[i % 3];
        let n = 2 + i % 2;
        let l = Lattice::new(place.clone(), random_basis(n, place, &k, &mut rng)).map_err(e)?;
        let lp = Lattice::new(place.clone(), random_basis(n, place, &k, &mut rng)).map_err(e)?;
        let d = elementary_divisors(&l, &lp).map_err(e)?;
        let u = integral_unimodular(n, place, &k, 3, &mut rng);
        let w = integral_unimodular(n, place, &k, 3, &mut rng);
        let l2 = Lattice::new(place.clone(), l.basis() * &u).map_err(e)?;
        let lp2 = Lattice::new(place.clone(), lp.basis() * &w).map_err(e)?;
        ensure!(elementary_divisors(&l2, &lp2).map_err(e)? == d, "case {i}: divisors change under a change of basis");
    }
    Ok(())
}

fn procesi() -> Result<(), String> {
    // words of length at most 2^n - 1 in m letters
    let oracle = |n: u32, m: usize| (1..(1u32 << n)).map(|k| m.pow(k)).sum::<usize>();
    let w22 = procesi_words(2, 2, DEFAULT_PROCESI_CAP).map_err(|e| e.to_string())?;
    let w32 = procesi_words(3, 2, DEFAULT_PROCESI_CAP).map_err(|e| e.to_string())?;
    ensure!(w22.len() == 14 && oracle(2, 2) == 14, "procesi_words(2,2) has {} words", w22.len());
    ensure!(w32.len() == 254 && oracle(3, 2) == 254, "procesi_words(3,2) has {} words", w32.len());
    let td = TriangleData::builtin(3, 3, 3).map_err(|e| e.to_string())?;
    let rho = delta_restriction(&td).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..10 {
        let g = elementary_sl(3, &td.field, 3, &mut rng);
        let conj = rho.conjugate(&g).map_err(|e| e.to_string())?;
        ensure!(character_equal(&rho, &conj, DEFAULT_PROCESI_CAP).map_err(|e| e.to_string())?, "conjugator {i}");
    }
    Ok(())
}

fn fin(g: FiniteGroupTable) -> LocalGroup {
    LocalGroup::Finite(g)
}

fn z2_z3_in_s3() -> (ComplexOfGroups, GroupMorphism) {
    let g = FiniteGroupTable::symmetric(3).unwrap();
    let tau = FiniteGroupTable::permutation_index(&[1, 0, 2]).unwrap();
    let c = FiniteGroupTable::permutation_index(&[1, 2, 0]).unwrap();
    let s = CellComplex { vertices: 2, edges: vec![[0, 1]], triangles: vec![] }.to_scwol().unwrap();
    let groups = vec![fin(FiniteGroupTable::cyclic(2).unwrap()), fin(FiniteGroupTable::cyclic(3).unwrap()), fin(FiniteGroupTable::trivial())];
    let psi = vec![vec![Element::Index(0)], vec![Element::Index(0)]];
    let cog = ComplexOfGroups::simple(s, groups, psi).unwrap();
    let phi = GroupMorphism {
        target: g.clone(),
        local: vec![vec![0, tau], vec![0, c, g.mul(c, c)], vec![0]],
        edges: vec![0, 0],
    };
    (cog, phi)
}

fn scwol_suite() -> Result<(), String> {
    let e = |x: tribranch_scwol::ScwolError| x.to_string();
    let tetra = CellComplex::from_vertex_triangles(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).to_scwol().map_err(e)?;
    ensure!(abelianize(&tetra.pi1_presentation(0).map_err(e)?).is_trivial(), "tetrahedron boundary is not simply connected");
    let cycle = CellComplex { vertices: 4, edges: vec![[0, 1], [1, 2], [2, 3], [3, 0]], triangles: vec![] };
    let h = abelianize(&cycle.to_scwol().map_err(e)?.pi1_presentation(0).map_err(e)?);
    ensure!(h.rank == 1 && h.torsion.is_empty(), "cycle has pi1 abelianization {h}");

    let (cog, phi) = z2_z3_in_s3();
    let d = development(&cog, &phi).map_err(e)?;
    let view = d.action.scwol.graph_view();
    ensure!(view.vertices.len() == 5 && view.edges.len() == 6, "development graph has {} vertices, {} edges", view.vertices.len(), view.edges.len());
    ensure!(view.is_connected(), "development is disconnected");
    let h = abelianize(&d.action.scwol.pi1_presentation(0).map_err(e)?);
    ensure!(h.rank == 2 && h.torsion.is_empty(), "development has pi1 abelianization {h}");

    let (q, qphi) = quotient_cog(&d.action).map_err(e)?;
    ensure!(cog_isomorphic(&q, &cog).map_err(e)?, "quotient of the development is not isomorphic to the original");
    let d2 = development(&q, &qphi).map_err(e)?;
    let (q2, _) = quotient_cog(&d2.action).map_err(e)?;
    ensure!(cog_isomorphic(&q2, &q).map_err(e)?, "second round trip differs");

    // a triangle of groups of S4
    let g = FiniteGroupTable::symmetric(4).unwrap();
    let s: Scwol = CellComplex::from_vertex_triangles(3, &[[0, 1, 2]]).to_scwol().map_err(e)?;
    let refl: Vec<usize> = [[1, 0, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]]
        .iter()
        .map(|p| FiniteGroupTable::permutation_index(p).unwrap())
        .collect();
    let gens = [vec![refl[0], refl[1]], vec![refl[0], refl[2]], vec![refl[1], refl[2]], vec![refl[0]], vec![refl[1]], vec![refl[2]], vec![]];
    let subs: Vec<(FiniteGroupTable, Vec<usize>)> = gens.iter().map(|gv| g.subgroup(&g.generated(gv))).collect();
    let psi = s
        .edges()
        .iter()
        .map(|ed| subs[ed.i].1.iter().map(|k| Element::Index(subs[ed.t].1.iter().position(|x| x == k).unwrap())).collect())
        .collect();
    let tri = ComplexOfGroups::simple(s.clone(), subs.iter().map(|(t, _)| fin(t.clone())).collect(), psi).map_err(e)?;
    let phi = GroupMorphism { target: g, local: subs.into_iter().map(|(_, emb)| emb).collect(), edges: vec![0; s.edge_count()] };
    let d = development(&tri, &phi).map_err(e)?;
    let (q, _) = quotient_cog(&d.action).map_err(e)?;
    ensure!(cog_isomorphic(&q, &tri).map_err(e)?, "triangle of groups round trip differs");
    Ok(())
}

fn haken() -> Result<(), String> {
    for (c, expected) in [(2, true), (1, false)] {
        let sg = seifert_group(&SeifertData { p: 3, q: 3, r: 3, a: 1, b: 1, c }).map_err(|e| e.to_string())?;
        ensure!(sg.haken == expected, "(3,3,3;1,1,{c}) reports {}", sg.haken);
        ensure!(abelianize(&sg.presentation).is_infinite() == expected, "(3,3,3;1,1,{c}): H1 disagrees");
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, Check, u64); 10] = [
        ("trace identity for four triples", trace_identity, 4),
        ("Gamma and Delta relators", relators, 5),
        ("ideal-point certificates for (3,3,3)", ideal_points, 10),
        ("building link counts", link_counts, 10),
        ("type preservation", type_preservation, 30),
        ("fixed-vertex criterion vs ball search", fixed_vertices, 60),
        ("normal-form properties", normal_forms, 30),
        ("Procesi counts and character equality", procesi, 30),
        ("scwol suite", scwol_suite, 30),
        ("Haken criterion", haken, 5),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed > Duration::from_secs(*limit) {
                Err(format!("over the {limit} s limit"))
            } else {
                Ok(())
            }
        });
        match &result {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({:.2} s)", k + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                println!("criterion {:>2} FAIL  {name} ({:.2} s): {msg}", k + 1, elapsed.as_secs_f64());
                failed.push(k + 1);
            }
        }
    }
    let _ = panic::take_hook();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
