//! The action of a represented group on the building: fixed vertices,
//! nontriviality certificates, orbit exploration, and links of vertices over
//! finite residue fields.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::ops::ControlFlow;

use crate::field::{Fp, Modulus, Place, RatFunc, Scalar, Valuation};
use crate::lattice::{act, Lattice, Matrix, VertexClass};

use super::{GroupError, Letter, Representation, Word};

/// A characteristic-polynomial coefficient with a pole: no vertex is fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleCertificate<K: Scalar> {
    /// `k` for the elementary symmetric function `e_k` (`e_1` is the trace).
    pub index: usize,
    pub coefficient: RatFunc<K>,
    pub valuation: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FixedVertex<K: Scalar> {
    Fixed(VertexClass<K>),
    NoFixedVertex(PoleCertificate<K>),
}

/// Decides whether `g ∈ SL_n(K(t))` fixes a vertex of the building at `place`.
///
/// `g` fixes a vertex iff it is conjugate into `SL_n(O)`, iff every
/// coefficient of its characteristic polynomial is integral. In that case
/// `Σ_{k<n} g^k O^n` is a stable lattice.
pub fn fixed_vertex<K: Scalar>(g: &Matrix<K>, place: &Place<K>) -> Result<FixedVertex<K>, GroupError> {
    if !g.is_square() || !g.det().is_one() {
        return Err(GroupError::NotUnimodular("g".into()));
    }
    let n = g.rows();
    let e = g.char_poly_symmetric();
    for (k, c) in e.iter().enumerate().skip(1) {
        if let Valuation::Finite(v) = c.valuation(place) {
            if v < 0 {
                return Ok(FixedVertex::NoFixedVertex(PoleCertificate { index: k, coefficient: c.clone(), valuation: v }));
            }
        }
    }
    let ctx = g.ctx().clone();
    let mut gens = Matrix::identity(n, &ctx);
    let mut power = Matrix::identity(n, &ctx);
    for _ in 1..n {
        power = &power * g;
        gens = gens.hstack(&power);
    }
    let stable = Lattice::spanned_by(place.clone(), &gens)?;
    let v = crate::lattice::canonical_form(&stable)?;
    let image = act(g, &v)?;
    assert_eq!(image, v, "stable lattice construction failed");
    Ok(FixedVertex::Fixed(v))
}

/// Visits reduced words of length `1..=max_len` in shortlex order together
/// with their images, reusing prefix products.
pub fn walk_words<K: Scalar, B>(
    rep: &Representation<K>,
    max_len: usize,
    mut f: impl FnMut(&Word, &Matrix<K>) -> ControlFlow<B>,
) -> Option<B> {
    let m = rep.presentation().generator_count();
    let Some(ctx) = rep.ctx() else {
        return None;
    };
    let id = Matrix::identity(rep.dim(), ctx);
    for len in 1..=max_len {
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        let mut mats: Vec<Matrix<K>> = vec![id.clone()];
        if let ControlFlow::Break(b) = walk_level(rep, m, len, &mut letters, &mut mats, &mut f) {
            return Some(b);
        }
    }
    None
}

fn walk_level<K: Scalar, B>(
    rep: &Representation<K>,
    m: usize,
    len: usize,
    letters: &mut Vec<Letter>,
    mats: &mut Vec<Matrix<K>>,
    f: &mut impl FnMut(&Word, &Matrix<K>) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if letters.len() == len {
        let w = Word::new(letters.iter().copied());
        return f(&w, mats.last().unwrap());
    }
    for a in 0..2 * m {
        let l = Letter::from_alphabet_index(a);
        if letters.last() == Some(&l.inv()) {
            continue;
        }
        let next = mats.last().unwrap() * rep.letter_image(l.gen, l.inverse);
        letters.push(l);
        mats.push(next);
        let r = walk_level(rep, m, len, letters, mats, f);
        letters.pop();
        mats.pop();
        r?;
    }
    ControlFlow::Continue(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Nontriviality<K: Scalar> {
    /// A word whose trace has a pole; it fixes no vertex, so the action has
    /// no global fixed vertex.
    Certificate { word: Word, trace: RatFunc<K>, valuation: i64 },
    /// No pole among the words tried. Proves nothing.
    Inconclusive { words_checked: usize },
}

pub fn nontriviality_certificate<K: Scalar>(
    rep: &Representation<K>,
    place: &Place<K>,
    max_len: usize,
) -> Nontriviality<K> {
    let mut checked = 0;
    let found = walk_words(rep, max_len, |w, m| {
        checked += 1;
        let tr = m.trace();
        match tr.valuation(place) {
            Valuation::Finite(v) if v < 0 => ControlFlow::Break((w.clone(), tr, v)),
            _ => ControlFlow::Continue(()),
        }
    });
    match found {
        Some((word, trace, valuation)) => Nontriviality::Certificate { word, trace, valuation },
        None => Nontriviality::Inconclusive { words_checked: checked },
    }
}

#[derive(Clone, Debug)]
pub struct OrbitNode<K: Scalar> {
    pub class: VertexClass<K>,
    pub vertex_type: u32,
    /// Word length at which the node was first reached.
    pub depth: usize,
}

/// `to = ρ(generator) · from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitEdge {
    pub from: usize,
    pub to: usize,
    pub generator: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitGraph<K: Scalar> {
    pub nodes: Vec<OrbitNode<K>>,
    pub edges: Vec<OrbitEdge>,
}

/// Breadth-first closure of `base` under the generator images and their
/// inverses, up to word length `depth`. Edges record the positive
/// generators only; self-loops are dropped.
pub fn orbit_ball<K: Scalar>(
    rep: &Representation<K>,
    base: &VertexClass<K>,
    depth: usize,
) -> Result<OrbitGraph<K>, GroupError> {
    let m = rep.presentation().generator_count();
    let mut index: HashMap<VertexClass<K>, usize> = HashMap::new();
    let mut nodes = vec![OrbitNode { class: base.clone(), vertex_type: crate::lattice::vertex_type(base), depth: 0 }];
    index.insert(base.clone(), 0);
    let mut edges = Vec::new();
    let mut frontier = vec![0];
    for d in 1..=depth {
        let mut next = Vec::new();
        for &i in &frontier {
            for a in 0..2 * m {
                let l = Letter::from_alphabet_index(a);
                let from = nodes[i].class.clone();
                let to_class = act(rep.letter_image(l.gen, l.inverse), &from)?;
                let j = match index.get(&to_class) {
                    Some(&j) => j,
                    None => {
                        let j = nodes.len();
                        let vt = crate::lattice::vertex_type(&to_class);
                        index.insert(to_class.clone(), j);
                        nodes.push(OrbitNode { class: to_class, vertex_type: vt, depth: d });
                        next.push(j);
                        j
                    }
                };
                if i == j {
                    continue;
                }
                let e = if l.inverse {
                    OrbitEdge { from: j, to: i, generator: l.gen }
                } else {
                    OrbitEdge { from: i, to: j, generator: l.gen }
                };
                edges.push(e);
            }
        }
        frontier = next;
    }
    edges.sort();
    edges.dedup();
    Ok(OrbitGraph { nodes, edges })
}

impl<K: Scalar> OrbitGraph<K> {
    pub fn to_dot(&self, names: &[String], var: &str) -> String {
        let mut s = String::from("digraph orbit {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = n.class.canonical_basis().display(var).to_string().replace('"', "\\\"");
            let _ = writeln!(s, "  v{i} [label=\"{label}\\ntype {}\"];", n.vertex_type);
        }
        for e in &self.edges {
            let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, names[e.generator]);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, names: &[String], var: &str) -> serde_json::Value {
        let nodes: Vec<_> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                serde_json::json!({
                    "id": i,
                    "basis": n.class.canonical_basis().to_text_rows(var),
                    "type": n.vertex_type,
                    "depth": n.depth,
                })
            })
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| serde_json::json!({"from": e.from, "to": e.to, "generator": names[e.generator]}))
            .collect();
        serde_json::json!({ "nodes": nodes, "edges": edges })
    }
}

/// Subspaces of `F_p^n` of dimension `k`, each as the rows of its reduced
/// row echelon form.
pub fn subspaces(p: Modulus, n: usize, k: usize) -> Vec<Vec<Vec<Fp>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    choose(n, k, 0, &mut pivots, &mut |piv| {
        // Free entries: row i, column j > piv[i] with j not a pivot column.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| ((piv[i] + 1)..n).filter(|j| !piv.contains(j)).map(move |j| (i, j)))
            .collect();
        let total = (p.get() as usize).pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![Fp::new(p, 0); n]; k];
            for (i, &c) in piv.iter().enumerate() {
                rows[i][c] = Fp::new(p, 1);
            }
            for &(i, j) in &free {
                rows[i][j] = Fp::new(p, (code % p.get() as usize) as i64);
                code /= p.get() as usize;
            }
            out.push(rows);
        }
    });
    out
}

fn choose(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for i in start..n {
        acc.push(i);
        choose(n, k, i + 1, acc, f);
        acc.pop();
    }
}

/// All neighbours of `v` in the building over a finite residue field: one
/// for each proper nonzero subspace `W` of the residue space, namely the
/// lattice `M` with `ϖL ⊆ M ⊆ L` and `M/ϖL = W`.
pub fn link_of_vertex(v: &VertexClass<Fp>) -> Result<Vec<VertexClass<Fp>>, GroupError> {
    let n = v.dim();
    if !(2..=3).contains(&n) {
        return Err(GroupError::UnsupportedDimension(n));
    }
    let ctx = *v.canonical_basis().ctx();
    let place = v.place().clone();
    let u = place.uniformizer(&ctx);
    let b = v.canonical_basis();
    let mut out = Vec::new();
    for k in 1..n {
        for rows in subspaces(ctx, n, k) {
            let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
            let mut cols: Vec<Vec<RatFunc<Fp>>> =
                rows.iter().map(|r| r.iter().map(|&x| RatFunc::constant(x)).collect()).collect();
            for j in (0..n).filter(|j| !pivots.contains(j)) {
                let mut e = vec![RatFunc::zero(&ctx); n];
                e[j] = u.clone();
                cols.push(e);
            }
            let local = Matrix::from_columns(&cols);
            out.push(VertexClass::from_matrix(place.clone(), &(b * &local))?);
        }
    }
    Ok(out)
}

/// Neighbours of the standard vertex of `SL(dim)` over `F_prime`.
pub fn link_of_standard(dim: usize, prime: u64) -> Result<Vec<VertexClass<Fp>>, GroupError> {
    let m = Modulus::new(prime)?;
    if !(2..=3).contains(&dim) {
        return Err(GroupError::UnsupportedDimension(dim));
    }
    link_of_vertex(&VertexClass::standard(dim, Place::Zero, &m))
}

/// All vertices within graph distance `radius` of `center`, by repeated link
/// enumeration.
pub fn building_ball(center: &VertexClass<Fp>, radius: usize) -> Result<Vec<VertexClass<Fp>>, GroupError> {
    let mut seen: HashSet<VertexClass<Fp>> = HashSet::new();
    let mut all = vec![center.clone()];
    seen.insert(center.clone());
    let mut frontier = vec![center.clone()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for v in &frontier {
            for w in link_of_vertex(v)? {
                if seen.insert(w.clone()) {
                    all.push(w.clone());
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Nf, NumberField};
    use crate::lattice::adjacent;

    #[test]
    fn subspace_counts() {
        let p = Modulus::new(3).unwrap();
        assert_eq!(subspaces(p, 2, 1).len(), 4);
        assert_eq!(subspaces(p, 3, 1).len(), 13);
        assert_eq!(subspaces(p, 3, 2).len(), 13);
    }

    #[test]
    fn link_neighbours_are_adjacent_and_distinct() {
        let link = link_of_standard(3, 2).unwrap();
        assert_eq!(link.len(), 14);
        let v0 = VertexClass::standard(3, Place::Zero, &Modulus::new(2).unwrap());
        for (i, w) in link.iter().enumerate() {
            assert!(adjacent(&v0, w).unwrap());
            assert!(!link[..i].contains(w));
        }
        assert!(matches!(link_of_standard(4, 2), Err(GroupError::UnsupportedDimension(4))));
        assert!(link_of_standard(2, 4).is_err());
    }

    #[test]
    fn fixed_vertex_of_diagonal() {
        let k = NumberField::rationals();
        let g = Matrix::<Nf>::uniformizer_diag(&Place::Zero, &[1, -1], &k);
        match fixed_vertex(&g, &Place::Zero).unwrap() {
            FixedVertex::NoFixedVertex(c) => {
                assert_eq!(c.index, 1);
                assert_eq!(c.valuation, -1);
                assert_eq!(c.coefficient.to_string(), "(t^2 + 1)/t");
            }
            other => panic!("unexpected {other:?}"),
        }
        let id = Matrix::<Nf>::identity(2, &k);
        assert_eq!(fixed_vertex(&id, &Place::Zero).unwrap(), FixedVertex::Fixed(VertexClass::standard(2, Place::Zero, &k)));
        let two = Matrix::<Nf>::uniformizer_diag(&Place::Zero, &[1, 0], &k);
        assert!(matches!(fixed_vertex(&two, &Place::Zero), Err(GroupError::NotUnimodular(_))));
    }
}
