//! Small categories without loops, their axioms, the construction from a
//! combinatorial 2-complex, and edge-path fundamental groups.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tribranch_core::group::{GroupPresentation, Letter, Word};

use crate::ScwolError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub t: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    pub a: usize,
    pub b: usize,
    pub ab: usize,
}

/// Vertices `0..n` (with display labels), edges `a` with endpoints
/// `i(a), t(a)`, and the partial composition `(a, b) ↦ ab`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ScwolData", into = "ScwolData")]
pub struct Scwol {
    labels: Vec<String>,
    edges: Vec<Edge>,
    comp: BTreeMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ScwolData {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    #[serde(default)]
    compositions: Vec<Composition>,
}

impl TryFrom<ScwolData> for Scwol {
    type Error = ScwolError;

    fn try_from(d: ScwolData) -> Result<Self, ScwolError> {
        Scwol::new(d.vertices, d.edges, d.compositions)
    }
}

impl From<Scwol> for ScwolData {
    fn from(s: Scwol) -> Self {
        let compositions = s.compositions().collect();
        ScwolData { vertices: s.labels, edges: s.edges, compositions }
    }
}

impl Scwol {
    /// Checks index ranges and that no pair is composed twice; the scwol
    /// axioms themselves are checked by [`Scwol::validate`].
    pub fn new(labels: Vec<String>, edges: Vec<Edge>, compositions: Vec<Composition>) -> Result<Self, ScwolError> {
        let n = labels.len();
        for (k, e) in edges.iter().enumerate() {
            if e.i >= n || e.t >= n {
                return Err(ScwolError::Malformed(format!("edge {k} has an endpoint outside 0..{n}")));
            }
        }
        let mut comp = BTreeMap::new();
        for c in compositions {
            if [c.a, c.b, c.ab].iter().any(|&x| x >= edges.len()) {
                return Err(ScwolError::Malformed(format!("composition ({}, {}) refers to a missing edge", c.a, c.b)));
            }
            if comp.insert((c.a, c.b), c.ab).is_some() {
                return Err(ScwolError::Malformed(format!("pair ({}, {}) composed twice", c.a, c.b)));
            }
        }
        Ok(Scwol { labels, edges, comp })
    }

    pub fn unlabeled(n: usize, edges: Vec<Edge>, compositions: Vec<Composition>) -> Result<Self, ScwolError> {
        Self::new((0..n).map(|v| v.to_string()).collect(), edges, compositions)
    }

    /// The scwol of a graph: one edge per pair, no compositions.
    pub fn graph(n: usize, pairs: &[(usize, usize)]) -> Result<Self, ScwolError> {
        Self::unlabeled(n, pairs.iter().map(|&(i, t)| Edge { i, t }).collect(), Vec::new())
    }

    pub fn point() -> Self {
        Scwol { labels: vec!["0".into()], edges: Vec::new(), comp: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, a: usize) -> Edge {
        self.edges[a]
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.comp.get(&(a, b)).copied()
    }

    pub fn compositions(&self) -> impl Iterator<Item = Composition> + '_ {
        self.comp.iter().map(|(&(a, b), &ab)| Composition { a, b, ab })
    }

    pub fn composition_count(&self) -> usize {
        self.comp.len()
    }

    /// Pairs `(a, b)` with `i(a) = t(b)`.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (b, eb) in self.edges.iter().enumerate() {
            for (a, ea) in self.edges.iter().enumerate() {
                if ea.i == eb.t {
                    out.push((a, b));
                }
            }
        }
        out.sort();
        out
    }

    /// Every violated axiom with a witness; empty means valid.
    pub fn validate(&self) -> Vec<ScwolViolation> {
        let mut out = Vec::new();
        for (a, e) in self.edges.iter().enumerate() {
            if e.i == e.t {
                out.push(ScwolViolation::Loop { edge: a });
            }
        }
        for (a, b) in self.composable_pairs() {
            if !self.comp.contains_key(&(a, b)) {
                out.push(ScwolViolation::MissingComposition { a, b });
            }
        }
        for (&(a, b), &ab) in &self.comp {
            if self.edges[a].i != self.edges[b].t {
                out.push(ScwolViolation::NotComposable { a, b });
                continue;
            }
            if self.edges[ab].i != self.edges[b].i || self.edges[ab].t != self.edges[a].t {
                out.push(ScwolViolation::EndpointMismatch { a, b, ab });
            }
        }
        for (&(a, b), &ab) in &self.comp {
            for (&(b2, c), &bc) in self.comp.range((b, 0)..=(b, usize::MAX)) {
                debug_assert_eq!(b2, b);
                let (Some(left), Some(right)) = (self.compose(ab, c), self.compose(a, bc)) else {
                    continue;
                };
                if left != right {
                    out.push(ScwolViolation::NotAssociative { a, b, c });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Connected components of the underlying undirected graph, as a
    /// component index per vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(_, w) in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Incident `(edge, other endpoint)` pairs per vertex, in edge order.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (a, e) in self.edges.iter().enumerate() {
            adj[e.i].push((a, e.t));
            adj[e.t].push((a, e.i));
        }
        adj
    }

    /// Edges of the breadth-first spanning tree from `base`, scanning
    /// incident edges in index order.
    pub fn spanning_tree(&self, base: usize) -> Result<Vec<usize>, ScwolError> {
        if base >= self.vertex_count() {
            return Err(ScwolError::VertexOutOfRange(base));
        }
        if !self.is_connected() {
            return Err(ScwolError::Disconnected);
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count()];
        seen[base] = true;
        let mut tree = Vec::new();
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for &(a, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree.push(a);
                    queue.push_back(w);
                }
            }
        }
        tree.sort();
        Ok(tree)
    }

    /// `π₁` at `base`: a generator `a⁺` per edge, `a⁺b⁺ = (ab)⁺` per
    /// composition, and `e⁺ = 1` on the spanning tree.
    pub fn pi1_presentation(&self, base: usize) -> Result<GroupPresentation, ScwolError> {
        let tree = self.spanning_tree(base)?;
        let names = (0..self.edge_count()).map(|a| format!("a{a}")).collect();
        let mut relators: Vec<Word> = self
            .compositions()
            .map(|c| Word::new([Letter::pos(c.a), Letter::pos(c.b), Letter::neg(c.ab)]))
            .collect();
        relators.extend(tree.into_iter().map(Word::gen));
        Ok(GroupPresentation::new(names, relators)?)
    }

    /// The underlying graph when `self` subdivides one: vertices that are the
    /// initial vertex of exactly two edges and the terminal vertex of none
    /// become graph edges; all other edges are kept as they are.
    pub fn graph_view(&self) -> GraphView {
        let n = self.vertex_count();
        let mut out_edges = vec![Vec::new(); n];
        let mut indeg = vec![0; n];
        for (a, e) in self.edges.iter().enumerate() {
            out_edges[e.i].push(a);
            indeg[e.t] += 1;
        }
        let midpoint: Vec<bool> = (0..n)
            .map(|v| {
                indeg[v] == 0 && out_edges[v].len() == 2 && {
                    let (x, y) = (self.edges[out_edges[v][0]].t, self.edges[out_edges[v][1]].t);
                    x != y
                }
            })
            .collect();
        // A midpoint of a midpoint is impossible: midpoints have no incoming edges.
        let vertices: Vec<usize> = (0..n).filter(|&v| !midpoint[v]).collect();
        let mut pos = vec![usize::MAX; n];
        for (k, &v) in vertices.iter().enumerate() {
            pos[v] = k;
        }
        let mut edges = Vec::new();
        for v in 0..n {
            if midpoint[v] {
                let (x, y) = (self.edges[out_edges[v][0]].t, self.edges[out_edges[v][1]].t);
                edges.push((pos[x], pos[y]));
            }
        }
        for e in &self.edges {
            if !midpoint[e.i] {
                edges.push((pos[e.i], pos[e.t]));
            }
        }
        GraphView { vertices, edges }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph scwol {\n");
        for (v, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  v{v} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for (a, e) in self.edges.iter().enumerate() {
            let _ = writeln!(s, "  v{} -> v{} [label=\"{a}\"];", e.i, e.t);
        }
        s.push_str("}\n");
        s
    }
}

/// A simple undirected multigraph; vertex `k` is scwol vertex `vertices[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphView {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphView {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &(x, y) in &self.edges {
            d[x] += 1;
            d[y] += 1;
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &(x, y) in &self.edges {
                for (p, q) in [(x, y), (y, x)] {
                    if p == v && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum ScwolViolation {
    /// A composable pair without a composition.
    #[serde(rename = "Scw1")]
    MissingComposition { a: usize, b: usize },
    /// A composition defined on a pair with `i(a) != t(b)`.
    #[serde(rename = "Scw1-domain")]
    NotComposable { a: usize, b: usize },
    #[serde(rename = "Scw2")]
    EndpointMismatch { a: usize, b: usize, ab: usize },
    #[serde(rename = "Scw3")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[serde(rename = "Scw4")]
    Loop { edge: usize },
}

impl fmt::Display for ScwolViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScwolViolation::MissingComposition { a, b } => write!(f, "(Scw1) composable pair ({a}, {b}) has no composition"),
            ScwolViolation::NotComposable { a, b } => write!(f, "(Scw1) composition given for non-composable pair ({a}, {b})"),
            ScwolViolation::EndpointMismatch { a, b, ab } => {
                write!(f, "(Scw2) composition {ab} of ({a}, {b}) has the wrong endpoints")
            }
            ScwolViolation::NotAssociative { a, b, c } => write!(f, "(Scw3) ({a}{b}){c} != {a}({b}{c})"),
            ScwolViolation::Loop { edge } => write!(f, "(Scw4) edge {edge} has i = t"),
        }
    }
}

/// A combinatorial 2-complex: edges join two distinct vertices and each
/// triangle is bounded by three edges forming a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub triangles: Vec<[usize; 3]>,
}

impl CellComplex {
    /// The complex of a simplicial 2-complex given by vertex triples; its
    /// edges are the sorted distinct vertex pairs.
    pub fn from_vertex_triangles(vertices: usize, triangles: &[[usize; 3]]) -> Self {
        let mut edges: Vec<[usize; 2]> = triangles
            .iter()
            .flat_map(|&[x, y, z]| [[x, y], [y, z], [x, z]])
            .map(|[p, q]| [p.min(q), p.max(q)])
            .collect();
        edges.sort();
        edges.dedup();
        let idx = |p: usize, q: usize| edges.binary_search(&[p.min(q), p.max(q)]).unwrap();
        let tris = triangles.iter().map(|&[x, y, z]| [idx(x, y), idx(y, z), idx(x, z)]).collect();
        CellComplex { vertices, edges, triangles: tris }
    }

    /// Distinct corners of triangle `f`.
    pub fn triangle_vertices(&self, f: usize) -> [usize; 3] {
        let mut vs: Vec<usize> = self.triangles[f].iter().flat_map(|&e| self.edges[e]).collect();
        vs.sort();
        vs.dedup();
        [vs[0], vs[1], vs[2]]
    }

    fn check(&self) -> Result<(), ScwolError> {
        let bad = |msg: String| Err(ScwolError::InconsistentIncidence(msg));
        for (k, &[x, y]) in self.edges.iter().enumerate() {
            if x >= self.vertices || y >= self.vertices {
                return bad(format!("edge {k} has a vertex outside 0..{}", self.vertices));
            }
            if x == y {
                return bad(format!("edge {k} joins vertex {x} to itself"));
            }
        }
        for (f, tri) in self.triangles.iter().enumerate() {
            if tri.iter().any(|&e| e >= self.edges.len()) {
                return bad(format!("triangle {f} has an edge outside 0..{}", self.edges.len()));
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return bad(format!("triangle {f} repeats an edge"));
            }
            let mut count = BTreeMap::new();
            for &e in tri {
                for v in self.edges[e] {
                    *count.entry(v).or_insert(0) += 1;
                }
            }
            if count.len() != 3 || count.values().any(|&c| c != 2) {
                return bad(format!("edges of triangle {f} do not form a cycle"));
            }
        }
        Ok(())
    }

    /// The scwol of the barycentric subdivision: a vertex per cell (0-cells,
    /// then 1-cells, then 2-cells), an edge from each cell to each of its
    /// faces, and `ab = c` for each triangle–edge–vertex flag.
    pub fn to_scwol(&self) -> Result<Scwol, ScwolError> {
        self.check()?;
        let nv = self.vertices;
        let ne = self.edges.len();
        let mut labels: Vec<String> = (0..nv).map(|v| format!("v{v}")).collect();
        labels.extend((0..ne).map(|e| format!("e{e}")));
        labels.extend((0..self.triangles.len()).map(|f| format!("f{f}")));
        let edge_vertex = |e: usize| nv + e;
        let face_vertex = |f: usize| nv + ne + f;

        let mut edges = Vec::new();
        let mut ev = BTreeMap::new();
        for (e, &[x, y]) in self.edges.iter().enumerate() {
            for v in [x, y] {
                ev.insert((e, v), edges.len());
                edges.push(Edge { i: edge_vertex(e), t: v });
            }
        }
        let mut fe = BTreeMap::new();
        let mut fv = BTreeMap::new();
        for (f, tri) in self.triangles.iter().enumerate() {
            for &e in tri {
                fe.insert((f, e), edges.len());
                edges.push(Edge { i: face_vertex(f), t: edge_vertex(e) });
            }
            for v in self.triangle_vertices(f) {
                fv.insert((f, v), edges.len());
                edges.push(Edge { i: face_vertex(f), t: v });
            }
        }
        let mut comps = Vec::new();
        for (f, tri) in self.triangles.iter().enumerate() {
            for &e in tri {
                for v in self.edges[e] {
                    comps.push(Composition { a: ev[&(e, v)], b: fe[&(f, e)], ab: fv[&(f, v)] });
                }
            }
        }
        Scwol::new(labels, edges, comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_of_small_examples() {
        assert!(Scwol::point().is_valid());
        let looped = Scwol::graph(1, &[(0, 0)]).unwrap();
        // a loop is also composable with itself
        assert_eq!(
            looped.validate(),
            vec![ScwolViolation::Loop { edge: 0 }, ScwolViolation::MissingComposition { a: 0, b: 0 }]
        );
        // b: 0 → 1, a: 1 → 2, c = ab: 0 → 2
        let edges = vec![Edge { i: 0, t: 1 }, Edge { i: 1, t: 2 }, Edge { i: 0, t: 2 }];
        let tri = Scwol::unlabeled(3, edges.clone(), vec![Composition { a: 1, b: 0, ab: 2 }]).unwrap();
        assert!(tri.is_valid());
        let missing = Scwol::unlabeled(3, edges.clone(), vec![]).unwrap();
        assert_eq!(missing.validate(), vec![ScwolViolation::MissingComposition { a: 1, b: 0 }]);
        let wrong = Scwol::unlabeled(3, edges, vec![Composition { a: 1, b: 0, ab: 1 }]).unwrap();
        assert_eq!(wrong.validate(), vec![ScwolViolation::EndpointMismatch { a: 1, b: 0, ab: 1 }]);
    }

    #[test]
    fn single_edge_complex() {
        let c = CellComplex { vertices: 2, edges: vec![[0, 1]], triangles: vec![] };
        let s = c.to_scwol().unwrap();
        assert_eq!((s.vertex_count(), s.edge_count(), s.composition_count()), (3, 2, 0));
        assert!(s.is_valid());
    }

    #[test]
    fn inconsistent_incidence() {
        let c = CellComplex { vertices: 4, edges: vec![[0, 1], [1, 2], [2, 3]], triangles: vec![[0, 1, 2]] };
        assert!(matches!(c.to_scwol(), Err(ScwolError::InconsistentIncidence(_))));
        let c = CellComplex { vertices: 2, edges: vec![[1, 1]], triangles: vec![] };
        assert!(matches!(c.to_scwol(), Err(ScwolError::InconsistentIncidence(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = CellComplex::from_vertex_triangles(3, &[[0, 1, 2]]).to_scwol().unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: Scwol = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
