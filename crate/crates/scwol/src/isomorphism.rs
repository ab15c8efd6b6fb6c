//! Isomorphism of complexes of groups with finite local groups, by
//! backtracking over scwol isomorphisms, local isomorphisms and twisting
//! elements.

use crate::{ComplexOfGroups, FiniteGroupTable, ScwolError};

/// Largest scwol (in vertices) accepted by [`cog_isomorphic`].
pub const ISOMORPHISM_VERTEX_CAP: usize = 20;

/// Whether an isomorphism `φ : G(Y) → G(Y')` over a scwol isomorphism
/// exists: local isomorphisms `φ_σ` and elements `φ(a)` satisfying
/// `φ(a)ψ'_{f(a)}(φ_{i(a)}(x))φ(a)⁻¹ = φ_{t(a)}(ψ_a(x))` and
/// `φ_{t(a)}(g_{a,b})φ(ab) = φ(a)ψ'_{f(a)}(φ(b))g'_{f(a),f(b)}`.
pub fn cog_isomorphic(a: &ComplexOfGroups, b: &ComplexOfGroups) -> Result<bool, ScwolError> {
    for c in [a, b] {
        let n = c.scwol().vertex_count();
        if n > ISOMORPHISM_VERTEX_CAP {
            return Err(ScwolError::SizeOverflow { vertices: n, cap: ISOMORPHISM_VERTEX_CAP });
        }
    }
    let ga = a.finite_groups()?;
    let gb = b.finite_groups()?;
    let (sa, sb) = (a.scwol(), b.scwol());
    if sa.vertex_count() != sb.vertex_count()
        || sa.edge_count() != sb.edge_count()
        || sa.composition_count() != sb.composition_count()
    {
        return Ok(false);
    }
    let search = Search::new(a, b, ga, gb);
    let mut vmap = vec![usize::MAX; sa.vertex_count()];
    let mut used = vec![false; sa.vertex_count()];
    Ok(search.vertices(0, &mut vmap, &mut used))
}

struct Side<'a> {
    cog: &'a ComplexOfGroups,
    groups: Vec<&'a FiniteGroupTable>,
    psi: Vec<Vec<usize>>,
    signature: Vec<(usize, usize, usize)>,
}

impl<'a> Side<'a> {
    fn new(cog: &'a ComplexOfGroups, groups: Vec<&'a FiniteGroupTable>) -> Self {
        let s = cog.scwol();
        let psi = (0..s.edge_count()).map(|e| cog.psi_map(e).unwrap()).collect();
        let mut indeg = vec![0; s.vertex_count()];
        let mut outdeg = vec![0; s.vertex_count()];
        for e in s.edges() {
            outdeg[e.i] += 1;
            indeg[e.t] += 1;
        }
        let signature = (0..s.vertex_count()).map(|v| (groups[v].order(), indeg[v], outdeg[v])).collect();
        Side { cog, groups, psi, signature }
    }

    fn twist(&self, a: usize, b: usize) -> usize {
        self.cog.twisting(a, b).index().unwrap()
    }
}

struct Search<'a> {
    a: Side<'a>,
    b: Side<'a>,
}

impl<'a> Search<'a> {
    fn new(a: &'a ComplexOfGroups, b: &'a ComplexOfGroups, ga: Vec<&'a FiniteGroupTable>, gb: Vec<&'a FiniteGroupTable>) -> Self {
        Search { a: Side::new(a, ga), b: Side::new(b, gb) }
    }

    /// Vertex bijections preserving local group order and degrees.
    fn vertices(&self, v: usize, vmap: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = vmap.len();
        if v == n {
            let mut emap = vec![usize::MAX; self.a.cog.scwol().edge_count()];
            let mut eused = vec![false; emap.len()];
            return self.edges(0, vmap, &mut emap, &mut eused);
        }
        for w in 0..n {
            if used[w] || self.a.signature[v] != self.b.signature[w] {
                continue;
            }
            vmap[v] = w;
            used[w] = true;
            if self.vertices(v + 1, vmap, used) {
                return true;
            }
            used[w] = false;
        }
        vmap[v] = usize::MAX;
        false
    }

    /// Edge bijections compatible with `vmap` and with composition.
    fn edges(&self, k: usize, vmap: &[usize], emap: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let (sa, sb) = (self.a.cog.scwol(), self.b.cog.scwol());
        if k == emap.len() {
            let comp_ok = sa.compositions().all(|c| sb.compose(emap[c.a], emap[c.b]) == Some(emap[c.ab]));
            return comp_ok && self.locals(vmap, emap);
        }
        let e = sa.edge(k);
        for w in 0..emap.len() {
            let f = sb.edge(w);
            if used[w] || f.i != vmap[e.i] || f.t != vmap[e.t] {
                continue;
            }
            emap[k] = w;
            used[w] = true;
            if self.edges(k + 1, vmap, emap, used) {
                return true;
            }
            used[w] = false;
        }
        emap[k] = usize::MAX;
        false
    }

    /// Local isomorphisms and twisting elements over a fixed scwol
    /// isomorphism. Vertices are assigned in order; an edge is assigned as
    /// soon as both endpoints are, and composition constraints are checked
    /// once all three edges are.
    fn locals(&self, vmap: &[usize], emap: &[usize]) -> bool {
        let sa = self.a.cog.scwol();
        let n = sa.vertex_count();
        let mut steps = Vec::new();
        let mut edge_done = vec![false; sa.edge_count()];
        for v in 0..n {
            steps.push(Step::Vertex(v));
            for (a, e) in sa.edges().iter().enumerate() {
                if !edge_done[a] && e.i.max(e.t) == v {
                    edge_done[a] = true;
                    steps.push(Step::Edge(a));
                }
            }
        }
        let position: Vec<usize> = {
            let mut p = vec![0; sa.edge_count()];
            for (i, s) in steps.iter().enumerate() {
                if let Step::Edge(a) = s {
                    p[*a] = i;
                }
            }
            p
        };
        // composition constraints keyed by the step completing them
        let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); steps.len()];
        for c in sa.compositions() {
            let last = position[c.a].max(position[c.b]).max(position[c.ab]);
            checks[last].push((c.a, c.b, c.ab));
        }
        let isos: Vec<Vec<Vec<usize>>> =
            (0..n).map(|v| self.a.groups[v].isomorphisms(self.b.groups[vmap[v]])).collect();
        let mut state = State { local: vec![None; n], twist: vec![usize::MAX; sa.edge_count()] };
        self.assign(0, &steps, &checks, &isos, vmap, emap, &mut state)
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        k: usize,
        steps: &[Step],
        checks: &[Vec<(usize, usize, usize)>],
        isos: &[Vec<Vec<usize>>],
        vmap: &[usize],
        emap: &[usize],
        state: &mut State,
    ) -> bool {
        let Some(&step) = steps.get(k) else {
            return true;
        };
        match step {
            Step::Vertex(v) => {
                for f in &isos[v] {
                    state.local[v] = Some(f.clone());
                    if self.assign(k + 1, steps, checks, isos, vmap, emap, state) {
                        return true;
                    }
                }
                state.local[v] = None;
                false
            }
            Step::Edge(a) => {
                let sa = self.a.cog.scwol();
                let e = sa.edge(a);
                let gt = self.b.groups[vmap[e.t]];
                let fi = state.local[e.i].clone().unwrap();
                let ft = state.local[e.t].clone().unwrap();
                let psi_b = &self.b.psi[emap[a]];
                let psi_a = &self.a.psi[a];
                for h in gt.elements() {
                    let commutes =
                        self.a.groups[e.i].elements().all(|x| gt.conj(h, psi_b[fi[x]]) == ft[psi_a[x]]);
                    if !commutes {
                        continue;
                    }
                    state.twist[a] = h;
                    if checks[k].iter().all(|&(p, q, pq)| self.compatible(p, q, pq, vmap, emap, state))
                        && self.assign(k + 1, steps, checks, isos, vmap, emap, state)
                    {
                        return true;
                    }
                }
                state.twist[a] = usize::MAX;
                false
            }
        }
    }

    fn compatible(&self, a: usize, b: usize, ab: usize, vmap: &[usize], emap: &[usize], state: &State) -> bool {
        let t = self.a.cog.scwol().edge(a).t;
        let g = self.b.groups[vmap[t]];
        let ft = state.local[t].as_ref().unwrap();
        let lhs = g.mul(ft[self.a.twist(a, b)], state.twist[ab]);
        let psi = &self.b.psi[emap[a]];
        let rhs = g.mul(g.mul(state.twist[a], psi[state.twist[b]]), self.b.twist(emap[a], emap[b]));
        lhs == rhs
    }
}

#[derive(Clone, Copy)]
enum Step {
    Vertex(usize),
    Edge(usize),
}

struct State {
    local: Vec<Option<Vec<usize>>>,
    twist: Vec<usize>,
}
