//! Morphisms to finite groups, developability, developments, group actions
//! on scwols and their quotient complexes of groups.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::{ComplexOfGroups, Composition, Edge, Element, FiniteGroupTable, LocalGroup, Scwol, ScwolError};

/// A morphism `φ : G(Y) → G` to a finite group: `φ_σ` as element maps and
/// the twisting elements `φ(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMorphism {
    pub target: FiniteGroupTable,
    pub local: Vec<Vec<usize>>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum MorphismViolation {
    LocalNotHomomorphism { vertex: usize, x: usize, y: usize },
    NotInjective { vertex: usize, x: usize, y: usize },
    /// `φ(a)φ_{i(a)}(x)φ(a)⁻¹ != φ_{t(a)}(ψ_a(x))`.
    TwistedCommutativity { edge: usize, x: usize },
    /// `φ_{t(a)}(g_{a,b})φ(ab) != φ(a)φ(b)`.
    TwistingCompatibility { a: usize, b: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DevelopabilityReport {
    pub violations: Vec<MorphismViolation>,
}

impl DevelopabilityReport {
    pub fn developable(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_shape(cog: &ComplexOfGroups, phi: &GroupMorphism) -> Result<Vec<FiniteGroupTable>, ScwolError> {
    let groups: Vec<FiniteGroupTable> = cog.finite_groups()?.into_iter().cloned().collect();
    let n = phi.target.order();
    let bad = |m: String| Err(ScwolError::Malformed(m));
    if phi.local.len() != groups.len() {
        return bad(format!("{} local maps for {} vertices", phi.local.len(), groups.len()));
    }
    for (v, (f, g)) in phi.local.iter().zip(&groups).enumerate() {
        if f.len() != g.order() || f.iter().any(|&x| x >= n) {
            return bad(format!("local map {v} is not a map from a group of order {} into 0..{n}", g.order()));
        }
    }
    if phi.edges.len() != cog.scwol().edge_count() || phi.edges.iter().any(|&x| x >= n) {
        return bad("edge twisting elements do not match the edges".into());
    }
    Ok(groups)
}

/// Checks that `φ` is a morphism injective on every local group, the
/// criterion for `G(Y)` to be developable via `φ`.
pub fn check_developability(cog: &ComplexOfGroups, phi: &GroupMorphism) -> Result<DevelopabilityReport, ScwolError> {
    let groups = check_shape(cog, phi)?;
    let g = &phi.target;
    let mut out = Vec::new();
    for (v, (f, gv)) in phi.local.iter().zip(&groups).enumerate() {
        if let Some((x, y)) = gv.hom_failure(f, g) {
            out.push(MorphismViolation::LocalNotHomomorphism { vertex: v, x, y });
        }
        if let Some((x, y)) = gv.injectivity_failure(f) {
            out.push(MorphismViolation::NotInjective { vertex: v, x, y });
        }
    }
    let s = cog.scwol();
    for a in 0..s.edge_count() {
        let e = s.edge(a);
        let psi = cog.psi_map(a).unwrap();
        let (fi, ft) = (&phi.local[e.i], &phi.local[e.t]);
        if let Some(x) = groups[e.i].elements().find(|&x| g.conj(phi.edges[a], fi[x]) != ft[psi[x]]) {
            out.push(MorphismViolation::TwistedCommutativity { edge: a, x });
        }
    }
    for c in s.compositions() {
        let t = s.edge(c.a).t;
        let tw = cog.twisting(c.a, c.b).index().unwrap();
        let lhs = g.mul(phi.local[t][tw], phi.edges[c.ab]);
        let rhs = g.mul(phi.edges[c.a], phi.edges[c.b]);
        if lhs != rhs {
            out.push(MorphismViolation::TwistingCompatibility { a: c.a, b: c.b });
        }
    }
    Ok(DevelopabilityReport { violations: out })
}

/// An action of a finite group on a scwol: `vertex_action[g][v] = g.v` and
/// `edge_action[g][a] = g.a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScwolAction {
    pub scwol: Scwol,
    pub group: FiniteGroupTable,
    pub vertex_action: Vec<Vec<usize>>,
    pub edge_action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ActionViolation {
    Shape { message: String },
    NotAutomorphism { element: usize },
    NotHomomorphism { g: usize, h: usize },
    /// `g.i(a) = t(a)`.
    ConditionI { element: usize, edge: usize },
    /// `g.i(a) = i(a)` but `g.a != a`.
    ConditionII { element: usize, edge: usize },
}

impl ScwolAction {
    pub fn validate(&self) -> Vec<ActionViolation> {
        let (nv, ne, n) = (self.scwol.vertex_count(), self.scwol.edge_count(), self.group.order());
        let shape_ok = self.vertex_action.len() == n
            && self.edge_action.len() == n
            && self.vertex_action.iter().all(|m| m.len() == nv && m.iter().all(|&v| v < nv))
            && self.edge_action.iter().all(|m| m.len() == ne && m.iter().all(|&a| a < ne));
        if !shape_ok {
            return vec![ActionViolation::Shape {
                message: format!("expected {n} maps on {nv} vertices and {n} maps on {ne} edges"),
            }];
        }
        let mut out = Vec::new();
        let s = &self.scwol;
        for g in self.group.elements() {
            let (vm, em) = (&self.vertex_action[g], &self.edge_action[g]);
            let bijective = is_permutation(vm) && is_permutation(em);
            let incidence = s.edges().iter().enumerate().all(|(a, e)| s.edge(em[a]) == Edge { i: vm[e.i], t: vm[e.t] });
            let comps = s.compositions().all(|c| s.compose(em[c.a], em[c.b]) == Some(em[c.ab]));
            if !(bijective && incidence && comps) {
                out.push(ActionViolation::NotAutomorphism { element: g });
            }
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                let ok_v = (0..nv).all(|v| self.vertex_action[gh][v] == self.vertex_action[g][self.vertex_action[h][v]]);
                let ok_e = (0..ne).all(|a| self.edge_action[gh][a] == self.edge_action[g][self.edge_action[h][a]]);
                if !(ok_v && ok_e) {
                    out.push(ActionViolation::NotHomomorphism { g, h });
                }
            }
        }
        for g in self.group.elements() {
            for (a, e) in s.edges().iter().enumerate() {
                let gi = self.vertex_action[g][e.i];
                if gi == e.t {
                    out.push(ActionViolation::ConditionI { element: g, edge: a });
                }
                if gi == e.i && self.edge_action[g][a] != a {
                    out.push(ActionViolation::ConditionII { element: g, edge: a });
                }
            }
        }
        out
    }
}

fn is_permutation(m: &[usize]) -> bool {
    let mut seen = vec![false; m.len()];
    m.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
}

/// `D(Y, φ)` with its `G`-action. Vertex `k` lies over `over[k]` and is the
/// coset with least element `coset[k]`; likewise for edges.
#[derive(Clone, Debug)]
pub struct Development {
    pub action: ScwolAction,
    pub vertex_over: Vec<usize>,
    pub vertex_coset: Vec<usize>,
    pub edge_over: Vec<usize>,
    pub edge_coset: Vec<usize>,
}

/// Builds the development of a developable complex of groups: vertices
/// `(gφ_σ(G_σ), σ)`, edges `(gφ_{i(a)}(G_{i(a)}), a)` from
/// `(gφ_{i(a)}(G_{i(a)}), i(a))` to `(gφ(a)⁻¹φ_{t(a)}(G_{t(a)}), t(a))`, and
/// the composition `(gφ(b)⁻¹·, a)(g·, b) = (g·, ab)`.
pub fn development(cog: &ComplexOfGroups, phi: &GroupMorphism) -> Result<Development, ScwolError> {
    let report = check_developability(cog, phi)?;
    if !report.developable() {
        return Err(ScwolError::NotDevelopable(report));
    }
    let g = &phi.target;
    let y = cog.scwol();
    // least coset element per group element, per vertex of Y
    let reps: Vec<Vec<usize>> = phi.local.iter().map(|f| g.left_coset_reps(f)).collect();
    let mut labels = Vec::new();
    let mut vertex_over = Vec::new();
    let mut vertex_coset = Vec::new();
    let mut vid: HashMap<(usize, usize), usize> = HashMap::new();
    for (sigma, r) in reps.iter().enumerate() {
        let mut cosets: Vec<usize> = r.clone();
        cosets.sort();
        cosets.dedup();
        for c in cosets {
            vid.insert((sigma, c), labels.len());
            labels.push(format!("{}@{c}", y.labels()[sigma]));
            vertex_over.push(sigma);
            vertex_coset.push(c);
        }
    }
    let mut edges = Vec::new();
    let mut edge_over = Vec::new();
    let mut edge_coset = Vec::new();
    let mut eid: HashMap<(usize, usize), usize> = HashMap::new();
    for a in 0..y.edge_count() {
        let e = y.edge(a);
        let mut cosets: Vec<usize> = reps[e.i].clone();
        cosets.sort();
        cosets.dedup();
        let back = g.inv(phi.edges[a]);
        for c in cosets {
            eid.insert((a, c), edges.len());
            let t_rep = reps[e.t][g.mul(c, back)];
            edges.push(Edge { i: vid[&(e.i, c)], t: vid[&(e.t, t_rep)] });
            edge_over.push(a);
            edge_coset.push(c);
        }
    }
    let mut comps = Vec::new();
    for (k, (&b, &c)) in edge_over.iter().zip(&edge_coset).enumerate() {
        let back_b = g.inv(phi.edges[b]);
        for cy in y.compositions().filter(|cy| cy.b == b) {
            let ia = y.edge(cy.a).i;
            let a_coset = reps[ia][g.mul(c, back_b)];
            comps.push(Composition { a: eid[&(cy.a, a_coset)], b: k, ab: eid[&(cy.ab, c)] });
        }
    }
    let scwol = Scwol::new(labels, edges, comps)?;
    let vertex_action = g
        .elements()
        .map(|x| (0..scwol.vertex_count()).map(|k| vid[&(vertex_over[k], reps[vertex_over[k]][g.mul(x, vertex_coset[k])])]).collect())
        .collect();
    let edge_action = g
        .elements()
        .map(|x| {
            (0..scwol.edge_count())
                .map(|k| {
                    let ia = y.edge(edge_over[k]).i;
                    eid[&(edge_over[k], reps[ia][g.mul(x, edge_coset[k])])]
                })
                .collect()
        })
        .collect();
    let action = ScwolAction { scwol, group: g.clone(), vertex_action, edge_action };
    let violations = action.scwol.validate();
    if let Some(v) = violations.first() {
        return Err(ScwolError::Internal(format!("development is not a scwol: {v}")));
    }
    if let Some(v) = action.validate().first() {
        return Err(ScwolError::Internal(format!("development action invalid: {v:?}")));
    }
    Ok(Development { action, vertex_over, vertex_coset, edge_over, edge_coset })
}

/// The complex of groups of an action on the quotient scwol, with its
/// morphism `φ_σ(g) = g`, `φ(a) = h_a`. Vertex lifts are the least vertex of
/// each orbit; `h_a` is the least element with `h_a.t(ã)` the chosen lift.
pub fn quotient_cog(act: &ScwolAction) -> Result<(ComplexOfGroups, GroupMorphism), ScwolError> {
    if let Some(v) = act.validate().into_iter().next() {
        return Err(ScwolError::InvalidAction(format!("{v:?}")));
    }
    let x = &act.scwol;
    let g = &act.group;
    let orbit_of = |m: &Vec<Vec<usize>>, n: usize| -> (Vec<usize>, Vec<usize>) {
        // orbit index per element, least representative per orbit
        let mut orbit = vec![usize::MAX; n];
        let mut lifts = Vec::new();
        for k in 0..n {
            if orbit[k] == usize::MAX {
                for h in g.elements() {
                    orbit[m[h][k]] = lifts.len();
                }
                lifts.push(k);
            }
        }
        (orbit, lifts)
    };
    let (v_orbit, v_lift) = orbit_of(&act.vertex_action, x.vertex_count());
    let (e_orbit, e_orbit_min) = orbit_of(&act.edge_action, x.edge_count());

    // the lift of each quotient edge starting at the lift of its initial vertex
    let mut e_lift = Vec::with_capacity(e_orbit_min.len());
    for &m in &e_orbit_min {
        let start = v_lift[v_orbit[x.edge(m).i]];
        let lift = g.elements().map(|h| act.edge_action[h][m]).find(|&a| x.edge(a).i == start).unwrap();
        e_lift.push(lift);
    }
    let h: Vec<usize> = e_lift
        .iter()
        .map(|&a| {
            let t = x.edge(a).t;
            let target = v_lift[v_orbit[t]];
            g.elements().find(|&k| act.vertex_action[k][t] == target).unwrap()
        })
        .collect();

    let labels = v_lift.iter().map(|&v| x.labels()[v].clone()).collect();
    let edges: Vec<Edge> =
        e_lift.iter().map(|&a| Edge { i: v_orbit[x.edge(a).i], t: v_orbit[x.edge(a).t] }).collect();
    let mut comps = BTreeMap::new();
    for (qa, qea) in edges.iter().enumerate() {
        for (qb, qeb) in edges.iter().enumerate() {
            if qea.i != qeb.t {
                continue;
            }
            let b = e_lift[qb];
            let a = act.edge_action[g.inv(h[qb])][e_lift[qa]];
            let ab = x.compose(a, b).ok_or_else(|| ScwolError::InvalidAction(format!("edges {a}, {b} do not compose")))?;
            comps.insert((qa, qb), e_orbit[ab]);
        }
    }
    let comps: Vec<Composition> = comps.into_iter().map(|((a, b), ab)| Composition { a, b, ab }).collect();
    let y = Scwol::new(labels, edges.clone(), comps)?;

    let mut groups = Vec::new();
    let mut embeddings = Vec::new();
    let mut back = Vec::new();
    for &v in &v_lift {
        let mask: Vec<bool> = g.elements().map(|k| act.vertex_action[k][v] == v).collect();
        let (sub, emb) = g.subgroup(&mask);
        let mut b = vec![usize::MAX; g.order()];
        for (i, &k) in emb.iter().enumerate() {
            b[k] = i;
        }
        groups.push(sub);
        embeddings.push(emb);
        back.push(b);
    }
    let psi: Vec<Vec<Element>> = edges
        .iter()
        .enumerate()
        .map(|(qa, e)| embeddings[e.i].iter().map(|&k| Element::Index(back[e.t][g.conj(h[qa], k)])).collect())
        .collect();
    let mut twisting = BTreeMap::new();
    for c in y.compositions() {
        let t = edges[c.a].t;
        let k = g.mul(g.mul(h[c.a], h[c.b]), g.inv(h[c.ab]));
        twisting.insert((c.a, c.b), Element::Index(back[t][k]));
    }
    let cog = ComplexOfGroups::new(y, groups.into_iter().map(LocalGroup::Finite).collect(), psi, twisting)?;
    let phi = GroupMorphism { target: g.clone(), local: embeddings, edges: h };
    Ok((cog, phi))
}
