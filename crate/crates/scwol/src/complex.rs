//! Complexes of groups over a scwol, their axioms, universal groups and
//! fundamental groups.

use std::collections::BTreeMap;

use serde::Serialize;
use tribranch_core::group::{GroupPresentation, Letter, Word};

use crate::{FiniteGroupTable, Scwol, ScwolError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalGroup {
    Finite(FiniteGroupTable),
    Presented(GroupPresentation),
}

impl LocalGroup {
    /// Generators used by the universal group: every element of a finite
    /// group, the presentation generators otherwise.
    pub fn generator_count(&self) -> usize {
        match self {
            LocalGroup::Finite(g) => g.order(),
            LocalGroup::Presented(p) => p.generator_count(),
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteGroupTable> {
        match self {
            LocalGroup::Finite(g) => Some(g),
            LocalGroup::Presented(_) => None,
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            LocalGroup::Finite(g) => Element::Index(g.identity()),
            LocalGroup::Presented(_) => Element::Word(Word::identity()),
        }
    }

    fn check(&self, x: &Element) -> bool {
        match (self, x) {
            (LocalGroup::Finite(g), Element::Index(k)) => *k < g.order(),
            (LocalGroup::Presented(p), Element::Word(w)) => p.check_word(w).is_ok(),
            _ => false,
        }
    }
}

/// An element of a local group: a table index or a word in the
/// presentation generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Index(usize),
    Word(Word),
}

impl Element {
    pub fn index(&self) -> Option<usize> {
        match self {
            Element::Index(k) => Some(*k),
            Element::Word(_) => None,
        }
    }
}

/// Local groups `G_σ`, monomorphisms `ψ_a : G_{i(a)} → G_{t(a)}` and
/// twisting elements `g_{a,b} ∈ G_{t(a)}`.
///
/// `psi[a][k]` is the image of the `k`-th generator of `G_{i(a)}` (every
/// element, for a finite group).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexOfGroups {
    scwol: Scwol,
    groups: Vec<LocalGroup>,
    psi: Vec<Vec<Element>>,
    twisting: BTreeMap<(usize, usize), Element>,
}

impl ComplexOfGroups {
    /// Checks shapes and element ranges. Missing twisting elements default
    /// to the identity.
    pub fn new(
        scwol: Scwol,
        groups: Vec<LocalGroup>,
        psi: Vec<Vec<Element>>,
        twisting: BTreeMap<(usize, usize), Element>,
    ) -> Result<Self, ScwolError> {
        let bad = |m: String| Err(ScwolError::Malformed(m));
        if groups.len() != scwol.vertex_count() {
            return bad(format!("{} local groups for {} vertices", groups.len(), scwol.vertex_count()));
        }
        if psi.len() != scwol.edge_count() {
            return bad(format!("{} edge maps for {} edges", psi.len(), scwol.edge_count()));
        }
        for (a, images) in psi.iter().enumerate() {
            let e = scwol.edge(a);
            if images.len() != groups[e.i].generator_count() {
                return bad(format!("edge map {a} has {} images, expected {}", images.len(), groups[e.i].generator_count()));
            }
            if let Some(k) = images.iter().position(|x| !groups[e.t].check(x)) {
                return bad(format!("image {k} of edge map {a} is not an element of local group {}", e.t));
            }
        }
        let mut full = BTreeMap::new();
        for c in scwol.compositions() {
            let t = scwol.edge(c.a).t;
            let g = twisting.get(&(c.a, c.b)).cloned().unwrap_or_else(|| groups[t].identity());
            if !groups[t].check(&g) {
                return bad(format!("twisting element ({}, {}) is not an element of local group {t}", c.a, c.b));
            }
            full.insert((c.a, c.b), g);
        }
        if let Some(&(a, b)) = twisting.keys().find(|k| !full.contains_key(k)) {
            return bad(format!("twisting element given for ({a}, {b}), which is not a composition"));
        }
        Ok(ComplexOfGroups { scwol, groups, psi, twisting: full })
    }

    /// All twisting elements trivial.
    pub fn simple(scwol: Scwol, groups: Vec<LocalGroup>, psi: Vec<Vec<Element>>) -> Result<Self, ScwolError> {
        Self::new(scwol, groups, psi, BTreeMap::new())
    }

    /// A group as a complex of groups over the one-vertex scwol.
    pub fn single(group: LocalGroup) -> Self {
        ComplexOfGroups { scwol: Scwol::point(), groups: vec![group], psi: Vec::new(), twisting: BTreeMap::new() }
    }

    pub fn scwol(&self) -> &Scwol {
        &self.scwol
    }

    pub fn groups(&self) -> &[LocalGroup] {
        &self.groups
    }

    pub fn psi(&self, a: usize) -> &[Element] {
        &self.psi[a]
    }

    pub fn twisting(&self, a: usize, b: usize) -> &Element {
        &self.twisting[&(a, b)]
    }

    pub fn twistings(&self) -> &BTreeMap<(usize, usize), Element> {
        &self.twisting
    }

    pub fn is_finite(&self) -> bool {
        self.groups.iter().all(|g| g.as_finite().is_some())
    }

    /// Local group tables when every local group is finite.
    pub fn finite_groups(&self) -> Result<Vec<&FiniteGroupTable>, ScwolError> {
        self.groups.iter().map(|g| g.as_finite().ok_or(ScwolError::NotFinite)).collect()
    }

    /// `ψ_a` as an element map, for finite local groups.
    pub fn psi_map(&self, a: usize) -> Option<Vec<usize>> {
        self.psi[a].iter().map(Element::index).collect()
    }

    fn twist_index(&self, a: usize, b: usize) -> Option<usize> {
        self.twisting[&(a, b)].index()
    }

    /// Checks that each `ψ_a` is an injective homomorphism, twisted
    /// commutativity, and the cocycle condition. Conditions involving a
    /// presented local group are listed as skipped.
    pub fn validate(&self) -> CogReport {
        let mut report = CogReport::default();
        let s = &self.scwol;
        for a in 0..s.edge_count() {
            let e = s.edge(a);
            let (Some(gi), Some(gt)) = (self.groups[e.i].as_finite(), self.groups[e.t].as_finite()) else {
                report.skipped.push(format!("edge {a}: homomorphism and injectivity of psi"));
                continue;
            };
            let f = self.psi_map(a).unwrap();
            if let Some((x, y)) = gi.hom_failure(&f, gt) {
                report.violations.push(CogViolation::NotHomomorphism { edge: a, x, y });
            }
            if let Some((x, y)) = gi.injectivity_failure(&f) {
                report.violations.push(CogViolation::NotInjective { edge: a, x, y });
            }
        }
        for c in s.compositions() {
            let (ea, eb) = (s.edge(c.a), s.edge(c.b));
            let (Some(gb), Some(gt)) = (self.groups[eb.i].as_finite(), self.groups[ea.t].as_finite()) else {
                report.skipped.push(format!("pair ({}, {}): twisted commutativity", c.a, c.b));
                continue;
            };
            if self.groups[ea.i].as_finite().is_none() {
                report.skipped.push(format!("pair ({}, {}): twisted commutativity", c.a, c.b));
                continue;
            }
            let (pa, pb, pab) = (self.psi_map(c.a).unwrap(), self.psi_map(c.b).unwrap(), self.psi_map(c.ab).unwrap());
            let g = self.twist_index(c.a, c.b).unwrap();
            if let Some(x) = gb.elements().find(|&x| gt.conj(g, pab[x]) != pa[pb[x]]) {
                report.violations.push(CogViolation::TwistedCommutativity { a: c.a, b: c.b, x });
            }
        }
        for c1 in s.compositions() {
            for c2 in s.compositions().filter(|c2| c2.a == c1.b) {
                let (a, b, c) = (c1.a, c1.b, c2.b);
                let (bc, ab) = (c2.ab, c1.ab);
                let Some(g) = self.groups[s.edge(a).t].as_finite() else {
                    report.skipped.push(format!("triple ({a}, {b}, {c}): cocycle condition"));
                    continue;
                };
                let Some(pa) = self.psi_map(a) else {
                    report.skipped.push(format!("triple ({a}, {b}, {c}): cocycle condition"));
                    continue;
                };
                let tw = |x: usize, y: usize| self.twist_index(x, y).unwrap();
                let lhs = g.mul(pa[tw(b, c)], tw(a, bc));
                let rhs = g.mul(tw(a, b), tw(ab, c));
                if lhs != rhs {
                    report.violations.push(CogViolation::Cocycle { a, b, c });
                }
            }
        }
        report
    }

    /// `FG(Y)`: generators for the local groups and `a⁺` per edge; the
    /// local relations, `a⁺b⁺ = g_{a,b}(ab)⁺` and `ψ_a(x) = a⁺xa⁻`.
    pub fn universal_group_presentation(&self) -> GroupPresentation {
        let layout = Layout::new(self);
        GroupPresentation::new(layout.names.clone(), self.universal_relators(&layout)).expect("generated names are valid")
    }

    fn universal_relators(&self, layout: &Layout) -> Vec<Word> {
        let mut rels = Vec::new();
        for (v, g) in self.groups.iter().enumerate() {
            match g {
                LocalGroup::Finite(t) => {
                    for x in t.elements() {
                        for y in t.elements() {
                            rels.push(Word::new([
                                Letter::pos(layout.vertex[v] + x),
                                Letter::pos(layout.vertex[v] + y),
                                Letter::neg(layout.vertex[v] + t.mul(x, y)),
                            ]));
                        }
                    }
                }
                LocalGroup::Presented(p) => {
                    rels.extend(p.relators().iter().map(|r| layout.lift(v, &Element::Word(r.clone()))));
                }
            }
        }
        let s = &self.scwol;
        for c in s.compositions() {
            let t = s.edge(c.a).t;
            let g = layout.lift(t, &self.twisting[&(c.a, c.b)]);
            let lhs = Word::new([Letter::pos(layout.edge(c.a)), Letter::pos(layout.edge(c.b)), Letter::neg(layout.edge(c.ab))]);
            rels.push(lhs.mul(&g.inverse()));
        }
        for a in 0..s.edge_count() {
            let e = s.edge(a);
            for (k, img) in self.psi[a].iter().enumerate() {
                let x = Word::gen(layout.vertex[e.i] + k);
                let conj = x.conjugate(&Word::gen(layout.edge(a)));
                rels.push(conj.mul(&layout.lift(e.t, img).inverse()));
            }
        }
        rels
    }

    /// `π₁(G(Y), base)`: the universal group with `a⁺ = 1` on the spanning
    /// tree of the scwol from `base`.
    pub fn pi1_presentation(&self, base: usize) -> Result<GroupPresentation, ScwolError> {
        let tree = self.scwol.spanning_tree(base)?;
        let layout = Layout::new(self);
        let mut rels = self.universal_relators(&layout);
        rels.extend(tree.into_iter().map(|a| Word::gen(layout.edge(a))));
        Ok(GroupPresentation::new(layout.names, rels)?)
    }
}

/// Generator numbering of the universal group.
struct Layout {
    names: Vec<String>,
    vertex: Vec<usize>,
    edges_start: usize,
    presented: Vec<bool>,
}

impl Layout {
    fn new(cog: &ComplexOfGroups) -> Self {
        let mut names = Vec::new();
        let mut vertex = Vec::new();
        let mut presented = Vec::new();
        for (v, g) in cog.groups.iter().enumerate() {
            vertex.push(names.len());
            match g {
                LocalGroup::Finite(t) => {
                    names.extend(t.elements().map(|x| format!("g{v}_{x}")));
                    presented.push(false);
                }
                LocalGroup::Presented(p) => {
                    names.extend(p.names().iter().map(|n| format!("{n}_v{v}")));
                    presented.push(true);
                }
            }
        }
        let edges_start = names.len();
        names.extend((0..cog.scwol.edge_count()).map(|a| format!("a{a}")));
        Layout { names, vertex, edges_start, presented }
    }

    fn edge(&self, a: usize) -> usize {
        self.edges_start + a
    }

    fn lift(&self, v: usize, x: &Element) -> Word {
        match x {
            Element::Index(k) => Word::gen(self.vertex[v] + k),
            Element::Word(w) => {
                debug_assert!(self.presented[v]);
                Word::new(w.letters().iter().map(|l| Letter { gen: self.vertex[v] + l.gen, inverse: l.inverse }))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CogReport {
    pub violations: Vec<CogViolation>,
    /// Conditions not checked because a local group is only presented.
    pub skipped: Vec<String>,
}

impl CogReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum CogViolation {
    NotHomomorphism { edge: usize, x: usize, y: usize },
    NotInjective { edge: usize, x: usize, y: usize },
    TwistedCommutativity { a: usize, b: usize, x: usize },
    Cocycle { a: usize, b: usize, c: usize },
}
