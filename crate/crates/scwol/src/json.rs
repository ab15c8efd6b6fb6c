//! JSON file formats for groups, complexes of groups, morphisms and actions.
//!
//! Finite group elements are table indices; words in presented local
//! groups are strings in the presentation's generator names.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use tribranch_core::group::GroupPresentation;

use crate::{ComplexOfGroups, Element, FiniteGroupTable, GroupMorphism, LocalGroup, Scwol, ScwolAction, ScwolError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Symmetric(usize),
    Table(Vec<Vec<usize>>),
    Presentation { generators: Vec<String>, relators: Vec<String> },
}

impl GroupSpec {
    pub fn to_local(&self) -> Result<LocalGroup, ScwolError> {
        Ok(match self {
            GroupSpec::Presentation { generators, relators } => {
                let g: Vec<&str> = generators.iter().map(String::as_str).collect();
                let r: Vec<&str> = relators.iter().map(String::as_str).collect();
                LocalGroup::Presented(GroupPresentation::parse(&g, &r)?)
            }
            other => LocalGroup::Finite(other.to_finite()?),
        })
    }

    pub fn to_finite(&self) -> Result<FiniteGroupTable, ScwolError> {
        Ok(match self {
            GroupSpec::Trivial => FiniteGroupTable::trivial(),
            GroupSpec::Cyclic(n) => FiniteGroupTable::cyclic(*n)?,
            GroupSpec::Symmetric(n) => FiniteGroupTable::symmetric(*n)?,
            GroupSpec::Table(t) => FiniteGroupTable::from_table(t.clone())?,
            GroupSpec::Presentation { .. } => return Err(ScwolError::NotFinite),
        })
    }

    pub fn from_local(g: &LocalGroup) -> Self {
        match g {
            LocalGroup::Finite(t) => GroupSpec::Table(t.table().to_vec()),
            LocalGroup::Presented(p) => GroupSpec::Presentation {
                generators: p.names().to_vec(),
                relators: p.relators().iter().map(|r| p.word_to_string(r)).collect(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Index(usize),
    Word(String),
}

impl ElementSpec {
    fn to_element(&self, g: &LocalGroup) -> Result<Element, ScwolError> {
        match (self, g) {
            (ElementSpec::Index(k), LocalGroup::Finite(_)) => Ok(Element::Index(*k)),
            (ElementSpec::Word(w), LocalGroup::Presented(p)) => Ok(Element::Word(p.parse_word(w)?)),
            _ => Err(ScwolError::Malformed(format!("{self:?} is not an element of the matching kind of group"))),
        }
    }

    fn from_element(x: &Element, g: &LocalGroup) -> Self {
        match (x, g) {
            (Element::Index(k), _) => ElementSpec::Index(*k),
            (Element::Word(w), LocalGroup::Presented(p)) => ElementSpec::Word(p.word_to_string(w)),
            (Element::Word(_), LocalGroup::Finite(_)) => unreachable!("checked at construction"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSpec {
    pub a: usize,
    pub b: usize,
    pub element: ElementSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CogFile {
    pub scwol: Scwol,
    pub groups: Vec<GroupSpec>,
    pub psi: Vec<Vec<ElementSpec>>,
    #[serde(default)]
    pub twisting: Vec<TwistSpec>,
}

impl CogFile {
    pub fn build(&self) -> Result<ComplexOfGroups, ScwolError> {
        let groups: Vec<LocalGroup> = self.groups.iter().map(GroupSpec::to_local).collect::<Result<_, _>>()?;
        if groups.len() != self.scwol.vertex_count() || self.psi.len() != self.scwol.edge_count() {
            return Err(ScwolError::Malformed("group or edge map count does not match the scwol".into()));
        }
        let mut psi = Vec::new();
        for (a, images) in self.psi.iter().enumerate() {
            let t = &groups[self.scwol.edge(a).t];
            psi.push(images.iter().map(|x| x.to_element(t)).collect::<Result<Vec<_>, _>>()?);
        }
        let mut twisting = BTreeMap::new();
        for tw in &self.twisting {
            if tw.a >= self.scwol.edge_count() {
                return Err(ScwolError::Malformed(format!("twisting element for missing edge {}", tw.a)));
            }
            let t = &groups[self.scwol.edge(tw.a).t];
            twisting.insert((tw.a, tw.b), tw.element.to_element(t)?);
        }
        ComplexOfGroups::new(self.scwol.clone(), groups, psi, twisting)
    }

    pub fn from_cog(cog: &ComplexOfGroups) -> Self {
        let s = cog.scwol();
        let groups = cog.groups();
        let psi = (0..s.edge_count())
            .map(|a| cog.psi(a).iter().map(|x| ElementSpec::from_element(x, &groups[s.edge(a).t])).collect())
            .collect();
        let twisting = cog
            .twistings()
            .iter()
            .map(|(&(a, b), x)| TwistSpec { a, b, element: ElementSpec::from_element(x, &groups[s.edge(a).t]) })
            .collect();
        CogFile { scwol: s.clone(), groups: groups.iter().map(GroupSpec::from_local).collect(), psi, twisting }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    pub target: GroupSpec,
    pub local: Vec<Vec<usize>>,
    pub edges: Vec<usize>,
}

impl MorphismFile {
    pub fn build(&self) -> Result<GroupMorphism, ScwolError> {
        Ok(GroupMorphism { target: self.target.to_finite()?, local: self.local.clone(), edges: self.edges.clone() })
    }

    pub fn from_morphism(phi: &GroupMorphism) -> Self {
        MorphismFile {
            target: GroupSpec::Table(phi.target.table().to_vec()),
            local: phi.local.clone(),
            edges: phi.edges.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionFile {
    pub scwol: Scwol,
    pub group: GroupSpec,
    pub vertex_action: Vec<Vec<usize>>,
    pub edge_action: Vec<Vec<usize>>,
}

impl ActionFile {
    pub fn build(&self) -> Result<ScwolAction, ScwolError> {
        Ok(ScwolAction {
            scwol: self.scwol.clone(),
            group: self.group.to_finite()?,
            vertex_action: self.vertex_action.clone(),
            edge_action: self.edge_action.clone(),
        })
    }

    pub fn from_action(act: &ScwolAction) -> Self {
        ActionFile {
            scwol: act.scwol.clone(),
            group: GroupSpec::Table(act.group.table().to_vec()),
            vertex_action: act.vertex_action.clone(),
            edge_action: act.edge_action.clone(),
        }
    }
}
