use serde::Deserialize;
use serde_json::{json, Map, Value};
use tribranch_core::group::{abelianize, GroupPresentation};
use tribranch_scwol::json::{ActionFile, CogFile, MorphismFile};
use tribranch_scwol::{
    check_developability, development, quotient_cog, CellComplex, ComplexOfGroups, Scwol, ScwolError,
};

use crate::args::{ScwolCommand, ScwolInput};
use crate::{input_err, read_json, InputError, Outcome};

/// Input of the `scwol` subcommands: exactly one of `scwol`, `cells`, `cog`,
/// `action`, and `morphism` alongside `cog` for `develop`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScwolJob {
    pub scwol: Option<Scwol>,
    pub cells: Option<CellComplex>,
    pub cog: Option<CogFile>,
    pub morphism: Option<MorphismFile>,
    pub action: Option<ActionFile>,
}

enum Object {
    Scwol(Scwol),
    Cog(ComplexOfGroups),
    Action(ActionFile),
}

impl ScwolJob {
    fn object(&self) -> Result<Object, InputError> {
        let given = [self.scwol.is_some(), self.cells.is_some(), self.cog.is_some(), self.action.is_some()];
        if given.iter().filter(|&&x| x).count() != 1 {
            return Err(InputError("give exactly one of \"scwol\", \"cells\", \"cog\", \"action\"".into()));
        }
        if let Some(s) = &self.scwol {
            return Ok(Object::Scwol(s.clone()));
        }
        if let Some(c) = &self.cells {
            return Ok(Object::Scwol(c.to_scwol().map_err(input_err)?));
        }
        if let Some(c) = &self.cog {
            return Ok(Object::Cog(c.build().map_err(input_err)?));
        }
        Ok(Object::Action(self.action.clone().expect("counted above")))
    }
}

fn load(input: &ScwolInput) -> Result<ScwolJob, InputError> {
    read_json(&input.input)
}

pub fn cmd_scwol(sub: &ScwolCommand) -> Result<Outcome, InputError> {
    match sub {
        ScwolCommand::Validate(input) => validate(&load(input)?),
        ScwolCommand::Pi1 { input, base } => pi1(&load(input)?, *base),
        ScwolCommand::Develop(input) => develop(&load(input)?),
        ScwolCommand::Quotient(input) => quotient(&load(input)?),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn validate(job: &ScwolJob) -> Result<Outcome, InputError> {
    let mut body = Map::new();
    let passed = match job.object()? {
        Object::Scwol(s) => {
            let v = s.validate();
            body.insert("scwol_violations".into(), to_value(&v));
            body.insert("connected".into(), s.is_connected().into());
            v.is_empty()
        }
        Object::Cog(c) => {
            let v = c.scwol().validate();
            let r = c.validate();
            body.insert("scwol_violations".into(), to_value(&v));
            body.insert("connected".into(), c.scwol().is_connected().into());
            body.insert("cog_violations".into(), to_value(&r.violations));
            body.insert("skipped".into(), to_value(&r.skipped));
            v.is_empty() && r.is_valid()
        }
        Object::Action(a) => {
            let act = a.build().map_err(input_err)?;
            let v = act.scwol.validate();
            let av = act.validate();
            body.insert("scwol_violations".into(), to_value(&v));
            body.insert("action_violations".into(), to_value(&av));
            v.is_empty() && av.is_empty()
        }
    };
    body.insert("valid".into(), passed.into());
    Ok(Outcome::new("scwol validate", body, passed))
}

fn presentation_json(p: &GroupPresentation) -> Value {
    let rels: Vec<String> = p.relators().iter().map(|r| p.word_to_string(r)).collect();
    json!({ "generators": p.names(), "relators": rels })
}

pub fn pi1(job: &ScwolJob, base: usize) -> Result<Outcome, InputError> {
    let pres = match job.object()? {
        Object::Scwol(s) => s.pi1_presentation(base),
        Object::Cog(c) => c.pi1_presentation(base),
        Object::Action(_) => return Err(InputError("pi1 takes a scwol, cells or cog".into())),
    }
    .map_err(input_err)?;
    let mut body = Map::new();
    body.insert("base".into(), base.into());
    body.insert("presentation".into(), presentation_json(&pres));
    body.insert("abelianization".into(), abelianize(&pres).to_json());
    Ok(Outcome::new("scwol pi1", body, true))
}

pub fn develop(job: &ScwolJob) -> Result<Outcome, InputError> {
    let Object::Cog(cog) = job.object()? else {
        return Err(InputError("develop takes a cog and a morphism".into()));
    };
    let phi = job
        .morphism
        .as_ref()
        .ok_or_else(|| InputError("develop needs a \"morphism\"".into()))?
        .build()
        .map_err(input_err)?;
    let report = check_developability(&cog, &phi).map_err(input_err)?;
    let mut body = Map::new();
    body.insert("developability".into(), to_value(&report));
    if !report.developable() {
        return Ok(Outcome::new("scwol develop", body, false));
    }
    let d = match development(&cog, &phi) {
        Ok(d) => d,
        Err(ScwolError::NotDevelopable(_)) => unreachable!("checked above"),
        Err(e) => return Err(input_err(e)),
    };
    let x = &d.action.scwol;
    let view = x.graph_view();
    body.insert(
        "development".into(),
        json!({
            "scwol": x,
            "vertex_over": d.vertex_over,
            "vertex_coset": d.vertex_coset,
            "edge_over": d.edge_over,
            "edge_coset": d.edge_coset,
            "connected": x.is_connected(),
        }),
    );
    body.insert(
        "graph".into(),
        json!({
            "vertices": view.vertices.len(),
            "edges": view.edges,
            "degrees": view.degrees(),
            "connected": view.is_connected(),
        }),
    );
    if x.is_connected() {
        let pres = x.pi1_presentation(0).map_err(input_err)?;
        body.insert("pi1_abelianization".into(), abelianize(&pres).to_json());
    }
    body.insert("action".into(), to_value(&ActionFile::from_action(&d.action)));
    Ok(Outcome::new("scwol develop", body, true))
}

pub fn quotient(job: &ScwolJob) -> Result<Outcome, InputError> {
    let Object::Action(a) = job.object()? else {
        return Err(InputError("quotient takes an action".into()));
    };
    let act = a.build().map_err(input_err)?;
    let violations = act.validate();
    let mut body = Map::new();
    body.insert("action_violations".into(), to_value(&violations));
    if !violations.is_empty() {
        return Ok(Outcome::new("scwol quotient", body, false));
    }
    let (cog, phi) = quotient_cog(&act).map_err(input_err)?;
    body.insert("cog".into(), to_value(&CogFile::from_cog(&cog)));
    body.insert("morphism".into(), to_value(&MorphismFile::from_morphism(&phi)));
    Ok(Outcome::new("scwol quotient", body, true))
}
