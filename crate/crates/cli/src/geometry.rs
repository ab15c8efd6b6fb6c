use serde_json::{json, Map, Value};
use tribranch_core::field::{Modulus, TextCoeff};
use tribranch_core::group::{abelianize, link_of_standard, orbit_ball, Representation};
use tribranch_core::lattice::VertexClass;
use tribranch_core::triangle::{
    delta_restriction, gamma_representation, seifert_group, trace_abac, SeifertData, TriangleData, PARAMETER,
};

use crate::config::{Built, BuiltRep, JobConfig};
use crate::{input_err, InputError, Outcome};

fn relator_section<K: TextCoeff>(rep: &mut Representation<K>) -> (bool, Vec<Value>) {
    let report = rep.verify();
    let pres = rep.presentation();
    let rows = report
        .relators
        .iter()
        .map(|r| json!({ "relator": pres.word_to_string(&r.relator), "passed": r.passed }))
        .collect();
    (report.all_passed(), rows)
}

/// Trace identity, relators of both groups, and the Haken test when Seifert
/// invariants are given.
pub fn cmd_triangle(p: u32, q: u32, r: u32, invariants: Option<[i64; 3]>) -> Result<Outcome, InputError> {
    let td = TriangleData::builtin(p, q, r).map_err(input_err)?;
    let id = trace_abac(&td);
    let mut gamma = gamma_representation(&td).map_err(input_err)?;
    let mut delta = delta_restriction(&td).map_err(input_err)?;
    let (gamma_ok, gamma_rows) = relator_section(&mut gamma);
    let (delta_ok, delta_rows) = relator_section(&mut delta);

    let mut body = Map::new();
    body.insert("triple".into(), json!([p, q, r]));
    body.insert(
        "field".into(),
        json!({ "minpoly": td.field.minpoly().iter().map(|c| c.to_string()).collect::<Vec<_>>() }),
    );
    body.insert(
        "trace_abac".into(),
        json!({
            "computed": id.computed.display(PARAMETER).to_string(),
            "closed_form": id.closed_form.display(PARAMETER).to_string(),
            "equal": id.equal,
        }),
    );
    body.insert(
        "relators".into(),
        json!({
            "gamma": { "passed": gamma_ok, "checks": gamma_rows },
            "delta": { "passed": delta_ok, "checks": delta_rows },
        }),
    );
    if let Some([a, b, c]) = invariants {
        let sg = seifert_group(&SeifertData { p, q, r, a, b, c }).map_err(input_err)?;
        body.insert(
            "seifert".into(),
            json!({
                "invariants": [a, b, c],
                "haken": sg.haken,
                "h1": abelianize(&sg.presentation).to_json(),
            }),
        );
    }
    Ok(Outcome::new("triangle", body, id.equal && gamma_ok && delta_ok))
}

pub enum OrbitSource {
    Config(JobConfig),
    Triangle(u32, u32, u32),
}

pub fn cmd_orbit(source: &OrbitSource, place: &str, depth: usize) -> Result<Outcome, InputError> {
    let built = match source {
        OrbitSource::Config(cfg) => cfg.build()?,
        OrbitSource::Triangle(p, q, r) => {
            let td = TriangleData::builtin(*p, *q, *r).map_err(input_err)?;
            let rep = gamma_representation(&td).map_err(input_err)?;
            BuiltRep::Nf(Built { rep, ctx: td.field.clone(), variable: PARAMETER.into(), arithmetic: String::new() })
        }
    };
    match built {
        BuiltRep::Nf(b) => orbit(b, place, depth),
        BuiltRep::Fp(b) => orbit(b, place, depth),
    }
}

fn orbit<K: TextCoeff>(b: Built<K>, place: &str, depth: usize) -> Result<Outcome, InputError> {
    let place = b.place(place)?;
    let base = VertexClass::standard(b.rep.dim(), place.clone(), &b.ctx);
    let g = orbit_ball(&b.rep, &base, depth).map_err(input_err)?;
    let names = b.rep.presentation().names().to_vec();
    let mut body = Map::new();
    body.insert("place".into(), place.to_string().into());
    body.insert("depth".into(), depth.into());
    body.insert("graph".into(), g.to_json(&names, &b.variable));
    body.insert("dot".into(), g.to_dot(&names, &b.variable).into());
    Ok(Outcome::new("orbit", body, true))
}

pub fn cmd_link(prime: u64, dim: usize) -> Result<Outcome, InputError> {
    Modulus::new(prime).map_err(input_err)?;
    let link = link_of_standard(dim, prime).map_err(input_err)?;
    let mut body = Map::new();
    body.insert("prime".into(), prime.into());
    body.insert("dim".into(), dim.into());
    body.insert("count".into(), link.len().into());
    body.insert("neighbors".into(), link.iter().map(|v| v.to_json("t")).collect::<Vec<_>>().into());
    Ok(Outcome::new("link", body, true))
}
