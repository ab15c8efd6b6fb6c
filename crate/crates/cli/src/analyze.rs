use serde_json::{json, Map, Value};
use tribranch_core::characters::{analyze_ideal_point, procesi_words};
use tribranch_core::field::TextCoeff;
use tribranch_core::group::{
    fixed_vertex, nontriviality_certificate, orbit_ball, FixedVertex, Nontriviality, Word,
};
use tribranch_core::lattice::VertexClass;

use crate::config::{Budgets, Built, BuiltRep, JobConfig, WordsSpec};
use crate::{input_err, InputError, Outcome};

/// Relator and determinant checks, then per place: trace valuations, a
/// shortlex nontriviality search, fixed vertices of the generators and an
/// orbit summary. Places are skipped when verification fails.
pub fn cmd_analyze(cfg: &JobConfig) -> Result<Outcome, InputError> {
    match cfg.build()? {
        BuiltRep::Nf(b) => run(b, cfg),
        BuiltRep::Fp(b) => run(b, cfg),
    }
}

fn run<K: TextCoeff>(mut b: Built<K>, cfg: &JobConfig) -> Result<Outcome, InputError> {
    let places = cfg.places.iter().map(|s| b.place(s)).collect::<Result<Vec<_>, _>>()?;
    let pres = b.rep.presentation().clone();
    let names = pres.names().to_vec();
    let var = b.variable.clone();
    let words: Vec<Word> = match &cfg.words {
        WordsSpec::Named(_) => procesi_words(b.rep.dim() as u32, pres.generator_count() as u32, cfg.budgets.procesi_cap)
            .map_err(input_err)?,
        WordsSpec::List(list) => list.iter().map(|w| pres.parse_word(w)).collect::<Result<_, _>>().map_err(input_err)?,
    };
    let text = |w: &Word| pres.word_to_string(w);

    let verification = b.rep.verify();
    let determinants: Vec<Value> = verification
        .determinants
        .iter()
        .map(|d| json!({ "generator": names[d.generator], "det": d.det.display(&var).to_string(), "passed": d.passed }))
        .collect();
    let relators: Vec<Value> = verification
        .relators
        .iter()
        .map(|r| {
            json!({
                "relator": text(&r.relator),
                "passed": r.passed,
                "value": r.value.as_ref().map(|m| m.to_text_rows(&var)),
            })
        })
        .collect();
    let verified = verification.all_passed();

    let mut place_reports = Vec::new();
    if verified {
        for place in &places {
            let mut entry = analyze_ideal_point(&b.rep, place, &words).map_err(input_err)?.to_json(&text);
            let obj = entry.as_object_mut().expect("report is an object");
            let nontrivial = match nontriviality_certificate(&b.rep, place, cfg.budgets.word_length) {
                Nontriviality::Certificate { word, trace, valuation } => json!({
                    "verdict": "Certificate",
                    "word": text(&word),
                    "trace": trace.display(&var).to_string(),
                    "valuation": valuation,
                }),
                Nontriviality::Inconclusive { words_checked } => {
                    json!({ "verdict": "Inconclusive", "words_checked": words_checked })
                }
            };
            obj.insert("nontriviality".into(), nontrivial);
            let mut fixed = Vec::new();
            for (g, img) in b.rep.images().iter().enumerate() {
                let v = match fixed_vertex(img, place).map_err(input_err)? {
                    FixedVertex::Fixed(v) => json!({ "generator": names[g], "fixed": true, "vertex": v.to_json(&var) }),
                    FixedVertex::NoFixedVertex(c) => json!({
                        "generator": names[g],
                        "fixed": false,
                        "certificate": {
                            "coefficient_index": c.index,
                            "coefficient": c.coefficient.display(&var).to_string(),
                            "valuation": c.valuation,
                        },
                    }),
                };
                fixed.push(v);
            }
            obj.insert("fixed_vertices".into(), Value::Array(fixed));
            obj.insert("orbit".into(), orbit_summary(&b, place, cfg.budgets)?);
            place_reports.push(entry);
        }
    }

    let mut body = Map::new();
    body.insert(
        "representation".into(),
        json!({
            "generators": names,
            "dimension": b.rep.dim(),
            "arithmetic": b.arithmetic,
            "variable": var,
        }),
    );
    body.insert(
        "verification".into(),
        json!({ "passed": verified, "determinants": determinants, "relators": relators }),
    );
    let source = if matches!(cfg.words, WordsSpec::Named(_)) { "procesi" } else { "list" };
    body.insert("words".into(), json!({ "source": source, "count": words.len() }));
    body.insert("budgets".into(), serde_json::to_value(cfg.budgets).expect("plain struct"));
    body.insert("places".into(), Value::Array(place_reports));
    Ok(Outcome::new("analyze", body, verified))
}

fn orbit_summary<K: TextCoeff>(
    b: &Built<K>,
    place: &tribranch_core::field::Place<K>,
    budgets: Budgets,
) -> Result<Value, InputError> {
    let base = VertexClass::standard(b.rep.dim(), place.clone(), &b.ctx);
    let g = orbit_ball(&b.rep, &base, budgets.orbit_depth).map_err(input_err)?;
    let mut per_type = vec![0usize; b.rep.dim()];
    for n in &g.nodes {
        per_type[n.vertex_type as usize] += 1;
    }
    Ok(json!({
        "depth": budgets.orbit_depth,
        "vertices": g.nodes.len(),
        "edges": g.edges.len(),
        "vertices_per_type": per_type,
    }))
}
