use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tribranch_core::field::{parse_ratfunc, Nf, Place};
use tribranch_core::group::orbit_ball;
use tribranch_core::lattice::VertexClass;
use tribranch_core::triangle::{gamma_representation, TriangleData, PARAMETER};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("tribranch-{}-{name}", std::process::id()))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tribranch")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("no JSON report ({e}); stderr: {err}"));
    (code, v)
}

fn write_config(name: &str, text: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn triangle_trace_identity() {
    let (code, v) = run_json(&["triangle", "--p", "3", "--q", "3", "--r", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    let td = TriangleData::builtin(3, 3, 3).unwrap();
    let expected = parse_ratfunc::<Nf>("s + 1 + s^-1", &td.field, PARAMETER).unwrap();
    for key in ["computed", "closed_form"] {
        let text = v["trace_abac"][key].as_str().unwrap();
        assert_eq!(parse_ratfunc(text, &td.field, PARAMETER).unwrap(), expected);
    }
    assert_eq!(v["trace_abac"]["equal"], true);
    assert_eq!(v["relators"]["gamma"]["checks"].as_array().unwrap().len(), 6);
    assert_eq!(v["relators"]["delta"]["checks"].as_array().unwrap().len(), 3);
    assert!(v.get("seifert").is_none());
}

#[test]
fn triangle_haken_flag() {
    let (code, v) = run_json(&["triangle", "--p", "3", "--q", "3", "--r", "3", "--a", "1", "--b", "1", "--c", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["seifert"]["haken"], true);
    assert_eq!(v["seifert"]["h1"]["rank"], 1);
    let (_, v) = run_json(&["triangle", "--p", "3", "--q", "3", "--r", "3", "--a", "1", "--b", "1", "--c", "1"]);
    assert_eq!(v["seifert"]["haken"], false);
    assert_eq!(v["seifert"]["h1"]["rank"], 0);
    let (_, v) = run_json(&["triangle", "--p", "3", "--q", "3", "--r", "3", "--a", "-1", "--b", "-1", "--c", "-2"]);
    assert_eq!(v["seifert"]["haken"], true);
}

#[test]
fn triangle_input_errors() {
    assert_eq!(run(&["triangle", "--p", "3", "--q", "3", "--r", "3", "--a", "3", "--b", "1", "--c", "1"]).0, 1);
    assert_eq!(run(&["triangle", "--p", "3", "--q", "3", "--r", "3", "--a", "1"]).0, 1);
    assert_eq!(run(&["triangle", "--p", "2", "--q", "3", "--r", "3"]).0, 1);
    assert_eq!(run(&["triangle", "--p", "3", "--q", "3", "--r", "11"]).0, 1);
    assert_eq!(run(&["triangle", "--p", "x", "--q", "3", "--r", "3"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn link_counts() {
    for (p, dim, count) in [(2, 2, 3), (3, 2, 4), (2, 3, 14), (3, 3, 26)] {
        let (code, v) = run_json(&["link", "--prime", &p.to_string(), "--dim", &dim.to_string()]);
        assert_eq!(code, 0);
        assert_eq!(v["count"], count);
        assert_eq!(v["neighbors"].as_array().unwrap().len(), count);
    }
    assert_eq!(run(&["link", "--prime", "4", "--dim", "2"]).0, 1);
    assert_eq!(run(&["link", "--prime", "2", "--dim", "4"]).0, 1);
}

#[test]
fn orbit_matches_library_and_writes_dot() {
    let dot = scratch("orbit.dot");
    let (code, v) = run_json(&[
        "orbit", "--p", "3", "--q", "3", "--r", "3", "--place", "infinity", "--depth", "2", "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let td = TriangleData::builtin(3, 3, 3).unwrap();
    let rep = gamma_representation(&td).unwrap();
    let base = VertexClass::standard(3, Place::Infinity, &td.field);
    let g = orbit_ball(&rep, &base, 2).unwrap();
    assert_eq!(v["graph"]["nodes"].as_array().unwrap().len(), g.nodes.len());
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), g.edges.len());
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text, v["dot"].as_str().unwrap());
    assert_eq!(run(&["orbit", "--p", "3", "--depth", "2"]).0, 1);
    assert_eq!(run(&["orbit", "--p", "3", "--q", "3", "--r", "3", "--place", "nowhere"]).0, 1);
}

#[test]
fn analyze_triangle_config() {
    let (code, v) = run_json(&["analyze", &data("triangle_333.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verification"]["passed"], true);
    let places = v["places"].as_array().unwrap();
    assert_eq!(places.len(), 3);
    for p in &places[..2] {
        assert_eq!(p["verdict"], "IdealPointCertified");
        assert_eq!(p["witness"]["word"], "abac");
        assert_eq!(p["witness"]["valuation"], -1);
        assert_eq!(p["nontriviality"]["verdict"], "Certificate");
    }
    assert_eq!(places[2]["place"], "finite:1");
    assert_eq!(places[2]["verdict"], "NoPoleFound");
    // at s = 1 every generator is integral, so the standard vertex is fixed
    assert_eq!(places[2]["orbit"]["vertices"], 1);
    for p in places {
        assert!(p["fixed_vertices"].as_array().unwrap().iter().all(|f| f["fixed"] == true));
    }
}

#[test]
fn analyze_reports_are_deterministic() {
    let a = run(&["analyze", &data("unipotent_mod2.json")]);
    let b = run(&["analyze", &data("unipotent_mod2.json")]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["places"][0]["nontriviality"]["word"], "xy");
    assert_eq!(v["places"][0]["nontriviality"]["valuation"], -2);
}

#[test]
fn analyze_failed_checks_and_bad_input() {
    let (code, v) = run_json(&["analyze", &data("not_sl.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["verification"]["determinants"][0]["det"], "t");
    assert_eq!(v["places"].as_array().unwrap().len(), 0);

    let empty = write_config(
        "empty.json",
        r#"{"representation": {"kind": "triangle", "p": 3, "q": 3, "r": 4}, "words": []}"#,
    );
    let (code, v) = run_json(&["analyze", &empty]);
    assert_eq!(code, 0);
    assert_eq!(v["places"].as_array().unwrap().len(), 0);
    assert_eq!(v["verification"]["relators"].as_array().unwrap().len(), 6);

    let broken = write_config(
        "broken.json",
        r#"{"representation": {"kind": "triangle", "p": 3, "q": 3, "r": 3}, "word": []}"#,
    );
    assert_eq!(run(&["analyze", &broken]).0, 1);
    let relator = write_config(
        "relator.json",
        r#"{"representation": {"kind": "explicit", "arithmetic": {"mode": "rational"},
            "generators": ["x"], "relators": ["x^2"], "images": [[["1", "t"], ["0", "1"]]]}, "words": []}"#,
    );
    let (code, v) = run_json(&["analyze", &relator]);
    assert_eq!(code, 2);
    assert_eq!(v["verification"]["relators"][0]["passed"], false);
    let garbage = write_config("garbage.json", "{ not json");
    assert_eq!(run(&["analyze", &garbage]).0, 1);
    assert_eq!(run(&["analyze", "/nonexistent/config.json"]).0, 1);
    let bad_entry = write_config(
        "entry.json",
        r#"{"representation": {"kind": "explicit", "arithmetic": {"mode": "mod_p", "prime": 6},
            "generators": ["x"], "images": [[["1"]]]}}"#,
    );
    assert_eq!(run(&["analyze", &bad_entry]).0, 1);
}

#[test]
fn scwol_develop_example() {
    let (code, v) = run_json(&["scwol", "develop", "--input", &data("z2_z3_s3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["graph"]["vertices"], 5);
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 6);
    assert_eq!(v["graph"]["connected"], true);
    assert_eq!(v["pi1_abelianization"]["display"], "Z^2");
    let mut degrees: Vec<u64> = v["graph"]["degrees"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    degrees.sort();
    assert_eq!(degrees, vec![2, 2, 2, 3, 3]);

    let mut job: Value = serde_json::from_str(&std::fs::read_to_string(data("z2_z3_s3.json")).unwrap()).unwrap();
    job["morphism"]["local"][1] = serde_json::json!([0, 0, 0]);
    let path = write_config("collapsed.json", &job.to_string());
    let (code, v) = run_json(&["scwol", "develop", "--input", &path]);
    assert_eq!(code, 2);
    assert_eq!(v["developability"]["violations"][0]["kind"], "NotInjective");
}

#[test]
fn scwol_validate_and_pi1() {
    let (code, v) = run_json(&["scwol", "validate", "--input", &data("tetrahedron.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], true);
    let (code, v) = run_json(&["scwol", "pi1", "--input", &data("tetrahedron.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["abelianization"]["display"], "0");

    let cycle = write_config("cycle.json", r#"{"cells": {"vertices": 3, "edges": [[0, 1], [1, 2], [2, 0]]}}"#);
    let (_, v) = run_json(&["scwol", "pi1", "--input", &cycle, "--base", "4"]);
    assert_eq!(v["abelianization"]["display"], "Z");

    let chain = write_config(
        "chain.json",
        r#"{"scwol": {"vertices": ["a", "b", "c"], "edges": [{"i": 1, "t": 0}, {"i": 2, "t": 1}]}}"#,
    );
    let (code, v) = run_json(&["scwol", "validate", "--input", &chain]);
    assert_eq!(code, 2);
    assert_eq!(v["scwol_violations"][0]["axiom"], "Scw1");

    let (_, v) = run_json(&["scwol", "pi1", "--input", &data("z2_z3_s3.json")]);
    assert_eq!(v["abelianization"]["display"], "Z/6");

    let two = write_config("two.json", r#"{"cells": {"vertices": 1, "edges": []}, "scwol": {"vertices": ["a"], "edges": []}}"#);
    assert_eq!(run(&["scwol", "validate", "--input", &two]).0, 1);
    let disconnected = write_config("disc.json", r#"{"cells": {"vertices": 2, "edges": []}}"#);
    assert_eq!(run(&["scwol", "pi1", "--input", &disconnected]).0, 1);
}

#[test]
fn scwol_quotient_then_develop() {
    let (code, v) = run_json(&["scwol", "quotient", "--input", &data("hexagon_action.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["cog"]["scwol"]["vertices"].as_array().unwrap().len(), 6);
    let job = serde_json::json!({ "cog": v["cog"], "morphism": v["morphism"] });
    let path = write_config("hex-quotient.json", &job.to_string());
    let (code, v) = run_json(&["scwol", "develop", "--input", &path]);
    assert_eq!(code, 0);
    assert_eq!(v["development"]["scwol"]["vertices"].as_array().unwrap().len(), 12);
    assert_eq!(v["graph"]["vertices"], 6);
    assert_eq!(v["pi1_abelianization"]["display"], "Z");

    let mut bad: Value = serde_json::from_str(&std::fs::read_to_string(data("hexagon_action.json")).unwrap()).unwrap();
    bad["action"]["edge_action"][1] = serde_json::json!([0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]);
    let path = write_config("hex-bad.json", &bad.to_string());
    let (code, v) = run_json(&["scwol", "quotient", "--input", &path]);
    assert_eq!(code, 2);
    assert_eq!(v["action_violations"][0]["kind"], "NotAutomorphism");
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch("link.json");
    let (code, out, _) = run(&["link", "--prime", "5", "--dim", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["count"], 6);
}
