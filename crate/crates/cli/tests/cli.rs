mod common;

use std::io::Write;

use arrlog::criteria::{verify, TheoremReport};
use arrlog::derivation::Classification;
use arrlog::{corpus, Arrangement};
use common::{arrlog, json};

fn temp_doc(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn classify_fixtures() {
    let v = json(&["classify", "fixture:pog_one_h"]);
    assert_eq!(v["verdict"], "plus-one-generated");
    assert_eq!(v["exponents"], serde_json::json!([3, 3]));
    assert_eq!(v["level"], 4);
    let v = json(&["classify", "fixture:generic_4lines"]);
    assert_eq!(v["verdict"], "nearly-free");
    assert_eq!(v["exponents"], serde_json::json!([2, 2]));
    let back: Classification = serde_json::from_value(v).unwrap();
    assert_eq!(back.exponents(), Some((2, 2)));
}

#[test]
fn classify_reads_files() {
    let f = temp_doc(r#"{"lines": [[1, 0, 0], [0, 1, 0], [0, 0, 1], ["1", "1/2", "-3"]]}"#);
    let v = json(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(v["verdict"], "nearly-free");
}

#[test]
fn duplicate_lines_are_usage_errors() {
    let f = temp_doc(r#"{"factored": "xyz(2x)"}"#);
    let r = arrlog(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("DuplicateLine"), "{}", r.stderr);
    assert!(r.stdout.is_empty());
}

#[test]
fn malformed_input_exits_2() {
    let f = temp_doc("{not json");
    for cmd in ["classify", "verify", "analyze"] {
        assert_eq!(arrlog(&[cmd, f.path().to_str().unwrap()]).code, 2);
    }
    assert_eq!(arrlog(&["classify", "/nonexistent/arrangement.json"]).code, 2);
    assert_eq!(arrlog(&["classify", "fixture:nope"]).code, 2);
    assert_eq!(arrlog(&["frobnicate"]).code, 2);
    assert_eq!(arrlog(&["verify"]).code, 2);
}

#[test]
fn ziegler_exponents() {
    let v = json(&["ziegler", "fixture:pog_no_h", "--all"]);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 6);
    assert!(entries.iter().all(|e| e["exponents"] == serde_json::json!([2, 3])));

    let v = json(&["ziegler", "fixture:necsufcond2", "--line", "2", "--basis"]);
    assert_eq!(v[0]["line"], "z");
    assert_eq!(v[0]["exponents"], serde_json::json!([2, 4]));
    assert_eq!(v[0]["basis"]["saito"], true);
    assert_eq!(v[0]["restriction"]["mult"].as_array().unwrap().iter().map(|m| m.as_u64().unwrap()).sum::<u64>(), 6);

    assert_eq!(arrlog(&["ziegler", "fixture:necsufcond2", "--line", "99"]).code, 2);
    assert_eq!(arrlog(&["ziegler", "fixture:necsufcond2"]).code, 2);
}

#[test]
fn defects_and_property_p() {
    let v = json(&["defects", "fixture:generic_4lines"]);
    assert!(v.as_array().unwrap().iter().all(|d| d["defect"] == 1));
    let v = json(&["property-p", "fixture:necsufcond", "--line", "2"]);
    assert_eq!(v[0]["holds"], "variant1");
    let r = arrlog(&["--output", "text", "property-p", "fixture:necsufcond2", "--line", "2"]);
    assert_eq!(r.stdout.trim(), "H2: Variant1, alpha = x + 4y");
}

#[test]
fn splitting_types() {
    let v = json(&["splitting", "fixture:generic_4lines", "--form", "1,2,5", "--external", "3"]);
    let types = v.as_array().unwrap();
    assert_eq!(types.len(), 4);
    assert!(types.iter().all(|t| t["exponents"] == serde_json::json!([1, 2])));
    assert_eq!(arrlog(&["splitting", "fixture:generic_4lines", "--form", "1,1,0"]).code, 2);
    assert_eq!(arrlog(&["splitting", "fixture:generic_4lines", "--form", "0,0,0"]).code, 2);
}

#[test]
fn gen_families() {
    let doc = arrlog(&["gen", "--family", "near-pencil", "--n", "5"]);
    assert_eq!(doc.code, 0);
    let f = temp_doc(&doc.stdout);
    let v = json(&["classify", f.path().to_str().unwrap()]);
    assert_eq!((v["verdict"].as_str(), v["exponents"].clone()), (Some("free"), serde_json::json!([1, 3])));

    let doc = arrlog(&["gen", "--family", "generic", "--n", "4", "--seed", "7"]);
    let a: Arrangement = serde_json::from_str(&doc.stdout).unwrap();
    assert_eq!(a.points().len(), 6);
    assert!(a.points().iter().all(|p| p.multiplicity() == 2));

    let doc = arrlog(&["gen", "--family", "pencil", "--n", "3"]);
    let f = temp_doc(&doc.stdout);
    let v = json(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(v["chi0"]["b2_0"], 0);

    assert_eq!(arrlog(&["gen", "--family", "pencil", "--n", "0"]).code, 2);
    assert_eq!(arrlog(&["gen", "--family", "spiral", "--n", "3"]).code, 2);
}

#[test]
fn verify_corpus_passes() {
    let r = arrlog(&["verify", "--corpus", "--random", "0"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let reports: Vec<TheoremReport> = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(reports.len(), corpus::fixtures().len());
    assert!(reports.iter().all(TheoremReport::passed));
}

#[test]
fn verify_random_is_deterministic() {
    let args = ["--output", "text", "verify", "--random", "6", "--max-lines", "6", "--seed", "42"];
    let first = arrlog(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.stdout, arrlog(&args).stdout);
    assert!(first.stdout.ends_with("6 arrangements, 0 with failed checks\n"));
}

#[test]
fn verify_output_round_trips() {
    let v = json(&["verify", "fixture:counter"]);
    let report: TheoremReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(report, verify(&corpus::fixture("counter").unwrap().arrangement).unwrap());
    assert_eq!(serde_json::to_value(&report).unwrap(), v);
    assert!(v["lines"][0].get("n_H").is_some());
}

#[test]
fn analyze_text() {
    let r = arrlog(&["--output", "text", "analyze", "fixture:counter"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("nearly free (3, 3)"), "{}", r.stdout);
    assert!(r.stdout.contains("b2_0 = 7"), "{}", r.stdout);
}
