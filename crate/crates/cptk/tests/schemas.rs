//! Every JSON artifact the toolkit emits validates against the schema
//! files shipped under `schemas/`.

use cptk::coarse::{make_window, EntourageRel, SpaceSpec};
use cptk::embed::lamplighter::LamplighterElement;
use cptk::forest::{eliminate_periodic, forest_json, verify_forest};
use cptk::free_group::standard_paradox;
use cptk::harem::harem_matching;
use cptk::paradox::paradox_to_json;

fn validator(name: &str) -> jsonschema::Validator {
    let path = format!("{}/schemas/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {path}"));
    let schema: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(name: &str, value: &serde_json::Value) {
    let validator = validator(name);
    if let Err(error) = validator.validate(value) {
        panic!("{name} schema violation: {error}");
    }
}

#[test]
fn window_json_conforms() {
    for spec in [
        SpaceSpec::Line,
        SpaceSpec::Grid,
        SpaceSpec::Tree,
        SpaceSpec::IntervalSpace { k: 4 },
        SpaceSpec::Schreier { n: 2 },
        SpaceSpec::Halfline,
    ] {
        let w = make_window(spec, 4).unwrap();
        let value = serde_json::to_value(w.to_json()).unwrap();
        assert_valid("window", &value);
    }
}

#[test]
fn harem_and_forest_json_conform() {
    let w = make_window(SpaceSpec::Tree, 4).unwrap();
    let rel = EntourageRel::generator_minus_diagonal(&w);
    let f = harem_matching(&w, &rel, 4).unwrap();
    assert_valid("harem", &serde_json::to_value(f.to_json()).unwrap());

    let extraction = eliminate_periodic(&w, &f);
    let report = verify_forest(&w, &extraction.f_star, 4, &extraction.certified);
    let value = serde_json::to_value(forest_json(&extraction, 4, &report)).unwrap();
    assert_valid("forest", &value);
}

#[test]
fn paradox_json_conforms() {
    let pdec = standard_paradox();
    let value = serde_json::to_value(paradox_to_json(&pdec)).unwrap();
    assert_valid("paradox", &value);
    // each piece classifier also matches the classifier AST schema
    let classifier_validator = validator("classifier");
    for family in [&pdec.p_family, &pdec.q_family] {
        for (classifier, _) in family {
            let ast = serde_json::to_value(classifier).unwrap();
            assert!(
                classifier_validator.validate(&ast).is_ok(),
                "bad AST: {ast}"
            );
        }
    }
}

#[test]
fn lamplighter_json_conforms() {
    let e = LamplighterElement::shift(3, 2)
        .with_lamp(0, vec![1, 0, 2])
        .unwrap();
    assert_valid("lamplighter", &serde_json::to_value(&e).unwrap());
}
