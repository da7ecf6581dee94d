use std::path::PathBuf;

use matroid_greedy::guarantees::{ratio_report, region_compare, ReportOptions};
use matroid_greedy::instances::{gen_explicit_random, load_instance, save_instance, suite, suite_instance, t3};
use matroid_greedy::{Error, Instance, MatroidSpec};
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

#[test]
fn t3_fixture_loads() {
    let inst = load_instance(fixture("t3.json")).unwrap();
    assert_eq!(inst.n(), 3);
    assert_eq!(inst.cardinality, 2);
    assert_eq!(inst.matroid_spec, MatroidSpec::Uniform { rank: 2 });
    assert_eq!(inst, t3());
    assert_eq!(inst.to_json(), std::fs::read_to_string(fixture("t3.json")).unwrap());
}

#[test]
fn explicit_seed_42_golden() {
    let golden = load_instance(fixture("explicit_seed42.json")).unwrap();
    assert_eq!(golden.function, gen_explicit_random(3, 42).unwrap());
    assert_eq!(golden.seed, Some(42));

    let report = ratio_report(
        &golden.function,
        &golden.matroid(),
        golden.cardinality,
        ReportOptions {
            greedy_variants: true,
            strong: true,
        },
    )
    .unwrap();
    let mut text = serde_json::to_string_pretty(&report).unwrap();
    text.push('\n');
    assert_eq!(text, std::fs::read_to_string(fixture("explicit_seed42_ratios.json")).unwrap());
}

#[test]
fn region_golden() {
    let csv = region_compare(-1.0, 1.0, -0.5, 4).unwrap().to_csv();
    assert_eq!(csv, std::fs::read_to_string(fixture("region_fstar_-0.5_grid4.csv")).unwrap());
    let winners: Vec<&str> = csv.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert!(winners.contains(&"forward") && winners.contains(&"reverse"));
}

#[test]
fn wrong_table_length_is_a_schema_error() {
    let text = std::fs::read_to_string(fixture("t3.json")).unwrap().replace("      4.0\n", "");
    let text = text.replace("3.0,\n      3.0,\n", "3.0,\n      3.0\n");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.json");
    std::fs::write(&path, text).unwrap();
    match load_instance(&path) {
        Err(Error::Schema(msg)) => assert!(msg.contains("function.values"), "{msg}"),
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn cardinality_above_rank_is_infeasible() {
    let text = std::fs::read_to_string(fixture("t3.json")).unwrap().replace("\"N\": 2", "\"N\": 3");
    assert!(matches!(
        Instance::from_json(&text),
        Err(Error::InfeasibleInstance { rank: 2, required: 3 })
    ));
}

#[test]
fn unknown_fields_are_rejected_with_their_path() {
    let text = std::fs::read_to_string(fixture("t3.json")).unwrap().replace("\"rank\": 2", "\"rank\": 2, \"extra\": 1");
    match Instance::from_json(&text) {
        Err(Error::Schema(msg)) => assert!(msg.contains("matroid") && msg.contains("line"), "{msg}"),
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn suites_are_reproducible_byte_for_byte() {
    let a: Vec<String> = suite(12, 2, 8, 99).unwrap().iter().map(Instance::to_json).collect();
    let b: Vec<String> = suite(12, 2, 8, 99).unwrap().iter().map(Instance::to_json).collect();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn save_then_load_is_identity(n in 2..=9usize, index in 0..6usize, seed in any::<u64>()) {
        let inst = suite_instance(index, n, seed).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inst.json");
        save_instance(&inst, &path).unwrap();
        let back = load_instance(&path).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.to_json(), inst.to_json());
    }
}
