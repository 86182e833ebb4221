//! Integration tests for the scenario suite: listing, error paths,
//! determinism, symbolic/numeric coherence and scenario-file round trips.

use std::path::PathBuf;

use towercheck::kernel::Rat;
use towercheck::scenario::{
    builtin_scenario, list_scenarios, load_scenario_file, parse_scenario, run_scenario, NPolicy, RunN, ScenarioError,
    Status, Value, VerificationReport,
};

fn shipped_file() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join("ez-tower.json")
}

/// The integer values of `n` each policy is exercised at.
fn numeric_points(policy: NPolicy) -> Vec<RunN> {
    match policy {
        NPolicy::Independent => vec![RunN::At(3)],
        _ => vec![RunN::At(3), RunN::At(4), RunN::At(5)],
    }
}

#[test]
fn listing_has_every_scenario_with_a_description() {
    let list = list_scenarios();
    assert!(list.len() >= 13, "only {} scenarios", list.len());
    assert!(list.iter().all(|s| !s.description.trim().is_empty()));
    assert!(list.iter().any(|s| s.name == "jz-canonical-class"));
    let mut names: Vec<&str> = list.iter().map(|s| s.name.as_str()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), list.len(), "scenario names are unique");
}

#[test]
fn unknown_scenarios_and_small_n_are_rejected() {
    assert!(matches!(builtin_scenario("no-such-scenario"), Err(ScenarioError::UnknownScenario(_))));
    assert!(matches!(run_scenario("jz-intersection-table", &RunN::At(2)), Err(ScenarioError::NTooSmall(2))));
    assert!(matches!(
        run_scenario("normal-cone-quadric", &RunN::Symbolic),
        Err(ScenarioError::PolicyMismatch { .. })
    ));
}

#[test]
fn every_builtin_passes_at_every_supported_n() {
    for info in list_scenarios() {
        let scenario = builtin_scenario(&info.name).unwrap();
        let mut points = numeric_points(info.n_policy);
        if info.n_policy != NPolicy::Numeric {
            points.push(RunN::Symbolic);
        }
        for n in points {
            let report = scenario.run(&n).unwrap();
            assert!(!report.checks.is_empty(), "{} has no checks", info.name);
            let failing: Vec<&str> = report
                .guards
                .iter()
                .chain(&report.checks)
                .filter(|c| c.status != Status::Pass)
                .map(|c| c.name.as_str())
                .collect();
            assert!(failing.is_empty(), "{} at n = {n}: {failing:?}", info.name);
        }
    }
}

#[test]
fn reports_are_deterministic() {
    for info in list_scenarios() {
        let n = numeric_points(info.n_policy)[0].clone();
        let first = run_scenario(&info.name, &n).unwrap().to_json();
        let second = run_scenario(&info.name, &n).unwrap().to_json();
        assert_eq!(first, second, "{}", info.name);
    }
}

#[test]
fn symbolic_results_specialize_to_numeric_ones() {
    for info in list_scenarios().into_iter().filter(|s| s.n_policy == NPolicy::Symbolic) {
        let symbolic = run_scenario(&info.name, &RunN::Symbolic).unwrap();
        for k in 3..=5 {
            let numeric = run_scenario(&info.name, &RunN::At(k)).unwrap();
            assert_eq!(symbolic.checks.len(), numeric.checks.len());
            for (s, v) in symbolic.checks.iter().zip(&numeric.checks) {
                assert_eq!(s.name, v.name);
                let at = Rat::from_int(k);
                assert!(
                    s.computed.at(&at).matches(&v.computed),
                    "{} / {} at n = {k}: symbolic {:?} vs numeric {:?}",
                    info.name,
                    s.name,
                    s.computed,
                    v.computed
                );
            }
        }
    }
}

#[test]
fn exported_scenarios_reload_with_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    for info in list_scenarios() {
        let scenario = builtin_scenario(&info.name).unwrap();
        let path = dir.path().join(format!("{}.json", info.name));
        std::fs::write(&path, scenario.to_json()).unwrap();
        let reloaded = load_scenario_file(&path).unwrap();
        assert_eq!(reloaded.spec(), scenario.spec(), "{}", info.name);
        let n = numeric_points(info.n_policy)[0].clone();
        assert_eq!(reloaded.run(&n).unwrap().to_json(), scenario.run(&n).unwrap().to_json(), "{}", info.name);
    }
}

#[test]
fn shipped_scenario_file_passes() {
    let scenario = load_scenario_file(&shipped_file()).unwrap();
    assert_eq!(scenario.name(), "mori-chain-ez");
    for n in [RunN::Symbolic, RunN::At(3), RunN::At(6)] {
        assert!(scenario.run(&n).unwrap().all_pass(), "n = {n}");
    }
}

#[test]
fn missing_files_are_io_errors() {
    let err = load_scenario_file(&PathBuf::from("/nonexistent/scenario.json")).unwrap_err();
    assert!(matches!(err, ScenarioError::Io { .. }));
}

/// Finds the first object holding `key`, depth first.
fn find_object_with<'a>(v: &'a mut serde_json::Value, key: &str) -> Option<&'a mut serde_json::Map<String, serde_json::Value>> {
    match v {
        serde_json::Value::Object(map) => {
            if map.contains_key(key) {
                return Some(map);
            }
            map.values_mut().find_map(|x| find_object_with(x, key))
        }
        serde_json::Value::Array(items) => items.iter_mut().find_map(|x| find_object_with(x, key)),
        _ => None,
    }
}

#[test]
fn wrong_length_coordinates_are_semantic_errors() {
    let text = std::fs::read_to_string(shipped_file()).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let coords = find_object_with(&mut doc, "coords").expect("the shipped file declares coordinates");
    coords["coords"]["values"].as_array_mut().unwrap().pop();
    let err = parse_scenario(&serde_json::to_string_pretty(&doc).unwrap()).unwrap_err();
    assert!(matches!(err, ScenarioError::Semantic { .. }), "got {err:?}");
}

#[test]
fn missing_provenance_is_a_located_parse_error() {
    let text = std::fs::read_to_string(shipped_file()).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    find_object_with(&mut doc, "provenance").unwrap().remove("provenance");
    let err = parse_scenario(&serde_json::to_string_pretty(&doc).unwrap()).unwrap_err();
    match err {
        ScenarioError::Parse { line, column, message } => {
            assert!(line > 1 && column > 0, "line {line}, column {column}");
            assert!(message.contains("provenance"), "{message}");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
    let err = parse_scenario("{ \"name\": ").unwrap_err();
    assert!(matches!(err, ScenarioError::Parse { line: 1, .. }));
}

fn has_json_number(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(_) => true,
        serde_json::Value::Array(items) => items.iter().any(has_json_number),
        serde_json::Value::Object(map) => map.values().any(has_json_number),
        _ => false,
    }
}

#[test]
fn report_json_round_trips_with_rationals_as_strings() {
    for (name, n) in [("jz-canonical-class", RunN::Symbolic), ("normal-cone-quadric", RunN::At(4))] {
        let report = run_scenario(name, &n).unwrap();
        let text = report.to_json();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
        for check in raw["checks"].as_array().unwrap() {
            assert!(!has_json_number(&check["expected"]), "{name}: {}", check["expected"]);
            assert!(!has_json_number(&check["computed"]), "{name}: {}", check["computed"]);
        }
    }
}

#[test]
fn tables_are_independent_of_n_where_expected() {
    let s = builtin_scenario("jz-intersection-table").unwrap();
    let t3 = s.table(&RunN::At(3)).unwrap();
    let t4 = s.table(&RunN::At(4)).unwrap();
    assert_eq!(t3.rows, t4.rows);
    assert_eq!(t3.rows.len(), 4);
    assert_eq!(t3.columns.len(), 4);
    let kernel = builtin_scenario("ez-kernel-x2-x3").unwrap().table(&RunN::Symbolic).unwrap();
    assert!(kernel.render_text().contains("x2 - x3"));
    assert!(matches!(
        builtin_scenario("local-model-stabilizers").unwrap().table(&RunN::At(3)),
        Err(ScenarioError::NoDisplay(..))
    ));
}

#[test]
fn chain_cone_lists_its_hypotheses() {
    let cone = builtin_scenario("mori-chain-jz").unwrap().cone(&RunN::Symbolic).unwrap();
    assert_eq!(cone.generators.len(), 4);
    assert!(!cone.hypotheses.is_empty());
    assert!(cone.hypotheses.iter().all(|h| h.holds));
}

/// `K·Γ` against the four generators of the cone of `Ĵ_Z`, recomputed from
/// the restricted canonical class and the table rows at several `n`.
#[test]
fn canonical_pairings_match_the_printed_table() {
    let table = builtin_scenario("jz-intersection-table").unwrap();
    let canonical = builtin_scenario("jz-canonical-class").unwrap();
    for k in 3..=7 {
        let rows = table.table(&RunN::At(k)).unwrap().rows;
        let report = canonical.run(&RunN::At(k)).unwrap();
        let Value::Vector(kvec) = &report.check("K_Ihat restricted to Jhat_Z").unwrap().computed else {
            panic!("the restricted canonical class is a vector");
        };
        let pairings: Vec<Rat> = rows
            .iter()
            .map(|r| r.entries.iter().zip(kvec).map(|(a, b)| a.eval(&Rat::zero()) * b.eval(&Rat::zero())).sum())
            .collect();
        let Value::Vector(printed) = &report.check("K pairings").unwrap().computed else {
            panic!("K pairings is a vector");
        };
        let printed: Vec<Rat> = printed.iter().map(|p| p.eval(&Rat::zero())).collect();
        assert_eq!(pairings, printed, "n = {k}");
    }
}
