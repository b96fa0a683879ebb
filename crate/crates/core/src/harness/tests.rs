use super::*;

fn scratch_store() -> (tempfile::TempDir, FixtureStore) {
    let dir = tempfile::tempdir().unwrap();
    let store = FixtureStore::new(dir.path().to_path_buf());
    (dir, store)
}

fn strip_elapsed(mut json: Json) -> Json {
    if let Some(obj) = json.as_object_mut() {
        obj.remove("elapsed_ms");
    }
    json
}

#[test]
fn names_round_trip() {
    for name in SuiteName::ALL {
        assert_eq!(name.as_str().parse::<SuiteName>().unwrap(), name);
    }
    assert!(matches!("lemma99".parse::<SuiteName>(), Err(HarnessError::UnknownSuite(_))));
}

#[test]
fn every_suite_passes_at_r2() {
    let (_dir, store) = scratch_store();
    for name in SuiteName::ALL {
        let spec = SuiteSpec::new(name, 2).with_trials(5);
        let report = run_suite_with(&spec, &store).unwrap();
        assert_eq!(report.status, Status::Pass, "{}", emit_report(&report, Format::Text));
        assert!(report.checks_run > 0, "{name}");
    }
}

#[test]
fn report_fields_are_ordered_and_versioned() {
    let (_dir, store) = scratch_store();
    let report = run_suite_with(&SuiteSpec::new(SuiteName::Cor33, 2), &store).unwrap();
    let text = emit_report(&report, Format::Json);
    let json: Json = serde_json::from_str(&text).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["status"], "pass");
    assert!(json.get("reason").is_none());
    let first = text.lines().nth(1).unwrap().trim();
    assert!(first.starts_with("\"schema_version\""), "{first}");
    let last = text.lines().rev().nth(1).unwrap().trim();
    assert!(last.starts_with("\"elapsed_ms\""), "{last}");
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn out_of_range_r_is_unsupported() {
    let (_dir, store) = scratch_store();
    let report = run_suite_with(&SuiteSpec::new(SuiteName::Lemma32, 1), &store).unwrap();
    assert_eq!(report.status, Status::Unsupported);
    assert!(report.reason.is_some());
    assert_eq!(report.exit_code(), 2);
    let ring = SuiteSpec::new(SuiteName::Lemma32, 2).with_ring("Z");
    assert_eq!(run_suite_with(&ring, &store).unwrap().status, Status::Unsupported);
    assert!(run_suite_with(&SuiteSpec::new(SuiteName::Orbit, 2).with_ring("nonsense"), &store).is_err());
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let (_dir, store) = scratch_store();
    let spec = SuiteSpec::new(SuiteName::Lemma31, 2).with_seed(7).with_trials(40);
    let a = serde_json::to_value(run_suite_with(&spec, &store).unwrap()).unwrap();
    let b = serde_json::to_value(run_suite_with(&spec, &store).unwrap()).unwrap();
    assert_eq!(strip_elapsed(a), strip_elapsed(b));
}

#[test]
fn combined_status_takes_the_worst() {
    let (_dir, store) = scratch_store();
    let pass = run_suite_with(&SuiteSpec::new(SuiteName::Cor33, 2), &store).unwrap();
    let unsupported = run_suite_with(&SuiteSpec::new(SuiteName::Cor33, 1), &store).unwrap();
    assert_eq!(combined_status(std::slice::from_ref(&pass)), Status::Pass);
    assert_eq!(combined_status(&[pass.clone(), unsupported.clone()]), Status::Unsupported);
    let mut failed = pass;
    failed.status = Status::Fail;
    assert_eq!(combined_status(&[unsupported, failed]), Status::Fail);
}

#[test]
fn a_changed_fixture_fails_the_suite() {
    let (_dir, store) = scratch_store();
    let spec = SuiteSpec::new(SuiteName::Orbit, 1).with_ring("Zmod:9");
    assert_eq!(run_suite_with(&spec, &store).unwrap().status, Status::Pass);
    let path = store.dir().join("orbit-zmod9-r1.json");
    let mut pinned: Json = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    pinned["value"]["vectors"] = 1.into();
    pinned["sha256"] = fixture_hash(&pinned["value"]).into();
    std::fs::write(&path, serde_json::to_string_pretty(&pinned).unwrap()).unwrap();
    let report = run_suite_with(&spec, &store).unwrap();
    assert_eq!(report.status, Status::Fail);
    assert_eq!(report.exit_code(), 1);
}
