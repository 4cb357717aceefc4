use proptest::prelude::*;
use scattered::cli::run;
use scattered::constructions::*;
use serde_json::Value;
use std::path::{Path, PathBuf};

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn check(name: &str, value: &Value) {
    let path = schema_dir().join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap_or_else(|e| panic!("{name}: {e}"));
    let errors: Vec<String> = validator.iter_errors(value).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}\n{value}");
}

fn output(schema: &str, args: &str) {
    let out = run(["scattered", "--json"].into_iter().chain(args.split_whitespace()));
    let value: Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args}: {e}"));
    check(schema, &value);
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("scattered-schemas-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    check(name.trim_end_matches(".json"), &serde_json::from_str(body).unwrap());
    path.display().to_string()
}

#[test]
fn command_outputs() {
    output("rank", "rank w^2+w*");
    output("blocks", "blocks w+3+w* --level 1");
    output("blocks", "blocks z+omega(z) --level 1");
    output("blocks", "blocks w^2+w --level 2");
    output("condense", "condense w^2+w --iterations 2");
    output("bf", "bf w w+w --level 3");
    output("bf", "bf w+w w --level 2");
    output("bf", "bf 3 3 --level 1 --stability");
    output("bf", "bf 3 4 --level 1 --tuple-c 1 --stability");
    output("iso", "iso w^2 omega(w+1)");
    output("iso", "iso 3 4");
    for t in ["w", "w*", "w+w*", "2+z+1", "w+w", "w+3+w*+w"] {
        output("scott", &format!("scott {t}"));
    }
    for t in ["5", "w+w", "w^2", "w^2+w^2"] {
        output("classify", &format!("classify {t}"));
    }
    output("oracle", "oracle bf-finite --max-size 3 --max-level 2");
    output("selftest", "selftest --criterion 6");
    output("error", "rank w+");
    output("error", "bf w w --level 9");
}

#[test]
fn simulate_outputs() {
    let family = scratch(
        "family.json",
        r#"{"schedules": {"0": {"finite": [2, 5]}, "1": {"periodic": {"start": 1, "period": 2}}, "3": {"finite": []}}}"#,
    );
    let table = scratch(
        "table.json",
        r#"{"rows": [{"n": 0, "x": 1, "y_rule": {"period": 2, "holes": [1]}}, {"n": 1, "x": 0, "y_rule": "all"}, {"n": 1, "x": 2, "y_rule": "none"}]}"#,
    );
    output("simulate", &format!("simulate pi3 --family {family} --stages 6"));
    output("simulate", &format!("simulate pi3 --family {family} --stages 12 --sparse"));
    for v in Sigma3Variant::ALL {
        output("simulate", &format!("simulate sigma3 --variant {} --family {family} --stages 12", v.name()));
    }
    output("simulate", &format!("simulate priority --n 2 --family {family} --stages 12"));
    output("simulate", &format!("simulate blockred --table {table} --stages 12"));
    output("simulate", &format!("simulate blockred --table {table} --stages 12 --target 3+w+1"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn run_logs(start in 1u64..4, period in 1u64..4, stages in 1u64..16, n in 1u64..3) {
        let f = EnumerationFamily::new([(1, Schedule::Periodic { start, period }), (0, Schedule::Finite(vec![3]))]);
        for r in [
            run_pi3_omega(&f, stages.min(8)).unwrap(),
            run_sigma3_limit(&f, stages, Sigma3Variant::OmegaPlusZeta).unwrap(),
            run_priority(&f, n, stages).unwrap(),
        ] {
            check("run", &serde_json::from_str(&r.to_json()).unwrap());
        }
    }
}

#[test]
fn schemas_reject_malformed_documents() {
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_dir().join("family.schema.json")).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    assert!(!validator.is_valid(&serde_json::json!({"schedules": {"0": {"periodic": {"start": 0, "period": 1}}}})));
    assert!(!validator.is_valid(&serde_json::json!({"schedules": {"x": {"finite": [1]}}})));
    assert!(validator.is_valid(&serde_json::json!({"schedules": {}})));
}
