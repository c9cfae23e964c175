use std::path::PathBuf;
use std::process::{Command, Output};

fn paranav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paranav"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scenario(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn classify_prints_degrees_and_state() {
    let o = paranav(&["classify", "--mu", "0.9", "--lambda", "0.1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("gce=0.8"), "{out}");
    assert!(out.contains("state=1 "), "{out}");

    let o = paranav(&[
        "classify",
        "--mu",
        "0.5",
        "--lambda",
        "0.5",
        "--thresholds",
        "0.6,-0.6,0.6,-0.6",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("state=5 "));
}

#[test]
fn classify_rejects_bad_input() {
    assert_eq!(
        paranav(&["classify", "--mu", "1.5", "--lambda", "0.1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        paranav(&[
            "classify",
            "--mu",
            "0.5",
            "--lambda",
            "0.1",
            "--thresholds",
            "0.5,-0.5"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn pwm_reports_pulse_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("wave.csv");
    let o = paranav(&[
        "pwm",
        "--angle",
        "180",
        "--calibration",
        "measured",
        "--periods",
        "2",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("measured_ms=2.040000"), "{out}");
    assert!(out.contains("samples_per_period=20000"), "{out}");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("sample_index,level"));
    assert_eq!(text.lines().count(), 1 + 40_000);
}

#[test]
fn motor_step_compares_with_closed_form() {
    let o = paranav(&["motor-step", "--voltage", "1", "--t", "1", "--dt", "1e-4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let get = |key: &str| -> f64 {
        out.lines()
            .find_map(|l| l.strip_prefix(key))
            .and_then(|v| v.parse().ok())
            .unwrap_or_else(|| panic!("{key} missing in {out}"))
    };
    assert!((get("omega_integrated=") - get("omega_analytic=")).abs() < 1e-9);
}

#[test]
fn motor_step_reads_parameter_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("motor.json");
    std::fs::write(
        &path,
        r#"{"la":0.5,"ra":1,"kb":1,"ki":1,"j":1,"b":0,"tl":0,"v_max":12}"#,
    )
    .unwrap();
    let o = paranav(&[
        "motor-step",
        "--params",
        path.to_str().unwrap(),
        "--voltage",
        "1",
        "--t",
        "0.5",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::write(
        &path,
        r#"{"la":-1,"ra":1,"kb":1,"ki":1,"j":1,"b":0,"tl":0,"v_max":12}"#,
    )
    .unwrap();
    let o = paranav(&[
        "motor-step",
        "--params",
        path.to_str().unwrap(),
        "--voltage",
        "1",
        "--t",
        "0.5",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_exit_codes_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let summary = dir.path().join("summary.json");
    let o = paranav(&[
        "simulate",
        &scenario("minimal.json"),
        "--trace",
        trace.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["result"], "completed");
    let rows = std::fs::read_to_string(&trace).unwrap().lines().count() as u64;
    assert_eq!(rows, 1 + s["ticks_used"].as_u64().unwrap());

    assert_eq!(paranav(&["simulate", "dead_end"]).status.code(), Some(4));
}

#[test]
fn simulate_reports_collision() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("crash.json");
    // every state drives straight ahead, into a wall across the corridor
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(scenario("minimal.json")).unwrap()).unwrap();
    v["world"]["walls"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"a": [2.0, -0.75], "b": [2.0, 0.75]}));
    let forward = serde_json::json!({"magnitude": 0.0, "drive": "forward"});
    let table: serde_json::Map<String, serde_json::Value> = [
        "true",
        "false",
        "inconsistent",
        "paracomplete",
        "quasi_true_tending_inconsistent",
        "quasi_inconsistent_tending_true",
        "quasi_true_tending_paracomplete",
        "quasi_paracomplete_tending_true",
        "quasi_false_tending_paracomplete",
        "quasi_paracomplete_tending_false",
        "quasi_false_tending_inconsistent",
        "quasi_inconsistent_tending_false",
    ]
    .into_iter()
    .map(|state| (state.to_string(), forward.clone()))
    .collect();
    v["actions"] = serde_json::Value::Object(table);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = paranav(&["simulate", path.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn validate_reports_problems() {
    assert_eq!(
        paranav(&["validate", &scenario("offset_box.json")])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(paranav(&["validate", "front_wall"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(scenario("minimal.json")).unwrap()).unwrap();
    v["max_ticks"] = serde_json::json!(0);
    v["dt"] = serde_json::json!(-1.0);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = paranav(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("max_ticks") && err.contains("dt"), "{err}");

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(
        paranav(&["validate", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        paranav(&["validate", "/nonexistent/scenario.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn preset_round_trips_through_validate() {
    let o = paranav(&["preset", "offset_box"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, &o.stdout).unwrap();
    assert_eq!(
        paranav(&["validate", path.to_str().unwrap()]).status.code(),
        Some(0)
    );
}
