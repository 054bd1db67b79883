//! End-to-end tests of the `d2dyn` binary and the scenario/CSV surfaces.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use d2tcp_dynamics::analysis::Observable;
use d2tcp_dynamics_cli::commands;
use d2tcp_dynamics_cli::scenario::{load_scenario, parse_scenario, serialize_scenario};

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn run_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_d2dyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn period_prints_three_for_case1() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("period.csv");
    let scenario = scenario_dir().join("case1.toml");
    let result = run_bin(&[
        "period",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    assert_eq!(String::from_utf8_lossy(&result.stdout).trim(), "period=3");
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("period,tolerance\n3,"), "{csv}");
}

#[test]
fn orbit_writes_header_samples_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("orbit.csv");
    let scenario = scenario_dir().join("case1.toml");
    let result = run_bin(&[
        "orbit",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--svg",
    ]);
    assert!(result.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "k,window,alpha,queue,marked,rtt_s");
    assert_eq!(lines.count(), 1000);
    let svg = std::fs::read_to_string(out.with_extension("svg")).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn bifurcate_without_sweep_fails_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bif.csv");
    let scenario = scenario_dir().join("case1.toml");
    let result = run_bin(&[
        "bifurcate",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(!result.status.success());
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("[sweep]"), "{stderr}");
}

#[test]
fn unknown_scenario_key_fails_closed() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    let base = std::fs::read_to_string(scenario_dir().join("case1.toml")).unwrap();
    std::fs::write(&bad, format!("{base}\n[extras]\nfoo = 1\n")).unwrap();
    let out = dir.path().join("x.csv");
    let result = run_bin(&[
        "orbit",
        "--scenario",
        bad.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(!result.status.success());
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("extras"), "{stderr}");
}

#[test]
fn invalid_bound_names_the_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    let base = std::fs::read_to_string(scenario_dir().join("case1.toml")).unwrap();
    std::fs::write(&bad, base.replace("g = 0.037", "g = 1.5")).unwrap();
    let out = dir.path().join("x.csv");
    let result = run_bin(&[
        "orbit",
        "--scenario",
        bad.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(!result.status.success());
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("g must lie strictly between 0 and 1"), "{stderr}");
}

#[test]
fn unknown_command_is_a_usage_error() {
    let result = run_bin(&["simulate"]);
    assert!(!result.status.success());
}

#[test]
fn non_sweep_commands_reject_sweep_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let scenario = scenario_dir().join("fig5.toml");
    for command in ["orbit", "cobweb", "period", "red-curve", "lyapunov"] {
        let result = run_bin(&[
            command,
            "--scenario",
            scenario.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(!result.status.success(), "{command} must reject a sweep scenario");
        let stderr = String::from_utf8_lossy(&result.stderr);
        assert!(stderr.contains("not a sweep command"), "{command}: {stderr}");
    }
}

const RED_SCENARIO: &str = r#"
[link]
capacity_bps = 10e9
prop_delay_s = 30e-6
packet_size_bits = 8192.0
buffer_packets = 200.0
threshold_packets = 15.0

[sender]
g = 0.0625
gamma = 1.0

[marking]
kind = "red"

[marking.red]
weight = 0.3
q_min_packets = 10.0
q_max_packets = 40.0
p_max = 0.8

[run]
transient = 1000
samples = 200
"#;

#[test]
fn red_scenarios_run_orbits_but_not_lyapunov() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("red.toml");
    std::fs::write(&path, RED_SCENARIO).unwrap();

    let out = dir.path().join("orbit.csv");
    let result = run_bin(&[
        "orbit",
        "--scenario",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());

    let out = dir.path().join("red.csv");
    let result = run_bin(&[
        "red-curve",
        "--scenario",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("avg_queue,probability\n"));

    let out = dir.path().join("ly.csv");
    let result = run_bin(&[
        "lyapunov",
        "--scenario",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(!result.status.success());
    assert!(String::from_utf8_lossy(&result.stderr).contains("threshold marking"));
}

#[test]
fn all_shipped_scenarios_load_and_round_trip() {
    let mut seen = 0;
    for entry in std::fs::read_dir(scenario_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("toml") {
            continue;
        }
        seen += 1;
        let scenario = load_scenario(&path)
            .unwrap_or_else(|e| panic!("{} failed to load: {e:#}", path.display()));
        let reparsed = parse_scenario(&serialize_scenario(&scenario)).unwrap();
        assert_eq!(scenario, reparsed, "round trip differs for {}", path.display());
    }
    assert_eq!(seen, 8, "expected the eight shipped scenarios");
}

#[test]
fn csv_headers_match_the_declared_schemas() {
    let case1 = load_scenario(&scenario_dir().join("case1.toml")).unwrap();
    let fig5 = load_scenario(&scenario_dir().join("fig5.toml")).unwrap();

    let header = |s: &str| s.lines().next().unwrap().to_string();

    assert_eq!(
        header(&commands::orbit(&case1, Observable::Window, false).unwrap().csv),
        "k,window,alpha,queue,marked,rtt_s"
    );
    let mut small = fig5.clone();
    if let Some(sweep) = &mut small.sweep {
        sweep.to = sweep.from + sweep.step * 10.0;
    }
    small.transient = 200;
    small.samples = 50;
    assert_eq!(
        header(&commands::bifurcate(&small, false, false, false).unwrap().csv),
        "param,observable,kind"
    );
    assert_eq!(
        header(&commands::return_map_cmd(&case1, Observable::Window, 1, false).unwrap().csv),
        "x,y"
    );
    assert_eq!(
        header(&commands::cobweb_cmd(&case1, Observable::Window, false).unwrap().csv),
        "x1,y1,x2,y2"
    );
    assert_eq!(
        header(
            &commands::map_graph_cmd(&case1, Observable::Window, None, (None, None), 16, false)
                .unwrap()
                .csv
        ),
        "input,output"
    );
    assert_eq!(
        header(&commands::red_curve(&case1, 16, false).unwrap().csv),
        "avg_queue,probability"
    );
    assert_eq!(
        header(&commands::period(&case1, Observable::Window, 1e-6, 32).unwrap().csv),
        "period,tolerance"
    );
    assert_eq!(
        header(&commands::lyapunov(&case1, 2000, 1e-8).unwrap().csv),
        "exponent,iterations"
    );
}
