//! End-to-end checks of the `chiralkit` binary: exit-status contract,
//! subcommand output, report determinism, and consistency of the bundled
//! scenario maps with their in-library constructors.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chiralkit"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn run_exit_statuses() {
    let ok = run(&["run", scenario("relations.toml").to_str().unwrap()], &[]);
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stdout)
    );

    let failing = run(&["run", scenario("corrupted.toml").to_str().unwrap()], &[]);
    assert_eq!(failing.status.code(), Some(1));
    let text = String::from_utf8_lossy(&failing.stdout);
    assert!(
        text.contains("FAIL"),
        "failure records carry witnesses: {text}"
    );
    assert!(text.contains("witness"), "{text}");

    let dir = std::env::temp_dir().join("chiralkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("malformed.toml");
    std::fs::write(&bad, "seed = [").unwrap();
    let malformed = run(&["run", bad.to_str().unwrap()], &[]);
    assert_eq!(malformed.status.code(), Some(2));

    let missing = run(&["run", dir.join("missing.toml").to_str().unwrap()], &[]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_for_equal_seeds() {
    let path = scenario("relations.toml");
    let a = run(&["run", path.to_str().unwrap(), "--seed", "9"], &[]);
    let b = run(&["run", path.to_str().unwrap()], &[("CHIRALKIT_SEED", "9")]);
    assert_eq!(a.stdout, b.stdout, "flag seed and env seed must agree");
    let c = run(&["run", path.to_str().unwrap(), "--seed", "9"], &[]);
    assert_eq!(a.stdout, c.stdout, "reruns are byte-identical");
}

#[test]
fn orthogonality_prints_the_relation_table() {
    let out = run(
        &[
            "orthogonality",
            scenario("relations.toml").to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "true\ntrue\nfalse\n");
}

#[test]
fn commutator_prints_the_worked_value() {
    let out = run(
        &[
            "commutator",
            scenario("laws_current.toml").to_str().unwrap(),
            "phi",
            "psi",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "-1/4 i\n");
}

#[test]
fn chiralize_detects_both_verdicts() {
    let moved = run(&["chiralize", "current", "plus"], &[]);
    assert!(String::from_utf8_lossy(&moved.stdout).starts_with("NOT_CHIRAL"));
    let fixed = run(&["chiralize", "pullback_plus", "plus"], &[]);
    assert_eq!(String::from_utf8_lossy(&fixed.stdout), "CHIRAL\n");
}

#[test]
fn zigzag_prints_five_morphisms_and_commutes() {
    let out = run(
        &[
            "zigzag",
            scenario("laws_current.toml").to_str().unwrap(),
            "onto_0_quarter",
            "onto_0_half",
            "onto_q_3q",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(
        text.lines().count(),
        6,
        "five morphisms plus the verdict: {text}"
    );
    assert!(text.trim_end().ends_with("commutes: yes"));
}

#[test]
fn bundled_maps_agree_with_the_canonical_charts() {
    use chiralkit::geometry::Interval;
    use chiralkit::maps1d::chart_onto;
    use chiralkit::rat::rat;
    let text = std::fs::read_to_string(scenario("laws_current.toml")).unwrap();
    let parsed = chiralkit::scenario::parse_scenario(&text).unwrap();
    let expect = [
        ("onto_01", (0, 1, 1)),
        ("onto_23", (2, 3, 1)),
        ("onto_m3m2", (-3, -2, 1)),
        ("onto_0_quarter", (0, 1, 4)),
        ("onto_half_3q", (2, 3, 4)),
        ("onto_m3q_mhalf", (-3, -2, 4)),
        ("onto_0_half", (0, 1, 2)),
        ("onto_q_3q", (1, 3, 4)),
    ];
    for (name, (lo, hi, den)) in expect {
        let target = Interval::bounded(rat(lo, den), rat(hi, den)).unwrap();
        assert_eq!(
            *parsed.map(name).unwrap(),
            chart_onto(&target),
            "bundled map `{name}` drifted from its chart"
        );
    }
}
