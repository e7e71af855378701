//! End-to-end CLI tests: commands, formats, exit codes, spec-file flow.

use std::process::{Command, Output};

fn cyclica(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclica"))
        .args(args)
        .output()
        .expect("cyclica binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn list_shows_builtins() {
    let out = cyclica(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "ground-field",
        "sweedler-h4",
        "z2-on-dual-numbers",
        "group-algebra:z6",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn compute_hc_ground_field_table() {
    let out = cyclica(&[
        "compute",
        "hc",
        "--algebra",
        "ground-field",
        "--max-degree",
        "4",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let hc: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap())
        .collect();
    assert_eq!(hc, vec!["1", "0", "1", "0"]);
}

#[test]
fn compute_hc_max_degree_zero_still_reports_degree_zero() {
    let out = cyclica(&[
        "compute",
        "hc",
        "--algebra",
        "dual-numbers",
        "--max-degree",
        "0",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().nth(1), Some("0,2,0,2,true"));
}

#[test]
fn compute_hc_equivariant_and_constant_agree() {
    let eq = cyclica(&[
        "compute",
        "hc",
        "--action",
        "z2-on-dual-numbers",
        "--complex",
        "equivariant",
        "--max-degree",
        "3",
        "--format",
        "csv",
    ]);
    let constant = cyclica(&[
        "compute",
        "hc",
        "--action",
        "z2-on-dual-numbers",
        "--complex",
        "constant",
        "--max-degree",
        "3",
        "--format",
        "csv",
    ]);
    assert!(eq.status.success() && constant.status.success());
    let dims = |o: &Output| {
        stdout(o)
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(3).unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(dims(&eq), vec!["2", "1", "2"]);
    assert_eq!(dims(&eq), dims(&constant));
}

#[test]
fn verify_theorem_passes_and_is_deterministic() {
    let args = [
        "verify",
        "theorem",
        "--action",
        "z2-on-dual-numbers",
        "--max-degree",
        "3",
        "--format",
        "json",
    ];
    let first = cyclica(&args);
    let second = cyclica(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&first.stdout).expect("valid json");
    assert_eq!(parsed["passed"], serde_json::Value::Bool(true));
    assert_eq!(parsed["subject"], "z2-on-dual-numbers");
}

#[test]
fn verify_all_on_h4() {
    let out = cyclica(&[
        "verify",
        "all",
        "--action",
        "h4-on-dual-numbers",
        "--max-degree",
        "2",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("all checks passed"));
}

#[test]
fn verify_corollary_with_trivial_z3() {
    let out = cyclica(&[
        "verify",
        "corollary",
        "--action",
        "trivial:group-algebra:z3-on-dual-numbers",
        "--max-degree",
        "2",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn validate_builtins_pass() {
    for name in ["sweedler-h4", "z2-on-dual-numbers", "group-algebra:z4"] {
        let out = cyclica(&["validate", name]);
        assert!(out.status.success(), "{name}");
    }
}

#[test]
fn unknown_name_exits_two() {
    let out = cyclica(&["compute", "hc", "--algebra", "no-such-algebra"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_algebra_requires_force() {
    let action = "trivial:group-algebra:z5-on-dual-numbers"; // crossed dim 10
    let refused = cyclica(&["compute", "hc", "--action", action, "--max-degree", "1"]);
    assert_eq!(refused.status.code(), Some(2));
    let forced = cyclica(&[
        "compute",
        "hc",
        "--action",
        action,
        "--max-degree",
        "1",
        "--force",
        "--format",
        "csv",
    ]);
    assert!(
        forced.status.success(),
        "{}",
        String::from_utf8_lossy(&forced.stderr)
    );
}

#[test]
fn equivariant_complex_requires_action() {
    let out = cyclica(&[
        "compute",
        "hc",
        "--algebra",
        "dual-numbers",
        "--complex",
        "equivariant",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spec_file_round_trip_through_cli() {
    use cyclica::specfile::SpecFile;
    let dir = std::env::temp_dir().join(format!("cyclica-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    // a valid algebra file computes
    let good = dir.join("dual.json");
    std::fs::write(
        &good,
        SpecFile::from_algebra(&cyclica::algebra::dual_numbers()).to_json_string(),
    )
    .unwrap();
    let out = cyclica(&[
        "compute",
        "hc",
        "--algebra",
        good.to_str().unwrap(),
        "--max-degree",
        "2",
        "--format",
        "csv",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout(&out).lines().nth(1), Some("0,2,0,2,true"));

    // an action file verifies
    let action = dir.join("z2-action.json");
    std::fs::write(
        &action,
        SpecFile::from_action(&cyclica::registry::z2_on_dual_numbers()).to_json_string(),
    )
    .unwrap();
    let out = cyclica(&[
        "verify",
        "lemma1",
        "--action",
        action.to_str().unwrap(),
        "--max-degree",
        "2",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // a corrupted file fails validation with exit 1
    let broken = dir.join("broken.json");
    let mut spec = SpecFile::from_algebra(&cyclica::algebra::dual_numbers());
    spec.algebra.unit = vec!["0".into(), "1".into()];
    std::fs::write(&broken, spec.to_json_string()).unwrap();
    let out = cyclica(&["validate", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // a scalar with a zero denominator is bad input: exit 2
    let bad_scalar = dir.join("bad-scalar.json");
    let mut spec = SpecFile::from_algebra(&cyclica::algebra::dual_numbers());
    spec.algebra.mul[0].c = "1/0".into();
    std::fs::write(&bad_scalar, spec.to_json_string()).unwrap();
    let out = cyclica(&["validate", bad_scalar.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::remove_dir_all(&dir).ok();
}
