use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn pqclab(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pqclab"));
    cmd.args(args)
        .current_dir(fixtures())
        .env_remove("PQCLAB_TOL");
    cmd
}

fn run(args: &[&str]) -> Output {
    pqclab(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn exit_codes_follow_the_contract() {
    let cases: &[(&[&str], i32)] = &[
        (&["classify", "completely_depolarizing.json"], 0),
        (
            &[
                "check-pqc",
                "condexp_delta2.json",
                "ket0_states.json",
                "half_identity.json",
            ],
            0,
        ),
        (&["trace-vectors", "full2.json", "--onb"], 0),
        (&["classify", "malformed.json"], 1),
        (&["classify", "no_such_file.json"], 1),
        (
            &[
                "trace-vectors",
                "delta2.json",
                "--check",
                "equator_states.json",
            ],
            1,
        ),
        (&["classify", "amplitude_damping.json"], 2),
        (&["classify", "depolarizing_qutrit.json"], 2),
        (
            &[
                "check-pqc",
                "depolarizing_qutrit.json",
                "ket0_states.json",
                "half_identity.json",
            ],
            2,
        ),
        (&["trace-vectors", "non_unital.json", "--onb"], 2),
        (&["condexp", "non_unital.json"], 2),
        (
            &[
                "trace-vectors",
                "frame_n2_algebra.json",
                "--rho0",
                "half_identity.json",
            ],
            2,
        ),
        (
            &["condexp", "frame_n2_algebra.json", "--emit", "transfer"],
            2,
        ),
        (&["classify"], 1),
        (
            &[
                "trace-vectors",
                "delta2.json",
                "--onb",
                "--rho0",
                "half_identity.json",
            ],
            1,
        ),
    ];
    for (args, expected) in cases {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(*expected),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        if !out.stdout.is_empty() {
            assert_eq!(report(&out)["exit_code"], *expected, "{args:?}");
        }
    }
}

#[test]
fn false_verdict_is_not_an_error() {
    let out = run(&[
        "check-pqc",
        "condexp_delta2.json",
        "ket0_states.json",
        "half_identity.json",
    ]);
    let r = report(&out);
    assert_eq!(r["result"]["private"], false);
    assert_eq!(r["result"]["residuals"][0], 0.5);
    assert!(out.stderr.is_empty());
}

#[test]
fn dash_reads_standard_input() {
    let mut child = pqclab(&["classify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"kind": "named", "name": "dephasing_z"}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["tag"], "GreatCircle");
}

#[test]
fn flag_tolerance_wins_over_environment() {
    let out = pqclab(&["classify", "identity.json"])
        .env("PQCLAB_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(report(&out)["tolerance"], 1e-6);
    let out = pqclab(&["classify", "identity.json", "--tol", "1e-8"])
        .env("PQCLAB_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(report(&out)["tolerance"], 1e-8);
    let out = run(&["classify", "identity.json"]);
    assert_eq!(report(&out)["tolerance"], 1e-9);
    let out = run(&["classify", "identity.json", "--tol", "-1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_changes_verdicts() {
    // equator state perturbed by 1e-7 in amplitude
    let dir = tempfile::tempdir().unwrap();
    let states = dir.path().join("states.json");
    let a = std::f64::consts::FRAC_1_SQRT_2;
    let (x, y) = (a + 1e-7, (1.0 - (a + 1e-7) * (a + 1e-7)).sqrt());
    std::fs::write(&states, format!(r#"{{"states": [[[{x}, 0], [{y}, 0]]]}}"#)).unwrap();
    let states = states.to_str().unwrap();
    let strict = run(&[
        "check-pqc",
        "condexp_delta2.json",
        states,
        "half_identity.json",
    ]);
    let loose = run(&[
        "--tol",
        "1e-5",
        "check-pqc",
        "condexp_delta2.json",
        states,
        "half_identity.json",
    ]);
    assert_eq!(report(&strict)["result"]["private"], false);
    assert_eq!(report(&loose)["result"]["private"], true);
}

#[test]
fn samples_are_written_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("samples.csv");
    let out = run(&[
        "classify",
        "condexp_delta2.json",
        "--samples",
        "16",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["samples"]["count"], 16);
    let table = std::fs::read_to_string(&path).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("theta,phi,rx,ry,rz,re0,im0,re1,im1"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 16);
    for row in &rows {
        // equator: polar angle π/2, rz = 0, |amplitudes|² = 1/2 each
        assert!((row[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!(row[4].abs() < 1e-12);
        assert!((row[5] * row[5] + row[6] * row[6] - 0.5).abs() < 1e-12);
    }
}

#[test]
fn antipodal_pair_for_pauli_mixture() {
    let r = report(&run(&["classify", "pauli_mixture.json", "--samples", "10"]));
    assert_eq!(r["result"]["tag"], "AntipodalPair");
    assert_eq!(
        r["result"]["states"][0]["bloch"],
        serde_json::json!([1.0, 0.0, 0.0])
    );
    assert_eq!(
        r["result"]["states"][1]["bloch"],
        serde_json::json!([-1.0, 0.0, 0.0])
    );
    assert_eq!(r["result"]["samples"]["count"], 2);
}

#[test]
fn help_goes_to_stdout_with_success() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("trace-vectors"));
}
