//! Golden-file and exit-code tests for the command-line front end.
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chevalley"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    let actual = String::from_utf8(out.stdout).unwrap();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(actual, expected, "output of {args:?} differs from {name}");
}

#[test]
fn classify_sp2_over_real_quadratic() {
    golden(
        "classify_c2_r1_2.txt",
        &[
            "classify",
            "--type",
            "C",
            "--rank",
            "2",
            "--field",
            "deg=2,r1=2,r2=0",
        ],
    );
    golden(
        "classify_c2_r1_2.json",
        &[
            "--json",
            "classify",
            "--type",
            "C",
            "--rank",
            "2",
            "--field",
            "deg=2,r1=2,r2=0",
        ],
    );
}

#[test]
fn classify_sl3_over_q() {
    golden(
        "classify_a2_q.json",
        &[
            "classify",
            "--type",
            "A",
            "--rank",
            "2",
            "--field",
            "deg=1,r1=1,r2=0",
            "--json",
        ],
    );
}

#[test]
fn classify_f4_over_q_is_conditional() {
    golden(
        "classify_f4_q.txt",
        &[
            "classify",
            "--type",
            "F",
            "--rank",
            "4",
            "--field",
            "deg=1,r1=1,r2=0",
        ],
    );
    golden(
        "classify_f4_q_assume_false.json",
        &[
            "--json",
            "--policy-f4",
            "false",
            "classify",
            "--type",
            "F",
            "--rank",
            "4",
        ],
    );
}

#[test]
fn kerb_and_fsp() {
    golden(
        "kerb_c2_r1_3.txt",
        &[
            "kerb",
            "--type",
            "C",
            "--rank",
            "2",
            "--field",
            "deg=3,r1=3,r2=0",
        ],
    );
    golden(
        "kerb_c2_r1_3.json",
        &[
            "--json",
            "kerb",
            "--type",
            "C",
            "--rank",
            "2",
            "--field",
            "deg=3,r1=3,r2=0",
        ],
    );
    golden(
        "fsp_b3_q.json",
        &[
            "--json",
            "fsp",
            "--type",
            "B",
            "--rank",
            "3",
            "--field",
            "deg=1,r1=1,r2=0",
        ],
    );
}

#[test]
fn qform_check() {
    golden(
        "qform_check.txt",
        &["qform-check", "1,1,1,1", "-1,-1,-1,-1"],
    );
    golden(
        "qform_check.json",
        &["--json", "qform-check", "1,1,1,1", "-1,-1,-1,-1"],
    );
}

#[test]
fn witnesses() {
    golden(
        "witness_b5_q.txt",
        &["witness", "--type", "B", "--rank", "5"],
    );
    golden(
        "witness_e8_q.json",
        &["--json", "witness", "--type", "E", "--rank", "8"],
    );
}

#[test]
fn examples_table() {
    golden("examples.txt", &["examples"]);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = [
        "--json",
        "classify",
        "--type",
        "D",
        "--rank",
        "6",
        "--field",
        "deg=4,r1=2,r2=1",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("chevalley-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn tampered_fixture_fails() {
    let path = write_temp(
        "tampered.txt",
        "Spin(6,6)(Z);D_6;deg=1,r1=1,r2=0;solitary_or_ngr\n",
    );
    let out = run(&["examples", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn missing_or_empty_fixture_exits_3() {
    let empty = write_temp("empty.txt", "# nothing here\n");
    assert_eq!(
        run(&["examples", "--fixtures", empty.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["examples", "--fixtures", "/nonexistent/examples.txt"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn argument_errors_exit_2() {
    assert_eq!(
        run(&["classify", "--type", "B", "--rank", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "--type", "X", "--rank", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "classify",
            "--type",
            "A",
            "--rank",
            "2",
            "--field",
            "deg=3,r1=1,r2=0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "--policy-a1",
            "maybe",
            "classify",
            "--type",
            "A",
            "--rank",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["qform-check", "1,0", "1,1"]).status.code(), Some(2));
}

#[test]
fn witness_outside_not_solitary_exits_1() {
    assert_eq!(
        run(&["witness", "--type", "A", "--rank", "2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn crossval_single_case() {
    let out = run(&["--json", "crossval", "--type", "B", "--rank", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["agree"], true);
}
