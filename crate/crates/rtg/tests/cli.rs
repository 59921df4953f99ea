//! End-to-end checks of the `rtg` binary: exit codes, file round-trips
//! and deterministic reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rtg"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_tmp(name: &str, contents: &str) -> PathBuf {
    let path = tmp(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const P4_RTG: &str = "RTG 1 n=4\n1\n01\n001\n";

#[test]
fn build_roundtrips_and_reports_parse_errors() {
    let rts = write_tmp("p3.rts", "RTS 1 k=2 n=3\n0 a=0 e=-\n1 a=1 e=0\n2 a=0 e=1\n");
    let rtg = tmp("p3.rtg");
    let out = bin()
        .args(["build", rts.to_str().unwrap(), "-o", rtg.to_str().unwrap(), "--format", "text"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&rtg).unwrap();
    assert_eq!(text, "RTG 1 n=3\n1\n01\n");

    // emitted files are re-readable
    let out = bin().args(["graph-info", rtg.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"edges\": 2"));

    // malformed header: exit 2 and a line/column diagnostic on stderr
    let bad = write_tmp("bad.rts", "RTX 1 k=1 n=0\n");
    let out = bin().args(["build", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn recognize_exit_codes_and_witness_roundtrip() {
    let p4 = write_tmp("p4.rtg", P4_RTG);

    let out = bin().args(["recognize", p4.to_str().unwrap(), "--k", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "P4 is not an ordered 1-rainbow graph");

    let out = bin().args(["recognize", p4.to_str().unwrap(), "--k", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["member"], true);
    assert_eq!(report["min_index"], 3);

    // the witness round-trips through `build` back to the input graph
    let witness = write_tmp("witness.json", &report["witness"].to_string());
    let rebuilt = tmp("rebuilt.rtg");
    let out = bin()
        .args([
            "build",
            witness.to_str().unwrap(),
            "-o",
            rebuilt.to_str().unwrap(),
            "--format",
            "text",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read_to_string(&rebuilt).unwrap(), P4_RTG);

    // in natural order P4 needs 3 colors, but some ordering needs only 2
    let out = bin()
        .args(["recognize", p4.to_str().unwrap(), "--k", "2", "--up-to-iso"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn budget_exhaustion_exits_3() {
    let c9 = {
        let mut rows = String::from("RTG 1 n=9\n");
        for j in 1..9 {
            for i in 0..j {
                let edge = i + 1 == j || (i == 0 && j == 8);
                rows.push(if edge { '1' } else { '0' });
            }
            rows.push('\n');
        }
        write_tmp("c9.rtg", &rows)
    };
    let out = bin()
        .args([
            "recognize",
            c9.to_str().unwrap(),
            "--k",
            "2",
            "--up-to-iso",
            "--budget-orderings",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));

    let out = bin()
        .args(["enum", "--k", "2", "--n", "8", "--budget-sequences", "1000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn experiments_are_deterministic_and_validated() {
    let cfg = write_tmp(
        "cfg.json",
        r#"[{"experiment":"zero-one","k":1,"n":6},
            {"experiment":"nongood-fraction","k":1,"n":12,"ell":3,"trials":500,"seed":7}]"#,
    );
    let a = bin().args(["experiment", cfg.to_str().unwrap()]).output().unwrap();
    assert!(a.status.success());
    let b = bin().args(["experiment", cfg.to_str().unwrap()]).output().unwrap();
    assert_eq!(a.stdout, b.stdout, "same config and seed must give identical bytes");
    let reports: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(reports[0]["metrics"][0]["count"], 16);
    assert_eq!(reports[0]["metrics"][0]["population"], 32);

    let bad = write_tmp("bad_cfg.json", r#"[{"experiment":"mystery","k":1,"n":4}]"#);
    let out = bin().args(["experiment", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_and_witness_commands() {
    let out = bin()
        .args(["bounds", "--k", "1", "--n", "16", "--ell", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["delta"]["num"], "1");
    assert_eq!(json["delta"]["den"], "2");

    let out = bin().args(["bounds", "--k", "1", "--n", "16", "--ell", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let seq_path = tmp("witness.rts");
    let out = bin()
        .args([
            "witness", "--k", "1", "--n", "384", "--ell", "8",
            "--emit-seq", seq_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["certified"], true);
    // the emitted sequence is itself re-readable and ell-good
    let out = bin()
        .args(["good", seq_path.to_str().unwrap(), "--ell", "8"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["ell_good"], true);
}
