use std::path::PathBuf;
use std::process::{Command, Output};

use quartic_core::scenarios::{Report, Status};

fn quartic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic")).args(args).output().expect("binary runs")
}

fn session(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "sessions", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quartic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn builtin_suite_passes() {
    let o = quartic(&["verify", "--paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 25);
    assert!(!text.contains("FAIL"));
}

#[test]
fn walls_for_quartics() {
    let o = quartic(&["walls", "4", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "alpha=3: (1,1,no-section)+(3,0,section)");
    let o = quartic(&["walls", "3", "1"]);
    assert!(stdout(&o).contains("no walls"));
}

#[test]
fn hilb_on_session_file() {
    let s = session("ci_quartic.qs");
    let o = quartic(&[&s, "hilb"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4*m");
    let o = quartic(&["--session", &s, "hilb", "C", "--window", "0..3"]);
    assert!(stdout(&o).contains("[1, 4, 8, 12]"));
}

#[test]
fn run_executes_session_commands() {
    let o = quartic(&[&session("line_cubic.qs")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("O <- O(-3)+2O(-2) <- O(-4)+O(-3)"));
    assert!(text.trim_end().ends_with('1'));
}

#[test]
fn parse_errors_exit_2_with_location() {
    let o = quartic(&[&session("bad_degree.qs"), "hilb"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:11"));
    assert_eq!(quartic(&["hilb", "F9"]).status.code(), Some(2));
    assert_eq!(quartic(&["--field", "Fp:7", "hilb", "F1"]).status.code(), Some(2));
    assert_eq!(quartic(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failing_claim_exits_1() {
    let p = temp_file(
        "wrong.toml",
        "[[claim]]\nid = \"ext1-e2b\"\nop = \"sheaf_ext\"\nargs = [\"F4\", \"F4\", 1]\nexpected = 18\n",
    );
    let o = quartic(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("computed=19") && text.contains("expected=18"), "{text}");
}

#[test]
fn json_reports_are_deterministic_and_round_trip() {
    let a = quartic(&["verify", "--paper", "--json"]);
    let b = quartic(&["verify", "--paper", "--json"]);
    let ra: Report = serde_json::from_slice(&a.stdout).unwrap();
    let rb: Report = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(ra.without_timing(), rb.without_timing());
    assert_eq!(ra.schema, "quartic-report/1");
    let again: Report = serde_json::from_str(&serde_json::to_string(&ra).unwrap()).unwrap();
    assert_eq!(again, ra);
    assert!(ra.claims.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn prime_field_and_widened_windows_agree() {
    let q: Report = serde_json::from_slice(&quartic(&["verify", "--paper", "--json"]).stdout).unwrap();
    let p: Report =
        serde_json::from_slice(&quartic(&["--field", "Fp:32003", "verify", "--paper", "--json"]).stdout).unwrap();
    assert_eq!(p.field, "Fp:32003");
    for (a, b) in q.claims.iter().zip(&p.claims) {
        assert_eq!((a.id.as_str(), &a.computed), (b.id.as_str(), &b.computed));
    }
    let w: Report = serde_json::from_slice(&quartic(&["verify", "--paper", "--widen", "3", "--json"]).stdout).unwrap();
    assert!(w.all_passed());
}

#[test]
fn gb_orders() {
    let o = quartic(&["gb", "F2a.I", "--order", "lex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = quartic(&["gb", "F4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], "grevlex");
}

#[test]
fn sheaf_commands() {
    assert_eq!(stdout(&quartic(&["sheafext", "F5.O_C0p_in", "F5.O_Lm1", "1"])).trim(), "4");
    let b = stdout(&quartic(&["beilinson", "res4"]));
    assert!(b.contains("type iii"), "{b}");
    assert!(stdout(&quartic(&["dual", "F4"])).starts_with("4*m-1"));
    let t = stdout(&quartic(&["tor", "F7.O_C0", "F7.O_L", "1", "--window", "0..3"]));
    assert!(t.starts_with("Tor^1"), "{t}");
    let c = stdout(&quartic(&["cohom", "F1", "--window=-1..1"]));
    assert!(c.contains("h^1"));
}
