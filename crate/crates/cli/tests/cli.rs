use std::process::{Command, Output};

use zwb_core::report::validate_json;
use zwb_core::status::Status;

fn zwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zwb")).args(args).env_remove("ZWB_FIELD").output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    let out = zwb(args);
    out.status.code().unwrap()
}

fn json(args: &[&str]) -> (i32, String) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let out = zwb(&a);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn check_algebra_exit_codes() {
    assert_eq!(code(&["check-algebra", "builtin:projective_space(2)"]), 0);
    assert_eq!(code(&["check-algebra", "builtin:dead_generator(3)"]), 1);
    assert_eq!(code(&["check-algebra", "builtin:projective_space(2)", "--window", "0,1"]), 2);
}

#[test]
fn zgen_exit_codes() {
    assert_eq!(code(&["zgen", "builtin:projective_space(1)"]), 0);
    assert_eq!(code(&["zgen", "builtin:projective_space(2)"]), 0);
    assert_eq!(code(&["zgen", "builtin:dead_generator(3)"]), 1);
}

#[test]
fn helix_runs() {
    let p1 = ["helix", "builtin:projective_space(1)", "--period", "2", "--shift", "2", "--thread", "6,1"];
    assert_eq!(code(&p1), 0);
    let (c, text) = json(&["helix", "builtin:projective_space(2)", "--period", "3", "--shift", "2", "--thread", "6,2"]);
    assert_eq!(c, 1);
    let r = validate_json(&text).unwrap();
    let h = r.checks.iter().find(|c| c.name == "(3,2)-helix").unwrap();
    assert_eq!(h.status, Status::Fail);
    assert!(h.reason.as_ref().unwrap().contains("shift mismatch"));
    assert_eq!(r.seed, Some(11));
    assert_eq!(code(&["helix", "builtin:projective_space(2)", "--period", "3", "--shift", "3", "--thread", "6,2"]), 0);
}

#[test]
fn deform_runs() {
    let (c, text) = json(&["deform", "builtin:quantum_projective_space_eps(2,1,2,3)", "--thread", "4,2"]);
    assert_eq!(c, 0);
    let r = validate_json(&text).unwrap();
    assert_eq!(r.checks.len(), 8);
    let (c, text) = json(&["deform", "builtin:quantum_projective_space_eps(1)", "--thread", "4,1"]);
    assert_eq!(c, 0);
    let r = validate_json(&text).unwrap();
    let g = r.checks.iter().find(|c| c.name == "window gauge class").unwrap();
    assert_eq!(g.reason.as_deref(), Some("gauge-trivial"));
    assert_eq!(g.witness["verified"], true);
    assert_eq!(code(&["deform", "builtin:nonflat_fixture", "--thread", "2,1"]), 1);
    assert_eq!(code(&["deform", "builtin:projective_space(1)", "--thread", "4,1"]), 1);
}

#[test]
fn malformed_deformation_is_rejected() {
    let dir = std::env::temp_dir().join(format!("zwb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = zwb(&["generate", "projective_space(1)"]);
    let mut text = String::from_utf8(out.stdout).unwrap();
    text.push_str("\n[deformation]\n0: 1 x0\n");
    let path = dir.join("bad.zwb");
    std::fs::write(&path, text).unwrap();
    let out = zwb(&["deform", path.to_str().unwrap(), "--thread", "4,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not homogeneous"));
}

#[test]
fn qhom_runs() {
    assert_eq!(code(&["qhom", "builtin:projective_space(1)", "--from", "1", "--to", "0"]), 0);
    let (c, text) = json(&["qhom", "builtin:projective_space(1)", "--from", "0", "--to", "0", "--torsion-above", "3"]);
    assert_eq!(c, 0);
    assert_eq!(validate_json(&text).unwrap().checks[0].witness["stable_dim"], 0);
    assert_eq!(code(&["qhom", "builtin:projective_space(1)", "--from", "0", "--to", "0", "--window", "0,1"]), 2);
}

#[test]
fn generated_corpus_round_trips() {
    let dir = std::env::temp_dir().join(format!("zwb-corpus-{}", std::process::id()));
    assert_eq!(code(&["generate", "--all", dir.to_str().unwrap()]), 0);
    let mut n = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let p = zwb_core::format::parse(&text).unwrap();
        assert_eq!(zwb_core::format::print(&p), text);
        n += 1;
    }
    assert_eq!(n, 7);
    let p2 = dir.join("projective_space_2.zwb");
    assert_eq!(code(&["check-algebra", p2.to_str().unwrap()]), 0);
}

#[test]
fn reports_are_deterministic() {
    let args = ["deform", "builtin:quantum_projective_space_eps(2,1,2,3)", "--thread", "4,2"];
    let (_, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(a, b);
    let mut more = args.to_vec();
    more.extend(["--jobs", "4"]);
    assert_eq!(json(&more).1, a);
}

#[test]
fn field_override_from_environment() {
    let run = |field: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_zwb"));
        c.args(["--json", "check-algebra", "builtin:projective_space(1)"]).env_remove("ZWB_FIELD");
        if let Some(f) = field {
            c.env("ZWB_FIELD", f);
        }
        let out = c.output().unwrap();
        (out.status.code().unwrap(), validate_json(&String::from_utf8(out.stdout).unwrap()).unwrap())
    };
    let (c0, q) = run(None);
    let (c1, p) = run(Some("GF(7)"));
    assert_eq!((c0, c1), (0, 0));
    assert_ne!(q.inputs_digest, p.inputs_digest);
    assert_eq!(code(&["--field", "GF(6)", "check-algebra", "builtin:projective_space(1)"]), 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["check-algebra", "/nonexistent/file.zwb"]), 1);
    assert_eq!(code(&["--help"]), 0);
}
