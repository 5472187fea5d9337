use std::path::{Path, PathBuf};

use kosrec_cli::run;
use serde_json::Value;

fn kosrec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kosrec").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn session(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("s.session");
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TRUNCATED: &str = "ring p=7 vars=x order=grevlex ideal=[x^3]\nmodule M rank=1 rels=[[x]]\n";

#[test]
fn worked_example_summary() {
    let dir = tempfile::tempdir().unwrap();
    let sess = session(dir.path(), TRUNCATED);
    let cert = dir.path().join("cert.json");
    let (code, out, _) = kosrec(&["--session", s(&sess), "--out", s(&cert), "reconstruct", "M", "x", "--kmax", "16"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "k=1, n=1, radius≤2, homology: MATCH (1,1)");
    let (code, out, _) = kosrec(&["verify", s(&cert)]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let sess = session(dir.path(), "ring p=5 vars=x,y\nmodule M rank=1 rels=[[x], [y]]\nseq s = [x, y]\n");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let (code, _, err) = kosrec(&["-s", s(&sess), "-o", s(out), "reconstruct", "M", "s"]);
        assert_eq!(code, 0, "{err}");
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn flipped_coefficient_is_reported_with_its_path() {
    let dir = tempfile::tempdir().unwrap();
    let sess = session(dir.path(), TRUNCATED);
    let cert = dir.path().join("cert.json");
    assert_eq!(kosrec(&["-s", s(&sess), "-o", s(&cert), "reconstruct", "M", "x"]).0, 0);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let entry = &mut v["section"]["entries"][0][0];
    *entry = Value::String(if entry == "1" { "2".into() } else { "1".into() });
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let (code, out, _) = kosrec(&["verify", s(&bad)]);
    assert_eq!(code, 1);
    assert!(out.contains("$.section"), "{out}");
}

#[test]
fn tower_and_ball_from_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let sess = session(dir.path(), TRUNCATED);
    let cert = dir.path().join("cert.json");
    assert_eq!(kosrec(&["-s", s(&sess), "-o", s(&cert), "reconstruct", "M", "x"]).0, 0);
    let tower = dir.path().join("tower.json");
    let (code, out, _) = kosrec(&["-o", s(&tower), "tower", s(&cert)]);
    assert_eq!(code, 0);
    assert!(out.contains("all exact: yes, r∘s = id: yes"), "{out}");
    let ball = dir.path().join("ball.json");
    let (code, out, _) = kosrec(&["-o", s(&ball), "ball", s(&cert)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("radius 2 (EXT=1, SYZ=1, SUMMAND=1), valid"), "{out}");
    let (code, out, _) = kosrec(&["verify", s(&ball)]);
    assert_eq!((code, out.trim()), (0, "valid ball certificate, radius 2"));
}

#[test]
fn algebra_commands_write_documents() {
    let dir = tempfile::tempdir().unwrap();
    let sess = session(dir.path(), TRUNCATED);
    let cases: &[(&[&str], &str)] = &[
        (&["gb"], "reduced Gröbner basis of ideal: 1 elements"),
        (&["gb", "M"], "reduced Gröbner basis of M: 1 elements"),
        (&["resolve", "M", "3"], "betti numbers: 1 1 1 1"),
        (&["syzygy", "M", "1"], "Ω^1 M: rank 1, 1 relations, dimension 2"),
        (&["ext", "M", "M", "2"], "Ext^2(M, M): dimension 1"),
        (&["koszul", "x", "M"], "Koszul homology dimensions: (1,1)"),
    ];
    for (i, (args, summary)) in cases.iter().enumerate() {
        let out_file = dir.path().join(format!("{i}.json"));
        let mut argv = vec!["-s", s(&sess), "-o", s(&out_file)];
        argv.extend_from_slice(args);
        let (code, out, err) = kosrec(&argv);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert_eq!(out.lines().next().unwrap(), *summary);
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
        assert!(doc["kind"].is_string());
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = session(dir.path(), "ring p=7 vars=x shape=round\n");
    let (code, _, err) = kosrec(&["-s", s(&bad), "gb"]);
    assert_eq!(code, 2);
    assert!(err.contains("Parse"), "{err}");

    let plane = dir.path().join("plane.session");
    std::fs::write(&plane, "ring p=5 vars=x,y\nmodule M rank=1 rels=[[x]]\n").unwrap();
    let out_file = dir.path().join("x.json");
    let (code, _, err) = kosrec(&["-s", s(&plane), "-o", s(&out_file), "reconstruct", "M", "y"]);
    assert_eq!(code, 1);
    assert!(err.contains("PowerExhausted"), "{err}");

    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(kosrec(&["verify", s(&junk)]).0, 2);
    assert_eq!(kosrec(&["frobnicate"]).0, 2);
    assert_eq!(kosrec(&["gb"]).0, 2);
    assert_eq!(kosrec(&["--help"]).0, 0);
}

#[test]
fn demos_run_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["truncated", "plane", "cusp"] {
        let out_dir = dir.path().join(name);
        let (code, out, err) = kosrec(&["-o", s(&out_dir), "demo", name]);
        assert_eq!(code, 0, "{name}: {out}{err}");
        assert!(out_dir.join(format!("{name}.session")).exists());
    }
    assert_eq!(kosrec(&["demo", "nowhere"]).0, 2);
}
