use std::path::{Path, PathBuf};
use std::process::Command;

use pwa_lab::cli::main_with;

fn pwa(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pwa").chain(args.iter().copied()).map(String::from);
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pwa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn accepts_exit_codes() {
    let zeros = temp("zeros.txt", "torus 2 2\n0 0\n0 0\n");
    let one = temp("one.txt", "torus 2 2\n0 1\n0 0\n");
    assert_eq!(pwa(&["accepts", "gallery:ssu", "--torus", s(&zeros)]).0, 0);
    assert_eq!(pwa(&["accepts", "gallery:ssu", "--torus", s(&one)]).0, 1);
    let bad = temp("bad.json", "{ not json");
    let (code, _, err) = pwa(&["accepts", s(&bad), "--torus", s(&zeros)]);
    assert_eq!(code, 3);
    assert!(err.contains("automaton JSON"));
    let foreign = temp("foreign.txt", "torus 1 1\n7\n");
    let (code, _, err) = pwa(&["accepts", "gallery:ssu", "--torus", s(&foreign)]);
    assert_eq!(code, 3);
    assert!(err.contains("\"7\""), "{err}");
    assert_eq!(pwa(&["accepts", "gallery:ssu"]).0, 2);
    assert_eq!(pwa(&["accepts", "gallery:nope", "--torus", s(&zeros)]).0, 2);
    assert_eq!(pwa(&["frobnicate"]).0, 2);
    assert_eq!(pwa(&["accepts", "/nonexistent.json", "--torus", s(&zeros)]).0, 3);
}

#[test]
fn witnesses() {
    let one = temp("one-w.txt", "torus 2 1\n0 1\n");
    let (code, out, _) = pwa(&["--json", "accepts", "gallery:ssu", "--torus", s(&one), "--witness"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["verdict"], "reject");
    let depths = v["witness"]["depths"].as_array().unwrap();
    assert_eq!(depths.len(), 1);
    assert_eq!(depths[0]["cell"], serde_json::json!([1, 0]));
    let zeros = temp("zeros-w.txt", "torus 2 1\n0 0\n");
    let (code, out, _) = pwa(&["--json", "accepts", "gallery:even-runs", "--torus", s(&zeros), "--witness"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert!(!v["witness"]["strategy"].as_array().unwrap().is_empty());
}

#[test]
fn validate_reports_violations() {
    let dup = temp(
        "dup.json",
        r#"{"alphabet":["0"],"states":[{"id":"a","symbol":"0","quant":null},{"id":"a","symbol":"0","quant":null}],"edges":[],"initial":{"0":"a"}}"#,
    );
    let (code, out, _) = pwa(&["validate", s(&dup)]);
    assert_eq!(code, 3);
    assert!(out.starts_with("invalid"));
    let nondet = temp(
        "nondet.json",
        r#"{"alphabet":["0"],"states":[{"id":"a","symbol":"0","quant":null}],"edges":[{"from":"a","to":"a","dx":1,"dy":0},{"from":"a","to":"a","dx":0,"dy":1}],"initial":{"0":"a"}}"#,
    );
    assert_eq!(pwa(&["validate", s(&nondet)]).0, 3);
    assert_eq!(pwa(&["validate", "gallery:even-runs"]), (0, "valid\n".into(), String::new()));
}

#[test]
fn classify_and_cover() {
    assert_eq!(pwa(&["classify", "gallery:ssu"]).1, "Pi(1)\n");
    let (_, out, _) = pwa(&["--json", "cover", "gallery:even-runs", "--windows", "2"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["witness"]["product_size"], 2 * 128);
    assert_eq!(v["witness"]["forbidden_windows"].as_array().unwrap().len(), 2);
    let big = pwa(&["cover", "gallery:cone-labyrinth"]);
    assert_eq!(big.0, 3);
    assert!(big.2.contains("states"));
}

#[test]
fn compare_verdicts() {
    let (code, out, _) = pwa(&["compare", "gallery:even-runs", "gallery:even-runs", "--max-torus", "2", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("equivalent"));
    let (code, out, _) = pwa(&["--json", "compare", "gallery:ssu", "gallery:even-runs", "--max-torus", "2", "2"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["witness"]["instance"], "torus 1x1 #1");
    assert_eq!(pwa(&["compare", "gallery:ssu", "--oracle", "ssu", "--max-torus", "6", "6"]).0, 2);
    assert_eq!(pwa(&["compare", "gallery:ssu", "--max-torus", "2", "2"]).0, 2);
    assert_eq!(pwa(&["compare", "gallery:ssu", "--oracle", "ssu"]).0, 2);
    assert_eq!(pwa(&["compare", "gallery:ssu", "--oracle", "even-runs", "--patterns", "1x1"]).0, 2);
    assert_eq!(pwa(&["compare", "gallery:ssu", "--oracle", "brute-force", "--samples", "20", "--seed", "3"]).0, 0);
}

#[test]
fn parallel_reports_are_byte_identical() {
    let run = |jobs: &str| {
        pwa(&[
            "--json",
            "--no-timing",
            "enum",
            "gallery:even-runs",
            "--max-torus",
            "3",
            "3",
            "--patterns",
            "2x2",
            "--samples",
            "40",
            "--seed",
            "11",
            "--jobs",
            jobs,
        ])
    };
    let seq = run("1");
    assert_eq!(seq.0, 0);
    assert_eq!(seq.1.lines().count(), 2 + 4 + 8 + 4 + 16 + 64 + 8 + 64 + 512 + 2 + 4 + 4 + 16 + 40 + 1);
    assert_eq!(run("4"), seq);
    assert_eq!(run("0"), seq);
    let lab = |jobs: &str| {
        pwa(&[
            "--json",
            "--no-timing",
            "compare",
            "gallery:cone-labyrinth",
            "--oracle",
            "cone-labyrinth",
            "--planted",
            "10",
            "--max-torus",
            "2",
            "2",
            "--jobs",
            jobs,
        ])
    };
    assert_eq!(lab("1"), lab("3"));
}

#[test]
fn render_roundtrip() {
    let (code, out, _) = pwa(&["render", "--xn", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1 + 11);
    assert!(out.lines().skip(1).all(|l| l.split_whitespace().count() == 7));
    let f = temp("xn4.txt", &out);
    assert_eq!(pwa(&["render", s(&f)]).1, out);
    let (_, t, _) = pwa(&["render", "--xn-torus", "3", "2"]);
    assert!(t.starts_with("torus 5 2\n"));
    let f = temp("xt.txt", &t);
    assert_eq!(pwa(&["render", s(&f)]).1, t);
    let (_, km, _) = pwa(&["render", "--kari-moore", "2", "3"]);
    assert_eq!(km.matches('1').count(), 6);
    assert_eq!(pwa(&["render", "--planted", "5"]), pwa(&["render", "--planted", "5"]));
}

#[test]
fn pump_lists_pairs() {
    let (_, xt, _) = pwa(&["render", "--xn-torus", "3", "2"]);
    let f = temp("pump.txt", &xt);
    let (code, out, _) = pwa(&["--json", "pump", "gallery:cone-labyrinth-core", "--torus", s(&f)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["verdict"], "reject");
    assert_eq!(v["witness"]["replay_mismatches"], 0);
    let pairs = v["witness"]["pairs"].as_array().unwrap();
    assert!(!pairs.is_empty());
    let steps = v["witness"]["branch"]["steps"].as_array().unwrap().len() as u64;
    for p in pairs {
        let (i, j) = (p["i"].as_u64().unwrap(), p["j"].as_u64().unwrap());
        let args = [
            "--json",
            "pump",
            "gallery:cone-labyrinth-core",
            "--torus",
            s(&f),
            "--repeat",
            &i.to_string(),
            &j.to_string(),
            "3",
        ];
        let (code, out, _) = pwa(&args);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        let pumped = &v["witness"]["pumped"];
        assert_eq!(pumped["branch"]["steps"].as_array().unwrap().len() as u64, steps + 2 * (j - i));
        // a vector that is a period of the 5 x 2 torus keeps every copy on matching symbols
        let (dx, dy) = (p["vector"][0].as_i64().unwrap(), p["vector"][1].as_i64().unwrap());
        if dx % 5 == 0 && dy % 2 == 0 {
            assert_eq!(pumped["replay_mismatches"], 0);
        }
    }
    assert_eq!(pwa(&["pump", "gallery:cone-labyrinth-core", "--torus", s(&f), "--start", "-9", "0"]).0, 2);
}

#[test]
fn gallery_verbs() {
    let (code, out, _) = pwa(&["gallery", "list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    assert!(pwa(&["gallery", "show", "ssu"]).1.contains("11 states"));
    let (_, json, _) = pwa(&["gallery", "export", "even-runs"]);
    assert_eq!(json, include_str!("../data/even-runs.json"));
    assert_eq!(pwa(&["gallery", "show", "nope"]).0, 2);
    let (_, audit, _) = pwa(&["--json", "gallery", "kari-moore-audit", "--max-n", "3"]);
    assert_eq!(audit.lines().count(), 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pwa");
    let zeros = temp("bin-zeros.txt", "torus 1 1\n0\n");
    let st = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(st(&["accepts", "gallery:ssu", "--torus", s(&zeros)]), Some(0));
    let one = temp("bin-one.txt", "torus 1 1\n1\n");
    assert_eq!(st(&["accepts", "gallery:ssu", "--torus", s(&one)]), Some(1));
    assert_eq!(st(&["accepts"]), Some(2));
    let bad = temp("bin-bad.json", "[]");
    assert_eq!(st(&["classify", s(&bad)]), Some(3));
    assert_eq!(st(&["--help"]), Some(0));
}
