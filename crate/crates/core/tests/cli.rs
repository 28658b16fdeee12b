use std::path::Path;
use std::process::{Command, Output};

fn pfaflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfaflab")).args(args).env_remove("PFAFLAB_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn eval_vanishing_pfaffinant() {
    let o = pfaflab(&["eval", "pfaffinant", "--n", "2", "--diagram", "V[(2,3)]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
    let o = pfaflab(&["eval", "pfaffinant", "--n", "2", "--diagram", "V[(1,2)(3,4)]", "--tl"]);
    assert_eq!(stdout(&o), "a[1,4]*a[2,3]\n");
}

#[test]
fn tables_match_golden_files() {
    for (ids, file) in [
        (["ex-2.7", "diagram-pfaffinants"], "diagram-pfaffinants-n2.csv"),
        (["ex-2.11", "tl-pfaffinants"], "tl-pfaffinants-n2.csv"),
        (["transition-matrix", "transition-matrix"], "transition-matrix-n2.csv"),
        (["quadratic-relations", "quadratic-relations"], "quadratic-relations.csv"),
    ] {
        for id in ids {
            let o = pfaflab(&["table", id]);
            assert_eq!(o.status.code(), Some(0), "{id}");
            assert_eq!(stdout(&o), golden(file), "{id}");
        }
    }
    let o = pfaflab(&["table", "ex-2.7", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[2]["diagram"], "V[(2,3)]");
    assert_eq!(rows[2]["pfaffinant"], "0");
}

#[test]
fn exit_codes() {
    assert_eq!(pfaflab(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(pfaflab(&["verify", "sym-tl-counts", "--n", "9"]).status.code(), Some(2));
    assert_eq!(pfaflab(&["frobnicate"]).status.code(), Some(2));
    let o = pfaflab(&["verify", "thm-2.6", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("diagram-decomposition (n = 3): PASS, 42 cases"));
    assert_eq!(pfaflab(&["verify", "thm-5.2", "--max-size", "8", "--k", "4"]).status.code(), Some(0));
    // the published quadratic table has one misprinted row
    let o = pfaflab(&["verify", "quadratic-relations"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("T[(1,2)(3,4)(5,8)(6,7)]"));
}

#[test]
fn json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = pfaflab(&["verify", "boolean-cone", "--report", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let printed: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(written, printed);
    assert_eq!(written["theorem"], "boolean-cone");
    assert_eq!(written["cases"], 10);
    assert_eq!(written["failures"], serde_json::json!([]));
}

#[test]
fn scans_are_deterministic() {
    let a = pfaflab(&["scan", "con3", "--bound", "8"]);
    assert_eq!(a.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 71);
    assert!(lines.iter().all(|l| l["conjecture"] == "con3" && l["verdict"] == "positive"));
    let b = pfaflab(&["scan", "sort-transfer", "--bound", "8", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = pfaflab(&["cache", "build", "--n", "2", "--cache-dir", d]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 3);
    let cached = pfaflab(&["table", "ex-2.7", "--cache-dir", d]);
    let fresh = pfaflab(&["table", "ex-2.7", "--cache-dir", d, "--no-cache"]);
    assert_eq!(cached.stdout, fresh.stdout);
    assert_eq!(pfaflab(&["cache", "verify", "--n", "2", "--cache-dir", d]).status.code(), Some(0));

    // a tampered table is caught by verify
    let victim = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&victim).unwrap()).unwrap();
    file["f"]["V[]"] = serde_json::json!(99);
    std::fs::write(&victim, file.to_string()).unwrap();
    assert_eq!(pfaflab(&["cache", "verify", "--n", "2", "--cache-dir", d]).status.code(), Some(1));

    let o = pfaflab(&["cache", "clear", "--cache-dir", d]);
    assert_eq!(stdout(&o), format!("removed 3 tables from {d}\n"));
    assert_eq!(pfaflab(&["cache", "build"]).status.code(), Some(2));
}

#[test]
fn cache_dir_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_pfaflab")).args(["cache", "path"]).env("PFAFLAB_CACHE_DIR", "/tmp/pfl").output().unwrap();
    assert_eq!(stdout(&o), "/tmp/pfl\n");
}

#[test]
fn network_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    let o = pfaflab(&["network", "construct", "--n", "2", "--diagram", "V[(1,4)(2,3)]"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&path, &o.stdout).unwrap();
    let o = pfaflab(&["network", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = pfaflab(&["network", "evaluate", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("hatPfaf'V[(1,4)(2,3)]"));

    let o = pfaflab(&["network", "grid", "--n", "2", "--seed", "3", "--numeric"]);
    std::fs::write(&path, &o.stdout).unwrap();
    assert_eq!(pfaflab(&["network", "check", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn eval_objects() {
    let q = pfaflab(&["eval", "schur-q", "--shape", "(2,1)", "--k", "2"]);
    assert_eq!(stdout(&q), "4*x[1]^2*x[2] + 4*x[1]*x[2]^2\n");
    let p = pfaflab(&["eval", "q-product", "--shape", "(1)", "--shape", "(1)"]);
    assert_eq!(stdout(&p), "2*Q(2)\n");
    let i = pfaflab(&["eval", "immanant", "--n", "2", "--diagram", "T[(1,2)(3,4)]"]);
    assert_eq!(i.status.code(), Some(0));
    let f = pfaflab(&["eval", "f-coefficient", "--n", "2", "--matching", "M[(1,4)(2,3)]"]);
    assert_eq!(stdout(&f).lines().count(), 6);
    assert_eq!(stdout(&pfaflab(&["eval", "pfaffian", "--n", "1"])), "a[1,2]\n");
}
