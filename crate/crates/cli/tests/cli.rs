use std::path::Path;
use std::process::{Command, Output};

fn swf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = swf(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

fn spectrum_file(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    std::fs::write(&path, stdout(&full)).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    serde_json::from_str(&stdout(&full)).unwrap()
}

#[test]
fn lens() {
    assert_eq!(stdout(&["lens", "--n", "1", "--k", "0"]), "S^0");
    assert_eq!(stdout(&["lens", "--n", "2", "--k", "0"]), "S^{-1/8C}");
}

#[test]
fn brieskorn() {
    assert_eq!(
        stdout(&["brieskorn", "--r", "11", "--orientation", "neg", "--forget"]),
        "S^-2 v S^-2 v S^-1"
    );
    assert_eq!(
        stdout(&["brieskorn", "--r", "5", "--orientation", "pos"]),
        "S^{C}"
    );
    assert_eq!(
        stdout(&["brieskorn", "--r", "13", "--orientation", "neg"]),
        "S^0 v T+ v T+"
    );
}

#[test]
fn groups_dualize_forget() {
    let dir = tempfile::tempdir().unwrap();
    let y = spectrum_file(
        dir.path(),
        "y.json",
        &["brieskorn", "--r", "11", "--orientation", "neg"],
    );
    assert_eq!(
        stdout(&["groups", "--spectrum", &y, "--k", "-1", "--equivariant"]),
        "pi_-1^T = Z\n  g0 = -iota@x2"
    );
    let g = json(&["groups", "--spectrum", &y, "--k", "-1"]);
    assert_eq!(g["group"], "Z/2 + Z/2 + Z");
    assert_eq!(
        g["generators"],
        serde_json::json!(["eta@x1.bot", "eta@x2.bot", "iota@x1.top"])
    );

    let dual = spectrum_file(dir.path(), "dual.json", &["dualize", "--spectrum", &y]);
    let g = json(&["groups", "--spectrum", &dual, "--k", "4"]);
    assert_eq!(g["group"], "Z/2 + Z/2 + Z/24");
    assert_eq!(stdout(&["forget", "--spectrum", &dual]), "S^1 v S^2 v S^2");
}

#[test]
fn json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let y = spectrum_file(
        dir.path(),
        "y.json",
        &["brieskorn", "--r", "23", "--orientation", "pos"],
    );
    let dd = spectrum_file(dir.path(), "dd.json", &["dualize", "--spectrum", &y]);
    let back = spectrum_file(dir.path(), "back.json", &["dualize", "--spectrum", &dd]);
    assert_eq!(std::fs::read(&y).unwrap(), std::fs::read(&back).unwrap());
}

#[test]
fn glue() {
    let dir = tempfile::tempdir().unwrap();
    let y = spectrum_file(
        dir.path(),
        "y.json",
        &["brieskorn", "--r", "11", "--orientation", "neg"],
    );
    // the equivariant generator forgets to (0,0,1), which pairs with (0,0,z) to z
    let args = [
        "glue",
        "--spectrum",
        &y,
        "--k1",
        "-1",
        "--psi1",
        "1",
        "--equivariant",
        "--k2",
        "4",
        "--psi2",
        "0,0,7",
    ];
    assert_eq!(stdout(&args), "7nu in pi_3(S^0) = Z/24");
    let v = json(&[
        "glue",
        "--spectrum",
        &y,
        "--k1",
        "-1",
        "--psi1",
        "1,1,3",
        "--k2",
        "4",
        "--psi2",
        "1,0,5",
    ]);
    assert_eq!(v["value"], 3);
}

#[test]
fn exotic_nuclei() {
    let v = json(&["exotic-nuclei", "--p", "1", "--q", "1"]);
    assert_eq!(v["verdict"], "NoObstruction");
    let v = json(&["exotic-nuclei", "--p", "2", "--q", "3"]);
    assert_eq!(
        (v["x0"].as_i64(), v["x1"].as_i64(), v["verdict"].as_str()),
        (Some(0), Some(1), Some("Contradiction"))
    );
}

#[test]
fn adjunction() {
    assert!(stdout(&["adjunction", "--square", "2"]).starts_with("NoBasicClasses"));
    assert_eq!(
        stdout(&["adjunction", "--square", "-4", "--pairing", "6"]),
        "j = 5, k = 1, i = -1: Excluded"
    );
    assert_eq!(
        stdout(&["adjunction", "--square", "-4", "--pairing", "-2"]),
        "j = 1, k = 1, i = 0: Allowed"
    );
}

#[test]
fn series() {
    assert_eq!(
        stdout(&["series", "--p", "2", "--q", "3"]),
        "t^7 + t^3 + t + t^-1 + t^-3 + t^-7"
    );
    assert_eq!(
        stdout(&["series", "--p", "1", "--q", "3"]),
        "t^2 + 1 + t^-2"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        swf(&["groups", "--spectrum", "missing.json", "--k", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(swf(&["lens", "--n", "3"]).status.code(), Some(2));
    assert_eq!(
        swf(&["series", "--p", "2", "--q", "4"]).status.code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let y = spectrum_file(
        dir.path(),
        "y.json",
        &["brieskorn", "--r", "11", "--orientation", "neg"],
    );
    let out = swf(&["groups", "--spectrum", &y, "--k", "5", "--equivariant"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "UnsupportedStem");
}

#[test]
fn json_is_deterministic() {
    let args = ["exotic-nuclei", "--p", "3", "--q", "4", "--output", "json"];
    assert_eq!(swf(&args).stdout, swf(&args).stdout);
}
