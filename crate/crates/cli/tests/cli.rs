use std::process::{Command, Output};

use feec_core::json::{FormJson, PairingJson, SpaceJson};

fn feec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_feec")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn apply_hr_prints_extension() {
    let out = feec(&["apply", "--op", "hr", "--n", "2", "--r", "1", "y*dx"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "y*dx - (x*y/s)*ds");
}

#[test]
fn dim_of_pminus() {
    let out = feec(&["dim", "--n", "2", "--r", "1", "--k", "1", "--space", "Pminus"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn verify_small_grid() {
    let out = feec(&["verify", "--n", "2", "--max-r", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));
}

#[test]
fn verify_honors_cell_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_feec"))
        .args(["verify", "--n", "3", "--max-r", "4"])
        .env("FEEC_MAX_CELLS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("2 cells"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FEEC_MAX_CELLS"));
}

#[test]
fn exit_codes() {
    assert_eq!(feec(&["apply", "--op", "d", "--n", "2", "q*dx"]).status.code(), Some(1));
    assert_eq!(feec(&["apply", "--op", "d", "--n", "2", "x +"]).status.code(), Some(1));
    assert_eq!(feec(&["apply", "--op", "starinv", "--n", "2", "dy/\\dz"]).status.code(), Some(2));
    assert_eq!(feec(&["apply", "--op", "hr", "--n", "2", "y*dx"]).status.code(), Some(2));
    assert_eq!(feec(&["dim", "--n", "2", "--r", "0", "--k", "1", "--space", "Pminus"]).status.code(), Some(2));
    assert_eq!(feec(&["dim", "--n", "0", "--r", "1", "--k", "0", "--space", "H"]).status.code(), Some(2));
}

#[test]
fn operators_from_the_command_line() {
    let run = |op: &str, expr: &str| {
        let out = feec(&["apply", "--op", op, "--n", "2", expr]);
        assert_eq!(out.status.code(), Some(0), "{op} {expr}");
        stdout(&out).trim().to_string()
    };
    assert_eq!(run("d", "x*dy"), "dx/\\dy");
    assert_eq!(run("ix", "dx/\\dy"), "-y*dx + x*dy");
    assert_eq!(run("dswedge", "dx"), "-dx/\\ds");
    assert_eq!(run("star", "dx"), "x*dy/\\dz");
    assert_eq!(run("starinv", "x*dy/\\dz"), "dx");
    assert_eq!(run("restrict", "x*ds + y*dz"), "-y*dx - y*dy");
    assert_eq!(run("d", "dx /\\ dx"), "0");
}

#[test]
fn json_outputs_parse_back() {
    let out = feec(&["apply", "--op", "hr", "--n", "2", "--r", "2", "--json", "x*dy"]);
    let form: FormJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(form.ambient_dim, 3);
    assert!(form.to_form().is_ok());

    let out = feec(&["basis", "--n", "2", "--r", "1", "--k", "1", "--space", "P", "--json"]);
    let space: SpaceJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(space.dim, 6);
    assert_eq!(space.basis.len(), 6);
    assert!(space.basis.iter().all(|b| b.degree == 2));

    let out = feec(&["pair", "--n", "2", "--r", "1", "--k", "1", "--family", "P", "--json"]);
    let pairing: PairingJson = serde_json::from_slice(&out.stdout).unwrap();
    assert!(pairing.nondegenerate);
    assert_eq!(pairing.rows, pairing.cols);
}

#[test]
fn pair_csv_is_square() {
    let out = feec(&["pair", "--n", "2", "--r", "1", "--k", "1", "--csv"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.split(',').count() == 3));
}

#[test]
fn basis_text_listing() {
    let out = feec(&["basis", "--n", "1", "--r", "1", "--k", "0", "--space", "Pminus"]);
    let text = stdout(&out);
    assert!(text.starts_with("P^-_1 Λ^0"));
    assert_eq!(text.lines().count(), 3);
}
