use std::process::{Command, Output};

fn lagma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = lagma(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn classify_husain() {
    let v = json(&["classify", "--builtin", "husain"]);
    assert_eq!(v["name"], "Husain");
    assert_eq!(v["fingerprint"]["symmetry_dim"], 12);
    assert_eq!(v["fingerprint"]["lambda_zero"], false);
    assert_eq!(v["fingerprint"]["reductive"], false);
    assert_eq!(v["integrability"]["verdict"], "Integrable");
}

#[test]
fn classify_cross_checks_ef_route() {
    let v = json(&["classify", "--expr", "u11*u22 - u12^2 - u33*u44 + u34^2"]);
    assert_eq!(v["ef_case"]["classification"]["case"], 8);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["integrability"]["verdict"], "NotIntegrable");
}

#[test]
fn special_lagrangian_not_linearisable() {
    let v = json(&[
        "linearisable",
        "--n",
        "3",
        "--expr",
        "HESS - u11 - u22 - u33",
    ]);
    assert_eq!(v["linearisable"], false);
    let v = json(&["linearisable", "--builtin", "laplace3"]);
    assert_eq!(v["linearisable"], true);
}

#[test]
fn linear_wave_symmetry() {
    let v = json(&["symmetry", "--builtin", "linear-wave"]);
    assert_eq!(v["dim"], 16);
    assert_eq!(v["basis"].as_array().unwrap().len(), 16);
}

#[test]
fn lax_pairs() {
    let v = json(&["lax-check", "--pair", "general-heavenly"]);
    assert_eq!(v["verdict"]["passed"], true);
    assert_eq!(v["verdict"]["mode"], "mod_span");
    let v = json(&[
        "lax-check",
        "--pair",
        "general-heavenly",
        "--mode",
        "strict",
    ]);
    assert_eq!(v["verdict"]["passed"], false);
    let v = json(&[
        "lax-check",
        "--expr",
        "u13*u24 - u14*u23 = 1",
        "--x1",
        "u13*d4 + u14*d3 + lam*d1",
        "--x2",
        "-u23*d4 + u24*d3 - lam*d2",
    ]);
    assert_eq!(v["verdict"]["passed"], false);
    assert!(v["verdict"]["witness"]["residual"].is_string());
}

#[test]
fn lambda_and_basis_info() {
    let v = json(&["lambda", "--builtin", "first-heavenly"]);
    assert_eq!(v["lambda_zero"], false);
    let v = json(&["basis-info", "--n", "3"]);
    assert_eq!(v["dimension"], 14);
    assert_eq!(v["per_degree"], serde_json::json!([1, 6, 6, 1]));
}

#[test]
fn reduce_first_heavenly() {
    let v = json(&["reduce", "--builtin", "first-heavenly", "--k", "2,-3,7"]);
    assert_eq!(
        v["reduced"]["polynomial"],
        "3*u12*u23 - 2*u11*u23 - 3*u13*u22 + 2*u12*u13 - 1"
    );
    assert_eq!(v["linearisability"], "Linearisable");
}

#[test]
fn legendre_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("lagma-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("moved.json");
    let p = path.to_str().unwrap();
    json(&[
        "legendre",
        "--builtin",
        "kahler",
        "--chart",
        "3",
        "--out",
        p,
    ]);
    let v = json(&["legendre", "--file", p, "--chart", "3"]);
    assert_eq!(v["transformed"]["n"], 3);
    let back = json(&["linearisable", "--file", p]);
    assert_eq!(back["linearisable"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn singular_locus_of_hess_quadric() {
    let v = json(&["singular", "--expr", "u11*u22 - u12^2 - u33*u44 + u34^2"]);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["meets_all_sublagrangians"], false);
}

#[test]
fn rejected_input_exits_2() {
    let out = lagma(&["identify", "--expr", "u11 + u11^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("u11^2"));
    let out = lagma(&["identify", "--expr", "u11 + "]);
    assert_eq!(out.status.code(), Some(2));
    let out = lagma(&["symmetry", "--builtin", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lagma(&["legendre", "--builtin", "hess4", "--chart", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inconclusive_exits_3() {
    let out = lagma(&[
        "classify",
        "--builtin",
        "first-heavenly",
        "--trials",
        "0",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["integrability"]["verdict"], "Inconclusive");
}

#[test]
fn reports_are_deterministic() {
    let a = lagma(&["classify", "--builtin", "modified-heavenly", "--json"]);
    let b = lagma(&["classify", "--builtin", "modified-heavenly", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
