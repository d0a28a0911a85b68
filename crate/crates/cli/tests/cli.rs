use std::process::{Command, Output};

fn symcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcoh")).args(args).output().expect("spawn symcoh")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn eval(space: &str, expr: &str) -> Output {
    symcoh(&["eval", "--space", space, expr])
}

#[test]
fn eval_normal_forms() {
    let o = eval("sym(5,3)", "theta^3");
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "60*eta^3");

    let o = eval("sym(5,3)", "integrate((theta - eta)*eta^2)");
    assert_eq!(stdout(&o).trim(), "4");

    let o = eval("sym(5,3)", "secant(6, 5, 2, 3)");
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "theta - eta");
}

#[test]
fn eval_json() {
    let o = symcoh(&["eval", "--space", "sym(5,3)", "--json", "theta*eta + 2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "class");
    assert_eq!(v["space"], "sym(5,3)");
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 6);
    assert_eq!(terms[0]["monomial"], "1");
    assert_eq!(terms[0]["coefficient"], "2");

    let o = symcoh(&["eval", "--space", "sym(5,3)", "--json", "integrate(eta^3)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "scalar");
    assert_eq!(v["value"], "1");
}

#[test]
fn eval_errors() {
    let o = eval("sym(5,4)", "xi(1)*");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 6"), "{}", stderr(&o));

    let o = eval("sym(5,4)", "1.5*eta");
    assert_eq!(o.status.code(), Some(2));

    let o = eval("sym(5,4)", "zeta");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown identifier"));

    let o = eval("sym(5,4)", "chern(5, 3)");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("sym(5,3)"), "{}", stderr(&o));

    let o = eval("sym(5", "eta");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn basis_listing() {
    let o = symcoh(&["basis", "5", "3", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("# H^2(sym(5,3)): 46 monomials"));
    assert_eq!(lines.count(), 46);

    let o = symcoh(&["basis", "5", "4", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 256);

    assert_eq!(symcoh(&["basis", "5", "2", "5"]).status.code(), Some(2));
}

#[test]
fn strata_table() {
    let o = symcoh(&["table", "strata"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let m2 = out.lines().find(|l| l.starts_with("M_2 ")).expect("M_2 row");
    let nums: Vec<u64> = m2.split_whitespace().skip(1).map(|x| x.parse().unwrap()).collect();
    assert_eq!(nums, [1, 22, 2, 22, 12, 22, 2, 22, 1]);

    let o = symcoh(&["table", "strata", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn verify_suites() {
    let o = symcoh(&["verify", "hilbert"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("hilbert.1_w_pq"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = symcoh(&["verify", "degeneration", "--json", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(checks.iter().any(|c| c["id"] == "degeneration.clemens_schmid"));

    let o = symcoh(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn constants_override() {
    let base = include_str!("../../core/data/constants.toml");
    let edited = base.replacen("theta_dot_xq = 10", "theta_dot_xq = 11", 1);
    assert_ne!(base, edited);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("constants.toml");
    std::fs::write(&path, edited).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_symcoh"))
        .args(["verify", "hilbert"])
        .env("SYMCOH_CONSTANTS", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("fail"));

    let o = Command::new(env!("CARGO_BIN_EXE_symcoh"))
        .args(["verify", "hilbert"])
        .env("SYMCOH_CONSTANTS", dir.path().join("missing.toml"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
