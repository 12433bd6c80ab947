use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinclass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn growth_value(text: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with("growth = ")).expect("growth line");
    line["growth = ".len()..].split_whitespace().next().unwrap().parse().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn perm_words() {
    let o = run(&["perm", "2lurdld"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "31586[4]27");
    assert_eq!(stdout(&run(&["perm", "1"])).trim(), "[1]2");
    let o = run(&["perm", "1uu"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alignment"));
}

#[test]
fn perm_batch_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pinclass"))
        .arg("perm")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"2lurdld\n\n1\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "31586[4]27\n[1]2\n");
}

#[test]
fn perm_json() {
    let v = json(&["perm", "1ru"]);
    assert_eq!(v[0]["word"], "1ru");
    assert_eq!(v[0]["centred"]["origin"], 1);
}

#[test]
fn gf_modes() {
    let o = run(&["gf", "1(ru)*"]);
    assert!(stdout(&o).contains("f(z) = (1 - z) / (1 - 2z - z^3)"));
    let o = run(&["gf", "1(ul)*", "--mode", "class"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--mode closure"));
    let v = json(&["gf", "1(ldru)*"]);
    assert_eq!(v["f"]["den"], serde_json::json!(["1", "-5", "6", "-2", "-1", "-3"]));
    assert_eq!(v["g_quadrants"].as_array().unwrap().len(), 4);
    assert!(v["growth"]["interval"].is_array());
    assert!(run(&["gf", "1(ul)*", "--mode", "interior"]).status.success());
}

#[test]
fn growth_rates() {
    let o = run(&["growth", "--poly", "1-2z-z^3"]);
    assert!((growth_value(&stdout(&o)) - 2.20557).abs() < 1e-5);
    let o = run(&["growth", "2(urul)*"]);
    assert!((growth_value(&stdout(&o)) - 3.06918).abs() < 1e-5);
    assert_eq!(run(&["growth", "--poly", "1"]).status.code(), Some(4));
    assert_eq!(run(&["growth", "--poly", "1-2z+"]).status.code(), Some(2));
    let v = json(&["growth", "--poly", "1-4z+2z^2", "--tol", "1/1000000"]);
    assert!(v["growth"]["decimal"].as_str().unwrap().starts_with("3.414"));
}

#[test]
fn verify_tables_small() {
    let o = run(&["verify-tables", "--n-max", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["verify-tables", "--n-max", "6", "--jobs", "2"]);
    assert!(v["lengths"].as_array().unwrap().iter().all(|l| l["table_match"] == true));
}

#[test]
fn oracle_runs() {
    let o = run(&["oracle", "2(urul)*", "--n", "8", "--method", "composition"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["oracle", "1(ru)*", "--n", "4", "--method", "subset"]);
    assert_eq!(v["counts"], serde_json::json!([1, 1, 2, 5, 11]));
    assert_eq!(v["method"], "subset");
    assert_eq!(run(&["oracle", "1(ul)*", "--n", "3"]).status.code(), Some(3));
    let dir = std::env::temp_dir().join(format!("pinclass-dump-{}", std::process::id()));
    let path = dir.to_string_lossy().into_owned();
    assert!(run(&["oracle", "complete", "--n", "2", "--dump-perms", &path]).status.success());
    let dumped = std::fs::read_to_string(&dir).unwrap();
    assert!(dumped.lines().next() == Some("[1]"));
    std::fs::remove_file(dir).ok();
}

#[test]
fn complete_and_closures() {
    let o = run(&["complete", "--quadrants", "1,2"]);
    assert!((growth_value(&stdout(&o)) - 3.51205).abs() < 1e-5);
    assert_eq!(run(&["complete", "--quadrants", "1,3"]).status.code(), Some(3));
    let o = run(&["closure-of", "--perms", "41[3]52"]);
    assert!(stdout(&o).contains("f(z) = (1) / (1 - 4z + 2z^2 - z^4)"));
    assert_eq!(run(&["closure-of", "--perms", "4[1]3"]).status.code(), Some(2));
}

#[test]
fn render_outputs() {
    let o = run(&["render", "1(ldrdluru)*", "--steps", "16", "--format", "svg"]);
    let s = stdout(&o);
    assert!(s.starts_with("<svg") && s.matches("<circle").count() == 17);
    let o = run(&["render", "1u", "--format", "ascii"]);
    assert_eq!(stdout(&o), ".2.\n..1\no..\n");
}
