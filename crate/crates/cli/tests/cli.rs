use catalan_cli::run;
use serde_json::Value;

const RATIONAL_F5: &str = "char=5;deg=1;e=1;f=x";
const RATIONAL_F3: &str = "char=3;deg=1;e=1;f=x";
const GENUS_ONE: &str = "char=5;deg=1;e=2;f=x^3+x+1";

fn exec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("catalan").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn exec_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = exec(&full);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn lpoly_reports() {
    let (code, v) = exec_json(&["lpoly", "--curve", GENUS_ONE]);
    assert_eq!(code, 0);
    assert_eq!(v["h"], 9);
    assert_eq!(v["genus"], 1);
    assert_eq!(v["q"], 5);
    assert_eq!(v["coeffs"], serde_json::json!([1, 3, 5]));
    assert_eq!(v["counts"], serde_json::json!([9, 27]));
    assert_eq!(v["h_n"]["1"], 9);

    let (code, v) = exec_json(&["lpoly", "--curve", RATIONAL_F5]);
    assert_eq!(code, 0);
    assert_eq!(v["h"], 1);

    let (code, out, err) = exec(&["lpoly", "--curve", "char=5;deg=1;e=2;f=x^4+1"]);
    assert_ne!(code, 0);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"));

    let (code, out, _) = exec(&["lpoly", "--curve", GENUS_ONE]);
    assert_eq!(code, 0);
    assert!(out.contains("L(t)    1 + 3*t + 5*t^2"));
}

#[test]
fn classnum_table() {
    let (code, v) = exec_json(&["classnum", "--curve", GENUS_ONE, "--n", "1", "2", "--mu", "3", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["h_n"]["2"], 27);
    assert_eq!(v["h_mu"]["h(F(mu_3))"], 27);
    assert_eq!(v["h_mu"]["h(F(mu_4))"], 9);
    let (code, _, err) = exec(&["classnum", "--curve", GENUS_ONE, "--mu", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("characteristic"));
}

#[test]
fn check_exit_codes() {
    let (code, v) = exec_json(&["check", "--curve", RATIONAL_F5, "-m", "2", "-n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "THEOREM_APPLIES");
    assert_eq!(v["pair"], serde_json::json!([2, 3]));

    let (code, v) = exec_json(&["check", "--curve", RATIONAL_F5, "-m", "5", "-n", "2"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "CHAR_DIVIDES_BOTH_SIDES_IMPOSSIBLE");
    assert_eq!(v["pair"], Value::Null);
    assert_eq!(v["conditions"]["5,2"]["1"], false);
    assert_eq!(v["conditions"]["5,2"]["2"], Value::Null);

    let (code, v) = exec_json(&["check", "--curve", GENUS_ONE, "-m", "2", "-n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["h_values"]["h(F(mu_2))"], 9);
    assert_eq!(v["h_values"]["h(F(mu_3))"], 27);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["conditions", "h_values", "pair", "status"]);

    let (code, _, _) = exec(&["check", "--curve", GENUS_ONE, "-m", "1", "-n", "3"]);
    assert_eq!(code, 1);
}

#[test]
fn search_exit_codes_and_schema() {
    let (code, v) = exec_json(&[
        "search", "--curve", RATIONAL_F5, "-m", "2", "-n", "3", "--bound", "8", "--omit-timing",
    ]);
    assert_eq!(code, 0);
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 5);
    assert!(sols.iter().all(|s| s["constant"] == true));
    assert_eq!(v["elapsed_s"], Value::Null);
    assert_eq!(v["params"]["bound"], 8);
    assert_eq!(v["params"]["rhs"], "Y^3+1");
    assert!(v["candidates_examined"].as_u64().unwrap() > 1_000_000);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["candidates_examined", "elapsed_s", "params", "solutions"]);

    let (code, v) = exec_json(&["search", "--curve", RATIONAL_F3, "-m", "3", "-n", "2", "--bound", "6"]);
    assert_eq!(code, 4);
    assert!(v["elapsed_s"].as_f64().is_some());
    assert!(v["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .any(|s| s["x"] == "T^2+1" && s["y"] == "T^3" && s["constant"] == false));
}

#[test]
fn search_with_rhs() {
    let (code, v) = exec_json(&[
        "search", "--curve", RATIONAL_F5, "-m", "2", "-n", "3", "--bound", "4", "--rhs", "Y^3+2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["params"]["rhs"], "Y^3+2");
    // constants: x^2 = y^3 + 2 over F_5
    let expected = (0..5)
        .flat_map(|x| (0..5).map(move |y| (x, y)))
        .filter(|&(x, y)| (x * x) % 5 == (y * y * y + 2) % 5)
        .count();
    assert_eq!(v["solutions"].as_array().unwrap().len(), expected);

    let (code, _, err) = exec(&[
        "search", "--curve", RATIONAL_F5, "-m", "2", "-n", "3", "--bound", "4", "--rhs", "Y^+2",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("position"), "{err}");
}

#[test]
fn json_is_byte_identical() {
    let args = [
        "--json", "search", "--curve", GENUS_ONE, "-m", "2", "-n", "3", "--bound", "6", "--omit-timing",
    ];
    let (_, first, _) = exec(&args);
    let (_, second, _) = exec(&args);
    assert_eq!(first, second);
    let mut threaded = args.to_vec();
    threaded.extend_from_slice(&["--threads", "3"]);
    let (_, third, _) = exec(&threaded);
    assert_eq!(first, third);
    let check = ["--json", "check", "--curve", GENUS_ONE, "-m", "6", "-n", "10"];
    assert_eq!(exec(&check).1, exec(&check).1);
}

#[test]
fn budget_is_enforced() {
    let (code, _, err) = exec(&[
        "--budget", "1000", "search", "--curve", GENUS_ONE, "-m", "2", "-n", "3", "--bound", "10",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("8138025"), "{err}");
}

#[test]
fn counterexample_command() {
    let (code, v) = exec_json(&["counterexample", "--curve", RATIONAL_F3, "-n", "2", "--z", "T"]);
    assert_eq!(code, 0);
    assert_eq!(v["x"], "T^2+1");
    assert_eq!(v["y"], "T^3");
    let (code, v) = exec_json(&["counterexample", "--curve", GENUS_ONE, "-n", "3", "--z", "y"]);
    assert_eq!(code, 0);
    assert_eq!(v["x"], "x^3*y+x*y+y+1");
    assert_eq!(v["verified"], true);
    let (code, _, err) = exec(&["counterexample", "--curve", GENUS_ONE, "-n", "3", "--z", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("witness must be non-constant"));
}

#[test]
fn usage_errors() {
    let (code, _, err) = exec(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
    let (code, out, _) = exec(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("search"));
    let (code, _, err) = exec(&["lpoly", "--curve", "char=5;deg=1;e=2;f=x^3+?"]);
    assert_eq!(code, 1);
    assert!(err.contains("23"), "{err}");
}
