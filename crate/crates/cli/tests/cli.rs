use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmaforge"))
        .args(args)
        .env_remove("SIGMAFORGE_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    let code = o.status.code().unwrap();
    let v = serde_json::from_str(stdout(&o).trim()).unwrap_or(serde_json::Value::Null);
    (code, v)
}

#[test]
fn sigma_of_a_set() {
    let (code, v) = json(&["sigma", "--group", "Z5", "--set", "1;2"]);
    assert_eq!(code, 0);
    assert_eq!(v["sigma"], serde_json::json!(["0", "1", "2", "3"]));
    assert_eq!(v["stabilizer"], serde_json::json!(["0"]));
}

#[test]
fn sigma_of_empty_set_and_sequence() {
    let (_, v) = json(&["sigma", "--group", "Z6", "--set", ""]);
    assert_eq!(v["sigma"], serde_json::json!(["0"]));
    let (_, v) = json(&["sigma", "--group", "Z9", "--seq", "3:2"]);
    assert_eq!(v["sigma"], serde_json::json!(["0", "3", "6"]));
}

#[test]
fn sigma_csv() {
    let o = run(&["sigma", "--group", "Z2xZ2", "--set", "(0,1)", "--csv"]);
    assert_eq!(
        stdout(&o),
        "group,sigma,size,stabilizer,stabilizer_order\nZ2xZ2,\"0,0;0,1\",2,\"0,0;0,1\",2\n"
    );
}

#[test]
fn bounds() {
    let (code, v) = json(&["bound", "main", "--group", "Z5", "--set", "1"]);
    assert_eq!(code, 0);
    assert_eq!(
        (v["lhs"].as_i64(), v["rhs"].as_i64(), v["holds"].as_bool()),
        (Some(64), Some(1), Some(true))
    );

    let (code, v) = json(&["bound", "corollary", "--group", "Z6", "--set", "0;3"]);
    assert_eq!(code, 0);
    assert_eq!(v["rhs"].as_i64(), Some(2));

    let (_, v) = json(&["bound", "recursive", "--u", "8"]);
    assert_eq!(v["numerator"].as_u64(), Some(21));

    let (code, v) = json(&[
        "bound", "kneser", "--group", "Z12", "--set", "0;4", "--set", "1;2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["name"], "kneser");
}

#[test]
fn verify_examples() {
    let (code, v) = json(&["verify", "main", "--group", "Z12"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["stats"]["instances"].as_u64(), Some(4096));

    let (code, v) = json(&["verify", "olson", "--p", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "verified");

    let (code, v) = json(&["verify", "vu", "--n", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "vacuous");
}

#[test]
fn randomized_runs_need_a_seed_and_replay() {
    assert_eq!(
        run(&["verify", "sequence", "--group", "Z6xZ6"])
            .status
            .code(),
        Some(2)
    );
    let args = [
        "verify",
        "sequence",
        "--group",
        "Z6xZ6",
        "--trials",
        "200",
        "--seed",
        "9",
        "--json",
        "--no-timing",
    ];
    let a = stdout(&run(&args));
    let mut four = args.to_vec();
    four.extend(["--workers", "4"]);
    let b = stdout(&run(&four));
    assert_eq!(a, b);
    assert!(a.contains(r#""verdict":"verified""#));
}

#[test]
fn identities_and_lemmas() {
    let (code, v) = json(&["verify", "identities", "--trials", "100", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().map(Vec::len), Some(6));
    let (code, v) = json(&["verify", "lemmas", "--trials", "100", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().map(Vec::len), Some(3));
}

#[test]
fn interval_reports_both_values() {
    let (code, v) = json(&["verify", "interval", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["sigma_size"].as_u64(), Some(31));
    assert_eq!(v["printed_value"].as_u64(), Some(21));
}

#[test]
fn search_and_construct() {
    let (code, v) = json(&["search", "--group", "Z7", "--k", "1", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(v["sigma_size"].as_u64(), Some(2));

    assert_eq!(
        run(&[
            "search",
            "--group",
            "Z7",
            "--k",
            "2",
            "--hillclimb",
            "--restarts",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
    let (code, v) = json(&[
        "search",
        "--group",
        "Z7",
        "--k",
        "2",
        "--hillclimb",
        "--seed",
        "4",
        "--restarts",
        "2",
    ]);
    assert_eq!(code, 0);
    // {a, -a} reaches only {0, a, -a}
    assert_eq!(v["sigma_size"].as_u64(), Some(3));

    let (code, v) = json(&[
        "construct",
        "--group",
        "Z100",
        "--set",
        "1;2;3;4",
        "--u",
        "2",
        "--exact",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["sigma_size"].as_u64(), Some(4));
    assert_eq!(v["subset"].as_array().map(Vec::len), Some(2));

    let (_, v) = json(&[
        "construct",
        "--group",
        "Z100",
        "--set",
        "1;2;3;4",
        "--u",
        "2",
        "--greedy",
    ]);
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.last().unwrap()["sigma_size"], v["sigma_size"]);
}

#[test]
fn usage_and_capacity_errors_exit_2() {
    assert_eq!(
        run(&["sigma", "--group", "Z5", "--set", "1;x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["sigma", "--group", "Y5", "--set", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "main", "--group", "Z20"]).status.code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_sigmaforge"))
        .args(["sigma", "--group", "Z64", "--set", "1"])
        .env("SIGMAFORGE_MAX_ORDER", "32")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SIGMAFORGE_MAX_ORDER"));
}
