use density_cli::dsl::{parse, BinOp, SetExpr};
use density_cli::run;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = SetExpr> {
    prop_oneof![
        (0u64..20, 1u64..20).prop_map(|(a, b)| SetExpr::Ap(a, b)),
        proptest::collection::vec(0u64..50, 0..4).prop_map(SetExpr::Finite),
        proptest::collection::vec(0u64..50, 0..4).prop_map(SetExpr::Cofinite),
        (2u64..6, 0u8..2).prop_map(|(r, p)| SetExpr::Block(r, p)),
        Just(SetExpr::Abundant),
    ]
}

fn ast() -> impl Strategy<Value = SetExpr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        let op = prop_oneof![
            Just(BinOp::Union),
            Just(BinOp::Intersection),
            Just(BinOp::Difference),
            Just(BinOp::SymDiff),
        ];
        prop_oneof![
            inner.clone().prop_map(|e| SetExpr::Not(Box::new(e))),
            (op, inner.clone(), inner).prop_map(|(op, l, r)| SetExpr::Binary(op, Box::new(l), Box::new(r))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn print_then_parse_round_trips(e in ast()) {
        let printed = e.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), e, "{}", printed);
    }
}

fn density(args: &[&str]) -> (i32, String) {
    let mut full = vec!["density"];
    full.extend_from_slice(args);
    let out = run(full);
    (out.code, out.stdout + &out.stderr)
}

#[test]
fn documented_outputs() {
    assert_eq!(
        density(&["density", "block(2,0)"]),
        (0, "upper=2/3 (exact), lower=1/3 (exact)\n".to_string())
    );
    assert_eq!(
        density(&["dist", "ap(0,2)", "ap(0,4)"]),
        (0, "1/4 (exact)\n".to_string())
    );
    assert_eq!(density(&["leq", "ap(0,4)", "ap(0,2)"]), (0, "yes\n".to_string()));
    assert_eq!(density(&["leq", "ap(0,2)", "ap(0,4)"]), (1, "no\n".to_string()));
    assert_eq!(density(&["in-d", "block(3,1)"]), (1, "no\n".to_string()));
    assert_eq!(density(&["in-d", "ap(1,3) | finite{0}"]), (0, "yes\n".to_string()));
}

#[test]
fn usage_errors_exit_two() {
    let (code, text) = density(&["density", "ap(0,)"]);
    assert_eq!(code, 2);
    assert!(text.contains("line 1, column 6"), "{text}");
    let (code, text) = density(&["density", "primes"]);
    assert_eq!(code, 2);
    assert!(text.contains("unknown identifier `primes`"), "{text}");
    assert_eq!(density(&["frobnicate"]).0, 2);
    assert_eq!(density(&["net", "ap(0,2)", "--eps", "x"]).0, 2);
    assert_eq!(density(&["diagonal", "ap(0,2)", "ap(0,4)", "--indices", "3,4"]).0, 2);
    assert_eq!(density(&["net", "ap(0,2)", "ap(0,3)", "--window", "5"]).0, 2);
}

#[test]
fn formats() {
    let (code, text) = density(&["density", "block(2,0) | ap(0,2)", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(
        text,
        "set,upper,upper_level,lower,lower_level\n\"block(2,0) | ap(0,2)\",5/6,exact,2/3,exact\n"
    );
    let (_, text) = density(&["density", "block(2,0)", "--format", "jsonl", "--float"]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["upper"]["value"], "0.666667");
    assert_eq!(v["lower"]["level"], "exact");
    let (_, text) = density(&["density", "ap(0,3)", "--trace", "--window", "100"]);
    assert!(text.starts_with("n,nu_n\n1,1/1\n"), "{text}");
    assert!(text.ends_with("100,17/50\n"), "{text}");
}

#[test]
fn diagonal_report() {
    let sets = ["ap(0,2) | ap(1,4)", "ap(0,2) | ap(1,8)", "ap(0,2) | ap(1,16)"];
    let mut args = vec!["diagonal"];
    args.extend(sets);
    let (code, text) = density(&args);
    assert_eq!(code, 0, "{text}");
    assert!(
        text.starts_with("indices: 1,17\nminimal: true\nepsilons: 1/8,1/16\n"),
        "{text}"
    );
    assert!(text.contains("block 3: [18, inf] from input 3"));

    args.extend(["--format", "jsonl"]);
    let (code, text) = density(&args);
    assert_eq!(code, 0);
    let records: Vec<serde_json::Value> = text
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.iter().filter(|r| r["record"] == "cut").count(), 2);
    assert!(records
        .iter()
        .filter(|r| r["record"] == "check")
        .all(|r| r["pass"] == true));

    args.extend(["--indices", "1,2"]);
    assert_eq!(density(&args).0, 1);
}

#[test]
fn repeated_sets_are_dropped() {
    let (code, text) = density(&["diagonal", "ap(0,2)", "ap(0,2)", "ap(0,4)"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("block 2: [2, inf] from input 3"), "{text}");
}

#[test]
fn nets_and_ap0() {
    let chain: Vec<String> = (1..=10)
        .map(|i| format!("~ap({},{})", (1u64 << i) - 1, 1u64 << i))
        .collect();
    let mut args: Vec<&str> = vec!["net"];
    args.extend(chain.iter().map(String::as_str));
    args.extend(["--eps", "1/128"]);
    let (code, text) = density(&args);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("limit: 1/1"));
    assert!(text.contains("upper: holds-at-window from (1,8) with J=10"));

    args.extend(["--format", "csv"]);
    let (_, text) = density(&args);
    let rows: Vec<&str> = text.lines().filter(|l| l.as_bytes()[0].is_ascii_digit()).collect();
    assert_eq!(rows.len(), 55);
    assert_eq!(rows[0], "1,1,1/2,1/2");

    args[0] = "ap0";
    let (code, _) = density(&args[..args.len() - 2]);
    assert_eq!(code, 0);

    let (code, text) = density(&["net", "ap(0,2)", "ap(1,2)", "ap(0,2)", "ap(1,2)", "--window", "4"]);
    assert_eq!(code, 1);
    assert!(text.contains("limit: none"));
    let (code, text) = density(&["ap0", "ap(0,2)", "ap(0,4)", "--window", "2"]);
    assert_eq!(code, 2, "{text}");
}

#[test]
fn setfun_tables() {
    let dir = std::env::temp_dir().join(format!("density-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "ground 2\nset 0 0 0\nset 1 1/2 1/2\nset 2 1/2 1/2\nset 3 1 1\n").unwrap();
    let (code, text) = density(&["setfun-verify", good.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("co-superadditive: pass"));

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "ground 2\nset 0 0\nset 1 0\nset 2 0\nset 3 1\n").unwrap();
    let (code, text) = density(&["setfun-verify", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(text.contains("d-triangle: FAIL"), "{text}");
    assert!(text.contains("countably-subadditive: FAIL"), "{text}");

    let broken = dir.join("broken.txt");
    std::fs::write(&broken, "ground 2\nset 0 0\nset 1 one\n").unwrap();
    let (code, text) = density(&["setfun-verify", broken.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(text.contains("line 3"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seeded_suites_are_deterministic() {
    let a = density(&["setfun-verify", "--seed", "9", "--samples", "50", "--format", "jsonl"]);
    let b = density(&["setfun-verify", "--seed", "9", "--samples", "50", "--format", "jsonl"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    assert_eq!(a.1.lines().count(), 4);
}

#[test]
fn abundant_small_window() {
    assert_eq!(
        density(&["abundant-sieve", "--window", "50"]),
        (0, "n=50 count=11 nu_n=11/50\n".to_string())
    );
}
