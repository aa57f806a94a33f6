use std::io::Write;
use std::process::{Command, Stdio};

use linkhom::parse::{format_hlink, parse_hlink, parse_rf};
use linkhom_core::hlink::{HExpr, Pair};
use linkhom_core::rf::{GroupExpr, RfExpr};
use proptest::prelude::*;
use serde_json::Value;

fn linkhom(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_linkhom"))
        .args(args)
        .env_remove("LINKHOM_THREADS")
        .env_remove("LINKHOM_BUDGET_DEFAULT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().expect("stdin");
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).expect("write stdin");
        }
    }
    let out = child.wait_with_output().expect("binary finishes");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("valid JSON output")
}

/// Trees in the shape the parser produces.
fn tree<G: Clone + std::fmt::Debug + 'static>(
    gen: BoxedStrategy<G>,
) -> impl Strategy<Value = GroupExpr<G>> {
    let leaf = (gen, -3i64..=3).prop_map(|(g, e)| GroupExpr::Gen(g, e));
    leaf.prop_recursive(4, 24, 4, |inner| {
        let product = prop_oneof![
            Just(Vec::new()),
            proptest::collection::vec(inner.clone(), 2..4),
        ]
        .prop_map(GroupExpr::Product);
        let half = prop_oneof![inner.clone(), product.clone()];
        let commutator =
            (half.clone(), half).prop_map(|(a, b)| GroupExpr::Commutator(Box::new(a), Box::new(b)));
        let base = prop_oneof![product.clone(), commutator.clone()];
        prop_oneof![
            commutator,
            proptest::collection::vec(inner, 0..4).prop_map(GroupExpr::Product),
            (base, -4i64..=4).prop_map(|(a, e)| GroupExpr::Power(Box::new(a), e)),
        ]
    })
}

proptest! {
    #[test]
    fn rf_print_parse_round_trip(e in tree((1u8..=12).boxed())) {
        let text = e.to_string();
        prop_assert_eq!(parse_rf(&text, 12).unwrap(), e);
    }

    #[test]
    fn hlink_print_parse_round_trip(
        e in tree((1u8..=11, 1u8..=11).prop_map(|(a, b)| if a < b { Pair(a, b) } else { Pair(b, a + 1) }).boxed()),
        n in prop_oneof![Just(9usize), Just(12usize)],
    ) {
        let text = format_hlink(&e, n);
        let max = e.generators().iter().map(|p| p.1).max().unwrap_or(0) as usize;
        prop_assume!(max <= n);
        prop_assert_eq!(parse_hlink(&text, n).unwrap(), e);
    }
}

#[test]
fn parsed_trees_reprint_identically() {
    for s in [
        "x12 x13^-1",
        "[x13,x12]^3",
        "([x12,x23] x13)^-2 ()",
        "[(x12),[x13 x14,x24]^0]",
    ] {
        let e: HExpr = parse_hlink(s, 4).unwrap();
        assert_eq!(parse_hlink(&e.to_string(), 4).unwrap(), e);
    }
    let r: RfExpr = parse_rf("[[x1,x2],x3]^2 x1^-1", 3).unwrap();
    assert_eq!(parse_rf(&r.to_string(), 3).unwrap(), r);
}

#[test]
fn example_element_has_six() {
    let (code, out, _) = linkhom(&["examples", "--family", "maximal-four"], None);
    assert_eq!(code, 0);
    let (code, nh, _) = linkhom(&["nh"], Some(&out));
    assert_eq!(code, 0);
    let v = json(&nh);
    assert_eq!(v["nh"], 6);
    assert_eq!(v["maximal"], true);
}

#[test]
fn smallest_phi_value() {
    let (code, out, _) = linkhom(&["phi", "--n", "4", "--k", "4", "--w", "3"], None);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["value"], 3);
    assert_eq!(v["status"], "proven_optimal");
}

#[test]
fn single_clasp_needs_one_move() {
    let (code, out, _) = linkhom(&["synthesize", "--n", "2", "x12"], None);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["length"], 1);
    assert_eq!(v["verified"], true);
}

#[test]
fn exit_codes() {
    let (code, _, err) = linkhom(&["nh", "--n", "2", "x12^"], None);
    assert_eq!(code, 2);
    assert!(err.contains("offset 4"), "{}", err);
    let (code, _, err) = linkhom(&["synthesize", "--moves", "delta", "--n", "3", "x12"], None);
    assert_eq!(code, 1);
    assert!(err.contains("linking"));
    let (code, out, _) = linkhom(
        &[
            "phi", "--n", "10", "--k", "5", "--w", "5", "--budget", "2000",
        ],
        None,
    );
    assert_eq!(code, 3);
    assert_eq!(json(&out)["status"], "budget_exhausted");
}

#[test]
fn stored_sequences_verify() {
    let dir = std::env::temp_dir().join(format!("linkhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = "[x13,x12]^2 x24 [x14,x12]";
    let (code, out, _) = linkhom(&["synthesize", "--n", "4", target], None);
    assert_eq!(code, 0);
    let path = dir.join("seq.json");
    std::fs::write(&path, &out).unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = linkhom(&["verify", "--n", "4", "--sequence", p, target], None);
    assert_eq!(
        (code, json(&out)["verified"].clone()),
        (0, Value::Bool(true))
    );
    let (code, _, _) = linkhom(&["verify", "--n", "4", "--sequence", p, "x24"], None);
    assert_eq!(code, 1);
    let input = dir.join("target.txt");
    std::fs::write(&input, target).unwrap();
    let (code, _, _) = linkhom(
        &[
            "verify",
            "--n",
            "4",
            "--sequence",
            p,
            "--input",
            input.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code, 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn delta_synthesis_of_the_borromean_link() {
    let (_, ex, _) = linkhom(&["examples", "--family", "borromean"], None);
    let (code, out, _) = linkhom(&["synthesize", "--moves", "delta"], Some(&ex));
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["length"], 1);
    assert_eq!(v["moves"][0]["kind"], "delta");
}

#[test]
fn bounds_for_all_maximal_sublinks() {
    let (_, ex, _) = linkhom(
        &["examples", "--family", "maximal-sublinks", "--n", "5"],
        None,
    );
    let (code, out, _) = linkhom(&["bounds"], Some(&ex));
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["nh"]["lower"], 10);
    assert_eq!(v["nh"]["upper"], 12);
}

#[test]
fn normal_form_and_expansion() {
    let (code, out, _) = linkhom(&["normalize4", "[x14,x13]^2 x12"], None);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["134"], 2);
    assert_eq!(v["12"], 1);
    let (code, out, _) = linkhom(&["expand", "--m", "2", "[x1,x2]"], None);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 + X1X2 - X2X1");
}

#[test]
fn big_exponents_survive_json() {
    let input = r#"{"n":4,"normal_form":{"123":3,"124":6,"134":9,"234":3,"1234":1606938044258990275541962092341162602522202993782792835301377,"1324":2}}"#;
    let (code, out, _) = linkhom(&["nh"], Some(input));
    assert_eq!(code, 0);
    assert!(out.contains("1606938044258990275541962092341162602522202993782792835301377"));
    assert_eq!(json(&out)["nh"], 6);
}

#[test]
fn witness_outputs() {
    let (code, out, _) = linkhom(&["witness", "--n", "8"], None);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["total_weight"], 16);
    assert_eq!(v["high_degree_vertex"]["degree"], 4);
    let (code, dot, _) = linkhom(&["witness", "--n", "6", "--dot"], None);
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph witness {"));
}

#[test]
fn environment_sets_threads_and_budget() {
    let out = Command::new(env!("CARGO_BIN_EXE_linkhom"))
        .args(["phi", "--n", "7", "--k", "3", "--w", "1"])
        .env("LINKHOM_THREADS", "3")
        .env("LINKHOM_BUDGET_DEFAULT", "60s")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&String::from_utf8(out.stdout).unwrap())["value"], 9);
    let bad = Command::new(env!("CARGO_BIN_EXE_linkhom"))
        .args(["phi", "--n", "5", "--k", "3", "--w", "1"])
        .env("LINKHOM_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
