use polyfun::cli::{parse_input, run, Format, InputSpec};
use polyfun::Error;
use proptest::prelude::*;
use serde_json::Value;

fn invoke(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["polyfun"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

/// Report with timing fields removed.
fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

const WORKED: &str = "p=2 n=3 m=1\n2 1 6 1 2 1 6 1\n";

#[test]
fn parse_examples() {
    let spec = parse_input(WORKED.as_bytes(), Format::Text).unwrap();
    assert_eq!(spec, InputSpec { p: 2, n: 3, m: 1, values: vec![2, 1, 6, 1, 2, 1, 6, 1] });
    let id = parse_input(b"p=2 n=1 m=1\n0 1", Format::Text).unwrap();
    assert_eq!(id.values, vec![0, 1]);
    assert_eq!(parse_input(b"p=2 n=2 m=1\n0 1 2", Format::Text), Err(Error::Count { expected: 4, found: 3 }));
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_input(b"", Format::Text), Err(Error::Parse { .. })));
    assert!(matches!(parse_input(b"  \n", Format::Json), Err(Error::Parse { .. })));
    assert!(matches!(parse_input(b"p=2 n=2\n0 1 2 3", Format::Text), Err(Error::Parse { .. })));
    assert!(matches!(parse_input(b"p=4 n=2 m=1\n0 1 2 3", Format::Text), Err(Error::Parse { .. })));
    assert!(matches!(parse_input(b"p=2 n=2 m=1 k=3\n0 1 2 3", Format::Text), Err(Error::Parse { .. })));
    match parse_input(b"p=2 n=2 m=1\n0 1\n2 x", Format::Text) {
        Err(Error::Parse { position, .. }) => assert_eq!(position, "line 3, token 2 'x'"),
        other => panic!("{other:?}"),
    }
    assert_eq!(
        parse_input(b"p=2 n=2 m=1\n0 1 4 3", Format::Text),
        Err(Error::Range { value: 4, position: 2, modulus: 4 })
    );
    assert!(matches!(parse_input(b"p=2 n=2 m=1\n0 -1 2 3", Format::Text), Err(Error::Range { value: -1, .. })));
    assert!(matches!(parse_input(br#"{"p":2,"n":2,"m":1,"values":[0,1,2]}"#, Format::Json), Err(Error::Count { .. })));
    assert!(matches!(parse_input(br#"{"p":2,"n":2}"#, Format::Json), Err(Error::Parse { .. })));
}

#[test]
fn decide_worked_example() {
    let (code, out, _) = invoke(&["decide"], WORKED);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "polynomial");
    assert_eq!(v["stage"], "accepted");
    assert_eq!(v["witness"], json(r#"{"(0,0)":2,"(0,1)":1,"(1,0)":2}"#));
    for key in ["split_ns", "divisibility_ns", "solve_ns", "residual_ns"] {
        assert!(v["timings"][key].is_u64());
    }
}

#[test]
fn decide_rejection_reports_counterexample() {
    let (code, out, _) = invoke(&["decide", "--two-stage"], "p=2 n=2 m=1\n0 0 1 0");
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "not_polynomial");
    assert_eq!(v["stage"], "divisibility_check");
    assert_eq!(v["counterexample"], json(r#"{"index":2,"args":[2]}"#));
    assert_eq!(v["two_stage"]["verdict"], "not_polynomial");
    assert!(v.get("witness").is_none());
}

#[test]
fn decide_json_input_from_file() {
    let dir = std::env::temp_dir().join(format!("polyfun-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.json");
    std::fs::write(&path, r#"{"p":2,"n":3,"m":1,"values":[2,1,6,1,2,1,6,1]}"#).unwrap();
    let (code, out, _) = invoke(&["decide", "--input", path.to_str().unwrap(), "--format", "json"], "");
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verdict"], "polynomial");
    let (code, _, err) = invoke(&["decide", "--input", dir.join("missing").to_str().unwrap()], "");
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn reports_are_deterministic() {
    let a = without_timings(json(&invoke(&["synth"], WORKED).1));
    let b = without_timings(json(&invoke(&["synth"], WORKED).1));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn synth_worked_example() {
    let (code, out, _) = invoke(&["synth"], WORKED);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["polynomial"]["terms"], json(r#"{"0":2,"1":6,"2":2,"3":4,"4":5,"5":6}"#));
    assert_eq!(v["polynomial"]["text"], "2 + 6*x + 2*x^2 + 4*x^3 + 5*x^4 + 6*x^5");
    assert_eq!(v["polynomial"]["verified"], true);
}

#[test]
fn synth_bivariate() {
    // x + x^2 y over (Z/4)^2
    let mut values = Vec::new();
    for x in 0..4u64 {
        for y in 0..4u64 {
            values.push(((x + x * x * y) % 4).to_string());
        }
    }
    let input = format!("p=2 n=2 m=2\n{}", values.join(" "));
    let v = json(&invoke(&["synth"], &input).1);
    assert_eq!(v["verdict"], "polynomial");
    assert_eq!(v["polynomial"]["verified"], true);
}

#[test]
fn count_z4() {
    let (code, out, _) = invoke(&["count", "--p", "2", "--n", "2"], "");
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!((v["formula"].clone(), v["enumerated"].clone(), v["match"].clone()), (json("64"), json("64"), json("true")));
}

#[test]
fn count_beyond_budget() {
    let (code, out, _) = invoke(&["count", "--p", "3", "--n", "11"], "");
    assert_eq!(code, 0);
    let v = json(&out);
    assert!(v["formula"].is_null() && v["enumerated"].is_null() && v["match"].is_null());
    assert!(v["all_functions_log10"].as_f64().unwrap() > 9.0e5);
}

#[test]
fn gens_dump() {
    let v = json(&invoke(&["gens", "--p", "2", "--n", "3"], "").1);
    assert_eq!(v["count"], 6);
    assert_eq!(v["generators"][0]["table"], json("[1,0,1,0,1,0,1,0]"));
    assert_eq!(v["generators"][0]["polynomial"]["text"], "1 + 7*x^4");
    let v = json(&invoke(&["gens", "--p", "2", "--n", "2", "--vars", "2"], "").1);
    assert_eq!(v["count"], 12);
}

#[test]
fn oracle_modes() {
    let v = json(&invoke(&["oracle", "--p", "2", "--n", "3"], "").1);
    assert_eq!((v["size"].clone(), v["degree_bound"].clone()), (json("1024"), json("4")));
    let v = json(&invoke(&["oracle", "--input", "-"], WORKED).1);
    assert_eq!((v["member"].clone(), v["agree"].clone()), (json("true"), json("true")));
    let v = json(&invoke(&["oracle", "--p", "2", "--n", "2", "--vars", "2"], "").1);
    assert_eq!(v["method"], "span");
    let (code, _, err) = invoke(&["oracle", "--p", "2"], "");
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn exit_codes() {
    let (code, out, err) = invoke(&["decide"], "");
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("parse error"));
    assert_eq!(invoke(&["decide"], "p=2 n=2 m=1\n0 1 2").0, 2);
    assert_eq!(invoke(&["oracle", "--p", "2", "--n", "3", "--budget", "10"], "").0, 3);
    assert_eq!(invoke(&["gens", "--p", "2", "--n", "20", "--vars", "2"], "").0, 3);
    assert_eq!(invoke(&["frobnicate"], "").0, 2);
    assert_eq!(invoke(&["gens", "--p", "6", "--n", "1"], "").0, 2);
}

#[test]
fn bench_small_range() {
    let (code, out, _) = invoke(&["bench", "--n-min", "4", "--n-max", "6", "--reps", "1", "--oracle-samples", "4"], "");
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["scaling"]["rows"].as_array().unwrap().len(), 3);
    assert!(v["oracle"]["speedup"].as_f64().unwrap() > 1.0);
}

fn input_spec() -> impl Strategy<Value = InputSpec> {
    prop_oneof![Just((2u64, 1u32, 1usize)), Just((2, 3, 1)), Just((3, 2, 1)), Just((2, 2, 2)), Just((5, 1, 2))]
        .prop_flat_map(|(p, n, m)| {
            let q = p.pow(n);
            proptest::collection::vec(0..q, (q as usize).pow(m as u32))
                .prop_map(move |values| InputSpec { p, n, m, values })
        })
}

proptest! {
    #[test]
    fn serialize_parse_round_trip(spec in input_spec()) {
        for format in [Format::Text, Format::Json] {
            prop_assert_eq!(parse_input(spec.serialize(format).as_bytes(), format).unwrap(), spec.clone());
        }
    }
}
