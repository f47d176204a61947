use std::path::PathBuf;

use depcat::{run, Output, EXIT_ALGEBRA, EXIT_FAIL, EXIT_INPUT, EXIT_OK};

fn here(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel).to_string_lossy().into_owned()
}

fn core(name: &str) -> String {
    here(&format!("../depcat-core/fixtures/{}", name))
}

fn depcat(args: &[&str]) -> Output {
    run(std::iter::once("depcat").chain(args.iter().copied()))
}

#[test]
fn check_star_is_ok() {
    let o = depcat(&["check", &here("fixtures/star.mltt")]);
    assert_eq!(o.code, EXIT_OK, "{:?}", o);
    assert_eq!(o.stdout, "OK\n");
}

#[test]
fn check_star_at_a_pi_type_fails_with_a_span() {
    let o = depcat(&["check", &here("fixtures/star_pi.mltt")]);
    assert_eq!(o.code, EXIT_FAIL);
    let lines: Vec<_> = o.stdout.lines().collect();
    assert_eq!(lines[0], "OK");
    assert!(lines[1].starts_with("FAIL ") && lines[1].ends_with("@2:1"), "{}", lines[1]);
}

#[test]
fn check_nat_successor() {
    let o = depcat(&["check", &core("nat.mltt")]);
    assert_eq!(o.code, EXIT_OK, "{:?}", o);
    assert!(o.stdout.lines().all(|l| l == "OK"));
}

#[test]
fn json_emits_one_object_per_item() {
    let o = depcat(&["--format", "json", "check", &here("fixtures/star_pi.mltt")]);
    assert_eq!(o.code, EXIT_FAIL);
    let objs: Vec<serde_json::Value> = o.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(objs.len(), 2);
    assert_eq!(objs[0]["verdict"], "OK");
    assert_eq!(objs[1]["verdict"], "FAIL");
    assert_eq!(objs[1]["span"]["line"], 2);
}

#[test]
fn parse_and_io_errors_exit_2() {
    let o = depcat(&["check", &here("fixtures/broken.mltt")]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("syntax error"), "{}", o.stderr);
    assert_eq!(depcat(&["check", &here("fixtures/missing.mltt")]).code, EXIT_INPUT);
    assert_eq!(depcat(&["frobnicate"]).code, EXIT_INPUT);
}

#[test]
fn eval_star_is_the_unique_point() {
    let o = depcat(&["eval", &here("fixtures/star.mltt")]);
    assert_eq!(o.code, EXIT_OK, "{:?}", o);
    assert_eq!(o.stdout, "star : Unit = {• -> •}\n");
}

#[test]
fn eval_in_finsets_and_the_term_model() {
    let o = depcat(&["eval", &core("z3.mltt"), "--env", &core("zmod3.env")]);
    assert_eq!(o.code, EXIT_OK, "{:?}", o);
    assert!(o.stdout.contains("s[s[z[]]] : Z3[] = {• -> 2}"), "{}", o.stdout);
    let t = depcat(&["eval", "--model", "term", &core("z3.mltt")]);
    assert_eq!(t.code, EXIT_OK, "{:?}", t);
    assert_eq!(t.stdout.lines().count(), 4);
}

#[test]
fn eval_rejects_an_algebra_breaking_the_axioms() {
    let o = depcat(&["eval", &core("z3.mltt"), "--env", &core("trunc.env")]);
    assert_eq!(o.code, EXIT_ALGEBRA);
    assert!(o.stderr.contains("algebra violation"), "{}", o.stderr);
}

#[test]
fn eval_without_an_env_for_constants_is_an_input_error() {
    assert_eq!(depcat(&["eval", &core("z3.mltt")]).code, EXIT_INPUT);
}

#[test]
fn laws_pass_and_print_the_seed() {
    let o = depcat(&["--seed", "5", "laws", "--model", "finset", "--budget", "10"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.starts_with("seed 5\n"));
    assert!(o.stdout.lines().filter(|l| l.starts_with("LAW ")).all(|l| l.ends_with(" PASS")));
    let t = depcat(&["laws", "--model", "term", "--budget", "small"]);
    assert_eq!(t.code, EXIT_OK, "{}", t.stdout);
}

#[test]
fn bridge_on_a_tiny_instance() {
    let o = depcat(&["bridge", "--instance", &here("fixtures/tiny.ctxccc")]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.ends_with("ROUNDTRIP PASS\n"));
    let l = depcat(&["laws", "--model", "bridge-instance", "--instance", &here("fixtures/tiny.ctxccc"), "--budget", "5"]);
    assert_eq!(l.code, EXIT_OK, "{}", l.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["--seed", "3", "--format", "json", "laws", "--model", "finset", "--budget", "5"];
    assert_eq!(depcat(&args), depcat(&args));
}

#[test]
fn fuel_flag_is_accepted() {
    let o = depcat(&["--fuel", "10", "check", &core("z3.mltt")]);
    assert_eq!(o.code, EXIT_OK, "{:?}", o);
}
