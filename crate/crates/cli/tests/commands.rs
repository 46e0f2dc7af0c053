use std::path::PathBuf;
use std::process::Command as Proc;

use leibniz_cli::{run, EXIT_AUDIT_FAILED, EXIT_GUARD, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

fn corpus(file: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(file).to_string_lossy().into_owned()
}

fn leibniz(args: &[&str]) -> leibniz_cli::Outcome {
    run(std::iter::once("leibniz").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = leibniz(&all);
    assert!(out.code == EXIT_OK || out.code == EXIT_AUDIT_FAILED, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn dims(v: &Value) -> Vec<u64> {
    v["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect()
}

#[test]
fn derived_series_of_example1() {
    let ex = corpus("examples.alg");
    let r = json(&["series", &ex, "-a", "ex1", "--kind", "derived"]);
    assert_eq!(dims(&r["result"]), [6, 4, 0]);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["tool"], "leibniz");
    assert!(r.get("timing_ms").is_none());
    let r = json(&["series", &ex, "-a", "ex1", "--kind", "lower"]);
    assert_eq!(dims(&r["result"]), [6, 4, 2, 1, 0]);
    assert_eq!(r["result"]["nilpotency_class"], 4);
    let r = json(&["series", &ex, "-a", "ex1", "--kind", "upper"]);
    assert_eq!(dims(&r["result"]), [0, 2, 4, 5, 6]);
}

#[test]
fn check_reports_flags_and_exits_zero() {
    let ex = corpus("examples.alg");
    let out = leibniz(&["check", &ex, "-a", "ex1"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("left fails at (e3, e3, e3)"));
    let r = json(&["check", &ex, "-a", "ex1"]);
    assert_eq!(r["result"]["left_ok"], false);
    assert_eq!(r["result"]["right_ok"], true);
    assert_eq!(r["result"]["triples_checked"], 216);
}

#[test]
fn example2_audit_exits_three() {
    let out = leibniz(&["lazy", "example2", "--depth", "12", "--audit", "--format", "json"]);
    assert_eq!(out.code, EXIT_AUDIT_FAILED);
    let r: Value = serde_json::from_str(&out.stdout).unwrap();
    let status = |id: &str| {
        r["result"]["claims"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap()["status"].clone()
    };
    assert_eq!(status("i-lie-simple"), "failed");
    assert_eq!(status("i-leibniz-simple"), "failed");
    assert_eq!(status("quotient-by-i-isomorphic-to-j"), "confirmed");
    // Without --audit the snapshot alone succeeds.
    assert_eq!(leibniz(&["lazy", "example2", "--depth", "12"]).code, EXIT_OK);
}

#[test]
fn structure_commands_on_example1() {
    let ex = corpus("examples.alg");
    let r = json(&["leib", &ex, "-a", "ex1"]);
    assert_eq!(r["result"]["leib"]["span"], "span{e1, e4, e5, e6}");
    let r = json(&["centers", &ex, "-a", "ex1"]);
    assert_eq!(r["result"]["left"]["span"], "span{e1, e6}");
    assert_eq!(r["result"]["right"]["span"], "span{e1, e4, e5, e6}");
    let r = json(&["radical", &ex, "-a", "ex1"]);
    assert_eq!(r["result"]["radical"]["dim"], 6);
    assert_eq!(r["result"]["method"], "trace-form");
    let r = json(&["quotient", &ex, "-a", "ex1", "--by", "e1,e2"]);
    assert_eq!(r["result"]["quotient"]["dim"], 4);
    assert_eq!(r["result"]["by"]["closure_added"], false);
    // e2 alone generates span{e1, e2}.
    let r = json(&["quotient", &ex, "-a", "ex1", "--by", "e2"]);
    assert_eq!(r["result"]["by"]["closure_added"], true);
    assert_eq!(r["result"]["by"]["ideal"]["span"], "span{e1, e2}");
}

#[test]
fn sl2_commands() {
    let cl = corpus("classical.alg");
    let gf = corpus("small_gf.alg");
    assert_eq!(json(&["semisimple", &cl, "-a", "sl2"])["result"]["semisimple"], true);
    assert_eq!(json(&["semisimple", &gf, "-a", "sl2_gf5"])["result"]["semisimple"], true);
    let r = json(&["ideals", &gf, "-a", "sl2_gf5"]);
    assert_eq!(r["result"]["count"], 2);
    let r = json(&["primes", &gf, "-a", "sl2_gf5", "--ideal", "0"]);
    assert_eq!(r["result"]["query"]["prime"], true);
    let r = json(&["prime-radical", &gf, "-a", "sl2_gf5"]);
    assert_eq!(r["result"]["prime_radical"]["dim"], 0);
    assert_eq!(r["result"]["equals_leib"], true);
}

#[test]
fn chains_are_closed_and_checked() {
    let ex = corpus("examples.alg");
    let r = json(&["chain", &ex, "-a", "ex1", "--terms", "g", "e1,e4", "0"]);
    let terms = r["result"]["terms"].as_array().unwrap();
    assert_eq!(terms[1]["ideal"]["span"], "span{e1, e4, e5, e6}");
    assert_eq!(terms[1]["closure_added"], true);
    assert_eq!(r["result"]["witness"]["witness_m"], 1);
    let out = leibniz(&["chain", &ex, "-a", "ex1", "--terms", "e1", "e1,e2"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("'e1,e2'"), "{}", out.stderr);
}

#[test]
fn direct_sums() {
    let cl = corpus("classical.alg");
    let r = json(&["dsum", &cl, "-a", "sl2", "-a", "heisenberg"]);
    assert_eq!(r["result"]["sum"]["dim"], 6);
    assert_eq!(r["result"]["sum"]["convention"], "both");
    assert_eq!(leibniz(&["dsum", &cl, "-a", "sl2"]).code, EXIT_INPUT);
    let mixed = leibniz(&["dsum", &corpus("small_gf.alg"), "-a", "sl2_gf5", "-a", "square2_gf3"]);
    assert_eq!(mixed.code, EXIT_INPUT);
}

#[test]
fn input_errors_exit_one() {
    let ex = corpus("examples.alg");
    for args in [
        vec!["check", "/nonexistent.alg", "-a", "ex1"],
        vec!["check", ex.as_str(), "-a", "nope"],
        vec!["ideals", &corpus("classical.alg"), "-a", "sl2"],
        vec!["quotient", ex.as_str(), "-a", "ex1", "--by", "e9"],
        vec!["quotient", ex.as_str(), "-a", "ex1", "--by", "g"],
        vec!["primes", &corpus("small_gf.alg"), "-a", "sl2_gf5", "--ideal", "e1"],
        vec!["lazy", "nope", "--depth", "3"],
        vec!["lazy", "example2", "--depth", "1000"],
        vec!["series", ex.as_str(), "-a", "ex1"],
        vec!["bogus"],
    ] {
        let out = leibniz(&args);
        assert_eq!(out.code, EXIT_INPUT, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn guard_exceeded_exits_two() {
    let out = leibniz(&["ideals", &corpus("examples.alg"), "-a", "ex1_gf3", "--guard", "100"]);
    assert_eq!(out.code, EXIT_GUARD);
    assert!(out.stderr.contains("728"));
}

#[test]
fn malformed_file_names_the_line() {
    let dir = std::env::temp_dir().join(format!("leibniz-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.alg");
    std::fs::write(&path, "algebra a\n  field Q\n  dim 2\n  bracket e1 e3 = e1\nend\n").unwrap();
    let out = leibniz(&["check", path.to_str().unwrap(), "-a", "a"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timing_is_opt_in_and_outside_the_digest() {
    let ex = corpus("examples.alg");
    let plain = json(&["leib", &ex, "-a", "ex1"]);
    let timed = json(&["leib", &ex, "-a", "ex1", "--timing"]);
    assert!(timed["timing_ms"].is_number());
    assert_eq!(plain["inputs_digest"], timed["inputs_digest"]);
    assert_eq!(plain["result"], timed["result"]);
}

#[test]
fn digest_follows_content_not_path() {
    let ex = corpus("examples.alg");
    let a = json(&["leib", &ex, "-a", "ex1"]);
    let b = json(&["leib", &ex, "-a", "ex1_gf3"]);
    assert_ne!(a["inputs_digest"], b["inputs_digest"]);
    let dir = std::env::temp_dir().join(format!("leibniz-digest-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let copy = dir.join("copy.alg");
    std::fs::copy(&ex, &copy).unwrap();
    let c = json(&["leib", copy.to_str().unwrap(), "-a", "ex1"]);
    assert_eq!(a["inputs_digest"], c["inputs_digest"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_matches_in_process_run_and_reads_guard_env() {
    let bin = env!("CARGO_BIN_EXE_leibniz");
    let ex = corpus("examples.alg");
    let args = ["series", ex.as_str(), "-a", "ex1", "--kind", "derived", "--format", "json"];
    let out = Proc::new(bin).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), leibniz(&args).stdout);

    let ideals = ["ideals", ex.as_str(), "-a", "ex1_gf3"];
    let out = Proc::new(bin).args(ideals).env("LEIBNIZ_GUARD", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Proc::new(bin).args(ideals).env("LEIBNIZ_GUARD", "5").args(["--guard", "1000"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Proc::new(bin).args(["lazy", "example2", "--depth", "12", "--audit"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}
