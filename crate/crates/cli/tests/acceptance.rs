//! One line per acceptance criterion. The full theorem suite runs three
//! times through the binary; the first report supplies criteria 1 to 9 and
//! the byte comparison of all three is criterion 10.
//!
//! Thresholds are exact counts, pinned below. Criterion 4 is expected to
//! print FAIL: Frobenius reciprocity does not hold for arbitrary functors in
//! the copresheaf and presheaf schemes. The test asserts instead that every
//! failure lies outside the class where it is known to hold (coverings, and
//! functors into groupoids), that the two equivalent comparisons fail on
//! exactly the same instances, and that powerset and the mutation behave.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

const RUNS: usize = 3;
const TIME_LIMIT: Duration = Duration::from_secs(600);

const SQUARES: u64 = 500;
const FACTORISED: u64 = 1000;
const UNIQUE: u64 = 100;
const FROBENIUS_INSTANCES: u64 = 300;
const KAN_PAIRS: u64 = 500;
const ELEMENT_PAIRS: u64 = 300;
const MULTI_FACTORISED: u64 = 50;
const WORD_PAIRS: u64 = 100;

fn suite() -> (Vec<u8>, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_comprehend"))
        .args([
            "corpus",
            "theorems",
            "--max-objects",
            "3",
            "--max-morphisms",
            "8",
            "--seed",
            "0",
        ])
        .output()
        .unwrap();
    let took = start.elapsed();
    assert!(
        matches!(out.status.code(), Some(0 | 2)),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    (out.stdout, took)
}

fn detail(c: &Value, key: &str) -> u64 {
    c["details"][key].as_u64().unwrap_or(0)
}

fn line(id: u32, passed: bool, text: String) -> bool {
    println!(
        "criterion {id:>2}: {} {text}",
        if passed { "PASS" } else { "FAIL" }
    );
    passed
}

#[test]
fn acceptance() {
    let runs: Vec<(Vec<u8>, Duration)> = (0..RUNS).map(|_| suite()).collect();
    let report: Value = serde_json::from_slice(&runs[0].0).unwrap();
    let criteria = report["result"]["criteria"].as_array().unwrap();
    let by_id = |id: u64| criteria.iter().find(|c| c["id"] == id).unwrap();
    let slowest = runs.iter().map(|r| r.1).max().unwrap();
    let mut failed: Vec<u32> = Vec::new();
    let mut record = |id: u32, ok: bool, text: String| {
        if !line(id, ok, text) {
            failed.push(id);
        }
    };

    let c = by_id(1);
    let squares = c["checked"].as_u64().unwrap();
    let ok =
        c["passed"] == true && c["failures"] == 0 && squares >= SQUARES && slowest <= TIME_LIMIT;
    record(
        1,
        ok,
        format!(
            "{squares} squares (min {SQUARES}), {} failures, suite {:.1}s (max {}s)",
            c["failures"],
            slowest.as_secs_f64(),
            TIME_LIMIT.as_secs()
        ),
    );

    let c = by_id(2);
    let unique = detail(c, "uniqueness");
    let factorised = c["checked"].as_u64().unwrap() - unique;
    let ok =
        c["passed"] == true && c["failures"] == 0 && factorised >= FACTORISED && unique >= UNIQUE;
    record(2, ok, format!(
        "{factorised} factorisations (min {FACTORISED}: copresheaf {}, presheaf {}, powerset {}, multicat {}), {unique} uniqueness witnesses (min {UNIQUE}), {} failures",
        detail(c, "copresheaf"), detail(c, "presheaf"), detail(c, "powerset"), detail(c, "multicat"), c["failures"]));

    let c = by_id(3);
    let ok = c["passed"] == true && c["failures"] == 0;
    record(
        3,
        ok,
        format!(
            "{} composable pairs, {} counterexamples",
            c["checked"], c["failures"]
        ),
    );

    let c = by_id(4);
    let mut enough = true;
    let mut counts = Vec::new();
    for s in ["copresheaf", "presheaf", "powerset"] {
        for k in ["frobenius", "beck_chevalley", "stability"] {
            let n = detail(c, &format!("{s}/{k}/instances"));
            enough &= n >= FROBENIUS_INSTANCES;
            counts.push(format!(
                "{s}/{k} {}/{n}",
                detail(c, &format!("{s}/{k}/failures"))
            ));
        }
    }
    let broken = ["frobenius", "beck_chevalley", "stability"]
        .iter()
        .all(|k| detail(c, &format!("broken/{k}/failed")) == 1);
    record(4, c["passed"] == true, format!(
        "failed/instances (min {FROBENIUS_INSTANCES} each): {}; broken scheme fails all three: {broken}",
        counts.join(", ")));

    let c = by_id(5);
    let ok =
        c["passed"] == true && c["failures"] == 0 && c["checked"].as_u64().unwrap() >= KAN_PAIRS;
    record(
        5,
        ok,
        format!(
            "{} (functor, diagram) pairs (min {KAN_PAIRS}), {} mismatches",
            c["checked"], c["failures"]
        ),
    );

    let c = by_id(6);
    let ok = c["passed"] == true
        && c["failures"] == 0
        && c["checked"].as_u64().unwrap() >= ELEMENT_PAIRS;
    record(
        6,
        ok,
        format!(
            "{} (h, X) pairs (min {ELEMENT_PAIRS}), {} count mismatches",
            c["checked"], c["failures"]
        ),
    );

    let c = by_id(7);
    let ok = c["passed"] == true
        && c["failures"] == 0
        && c["skipped"] == 0
        && detail(c, "deloopings") == 4;
    record(7, ok, format!(
        "{} deloopings, {} based categories x variances against the oracle, {} connected groupoids with {} hom pairs, {} failures",
        detail(c, "deloopings"), detail(c, "based"), detail(c, "galois_checks"), detail(c, "hom_pairs"), c["failures"]));

    let c = by_id(8);
    let ok = c["passed"] == true && c["failures"] == 0 && c["skipped"] == 0;
    record(
        8,
        ok,
        format!(
            "{} actions and {} coverings round-tripped, {} failures",
            detail(c, "actions"),
            detail(c, "coverings"),
            c["failures"]
        ),
    );

    let c = by_id(9);
    let ok = c["passed"] == true
        && c["failures"] == 0
        && detail(c, "factorisations") >= MULTI_FACTORISED
        && detail(c, "word_pairs") >= WORD_PAIRS;
    record(9, ok, format!(
        "{} elements projections, {} factorisations (min {MULTI_FACTORISED}), {} unary functors, {} word pairs (min {WORD_PAIRS}), {} failures",
        detail(c, "elements_projections"), detail(c, "factorisations"), detail(c, "unary_functors"), detail(c, "word_pairs"), c["failures"]));

    let identical = runs.iter().all(|r| r.0 == runs[0].0);
    record(
        10,
        identical,
        format!(
            "{RUNS} runs, {} bytes each, identical: {identical}",
            runs[0].0.len()
        ),
    );

    // Criterion 4 fails for a documented reason; everything else must pass.
    assert_eq!(failed, vec![4], "unexpected criterion results");
    let c = by_id(4);
    assert!(enough && broken);
    for s in ["copresheaf", "presheaf"] {
        for k in ["frobenius", "beck_chevalley", "stability"] {
            assert_eq!(
                detail(c, &format!("{s}/{k}/failures_on_coverings_or_groupoids")),
                0,
                "{s}/{k}"
            );
        }
        assert_eq!(
            detail(c, &format!("{s}/frobenius_vs_beck_chevalley/disagreements")),
            0,
            "{s}"
        );
    }
    // only the two diagram schemes contribute failures
    let diagram_failures: u64 = ["copresheaf", "presheaf"]
        .iter()
        .flat_map(|s| {
            ["frobenius", "beck_chevalley", "stability"]
                .map(|k| detail(c, &format!("{s}/{k}/failures")))
        })
        .sum();
    assert_eq!(c["failures"].as_u64().unwrap(), diagram_failures);
}
