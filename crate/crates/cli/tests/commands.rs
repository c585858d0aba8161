//! The binary end to end: reports, exit codes and graph export.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_comprehend"))
        .args(args)
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (
        out.status.code().unwrap(),
        report,
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn powerset_factorisation_reports_the_image() {
    let (code, r, _) = run(&["factorize", "--scheme", "powerset", &data("f.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"], "ok");
    assert_eq!(r["result"]["image"], serde_json::json!(["a", "b"]));
    assert_eq!(r["result"]["middle"], serde_json::json!(["a", "b"]));
}

#[test]
fn pi1_of_bz2_has_order_two() {
    let (code, r, _) = run(&["pi1", &data("bz2.json"), "--base", "v"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["order"], 2);
    let table = r["result"]["group"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 2);
    assert_eq!(table[1][1], "id_v");
}

#[test]
fn checks_exit_with_two_when_false() {
    let (code, r, _) = run(&["check", "initial", &data("pick_source.json")]);
    assert_eq!((code, r["outcome"].as_str()), (0, Some("true")));
    let (code, r, _) = run(&["check", "final", &data("pick_source.json")]);
    assert_eq!((code, r["outcome"].as_str()), (2, Some("false")));
    let (code, _, _) = run(&["check", "covering", &data("pick_source.json")]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["check", "dopf", &data("double_cover_map.json")]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["check", "principal", &data("double_cover_map.json")]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["check", "principal", &data("pick_source.json")]);
    assert_eq!(code, 2);
}

#[test]
fn frobenius_and_beck_chevalley_from_files() {
    let (code, _, _) = run(&[
        "check",
        "frobenius",
        "--scheme",
        "powerset",
        &data("f.json"),
        &data("x_subset.json"),
        &data("y_subset.json"),
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&[
        "check",
        "beck-chevalley",
        "--scheme",
        "powerset",
        &data("f.json"),
        &data("y_subset.json"),
        &data("x_subset.json"),
    ]);
    assert_eq!(code, 0);
    // picking the source is not a covering: at b the two sides have 3 and
    // 2 elements
    let (code, r, _) = run(&[
        "check",
        "frobenius",
        &data("pick_source.json"),
        &data("point_one.json"),
        &data("arrow_diagram.json"),
    ]);
    assert_eq!(code, 2, "{r}");
    let (code, _, _) = run(&[
        "check",
        "frobenius",
        &data("pick_target.json"),
        &data("point_one.json"),
        &data("arrow_diagram.json"),
    ]);
    assert_eq!(code, 0);
}

#[test]
fn invalid_input_exits_with_one() {
    let (code, _, err) = run(&["pi1", &data("span.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("--base"));
    let (code, _, _) = run(&["factorize", "--scheme", "powerset", &data("bz2.json")]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["borel", &data("bz2.json"), &data("z3_action.json")]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["pi0", &data("no_such_file.json")]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["corpus", "nonsense"]);
    assert_eq!(code, 1);
}

#[test]
fn exhausted_budget_exits_with_three() {
    let (code, _, err) = run(&["pi1", &data("bz2.json"), "--budget", "1"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn borel_then_fibre_recovers_the_action() {
    let (code, r, _) = run(&["borel", &data("bz2.json"), &data("swap_action.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["sheets"], 2);
    let (code, r, _) = run(&["fibre", &data("bz2.json"), &data("double_cover.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["orbits"], 1);
    assert_eq!(
        r["result"]["action"]["action"]["s"],
        serde_json::json!(["1", "0"])
    );
}

#[test]
fn kan_and_elements_in_every_scheme() {
    let (code, r, _) = run(&["kan", &data("collapse.json"), &data("arrow_diagram.json")]);
    assert_eq!(code, 0);
    // colimit over the arrow: the two classes of the codomain
    assert_eq!(
        r["result"]["pushforward"]["sets"]["*"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
    let (code, r, _) = run(&[
        "kan",
        "--scheme",
        "multicat",
        &data("units_into_pair.json"),
        &data("units_algebra.json"),
    ]);
    assert_eq!(code, 0);
    // b gains the unordered pairs from a: {0,0}, {0,1}, {1,1}
    assert_eq!(r["result"]["pushforward"]["sets"]["b"], 4);
    let (code, r, _) = run(&[
        "elements",
        "--scheme",
        "multicat",
        &data("sum_algebra.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["total"]["colours"].as_array().unwrap().len(), 5);
    let (code, _, _) = run(&["elements", "--scheme", "powerset", &data("x_subset.json")]);
    assert_eq!(code, 0);
}

#[test]
fn galois_check_passes_on_bz2() {
    let (code, r, _) = run(&["galois-check", &data("bz2.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"], "pass");
    assert_eq!(r["result"]["coverings"], r["result"]["gsets"]);
}

#[test]
fn dot_export_highlights_the_covering_part() {
    let path = std::env::temp_dir().join(format!("comprehend-cover-{}.dot", std::process::id()));
    let p = path.display().to_string();
    let (code, _, _) = run(&["cover", &data("bz2.json"), "--dot", &p]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("cluster_e") && text.contains("cluster_b"));
    assert!(text.contains("color=\"#c0392b\""));
    assert!(!text.contains("id_v"), "identities are not drawn");
}

#[test]
fn reports_repeat_byte_for_byte_without_timing() {
    let a = Command::new(env!("CARGO_BIN_EXE_comprehend"))
        .args(["cover", &data("bz2.json")])
        .output()
        .unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_comprehend"))
        .args(["cover", &data("bz2.json")])
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let (_, r, _) = run(&["cover", &data("bz2.json"), "--timing"]);
    assert!(r["elapsed_ms"].is_u64());
}
