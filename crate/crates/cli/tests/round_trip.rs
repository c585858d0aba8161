//! Every shipped instance file survives parse → serialise → parse.

use std::path::PathBuf;

use comprehend_cli::format::{document, load, parse_document, read_document, Document};

fn shipped() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn shipped_examples_round_trip() {
    let files = shipped();
    assert!(files.len() >= 15, "{}", files.len());
    for path in files {
        let doc = read_document(&path).unwrap();
        let once = document(&load(&doc.instance).unwrap());
        assert_eq!(
            once.instance.kind(),
            doc.instance.kind(),
            "{}",
            path.display()
        );
        // the written form is a fixed point
        let text = serde_json::to_string_pretty(&once).unwrap();
        let again: Document = parse_document(&text).unwrap();
        assert_eq!(again, once, "{}", path.display());
        let twice = document(&load(&again.instance).unwrap());
        assert_eq!(twice, once, "{}", path.display());
    }
}

#[test]
fn documents_written_by_hand_keep_their_meaning() {
    // explicit input and its normal form describe the same category
    let text =
        std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/bz2.json"))
            .unwrap();
    let doc = parse_document(&text).unwrap();
    let normal = document(&load(&doc.instance).unwrap());
    assert_eq!(normal, doc);
}
