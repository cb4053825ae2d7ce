//! Keeps the committed fixtures/peer-review directory in sync with the
//! fixture builder: regenerate with
//! `cargo run -p pbu-core --example gen_fixture` after changing either side.

use std::fs;
use std::path::{Path, PathBuf};

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/peer-review")
}

#[test]
fn committed_fixture_matches_builder_output() {
    let committed = fixture_dir();
    assert!(
        committed.is_dir(),
        "fixtures/peer-review missing; run `cargo run -p pbu-core --example gen_fixture`"
    );
    let fresh = tempfile::tempdir().unwrap();
    let ws = pbu_core::fixture::peer_review();
    pbu_core::workspace::save_workspace(&ws, fresh.path()).unwrap();

    fn collect(root: &Path, prefix: &Path, out: &mut Vec<PathBuf>) {
        for entry in fs::read_dir(root.join(prefix)).unwrap() {
            let entry = entry.unwrap();
            let rel = prefix.join(entry.file_name());
            if entry.path().is_dir() {
                collect(root, &rel, out);
            } else {
                out.push(rel);
            }
        }
    }
    let mut committed_files = Vec::new();
    let mut fresh_files = Vec::new();
    collect(&committed, Path::new(""), &mut committed_files);
    collect(fresh.path(), Path::new(""), &mut fresh_files);
    committed_files.sort();
    fresh_files.sort();
    assert_eq!(committed_files, fresh_files);
    for rel in &committed_files {
        assert_eq!(
            fs::read(committed.join(rel)).unwrap(),
            fs::read(fresh.path().join(rel)).unwrap(),
            "fixture file {} is out of sync with the builder",
            rel.display()
        );
    }
}

#[test]
fn committed_fixture_loads_with_three_approaches_and_one_process() {
    let ws = pbu_core::workspace::load_workspace(&fixture_dir()).unwrap();
    assert_eq!(ws.approaches.len(), 3);
    assert_eq!(ws.processes.len(), 1);
    assert!(!ws.mappings[pbu_core::fixture::PROCESS_ID].is_empty());
}
