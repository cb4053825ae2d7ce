//! Writes the peer-review example workspace to fixtures/peer-review at the
//! repository root. The committed files are checked against the builder by
//! the fixture_files integration test.

use std::path::PathBuf;

fn main() {
    let target = match std::env::args().nth(1) {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/peer-review"),
    };
    let ws = pbu_core::fixture::peer_review();
    pbu_core::workspace::save_workspace(&ws, &target).expect("write fixture");
    println!("wrote {}", target.display());
}
