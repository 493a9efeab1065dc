//! Rewrites the bundled sequence fixtures from the computed counts.
//!
//! `cargo run --example regenerate_fixtures -- [dir]`

use std::path::PathBuf;

use diffops::sequences::{generate_fixture, sequence_ids};

fn main() -> diffops::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/oeis"));
    std::fs::create_dir_all(&dir)?;
    for id in sequence_ids() {
        let path = dir.join(format!("{id}.txt"));
        std::fs::write(&path, generate_fixture(id, 30)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
