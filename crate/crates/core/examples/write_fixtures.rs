//! Regenerates the JSON files under `fixtures/`.
//!
//! cargo run -p pretopo --example write_fixtures [DIR]

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"));
    std::fs::create_dir_all(&dir)?;
    for (name, text) in pretopo::fixtures::files() {
        std::fs::write(dir.join(&name), text)?;
        println!("{}", name);
    }
    Ok(())
}
