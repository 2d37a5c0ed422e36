// Build the curated catalog, write it to disk and load it back.

use formatio::constructions::catalog::{lint, load_catalog, write_catalog};
use formatio::constructions::{build_catalog, CatalogConfig};

pub fn run_example() -> formatio::Result<()> {
    let entries = build_catalog(&CatalogConfig::with_max_order(32))?;
    println!("{} groups of order <= 32", entries.len());
    for e in entries.iter().filter(|e| e.tags.contains("schmidt")) {
        println!("  schmidt: {:8} order {:2} from {}", e.group.name(), e.group.order(), e.provenance);
    }
    assert!(lint(&entries)?.is_empty());

    let dir = std::env::temp_dir().join(format!("formatio-catalog-{}", std::process::id()));
    let manifest = write_catalog(&dir, &entries)?;
    let loaded = load_catalog(&manifest)?;
    println!("wrote {} and read back {} groups", manifest.display(), loaded.len());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> formatio::Result<()> {
    run_example()
}
