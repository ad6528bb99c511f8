// The sporadic configurations and their surface counts.

use tsing::classification::{sporadic_catalog, TableData};

pub fn run_example() -> tsing::Result<()> {
    let catalog = sporadic_catalog(&TableData::embedded());
    for e in &catalog.entries {
        println!("{:<18} K^2 = {}  surfaces {}", e.label, e.k_squared, e.surfaces);
    }
    println!(
        "{} isolated surfaces and {} one-parameter family",
        catalog.isolated_surfaces, catalog.families
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> tsing::Result<()> {
    run_example()
}
