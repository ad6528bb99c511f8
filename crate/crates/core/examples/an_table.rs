// Rebuilds every toric degeneration in the embedded matching table.

use tsing::classification::{join, verify_an_table, TableData};

pub fn run_example() -> tsing::Result<()> {
    let data = TableData::embedded();
    let checks = verify_an_table(&data);
    for (row, check) in data.an_rows.iter().zip(&checks) {
        println!(
            "{:>4}  X: {:<28} Y: {:>3} {}  {}",
            row.label,
            join(&row.x_sings),
            row.y_family,
            row.y_triple,
            if check.passed() { "ok" } else { "FAILED" }
        );
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} rows reproduced", checks.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> tsing::Result<()> {
    run_example()
}
