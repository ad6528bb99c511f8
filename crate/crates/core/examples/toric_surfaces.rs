// Fans of weighted projective planes and their quotients, with singularities
// read off both from the fan and from the group action.

use num_bigint::BigInt;
use tsing::classification::{build_family_fan, predicted_singularities, TableData};
use tsing::markov::Triple;
use tsing::toric::{k_squared, surface_report, wps_fan};

pub fn run_example() -> tsing::Result<()> {
    let b = BigInt::from;
    let fan = wps_fan(&b(1), &b(9), &b(20))?;
    let report = surface_report(&fan)?;
    println!("P(1,9,20): rays {fan}, K^2 = {}", k_squared(&fan));
    for (q, c) in report.quot_sings.iter().zip(&report.singularities) {
        println!("  {q} -> {c}");
    }

    let data = TableData::embedded();
    for (id, t) in [("1", Triple::new(1, 2, 5)), ("5", Triple::new(1, 1, 1)), ("8.4", Triple::new(1, 2, 1))] {
        let rec = data.family(id)?;
        let fan = build_family_fan(rec, &t)?;
        let report = surface_report(&fan)?;
        let predicted = predicted_singularities(rec, &t)?;
        assert_eq!(predicted, report.singularities);
        let d: Vec<String> = report.d_values.iter().flatten().map(ToString::to_string).collect();
        println!(
            "family {id} at {t}: rays {fan}, singularities {:?}, d = {}, K^2 = {}, Noether {}",
            report.singular_points().iter().map(ToString::to_string).collect::<Vec<_>>(),
            d.join(","),
            report.k_squared,
            report.noether_ok,
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tsing::Result<()> {
    run_example()
}
