// String-level lemmas on small cases, then the exhaustive sweeps.

use tsing::exactmath::HjString;
use tsing::lemmas::{discrepancy_bounds, f_squared, lemma_t, round_trips};
use tsing::singularities::{boundary_pullback_selfint, conjugate_string, discrepancies, s_string};

pub fn run_example() -> tsing::Result<()> {
    let s: HjString = "[2,5,3]".parse()?;
    let a: Vec<String> = discrepancies(&s)?.iter().map(ToString::to_string).collect();
    println!("{s}: discrepancies {}, F^2 = {}", a.join(" "), boundary_pullback_selfint(&s)?);

    let left: HjString = "[3,2]".parse()?;
    let right = conjugate_string(&left)?;
    for t in 0..3 {
        let st = s_string(&left, &right, t)?;
        println!("S_{t} from {left} and {right}: {st}, conjugate {}", conjugate_string(&st)?);
    }

    for sweep in [f_squared(6), discrepancy_bounds(6), lemma_t(30, 3, 4), round_trips(100)] {
        println!("{:<18} {:>7} cases  {}", sweep.name, sweep.checked, if sweep.passed() { "ok" } else { "FAILED" });
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tsing::Result<()> {
    run_example()
}
