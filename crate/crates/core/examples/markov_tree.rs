// The mutation trees of the four Markov-type equations.

use num_bigint::BigInt;
use tsing::markov::{MarkovEquation, Triple};

pub fn run_example() -> tsing::Result<()> {
    let bound = BigInt::from(200);
    for eq in MarkovEquation::all() {
        let sols = eq.enumerate(&bound);
        let shown: Vec<String> = sols.iter().take(8).map(ToString::to_string).collect();
        println!("{eq}: {} solutions up to {bound}: {} ...", sols.len(), shown.join(" "));
    }

    let markov = MarkovEquation::family(1)?;
    let start = Triple::new(1, 1, 1);
    let mut t = start.clone();
    // Walk up the tree, always replacing the smallest entry.
    for _ in 0..6 {
        let pos = (0..3).min_by_key(|&i| t.0[i].clone()).expect("three entries");
        t = markov.mutate(&t, pos)?;
    }
    println!("climbed from {start} to {t}");
    let path: Vec<String> = markov.descent_path(&t).iter().map(ToString::to_string).collect();
    println!("descent: {}", path.join(" -> "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> tsing::Result<()> {
    run_example()
}
