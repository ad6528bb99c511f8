// Hirzebruch-Jung strings of a few cyclic quotient singularities, with their
// conjugates, duals and classes.

use num_bigint::BigInt;
use tsing::exactmath::{conjugate_fraction, hj_evaluate, hj_expand, HjString};
use tsing::singularities::{classify, milnor_number};

pub fn run_example() -> tsing::Result<()> {
    for (n, a) in [(2, 1), (4, 1), (7, 3), (16, 7), (25, 9), (20, 9), (36, 17), (5, 2)] {
        let (n, a) = (BigInt::from(n), BigInt::from(a));
        let s = hj_expand(&n, &a)?;
        let conj = conjugate_fraction(&n, &a)?;
        let class = classify(&n, &a)?;
        let mu = milnor_number(&class)
            .map(|m| m.to_string())
            .unwrap_or_else(|_| "-".into());
        println!(
            "{n}/{a} = {s}  conjugate {conj} = {}  reversed {}  class {class}  mu {mu}",
            hj_expand(conj.num(), conj.den())?,
            s.reversed(),
        );
    }

    let s: HjString = "[3,2,2,3]".parse()?;
    println!("{s} evaluates to {}", hj_evaluate(&s)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> tsing::Result<()> {
    run_example()
}
