// Growing T-strings from their seeds and recognizing them arithmetically.

use num_bigint::BigInt;
use tsing::singularities::{generate_t_strings, is_t_string, t_seed, t_steps, t_string_entry_sum};

pub fn run_example() -> tsing::Result<()> {
    for d in 1..=3 {
        let seed = t_seed(d);
        let [left, right] = t_steps(&seed);
        println!("T_{d}: seed {seed}, steps {left} and {right}");
    }

    for d in 1..=4usize {
        let strings = generate_t_strings(d, 5);
        println!("T_{d}-strings of length <= 5: {}", strings.len());
        for s in strings.iter().take(4) {
            let sum: BigInt = s.entries().iter().sum();
            assert_eq!(sum, t_string_entry_sum(&BigInt::from(d), s.len()));
            assert_eq!(is_t_string(s), Some(BigInt::from(d)));
            println!("  {s}  entry sum {sum}");
        }
    }

    let not_t = "[3,3,3]".parse()?;
    println!("[3,3,3] recognized as {:?}", is_t_string(&not_t));
    Ok(())
}

#[allow(dead_code)]
fn main() -> tsing::Result<()> {
    run_example()
}
