// Degenerate fibres: chains and the branched form.

use num_bigint::BigInt;
use tsing::classification::{validate_fibre, FibreGraph};
use tsing::exactmath::HjString;

fn chain(v: &[i64]) -> FibreGraph {
    FibreGraph::Chain(v.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn run_example() -> tsing::Result<()> {
    for c in [&[1, 1][..], &[1, 2, 2, 1], &[2, 1, 2], &[2, 3, 1, 2, 3], &[3, 1, 2]] {
        println!("chain {c:?}: {:?}", validate_fibre(&chain(c))?);
    }
    let tree = FibreGraph::Branched {
        left: HjString::from_u64s(&[3, 2]),
        centre: BigInt::from(4),
        right: HjString::from_u64s(&[2, 3]),
        tail: vec![BigInt::from(2), BigInt::from(2)],
    };
    println!("branched {tree:?}: {:?}", validate_fibre(&tree)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> tsing::Result<()> {
    run_example()
}
