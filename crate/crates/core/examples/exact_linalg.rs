//! Exact rank, kernel and linear solves over the rationals.

use ziegler::linalg::{kernel_basis, ratio, solve, RatMatrix, SolveOutcome};

fn main() {
    let m = RatMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, -1, 5]]);
    println!("rank {}", m.rank());
    for v in kernel_basis(&m) {
        println!(
            "kernel vector {:?}",
            v.iter().map(ToString::to_string).collect::<Vec<_>>()
        );
    }
    for b in [
        [ratio(1, 2), ratio(1, 1), ratio(-3, 7)],
        [ratio(1, 2), ratio(0, 1), ratio(0, 1)],
    ] {
        match solve(&m, &b).expect("shape") {
            SolveOutcome::Solution(x) => println!(
                "solution {:?}",
                x.iter().map(ToString::to_string).collect::<Vec<_>>()
            ),
            SolveOutcome::Inconsistent => println!("inconsistent"),
        }
    }
}
