//! Two arrangements with isomorphic intersection lattices but different mdr.

use ziegler::cli::resolve;
use ziegler::report::compare;

fn main() {
    let first = std::env::args().nth(1).unwrap_or_else(|| "AZ".into());
    let second = std::env::args().nth(2).unwrap_or_else(|| "AZp".into());
    let c = compare(
        &resolve(&first).expect("input"),
        &resolve(&second).expect("input"),
    )
    .expect("analysis");
    print!("{c}");
}
