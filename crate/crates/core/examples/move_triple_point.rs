//! Moving a triple point along a line: where the lattice survives and
//! where a new concurrency appears.

use ziegler::builtins::Builtin;
use ziegler::syzygy::mdr;
use ziegler::ProjPoint;

fn main() {
    let az = Builtin::Az.arrangement();
    let from = ProjPoint::from_ints(0, 1, 1).unwrap();
    for y in 2..=5 {
        let to = ProjPoint::from_ints(0, y, 1).unwrap();
        match az.move_triple_point(&from, &to) {
            Ok(moved) => {
                let names: Vec<String> = moved.lines().iter().map(ToString::to_string).collect();
                println!(
                    "{to}: mdr {} [{}]",
                    mdr(&moved.polynomial()),
                    names.join(", ")
                );
            }
            Err(e) => println!("{to}: {e}"),
        }
    }
}
