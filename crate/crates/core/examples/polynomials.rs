//! Parsing, differentiating and localizing homogeneous polynomials.

use ziegler::poly::{parse, parse_linear_factors};
use ziegler::ProjPoint;

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "xyz(x+y-z)(x-y+z)".into());
    let f = parse(&text).expect("polynomial");
    println!("f = {f} (degree {})", f.degree());
    for (name, g) in ["f_x", "f_y", "f_z"].iter().zip(f.gradient()) {
        println!("{name} = {g}");
    }
    if let Ok(lines) = parse_linear_factors(&text) {
        println!("{} linear factors", lines.len());
    }
    let p = ProjPoint::from_ints(0, 1, 1).unwrap();
    let jet = f.local_jet(&p, f.degree() as usize + 1);
    println!("order of vanishing at {p}: {:?}", jet.valuation());
}
