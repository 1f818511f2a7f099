//! A hexagon inscribed in a conic: Pascal line, tangency system, and the
//! degree-8 element of the saturation missing from the Jacobian ideal.

use ziegler::hexagon::Hexagon;
use ziegler::singular::{congruent_mod_jacobian, gap_certificate};

fn main() {
    // points (t : t^2 : 1) of the parabola y = x^2
    let t = [0, 1, 3, 7, -2, 5];
    let h = Hexagon::from_ints(t.map(|t| [t, t * t, 1])).expect("generic hexagon");
    let o = h.pascal_octic().expect("octic");
    println!("Pascal line: {}", o.pascal_line);
    println!(
        "tangency system rank {} with solution {:?}",
        o.system.rank,
        o.system
            .solution
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!("quartic: {}", o.quartic);
    println!("octic in I_8 \\ J_8: {}", o.certified);
    let a = h.build_arrangement().expect("nine lines");
    let gap = gap_certificate(&a, 8)
        .expect("reduced")
        .expect("I_8 != J_8");
    println!(
        "dim I_8 = {}, dim J_8 = {}, octic matches the gap mod J_8: {}",
        gap.dim_i,
        gap.dim_j,
        congruent_mod_jacobian(&a, &o.polynomial(), &gap.polynomial())
    );
}
