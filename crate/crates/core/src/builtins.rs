//! Named arrangements: Ziegler's pair, the conic-inscribed pair on
//! `x^2 + y^2 = z^2`, their one-line extensions, and the triangle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::geometry::{LinearForm, ProjPoint};
use crate::poly::parse_linear_factors;

pub const AZ_TEXT: &str = "xyz(x+y-z)(x-y+z)(2x-2y+z)(2x-y-2z)(2x+y+z)(2x-y-z)";
pub const AD_TEXT: &str = "xy(x-y-z)(x-y+z)(2x+y-2z)(x+3y-3z)(3x+2y+3z)(x+5y+5z)(7x-4y-z)";
pub const ADP_TEXT: &str = "xy(4x-5y-5z)(x-y+z)(16x+13y-20z)(x+3y-3z)(3x+2y+3z)(x+5y+5z)(7x-4y-z)";
/// Line added to `AZ` and `AZp` to obtain the degree-10 pair.
pub const LZ_TEXT: &str = "x-y-z";
/// `AZp` as produced by moving the triple point `(0:1:1)` of `AZ` to `(0:3:1)`.
/// The move to `(0:2:1)` makes `z`, `2x+y+z` and the new `2x+y-2z` concurrent.
pub const AZP_TEXT: &str = "xyz(3x+y-3z)(x-y+3z)(2x-2y+z)(2x-y-2z)(2x+y+z)(2x-y-z)";
pub const TRIANGLE_TEXT: &str = "xyz";

/// Second-order pieces of the hexagon reading: diagonals used by default.
pub const AZ_DIAGONALS: &str = "xyz";
pub const AD_DIAGONALS: &str = "xy(7x-4y-z)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Builtin {
    #[serde(rename = "AZ")]
    Az,
    #[serde(rename = "AZp")]
    AzPrime,
    #[serde(rename = "AD")]
    Ad,
    #[serde(rename = "ADp")]
    AdPrime,
    #[serde(rename = "BZ")]
    Bz,
    #[serde(rename = "BZp")]
    BzPrime,
    #[serde(rename = "TRIANGLE")]
    Triangle,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::Az,
        Builtin::AzPrime,
        Builtin::Ad,
        Builtin::AdPrime,
        Builtin::Bz,
        Builtin::BzPrime,
        Builtin::Triangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Az => "AZ",
            Builtin::AzPrime => "AZp",
            Builtin::Ad => "AD",
            Builtin::AdPrime => "ADp",
            Builtin::Bz => "BZ",
            Builtin::BzPrime => "BZp",
            Builtin::Triangle => "TRIANGLE",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Self::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(name))
    }

    pub fn description(self) -> &'static str {
        match self {
            Builtin::Az => "Ziegler's arrangement, hexagon on the line pair (x-y-z)(2x-y+z)",
            Builtin::AzPrime => "AZ with the triple point (0:1:1) moved to (0:3:1)",
            Builtin::Ad => "hexagon inscribed in x^2+y^2-z^2 with its sides and diagonals",
            Builtin::AdPrime => "AD with one vertex moved off the conic",
            Builtin::Bz => "AZ plus the line x-y-z",
            Builtin::BzPrime => "AZp plus the line x-y-z",
            Builtin::Triangle => "the coordinate triangle xyz",
        }
    }

    pub fn arrangement(self) -> Arrangement {
        let from = |s: &str| {
            Arrangement::new(parse_linear_factors(s).expect("builtin parses"))
                .expect("distinct lines")
        };
        let lz = || parse_linear_factors(LZ_TEXT).expect("line")[0].clone();
        match self {
            Builtin::Az => from(AZ_TEXT),
            Builtin::AzPrime => from(AZP_TEXT),
            Builtin::Ad => from(AD_TEXT),
            Builtin::AdPrime => from(ADP_TEXT),
            Builtin::Bz => from(AZ_TEXT).add_line(lz()).expect("new line"),
            Builtin::BzPrime => from(AZP_TEXT).add_line(lz()).expect("new line"),
            Builtin::Triangle => from(TRIANGLE_TEXT),
        }
    }

    /// Diagonals used when reading the arrangement as a hexagon.
    pub fn diagonals(self) -> Option<Vec<LinearForm>> {
        let d = |s: &str| parse_linear_factors(s).expect("diagonals");
        match self {
            Builtin::Az | Builtin::AzPrime => Some(d(AZ_DIAGONALS)),
            Builtin::Ad | Builtin::AdPrime => Some(d(AD_DIAGONALS)),
            _ => None,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `AZp`: the triple point `(0:1:1)` of `AZ` moved along `x = 0` to `(0:3:1)`.
pub fn moved_az() -> Arrangement {
    let az = Arrangement::new(parse_linear_factors(AZ_TEXT).expect("AZ")).expect("AZ");
    let from = ProjPoint::from_ints(0, 1, 1).expect("point");
    let to = ProjPoint::from_ints(0, 3, 1).expect("point");
    az.move_triple_point(&from, &to)
        .expect("moving (0:1:1) to (0:3:1) keeps the lattice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{lattice_isomorphic, ArrangementError};
    use crate::geometry::det3;

    #[test]
    fn frozen_azp_matches_the_move() {
        let mut a: Vec<_> = moved_az().lines().to_vec();
        let mut b: Vec<_> = Builtin::AzPrime.arrangement().lines().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        let az = Builtin::Az.arrangement().lattice();
        assert!(lattice_isomorphic(&az, &Builtin::AzPrime.arrangement().lattice()).is_some());
        assert!(lattice_isomorphic(&az, &Builtin::Ad.arrangement().lattice()).is_some());
    }

    #[test]
    fn moving_to_0_2_1_creates_a_seventh_triple_point() {
        let az = Builtin::Az.arrangement();
        let from = ProjPoint::from_ints(0, 1, 1).unwrap();
        let to = ProjPoint::from_ints(0, 2, 1).unwrap();
        assert_eq!(
            az.move_triple_point(&from, &to),
            Err(ArrangementError::CombinatoricsChanged)
        );
        let l = |s: &str| parse_linear_factors(s).unwrap()[0].coords().clone();
        // the replacement for x+y-z is 2x+y-2z
        assert!(det3(&l("z"), &l("2x+y+z"), &l("2x+y-2z")) == 0.into());
    }

    #[test]
    fn names_round_trip() {
        for b in Builtin::ALL {
            assert_eq!(Builtin::from_name(&b.name().to_lowercase()), Some(b));
        }
        assert_eq!(Builtin::Bz.arrangement().len(), 10);
    }
}
