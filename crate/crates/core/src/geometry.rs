//! Points and lines of the rational projective plane.
//!
//! Both are stored as primitive integer triples with first nonzero entry
//! positive, so equality of projective objects is plain equality of the
//! stored coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{canonical_int_vector, format_rational, parse_rational, Rational};
use crate::poly::HomPoly;

fn normalize(v: [Rational; 3]) -> Option<[BigInt; 3]> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let w = canonical_int_vector(&v);
    Some([w[0].clone(), w[1].clone(), w[2].clone()])
}

fn to_rats(v: &[BigInt; 3]) -> [Rational; 3] {
    v.clone().map(Rational::from_integer)
}

pub(crate) fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub(crate) fn dot(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn det3(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> BigInt {
    dot(a, &cross(b, c))
}

/// A point `(x:y:z)` of the projective plane.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([BigInt; 3]);

/// A nonzero linear form `ax + by + cz`, defined up to scalar.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm([BigInt; 3]);

macro_rules! triple_common {
    ($t:ident) => {
        impl $t {
            /// `None` when all three coordinates vanish.
            pub fn new(a: Rational, b: Rational, c: Rational) -> Option<Self> {
                normalize([a, b, c]).map($t)
            }

            pub fn from_ints(a: i64, b: i64, c: i64) -> Option<Self> {
                Self::new(
                    Rational::from_integer(a.into()),
                    Rational::from_integer(b.into()),
                    Rational::from_integer(c.into()),
                )
            }

            pub(crate) fn from_big(v: [BigInt; 3]) -> Option<Self> {
                normalize(v.map(Rational::from_integer)).map($t)
            }

            pub fn coords(&self) -> &[BigInt; 3] {
                &self.0
            }

            pub fn rational_coords(&self) -> [Rational; 3] {
                to_rats(&self.0)
            }
        }

        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
                v.serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let v = Vec::<Coord>::deserialize(d)?;
                if v.len() != 3 {
                    return Err(serde::de::Error::custom("expected three coordinates"));
                }
                let r: Vec<Rational> = v
                    .into_iter()
                    .map(|c| c.into_rational().map_err(serde::de::Error::custom))
                    .collect::<Result<_, _>>()?;
                $t::new(r[0].clone(), r[1].clone(), r[2].clone())
                    .ok_or_else(|| serde::de::Error::custom("all coordinates are zero"))
            }
        }
    };
}

/// A coordinate in JSON: an integer or a rational written as a string.
#[derive(Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    fn into_rational(self) -> Result<Rational, String> {
        match self {
            Coord::Int(n) => Ok(Rational::from_integer(n.into())),
            Coord::Text(s) => parse_rational(&s).map_err(|e| e.to_string()),
        }
    }
}

triple_common!(ProjPoint);
triple_common!(LinearForm);

impl ProjPoint {
    /// Intersection of two distinct lines.
    pub fn meet(a: &LinearForm, b: &LinearForm) -> Option<ProjPoint> {
        ProjPoint::from_big(cross(&a.0, &b.0))
    }

    /// Affine coordinates in the chart `z = 1`, if the point is finite there.
    pub fn affine(&self) -> Option<(Rational, Rational)> {
        if self.0[2].is_zero() {
            return None;
        }
        let z = Rational::from_integer(self.0[2].clone());
        Some((
            Rational::from_integer(self.0[0].clone()) / &z,
            Rational::from_integer(self.0[1].clone()) / z,
        ))
    }

    /// The image `M p`.
    pub fn transform(&self, m: &[[Rational; 3]; 3]) -> Option<ProjPoint> {
        let c = to_rats(&self.0);
        let out: [Rational; 3] =
            std::array::from_fn(|i| (0..3).fold(Rational::zero(), |acc, j| acc + &m[i][j] * &c[j]));
        normalize(out).map(ProjPoint)
    }
}

impl LinearForm {
    /// The line through two distinct points.
    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Option<LinearForm> {
        LinearForm::from_big(cross(&p.0, &q.0))
    }

    pub fn eval(&self, p: &ProjPoint) -> BigInt {
        dot(&self.0, &p.0)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn to_poly(&self) -> HomPoly {
        HomPoly::linear(&to_rats(&self.0))
    }

    /// Applies the substitution `(x,y,z) -> M (x,y,z)` to the form.
    pub fn substitute(&self, m: &[[Rational; 3]; 3]) -> Option<LinearForm> {
        let c = to_rats(&self.0);
        let out: [Rational; 3] =
            std::array::from_fn(|j| (0..3).fold(Rational::zero(), |acc, i| acc + &c[i] * &m[i][j]));
        normalize(out).map(LinearForm)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, var) in self.0.iter().zip(["x", "y", "z"]) {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let a = c.abs();
            if a != BigInt::from(1) {
                out.push_str(&format_rational(&Rational::from_integer(a)));
            }
            out.push_str(var);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let l = LinearForm::from_ints(-2, 4, 0).unwrap();
        assert_eq!(l, LinearForm::from_ints(1, -2, 0).unwrap());
        assert_eq!(l.to_string(), "x-2y");
        assert!(ProjPoint::from_ints(0, 0, 0).is_none());
        assert_eq!(
            ProjPoint::from_ints(0, -3, 6).unwrap().to_string(),
            "(0:1:-2)"
        );
    }

    #[test]
    fn join_and_meet() {
        let p = ProjPoint::from_ints(1, 0, 1).unwrap();
        let q = ProjPoint::from_ints(0, 1, 1).unwrap();
        let l = LinearForm::through(&p, &q).unwrap();
        assert_eq!(l, LinearForm::from_ints(1, 1, -1).unwrap());
        let x = LinearForm::from_ints(1, 0, 0).unwrap();
        assert_eq!(ProjPoint::meet(&l, &x).unwrap(), q);
        assert!(LinearForm::through(&p, &p).is_none());
    }
}
