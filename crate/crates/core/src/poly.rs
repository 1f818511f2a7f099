//! Homogeneous polynomials in `x, y, z` with rational coefficients, and
//! truncated local jets in two variables.

mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::ProjPoint;
use crate::linalg::{canonical_vector, format_rational, Rational};

pub use parse::{parse, parse_linear_factors, ParseError};

/// `dim S_k = (k+1)(k+2)/2`.
pub fn graded_dim(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

/// Position of `x^a y^b z^c` among the degree-`a+b+c` monomials in graded-lex
/// order with `x > y > z`.
pub fn monomial_index(_a: u32, b: u32, c: u32) -> usize {
    let s = (b + c) as usize;
    s * (s + 1) / 2 + c as usize
}

/// Degree-`d` exponent triples in graded-lex order.
pub fn monomials(d: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (0..=d).flat_map(move |s| (0..=s).map(move |c| (d - s, s - c, c)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
    Z,
}

/// A homogeneous form of fixed degree, stored densely in graded-lex order.
/// The zero form keeps its degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    degree: u32,
    coeffs: Vec<Rational>,
}

impl HomPoly {
    pub fn zero(degree: u32) -> Self {
        HomPoly {
            degree,
            coeffs: vec![Rational::zero(); graded_dim(degree as usize)],
        }
    }

    pub fn constant(c: Rational) -> Self {
        HomPoly {
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn monomial(c: Rational, a: u32, b: u32, cz: u32) -> Self {
        let mut p = Self::zero(a + b + cz);
        p.coeffs[monomial_index(a, b, cz)] = c;
        p
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::monomial(Rational::one(), 1, 0, 0),
            Var::Y => Self::monomial(Rational::one(), 0, 1, 0),
            Var::Z => Self::monomial(Rational::one(), 0, 0, 1),
        }
    }

    pub fn linear(c: &[Rational; 3]) -> Self {
        HomPoly {
            degree: 1,
            coeffs: c.to_vec(),
        }
    }

    /// Builds a form from its coefficient vector in graded-lex order.
    pub fn from_coeffs(degree: u32, coeffs: Vec<Rational>) -> Self {
        assert_eq!(
            coeffs.len(),
            graded_dim(degree as usize),
            "coefficient count"
        );
        HomPoly { degree, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, a: u32, b: u32, c: u32) -> &Rational {
        assert_eq!(a + b + c, self.degree);
        &self.coeffs[monomial_index(a, b, c)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms `((a,b,c), coefficient)` in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), &Rational)> {
        monomials(self.degree)
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn checked_add(&self, other: &HomPoly) -> Option<HomPoly> {
        (self.degree == other.degree).then(|| HomPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> HomPoly {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> HomPoly {
        (0..e).fold(HomPoly::one(), |acc, _| &acc * self)
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a HomPoly>) -> HomPoly {
        factors.into_iter().fold(HomPoly::one(), |acc, f| &acc * f)
    }

    pub fn partial(&self, v: Var) -> HomPoly {
        if self.degree == 0 {
            return HomPoly::zero(0);
        }
        let mut out = HomPoly::zero(self.degree - 1);
        for ((a, b, c), k) in self.terms() {
            let (e, na, nb, nc) = match v {
                Var::X => (a, a.wrapping_sub(1), b, c),
                Var::Y => (b, a, b.wrapping_sub(1), c),
                Var::Z => (c, a, b, c.wrapping_sub(1)),
            };
            if e > 0 {
                out.coeffs[monomial_index(na, nb, nc)] += k * Rational::from_integer(e.into());
            }
        }
        out
    }

    pub fn gradient(&self) -> [HomPoly; 3] {
        [
            self.partial(Var::X),
            self.partial(Var::Y),
            self.partial(Var::Z),
        ]
    }

    pub fn eval(&self, p: &[Rational; 3]) -> Rational {
        let pows = |x: &Rational| {
            let mut v = vec![Rational::one()];
            for i in 0..self.degree as usize {
                let next = &v[i] * x;
                v.push(next);
            }
            v
        };
        let (px, py, pz) = (pows(&p[0]), pows(&p[1]), pows(&p[2]));
        self.terms().fold(Rational::zero(), |acc, ((a, b, c), k)| {
            acc + k * &px[a as usize] * &py[b as usize] * &pz[c as usize]
        })
    }

    pub fn eval_point(&self, p: &ProjPoint) -> Rational {
        self.eval(&p.rational_coords())
    }

    /// Primitive integer coefficients, first nonzero coefficient positive.
    pub fn normalized(&self) -> HomPoly {
        HomPoly {
            degree: self.degree,
            coeffs: canonical_vector(&self.coeffs),
        }
    }

    /// Whether `other = λ·self` for some nonzero rational `λ`.
    pub fn proportional(&self, other: &HomPoly) -> bool {
        self.degree == other.degree && self.normalized() == other.normalized() && !self.is_zero()
    }

    /// Substitutes `(x,y,z) -> M (x,y,z)`, i.e. `x -> m00 x + m01 y + m02 z` etc.
    pub fn substitute(&self, m: &[[Rational; 3]; 3]) -> HomPoly {
        let rows: Vec<HomPoly> = m.iter().map(HomPoly::linear).collect();
        let mut out = HomPoly::zero(self.degree);
        for ((a, b, c), k) in self.terms() {
            let t = &(&rows[0].pow(a) * &rows[1].pow(b)) * &rows[2].pow(c);
            out += &t.scale(k);
        }
        out
    }

    /// Truncated expansion at `p` in the affine chart that sets the
    /// largest-index nonzero coordinate of `p` to 1.
    pub fn local_jet(&self, p: &ProjPoint, order: usize) -> LocalJet {
        let chart = Chart::for_point(p);
        let base = chart.base(p);
        let mut jet = LocalJet::zero(chart, order);
        if order == 0 {
            return jet;
        }
        // powers (b + t)^e truncated at `order`, as coefficient lists in t
        let expand = |b: &Rational, e: u32| -> Vec<Rational> {
            let top = (e as usize).min(order - 1);
            let mut out = Vec::with_capacity(top + 1);
            let mut binom = BigInt::one();
            for i in 0..=top {
                let bp = num_traits::pow(b.clone(), (e as usize) - i);
                out.push(bp * Rational::from_integer(binom.clone()));
                binom = binom * BigInt::from(e as usize - i) / BigInt::from(i + 1);
            }
            out
        };
        for (exps, k) in self.terms() {
            let (eu, ev) = chart.local_exponents(exps);
            let us = expand(&base.0, eu);
            let vs = expand(&base.1, ev);
            for (i, cu) in us.iter().enumerate() {
                if cu.is_zero() {
                    continue;
                }
                for (j, cv) in vs.iter().enumerate() {
                    if i + j >= order || cv.is_zero() {
                        continue;
                    }
                    let idx = LocalJet::index(i, j);
                    jet.coeffs[idx] += k * cu * cv;
                }
            }
        }
        jet
    }
}

impl std::ops::AddAssign<&HomPoly> for HomPoly {
    fn add_assign(&mut self, rhs: &HomPoly) {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl std::ops::Add for &HomPoly {
    type Output = HomPoly;
    fn add(self, rhs: &HomPoly) -> HomPoly {
        self.checked_add(rhs)
            .expect("adding forms of different degree")
    }
}

impl std::ops::Neg for &HomPoly {
    type Output = HomPoly;
    fn neg(self) -> HomPoly {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Sub for &HomPoly {
    type Output = HomPoly;
    fn sub(self, rhs: &HomPoly) -> HomPoly {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &HomPoly {
    type Output = HomPoly;
    fn mul(self, rhs: &HomPoly) -> HomPoly {
        let mut out = HomPoly::zero(self.degree + rhs.degree);
        let rt: Vec<_> = rhs.terms().collect();
        for ((a, b, c), k) in self.terms() {
            for &((a2, b2, c2), k2) in &rt {
                out.coeffs[monomial_index(a + a2, b + b2, c + c2)] += k * k2;
            }
        }
        out
    }
}

fn write_coeff_and_monomial(out: &mut String, k: &Rational, exps: (u32, u32, u32), first: bool) {
    if k.is_negative() {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let a = k.abs();
    let is_const = exps == (0, 0, 0);
    if !a.is_one() || is_const {
        out.push_str(&format_rational(&a));
    }
    for (e, v) in [(exps.0, 'x'), (exps.1, 'y'), (exps.2, 'z')] {
        if e == 0 {
            continue;
        }
        out.push(v);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Canonical text in graded-lex order, e.g. `x^2+y^2-z^2`.
impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (exps, k) in self.terms() {
            let first = out.is_empty();
            write_coeff_and_monomial(&mut out, k, exps, first);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly[deg {}]({})", self.degree, self)
    }
}

/// Affine chart used to localize at a point: which coordinate is set to 1.
/// The two remaining coordinates, in their natural order, become `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    #[serde(rename = "z=1")]
    ZOne,
    #[serde(rename = "y=1")]
    YOne,
    #[serde(rename = "x=1")]
    XOne,
}

impl Chart {
    pub fn for_point(p: &ProjPoint) -> Chart {
        let c = p.coords();
        if !c[2].is_zero() {
            Chart::ZOne
        } else if !c[1].is_zero() {
            Chart::YOne
        } else {
            Chart::XOne
        }
    }

    /// Affine coordinates `(u0, v0)` of `p` in this chart.
    pub fn base(self, p: &ProjPoint) -> (Rational, Rational) {
        let c = p.rational_coords();
        match self {
            Chart::ZOne => (&c[0] / &c[2], &c[1] / &c[2]),
            Chart::YOne => (&c[0] / &c[1], &c[2] / &c[1]),
            Chart::XOne => (&c[1] / &c[0], &c[2] / &c[0]),
        }
    }

    fn local_exponents(self, (a, b, c): (u32, u32, u32)) -> (u32, u32) {
        match self {
            Chart::ZOne => (a, b),
            Chart::YOne => (a, c),
            Chart::XOne => (b, c),
        }
    }

    /// Local `(u, v)` coefficients of a linear form through the chart's base point.
    pub fn local_linear(self, l: &[Rational; 3]) -> (Rational, Rational) {
        match self {
            Chart::ZOne => (l[0].clone(), l[1].clone()),
            Chart::YOne => (l[0].clone(), l[2].clone()),
            Chart::XOne => (l[1].clone(), l[2].clone()),
        }
    }
}

/// A polynomial in local variables `u, v` truncated below total degree `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalJet {
    chart: Chart,
    order: usize,
    coeffs: Vec<Rational>,
}

impl LocalJet {
    pub fn zero(chart: Chart, order: usize) -> Self {
        LocalJet {
            chart,
            order,
            coeffs: vec![Rational::zero(); Self::size(order)],
        }
    }

    /// Number of monomials `u^i v^j` with `i + j < order`.
    pub fn size(order: usize) -> usize {
        order * (order + 1) / 2
    }

    /// Layout: by total degree, then by increasing power of `v`.
    pub fn index(i: usize, j: usize) -> usize {
        let s = i + j;
        s * (s + 1) / 2 + j
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        if i + j >= self.order {
            Rational::zero()
        } else {
            self.coeffs[Self::index(i, j)].clone()
        }
    }

    /// Coefficients of the degree-`s` part, `u^s, u^{s-1} v, …, v^s`.
    pub fn homogeneous_part(&self, s: usize) -> Vec<Rational> {
        (0..=s).map(|j| self.coeff(s - j, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest total degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        (0..self.order).find(|&s| self.homogeneous_part(s).iter().any(|c| !c.is_zero()))
    }

    pub fn truncate(&self, order: usize) -> LocalJet {
        let mut out = LocalJet::zero(self.chart, order);
        for s in 0..order.min(self.order) {
            for j in 0..=s {
                out.coeffs[Self::index(s - j, j)] = self.coeffs[Self::index(s - j, j)].clone();
            }
        }
        out
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &LocalJet) -> LocalJet {
        let order = self.order.min(other.order);
        let mut out = LocalJet::zero(self.chart, order);
        for s1 in 0..order {
            for j1 in 0..=s1 {
                let a = &self.coeffs[Self::index(s1 - j1, j1)];
                if a.is_zero() {
                    continue;
                }
                for s2 in 0..order - s1 {
                    for j2 in 0..=s2 {
                        let b = &other.coeffs[Self::index(s2 - j2, j2)];
                        if !b.is_zero() {
                            out.coeffs[Self::index(s1 - j1 + s2 - j2, j1 + j2)] += a * b;
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for LocalJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for s in 0..self.order {
            for j in 0..=s {
                let k = &self.coeffs[Self::index(s - j, j)];
                if k.is_zero() {
                    continue;
                }
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                out.push_str(&format!("({})u^{}v^{}", format_rational(k), s - j, j));
            }
        }
        write!(
            f,
            "LocalJet[{:?}, order {}]({})",
            self.chart, self.order, out
        )
    }
}
