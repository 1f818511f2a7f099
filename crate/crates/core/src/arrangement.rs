//! Line arrangements and their intersection lattices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{LinearForm, ProjPoint};
use crate::linalg::Rational;
use crate::poly::HomPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("an arrangement needs at least one line")]
    Empty,
    #[error("line {0} occurs twice")]
    DuplicateLine(LinearForm),
    #[error("{0} is not a triple point of the arrangement")]
    NotATriplePoint(ProjPoint),
    #[error("line {0} through the moved point has {1} other points of multiplicity >= 3")]
    AmbiguousLine(LinearForm, usize),
    #[error("moving the point changes the intersection lattice")]
    CombinatoricsChanged,
}

/// An ordered list of pairwise distinct lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ArrangementJson", into = "ArrangementJson")]
pub struct Arrangement {
    lines: Vec<LinearForm>,
}

#[derive(Serialize, Deserialize)]
struct ArrangementJson {
    lines: Vec<LinearForm>,
}

impl TryFrom<ArrangementJson> for Arrangement {
    type Error = ArrangementError;
    fn try_from(j: ArrangementJson) -> Result<Self, Self::Error> {
        Arrangement::new(j.lines)
    }
}

impl From<Arrangement> for ArrangementJson {
    fn from(a: Arrangement) -> Self {
        ArrangementJson { lines: a.lines }
    }
}

impl Arrangement {
    pub fn new(lines: Vec<LinearForm>) -> Result<Self, ArrangementError> {
        if lines.is_empty() {
            return Err(ArrangementError::Empty);
        }
        for (i, l) in lines.iter().enumerate() {
            if lines[..i].contains(l) {
                return Err(ArrangementError::DuplicateLine(l.clone()));
            }
        }
        Ok(Arrangement { lines })
    }

    pub fn from_ints(lines: &[[i64; 3]]) -> Result<Self, ArrangementError> {
        Self::new(
            lines
                .iter()
                .map(|&[a, b, c]| LinearForm::from_ints(a, b, c).expect("nonzero line"))
                .collect(),
        )
    }

    pub fn lines(&self) -> &[LinearForm] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The defining polynomial, the product of all line forms.
    pub fn polynomial(&self) -> HomPoly {
        let forms: Vec<HomPoly> = self.lines.iter().map(LinearForm::to_poly).collect();
        HomPoly::product(&forms)
    }

    pub fn add_line(&self, l: LinearForm) -> Result<Arrangement, ArrangementError> {
        if self.lines.contains(&l) {
            return Err(ArrangementError::DuplicateLine(l));
        }
        let mut lines = self.lines.clone();
        lines.push(l);
        Ok(Arrangement { lines })
    }

    /// Applies the coordinate substitution `(x,y,z) -> M (x,y,z)` to every line.
    pub fn substitute(&self, m: &[[Rational; 3]; 3]) -> Option<Arrangement> {
        let lines = self
            .lines
            .iter()
            .map(|l| l.substitute(m))
            .collect::<Option<Vec<_>>>()?;
        Arrangement::new(lines).ok()
    }

    pub fn lattice(&self) -> Lattice {
        intersection_lattice(self)
    }

    /// Moves the triple point `from` to `to`: each line through `from` is
    /// replaced by the line joining `to` with the other point of
    /// multiplicity at least 3 on it. The result must have the same lattice.
    pub fn move_triple_point(
        &self,
        from: &ProjPoint,
        to: &ProjPoint,
    ) -> Result<Arrangement, ArrangementError> {
        let lat = self.lattice();
        let Some(mp) = lat
            .points
            .iter()
            .find(|p| &p.point == from && p.multiplicity == 3)
        else {
            return Err(ArrangementError::NotATriplePoint(from.clone()));
        };
        let mut lines = self.lines.clone();
        for &li in &mp.lines {
            let line = &self.lines[li];
            if line.contains(to) {
                continue;
            }
            let others: Vec<&MultPoint> = lat
                .points
                .iter()
                .filter(|p| p.multiplicity >= 3 && &p.point != from && p.lines.contains(&li))
                .collect();
            if others.len() != 1 {
                return Err(ArrangementError::AmbiguousLine(line.clone(), others.len()));
            }
            lines[li] = LinearForm::through(to, &others[0].point)
                .ok_or(ArrangementError::CombinatoricsChanged)?;
        }
        let moved = Arrangement::new(lines).map_err(|_| ArrangementError::CombinatoricsChanged)?;
        if lattice_isomorphic(&lat, &moved.lattice()).is_none() {
            return Err(ArrangementError::CombinatoricsChanged);
        }
        Ok(moved)
    }
}

/// A point where at least two lines meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultPoint {
    pub point: ProjPoint,
    pub multiplicity: usize,
    /// Indices of the incident lines, increasing.
    pub lines: Vec<usize>,
}

/// The intersection lattice: all multiple points with their incident lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    pub line_count: usize,
    pub points: Vec<MultPoint>,
}

pub fn intersection_lattice(a: &Arrangement) -> Lattice {
    let mut groups: BTreeMap<ProjPoint, Vec<usize>> = BTreeMap::new();
    let n = a.lines.len();
    for i in 0..n {
        for j in i + 1..n {
            let p =
                ProjPoint::meet(&a.lines[i], &a.lines[j]).expect("distinct lines meet in a point");
            let e = groups.entry(p).or_default();
            for k in [i, j] {
                if !e.contains(&k) {
                    e.push(k);
                }
            }
        }
    }
    let points = groups
        .into_iter()
        .map(|(point, mut lines)| {
            lines.sort_unstable();
            MultPoint {
                point,
                multiplicity: lines.len(),
                lines,
            }
        })
        .collect();
    Lattice {
        line_count: n,
        points,
    }
}

impl Lattice {
    /// `(multiplicity, count)` pairs, increasing in multiplicity.
    pub fn multiplicity_counts(&self) -> Vec<(usize, usize)> {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for p in &self.points {
            *m.entry(p.multiplicity).or_default() += 1;
        }
        m.into_iter().collect()
    }

    pub fn count_of(&self, multiplicity: usize) -> usize {
        self.points
            .iter()
            .filter(|p| p.multiplicity == multiplicity)
            .count()
    }

    /// Sum of `(m-1)^2` over the multiple points.
    pub fn total_tjurina(&self) -> usize {
        self.points
            .iter()
            .map(|p| (p.multiplicity - 1) * (p.multiplicity - 1))
            .sum()
    }

    pub fn points_on_line(&self, line: usize) -> impl Iterator<Item = &MultPoint> {
        self.points.iter().filter(move |p| p.lines.contains(&line))
    }

    /// Multiset of multiplicities along each line.
    fn line_profiles(&self) -> Vec<Vec<usize>> {
        (0..self.line_count)
            .map(|l| {
                let mut v: Vec<usize> = self.points_on_line(l).map(|p| p.multiplicity).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// `point_of[i][j]` is the index of the point where lines `i` and `j` meet.
    fn pair_table(&self) -> Vec<Vec<usize>> {
        let n = self.line_count;
        let mut t = vec![vec![usize::MAX; n]; n];
        for (pi, p) in self.points.iter().enumerate() {
            for &i in &p.lines {
                for &j in &p.lines {
                    if i != j {
                        t[i][j] = pi;
                    }
                }
            }
        }
        t
    }
}

pub fn total_tjurina(a: &Arrangement) -> usize {
    a.lattice().total_tjurina()
}

/// Searches for a bijection of lines carrying the incidence structure of
/// `l1` onto `l2`. Returns `perm` with line `i` of `l1` mapped to `perm[i]`.
pub fn lattice_isomorphic(l1: &Lattice, l2: &Lattice) -> Option<Vec<usize>> {
    let n = l1.line_count;
    if n != l2.line_count || l1.multiplicity_counts() != l2.multiplicity_counts() {
        return None;
    }
    let prof1 = l1.line_profiles();
    let prof2 = l2.line_profiles();
    let mut sorted1 = prof1.clone();
    let mut sorted2 = prof2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return None;
    }
    let t1 = l1.pair_table();
    let t2 = l2.pair_table();
    let mult1: Vec<usize> = l1.points.iter().map(|p| p.multiplicity).collect();
    let mult2: Vec<usize> = l2.points.iter().map(|p| p.multiplicity).collect();

    // most constrained lines first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(prof1[i].iter().filter(|&&m| m > 2).count()));

    struct Search<'a> {
        order: Vec<usize>,
        prof1: &'a [Vec<usize>],
        prof2: &'a [Vec<usize>],
        t1: &'a [Vec<usize>],
        t2: &'a [Vec<usize>],
        mult1: &'a [usize],
        mult2: &'a [usize],
        image: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn consistent(&self, depth: usize, cand: usize) -> bool {
            let k = self.order[depth];
            for (di, &i) in self.order[..depth].iter().enumerate() {
                let si = self.image[i];
                let p1 = self.t1[i][k];
                let p2 = self.t2[si][cand];
                if self.mult1[p1] != self.mult2[p2] {
                    return false;
                }
                for &j in &self.order[..di] {
                    let sj = self.image[j];
                    let same1 = self.t1[j][k] == p1 && self.t1[i][j] == p1;
                    let same2 = self.t2[sj][cand] == p2 && self.t2[si][sj] == p2;
                    if same1 != same2 {
                        return false;
                    }
                }
            }
            true
        }

        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let k = self.order[depth];
            for cand in 0..self.used.len() {
                if self.used[cand] || self.prof1[k] != self.prof2[cand] {
                    continue;
                }
                if !self.consistent(depth, cand) {
                    continue;
                }
                self.used[cand] = true;
                self.image[k] = cand;
                if self.run(depth + 1) {
                    return true;
                }
                self.used[cand] = false;
            }
            false
        }
    }

    let mut s = Search {
        order,
        prof1: &prof1,
        prof2: &prof2,
        t1: &t1,
        t2: &t2,
        mult1: &mult1,
        mult2: &mult2,
        image: vec![usize::MAX; n],
        used: vec![false; n],
    };
    s.run(0).then_some(s.image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Arrangement {
        Arrangement::from_ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    #[test]
    fn triangle_lattice() {
        let l = triangle().lattice();
        assert_eq!(l.multiplicity_counts(), vec![(2, 3)]);
        assert_eq!(l.total_tjurina(), 3);
    }

    #[test]
    fn adding_a_generic_line_to_the_triangle() {
        let a = triangle()
            .add_line(LinearForm::from_ints(1, 1, 1).unwrap())
            .unwrap();
        assert_eq!(a.lattice().multiplicity_counts(), vec![(2, 6)]);
        assert_eq!(
            triangle().add_line(LinearForm::from_ints(2, 0, 0).unwrap()),
            Err(ArrangementError::DuplicateLine(
                LinearForm::from_ints(1, 0, 0).unwrap()
            ))
        );
    }

    #[test]
    fn pencil_and_isomorphism() {
        // three concurrent lines plus one generic
        let a = Arrangement::from_ints(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]).unwrap();
        let b = Arrangement::from_ints(&[[0, 0, 1], [1, 0, -1], [0, 1, -1], [1, -1, 0]]).unwrap();
        let la = a.lattice();
        assert_eq!(la.multiplicity_counts(), vec![(2, 3), (3, 1)]);
        let perm = lattice_isomorphic(&la, &b.lattice()).expect("isomorphic");
        // the generic line maps to the generic line
        assert_eq!(perm[3], 0);
        assert!(lattice_isomorphic(&la, &triangle().lattice()).is_none());
    }

    #[test]
    fn moving_a_point_that_is_not_triple() {
        let a = triangle();
        let p = ProjPoint::from_ints(0, 0, 1).unwrap();
        assert!(matches!(
            a.move_triple_point(&p, &p),
            Err(ArrangementError::NotATriplePoint(_))
        ));
    }
}
