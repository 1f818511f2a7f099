//! Hexagons, conics through six points, Pascal lines, and the octic built
//! from the Pascal line, the three diagonals and a quartic through the
//! twelve points `A_j, A'_j`.
//!
//! Indices are 0-based: side `j` joins `A_j` and `A_{j+1}`, diagonal `k`
//! joins `A_k` and `A_{k+3}`, `B_k` is side `k` meet side `k+3`, and `A'_j`
//! is side `j` meet side `j+2`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{Arrangement, Lattice};
use crate::geometry::{det3, LinearForm, ProjPoint};
use crate::linalg::{canonical_vector, rank, rational_serde, RatMatrix, Rational, RowSpace};
use crate::poly::{monomials, Chart, HomPoly};
use crate::singular;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HexagonError {
    #[error("vertices {0} and {1} coincide")]
    CoincidentVertices(usize, usize),
    #[error("vertices {0}, {1}, {2} are collinear")]
    CollinearConsecutive(usize, usize, usize),
    #[error("sides and diagonals are not nine distinct lines")]
    CoincidentLines,
    #[error("opposite-side points coincide")]
    DegenerateOppositePoints,
    #[error("non-generic hexagon arrangement: {}", .0.join("; "))]
    NonGeneric(Vec<String>),
    #[error("local branches are proportional")]
    ProportionalBranches,
    #[error("tangent system has rank {0}; no quartic satisfies the tangency conditions")]
    NoQuartic(usize),
    #[error("the opposite-side points are not collinear")]
    NoPascalLine,
    #[error("arrangement is not a hexagon arrangement: {0}")]
    NotHexagonal(String),
    #[error(transparent)]
    Singular(#[from] singular::SingularError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HexagonJson", into = "HexagonJson")]
pub struct Hexagon {
    vertices: [ProjPoint; 6],
}

#[derive(Serialize, Deserialize)]
struct HexagonJson {
    vertices: Vec<ProjPoint>,
}

impl TryFrom<HexagonJson> for Hexagon {
    type Error = String;
    fn try_from(j: HexagonJson) -> Result<Self, String> {
        let v: [ProjPoint; 6] = j
            .vertices
            .try_into()
            .map_err(|_| "a hexagon has exactly six vertices".to_string())?;
        Hexagon::new(v).map_err(|e| e.to_string())
    }
}

impl From<Hexagon> for HexagonJson {
    fn from(h: Hexagon) -> Self {
        HexagonJson {
            vertices: h.vertices.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicKind {
    Smooth,
    LinePair,
    DoubleLine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub form: HomPoly,
    pub kind: ConicKind,
}

/// Whether six points lie on a conic, via the rank of the 6×6 matrix of
/// quadratic monomials evaluated at the points.
pub fn six_points_on_conic(points: &[ProjPoint; 6]) -> Option<Conic> {
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let c = p.rational_coords();
            monomials(2)
                .map(|(a, b, e)| {
                    num_traits::pow(c[0].clone(), a as usize)
                        * num_traits::pow(c[1].clone(), b as usize)
                        * num_traits::pow(c[2].clone(), e as usize)
                })
                .collect()
        })
        .collect();
    let m = RatMatrix::from_rows(6, rows).expect("six columns");
    let kernel = m.kernel_basis();
    let v = kernel.into_iter().next()?;
    let form = HomPoly::from_coeffs(2, v);
    Some(Conic {
        kind: conic_kind(&form),
        form,
    })
}

pub fn conic_kind(q: &HomPoly) -> ConicKind {
    let half = Rational::new(1.into(), 2.into());
    let c = |a, b, e| q.coeff(a, b, e).clone();
    let sym = RatMatrix::from_rows(
        3,
        vec![
            vec![c(2, 0, 0), c(1, 1, 0) * &half, c(1, 0, 1) * &half],
            vec![c(1, 1, 0) * &half, c(0, 2, 0), c(0, 1, 1) * &half],
            vec![c(1, 0, 1) * &half, c(0, 1, 1) * &half, c(0, 0, 2)],
        ],
    )
    .expect("3x3");
    match rank(&sym) {
        3 => ConicKind::Smooth,
        2 => ConicKind::LinePair,
        _ => ConicKind::DoubleLine,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PascalOutcome {
    Line(LinearForm),
    NonCollinear,
}

/// Lattice summary of the nine-line arrangement of a hexagon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub generic: bool,
    pub triple_points: usize,
    pub double_points: usize,
    /// Incidences beyond the expected six triple points at the vertices.
    pub extra: Vec<String>,
}

/// The 6×3 tangency system in the quartic coefficients `(c_1, c_2, c_3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentSystem {
    #[serde(with = "rational_serde::vec2")]
    pub rows: Vec<Vec<Rational>>,
    pub rank: usize,
    #[serde(with = "rational_serde::vec")]
    pub solution: Vec<Rational>,
}

impl TangentSystem {
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(3, self.rows.clone()).expect("three columns")
    }

    pub fn has_solution(&self) -> bool {
        !self.solution.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PascalOctic {
    pub pascal_line: LinearForm,
    pub diagonals: [LinearForm; 3],
    pub system: TangentSystem,
    pub quartic: String,
    #[serde(with = "rational_serde::vec")]
    pub octic: Vec<Rational>,
    pub octic_text: String,
    pub certified: bool,
    pub transcript: Vec<String>,
}

impl PascalOctic {
    pub fn polynomial(&self) -> HomPoly {
        HomPoly::from_coeffs(8, self.octic.clone())
    }
}

/// Required tangent direction at a `D_4` point: the coefficient of
/// `du ∧ dv` in `dα1 ∧ d(α2 α3)`, returned as normalized `(u, v)` coefficients.
pub fn d4_tangent(
    a1: &(Rational, Rational),
    a2: &(Rational, Rational),
    a3: &(Rational, Rational),
) -> Result<(Rational, Rational), HexagonError> {
    let wedge = |p: &(Rational, Rational), q: &(Rational, Rational)| &p.0 * &q.1 - &p.1 * &q.0;
    let (w12, w13, w23) = (wedge(a1, a2), wedge(a1, a3), wedge(a2, a3));
    if w12.is_zero() || w13.is_zero() || w23.is_zero() {
        return Err(HexagonError::ProportionalBranches);
    }
    // dα1 ∧ d(α2 α3) = (α3 · w12 + α2 · w13) du ∧ dv
    let u = &a3.0 * &w12 + &a2.0 * &w13;
    let v = &a3.1 * &w12 + &a2.1 * &w13;
    let n = canonical_vector(&[u, v]);
    Ok((n[0].clone(), n[1].clone()))
}

impl Hexagon {
    pub fn new(vertices: [ProjPoint; 6]) -> Result<Self, HexagonError> {
        for i in 0..6 {
            for j in i + 1..6 {
                if vertices[i] == vertices[j] {
                    return Err(HexagonError::CoincidentVertices(i, j));
                }
            }
        }
        for i in 0..6 {
            let (a, b, c) = (i, (i + 1) % 6, (i + 2) % 6);
            if det3(
                vertices[a].coords(),
                vertices[b].coords(),
                vertices[c].coords(),
            )
            .is_zero()
            {
                return Err(HexagonError::CollinearConsecutive(a, b, c));
            }
        }
        Ok(Hexagon { vertices })
    }

    pub fn from_ints(v: [[i64; 3]; 6]) -> Result<Self, HexagonError> {
        let pts = v.map(|[a, b, c]| ProjPoint::from_ints(a, b, c).expect("nonzero point"));
        Self::new(pts)
    }

    pub fn vertices(&self) -> &[ProjPoint; 6] {
        &self.vertices
    }

    pub fn vertex(&self, j: usize) -> &ProjPoint {
        &self.vertices[j % 6]
    }

    pub fn side(&self, j: usize) -> LinearForm {
        LinearForm::through(self.vertex(j), self.vertex(j + 1)).expect("distinct vertices")
    }

    pub fn sides(&self) -> [LinearForm; 6] {
        std::array::from_fn(|j| self.side(j))
    }

    pub fn diagonal(&self, k: usize) -> LinearForm {
        LinearForm::through(self.vertex(k), self.vertex(k + 3)).expect("distinct vertices")
    }

    pub fn diagonals(&self) -> [LinearForm; 3] {
        std::array::from_fn(|k| self.diagonal(k))
    }

    /// `B_k`, the meet of opposite sides `k` and `k+3`.
    pub fn opposite_point(&self, k: usize) -> Option<ProjPoint> {
        ProjPoint::meet(&self.side(k), &self.side(k + 3))
    }

    /// `A'_j`, the meet of sides `j` and `j+2`.
    pub fn secondary_point(&self, j: usize) -> Option<ProjPoint> {
        ProjPoint::meet(&self.side(j), &self.side(j + 2))
    }

    /// Rotates labels so that vertex `j` becomes vertex `j - shift`.
    pub fn rotated(&self, shift: usize) -> Hexagon {
        Hexagon {
            vertices: std::array::from_fn(|j| self.vertex(j + shift).clone()),
        }
    }

    pub fn on_conic(&self) -> Option<Conic> {
        six_points_on_conic(&self.vertices)
    }

    pub fn pascal_line(&self) -> Result<PascalOutcome, HexagonError> {
        let b: Vec<ProjPoint> = (0..3)
            .map(|k| self.opposite_point(k))
            .collect::<Option<_>>()
            .ok_or(HexagonError::DegenerateOppositePoints)?;
        if b[0] == b[1] || b[1] == b[2] || b[0] == b[2] {
            return Err(HexagonError::DegenerateOppositePoints);
        }
        if !det3(b[0].coords(), b[1].coords(), b[2].coords()).is_zero() {
            return Ok(PascalOutcome::NonCollinear);
        }
        Ok(PascalOutcome::Line(
            LinearForm::through(&b[0], &b[1]).expect("distinct points"),
        ))
    }

    /// Sides then diagonals.
    pub fn lines(&self) -> Vec<LinearForm> {
        let mut v = self.sides().to_vec();
        v.extend(self.diagonals());
        v
    }

    pub fn arrangement(&self) -> Result<Arrangement, HexagonError> {
        Arrangement::new(self.lines()).map_err(|_| HexagonError::CoincidentLines)
    }

    pub fn genericity(&self) -> Result<GenericityReport, HexagonError> {
        let a = self.arrangement()?;
        Ok(genericity_of(&a.lattice(), &self.vertices))
    }

    /// The nine-line arrangement; fails unless its lattice is exactly
    /// six triple points at the vertices and eighteen double points.
    pub fn build_arrangement(&self) -> Result<Arrangement, HexagonError> {
        let a = self.arrangement()?;
        let report = genericity_of(&a.lattice(), &self.vertices);
        if !report.generic {
            return Err(HexagonError::NonGeneric(report.extra));
        }
        Ok(a)
    }

    /// `q_i` is the product of the four sides other than `i` and `i+3`.
    pub fn quartic_basis(&self) -> [HomPoly; 3] {
        let s: Vec<HomPoly> = self.sides().iter().map(LinearForm::to_poly).collect();
        std::array::from_fn(|i| {
            let idx: Vec<usize> = (0..6).filter(|&j| j % 3 != i).collect();
            HomPoly::product(idx.iter().map(|&j| &s[j]))
        })
    }

    /// The twelve points `A_1..A_6, A'_1..A'_6`.
    pub fn twelve_points(&self) -> Option<Vec<ProjPoint>> {
        let mut v = self.vertices.to_vec();
        for j in 0..6 {
            v.push(self.secondary_point(j)?);
        }
        Some(v)
    }

    /// One row per vertex: the local linear part of `c_1 q_1 + c_2 q_2 + c_3 q_3`
    /// must be proportional to the `D_4` tangent direction there, written as
    /// a 2×2 determinant.
    pub fn tangent_system(&self) -> Result<TangentSystem, HexagonError> {
        self.build_arrangement()?;
        let quartics = self.quartic_basis();
        let mut rows = Vec::with_capacity(6);
        for j in 0..6 {
            let p = self.vertex(j);
            let chart = Chart::for_point(p);
            let local = |l: &LinearForm| chart.local_linear(&l.rational_coords());
            let alpha = d4_tangent(
                &local(&self.diagonal(j % 3)),
                &local(&self.side(j + 5)),
                &local(&self.side(j)),
            )?;
            let row: Vec<Rational> = quartics
                .iter()
                .map(|q| {
                    let lin = q.local_jet(p, 2).homogeneous_part(1);
                    &lin[0] * &alpha.1 - &lin[1] * &alpha.0
                })
                .collect();
            rows.push(row);
        }
        let m = RatMatrix::from_rows(3, rows.clone()).expect("three columns");
        let r = m.rank();
        let solution = if r == 2 {
            canonical_vector(&m.kernel_basis()[0])
        } else {
            Vec::new()
        };
        Ok(TangentSystem {
            rows,
            rank: r,
            solution,
        })
    }

    /// `ℓ · ℓ'_1 ℓ'_2 ℓ'_3 · q` with `ℓ` the Pascal line and `q` the quartic
    /// solving the tangent system, certified against `I_8` and `J_8`.
    pub fn pascal_octic(&self) -> Result<PascalOctic, HexagonError> {
        let system = self.tangent_system()?;
        if !system.has_solution() {
            return Err(HexagonError::NoQuartic(system.rank));
        }
        let line = match self.pascal_line()? {
            PascalOutcome::Line(l) => l,
            PascalOutcome::NonCollinear => return Err(HexagonError::NoPascalLine),
        };
        let basis = self.quartic_basis();
        let mut q = HomPoly::zero(4);
        for (c, qi) in system.solution.iter().zip(&basis) {
            q += &qi.scale(c);
        }
        let q = q.normalized();
        let diagonals = self.diagonals();
        let mut h = &line.to_poly() * &q;
        for dg in &diagonals {
            h = &h * &dg.to_poly();
        }
        let a = self.build_arrangement()?;
        let (certified, transcript) = singular::certify_gap_element(&a, &h)?;
        Ok(PascalOctic {
            pascal_line: line,
            diagonals,
            system,
            quartic: q.to_string(),
            octic_text: h.to_string(),
            octic: h.into_coeffs(),
            certified,
            transcript,
        })
    }

    /// Every way of reading a nine-line arrangement with six triple points as
    /// the sides and diagonals of a hexagon. Each line must pass through
    /// exactly two triple points; the diagonals form a perfect matching of
    /// the triple points and the remaining six lines a 6-cycle.
    pub fn decompositions(a: &Arrangement) -> Result<Vec<Hexagon>, HexagonError> {
        let not_hex = |m: &str| HexagonError::NotHexagonal(m.to_string());
        if a.len() != 9 {
            return Err(not_hex("need nine lines"));
        }
        let lat = a.lattice();
        let triples: Vec<&crate::arrangement::MultPoint> =
            lat.points.iter().filter(|p| p.multiplicity == 3).collect();
        if triples.len() != 6 || lat.points.iter().any(|p| p.multiplicity > 3) {
            return Err(not_hex(
                "need exactly six triple points and no higher points",
            ));
        }
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); 9];
        for (ti, t) in triples.iter().enumerate() {
            for &l in &t.lines {
                ends[l].push(ti);
            }
        }
        if ends.iter().any(|e| e.len() != 2) {
            return Err(not_hex("each line must carry two triple points"));
        }
        let mut out = Vec::new();
        for i in 0..9 {
            for j in i + 1..9 {
                for k in j + 1..9 {
                    let mut covered: Vec<usize> =
                        [i, j, k].iter().flat_map(|&l| ends[l].clone()).collect();
                    covered.sort_unstable();
                    covered.dedup();
                    if covered.len() != 6 {
                        continue;
                    }
                    let sides: Vec<usize> = (0..9).filter(|l| ![i, j, k].contains(l)).collect();
                    if let Some(h) = walk_cycle(&sides, &ends, &triples, [i, j, k]) {
                        out.push(h);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The decomposition whose diagonals are the given lines, if any.
    pub fn with_diagonals(
        a: &Arrangement,
        diagonals: &[LinearForm],
    ) -> Result<Hexagon, HexagonError> {
        Self::decompositions(a)?
            .into_iter()
            .find(|h| {
                let d = h.diagonals();
                diagonals.iter().all(|l| d.contains(l))
            })
            .ok_or_else(|| {
                HexagonError::NotHexagonal("no decomposition with these diagonals".into())
            })
    }
}

fn walk_cycle(
    sides: &[usize],
    ends: &[Vec<usize>],
    triples: &[&crate::arrangement::MultPoint],
    diagonals: [usize; 3],
) -> Option<Hexagon> {
    let mut order = vec![0usize];
    let mut used = vec![false; ends.len()];
    let mut cur = 0usize;
    for _ in 0..6 {
        let next_side = sides
            .iter()
            .copied()
            .filter(|&l| !used[l] && ends[l].contains(&cur))
            .min()?;
        used[next_side] = true;
        let next = if ends[next_side][0] == cur {
            ends[next_side][1]
        } else {
            ends[next_side][0]
        };
        cur = next;
        if order.len() < 6 {
            if order.contains(&next) {
                return None;
            }
            order.push(next);
        }
    }
    if cur != 0 {
        return None;
    }
    for k in 0..3 {
        let mut pair = [order[k], order[k + 3]];
        pair.sort_unstable();
        let found = diagonals.iter().any(|&l| {
            let mut e = [ends[l][0], ends[l][1]];
            e.sort_unstable();
            e == pair
        });
        if !found {
            return None;
        }
    }
    let vertices: [ProjPoint; 6] = std::array::from_fn(|i| triples[order[i]].point.clone());
    Hexagon::new(vertices).ok()
}

fn genericity_of(lat: &Lattice, vertices: &[ProjPoint; 6]) -> GenericityReport {
    let mut extra = Vec::new();
    for p in &lat.points {
        let is_vertex = vertices.contains(&p.point);
        if p.multiplicity > 2 && !is_vertex {
            extra.push(format!(
                "extra point {} of multiplicity {}",
                p.point, p.multiplicity
            ));
        } else if is_vertex && p.multiplicity != 3 {
            extra.push(format!(
                "vertex {} has multiplicity {}",
                p.point, p.multiplicity
            ));
        }
    }
    let triple_points = lat.count_of(3);
    let double_points = lat.count_of(2);
    let generic = extra.is_empty() && triple_points == 6 && double_points == 18;
    if extra.is_empty() && !generic {
        extra.push(format!(
            "{triple_points} triple and {double_points} double points"
        ));
    }
    GenericityReport {
        generic,
        triple_points,
        double_points,
        extra,
    }
}

/// Dimension of the space of degree-`k` forms vanishing at the given points.
pub fn forms_through_points(points: &[ProjPoint], k: u32) -> usize {
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            monomials(k)
                .map(|(a, b, c)| HomPoly::monomial(Rational::one(), a, b, c).eval_point(p))
                .collect()
        })
        .collect();
    let n = crate::poly::graded_dim(k as usize);
    n - RowSpace::new(n, &rows).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn parabola_hexagon(t: [i64; 6]) -> Hexagon {
        Hexagon::from_ints(t.map(|t| [t, t * t, 1])).unwrap()
    }

    #[test]
    fn d4_tangent_of_coordinate_branches() {
        let u = (rat(1), rat(0));
        let v = (rat(0), rat(1));
        let uv = (rat(1), rat(1));
        assert_eq!(d4_tangent(&u, &v, &uv).unwrap(), (rat(1), rat(2)));
        assert_eq!(
            d4_tangent(&u, &v, &v),
            Err(HexagonError::ProportionalBranches)
        );
    }

    #[test]
    fn quartic_basis_vanishes_at_twelve_points() {
        let h = parabola_hexagon([0, 1, 3, 7, -2, 5]);
        let pts = h.twelve_points().unwrap();
        for q in h.quartic_basis() {
            for p in &pts {
                assert!(q.eval_point(p).is_zero());
            }
        }
        assert_eq!(forms_through_points(&pts, 4), 3);
        let basis: Vec<Vec<Rational>> = h
            .quartic_basis()
            .iter()
            .map(|q| q.coeffs().to_vec())
            .collect();
        assert_eq!(RowSpace::new(15, &basis).dim(), 3);
    }

    #[test]
    fn conic_detection() {
        let h = parabola_hexagon([0, 1, 3, 7, -2, 5]);
        let c = h.on_conic().unwrap();
        assert_eq!(c.kind, ConicKind::Smooth);
        assert!(c.form.proportional(&crate::poly::parse("x^2-yz").unwrap()));
        let off = Hexagon::from_ints([
            [0, 0, 1],
            [1, 0, 1],
            [0, 1, 1],
            [3, 5, 1],
            [2, 7, 1],
            [-1, 4, 1],
        ])
        .unwrap();
        assert!(off.on_conic().is_none());
    }

    #[test]
    fn parabola_hexagon_has_rank_two_system() {
        let h = parabola_hexagon([0, 1, 3, 7, -2, 5]);
        let s = h.tangent_system().unwrap();
        assert_eq!(s.rank, 2);
        assert!(s.solution.iter().all(|c| !c.is_zero()));
        assert!(matches!(h.pascal_line().unwrap(), PascalOutcome::Line(_)));
    }

    #[test]
    fn equally_spaced_parabola_hexagon_is_degenerate() {
        // chords of y = x^2 have slope t_i + t_j: sides A_5A_0, A_2A_3 and the
        // diagonal A_1A_4 all have slope 5 and meet at (1:5:0)
        let h = Hexagon::from_ints([0i64, 1, 2, 3, 4, 5].map(|t| [t, t * t, 1])).unwrap();
        match h.build_arrangement() {
            Err(HexagonError::NonGeneric(extra)) => assert!(extra[0].contains("(1:5:0)")),
            other => panic!("expected a degenerate hexagon, got {other:?}"),
        }
    }

    #[test]
    fn decompositions_recover_the_hexagon() {
        let h = parabola_hexagon([0, 1, 3, 7, -2, 5]);
        let a = h.build_arrangement().unwrap();
        let decs = Hexagon::decompositions(&a).unwrap();
        assert_eq!(decs.len(), 6);
        let back = Hexagon::with_diagonals(&a, &h.diagonals()).unwrap();
        let mut l1 = back.lines();
        let mut l2 = h.lines();
        l1.sort();
        l2.sort();
        assert_eq!(l1, l2);
    }
}
