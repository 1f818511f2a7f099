//! Degree pieces of the saturated ideal `I` of the singular scheme and of the
//! Jacobian ideal `J`, the defect sequence, and certified elements of `I_k \ J_k`.
//!
//! At an ordinary `m`-fold point the local Tjurina ideal is the Jacobian
//! ideal of the product `g` of the incident local line forms. It contains
//! `m^{2m-3}`, so membership of a germ is decided by its jet of order
//! `N = max(1, 2m-3)`: the jet must lie in `(g_u, g_v) + m^N`. The
//! annihilator of that subspace gives exactly `(m-1)^2` linear conditions.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{Arrangement, MultPoint};
use crate::linalg::{
    canonical_vector, clear_denominators, int_rank, rational_serde, RatMatrix, Rational, RowSpace,
};
use crate::poly::{graded_dim, monomials, HomPoly, LocalJet};
use crate::syzygy;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularError {
    #[error("point {point} gives {got} local conditions, expected {expected}")]
    ConditionCount {
        point: String,
        got: usize,
        expected: usize,
    },
    #[error("point {0} is not an ordinary singularity")]
    NotOrdinary(String),
}

/// Jet order deciding local membership at an ordinary `m`-fold point.
pub fn truncation_order(m: usize) -> usize {
    (2 * m).saturating_sub(3).max(1)
}

/// Local Jacobian ideal `(g_u, g_v) + m^N` as a subspace of the jet space,
/// where `g` is the product of the local forms of the lines through `p`.
fn local_jacobian_space(p: &MultPoint, a: &Arrangement, order: usize) -> RowSpace {
    let chart = crate::poly::Chart::for_point(&p.point);
    let forms: Vec<(Rational, Rational)> = p
        .lines
        .iter()
        .map(|&i| chart.local_linear(&a.lines()[i].rational_coords()))
        .collect();
    // g as a binary form of degree m: coefficients of u^{m-j} v^j
    let mut g = vec![Rational::from_integer(1.into())];
    for (cu, cv) in &forms {
        let mut next = vec![Rational::zero(); g.len() + 1];
        for (j, c) in g.iter().enumerate() {
            next[j] += c * cu;
            next[j + 1] += c * cv;
        }
        g = next;
    }
    let m = forms.len();
    let gu: Vec<Rational> = (0..m)
        .map(|j| &g[j] * Rational::from_integer(((m - j) as i64).into()))
        .collect();
    let gv: Vec<Rational> = (0..m)
        .map(|j| &g[j + 1] * Rational::from_integer(((j + 1) as i64).into()))
        .collect();
    let size = LocalJet::size(order);
    let mut gens = Vec::new();
    for partial in [&gu, &gv] {
        // partial has degree m-1; multiply by u^s-t v^t
        for s in 0..order.saturating_sub(m - 1) {
            for t in 0..=s {
                let mut w = vec![Rational::zero(); size];
                for (j, c) in partial.iter().enumerate() {
                    let (i_u, i_v) = (m - 1 - j + s - t, j + t);
                    if i_u + i_v < order {
                        w[LocalJet::index(i_u, i_v)] = c.clone();
                    }
                }
                gens.push(w);
            }
        }
    }
    RowSpace::new(size, &gens)
}

/// Linear functionals on jets of order `N` vanishing exactly on the local Tjurina ideal.
fn local_functionals(
    p: &MultPoint,
    a: &Arrangement,
    order: usize,
) -> Result<Vec<Vec<Rational>>, SingularError> {
    let m = p.multiplicity;
    if m < 2 {
        return Err(SingularError::NotOrdinary(p.point.to_string()));
    }
    let space = local_jacobian_space(p, a, order);
    let funcs = if space.dim() == 0 {
        RatMatrix::identity(LocalJet::size(order)).row_vecs()
    } else {
        space.kernel()
    };
    let expected = (m - 1) * (m - 1);
    if funcs.len() != expected {
        return Err(SingularError::ConditionCount {
            point: p.point.to_string(),
            got: funcs.len(),
            expected,
        });
    }
    Ok(funcs)
}

/// The `(m-1)^2` rows on `S_k` expressing membership in the local ideal at `p`.
pub fn local_conditions(
    p: &MultPoint,
    a: &Arrangement,
    k: u32,
) -> Result<Vec<Vec<Rational>>, SingularError> {
    conditions_at_order(p, a, k, truncation_order(p.multiplicity))
}

fn conditions_at_order(
    p: &MultPoint,
    a: &Arrangement,
    k: u32,
    order: usize,
) -> Result<Vec<Vec<Rational>>, SingularError> {
    let funcs = local_functionals(p, a, order)?;
    let jets: Vec<LocalJet> = monomials(k)
        .map(|(x, y, z)| {
            HomPoly::monomial(Rational::from_integer(1.into()), x, y, z).local_jet(&p.point, order)
        })
        .collect();
    Ok(funcs
        .iter()
        .map(|lam| {
            jets.iter()
                .map(|j| {
                    lam.iter()
                        .zip(j.coeffs())
                        .filter(|(l, c)| !l.is_zero() && !c.is_zero())
                        .fold(Rational::zero(), |acc, (l, c)| acc + l * c)
                })
                .collect()
        })
        .collect())
}

/// Rows grouped by singular point in lattice order.
#[derive(Clone, Debug)]
pub struct ConditionMatrix {
    pub degree: u32,
    pub matrix: RatMatrix,
    /// Lattice point index of each row.
    pub point_of_row: Vec<usize>,
}

pub fn condition_matrix(a: &Arrangement, k: u32) -> Result<ConditionMatrix, SingularError> {
    let lattice = a.lattice();
    let blocks: Vec<Vec<Vec<Rational>>> = lattice
        .points
        .par_iter()
        .map(|p| local_conditions(p, a, k))
        .collect::<Result<_, _>>()?;
    let mut point_of_row = Vec::new();
    let mut rows = Vec::new();
    for (pi, b) in blocks.into_iter().enumerate() {
        point_of_row.extend(std::iter::repeat_n(pi, b.len()));
        rows.extend(b);
    }
    let matrix = RatMatrix::from_rows(graded_dim(k as usize), rows).expect("row length");
    Ok(ConditionMatrix {
        degree: k,
        matrix,
        point_of_row,
    })
}

/// The span of `S_{k-d+1} · {f_x, f_y, f_z}` inside `S_k`.
pub fn jacobian_piece(f: &HomPoly, k: u32) -> RowSpace {
    let n = graded_dim(k as usize);
    let d1 = f.degree().saturating_sub(1);
    if k < d1 {
        return RowSpace::new(n, &[]);
    }
    let mut gens = Vec::new();
    for g in f.gradient() {
        for (a, b, c) in monomials(k - d1) {
            let m = HomPoly::monomial(Rational::from_integer(1.into()), a, b, c);
            gens.push((&m * &g).into_coeffs());
        }
    }
    RowSpace::new(n, &gens)
}

/// `dim J_k`.
pub fn jacobian_dim(f: &HomPoly, k: u32) -> usize {
    let d1 = f.degree().saturating_sub(1);
    if k < d1 {
        return 0;
    }
    let mut gens = Vec::new();
    for g in f.gradient() {
        for (a, b, c) in monomials(k - d1) {
            let m = HomPoly::monomial(Rational::from_integer(1.into()), a, b, c);
            gens.push(clear_denominators((&m * &g).coeffs()));
        }
    }
    int_rank(graded_dim(k as usize), &gens)
}

/// `(dim I_k, dim J_k)`.
pub fn ideal_dim(a: &Arrangement, k: u32) -> Result<(usize, usize), SingularError> {
    let cm = condition_matrix(a, k)?;
    let dim_i = graded_dim(k as usize) - cm.matrix.rank();
    Ok((dim_i, jacobian_dim(&a.polynomial(), k)))
}

/// Whether `h` satisfies every local condition, i.e. lies in `I_k`.
pub fn in_saturation(a: &Arrangement, h: &HomPoly) -> Result<bool, SingularError> {
    let cm = condition_matrix(a, h.degree())?;
    Ok(cm
        .matrix
        .mul_vec(h.coeffs())
        .expect("size")
        .iter()
        .all(|x| x.is_zero()))
}

pub fn in_jacobian(a: &Arrangement, h: &HomPoly) -> bool {
    jacobian_piece(&a.polynomial(), h.degree()).contains(h.coeffs())
}

/// Whether `h1 ≡ λ h2 (mod J_k)` for a nonzero rational `λ`, with neither in `J_k`.
pub fn congruent_mod_jacobian(a: &Arrangement, h1: &HomPoly, h2: &HomPoly) -> bool {
    if h1.degree() != h2.degree() {
        return false;
    }
    let j = jacobian_piece(&a.polynomial(), h1.degree());
    let r1 = j.reduce(h1.coeffs());
    let r2 = j.reduce(h2.coeffs());
    if r1.iter().all(Zero::is_zero) || r2.iter().all(Zero::is_zero) {
        return false;
    }
    canonical_vector(&r1) == canonical_vector(&r2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectEntry {
    pub k: u32,
    pub dim_i: usize,
    pub dim_j: usize,
    /// `dim S_k / I_k`
    pub codim_i: usize,
    pub defect: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub tau: usize,
    pub entries: Vec<DefectEntry>,
    pub mdr: u32,
    /// `2d - 5 - mdr`
    pub threshold: i64,
    /// `dim S_k / I_k` at the largest computed degree.
    pub stabilized_codim: usize,
}

impl DefectReport {
    pub fn defect(&self, k: u32) -> Option<i64> {
        self.entries.iter().find(|e| e.k == k).map(|e| e.defect)
    }

    /// `defect_k = 0` exactly when `k > 2d - 5 - mdr`, over all computed degrees.
    pub fn matches_threshold(&self) -> bool {
        self.entries
            .iter()
            .all(|e| (e.defect == 0) == (e.k as i64 > self.threshold))
    }
}

/// Defects for `k = 0..=2d`.
pub fn defect_sequence(a: &Arrangement) -> Result<DefectReport, SingularError> {
    defect_sequence_with_mdr(a, syzygy::mdr(&a.polynomial()))
}

pub fn defect_sequence_with_mdr(a: &Arrangement, mdr: u32) -> Result<DefectReport, SingularError> {
    let f = a.polynomial();
    let d = f.degree();
    let tau = a.lattice().total_tjurina();
    let entries: Vec<DefectEntry> = (0..=2 * d)
        .into_par_iter()
        .map(|k| {
            let cm = condition_matrix(a, k)?;
            let codim_i = cm.matrix.rank();
            let dim_i = graded_dim(k as usize) - codim_i;
            let dim_j = jacobian_dim(&f, k);
            Ok(DefectEntry {
                k,
                dim_i,
                dim_j,
                codim_i,
                defect: tau as i64 - codim_i as i64,
            })
        })
        .collect::<Result<_, SingularError>>()?;
    let stabilized_codim = entries.last().map_or(0, |e| e.codim_i);
    Ok(DefectReport {
        tau,
        entries,
        mdr,
        threshold: 2 * d as i64 - 5 - mdr as i64,
        stabilized_codim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCertificate {
    pub degree: u32,
    /// Representative of `I_k \ J_k`, primitive integer coefficients in graded-lex order.
    #[serde(with = "rational_serde::vec")]
    pub h: Vec<Rational>,
    pub h_text: String,
    pub dim_i: usize,
    pub dim_j: usize,
    #[serde(with = "rational_serde::vec2")]
    pub jacobian_basis: Vec<Vec<Rational>>,
    pub transcript: Vec<String>,
}

impl GapCertificate {
    pub fn polynomial(&self) -> HomPoly {
        HomPoly::from_coeffs(self.degree, self.h.clone())
    }
}

/// A certified element of `I_k \ J_k`, or `None` when `I_k = J_k`.
pub fn gap_certificate(a: &Arrangement, k: u32) -> Result<Option<GapCertificate>, SingularError> {
    let cm = condition_matrix(a, k)?;
    let i_basis = cm.matrix.kernel_basis();
    let f = a.polynomial();
    let j = jacobian_piece(&f, k);
    if i_basis.len() <= j.dim() {
        return Ok(None);
    }
    let Some(rem) = i_basis
        .iter()
        .map(|v| j.reduce(v))
        .find(|r| r.iter().any(|x| !x.is_zero()))
    else {
        return Ok(None);
    };
    let h = HomPoly::from_coeffs(k, canonical_vector(&rem));
    let transcript = certify(a, &h, &cm, &j);
    Ok(Some(GapCertificate {
        degree: k,
        h_text: h.to_string(),
        h: h.into_coeffs(),
        dim_i: i_basis.len(),
        dim_j: j.dim(),
        jacobian_basis: j.basis(),
        transcript,
    }))
}

fn certify(a: &Arrangement, h: &HomPoly, cm: &ConditionMatrix, j: &RowSpace) -> Vec<String> {
    let lattice = a.lattice();
    let values = cm.matrix.mul_vec(h.coeffs()).expect("size");
    let mut lines = Vec::new();
    for (pi, p) in lattice.points.iter().enumerate() {
        let ok = values
            .iter()
            .zip(&cm.point_of_row)
            .filter(|(_, &r)| r == pi)
            .all(|(v, _)| v.is_zero());
        let n = cm.point_of_row.iter().filter(|&&r| r == pi).count();
        lines.push(format!(
            "point {} (m={}): {} local conditions {}",
            p.point,
            p.multiplicity,
            n,
            if ok { "satisfied" } else { "VIOLATED" }
        ));
    }
    let mut with_h = j.basis();
    with_h.push(h.coeffs().to_vec());
    let r = RowSpace::new(j.ambient_dim(), &with_h).dim();
    lines.push(format!(
        "rank(J_{} + <h>) = {} = dim J_{} + {}",
        h.degree(),
        r,
        h.degree(),
        r - j.dim()
    ));
    lines
}

/// Checks `h ∈ I_k` and `h ∉ J_k`, returning the transcript and the verdict.
pub fn certify_gap_element(
    a: &Arrangement,
    h: &HomPoly,
) -> Result<(bool, Vec<String>), SingularError> {
    let cm = condition_matrix(a, h.degree())?;
    let j = jacobian_piece(&a.polynomial(), h.degree());
    let in_i = cm
        .matrix
        .mul_vec(h.coeffs())
        .expect("size")
        .iter()
        .all(|x| x.is_zero());
    let in_j = j.contains(h.coeffs());
    Ok((in_i && !in_j, certify(a, h, &cm, &j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;

    fn triangle() -> Arrangement {
        Arrangement::from_ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    #[test]
    fn truncation_orders() {
        assert_eq!(truncation_order(2), 1);
        assert_eq!(truncation_order(3), 3);
        assert_eq!(truncation_order(4), 5);
    }

    #[test]
    fn condition_counts_per_multiplicity() {
        // pencil of m lines through (0:0:1) plus a line at infinity
        for m in 2..=5usize {
            let mut lines: Vec<[i64; 3]> = (0..m as i64).map(|t| [1, t, 0]).collect();
            lines.push([0, 0, 1]);
            let a = Arrangement::from_ints(&lines).unwrap();
            let lat = a.lattice();
            let p = lat.points.iter().find(|p| p.multiplicity == m).unwrap();
            let rows = local_conditions(p, &a, 6).unwrap();
            assert_eq!(rows.len(), (m - 1) * (m - 1));
        }
    }

    #[test]
    fn a_longer_jet_adds_no_conditions() {
        for m in 3..=4usize {
            let mut lines: Vec<[i64; 3]> = (0..m as i64).map(|t| [1, t, 0]).collect();
            lines.push([2, -1, 3]);
            let a = Arrangement::from_ints(&lines).unwrap();
            let lat = a.lattice();
            let p = lat.points.iter().find(|p| p.multiplicity == m).unwrap();
            for k in 2..=6 {
                let base =
                    RowSpace::new(graded_dim(k as usize), &local_conditions(p, &a, k).unwrap());
                let longer = conditions_at_order(p, &a, k, truncation_order(m) + 1).unwrap();
                assert_eq!(longer.len(), (m - 1) * (m - 1));
                assert!(longer.iter().all(|r| base.contains(r)));
                assert_eq!(
                    RowSpace::new(graded_dim(k as usize), &longer).dim(),
                    base.dim()
                );
            }
        }
    }

    #[test]
    fn node_condition_is_vanishing() {
        let a = triangle();
        let lat = a.lattice();
        let rows = local_conditions(&lat.points[0], &a, 1).unwrap();
        assert_eq!(rows.len(), 1);
        // evaluation at the point, up to scale
        let p = &lat.points[0].point;
        let expected: Vec<Rational> = p.rational_coords().to_vec();
        assert_eq!(canonical_vector(&rows[0]), canonical_vector(&expected));
    }

    #[test]
    fn triangle_defects() {
        let r = defect_sequence(&triangle()).unwrap();
        assert_eq!(r.tau, 3);
        assert_eq!(r.mdr, 1);
        assert_eq!(r.threshold, 0);
        assert_eq!(r.defect(0), Some(2));
        assert!(r.entries.iter().skip(1).all(|e| e.defect == 0));
        assert!(r.matches_threshold());
    }

    #[test]
    fn jacobian_inside_saturation() {
        let a = Arrangement::from_ints(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3]])
            .unwrap();
        let f = a.polynomial();
        for g in f.gradient() {
            assert!(in_saturation(&a, &g).unwrap());
        }
    }
}
