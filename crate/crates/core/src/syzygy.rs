//! The graded module `D_0(f)` of Jacobian syzygies, one degree at a time.
//!
//! In degree `k` the syzygies are the kernel of
//! `S_k^3 -> S_{k+d-1}, (a,b,c) -> a f_x + b f_y + c f_z`. Minimal generator
//! degrees follow from graded counting: the number of new generators in
//! degree `k` is `dim D_0(f)_k - dim (S_1 · D_0(f)_{k-1})`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{clear_denominators, int_kernel, int_rank, rank_lower_bound, Rational};
use crate::poly::{graded_dim, monomial_index, monomials, HomPoly};

/// A syzygy `(a, b, c)` of degree `k`.
pub type Syzygy = [HomPoly; 3];

/// Integer rows of the multiplication matrix, rows indexed by monomials of
/// degree `k + d - 1`, columns by `(component, monomial of degree k)`.
fn syzygy_matrix(f: &HomPoly, k: u32) -> (usize, Vec<Vec<BigInt>>) {
    let d1 = f.degree() - 1;
    // one common scale for all three partials, or the kernel would be skewed
    let joint: Vec<Rational> = f
        .gradient()
        .iter()
        .flat_map(|g| g.coeffs().to_vec())
        .collect();
    let m = graded_dim(d1 as usize);
    let grad: Vec<Vec<BigInt>> = clear_denominators(&joint)
        .chunks(m)
        .map(<[BigInt]>::to_vec)
        .collect();
    let n = graded_dim(k as usize);
    let cols = 3 * n;
    let mut rows = vec![vec![BigInt::zero(); cols]; graded_dim((k + d1) as usize)];
    for (gi, g) in grad.iter().enumerate() {
        for (gm, (a, b, c)) in monomials(d1).enumerate() {
            if g[gm].is_zero() {
                continue;
            }
            for (mi, (ma, mb, mc)) in monomials(k).enumerate() {
                rows[monomial_index(a + ma, b + mb, c + mc)][gi * n + mi] = g[gm].clone();
            }
        }
    }
    (cols, rows)
}

fn split_components(k: u32, v: &[BigInt]) -> Syzygy {
    let n = graded_dim(k as usize);
    std::array::from_fn(|g| {
        HomPoly::from_coeffs(
            k,
            v[g * n..(g + 1) * n]
                .iter()
                .cloned()
                .map(Rational::from_integer)
                .collect(),
        )
    })
}

fn kernel_int(f: &HomPoly, k: u32) -> Vec<Vec<BigInt>> {
    let (cols, rows) = syzygy_matrix(f, k);
    int_kernel(cols, &rows)
}

/// `dim D_0(f)_k`.
pub fn syzygy_dim(f: &HomPoly, k: u32) -> usize {
    let (cols, rows) = syzygy_matrix(f, k);
    cols - int_rank(cols, &rows)
}

/// Canonical basis of `D_0(f)_k`.
pub fn syzygy_space(f: &HomPoly, k: u32) -> Vec<Syzygy> {
    kernel_int(f, k)
        .iter()
        .map(|v| split_components(k, v))
        .collect()
}

/// `a f_x + b f_y + c f_z`.
pub fn apply(f: &HomPoly, rho: &Syzygy) -> HomPoly {
    let [fx, fy, fz] = f.gradient();
    let t = &(&rho[0] * &fx) + &(&rho[1] * &fy);
    &t + &(&rho[2] * &fz)
}

/// Minimal degree of a Jacobian relation. Terminates by `d - 1` at the latest,
/// where `(f_y, -f_x, 0)` lives.
pub fn mdr(f: &HomPoly) -> u32 {
    (0..f.degree())
        .find(|&k| syzygy_dim(f, k) > 0)
        .unwrap_or(f.degree().saturating_sub(1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyProfile {
    pub d: u32,
    /// `dim D_0(f)_k` for `k = 0..=cap`.
    pub dims: Vec<usize>,
    /// Minimal generator degrees found within the cap, nondecreasing.
    pub generators: Vec<u32>,
    pub mdr: u32,
    pub free: bool,
}

impl SyzygyProfile {
    pub fn cap(&self) -> u32 {
        self.dims.len() as u32 - 1
    }
}

pub fn default_cap(d: u32) -> u32 {
    (2 * d).saturating_sub(3).max(d.saturating_sub(1))
}

/// All products `m · ρ` with `m` a monomial, landing in degree `k`.
fn multiples(gens: &[(u32, Vec<BigInt>)], k: u32) -> Vec<Vec<BigInt>> {
    let dst_n = graded_dim(k as usize);
    let mut out = Vec::new();
    for (e, v) in gens {
        let src_n = graded_dim(*e as usize);
        let src_monos: Vec<_> = monomials(*e).collect();
        for (sa, sb, sc) in monomials(k - e) {
            let mut w = vec![BigInt::zero(); 3 * dst_n];
            for g in 0..3 {
                for (mi, &(a, b, c)) in src_monos.iter().enumerate() {
                    let x = &v[g * src_n + mi];
                    if !x.is_zero() {
                        w[g * dst_n + monomial_index(a + sa, b + sb, c + sc)] = x.clone();
                    }
                }
            }
            out.push(w);
        }
    }
    out
}

/// Dimensions and minimal generator degrees of `D_0(f)` up to degree `cap`.
///
/// Degree by degree, the rank of the syzygy matrix modulo a prime bounds
/// `dim D_0(f)_k` from above and the rank of the multiples of generators
/// found so far bounds it from below. Where the bounds meet, no generator
/// is new. Elsewhere the kernel is computed exactly and enough of it is
/// added to the generator list to span.
pub fn minimal_generator_degrees(f: &HomPoly, cap: u32) -> SyzygyProfile {
    let d = f.degree();
    let cap = cap.max(d.saturating_sub(1));
    let mut gens: Vec<(u32, Vec<BigInt>)> = Vec::new();
    let mut dims = Vec::with_capacity(cap as usize + 1);
    let mut generators = Vec::new();
    for k in 0..=cap {
        let (cols, rows) = syzygy_matrix(f, k);
        let upper = cols - rank_lower_bound(cols, &rows);
        let mut span = multiples(&gens, k);
        let lower = rank_lower_bound(cols, &span);
        if lower == upper {
            dims.push(upper);
            continue;
        }
        let basis = int_kernel(cols, &rows);
        let new = basis.len() - int_rank(cols, &span);
        generators.extend(std::iter::repeat_n(k, new));
        let mut r = lower;
        for v in &basis {
            if r == basis.len() {
                break;
            }
            span.push(v.clone());
            let r2 = rank_lower_bound(cols, &span);
            if r2 > r {
                gens.push((k, v.clone()));
                r = r2;
            } else {
                span.pop();
            }
        }
        dims.push(basis.len());
    }
    let mdr = dims.iter().position(|&x| x > 0).unwrap_or(cap as usize) as u32;
    let free = generators.len() == 2 && {
        let hf = |k: usize, e: u32| {
            if k as u32 >= e {
                graded_dim(k - e as usize)
            } else {
                0
            }
        };
        dims.iter()
            .enumerate()
            .all(|(k, &dk)| dk == hf(k, generators[0]) + hf(k, generators[1]))
    };
    SyzygyProfile {
        d,
        dims,
        generators,
        mdr,
        free,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn triangle_syzygies_in_degree_one() {
        let f = parse("xyz").unwrap();
        let basis = syzygy_space(&f, 1);
        assert_eq!(basis.len(), 2);
        for rho in &basis {
            assert!(apply(&f, rho).is_zero());
        }
        assert_eq!(syzygy_dim(&f, 0), 0);
        assert_eq!(mdr(&f), 1);
    }

    #[test]
    fn triangle_is_free_with_exponents_one_one() {
        let p = minimal_generator_degrees(&parse("xyz").unwrap(), 4);
        assert_eq!(p.generators, vec![1, 1]);
        assert!(p.free);
        assert_eq!(p.mdr, 1);
        assert_eq!(p.dims, vec![0, 2, 6, 12, 20]);
    }

    #[test]
    fn smooth_cubic_has_only_koszul_relations() {
        // nonsingular: D_0 is generated by Koszul relations in degree d-1
        let f = parse("x^3+y^3+z^3").unwrap();
        assert_eq!(mdr(&f), 2);
        let p = minimal_generator_degrees(&f, 4);
        assert_eq!(p.generators, vec![2, 2, 2]);
        assert!(!p.free);
    }

    #[test]
    fn basis_vectors_are_relations_when_partials_have_different_contents() {
        // f_x, f_y, f_z have contents 9, 15, 21
        let f = parse("3x^3+5y^3+7z^3").unwrap();
        for rho in syzygy_space(&f, 2) {
            assert!(apply(&f, &rho).is_zero());
        }
        let g = parse("xy(2x+3y+5z)(x-7z)(4y+z)").unwrap();
        for k in 0..5 {
            for rho in syzygy_space(&g, k) {
                assert!(apply(&g, &rho).is_zero());
            }
        }
    }

    #[test]
    fn euler_vector_is_never_a_syzygy() {
        let f = parse("xy(x-y)(x+y-z)").unwrap();
        let euler: Syzygy = [
            parse("x").unwrap(),
            parse("y").unwrap(),
            parse("z").unwrap(),
        ];
        assert_eq!(apply(&f, &euler), f.scale(&crate::linalg::rat(4)));
    }
}
