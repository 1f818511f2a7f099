use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use ziegler::linalg::{format_rational, parse_rational, ratio};
use ziegler::poly::{graded_dim, monomials};
use ziegler::{parse, HomPoly, ProjPoint, RatMatrix, Rational};

/// Textbook Gauss–Jordan over the rationals, written independently of the crate.
fn naive_rref(rows: &[Vec<Rational>], cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<Rational>>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        let entry = (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d));
        // bias towards low rank: a third of the rows repeat combinations
        (
            Just(c),
            prop::collection::vec(prop::collection::vec(entry, c), r),
            prop::collection::vec(-2i64..=2, r),
        )
            .prop_map(|(c, mut rows, mix)| {
                for i in 1..rows.len() {
                    if i % 3 == 0 {
                        let s = Rational::from_integer(mix[i].into());
                        rows[i] = rows[i - 1]
                            .iter()
                            .zip(&rows[0])
                            .map(|(a, b)| a + &s * b)
                            .collect();
                    }
                }
                (c, rows)
            })
    })
}

fn rational() -> impl Strategy<Value = (i64, i64)> {
    (-50i64..=50, 1i64..=40)
}

fn form(degree: u32) -> impl Strategy<Value = HomPoly> {
    prop::collection::vec((-3i64..=3, 1i64..=2), graded_dim(degree as usize)).prop_map(move |c| {
        HomPoly::from_coeffs(degree, c.into_iter().map(|(n, d)| ratio(n, d)).collect())
    })
}

fn point() -> impl Strategy<Value = ProjPoint> {
    (-4i64..=4, -4i64..=4, -4i64..=4)
        .prop_filter_map("nonzero point", |(a, b, c)| ProjPoint::from_ints(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_of_transpose((cols, rows) in matrix()) {
        let m = RatMatrix::from_rows(cols, rows).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_and_kernel_against_naive_elimination((cols, rows) in matrix()) {
        let m = RatMatrix::from_rows(cols, rows.clone()).unwrap();
        let (rref, pivots) = naive_rref(&rows, cols);
        prop_assert_eq!(m.rank(), rref.len());
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len() + m.rank(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            // canonical: primitive integers, first nonzero positive
            let first = v.iter().find(|x| !x.is_zero()).unwrap();
            prop_assert!(first.is_positive());
            prop_assert!(v.iter().all(|x| x.is_integer()));
        }
        // the naive kernel has the same span
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        for &fc in &free {
            let mut v = vec![Rational::zero(); cols];
            v[fc] = Rational::one();
            for (row, &pc) in rref.iter().zip(&pivots) {
                v[pc] = -row[fc].clone();
            }
            let mut stacked = kernel.clone();
            stacked.push(v);
            prop_assert_eq!(RatMatrix::from_rows(cols, stacked).unwrap().rank(), kernel.len());
        }
    }

    #[test]
    fn rational_chains_match_cross_multiplication(terms in prop::collection::vec((rational(), 0u8..3), 1..12)) {
        let mut acc = Rational::zero();
        let (mut num, mut den) = (BigInt::zero(), BigInt::one());
        for ((n, d), op) in terms {
            let (n, d) = (BigInt::from(n), BigInt::from(d));
            match op {
                0 => {
                    acc += Rational::new(n.clone(), d.clone());
                    num = &num * &d + &n * &den;
                    den *= d;
                }
                1 => {
                    acc -= Rational::new(n.clone(), d.clone());
                    num = &num * &d - &n * &den;
                    den *= d;
                }
                _ => {
                    acc *= Rational::new(n.clone(), d.clone());
                    num *= n;
                    den *= d;
                }
            }
        }
        // same value, and the crate's form is in lowest terms with positive denominator
        prop_assert_eq!(acc.numer() * &den, &num * acc.denom());
        prop_assert!(acc.denom().is_positive());
        prop_assert!(num_integer::Integer::gcd(acc.numer(), acc.denom()).is_one());
        prop_assert_eq!(parse_rational(&format_rational(&acc)).unwrap(), acc);
    }

    #[test]
    fn parse_print_parse(f in (0u32..5).prop_flat_map(form)) {
        prop_assume!(!f.is_zero());
        let printed = f.to_string();
        let g = parse(&printed).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(g.to_string(), printed);
    }

    #[test]
    fn operations_keep_homogeneity(f in form(3), g in form(3), h in form(2)) {
        let s = &f + &g;
        prop_assert_eq!(s.degree(), 3);
        let p = &f * &h;
        prop_assert_eq!(p.degree(), 5);
        prop_assert_eq!(p.coeffs().len(), graded_dim(5));
        for d in p.gradient() {
            prop_assert_eq!(d.degree(), 4);
        }
        // product evaluates to the product of values
        let pt = [ratio(2, 1), ratio(-1, 3), ratio(5, 2)];
        prop_assert_eq!(p.eval(&pt), f.eval(&pt) * h.eval(&pt));
    }

    #[test]
    fn euler_relation(f in (1u32..6).prop_flat_map(form)) {
        let [fx, fy, fz] = f.gradient();
        let x = HomPoly::var(ziegler::Var::X);
        let y = HomPoly::var(ziegler::Var::Y);
        let z = HomPoly::var(ziegler::Var::Z);
        let lhs = &(&(&x * &fx) + &(&y * &fy)) + &(&z * &fz);
        prop_assert_eq!(lhs, f.scale(&Rational::from_integer(f.degree().into())));
    }

    #[test]
    fn jet_of_product_is_product_of_jets(f in form(2), g in form(3), p in point(), order in 1usize..6) {
        let lhs = (&f * &g).local_jet(&p, order);
        let rhs = f.local_jet(&p, order).mul(&g.local_jet(&p, order));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jet_recovers_the_form(f in form(3), p in point()) {
        // a jet of order > deg f is the whole dehomogenized polynomial: evaluate both at a nearby point
        let jet = f.local_jet(&p, 4);
        let base = p.rational_coords();
        let chart = jet.chart();
        let (bu, bv) = chart.base(&p);
        let (du, dv) = (ratio(1, 3), ratio(-2, 5));
        // the chart fixes the last nonzero coordinate to 1
        let fixed = chart_index(&base);
        let q0: Vec<Rational> = base.iter().map(|c| c / &base[fixed]).collect();
        let free: Vec<usize> = (0..3).filter(|&i| i != fixed).collect();
        prop_assert_eq!(&q0[free[0]], &bu);
        prop_assert_eq!(&q0[free[1]], &bv);
        let mut q: [Rational; 3] = q0.try_into().unwrap();
        q[free[0]] += &du;
        q[free[1]] += &dv;
        let mut value = Rational::zero();
        for (i, j) in (0..4).flat_map(|s| (0..=s).map(move |j| (s - j, j))) {
            value += jet.coeff(i, j) * pow(&du, i) * pow(&dv, j);
        }
        prop_assert_eq!(value, f.eval(&q));
    }
}

fn chart_index(p: &[Rational; 3]) -> usize {
    (0..3).rev().find(|&i| !p[i].is_zero()).unwrap()
}

fn pow(r: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * r)
}

#[test]
fn graded_dims_count_monomials() {
    for k in 0..12u32 {
        assert_eq!(monomials(k).count(), graded_dim(k as usize));
    }
    assert_eq!(graded_dim(8), 45);
}
