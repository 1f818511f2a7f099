//! Ranks and kernels of integer matrices through reduced echelon forms
//! modulo word-size primes.
//!
//! Nothing here is probabilistic. A rank modulo `p` never exceeds the rank
//! over the rationals, so full rank modulo one prime settles the question.
//! Otherwise the kernel is lifted by Chinese remaindering and rational
//! reconstruction, and every lifted vector is checked against the integer
//! matrix. `cols - rank_p` independent verified kernel vectors pin the
//! rank, and a vector whose entries vanish beyond its free column pins the
//! pivot set, so the result is the same canonical basis exact elimination
//! produces. Matrices that resist lifting fall back to exact elimination.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{canonical_int_vector, echelon_from_int_rows, Rational};

const PRIME_POOL: usize = 512;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for `n < 2^32`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5, 7] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^32`, largest first.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_POOL);
        let mut n = (1u64 << 32) - 1;
        while out.len() < PRIME_POOL {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let r = (x.magnitude() % p).to_u64().expect("residue below p");
    if x.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

struct ModEchelon {
    pivots: Vec<usize>,
    /// Reduced rows, pivot entries 1.
    rows: Vec<Vec<u64>>,
}

fn echelon_mod(cols: usize, rows: &[Vec<BigInt>], p: u64, reduced: bool) -> ModEchelon {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| residue(x, p)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == m.len() {
            break;
        }
        let Some(r) = (top..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(top, r);
        let inv = inv_mod(m[top][col], p);
        for x in m[top][col..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let (head, tail) = m.split_at_mut(top);
        let (prow, rest) = tail.split_first_mut().expect("pivot row");
        let others = rest.iter_mut().chain(if reduced {
            head.iter_mut()
        } else {
            [].iter_mut()
        });
        for row in others {
            let t = row[col];
            if t == 0 {
                continue;
            }
            let neg = p - t;
            for (x, &y) in row[col..].iter_mut().zip(&prow[col..]) {
                if y != 0 {
                    *x = (*x + mul_mod(neg, y, p)) % p;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    ModEchelon { pivots, rows: m }
}

/// Rational `n/d` with `n ≡ a d (mod m)` and `|n|, d <= sqrt(m/2)`, if one exists.
fn reconstruct(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn dot_is_zero(row: &[BigInt], v: &[BigInt]) -> bool {
    row.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
        .is_zero()
}

/// Lifted kernel vectors from the accumulated residues, or `None` when some
/// entry does not reconstruct yet or a vector fails the exact check.
fn lift(
    cols: usize,
    rows: &[Vec<BigInt>],
    pivots: &[usize],
    free: &[usize],
    acc: &[Vec<BigInt>],
    modulus: &BigInt,
) -> Option<Vec<Vec<BigInt>>> {
    let bound = (modulus / 2u32).sqrt();
    let mut out = Vec::with_capacity(free.len());
    for (fi, &f) in free.iter().enumerate() {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        // a denominator found earlier in the vector usually clears the rest
        let mut den = BigInt::one();
        for (pi, &pc) in pivots.iter().enumerate() {
            let a = &acc[fi][pi];
            if a.is_zero() {
                continue;
            }
            let scaled = (a * &den).mod_floor(modulus);
            let balanced = if scaled > (modulus >> 1usize) {
                scaled - modulus
            } else {
                scaled
            };
            v[pc] = if den <= bound && balanced.abs() <= bound {
                Rational::new(balanced, den.clone())
            } else {
                let r = reconstruct(a, modulus, &bound)?;
                den = den.lcm(r.denom());
                r
            };
        }
        let w = canonical_int_vector(&v);
        // pivots of the exact echelon form are exactly the given ones
        if pivots.iter().any(|&pc| pc > f && !w[pc].is_zero()) {
            return None;
        }
        if !rows.iter().all(|r| dot_is_zero(r, &w)) {
            return None;
        }
        out.push(w);
    }
    Some(out)
}

fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

/// Basis of the right kernel of an integer matrix: one primitive vector per
/// free column of the reduced echelon form, first nonzero entry positive.
pub(crate) fn kernel(cols: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if rows.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|j| BigInt::from((i == j) as u8)).collect())
            .collect();
    }
    let mut pivots: Vec<usize> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::zero();
    let mut used = 0usize;
    let mut next_lift = 1usize;
    for &p in primes() {
        let e = echelon_mod(cols, &rows, p, true);
        if e.pivots.len() == cols {
            return Vec::new();
        }
        let residues = |pivots: &[usize], free: &[usize]| -> Vec<Vec<u64>> {
            free.iter()
                .map(|&f| (0..pivots.len()).map(|i| (p - e.rows[i][f]) % p).collect())
                .collect()
        };
        if modulus.is_zero() || better(&e.pivots, &pivots) {
            pivots = e.pivots.clone();
            free = (0..cols).filter(|c| !pivots.contains(c)).collect();
            acc = residues(&pivots, &free)
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect();
            modulus = BigInt::from(p);
            used = 1;
            next_lift = 1;
        } else if e.pivots == pivots {
            let inv = BigInt::from(inv_mod(residue(&modulus, p), p));
            let pb = BigInt::from(p);
            for (row, new) in acc.iter_mut().zip(residues(&pivots, &free)) {
                for (a, r) in row.iter_mut().zip(new) {
                    // a + M * ((r - a) / M mod p)
                    let diff = (BigInt::from(r) - &*a).mod_floor(&pb);
                    let t = (diff * &inv).mod_floor(&pb);
                    *a += &modulus * t;
                }
            }
            modulus *= p;
            used += 1;
        } else {
            continue;
        }
        if used >= next_lift {
            if let Some(k) = lift(cols, &rows, &pivots, &free, &acc, &modulus) {
                return k;
            }
            next_lift = used + used.div_ceil(2);
        }
    }
    echelon_from_int_rows(cols, rows, true).kernel_int()
}

/// Rank modulo one prime: a lower bound for the rank over the rationals.
pub(crate) fn rank_lower_bound(cols: usize, rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    echelon_mod(cols, rows, primes()[0], false).pivots.len()
}

/// Rank over the rationals of an integer matrix.
pub(crate) fn rank(cols: usize, rows: &[Vec<BigInt>]) -> usize {
    let nonzero: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let n = nonzero.len();
    if n == 0 {
        return 0;
    }
    let r = echelon_mod(cols, &nonzero, primes()[0], false).pivots.len();
    if r == n.min(cols) {
        return r;
    }
    if cols <= n {
        cols - kernel(cols, &nonzero).len()
    } else {
        let t: Vec<Vec<BigInt>> = (0..cols)
            .map(|c| nonzero.iter().map(|row| row[c].clone()).collect())
            .collect();
        n - kernel(n, &t).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn primes_are_prime() {
        let ps = primes();
        assert_eq!(ps[0], 4294967291);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(!is_prime(4294967297)); // 641 * 6700417
    }

    #[test]
    fn agrees_with_exact_elimination() {
        let m = ints(&[&[2, 4, 6, 8], &[1, 3, 5, 7], &[3, 7, 11, 15], &[0, 0, 0, 0]]);
        let exact = echelon_from_int_rows(4, m.clone(), true);
        assert_eq!(kernel(4, &m), exact.kernel_int());
        assert_eq!(rank(4, &m), exact.rank());
    }

    #[test]
    fn entries_beyond_one_word() {
        // kernel entries need several primes to lift
        let big = BigInt::from(3).pow(100u32);
        let m = vec![vec![big.clone(), BigInt::from(7), -&big - 1]];
        let k = kernel(3, &m);
        assert_eq!(k, echelon_from_int_rows(3, m.clone(), true).kernel_int());
        assert_eq!(rank(3, &m), 1);
    }

    #[test]
    fn a_prime_dividing_a_pivot_is_skipped() {
        let p = primes()[0] as i64;
        let m = ints(&[&[p, 1], &[0, 1]]);
        assert_eq!(rank(2, &m), 2);
        let m = ints(&[&[p, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            kernel(3, &m),
            echelon_from_int_rows(3, m.clone(), true).kernel_int()
        );
    }
}
