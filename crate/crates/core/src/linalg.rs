//! Exact linear algebra over the rationals.
//!
//! All elimination runs on integer rows: every input row is scaled to a
//! primitive integer vector and rows are combined fraction-free, dividing
//! out the row content after each step. Pivots are chosen by smallest bit
//! length within the active column. Ranks and kernels of large matrices go
//! through [`modular`], which reaches the same answers faster.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};
use thiserror::Error;

mod modular;

pub(crate) use modular::{kernel as int_kernel, rank as int_rank, rank_lower_bound};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`. Decimal notation is rejected so values stay exact.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let bad = || LinalgError::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let is_int = |x: &str| {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || den.is_some_and(|d| !is_int(d)) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapters storing rationals as `"p/q"` strings.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod vec2 {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for row in v {
                let strs: Vec<String> = row.iter().map(format_rational).collect();
                seq.serialize_element(&strs)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Vec<Vec<Rational>>, D::Error> {
            let v = Vec::<Vec<String>>::deserialize(d)?;
            v.iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RatMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        Self::from_rows(cols, data).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        kernel_basis(self)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }
}

/// Scales a rational vector to a primitive integer vector (same direction, positive scale).
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    make_primitive(ints)
}

/// Divides out the gcd of the entries; the sign is preserved.
pub fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Primitive integer form with first nonzero entry positive. Zero stays zero.
pub fn canonical_int_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut w = clear_denominators(v);
    if w.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in w.iter_mut() {
            *x = -&*x;
        }
    }
    w
}

pub fn canonical_vector(v: &[Rational]) -> Vec<Rational> {
    canonical_int_vector(v)
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

/// Integer echelon form of a row set. When `reduced`, every pivot column is
/// zero outside its pivot row.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    pub cols: usize,
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

fn bits(x: &BigInt) -> u64 {
    x.bits()
}

/// `dst = dst * a - src * b`, then divide by the content.
fn combine(dst: &mut [BigInt], a: &BigInt, src: &[BigInt], b: &BigInt, start: usize) {
    for c in start..dst.len() {
        let s = &src[c];
        if s.is_zero() {
            if !dst[c].is_zero() {
                dst[c] *= a;
            }
        } else if dst[c].is_zero() {
            dst[c] = -(s * b);
        } else {
            dst[c] = &dst[c] * a - s * b;
        }
    }
    let g = content(&dst[start..]);
    if !g.is_zero() && !g.is_one() {
        for x in dst[start..].iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

fn eliminate_with(dst: &mut [BigInt], pivot_row: &[BigInt], col: usize, start: usize) {
    let t = &dst[col];
    if t.is_zero() {
        return;
    }
    let p = &pivot_row[col];
    let g = p.gcd(t);
    let a = p / &g;
    let b = t / &g;
    combine(dst, &a, pivot_row, &b, start);
}

pub(crate) fn echelon_from_int_rows(
    cols: usize,
    mut rows: Vec<Vec<BigInt>>,
    reduced: bool,
) -> Echelon {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top >= rows.len() {
            break;
        }
        let best = (top..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| (bits(&rows[r][col]), r));
        let Some(best) = best else { continue };
        rows.swap(top, best);
        let (head, tail) = rows.split_at_mut(top + 1);
        let pivot_row = &head[top];
        // entries left of `col` are zero in both rows here
        for r in tail.iter_mut() {
            eliminate_with(r, pivot_row, col, col);
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    if reduced {
        for i in (0..rows.len()).rev() {
            let col = pivots[i];
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            for r in head.iter_mut() {
                eliminate_with(r, pivot_row, col, 0);
            }
        }
    }
    // pivots positive
    for (r, &c) in rows.iter_mut().zip(&pivots) {
        if r[c].is_negative() {
            for x in r.iter_mut() {
                *x = -&*x;
            }
        }
    }
    Echelon { cols, rows, pivots }
}

/// Rank over the rationals, computed exactly.
pub fn rank(m: &RatMatrix) -> usize {
    int_rank(m.cols, &int_rows(m))
}

fn int_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows).map(|r| clear_denominators(m.row(r))).collect()
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Right null space from a reduced echelon form, one vector per free column.
    pub fn kernel_int(&self) -> Vec<Vec<BigInt>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    v[pc] = -Rational::new(row[free].clone(), row[pc].clone());
                }
            }
            out.push(canonical_int_vector(&v));
        }
        out
    }
}

/// Basis of the right null space, `cols - rank` vectors, each a primitive
/// integer vector with first nonzero entry positive.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    int_kernel(m.cols, &int_rows(m))
        .into_iter()
        .map(|v| v.into_iter().map(Rational::from_integer).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Vec<Rational>),
    Inconsistent,
}

/// One exact solution of `m x = b` (free variables set to zero), or the inconsistency flag.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Result<SolveOutcome, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            got: b.len(),
        });
    }
    let rows = (0..m.rows)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r].clone());
            clear_denominators(&row)
        })
        .collect();
    let e = echelon_from_int_rows(m.cols + 1, rows, true);
    if e.pivots.last() == Some(&m.cols) {
        return Ok(SolveOutcome::Inconsistent);
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        x[pc] = Rational::new(row[m.cols].clone(), row[pc].clone());
    }
    Ok(SolveOutcome::Solution(x))
}

/// A subspace of `Q^n` held in reduced integer echelon form; supports
/// membership tests and reduction of vectors modulo the span.
#[derive(Clone, Debug)]
pub struct RowSpace {
    ech: Echelon,
}

impl RowSpace {
    pub fn new(dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let rows = vectors.iter().map(|v| clear_denominators(v)).collect();
        RowSpace {
            ech: echelon_from_int_rows(dim, rows, true),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ech.cols
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    /// Reduced basis of the span (integer rows, pivots positive).
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.ech
            .rows
            .iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect()
    }

    /// Remainder of `v` after clearing every pivot coordinate of the span.
    /// Zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (row, &pc) in self.ech.rows.iter().zip(&self.ech.pivots) {
            if w[pc].is_zero() {
                continue;
            }
            let factor = &w[pc] / Rational::from_integer(row[pc].clone());
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    w[c] -= &factor * Rational::from_integer(x.clone());
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Null space of the span viewed as the rows of a matrix.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.ech
            .kernel_int()
            .into_iter()
            .map(|v| v.into_iter().map(Rational::from_integer).collect())
            .collect()
    }
}
