//! Exact integer and rational linear algebra.
//!
//! Everything is done over `BigInt` / `BigRational`; there is no floating point
//! anywhere in the crate.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!("row {bad} has {} entries, expected {c}", rows[bad].len())));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors (all of length `dim`).
    pub fn from_columns(dim: usize, columns: &[Vec<T>]) -> Result<Self> {
        if let Some(bad) = columns.iter().position(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "column {bad} has length {}, expected {dim}",
                columns[bad].len()
            )));
        }
        Ok(Self::from_fn(dim, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, x: &[T], y: &[T]) -> Result<T> {
        Ok(dot(x, &self.mul_vec(y)?))
    }

    /// `Bᵀ M B`: the Gram matrix of the columns of `b` under the form `self`.
    pub fn congruent(&self, b: &Self) -> Result<Self> {
        b.transpose().mul(&self.mul(b)?)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| T::zero() - x.clone())
    }

    /// Block-diagonal matrix built from square or rectangular blocks.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

pub fn dot<T: Clone + Num>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(to_rat).collect()
}

/// Converts a rational vector to integers if every entry is integral.
pub fn integral_vec(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

pub fn vec_gcd(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

/// `x mod m` in `[0, m)` for a positive rational modulus.
pub fn rat_mod(x: &BigRational, m: &BigRational) -> BigRational {
    let q = (x / m).floor();
    x - q * m
}

/// Floor of the square root of a nonnegative rational.
pub fn rat_isqrt_floor(x: &BigRational) -> BigInt {
    let f = x.floor().to_integer();
    if f.is_negative() {
        BigInt::zero()
    } else {
        f.sqrt()
    }
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| int_vec(r)).collect()).expect("rows of equal length")
}

pub fn diagonal(entries: &[BigInt]) -> IntMatrix {
    IntMatrix::from_fn(entries.len(), entries.len(), |i, j| if i == j { entries[i].clone() } else { BigInt::zero() })
}

impl IntMatrix {
    pub fn to_rational(&self) -> RatMatrix {
        self.map(to_rat)
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = !sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                let aik = a[(i, k)].clone();
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &pivot - &aik * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = pivot;
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if sign { -d } else { d })
    }

    /// Smith normal form with unimodular transforms.
    pub fn smith_normal_form(&self) -> Smith {
        smith(self)
    }

    /// A basis of the integer kernel `{x ∈ Zⁿ : M x = 0}`. The kernel is
    /// saturated by construction and the basis is returned in Hermite form.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let n = self.cols;
        let m = self.rows;
        let mut aug: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut r = self.col(j);
                r.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
                r
            })
            .collect();
        let rank = echelon(&mut aug, m, false);
        let kernel: Vec<Vec<BigInt>> = aug[rank..].iter().map(|r| r[m..].to_vec()).collect();
        hermite_rows(kernel)
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        echelon(&mut rows, self.cols, false)
    }

    /// Inertia `(positive, zero, negative)` of a symmetric matrix.
    pub fn signature(&self) -> Result<(usize, usize, usize)> {
        let d = congruence_diagonal(self)?;
        let pos = d.iter().filter(|x| x.is_positive()).count();
        let neg = d.iter().filter(|x| x.is_negative()).count();
        Ok((pos, d.len() - pos - neg, neg))
    }

    /// Inverse over Q; `None` when singular.
    pub fn inverse_rational(&self) -> Option<RatMatrix> {
        self.to_rational().inverse()
    }
}

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, the nonzero
/// diagonal entries positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

fn smith(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_smith(a, u, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = a[(i, t)].div_floor(&p);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = a[(t, j)].div_floor(&p);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    row_axpy(&mut a, t, i, &-BigInt::one());
                    row_axpy(&mut u, t, i, &-BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    finish_smith(a, u, v)
}

fn finish_smith(mut a: IntMatrix, mut u: IntMatrix, v: IntMatrix) -> Smith {
    for t in 0..a.rows.min(a.cols) {
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    Smith { d: a, u, v }
}

/// row[i] -= q * row[k]
fn row_axpy(a: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for j in 0..a.cols {
        if !a[(k, j)].is_zero() {
            let t = q * &a[(k, j)];
            a[(i, j)] -= t;
        }
    }
}

/// col[j] -= q * col[k]
fn col_axpy(a: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for i in 0..a.rows {
        if !a[(i, k)].is_zero() {
            let t = q * &a[(i, k)];
            a[(i, j)] -= t;
        }
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for j in 0..a.cols {
        let x = -&a[(i, j)];
        a[(i, j)] = x;
    }
}

/// Integer row echelon form on the first `ncols` columns. Returns the rank;
/// rows `0..rank` carry the pivots. With `reduce`, pivots are made positive
/// and entries above each pivot are reduced into `[0, pivot)`.
pub fn echelon(rows: &mut [Vec<BigInt>], ncols: usize, reduce: bool) -> usize {
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in r + 1..rows.len() {
                if !rows[i][c].is_zero() {
                    let q = rows[i][c].div_floor(&rows[r][c]);
                    sub_row(rows, i, r, &q);
                    done &= rows[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if !rows[r][c].is_zero() {
            pivots.push(c);
            r += 1;
        }
    }
    if reduce {
        for (k, &c) in pivots.iter().enumerate() {
            if rows[k][c].is_negative() {
                for x in rows[k].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..k {
                let q = rows[i][c].div_floor(&rows[k][c]);
                if !q.is_zero() {
                    sub_row(rows, i, k, &q);
                }
            }
        }
    }
    r
}

fn sub_row(rows: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    let (src, dst) = if i < k {
        let (lo, hi) = rows.split_at_mut(k);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = rows.split_at_mut(i);
        (&lo[k], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// Hermite normal form of the row lattice; zero rows are dropped.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let r = echelon(&mut rows, ncols, true);
    rows.truncate(r);
    rows
}

/// Diagonal of a rational congruence diagonalization `Pᵀ M P = D`.
pub fn congruence_diagonal(m: &IntMatrix) -> Result<Vec<BigRational>> {
    if let Some((i, j)) = m.first_asymmetry() {
        return if m.is_square() {
            Err(Error::NotSymmetric(i, j))
        } else {
            Err(Error::NotSquare { rows: m.rows, cols: m.cols })
        };
    }
    let mut a = m.to_rational();
    let mut out = Vec::with_capacity(m.rows);
    while a.rows > 0 {
        let n = a.rows;
        let pivot = (0..n).find(|&i| !a[(i, i)].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let off = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[(i, j)].is_zero());
                match off {
                    Some((i, j)) => {
                        // e_i += e_j turns the zero diagonal entry into 2·a_ij.
                        for k in 0..n {
                            let x = a[(i, k)].clone() + a[(j, k)].clone();
                            a[(i, k)] = x;
                        }
                        for k in 0..n {
                            let x = a[(k, i)].clone() + a[(k, j)].clone();
                            a[(k, i)] = x;
                        }
                        i
                    }
                    None => {
                        out.extend((0..n).map(|_| BigRational::zero()));
                        break;
                    }
                }
            }
        };
        let piv = a[(p, p)].clone();
        let rest: Vec<usize> = (0..n).filter(|&k| k != p).collect();
        let next = RatMatrix::from_fn(n - 1, n - 1, |i, j| {
            let (r, c) = (rest[i], rest[j]);
            a[(r, c)].clone() - a[(r, p)].clone() * a[(p, c)].clone() / piv.clone()
        });
        out.push(piv);
        a = next;
    }
    Ok(out)
}

impl RatMatrix {
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| self.map(|x| x.to_integer()))
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in 0..self.cols {
                let x = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = x;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in 0..self.cols {
                        let x = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                        self[(i, j)] = x;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// One solution of `A x = b` (free variables set to zero), or `None`.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        if b.len() != self.rows {
            return None;
        }
        let mut aug = RatMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = RatMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(RatMatrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// Small helper for converting exact values in reports and tests.
pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_examples() {
        assert_eq!(int_matrix(&[&[2, 1], &[1, 2]]).det().unwrap(), int(3));
        assert_eq!(int_matrix(&[&[0, 1], &[1, 0]]).det().unwrap(), int(-1));
        assert_eq!(IntMatrix::zeros(0, 0).det().unwrap(), int(1));
        assert_eq!(int_matrix(&[&[0, 0], &[0, 5]]).det().unwrap(), int(0));
        assert!(IntMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn smith_examples() {
        let s = int_matrix(&[&[2, 1], &[1, 2]]).smith_normal_form();
        assert_eq!(s.invariant_factors(), int_vec(&[1, 3]));
        let s = int_matrix(&[&[-2]]).smith_normal_form();
        assert_eq!(s.invariant_factors(), int_vec(&[2]));
        let m = int_matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = m.smith_normal_form();
        assert_eq!(s.invariant_factors(), int_vec(&[2, 6, 12]));
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
    }

    #[test]
    fn kernel_is_saturated() {
        let m = int_matrix(&[&[2, 4]]);
        assert_eq!(m.kernel_basis(), vec![int_vec(&[2, -1])]);
        let m = int_matrix(&[&[1, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn signature_handles_zero_diagonal() {
        assert_eq!(int_matrix(&[&[0, 1], &[1, 0]]).signature().unwrap(), (1, 0, 1));
        assert_eq!(int_matrix(&[&[0, 0], &[0, 0]]).signature().unwrap(), (0, 2, 0));
        assert_eq!(int_matrix(&[&[-2, 1], &[1, -2]]).signature().unwrap(), (0, 0, 2));
        assert!(int_matrix(&[&[0, 1], &[2, 0]]).signature().is_err());
    }

    #[test]
    fn solve_and_inverse() {
        let a = int_matrix(&[&[2, 1], &[1, 2]]).to_rational();
        let x = a.solve(&[rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(x, vec![rat(2, 3), rat(-1, 3)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(2));
        let sing = int_matrix(&[&[1, 2], &[2, 4]]).to_rational();
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[rat(1, 1), rat(0, 1)]).is_none());
    }

    #[test]
    fn hermite_drops_dependent_rows() {
        let h = hermite_rows(vec![int_vec(&[2, 0]), int_vec(&[0, 2]), int_vec(&[1, 1])]);
        assert_eq!(h, vec![int_vec(&[1, 1]), int_vec(&[0, 2])]);
    }
}
