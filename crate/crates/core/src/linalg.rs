//! Exact dense linear algebra over the rationals.
//!
//! Rank and determinant use fraction-free Bareiss elimination on an integer
//! copy of the matrix; solves and null spaces use rational Gauss-Jordan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Self { rows: n, cols, data }
    }

    pub fn from_cols(cols: Vec<Vec<Q>>, rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, value) in col.into_iter().enumerate() {
                m.set(i, j, value);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Q) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows > 0 && other.rows > 0 && self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column mismatch".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols, data })
    }

    /// Integer rows obtained by clearing each row's denominators, plus the scale
    /// factor applied to every row.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
            scales.push(lcm);
        }
        (rows, scales)
    }

    /// Exact rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        bareiss_echelon(&mut a, self.cols).0
    }

    /// Exact determinant via fraction-free elimination.
    pub fn determinant(&self) -> Result<Q> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(Q::one());
        }
        let (mut a, scales) = self.integer_rows();
        let (rank, sign, last) = bareiss_echelon(&mut a, self.cols);
        if rank < self.rows {
            return Ok(Q::zero());
        }
        let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        Ok(Q::new(last * sign, denom))
    }

    /// Rank over the prime field F_p, or `None` when p divides a denominator.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let big_p = BigInt::from(p);
        let mut a = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for x in self.row(i) {
                let den = x.denom().mod_floor(&big_p).to_u64()?;
                if den == 0 {
                    return None;
                }
                let num = x.numer().mod_floor(&big_p).to_u64()?;
                row.push(mul_mod(num, pow_mod(den, p - 2, p), p));
            }
            a.push(row);
        }
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = pow_mod(a[rank][c], p - 2, p);
            for i in rank + 1..self.rows {
                if a[i][c] == 0 {
                    continue;
                }
                let factor = mul_mod(a[i][c], inv, p);
                for j in c..self.cols {
                    let sub = mul_mod(factor, a[rank][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
            rank += 1;
        }
        Some(rank)
    }

    /// Reduced row echelon form and pivot columns (rational Gauss-Jordan).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = gauss_jordan(&mut rows, self.cols);
        let reduced = if rows.is_empty() { Matrix::zeros(0, self.cols) } else { Matrix::from_rows(rows) };
        (reduced, pivots)
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * X = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != self.cols || rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve with {}x{} system and {} right-hand rows",
                self.rows, self.cols, rhs.rows
            )));
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend(rhs.row(i).iter().cloned());
                row
            })
            .collect();
        let pivots = gauss_jordan_limited(&mut rows, n);
        if pivots.len() < n {
            return Err(Error::Singular(format!("rank {} < {}", pivots.len(), n)));
        }
        let mut out = Matrix::zeros(n, rhs.cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (j, value) in row.into_iter().skip(n).enumerate() {
                out.set(r, j, value);
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.solve(&Matrix::identity(self.rows))
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Fraction-free echelon elimination in place. Returns (rank, sign of the
/// row permutation, last pivot), the last pivot being the determinant of the
/// integer matrix when it is square and of full rank.
fn bareiss_echelon(a: &mut [Vec<BigInt>], cols: usize) -> (usize, i32, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits());
        let Some(pivot) = pivot else { continue };
        if pivot != rank {
            a.swap(pivot, rank);
            sign = -sign;
        }
        let (top, bottom) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pval = prow[c].clone();
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut value = &row[j] * &pval;
                if !factor.is_zero() && !prow[j].is_zero() {
                    value -= &factor * &prow[j];
                }
                if !value.is_zero() {
                    value /= &prev;
                }
                row[j] = value;
            }
        }
        prev = pval;
        rank += 1;
    }
    (rank, sign, prev)
}

fn size_key(x: &Q) -> u64 {
    x.numer().bits() + x.denom().bits()
}

fn gauss_jordan(rows: &mut Vec<Vec<Q>>, cols: usize) -> Vec<usize> {
    gauss_jordan_limited(rows, cols)
}

/// Gauss-Jordan restricted to pivot columns `< limit`; remaining columns ride
/// along as right-hand sides. Rows are left in echelon order, zero rows last.
fn gauss_jordan_limited(rows: &mut [Vec<Q>], limit: usize) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == n {
            break;
        }
        let Some(p) = (r..n).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| size_key(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut().skip(c) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        let support: Vec<usize> = (c..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                row[j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Least common multiple of all denominators, useful for integer reports.
pub fn common_denominator(values: &[Q]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn abs_bits(x: &Q) -> u64 {
    x.numer().abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(a.determinant().unwrap(), q(6));
        let b = Matrix::from_rows(vec![vec![frac(1, 2), frac(1, 3)], vec![frac(1, 4), frac(1, 5)]]);
        assert_eq!(b.determinant().unwrap(), frac(1, 10) - frac(1, 12));
    }

    #[test]
    fn rank_detects_dependency() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.determinant().unwrap(), q(0));
        assert_eq!(a.rank_mod_p(1_000_000_007), Some(2));
    }

    #[test]
    fn solve_and_nullspace() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        let b = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let null = b.nullspace();
        assert_eq!(null.len(), 2);
        for v in null {
            assert!(b.mul_vec(&v).iter().all(Zero::is_zero));
        }
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_err());
    }
}
