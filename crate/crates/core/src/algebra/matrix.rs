//! Dense exact matrices and fraction-free elimination.
//!
//! Rank, kernels and linear solves go through Bareiss elimination on
//! integer-scaled rows; the echelon form is then normalised to reduced row
//! echelon form over ℚ, which makes kernel bases canonical. The same Bareiss
//! routine runs over any [`Domain`] with exact division, which is how ranks of
//! polynomial matrices are decided symbolically.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::{common_denominator, Rational};

/// An integral domain with exact division, enough for Bareiss elimination.
pub trait Domain: Clone {
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    /// Exact quotient; callers only divide when divisibility is guaranteed.
    fn div_elem(&self, other: &Self) -> Self;
}

impl Domain for BigInt {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn div_elem(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_zero(), "inexact Bareiss division");
        q
    }
}

impl Domain for Polynomial {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn div_elem(&self, other: &Self) -> Self {
        self.div_exact(other).expect("inexact Bareiss division")
    }
}

/// Forward Bareiss elimination in place. Only the first `pivot_cols` columns
/// are eligible as pivots. Returns the pivot column of each pivot row; rows
/// `0..pivots.len()` form the echelon part.
pub fn bareiss<T: Domain>(rows: &mut [Vec<T>], pivot_cols: usize) -> Vec<usize> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut prev: Option<T> = None;
    let mut r = 0;
    for c in 0..pivot_cols {
        if r >= m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero_elem()) else {
            continue;
        };
        rows.swap(r, p);
        let ncols = rows[r].len();
        for i in r + 1..m {
            let factor = rows[i][c].clone();
            for j in 0..ncols {
                let t = rows[r][c]
                    .mul_elem(&rows[i][j])
                    .sub_elem(&factor.mul_elem(&rows[r][j]));
                rows[i][j] = match &prev {
                    Some(d) => t.div_elem(d),
                    None => t,
                };
            }
        }
        prev = Some(rows[r][c].clone());
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
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
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn commutator(&self, other: &RatMatrix) -> RatMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    fn integer_rows(&self, extra: Option<&[Rational]>) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut row: Vec<Rational> = self.row(i).to_vec();
                if let Some(b) = extra {
                    row.push(b[i].clone());
                }
                let den = common_denominator(&row);
                row.iter()
                    .map(|v| (v * Rational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    /// Reduced row echelon form of the first `pivot_cols` columns (trailing
    /// columns are carried along). Returns the nonzero rows and pivot columns.
    fn rref_rows(ints: Vec<Vec<BigInt>>, pivot_cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut ints = ints;
        let pivots = bareiss(&mut ints, pivot_cols);
        let mut rows: Vec<Vec<Rational>> = ints
            .into_iter()
            .take(pivots.len())
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect();
        for (k, &c) in pivots.iter().enumerate() {
            let inv = rows[k][c].recip();
            for v in rows[k].iter_mut() {
                *v *= &inv;
            }
        }
        for k in (0..pivots.len()).rev() {
            let c = pivots[k];
            for i in 0..k {
                let f = rows[i][c].clone();
                if f.is_zero() {
                    continue;
                }
                let (head, tail) = rows.split_at_mut(k);
                for (a, b) in head[i].iter_mut().zip(&tail[0]) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        (rows, pivots)
    }

    /// Reduced row echelon form: nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        Self::rref_rows(self.integer_rows(None), self.cols)
    }

    pub fn rank(&self) -> usize {
        let mut ints = self.integer_rows(None);
        bareiss(&mut ints, self.cols).len()
    }

    /// Rank and a canonical kernel basis (one vector per free column, with a 1
    /// in that column and zeros in the other free columns).
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Rational>>) {
        let (rows, pivots) = self.rref();
        let kernel = kernel_from_rref(&rows, &pivots, self.cols);
        (pivots.len(), kernel)
    }

    /// Solve `self · x = b`. `None` when the system is inconsistent; otherwise
    /// a particular solution (free variables set to zero) and the kernel.
    pub fn solve(&self, b: &[Rational]) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let (rows, pivots) = Self::rref_rows(self.integer_rows(Some(b)), self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = rows[k][self.cols].clone();
        }
        let kernel = kernel_from_rref(&rows, &pivots, self.cols);
        Some((x, kernel))
    }
}

fn kernel_from_rref(rows: &[Vec<Rational>], pivots: &[usize], cols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (k, &c) in pivots.iter().enumerate() {
                v[c] = -rows[k][f].clone();
            }
            v
        })
        .collect()
}

/// Free-function form of [`RatMatrix::rank_kernel`].
pub fn rank_kernel(m: &RatMatrix) -> (usize, Vec<Vec<Rational>>) {
    m.rank_kernel()
}

/// Free-function form of [`RatMatrix::solve`].
pub fn solve_linear(m: &RatMatrix, b: &[Rational]) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    m.solve(b)
}

/// Rank of a polynomial matrix over the fraction field, via Bareiss.
pub fn polynomial_rank(rows: &[Vec<Polynomial>]) -> usize {
    let mut work = rows.to_vec();
    let cols = work.first().map_or(0, Vec::len);
    bareiss(&mut work, cols).len()
}

/// Determinant of a square polynomial matrix via Bareiss.
pub fn polynomial_det(rows: &[Vec<Polynomial>]) -> Polynomial {
    let n = rows.len();
    assert!(
        rows.iter().all(|r| r.len() == n),
        "determinant needs a square matrix"
    );
    let vars = rows[0][0].vars().clone();
    let mut work = rows.to_vec();
    let mut sign = false;
    let mut prev: Option<Polynomial> = None;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !work[i][c].is_zero()) else {
            return Polynomial::zero(&vars);
        };
        if p != c {
            work.swap(p, c);
            sign = !sign;
        }
        for i in c + 1..n {
            let factor = work[i][c].clone();
            for j in c..n {
                let t = &(&work[c][c] * &work[i][j]) - &(&factor * &work[c][j]);
                work[i][j] = match &prev {
                    Some(d) => t.div_exact(d).expect("inexact Bareiss division"),
                    None => t,
                };
            }
        }
        prev = Some(work[c][c].clone());
    }
    let det = work[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Determinant of a square rational matrix.
pub fn rational_det(m: &RatMatrix) -> Rational {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let mut a = m.to_rows();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for i in c + 1..n {
            let f = &a[i][c] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Inverse of a square rational matrix, if it is invertible.
pub fn rational_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        let (x, ker) = m.solve(&e)?;
        if !ker.is_empty() {
            return None;
        }
        cols.push(x);
    }
    Some(RatMatrix::from_columns(n, &cols))
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
