//! Chart variables `u_ij` (i ≤ j) on the Lagrangian Grassmannian.
//!
//! Variables are laid out row by row over the upper triangle:
//! `u11, u12, …, u1n, u22, …, unn`. Indices in the API are 0-based.

use std::sync::OnceLock;

use crate::algebra::matrix::polynomial_det;
use crate::algebra::{vars_from, Polynomial, RatMatrix, Rational, Vars};

pub const MAX_CHART_DIM: usize = 6;

pub fn num_vars(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of `u_ij` in the chart variable list (order of `i`, `j` irrelevant).
pub fn var_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    debug_assert!(j < n);
    i * n - i * (i + 1) / 2 + j
}

/// Inverse of [`var_index`].
pub fn var_pair(n: usize, k: usize) -> (usize, usize) {
    let mut idx = 0;
    for i in 0..n {
        for j in i..n {
            if idx == k {
                return (i, j);
            }
            idx += 1;
        }
    }
    panic!("chart variable index {k} out of range for n = {n}")
}

pub fn var_name(i: usize, j: usize) -> String {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    format!("u{}{}", i + 1, j + 1)
}

pub fn hessian_vars(n: usize) -> Vars {
    static CACHE: OnceLock<Vec<Vars>> = OnceLock::new();
    assert!(
        (1..=MAX_CHART_DIM).contains(&n),
        "chart dimension {n} out of range"
    );
    CACHE.get_or_init(|| {
        (0..=MAX_CHART_DIM)
            .map(|n| {
                let mut names = Vec::new();
                for i in 0..n {
                    for j in i..n {
                        names.push(var_name(i, j));
                    }
                }
                vars_from(names)
            })
            .collect()
    })[n]
        .clone()
}

pub fn u(n: usize, i: usize, j: usize) -> Polynomial {
    Polynomial::var(&hessian_vars(n), var_index(n, i, j))
}

/// The symbolic symmetric matrix `U = (u_ij)`.
pub fn symbolic_hessian(n: usize) -> Vec<Vec<Polynomial>> {
    (0..n)
        .map(|i| (0..n).map(|j| u(n, i, j)).collect())
        .collect()
}

/// Minor of `U` with the given row and column index sets.
pub fn minor(n: usize, rows: &[usize], cols: &[usize]) -> Polynomial {
    assert_eq!(rows.len(), cols.len());
    if rows.is_empty() {
        return Polynomial::one(&hessian_vars(n));
    }
    let m: Vec<Vec<Polynomial>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| u(n, i, j)).collect())
        .collect();
    polynomial_det(&m)
}

/// Values of the chart variables for a symmetric matrix.
pub fn point_values(m: &RatMatrix) -> Vec<Rational> {
    let n = m.rows();
    (0..num_vars(n))
        .map(|k| {
            let (i, j) = var_pair(n, k);
            m[(i, j)].clone()
        })
        .collect()
}

/// Symmetric matrix from chart variable values.
pub fn matrix_from_values(n: usize, values: &[Rational]) -> RatMatrix {
    assert_eq!(values.len(), num_vars(n));
    let mut m = RatMatrix::zeros(n, n);
    for (k, v) in values.iter().enumerate() {
        let (i, j) = var_pair(n, k);
        m[(i, j)] = v.clone();
        m[(j, i)] = v.clone();
    }
    m
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
