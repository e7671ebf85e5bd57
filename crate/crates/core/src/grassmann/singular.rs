//! Singular loci of purely quadratic sections and the incidence test of
//! whether they meet every sub-Lagrangian family.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::equation::MAEquation;
use super::hessian::{matrix_from_values, num_vars};
use crate::algebra::matrix::polynomial_rank;
use crate::algebra::rational::{int, random_int};
use crate::algebra::{rank_kernel, vars_from, Polynomial, RatMatrix, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_RANK_SAMPLES: usize = 16;
pub const SAMPLE_BOUND: i64 = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct SingularLocus {
    pub dim: usize,
    /// Directions spanning the locus, as symmetric matrices.
    pub kernel: Vec<RatMatrix>,
}

/// For purely quadratic `F`, the common zeros of `F` and `∇F` form the
/// kernel of its Hessian in the chart variables.
pub fn singular_locus_quadratic(eq: &MAEquation) -> Result<SingularLocus> {
    let f = eq.poly();
    if !f.is_homogeneous(2) {
        return Err(Error::Unsupported(
            "singular locus needs a purely quadratic equation".into(),
        ));
    }
    let m = num_vars(eq.n());
    let hessian = RatMatrix::from_rows(
        (0..m)
            .map(|a| {
                let da = f.diff(a);
                (0..m).map(|b| da.diff(b).constant_term()).collect()
            })
            .collect(),
    );
    let (_, kernel) = rank_kernel(&hessian);
    Ok(SingularLocus {
        dim: kernel.len(),
        kernel: kernel
            .iter()
            .map(|v| matrix_from_values(eq.n(), v))
            .collect(),
    })
}

/// Jacobian of `Φ(t, x) = (x, U(t)x)` at a point, `U(t) = Σ t_k B_k`.
fn jacobian_at(kernel: &[RatMatrix], t: &[Rational], x: &[Rational]) -> RatMatrix {
    let n = 4;
    let k = kernel.len();
    let mut ut = RatMatrix::zeros(n, n);
    for (tk, b) in t.iter().zip(kernel) {
        ut = ut.add(&b.scale(tk));
    }
    let mut jac = RatMatrix::zeros(2 * n, n + k);
    for i in 0..n {
        jac[(i, i)] = int(1);
        for j in 0..n {
            jac[(n + i, j)] = ut[(i, j)].clone();
        }
    }
    for (c, b) in kernel.iter().enumerate() {
        let bx = b.mul_vec(x);
        for i in 0..n {
            jac[(n + i, n + c)] = bx[i].clone();
        }
    }
    jac
}

/// Whether the family `{U(t)}` spanned by the kernel directions meets every
/// sub-Lagrangian: the map `Φ` must have generic rank 8. Random exact
/// evaluations certify rank 8; if none reaches it, the symbolic Jacobian
/// decides.
pub fn meets_all_sublagrangians(kernel: &[RatMatrix], samples: usize, seed: u64) -> Result<bool> {
    if kernel.iter().any(|b| b.rows() != 4 || b.cols() != 4) {
        return Err(Error::Precondition(
            "meets_all_sublagrangians needs n = 4".into(),
        ));
    }
    if kernel.len() + 4 < 8 {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let t: Vec<Rational> = kernel
            .iter()
            .map(|_| random_int(&mut rng, SAMPLE_BOUND))
            .collect();
        let x: Vec<Rational> = (0..4).map(|_| random_int(&mut rng, SAMPLE_BOUND)).collect();
        if jacobian_at(kernel, &t, &x).rank() == 8 {
            return Ok(true);
        }
    }
    Ok(symbolic_rank(kernel) == 8)
}

fn symbolic_rank(kernel: &[RatMatrix]) -> usize {
    let k = kernel.len();
    let names: Vec<String> = (1..=k)
        .map(|i| format!("t{i}"))
        .chain((1..=4).map(|i| format!("x{i}")))
        .collect();
    let vars = vars_from(names);
    let t: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(&vars, i)).collect();
    let x: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(&vars, k + i)).collect();
    let c = |r: &Rational| Polynomial::constant(&vars, r.clone());
    let mut rows = vec![vec![Polynomial::zero(&vars); 4 + k]; 8];
    for i in 0..4 {
        rows[i][i] = Polynomial::one(&vars);
        for j in 0..4 {
            let mut entry = Polynomial::zero(&vars);
            for (tk, b) in t.iter().zip(kernel) {
                entry += &(tk * &c(&b[(i, j)]));
            }
            rows[4 + i][j] = entry;
        }
    }
    for (col, b) in kernel.iter().enumerate() {
        for i in 0..4 {
            let mut entry = Polynomial::zero(&vars);
            for (j, xj) in x.iter().enumerate() {
                entry += &(xj * &c(&b[(i, j)]));
            }
            rows[4 + i][4 + col] = entry;
        }
    }
    polynomial_rank(&rows)
}
