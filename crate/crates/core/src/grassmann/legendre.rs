//! Partial Legendre transforms.
//!
//! `T_S` swaps `(x^i, u_i)` for `i ∈ S` and sends `u_j ↦ −u_j` for `j ∉ S`.
//! With `U = [[A, B], [Bᵀ, D]]` split along `S`, the new Hessian is
//!
//! ```text
//! Ũ_SS = A⁻¹,  Ũ_ST = −A⁻¹B,  Ũ_TT = BᵀA⁻¹B − D
//! ```
//!
//! `T_S` is an involution. An equation `F(Ũ) = 0` is cleared by `δ = det A`:
//! each minor of `Ũ` on rows `I`, columns `J` satisfies
//!
//! ```text
//! δ·M_IJ(Ũ) = ±M_I'J'(U),  I' = (I∖S) ∪ (S∖J),  J' = (J∖S) ∪ (S∖I)
//! ```
//!
//! so the map `F ↦ δ·F(Ũ)` is linear on the minor span. The signs are read off
//! a seeded random point and the resulting matrix is checked on extra points.
//! `S = ∅` is the identity chart.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::basis::{minor_basis, MinorBasis};
use super::equation::MAEquation;
use super::hessian::{matrix_from_values, minor, num_vars, point_values, subsets};
use crate::algebra::matrix::{rational_det, rational_inverse};
use crate::algebra::rational::random_int;
use crate::algebra::{RatMatrix, Rational};
use crate::error::{Error, Result};

const EXTRA_POINTS: usize = 6;
const SEED: u64 = 0x1e6e_11d5;

/// The chart change on a numeric point; `None` when the `S`-block is singular.
pub fn legendre_point(u: &RatMatrix, s: &[usize]) -> Option<RatMatrix> {
    let n = u.rows();
    if s.is_empty() {
        return Some(u.clone());
    }
    let t: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
    let block = |r: &[usize], c: &[usize]| {
        RatMatrix::from_rows(
            r.iter()
                .map(|&i| c.iter().map(|&j| u[(i, j)].clone()).collect())
                .collect(),
        )
    };
    let a_inv = rational_inverse(&block(s, s))?;
    let b = block(s, &t);
    let d = block(&t, &t);
    let a_inv_b = a_inv.mul(&b);
    let tt = b.transpose().mul(&a_inv_b).sub(&d);
    let mut out = RatMatrix::zeros(n, n);
    for (p, &i) in s.iter().enumerate() {
        for (q, &j) in s.iter().enumerate() {
            out[(i, j)] = a_inv[(p, q)].clone();
        }
        for (q, &j) in t.iter().enumerate() {
            out[(i, j)] = -a_inv_b[(p, q)].clone();
            out[(j, i)] = -a_inv_b[(p, q)].clone();
        }
    }
    for (p, &i) in t.iter().enumerate() {
        for (q, &j) in t.iter().enumerate() {
            out[(i, j)] = tt[(p, q)].clone();
        }
    }
    Some(out)
}

fn check_subset(n: usize, s: &[usize]) -> Result<Vec<usize>> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.iter().any(|&i| i >= n) {
        return Err(Error::Shape(format!(
            "Legendre index out of range for n = {n}"
        )));
    }
    Ok(s)
}

/// Matrix of `F ↦ δ·F(Ũ)` on minor-basis coordinates (column `k` is the image
/// of basis element `k`).
pub fn legendre_matrix(n: usize, s: &[usize]) -> Result<Arc<RatMatrix>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Vec<usize>), Arc<RatMatrix>>>> = OnceLock::new();
    let s = check_subset(n, s)?;
    let basis = minor_basis(n)?;
    let key = (n, s.clone());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let m = Arc::new(build_matrix(&basis, &s));
    cache.lock().unwrap().insert(key, m.clone());
    Ok(m)
}

fn random_point(
    n: usize,
    s: &[usize],
    rng: &mut ChaCha8Rng,
) -> (Vec<Rational>, Rational, Vec<Rational>) {
    loop {
        let vals: Vec<Rational> = (0..num_vars(n)).map(|_| random_int(rng, 9)).collect();
        let u = matrix_from_values(n, &vals);
        let Some(ut) = legendre_point(&u, s) else {
            continue;
        };
        let block = RatMatrix::from_rows(
            s.iter()
                .map(|&i| s.iter().map(|&j| u[(i, j)].clone()).collect())
                .collect(),
        );
        return (vals, rational_det(&block), point_values(&ut));
    }
}

fn exchange(i: &[usize], j: &[usize], s: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = i.iter().filter(|x| !s.contains(x)).copied().collect();
    out.extend(s.iter().filter(|x| !j.contains(x)));
    out.sort_unstable();
    out
}

fn build_matrix(basis: &MinorBasis, s: &[usize]) -> RatMatrix {
    let n = basis.n;
    let big_n = basis.len();
    if s.is_empty() {
        return RatMatrix::identity(big_n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (n as u64) << 8 ^ s.len() as u64);
    let mut pairs = Vec::new();
    for l in 0..=n {
        let sets = subsets(n, l);
        for (a, r) in sets.iter().enumerate() {
            for c in &sets[a..] {
                pairs.push((r.clone(), c.clone()));
            }
        }
    }
    let coords: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|(r, c)| {
            basis
                .decompose(&minor(n, r, c))
                .expect("minor lies in its span")
        })
        .collect();
    let (_, pivots) = RatMatrix::from_columns(big_n, &coords).rref();
    let mut images = Vec::with_capacity(big_n);
    for &k in &pivots {
        let (r, c) = &pairs[k];
        let (r2, c2) = (exchange(r, c, s), exchange(c, r, s));
        let source = minor(n, r, c);
        let target = minor(n, &r2, &c2);
        let sign = loop {
            let (vals, delta, ut_vals) = random_point(n, s, &mut rng);
            let t = target.eval(&vals);
            if !t.is_zero() {
                break &delta * source.eval(&ut_vals) / t;
            }
        };
        let image = basis.decompose(&target).expect("minor lies in its span");
        images.push(image.into_iter().map(|x| &x * &sign).collect::<Vec<_>>());
    }
    let selected: Vec<Vec<Rational>> = pivots.iter().map(|&k| coords[k].clone()).collect();
    let inv = rational_inverse(&RatMatrix::from_columns(big_n, &selected))
        .expect("pivot minors are independent");
    let m = RatMatrix::from_columns(big_n, &images).mul(&inv);
    for _ in 0..EXTRA_POINTS {
        let (vals, delta, ut_vals) = random_point(n, s, &mut rng);
        let before: Vec<Rational> = basis.polys.iter().map(|b| b.eval(&vals)).collect();
        for (k, b) in basis.polys.iter().enumerate() {
            let image: Rational = m.column(k).iter().zip(&before).map(|(x, y)| x * y).sum();
            assert!(
                image == &delta * b.eval(&ut_vals),
                "Legendre image left the minor span (n = {n}, S = {s:?})"
            );
        }
    }
    m
}

/// `T_S` applied to an equation, normalized to leading coefficient 1.
/// `s` holds 0-based indices.
pub fn partial_legendre(eq: &MAEquation, s: &[usize]) -> Result<MAEquation> {
    let m = legendre_matrix(eq.n(), s)?;
    let coords = m.mul_vec(eq.coords());
    if coords.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateChart);
    }
    Ok(MAEquation::from_coords(eq.n(), coords)?.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::Polynomial;
    use crate::grassmann::hessian::{hessian_vars, minor, u};

    fn eq(n: usize, p: Polynomial) -> MAEquation {
        MAEquation::new(n, &p).unwrap()
    }

    #[test]
    fn e0_goes_to_u22() {
        let e0 = minor(4, &[0, 1], &[0, 1]);
        let out = partial_legendre(&eq(4, e0), &[0]).unwrap();
        assert_eq!(out.poly(), &u(4, 1, 1));
    }

    #[test]
    fn kahler_potential_linearises() {
        let vars = hessian_vars(3);
        let eps = int(5);
        let one = Polynomial::one(&vars);
        let f = &(&u(3, 2, 2) * &(&(&one + &u(3, 0, 0)) + &u(3, 1, 1)))
            - &(&(&u(3, 0, 2) * &u(3, 0, 2)) + &(&u(3, 1, 2) * &u(3, 1, 2)));
        let f = &f - &Polynomial::constant(&vars, eps.clone());
        let out = partial_legendre(&eq(3, f), &[2]).unwrap();
        let expected = &(&(&one - &u(3, 0, 0)) - &u(3, 1, 1)) - &u(3, 2, 2).scale(&eps);
        assert!(out.proportional_to(&eq(3, expected)));
    }

    #[test]
    fn full_transform_of_hess_minus_one() {
        let det = minor(3, &[0, 1, 2], &[0, 1, 2]);
        let f = eq(3, &det - &Polynomial::one(&hessian_vars(3)));
        let out = partial_legendre(&f, &[0, 1, 2]).unwrap();
        assert!(out.proportional_to(&f));
    }

    #[test]
    fn point_map_is_involution() {
        let u0 = matrix_from_values(3, &[int(2), int(1), int(0), int(3), int(-1), int(5)]);
        for s in [vec![0], vec![1, 2], vec![0, 1, 2]] {
            let once = legendre_point(&u0, &s).unwrap();
            assert_eq!(legendre_point(&once, &s).unwrap(), u0);
        }
    }
}
