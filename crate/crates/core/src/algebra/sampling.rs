//! Seeded rational points on hypersurfaces.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use super::rational::{int, random_int, rational_sqrt};
use super::{Polynomial, Rational};

/// A rational zero of `f`: all variables but one are drawn from
/// `[-bound, bound]`, and the remaining one is solved for when `f` restricted
/// to it is linear or a quadratic with a rational root.
pub fn random_zero<R: Rng + ?Sized>(
    f: &Polynomial,
    rng: &mut R,
    bound: i64,
    attempts: usize,
) -> Option<Vec<Rational>> {
    let m = f.nvars();
    let support = f.support_vars();
    for _ in 0..attempts {
        let mut point: Vec<Rational> = (0..m).map(|_| random_int(rng, bound)).collect();
        if f.eval(&point).is_zero() {
            return Some(point);
        }
        let mut order = support.clone();
        order.shuffle(rng);
        for &v in &order {
            let assign: Vec<Option<Rational>> = point
                .iter()
                .enumerate()
                .map(|(i, x)| (i != v).then(|| x.clone()))
                .collect();
            let coeffs: Vec<Rational> = f
                .eval_partial(&assign)
                .coeffs_in(v)
                .iter()
                .map(Polynomial::constant_term)
                .collect();
            if let Some(root) = rational_root(&coeffs) {
                point[v] = root;
                debug_assert!(f.eval(&point).is_zero());
                return Some(point);
            }
        }
    }
    None
}

/// A rational root of `Σ c_k t^k` for degree 1 or 2.
pub(crate) fn rational_root(c: &[Rational]) -> Option<Rational> {
    match c.len() {
        2 if !c[1].is_zero() => Some(-&c[0] / &c[1]),
        3 if !c[2].is_zero() => {
            let disc = &c[1] * &c[1] - int(4) * &c[2] * &c[0];
            let s = rational_sqrt(&disc)?;
            Some((-&c[1] + s) / (int(2) * &c[2]))
        }
        _ => None,
    }
}
