//! Travelling-wave reductions `u = w(x¹ + αx⁴, x² + βx⁴, x³ + γx⁴) + Q(x, x)`.

use rand::Rng;
use serde::Serialize;

use crate::algebra::rational::{int, random_int};
use crate::algebra::{Polynomial, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::grassmann::hessian::{hessian_vars, num_vars, u, var_pair};
use crate::grassmann::MAEquation;

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionSample {
    /// `(α, β, γ)`.
    pub k: [Rational; 3],
    /// Symmetric 4×4.
    pub q: RatMatrix,
    /// Coordinates are relabelled `x^i ↦ x^{perm[i]}` before reducing.
    pub perm: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub k: Vec<String>,
    pub q: Vec<Vec<String>>,
    pub perm: Vec<usize>,
}

impl ReductionSample {
    pub fn new(k: [Rational; 3], q: RatMatrix) -> Self {
        ReductionSample {
            k,
            q,
            perm: [0, 1, 2, 3],
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, permute: bool) -> Self {
        let k = [random_int(rng, 5), random_int(rng, 5), random_int(rng, 5)];
        let mut q = RatMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in i..4 {
                let v = random_int(rng, 3);
                q[(i, j)] = v.clone();
                q[(j, i)] = v;
            }
        }
        let mut perm = [0, 1, 2, 3];
        if permute {
            use rand::seq::SliceRandom;
            perm.shuffle(rng);
        }
        ReductionSample { k, q, perm }
    }

    pub fn record(&self) -> SampleRecord {
        SampleRecord {
            k: self.k.iter().map(Rational::to_string).collect(),
            q: self
                .q
                .to_rows()
                .iter()
                .map(|r| r.iter().map(Rational::to_string).collect())
                .collect(),
            perm: self.perm.iter().map(|p| p + 1).collect(),
        }
    }
}

/// Relabels the independent variables: `u_ij ↦ u_{σ(i)σ(j)}`.
pub fn permute_coordinates(eq: &MAEquation, perm: &[usize]) -> Result<MAEquation> {
    let n = eq.n();
    let images: Vec<Polynomial> = (0..num_vars(n))
        .map(|k| {
            let (i, j) = var_pair(n, k);
            u(n, perm[i], perm[j])
        })
        .collect();
    MAEquation::new(n, &eq.poly().substitute(&images, &hessian_vars(n)))
}

/// The three-dimensional equation satisfied by `w`.
pub fn travelling_wave_reduce(eq: &MAEquation, s: &ReductionSample) -> Result<MAEquation> {
    if eq.n() != 4 {
        return Err(Error::Precondition(
            "travelling-wave reduction needs n = 4".into(),
        ));
    }
    if s.q.rows() != 4 || s.q.cols() != 4 || !s.q.is_symmetric() {
        return Err(Error::Shape("Q must be a symmetric 4x4 matrix".into()));
    }
    let eq = if s.perm == [0, 1, 2, 3] {
        eq.clone()
    } else {
        permute_coordinates(eq, &s.perm)?
    };
    let w3 = hessian_vars(3);
    let w = |a: usize, b: usize| u(3, a, b);
    let konst = |r: &Rational| Polynomial::constant(&w3, r.clone());
    let two = int(2);
    let images: Vec<Polynomial> = (0..num_vars(4))
        .map(|idx| {
            let (a, b) = var_pair(4, idx);
            let shift = konst(&(&two * &s.q[(a, b)]));
            let body = match (a < 3, b < 3) {
                (true, true) => w(a, b),
                (true, false) => (0..3).fold(Polynomial::zero(&w3), |acc, c| {
                    &acc + &w(a, c).scale(&s.k[c])
                }),
                _ => {
                    let mut acc = Polynomial::zero(&w3);
                    for c in 0..3 {
                        for d in 0..3 {
                            acc += &w(c, d).scale(&(&s.k[c] * &s.k[d]));
                        }
                    }
                    acc
                }
            };
            &body + &shift
        })
        .collect();
    let reduced = eq.poly().substitute(&images, &w3);
    if reduced.is_zero() {
        return Err(Error::ZeroReduction);
    }
    MAEquation::new(3, &reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;
    use crate::expr::parse_polynomial;

    #[test]
    fn first_heavenly_closed_form() {
        let eq = builtin("first-heavenly").unwrap();
        let s = ReductionSample::new([int(2), int(-3), int(7)], RatMatrix::zeros(4, 4));
        let out = travelling_wave_reduce(&eq, &s).unwrap();
        let expected =
            parse_polynomial(3, "2*(u12*u13 - u11*u23) - 3*(u13*u22 - u12*u23) - 1").unwrap();
        assert_eq!(out.poly(), &expected);
    }

    #[test]
    fn zero_reduction_reported() {
        let eq = MAEquation::new(4, &u(4, 3, 3)).unwrap();
        let s = ReductionSample::new([int(0), int(0), int(0)], RatMatrix::zeros(4, 4));
        assert_eq!(
            travelling_wave_reduce(&eq, &s).unwrap_err(),
            Error::ZeroReduction
        );
    }

    #[test]
    fn permutation_relabels() {
        let eq = MAEquation::new(4, &u(4, 0, 1)).unwrap();
        let p = permute_coordinates(&eq, &[2, 3, 0, 1]).unwrap();
        assert_eq!(p.poly(), &u(4, 2, 3));
    }
}
