//! Canonical basis of the span of all minors of the symmetric Hessian.
//!
//! Minors are labelled by unordered pairs `{R, C}` of equal-size index sets
//! (`minor(R, C) = minor(C, R)` for symmetric `U`). Each degree is row-reduced
//! separately against its monomials sorted in descending monomial order, so
//! the basis is in reduced echelon form: every basis polynomial has leading
//! coefficient 1 and no other basis polynomial uses its leading monomial.
//!
//! Frozen basis order: degree ascending (`M_0 = 1` first); within a degree,
//! leading monomial descending. Equation files index coordinates in this order.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use super::hessian::{hessian_vars, minor, subsets};
use crate::algebra::{Monomial, Polynomial, RatMatrix, Rational, Vars};
use crate::error::{Error, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 4;

#[derive(Debug)]
pub struct MinorBasis {
    pub n: usize,
    pub polys: Vec<Polynomial>,
    /// Degree of each basis polynomial.
    pub degrees: Vec<usize>,
    /// `dims[l] = dim M_l`.
    pub dims: Vec<usize>,
    leading: Vec<Monomial>,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(2n, n) − C(2n, n + 2)`.
pub fn expected_dimension(n: usize) -> usize {
    binomial(2 * n, n) - binomial(2 * n, n + 2)
}

/// Shared, lazily built basis for `2 ≤ n ≤ 4`.
pub fn minor_basis(n: usize) -> Result<Arc<MinorBasis>> {
    static CACHE: [OnceLock<Arc<MinorBasis>>; MAX_DIM + 1] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    if !(MIN_DIM..=MAX_DIM).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(CACHE[n]
        .get_or_init(|| Arc::new(MinorBasis::build(n)))
        .clone())
}

/// Every minor of `U` of size `l`, one per unordered pair `{R, C}`.
pub fn all_minors(n: usize, l: usize) -> Vec<Polynomial> {
    let sets = subsets(n, l);
    let mut out = Vec::new();
    for (a, r) in sets.iter().enumerate() {
        for c in &sets[a..] {
            out.push(minor(n, r, c));
        }
    }
    out
}

impl MinorBasis {
    fn build(n: usize) -> Self {
        let vars = hessian_vars(n);
        let mut polys = Vec::new();
        let mut degrees = Vec::new();
        let mut leading = Vec::new();
        let mut dims = Vec::new();
        for l in 0..=n {
            let minors = all_minors(n, l);
            let reduced = row_reduce(&vars, &minors);
            dims.push(reduced.len());
            for p in reduced {
                leading.push(p.leading_term().expect("nonzero basis element").0.clone());
                degrees.push(l);
                polys.push(p);
            }
        }
        MinorBasis {
            n,
            polys,
            degrees,
            dims,
            leading,
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn vars(&self) -> Vars {
        hessian_vars(self.n)
    }

    pub fn leading_monomial(&self, k: usize) -> &Monomial {
        &self.leading[k]
    }

    /// Coordinates of `poly` in this basis, or `NotInSpan` listing the
    /// monomials of the unexplained remainder.
    pub fn decompose(&self, poly: &Polynomial) -> Result<Vec<Rational>> {
        let vars = self.vars();
        let poly = if poly.same_ring(&Polynomial::zero(&vars)) {
            poly.clone()
        } else {
            let foreign: Vec<String> = poly
                .support_vars()
                .into_iter()
                .map(|i| poly.vars()[i].clone())
                .filter(|name| !vars.contains(name))
                .collect();
            if !foreign.is_empty() {
                return Err(Error::NotInSpan { monomials: foreign });
            }
            poly.rename_into(&vars)
        };
        let coords: Vec<Rational> = self.leading.iter().map(|m| poly.coefficient(m)).collect();
        let remainder = &poly - &self.combine(&coords);
        if remainder.is_zero() {
            Ok(coords)
        } else {
            Err(Error::NotInSpan {
                monomials: remainder
                    .terms()
                    .rev()
                    .map(|(m, _)| m.render(&vars))
                    .collect(),
            })
        }
    }

    /// `Σ coords[k] · basis[k]`.
    pub fn combine(&self, coords: &[Rational]) -> Polynomial {
        assert_eq!(coords.len(), self.len(), "coordinate vector length");
        let mut out = Polynomial::zero(&self.vars());
        for (c, p) in coords.iter().zip(&self.polys) {
            if !c.is_zero() {
                out += &p.scale(c);
            }
        }
        out
    }

    /// Indices of basis elements of degree `l`.
    pub fn degree_range(&self, l: usize) -> std::ops::Range<usize> {
        let start: usize = self.dims[..l].iter().sum();
        start..start + self.dims[l]
    }
}

/// Reduced echelon basis of the span of homogeneous polynomials of one degree.
fn row_reduce(vars: &Vars, polys: &[Polynomial]) -> Vec<Polynomial> {
    let monos: BTreeSet<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    // Descending order so pivots land on leading monomials.
    let monos: Vec<Monomial> = monos.into_iter().rev().collect();
    let rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| monos.iter().map(|m| p.coefficient(m)).collect())
        .collect();
    let (rref, _) = RatMatrix::from_rows(rows).rref();
    rref.into_iter()
        .map(|row| {
            Polynomial::from_terms(
                vars,
                monos
                    .iter()
                    .zip(row)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m.clone(), c)),
            )
        })
        .collect()
}
