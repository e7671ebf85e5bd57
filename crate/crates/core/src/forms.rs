//! Constant-coefficient exterior forms on the symplectic space `(x, u)`.
//!
//! Generators are `dx¹ … dxⁿ` (indices `0..n`) followed by `du₁ … duₙ`
//! (indices `n..2n`); `Ω = Σ dxⁱ ∧ duᵢ`. A basis monomial is a bitmask of
//! generators, read in increasing index order.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::algebra::matrix::{polynomial_det, rational_inverse};
use crate::algebra::rational::int;
use crate::algebra::{rank_kernel, Polynomial, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::grassmann::basis::MAX_DIM;
use crate::grassmann::hessian::{hessian_vars, u};
use crate::grassmann::{minor_basis, MAEquation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorForm {
    /// Number of generators (`2n`).
    pub dim: usize,
    pub terms: BTreeMap<u32, Rational>,
}

/// Sign of moving the generators of `b` past those of `a` into sorted order.
fn wedge_sign(a: u32, b: u32) -> bool {
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    swaps % 2 == 1
}

impl ExteriorForm {
    pub fn zero(dim: usize) -> Self {
        ExteriorForm {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(dim: usize, gens: &[usize], c: Rational) -> Self {
        let mut f = Self::zero(dim);
        let mut mask = 0u32;
        let mut neg = false;
        for &g in gens {
            assert!(g < dim, "generator out of range");
            if mask & (1 << g) != 0 {
                return f;
            }
            neg ^= wedge_sign(mask, 1 << g);
            mask |= 1 << g;
        }
        f.add_term(mask, if neg { -c } else { c });
        f
    }

    /// `Ω = Σ dxⁱ ∧ duᵢ` for `dim = 2n`.
    pub fn symplectic(n: usize) -> Self {
        let mut f = Self::zero(2 * n);
        for i in 0..n {
            f = f.add(&Self::monomial(2 * n, &[i, n + i], int(1)));
        }
        f
    }

    fn add_term(&mut self, mask: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.count_ones() as usize);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for (&m, v) in &self.terms {
            out.add_term(m, v * c);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca * cb;
                out.add_term(a | b, if wedge_sign(a, b) { -c } else { c });
            }
        }
        out
    }

    /// Interior product with the basis vector dual to generator `k`.
    pub fn interior(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (&m, c) in &self.terms {
            if m & (1 << k) == 0 {
                continue;
            }
            let before = (m & ((1 << k) - 1)).count_ones();
            let c = if before % 2 == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            out.add_term(m & !(1 << k), c);
        }
        out
    }

    pub fn coefficient(&self, mask: u32) -> Rational {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Renders e.g. `dx1^du1 - 2*dx2^du2`.
    pub fn render(&self) -> String {
        let n = self.dim / 2;
        let name = |g: usize| {
            if g < n {
                format!("dx{}", g + 1)
            } else {
                format!("du{}", g - n + 1)
            }
        };
        let mut out = String::new();
        for (&m, c) in &self.terms {
            let gens: Vec<String> = (0..self.dim)
                .filter(|g| m & (1 << g) != 0)
                .map(name)
                .collect();
            let neg = *c < Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            out.push_str(match (out.is_empty(), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            if !mag.is_one() || gens.is_empty() {
                out.push_str(&format!("{mag}"));
                if !gens.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&gens.join("^"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Coefficient of `dx¹∧…∧dxⁿ` after `duᵢ ↦ Σ_j u_ij dxʲ`.
pub fn pullback_polynomial(w: &ExteriorForm) -> Result<Polynomial> {
    let n = w.dim / 2;
    if w.degree().is_some_and(|d| d != n) {
        return Err(Error::Precondition(format!("pullback needs a {n}-form")));
    }
    let vars = hessian_vars(n);
    let mut out = Polynomial::zero(&vars);
    for (&m, c) in &w.terms {
        let rows: Vec<Vec<Polynomial>> = (0..2 * n)
            .filter(|g| m & (1 << g) != 0)
            .map(|g| {
                (0..n)
                    .map(|j| {
                        if g < n {
                            if g == j {
                                Polynomial::one(&vars)
                            } else {
                                Polynomial::zero(&vars)
                            }
                        } else {
                            u(n, g - n, j)
                        }
                    })
                    .collect()
            })
            .collect();
        out += &polynomial_det(&rows).scale(c);
    }
    Ok(out)
}

pub fn pullback_to_equation(w: &ExteriorForm) -> Result<MAEquation> {
    let p = pullback_polynomial(w)?;
    if p.is_zero() {
        return Err(Error::ZeroPullback);
    }
    MAEquation::new(w.dim / 2, &p)
}

struct EffectiveTable {
    forms: Vec<ExteriorForm>,
    /// Maps minor coordinates to coefficients over `forms`.
    lift: RatMatrix,
}

fn all_n_forms(n: usize) -> Vec<u32> {
    (0u32..1 << (2 * n))
        .filter(|m| m.count_ones() as usize == n)
        .collect()
}

fn effective_table(n: usize) -> Result<Arc<EffectiveTable>> {
    static CACHE: [OnceLock<Arc<EffectiveTable>>; MAX_DIM + 1] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    let basis = minor_basis(n)?;
    Ok(CACHE[n]
        .get_or_init(|| {
            let masks = all_n_forms(n);
            let omega = ExteriorForm::symplectic(n);
            let images: Vec<ExteriorForm> = masks
                .iter()
                .map(|&m| {
                    let mut f = ExteriorForm::zero(2 * n);
                    f.add_term(m, int(1));
                    f.wedge(&omega)
                })
                .collect();
            let targets: Vec<u32> = (0u32..1 << (2 * n))
                .filter(|m| m.count_ones() as usize == n + 2)
                .collect();
            let columns: Vec<Vec<Rational>> = images
                .iter()
                .map(|f| targets.iter().map(|&t| f.coefficient(t)).collect())
                .collect();
            let (_, kernel) = rank_kernel(&RatMatrix::from_columns(targets.len(), &columns));
            assert_eq!(
                kernel.len(),
                basis.len(),
                "effective forms match the minor span"
            );
            let forms: Vec<ExteriorForm> = kernel
                .iter()
                .map(|v| {
                    let mut f = ExteriorForm::zero(2 * n);
                    for (&m, c) in masks.iter().zip(v) {
                        f.add_term(m, c.clone());
                    }
                    f
                })
                .collect();
            let pull: Vec<Vec<Rational>> = forms
                .iter()
                .map(|f| {
                    basis
                        .decompose(&pullback_polynomial(f).expect("n-form"))
                        .expect("pullback lies in the minor span")
                })
                .collect();
            let lift = rational_inverse(&RatMatrix::from_columns(basis.len(), &pull))
                .expect("pullback is an isomorphism on effective forms");
            Arc::new(EffectiveTable { forms, lift })
        })
        .clone())
}

/// The effective `n`-form whose pullback is the equation.
pub fn effective_lift(eq: &MAEquation) -> Result<ExteriorForm> {
    let table = effective_table(eq.n())?;
    let coeffs = table.lift.mul_vec(eq.coords());
    let mut out = ExteriorForm::zero(2 * eq.n());
    for (c, f) in coeffs.iter().zip(&table.forms) {
        if !c.is_zero() {
            out = out.add(&f.scale(c));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BOmega {
    pub lambda_zero: bool,
    /// `λ` for the lift as computed; only its vanishing is invariant.
    pub lambda: Rational,
    pub matrix: RatMatrix,
}

/// `B_ω(e_k, e_l) = (i_k ω ∧ i_l ω ∧ Ω) / Ω⁴` for `n = 4`.
pub fn b_omega_lambda(eq: &MAEquation) -> Result<BOmega> {
    if eq.n() != 4 {
        return Err(Error::Precondition(
            "B_omega is defined here for n = 4".into(),
        ));
    }
    let w = effective_lift(eq)?;
    b_omega_of_form(&w)
}

pub fn b_omega_of_form(w: &ExteriorForm) -> Result<BOmega> {
    let dim = w.dim;
    let n = dim / 2;
    let omega = ExteriorForm::symplectic(n);
    let top: u32 = (1u32 << dim) - 1;
    let volume = (1..n)
        .fold(omega.clone(), |acc, _| acc.wedge(&omega))
        .coefficient(top);
    let contractions: Vec<ExteriorForm> = (0..dim).map(|k| w.interior(k)).collect();
    let mut b = RatMatrix::zeros(dim, dim);
    for k in 0..dim {
        for l in 0..dim {
            let v = contractions[k]
                .wedge(&contractions[l])
                .wedge(&omega)
                .coefficient(top);
            b[(k, l)] = v / &volume;
        }
    }
    let mut omega_matrix = RatMatrix::zeros(dim, dim);
    for i in 0..n {
        omega_matrix[(i, n + i)] = int(1);
        omega_matrix[(n + i, i)] = int(-1);
    }
    let lambda = b[(0, n)].clone();
    if b != omega_matrix.scale(&lambda) {
        return Err(Error::ProportionalityViolation);
    }
    Ok(BOmega {
        lambda_zero: lambda.is_zero(),
        lambda,
        matrix: b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;

    #[test]
    fn wedge_is_graded_commutative() {
        let a = ExteriorForm::monomial(4, &[0, 2], int(1));
        let b = ExteriorForm::monomial(4, &[1], int(3));
        let c = ExteriorForm::monomial(4, &[3], int(2));
        assert_eq!(a.wedge(&b), b.wedge(&a));
        assert_eq!(b.wedge(&c), c.wedge(&b).scale(&int(-1)));
        assert!(b.wedge(&b).is_zero());
    }

    #[test]
    fn pullback_examples() {
        let w = ExteriorForm::monomial(4, &[0, 2], int(1));
        assert_eq!(pullback_polynomial(&w).unwrap(), u(2, 0, 1));
        let w = ExteriorForm::monomial(8, &[4, 5, 2, 3], int(1));
        assert_eq!(
            pullback_polynomial(&w).unwrap().to_string(),
            "u11*u22 - u12^2"
        );
        let omega2 = ExteriorForm::symplectic(2).wedge(&ExteriorForm::symplectic(2));
        assert!(matches!(
            pullback_to_equation(&omega2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lift_round_trip_and_effective() {
        for name in ["first-heavenly", "linear-wave", "husain"] {
            let eq = builtin(name).unwrap();
            let w = effective_lift(&eq).unwrap();
            assert!(w.wedge(&ExteriorForm::symplectic(4)).is_zero(), "{name}");
            assert_eq!(pullback_to_equation(&w).unwrap(), eq, "{name}");
        }
    }

    #[test]
    fn lambda_examples() {
        assert!(
            b_omega_lambda(&builtin("second-heavenly").unwrap())
                .unwrap()
                .lambda_zero
        );
        assert!(
            !b_omega_lambda(&builtin("first-heavenly").unwrap())
                .unwrap()
                .lambda_zero
        );
    }
}
