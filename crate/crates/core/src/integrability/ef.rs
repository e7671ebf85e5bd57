//! The ten-dimensional space `E ⊕ F` of quadratic equations tangent to the
//! Grassmannian at `l₁ = ∞`, `l₂ = 0` and `l₃ = {u14 = 1, u23 = −1}`, and the
//! case table of its quartic-pair normal forms.
//!
//! `E_i ↔ tⁱ` and `F_i ↔ tⁱ`; an equation `v = v_e − v_f` gives the pair
//! `(p, q)` with `p ↔ v_e` and `q ↔ v_f`.

use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{BinaryQuartic, Monomial, Polynomial, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::expr::parse_polynomial;
use crate::grassmann::{singular_locus_quadratic, MAEquation};

const E_EXPRS: [&str; 5] = [
    "u11*u22 - u12^2",
    "1/2*(u11*u24 - u12*u14 + u22*u13 - u12*u23)",
    "1/6*(u11*u44 - u14^2 + u22*u33 - u23^2) + 1/3*(2*u13*u24 - u14*u23 - u12*u34)",
    "1/2*(u33*u24 - u23*u34 + u44*u13 - u14*u34)",
    "u33*u44 - u34^2",
];

const F_EXPRS: [&str; 5] = [
    "u11*u33 - u13^2",
    "1/2*(u11*u34 - u13*u14 + u33*u12 - u13*u23)",
    "1/6*(u11*u44 - u14^2 + u22*u33 - u23^2) + 1/3*(2*u12*u34 - u14*u23 - u13*u24)",
    "1/2*(u22*u34 - u23*u24 + u44*u12 - u14*u24)",
    "u22*u44 - u24^2",
];

/// `E_0 … E_4` followed by `F_0 … F_4`.
pub fn ef_basis() -> &'static [Polynomial] {
    static CACHE: OnceLock<Vec<Polynomial>> = OnceLock::new();
    CACHE.get_or_init(|| {
        E_EXPRS
            .iter()
            .chain(F_EXPRS.iter())
            .map(|s| parse_polynomial(4, s).expect("basis expression parses"))
            .collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticPair {
    pub p: BinaryQuartic,
    pub q: BinaryQuartic,
}

impl QuarticPair {
    pub fn new(p: BinaryQuartic, q: BinaryQuartic) -> Self {
        QuarticPair { p, q }
    }

    /// `Σ p_i E_i − Σ q_i F_i`.
    pub fn reconstruct(&self) -> Polynomial {
        let basis = ef_basis();
        let mut out = Polynomial::zero(basis[0].vars());
        for i in 0..5 {
            out += &basis[i].scale(&self.p.coeffs[i]);
            out -= &basis[5 + i].scale(&self.q.coeffs[i]);
        }
        out
    }

    pub fn swapped(&self) -> Self {
        QuarticPair {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }
}

/// The pair `(p, q)` of a quadratic equation in `E ⊕ F`.
pub fn ef_coordinates(eq: &MAEquation) -> Result<QuarticPair> {
    if eq.n() != 4 {
        return Err(Error::Precondition("E+F coordinates need n = 4".into()));
    }
    let basis = ef_basis();
    let poly = eq.poly();
    let monos: Vec<Monomial> = {
        let mut all: Vec<Monomial> = basis
            .iter()
            .chain(std::iter::once(poly))
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
            .collect();
        all.sort();
        all.dedup();
        all
    };
    let columns: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| monos.iter().map(|m| b.coefficient(m)).collect())
        .collect();
    let target: Vec<Rational> = monos.iter().map(|m| poly.coefficient(m)).collect();
    let (x, kernel) = RatMatrix::from_columns(monos.len(), &columns)
        .solve(&target)
        .ok_or(Error::NotInEF)?;
    debug_assert!(kernel.is_empty());
    let p = BinaryQuartic::new(std::array::from_fn(|i| x[i].clone()));
    let q = BinaryQuartic::new(std::array::from_fn(|i| -x[5 + i].clone()));
    Ok(QuarticPair { p, q })
}

/// Root pattern of a quartic, with `[]` standing for the zero polynomial.
pub fn pattern(q: &BinaryQuartic) -> Vec<usize> {
    q.multiplicity_pattern().unwrap_or_default()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquationKind {
    GeneralHeavenly,
    Husain,
    FirstHeavenly,
    ModifiedHeavenly,
    SecondHeavenly,
    LinearWave,
    HessOne,
    Degenerate,
}

impl EquationKind {
    pub fn name(self) -> &'static str {
        match self {
            EquationKind::GeneralHeavenly => "general heavenly",
            EquationKind::Husain => "Husain",
            EquationKind::FirstHeavenly => "first heavenly",
            EquationKind::ModifiedHeavenly => "modified heavenly",
            EquationKind::SecondHeavenly => "second heavenly",
            EquationKind::LinearWave => "linear wave",
            EquationKind::HessOne => "Hess u = 1 (non-integrable)",
            EquationKind::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairClassification {
    /// Row of the case table, if any.
    pub case: Option<u8>,
    pub kind: Option<EquationKind>,
    pub p_pattern: Vec<usize>,
    pub q_pattern: Vec<usize>,
    pub p_harmonic: bool,
    pub q_harmonic: bool,
    /// Invariants `(I, J)` of `p` and `q`.
    pub p_invariants: (String, String),
    pub q_invariants: (String, String),
    /// Dimension of the singular locus of the reconstructed equation.
    pub singular_dim: Option<usize>,
}

fn table_row(p: &[usize], q: &[usize], p_harmonic: bool) -> Option<(u8, EquationKind)> {
    use EquationKind::*;
    let row = match (p, q) {
        ([1, 1, 1, 1], [1, 1, 1, 1]) => (1, GeneralHeavenly),
        ([2, 1, 1], [2, 1, 1]) => (2, Husain),
        ([2, 1, 1], [2, 2]) => (3, FirstHeavenly),
        ([2, 2], [2, 2]) => (4, Degenerate),
        ([3, 1], [3, 1]) => (5, ModifiedHeavenly),
        ([3, 1], [4]) => (6, SecondHeavenly),
        ([4], [4]) => (7, Degenerate),
        ([1, 1, 1, 1], []) if p_harmonic => (8, HessOne),
        ([3, 1], []) => (9, LinearWave),
        ([4], []) => (10, Degenerate),
        _ => return None,
    };
    Some(row)
}

/// Matches a pair against the case table, up to `p ↔ q` and scaling.
/// Case 1 is named only when the reconstructed equation has a
/// four-dimensional singular locus.
pub fn classify_quartic_pair(pair: &QuarticPair) -> Result<PairClassification> {
    if pair.p.is_zero() && pair.q.is_zero() {
        return Err(Error::ZeroEquation);
    }
    let (pp, qp) = (pattern(&pair.p), pattern(&pair.q));
    let (pi, qi) = (pair.p.invariants(), pair.q.invariants());
    let p_harmonic = pi.is_harmonic();
    let q_harmonic = qi.is_harmonic();
    let fmt = |inv: &crate::algebra::QuarticInvariants| (inv.i.to_string(), inv.j.to_string());
    let eq = MAEquation::new(4, &pair.reconstruct())?;
    let singular_dim = singular_locus_quadratic(&eq).ok().map(|s| s.dim);
    let mut row = table_row(&pp, &qp, p_harmonic).or_else(|| table_row(&qp, &pp, q_harmonic));
    if matches!(row, Some((1, _))) && singular_dim != Some(4) {
        row = None;
    }
    Ok(PairClassification {
        case: row.map(|r| r.0),
        kind: row.map(|r| r.1),
        p_pattern: pp,
        q_pattern: qp,
        p_harmonic,
        q_harmonic,
        p_invariants: fmt(&pi),
        q_invariants: fmt(&qi),
        singular_dim,
    })
}

/// Representative pair for each row of the case table (`a = 2` in case 1).
pub fn table_representative(case: u8) -> Option<QuarticPair> {
    let pair = |p: [i64; 5], q: [i64; 5]| {
        Some(QuarticPair::new(
            BinaryQuartic::from_ints(p),
            BinaryQuartic::from_ints(q),
        ))
    };
    // (t² − 1)(t − 2) = t³ − 2t² − t + 2
    let cubic = [2, -1, -2, 1, 0];
    match case {
        1 => pair(cubic, cubic),
        2 => pair([-1, 0, 1, 0, 0], [-1, 0, 1, 0, 0]),
        3 => pair([-1, 0, 1, 0, 0], [0, 0, 1, 0, 0]),
        4 => pair([0, 0, 1, 0, 0], [0, 0, 1, 0, 0]),
        5 => pair([0, 1, 0, 0, 0], [0, 1, 0, 0, 0]),
        6 => pair([0, 1, 0, 0, 0], [1, 0, 0, 0, 0]),
        7 => pair([1, 0, 0, 0, 0], [1, 0, 0, 0, 0]),
        8 => pair([0, -1, 0, 1, 0], [0; 5]),
        9 => pair([0, 1, 0, 0, 0], [0; 5]),
        10 => pair([1, 0, 0, 0, 0], [0; 5]),
        _ => None,
    }
}

pub fn is_zero_pair(pair: &QuarticPair) -> bool {
    pair.p
        .coeffs
        .iter()
        .chain(&pair.q.coeffs)
        .all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;
    use crate::expr::parse_equation;

    #[test]
    fn e0_pair() {
        let eq = parse_equation(4, "u11*u22 - u12^2").unwrap();
        let pair = ef_coordinates(&eq).unwrap();
        assert_eq!(pair.p, BinaryQuartic::from_ints([1, 0, 0, 0, 0]));
        assert!(pair.q.is_zero());
    }

    #[test]
    fn first_heavenly_pair() {
        let b = ef_basis();
        let v = &(&b[2] - &b[0]) - &b[7];
        let pair = ef_coordinates(&MAEquation::new(4, &v).unwrap()).unwrap();
        assert_eq!(pair.p.to_string(), "t^2 - 1");
        assert_eq!(pair.q.to_string(), "t^2");
        assert_eq!(classify_quartic_pair(&pair).unwrap().case, Some(3));
    }

    #[test]
    fn constant_term_not_in_ef() {
        assert_eq!(
            ef_coordinates(&builtin("first-heavenly").unwrap()).unwrap_err(),
            Error::NotInEF
        );
    }

    #[test]
    fn table_examples() {
        let c = |p, q| {
            classify_quartic_pair(&QuarticPair::new(
                BinaryQuartic::from_ints(p),
                BinaryQuartic::from_ints(q),
            ))
            .unwrap()
        };
        let husain = c([-1, 0, 1, 0, 0], [-1, 0, 1, 0, 0]);
        assert_eq!(
            (husain.case, husain.kind),
            (Some(2), Some(EquationKind::Husain))
        );
        let hess = c([0, -1, 0, 1, 0], [0; 5]);
        assert_eq!(hess.case, Some(8));
        let degenerate = c([1, 0, 0, 0, 0], [1, 0, 0, 0, 0]);
        assert_eq!(degenerate.case, Some(7));
        // p <-> q swap
        let swapped = c([0; 5], [0, 1, 0, 0, 0]);
        assert_eq!(swapped.case, Some(9));
        // non-harmonic four distinct roots with q = 0 is outside the table
        assert_eq!(c([2, -1, -2, 1, 0], [0; 5]).case, None);
    }
}
