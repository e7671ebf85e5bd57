//! Equations as hyperplane sections, points of the chart, and translations.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::basis::{minor_basis, MinorBasis};
use super::hessian::{hessian_vars, num_vars, point_values, u, var_pair};
use crate::algebra::rational::{parse_pq, to_pq};
use crate::algebra::{Polynomial, RatMatrix, Rational};
use crate::error::{Error, Result};

pub const FILE_VERSION: u32 = 1;

/// A symplectic Monge-Ampère equation `F(U) = 0` with `F` in the minor span.
#[derive(Clone, Debug)]
pub struct MAEquation {
    n: usize,
    poly: Polynomial,
    coords: Vec<Rational>,
}

impl PartialEq for MAEquation {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.coords == other.coords
    }
}

impl MAEquation {
    /// Validates membership in the minor span.
    pub fn new(n: usize, poly: &Polynomial) -> Result<Self> {
        let basis = minor_basis(n)?;
        let coords = basis.decompose(poly)?;
        Self::from_coords(n, coords)
    }

    pub fn from_coords(n: usize, coords: Vec<Rational>) -> Result<Self> {
        let basis = minor_basis(n)?;
        if coords.len() != basis.len() {
            return Err(Error::Shape(format!(
                "expected {} coordinates for n = {n}, got {}",
                basis.len(),
                coords.len()
            )));
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroEquation);
        }
        let poly = basis.combine(&coords);
        Ok(MAEquation { n, poly, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn basis(&self) -> Arc<MinorBasis> {
        minor_basis(self.n).expect("dimension validated at construction")
    }

    /// Rescale so the leading coefficient is 1.
    pub fn normalized(&self) -> MAEquation {
        let lc = self.poly.leading_term().expect("nonzero").1.clone();
        let coords = self.coords.iter().map(|c| c / &lc).collect();
        Self::from_coords(self.n, coords).expect("nonzero")
    }

    /// True if the two equations define the same hyperplane.
    pub fn proportional_to(&self, other: &MAEquation) -> bool {
        self.n == other.n && self.normalized() == other.normalized()
    }

    /// Highest degree carrying a nonzero coordinate.
    pub fn degree(&self) -> usize {
        let basis = self.basis();
        (0..self.coords.len())
            .filter(|&k| !self.coords[k].is_zero())
            .map(|k| basis.degrees[k])
            .max()
            .unwrap_or(0)
    }

    pub fn to_file(&self) -> EquationFile {
        EquationFile {
            version: FILE_VERSION,
            n: self.n,
            coords: self.coords.iter().map(to_pq).collect(),
        }
    }

    pub fn from_file(file: &EquationFile) -> Result<Self> {
        if file.version != FILE_VERSION {
            return Err(Error::Format(format!(
                "unsupported version {}",
                file.version
            )));
        }
        let coords = file
            .coords
            .iter()
            .map(|s| parse_pq(s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coords(file.n, coords)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: EquationFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_file(&file)
    }
}

impl std::fmt::Display for MAEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = 0", self.poly)
    }
}

/// On-disk form; `coords` follow the frozen basis order of [`MinorBasis`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationFile {
    pub version: u32,
    pub n: usize,
    pub coords: Vec<String>,
}

/// A point of the Lagrangian Grassmannian in a Legendre chart.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangePoint {
    pub n: usize,
    /// 0-based indices flipped by the chart; empty for the affine chart.
    pub chart: Vec<usize>,
    pub matrix: RatMatrix,
}

impl LagrangePoint {
    pub fn affine(matrix: RatMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || !matrix.is_symmetric() {
            return Err(Error::Shape("point matrix must be square symmetric".into()));
        }
        Ok(LagrangePoint {
            n: matrix.rows(),
            chart: Vec::new(),
            matrix,
        })
    }

    pub fn origin(n: usize) -> Self {
        LagrangePoint {
            n,
            chart: Vec::new(),
            matrix: RatMatrix::zeros(n, n),
        }
    }
}

/// Values of the basis polynomials at an affine point.
pub fn plucker_eval(point: &LagrangePoint, basis: &MinorBasis) -> Result<Vec<Rational>> {
    if !point.chart.is_empty() {
        return Err(Error::Precondition(
            "plucker_eval needs the affine chart".into(),
        ));
    }
    if point.n != basis.n {
        return Err(Error::Shape("point and basis dimensions differ".into()));
    }
    let values = point_values(&point.matrix);
    Ok(basis.polys.iter().map(|p| p.eval(&values)).collect())
}

/// The equation `F(U + U0) = 0`.
pub fn translate(eq: &MAEquation, u0: &RatMatrix) -> Result<MAEquation> {
    let n = eq.n();
    if u0.rows() != n || u0.cols() != n || !u0.is_symmetric() {
        return Err(Error::Shape(format!(
            "shift must be a symmetric {n}x{n} matrix"
        )));
    }
    let vars = hessian_vars(n);
    let images: Vec<Polynomial> = (0..num_vars(n))
        .map(|k| {
            let (i, j) = var_pair(n, k);
            &u(n, i, j) + &Polynomial::constant(&vars, u0[(i, j)].clone())
        })
        .collect();
    MAEquation::new(n, &eq.poly().substitute(&images, &vars))
}

/// Whether the hyperplane contains the osculating space of order `n − 2`
/// at the point: after recentring at `U0`, every coordinate of degree
/// at most `n − 2` vanishes.
pub fn osculating_containment(eq: &MAEquation, point: &LagrangePoint) -> Result<bool> {
    if !point.chart.is_empty() {
        return Err(Error::Precondition(
            "osculating_containment needs the affine chart".into(),
        ));
    }
    let moved = translate(eq, &point.matrix)?;
    let basis = moved.basis();
    Ok(moved
        .coords()
        .iter()
        .zip(&basis.degrees)
        .all(|(c, &d)| d + 2 > eq.n() || c.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::grassmann::hessian::minor;

    fn first_heavenly() -> MAEquation {
        let p = &(&(&u(4, 0, 2) * &u(4, 1, 3)) - &(&u(4, 0, 3) * &u(4, 1, 2)))
            - &Polynomial::one(&hessian_vars(4));
        MAEquation::new(4, &p).unwrap()
    }

    #[test]
    fn first_heavenly_is_in_span_and_roundtrips() {
        let eq = first_heavenly();
        let back = MAEquation::from_json(&eq.to_json()).unwrap();
        assert_eq!(back, eq);
        assert_eq!(back.poly(), eq.poly());
    }

    #[test]
    fn zero_equation_rejected() {
        let z = Polynomial::zero(&hessian_vars(3));
        assert_eq!(MAEquation::new(3, &z).unwrap_err(), Error::ZeroEquation);
    }

    #[test]
    fn bad_file_rejected() {
        let e = MAEquation::from_json(r#"{"version":1,"n":2,"coords":["1/1"]}"#).unwrap_err();
        assert!(matches!(e, Error::Shape(_)));
        let e = MAEquation::from_json(r#"{"version":7,"n":2,"coords":[]}"#).unwrap_err();
        assert!(matches!(e, Error::Format(_)));
    }

    #[test]
    fn plucker_at_origin_and_antidiagonal() {
        let b = minor_basis(3).unwrap();
        let v = plucker_eval(&LagrangePoint::origin(3), &b).unwrap();
        assert_eq!(v[0], int(1));
        assert!(v[1..].iter().all(Zero::is_zero));

        let b2 = minor_basis(2).unwrap();
        let m = RatMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        let v = plucker_eval(&LagrangePoint::affine(m).unwrap(), &b2).unwrap();
        assert_eq!(v[4], int(-1));
    }

    #[test]
    fn hess_minus_one_translated_by_identity() {
        let det = minor(3, &[0, 1, 2], &[0, 1, 2]);
        let eq = MAEquation::new(3, &(&det - &Polynomial::one(&hessian_vars(3)))).unwrap();
        let t = translate(&eq, &RatMatrix::identity(3)).unwrap();
        assert!(t.coords()[0].is_zero());
        assert!(t.poly().eval(&vec![int(0); 6]).is_zero());
    }

    #[test]
    fn first_heavenly_shifted_to_origin() {
        let mut u0 = RatMatrix::zeros(4, 4);
        for (i, j) in [(0, 2), (1, 3)] {
            u0[(i, j)] = int(1);
            u0[(j, i)] = int(1);
        }
        let t = translate(&first_heavenly(), &u0).unwrap();
        assert!(t.coords()[0].is_zero());
    }

    #[test]
    fn osculating_examples() {
        let hess = minor(3, &[0, 1, 2], &[0, 1, 2]);
        let m2 = minor(3, &[0, 1], &[0, 1]);
        let eq = MAEquation::new(3, &(&hess - &m2)).unwrap();
        assert!(osculating_containment(&eq, &LagrangePoint::origin(3)).unwrap());

        let lap = &(&u(3, 0, 0) + &u(3, 1, 1)) + &u(3, 2, 2);
        let eq = MAEquation::new(3, &lap).unwrap();
        assert!(!osculating_containment(&eq, &LagrangePoint::origin(3)).unwrap());

        let eq = MAEquation::new(3, &(&hess - &Polynomial::one(&hessian_vars(3)))).unwrap();
        assert!(!osculating_containment(&eq, &LagrangePoint::origin(3)).unwrap());
    }
}
