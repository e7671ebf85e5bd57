//! The generators `X_ij`, `L_ij`, `P_ij` of sp(2n) and their action on the
//! minor span.
//!
//! Each generator is a polynomial vector field on the chart variables plus a
//! multiplier: `ρ(g)F = Σ_ab g_ab ∂F/∂u_ab + m_g·F`. The vector fields are
//!
//! ```text
//! X_ij: ∂/∂u_ij
//! L_ij: u_js on u_is (s ≠ i), 2u_ij on u_ii
//! P_ij: 2u_is·u_js on u_ss, u_ia·u_jb + u_ib·u_ja on u_ab (a < b)
//! ```
//!
//! with multipliers `0`, `−δ_ij` and `−2u_ij`. Plücker coordinates are
//! sections of a line bundle, so the bare vector field does not preserve the
//! span (`P_ij(det U) = 2u_ij·det U`); the multiplier restores it.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::algebra::rational::int;
use crate::algebra::{Polynomial, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::grassmann::basis::MAX_DIM;
use crate::grassmann::hessian::{hessian_vars, num_vars, u, var_index, var_pair};
use crate::grassmann::minor_basis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    X,
    L,
    P,
}

/// Label of a generator; indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub kind: Kind,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::X => 'X',
            Kind::L => 'L',
            Kind::P => 'P',
        };
        write!(f, "{k}{}{}", self.i + 1, self.j + 1)
    }
}

#[derive(Clone, Debug)]
pub struct SpGenerator {
    pub label: Label,
    /// Component on each chart variable, in chart order.
    pub field: Vec<Polynomial>,
    pub multiplier: Polynomial,
}

impl SpGenerator {
    pub fn new(n: usize, label: Label) -> Self {
        let vars = hessian_vars(n);
        let m = num_vars(n);
        let zero = Polynomial::zero(&vars);
        let mut field = vec![zero.clone(); m];
        let (i, j) = (label.i, label.j);
        let multiplier = match label.kind {
            Kind::X => {
                field[var_index(n, i, j)] = Polynomial::one(&vars);
                zero
            }
            Kind::L => {
                for s in 0..n {
                    if s == i {
                        field[var_index(n, i, i)] += &u(n, i, j).scale(&int(2));
                    } else {
                        field[var_index(n, i, s)] += &u(n, j, s);
                    }
                }
                if i == j {
                    Polynomial::constant(&vars, int(-1))
                } else {
                    zero
                }
            }
            Kind::P => {
                for (k, comp) in field.iter_mut().enumerate() {
                    let (a, b) = var_pair(n, k);
                    *comp = if a == b {
                        (&u(n, i, a) * &u(n, j, a)).scale(&int(2))
                    } else {
                        &(&u(n, i, a) * &u(n, j, b)) + &(&u(n, i, b) * &u(n, j, a))
                    };
                }
                u(n, i, j).scale(&int(-2))
            }
        };
        SpGenerator {
            label,
            field,
            multiplier,
        }
    }

    /// `ρ(g)F`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = f * &self.multiplier;
        for (k, comp) in self.field.iter().enumerate() {
            if !comp.is_zero() {
                out += &(comp * &f.diff(k));
            }
        }
        out
    }
}

/// All `n(2n+1)` labels: `X_ij (i ≤ j)`, then `L_ij` row by row, then `P_ij (i ≤ j)`.
pub fn labels(n: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for kind in [Kind::X, Kind::L, Kind::P] {
        for i in 0..n {
            let start = if kind == Kind::L { 0 } else { i };
            for j in start..n {
                out.push(Label { kind, i, j });
            }
        }
    }
    out
}

pub fn generators(n: usize) -> Vec<SpGenerator> {
    labels(n)
        .into_iter()
        .map(|l| SpGenerator::new(n, l))
        .collect()
}

/// Action matrices of all generators on the minor basis plus the data needed
/// to decompose an `N × N` matrix over them.
#[derive(Debug)]
pub struct ActionTable {
    pub n: usize,
    pub labels: Vec<Label>,
    pub matrices: Vec<RatMatrix>,
    pivots: Vec<(usize, usize)>,
    pivot_inverse: RatMatrix,
}

/// Column `k` holds the coordinates of `ρ(g)` applied to basis element `k`.
pub fn generator_action_matrix(g: &SpGenerator, n: usize) -> Result<RatMatrix> {
    let basis = minor_basis(n)?;
    let columns = basis
        .polys
        .iter()
        .map(|p| basis.decompose(&g.apply(p)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RatMatrix::from_columns(basis.len(), &columns))
}

pub fn action_table(n: usize) -> Result<Arc<ActionTable>> {
    static CACHE: [OnceLock<Arc<ActionTable>>; MAX_DIM + 1] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    minor_basis(n)?;
    Ok(CACHE[n]
        .get_or_init(|| Arc::new(ActionTable::build(n)))
        .clone())
}

impl ActionTable {
    fn build(n: usize) -> Self {
        let labels = labels(n);
        let matrices: Vec<RatMatrix> = labels
            .iter()
            .map(|&l| {
                generator_action_matrix(&SpGenerator::new(n, l), n)
                    .expect("sp(2n) preserves the minor span")
            })
            .collect();
        let size = matrices[0].rows();
        let flat = RatMatrix::from_rows(
            matrices
                .iter()
                .map(|m| {
                    (0..size * size)
                        .map(|e| m[(e / size, e % size)].clone())
                        .collect()
                })
                .collect(),
        );
        let (_, pivot_cols) = flat.rref();
        assert_eq!(pivot_cols.len(), labels.len(), "action is faithful");
        let pivots: Vec<(usize, usize)> =
            pivot_cols.iter().map(|&e| (e / size, e % size)).collect();
        let sample = RatMatrix::from_rows(
            pivots
                .iter()
                .map(|&p| matrices.iter().map(|m| m[p].clone()).collect())
                .collect(),
        );
        let pivot_inverse =
            crate::algebra::matrix::rational_inverse(&sample).expect("pivot block invertible");
        ActionTable {
            n,
            labels,
            matrices,
            pivots,
            pivot_inverse,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `A_v = Σ v_g A_g`.
    pub fn combine(&self, v: &[Rational]) -> RatMatrix {
        let size = self.matrices[0].rows();
        let mut out = RatMatrix::zeros(size, size);
        for (c, m) in v.iter().zip(&self.matrices) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// Coordinates of an action matrix over the generators, if it is one.
    pub fn decompose(&self, m: &RatMatrix) -> Option<Vec<Rational>> {
        let values: Vec<Rational> = self.pivots.iter().map(|&p| m[p].clone()).collect();
        let v = self.pivot_inverse.mul_vec(&values);
        (self.combine(&v) == *m).then_some(v)
    }

    /// Bracket of two elements given in generator coordinates.
    pub fn bracket(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let c = self.combine(a).commutator(&self.combine(b));
        self.decompose(&c).expect("sp(2n) closes under brackets")
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

/// Renders a coefficient vector as e.g. `2*L11 + L22 - P12`.
pub fn render_element(labels: &[Label], v: &[Rational]) -> String {
    let mut out = String::new();
    for (l, c) in labels.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Rational::zero();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&l.to_string());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses a combination such as `X33 - L24`, `2L11 + L22 + L44` or `X34+2*L23`.
pub fn parse_element(n: usize, text: &str) -> Result<Vec<Rational>> {
    let labels = labels(n);
    let mut v = vec![Rational::zero(); labels.len()];
    let bytes: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |pos: usize, msg: &str| Error::Syntax {
        pos,
        msg: msg.to_string(),
    };
    let mut pos = 0;
    let mut first = true;
    while pos < bytes.len() {
        let mut sign = Rational::one();
        if bytes[pos] == '+' || bytes[pos] == '-' {
            if bytes[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if !first {
            return Err(err(pos, "expected + or -"));
        }
        first = false;
        let start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == '/') {
            pos += 1;
        }
        let coeff = if start == pos {
            Rational::one()
        } else {
            let s: String = bytes[start..pos].iter().collect();
            crate::algebra::rational::parse_pq(&s).map_err(|_| err(start, "bad coefficient"))?
        };
        if pos < bytes.len() && bytes[pos] == '*' {
            pos += 1;
        }
        if pos + 3 > bytes.len() {
            return Err(err(pos, "expected generator label"));
        }
        let kind = match bytes[pos] {
            'X' => Kind::X,
            'L' => Kind::L,
            'P' => Kind::P,
            _ => return Err(err(pos, "expected X, L or P")),
        };
        let digit = |c: char| {
            c.to_digit(10)
                .map(|d| d as usize)
                .filter(|&d| d >= 1 && d <= n)
                .ok_or_else(|| err(pos, "index out of range"))
        };
        let (mut i, mut j) = (digit(bytes[pos + 1])? - 1, digit(bytes[pos + 2])? - 1);
        if kind != Kind::L && i > j {
            std::mem::swap(&mut i, &mut j);
        }
        let k = labels
            .iter()
            .position(|&l| l == Label { kind, i, j })
            .expect("label exists");
        v[k] += sign * coeff;
        pos += 3;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::hessian::minor;

    #[test]
    fn generator_count() {
        for n in 2..=4 {
            assert_eq!(labels(n).len(), n * (2 * n + 1));
        }
    }

    #[test]
    fn x11_on_determinant() {
        let det = minor(2, &[0, 1], &[0, 1]);
        let g = SpGenerator::new(
            2,
            Label {
                kind: Kind::X,
                i: 0,
                j: 0,
            },
        );
        assert_eq!(g.apply(&det), u(2, 1, 1));
        assert_eq!(g.apply(&u(2, 0, 0)), Polynomial::one(&hessian_vars(2)));
    }

    #[test]
    fn l12_field_on_u11() {
        let g = SpGenerator::new(
            2,
            Label {
                kind: Kind::L,
                i: 0,
                j: 1,
            },
        );
        assert_eq!(g.apply(&u(2, 0, 0)), u(2, 0, 1).scale(&int(2)));
    }

    #[test]
    fn p_on_constant_is_multiplier() {
        let g = SpGenerator::new(
            3,
            Label {
                kind: Kind::P,
                i: 0,
                j: 1,
            },
        );
        let one = Polynomial::one(&hessian_vars(3));
        assert_eq!(g.apply(&one), u(3, 0, 1).scale(&int(-2)));
    }

    #[test]
    fn brackets_close() {
        for n in 2..=3 {
            let t = action_table(n).unwrap();
            for a in 0..t.dim() {
                for b in 0..t.dim() {
                    let c = t.matrices[a].commutator(&t.matrices[b]);
                    assert!(t.decompose(&c).is_some(), "{} {}", t.labels[a], t.labels[b]);
                }
            }
        }
    }

    #[test]
    fn parse_and_render() {
        let v = parse_element(4, "X34+2L23").unwrap();
        assert_eq!(render_element(&labels(4), &v), "X34 + 2*L23");
        let v = parse_element(4, "-L43 + L12").unwrap();
        assert_eq!(render_element(&labels(4), &v), "L12 - L43");
        assert!(parse_element(4, "Q11").is_err());
        assert!(parse_element(3, "X14").is_err());
    }
}
