//! Subalgebras of sp(2n) given by coefficient vectors over the generators.

use num_traits::Zero;

use super::generators::{action_table, render_element, Label};
use crate::algebra::{rank_kernel, RatMatrix, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct LieSubalgebra {
    pub n: usize,
    pub ambient_dim: usize,
    pub labels: Vec<Label>,
    pub basis: Vec<Vec<Rational>>,
    /// `[e_i, e_j] = Σ_k structure[i][j][k] e_k`.
    pub structure: Vec<Vec<Vec<Rational>>>,
}

/// Decomposes vectors over an independent family via pivot coordinates.
struct Coordinates {
    family: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    inverse: RatMatrix,
}

impl Coordinates {
    fn new(family: &[Vec<Rational>]) -> Self {
        if family.is_empty() {
            return Coordinates {
                family: Vec::new(),
                pivots: Vec::new(),
                inverse: RatMatrix::zeros(0, 0),
            };
        }
        let (_, pivots) = RatMatrix::from_rows(family.to_vec()).rref();
        assert_eq!(pivots.len(), family.len(), "family must be independent");
        let block = RatMatrix::from_rows(
            pivots
                .iter()
                .map(|&p| family.iter().map(|v| v[p].clone()).collect())
                .collect(),
        );
        Coordinates {
            family: family.to_vec(),
            inverse: crate::algebra::matrix::rational_inverse(&block).expect("invertible"),
            pivots,
        }
    }

    fn solve(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if self.family.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let x = self.inverse.mul_vec(
            &self
                .pivots
                .iter()
                .map(|&p| v[p].clone())
                .collect::<Vec<_>>(),
        );
        let mut back = vec![Rational::zero(); v.len()];
        for (c, f) in x.iter().zip(&self.family) {
            for (b, e) in back.iter_mut().zip(f) {
                *b += c * e;
            }
        }
        (back == v).then_some(x)
    }
}

impl LieSubalgebra {
    /// Span of the given vectors (reduced to echelon form) with structure
    /// constants; fails if the span is not closed under the bracket.
    pub fn from_vectors(n: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let table = action_table(n)?;
        let d = table.dim();
        if vectors.iter().any(|v| v.len() != d) {
            return Err(Error::Shape(format!(
                "sp({}) vectors have length {d}",
                2 * n
            )));
        }
        let basis: Vec<Vec<Rational>> = if vectors.is_empty() {
            Vec::new()
        } else {
            RatMatrix::from_rows(vectors.to_vec()).rref().0
        };
        let coords = Coordinates::new(&basis);
        let mut structure = Vec::with_capacity(basis.len());
        for a in &basis {
            let mut row = Vec::with_capacity(basis.len());
            for b in &basis {
                let c = table.bracket(a, b);
                row.push(coords.solve(&c).ok_or_else(|| {
                    Error::Precondition("span is not closed under the bracket".into())
                })?);
            }
            structure.push(row);
        }
        Ok(LieSubalgebra {
            n,
            ambient_dim: d,
            labels: table.labels.clone(),
            basis,
            structure,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an ambient vector in this algebra's basis.
    pub fn coordinates_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        Coordinates::new(&self.basis).solve(v)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates_of(v).is_some()
    }

    /// `ad(x)` for `x` in basis coordinates: column `j` is `[x, e_j]`.
    fn ad(&self, x: &[Rational]) -> RatMatrix {
        let d = self.dim();
        let mut m = RatMatrix::zeros(d, d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..d {
                for k in 0..d {
                    m[(k, j)] += xi * &self.structure[i][j][k];
                }
            }
        }
        m
    }

    pub fn killing_form(&self) -> RatMatrix {
        let d = self.dim();
        let ads: Vec<RatMatrix> = (0..d).map(|i| self.ad(&unit(d, i))).collect();
        let mut k = RatMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = ads[i].mul(&ads[j]).trace();
                k[(i, j)] = v.clone();
                k[(j, i)] = v;
            }
        }
        k
    }

    /// `[g, g]` as vectors in basis coordinates (echelon form).
    pub fn derived(&self) -> Vec<Vec<Rational>> {
        let brackets: Vec<Vec<Rational>> = self
            .structure
            .iter()
            .flatten()
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .cloned()
            .collect();
        if brackets.is_empty() {
            return Vec::new();
        }
        RatMatrix::from_rows(brackets).rref().0
    }

    /// The center, in basis coordinates.
    pub fn center(&self) -> Vec<Vec<Rational>> {
        let d = self.dim();
        // x central iff Σ_i x_i c[i][j][k] = 0 for all j, k.
        let rows: Vec<Vec<Rational>> = (0..d)
            .flat_map(|j| (0..d).map(move |k| (j, k)))
            .map(|(j, k)| (0..d).map(|i| self.structure[i][j][k].clone()).collect())
            .collect();
        if rows.is_empty() {
            return Vec::new();
        }
        rank_kernel(&RatMatrix::from_rows(rows)).1
    }

    /// The solvable radical: the Killing-orthogonal complement of `[g, g]`.
    pub fn radical(&self) -> Vec<Vec<Rational>> {
        let d = self.dim();
        let derived = self.derived();
        if derived.is_empty() {
            return (0..d).map(|i| unit(d, i)).collect();
        }
        let k = self.killing_form();
        let rows: Vec<Vec<Rational>> = derived.iter().map(|y| k.mul_vec(y)).collect();
        rank_kernel(&RatMatrix::from_rows(rows)).1
    }

    pub fn is_reductive(&self) -> bool {
        self.radical().len() == self.center().len()
    }

    /// Basis element `k` in generator notation.
    pub fn render(&self, k: usize) -> String {
        render_element(&self.labels, &self.basis[k])
    }

    /// Jacobi identity on the structure constants.
    pub fn satisfies_jacobi(&self) -> bool {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut total = vec![Rational::zero(); d];
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        // [[e_x, e_y], e_z]
                        for (m, coef) in self.structure[x][y].iter().enumerate() {
                            if coef.is_zero() {
                                continue;
                            }
                            for (t, s) in total.iter_mut().zip(&self.structure[m][z]) {
                                *t += coef * s;
                            }
                        }
                    }
                    if total.iter().any(|t| !t.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::from_integer(1.into());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesp::generators::parse_element;

    #[test]
    fn abelian_is_reductive() {
        let vs: Vec<_> = ["X11", "X12", "X22"]
            .iter()
            .map(|s| parse_element(2, s).unwrap())
            .collect();
        let g = LieSubalgebra::from_vectors(2, &vs).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(g.derived().is_empty());
        assert_eq!(g.center().len(), 3);
        assert!(g.is_reductive());
    }

    #[test]
    fn full_algebra_is_semisimple() {
        let d = 10;
        let vs: Vec<_> = (0..d).map(|i| unit(d, i)).collect();
        let g = LieSubalgebra::from_vectors(2, &vs).unwrap();
        assert_eq!(g.derived().len(), 10);
        assert!(g.radical().is_empty());
        assert!(g.is_reductive());
        assert!(g.satisfies_jacobi());
    }

    #[test]
    fn borel_like_is_not_reductive() {
        let vs: Vec<_> = ["L11", "X11"]
            .iter()
            .map(|s| parse_element(2, s).unwrap())
            .collect();
        let g = LieSubalgebra::from_vectors(2, &vs).unwrap();
        assert!(!g.is_reductive());
    }

    #[test]
    fn non_closed_span_rejected() {
        let vs: Vec<_> = ["X11", "P11"]
            .iter()
            .map(|s| parse_element(2, s).unwrap())
            .collect();
        assert!(LieSubalgebra::from_vectors(2, &vs).is_err());
    }
}
