//! The sp(2n) action on equations: symmetry algebras, reductivity and the
//! non-degeneracy test.

pub mod generators;
pub mod subalgebra;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use generators::{
    action_table, generator_action_matrix, generators, labels, parse_element, render_element,
    ActionTable, Kind, Label, SpGenerator,
};
pub use subalgebra::LieSubalgebra;

use crate::algebra::rational::{frac, int};
use crate::algebra::{random_zero, rank_kernel, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::grassmann::hessian::{num_vars, var_index};
use crate::grassmann::MAEquation;

pub const DEFAULT_SAMPLES: usize = 8;
pub const SAMPLE_ATTEMPTS: usize = 100;
const SAMPLE_BOUND: i64 = 6;

/// Solutions `(v, μ)` of `A_v c = μ c`, projected to `v`.
fn stabilizer_vectors(eq: &MAEquation) -> Result<Vec<Vec<Rational>>> {
    let table = action_table(eq.n())?;
    let c = eq.coords();
    let mut columns: Vec<Vec<Rational>> = table.matrices.iter().map(|m| m.mul_vec(c)).collect();
    columns.push(c.iter().map(|x| -x).collect());
    let system = RatMatrix::from_columns(c.len(), &columns);
    let (_, kernel) = rank_kernel(&system);
    let d = table.dim();
    Ok(kernel.into_iter().map(|k| k[..d].to_vec()).collect())
}

/// Stabilizer of the hyperplane: all `v` with `ρ(v)F = μF` for some scalar `μ`.
pub fn symmetry_algebra(eq: &MAEquation) -> Result<LieSubalgebra> {
    LieSubalgebra::from_vectors(eq.n(), &stabilizer_vectors(eq)?)
}

/// Dimension of the stabilizer, without structure constants.
pub fn symmetry_dimension(eq: &MAEquation) -> Result<usize> {
    Ok(stabilizer_vectors(eq)?.len())
}

/// Whether `ρ(v)F = μF` for some `μ`.
pub fn preserves(eq: &MAEquation, v: &[Rational]) -> Result<bool> {
    let table = action_table(eq.n())?;
    let image = table.combine(v).mul_vec(eq.coords());
    let c = eq.coords();
    let k = c
        .iter()
        .position(|x| !x.is_zero())
        .expect("nonzero equation");
    let mu = &image[k] / &c[k];
    Ok(image.iter().zip(c).all(|(a, b)| *a == &mu * b))
}

/// Symbol matrix `Q` at a point: `Q_aa = ∂F/∂u_aa`, `Q_ab = ½ ∂F/∂u_ab`.
pub fn symbol_matrix(eq: &MAEquation, point: &[Rational]) -> RatMatrix {
    let n = eq.n();
    let mut q = RatMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let d = eq.poly().diff(var_index(n, a, b)).eval(point);
            let v = if a == b { d } else { d * frac(1, 2) };
            q[(a, b)] = v.clone();
            q[(b, a)] = v;
        }
    }
    q
}

/// Samples `samples` rational points of `{F = 0}`; true if the symbol has
/// rank at least 3 at one of them.
pub fn nondegenerate(eq: &MAEquation, samples: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = 0;
    for _ in 0..samples.max(1) {
        let Some(p) = random_zero(eq.poly(), &mut rng, SAMPLE_BOUND, SAMPLE_ATTEMPTS) else {
            continue;
        };
        found += 1;
        if symbol_matrix(eq, &p).rank() >= 3 {
            return Ok(true);
        }
    }
    if found == 0 {
        return Err(Error::NoSamplePoint {
            attempts: SAMPLE_ATTEMPTS * samples.max(1),
        });
    }
    Ok(false)
}

/// Summary used by reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub dim: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub radical_dim: usize,
    pub reductive: bool,
    pub basis: Vec<String>,
}

impl SymmetryReport {
    pub fn new(g: &LieSubalgebra) -> Self {
        let center_dim = g.center().len();
        let radical_dim = g.radical().len();
        SymmetryReport {
            dim: g.dim(),
            center_dim,
            derived_dim: g.derived().len(),
            radical_dim,
            reductive: center_dim == radical_dim,
            basis: (0..g.dim()).map(|k| g.render(k)).collect(),
        }
    }
}

/// Point of `{F = 0}` used as a sample, exposed for callers that need one.
pub fn sample_point(eq: &MAEquation, seed: u64) -> Result<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_zero(eq.poly(), &mut rng, SAMPLE_BOUND, SAMPLE_ATTEMPTS).ok_or(Error::NoSamplePoint {
        attempts: SAMPLE_ATTEMPTS,
    })
}

/// The point with the given chart coordinates set, others zero.
pub fn point_with(n: usize, entries: &[((usize, usize), i64)]) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); num_vars(n)];
    for &((i, j), v) in entries {
        p[var_index(n, i, j)] = int(v);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;
    use crate::grassmann::hessian::{hessian_vars, minor, u};

    fn first_heavenly() -> MAEquation {
        let p = &(&(&u(4, 0, 2) * &u(4, 1, 3)) - &(&u(4, 0, 3) * &u(4, 1, 2)))
            - &Polynomial::one(&hessian_vars(4));
        MAEquation::new(4, &p).unwrap()
    }

    #[test]
    fn first_heavenly_symbol_at_sample() {
        let eq = first_heavenly();
        let p = point_with(4, &[((0, 2), 1), ((1, 3), 1)]);
        assert!(eq.poly().eval(&p).is_zero());
        assert_eq!(symbol_matrix(&eq, &p).rank(), 4);
        assert!(nondegenerate(&eq, 4, 1).unwrap());
    }

    #[test]
    fn binary_form_is_degenerate() {
        let eq = MAEquation::new(4, &minor(4, &[0, 1], &[0, 1])).unwrap();
        assert!(!nondegenerate(&eq, 8, 2).unwrap());
    }

    #[test]
    fn laplace_is_nondegenerate() {
        let lap = (0..4).fold(Polynomial::zero(&hessian_vars(4)), |acc, i| {
            &acc + &u(4, i, i)
        });
        let eq = MAEquation::new(4, &lap).unwrap();
        assert!(nondegenerate(&eq, 2, 3).unwrap());
    }

    #[test]
    fn first_heavenly_symmetry_dim() {
        let g = symmetry_algebra(&first_heavenly()).unwrap();
        assert_eq!(g.dim(), 13);
        assert!(g.satisfies_jacobi());
        for s in [
            "X11",
            "X12",
            "X22",
            "X33",
            "X34",
            "X44",
            "L12",
            "L21",
            "L34",
            "L43",
            "L11-L22",
            "L33-L44",
            "L11+L22-L33-L44",
        ] {
            let v = parse_element(4, s).unwrap();
            assert!(preserves(&first_heavenly(), &v).unwrap(), "{s}");
            assert!(g.contains(&v), "{s}");
        }
    }
}
