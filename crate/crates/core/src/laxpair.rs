//! Vector fields whose coefficients depend on second derivatives and a
//! spectral parameter, their commutators, and on-variety checks of Lax pairs.
//!
//! The jet ring of dimension `n` has variables `u_ij` (`i ≤ j`), then the
//! third derivatives `u_ijk` (`i ≤ j ≤ k`), then `lam`. Total derivatives act
//! by `D_k u_ij = u_ijk` and `D_k lam = 0`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::matrix::polynomial_det;
use crate::algebra::rational::random_int;
use crate::algebra::sampling::rational_root;
use crate::algebra::{rank_kernel, Polynomial, RatMatrix, Rational, Vars};
use crate::error::{Error, Result};
use crate::expr::{field_vars, parse_field_expression, parse_polynomial};
use crate::grassmann::hessian::{
    hessian_vars, num_vars, subsets, var_index, var_pair, MAX_CHART_DIM,
};

pub const DEFAULT_LAX_TRIALS: usize = 20;
pub const DEFAULT_LAX_SEED: u64 = 2011;
const SAMPLE_ATTEMPTS: usize = 100;
const SAMPLE_BOUND: i64 = 6;

#[derive(Debug)]
pub struct JetRing {
    n: usize,
    vars: Vars,
    triples: Vec<[usize; 3]>,
}

pub fn jet_ring(n: usize) -> Result<Arc<JetRing>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<JetRing>>>> = OnceLock::new();
    if !(1..=MAX_CHART_DIM).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap();
    Ok(guard
        .entry(n)
        .or_insert_with(|| Arc::new(JetRing::build(n)))
        .clone())
}

impl JetRing {
    fn build(n: usize) -> Self {
        let mut names: Vec<String> = hessian_vars(n).iter().cloned().collect();
        let mut triples = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    triples.push([i, j, k]);
                    names.push(format!("u{}{}{}", i + 1, j + 1, k + 1));
                }
            }
        }
        names.push("lam".into());
        JetRing {
            n,
            vars: names.into(),
            triples,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Number of jet variables other than `lam`.
    pub fn num_jets(&self) -> usize {
        num_vars(self.n) + self.triples.len()
    }

    pub fn third_index(&self, i: usize, j: usize, k: usize) -> usize {
        let mut t = [i, j, k];
        t.sort_unstable();
        let pos = self.triples.binary_search(&t).expect("index in range");
        num_vars(self.n) + pos
    }

    pub fn lam_index(&self) -> usize {
        self.num_jets()
    }

    pub fn u(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.vars, var_index(self.n, i, j))
    }

    pub fn u3(&self, i: usize, j: usize, k: usize) -> Polynomial {
        Polynomial::var(&self.vars, self.third_index(i, j, k))
    }

    pub fn lam(&self) -> Polynomial {
        Polynomial::var(&self.vars, self.lam_index())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(&self.vars, c)
    }

    fn has_third_order(&self, p: &Polynomial) -> bool {
        let r = num_vars(self.n)..self.lam_index();
        p.support_vars().iter().any(|v| r.contains(v))
    }

    /// `D_k p` for `p` free of third derivatives.
    pub fn total_derivative(&self, p: &Polynomial, k: usize) -> Result<Polynomial> {
        if self.has_third_order(p) {
            return Err(Error::Unsupported(
                "total derivative of a third-order coefficient".into(),
            ));
        }
        let mut out = Polynomial::zero(&self.vars);
        for v in p.support_vars() {
            if v < num_vars(self.n) {
                let (i, j) = var_pair(self.n, v);
                out += &(&p.diff(v) * &self.u3(i, j, k));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaxField {
    n: usize,
    components: Vec<Polynomial>,
}

impl LaxField {
    /// Components are re-embedded into the jet ring by variable name.
    pub fn new(n: usize, components: Vec<Polynomial>) -> Result<Self> {
        let ring = jet_ring(n)?;
        if components.len() != n {
            return Err(Error::Shape(format!(
                "a field in dimension {n} needs {n} components, got {}",
                components.len()
            )));
        }
        let components = components
            .iter()
            .map(|c| {
                if c.vars().iter().all(|v| ring.vars.contains(v)) {
                    Ok(c.rename_into(&ring.vars))
                } else {
                    Err(Error::Shape("component outside the jet ring".into()))
                }
            })
            .collect::<Result<_>>()?;
        Ok(LaxField { n, components })
    }

    /// Parses `c1*d1 + … + cn*dn`; every term must carry exactly one marker.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let p = parse_field_expression(n, text)?;
        let vars = field_vars(n);
        let first_marker = vars.len() - n;
        for (m, _) in p.terms() {
            let markers: u32 = m.0[first_marker..].iter().map(|&e| e as u32).sum();
            if markers != 1 {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: "each term needs exactly one basis marker d1..dn".into(),
                });
            }
        }
        let ring = jet_ring(n)?;
        let components = (0..n)
            .map(|k| {
                let c = p.coeffs_in(first_marker + k);
                c.get(1)
                    .map(|c| c.rename_into(&ring.vars))
                    .unwrap_or_else(|| Polynomial::zero(&ring.vars))
            })
            .collect();
        Ok(LaxField { n, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> LaxField {
        LaxField {
            n: self.n,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &LaxField) -> LaxField {
        assert_eq!(self.n, other.n);
        LaxField {
            n: self.n,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::fmt::Display for LaxField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*d{}", k + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `[X, Y]_i = Σ_j (X_j D_j Y_i − Y_j D_j X_i)`.
pub fn commutator(x: &LaxField, y: &LaxField) -> Result<LaxField> {
    if x.n != y.n {
        return Err(Error::Shape("fields of different dimensions".into()));
    }
    let ring = jet_ring(x.n)?;
    let n = x.n;
    let dx: Vec<Vec<Polynomial>> = (0..n)
        .map(|j| {
            x.components
                .iter()
                .map(|c| ring.total_derivative(c, j))
                .collect()
        })
        .collect::<Result<_>>()?;
    let dy: Vec<Vec<Polynomial>> = (0..n)
        .map(|j| {
            y.components
                .iter()
                .map(|c| ring.total_derivative(c, j))
                .collect()
        })
        .collect::<Result<_>>()?;
    let components = (0..n)
        .map(|i| {
            let mut acc = Polynomial::zero(&ring.vars);
            for j in 0..n {
                acc += &(&x.components[j] * &dy[j][i]);
                acc -= &(&y.components[j] * &dx[j][i]);
            }
            acc
        })
        .collect();
    Ok(LaxField { n, components })
}

/// Dimension `n` of the Hessian ring a polynomial lives in.
fn chart_dim(eq: &Polynomial) -> Result<usize> {
    (1..=MAX_CHART_DIM)
        .find(|&n| hessian_vars(n).as_ref() == eq.vars().as_ref())
        .ok_or_else(|| Error::Shape("equation must be a polynomial in u11..unn".into()))
}

/// Values of every jet variable except `lam` on the prolonged variety.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoint {
    pub n: usize,
    pub values: Vec<Rational>,
}

impl JetPoint {
    fn assignment(&self) -> Vec<Option<Rational>> {
        self.values
            .iter()
            .cloned()
            .map(Some)
            .chain(std::iter::once(None))
            .collect()
    }

    /// `(name, value)` pairs with nonzero value.
    pub fn render(&self) -> Vec<(String, String)> {
        let ring = jet_ring(self.n).expect("valid dimension");
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (ring.vars[k].clone(), v.to_string()))
            .collect()
    }
}

/// A point with `F = 0` and `D_k F = 0` for all `k`.
///
/// Second derivatives are drawn at random and the lexicographically first
/// variable that admits a rational solution is solved for. Third derivatives
/// are a random element of the kernel of the `n` prolonged equations.
pub fn sample_on_variety(eq: &Polynomial, rng: &mut ChaCha8Rng) -> Result<JetPoint> {
    let n = chart_dim(eq)?;
    let ring = jet_ring(n)?;
    let m = num_vars(n);
    for _ in 0..SAMPLE_ATTEMPTS {
        let mut vals: Vec<Rational> = (0..m).map(|_| random_int(rng, SAMPLE_BOUND)).collect();
        if !eq.eval(&vals).is_zero() {
            let solved = (0..m).find_map(|v| {
                let assign: Vec<Option<Rational>> = vals
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (i != v).then(|| x.clone()))
                    .collect();
                let coeffs: Vec<Rational> = eq
                    .eval_partial(&assign)
                    .coeffs_in(v)
                    .iter()
                    .map(Polynomial::constant_term)
                    .collect();
                rational_root(&coeffs).map(|r| (v, r))
            });
            let Some((v, r)) = solved else { continue };
            vals[v] = r;
        }
        let t = ring.triples.len();
        let mut rows = vec![vec![Rational::zero(); t]; n];
        for (v, row_entry) in (0..m).map(|v| (v, eq.diff(v).eval(&vals))) {
            if row_entry.is_zero() {
                continue;
            }
            let (a, b) = var_pair(n, v);
            for (k, row) in rows.iter_mut().enumerate() {
                row[ring.third_index(a, b, k) - m] += &row_entry;
            }
        }
        let (_, kernel) = rank_kernel(&RatMatrix::from_rows(rows));
        let mut third = vec![Rational::zero(); t];
        for basis in &kernel {
            let c = random_int(rng, SAMPLE_BOUND);
            for (x, b) in third.iter_mut().zip(basis) {
                *x += &c * b;
            }
        }
        vals.extend(third);
        return Ok(JetPoint { n, values: vals });
    }
    Err(Error::NoSamplePoint {
        attempts: SAMPLE_ATTEMPTS,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LaxMode {
    /// `[X1, X2] = 0` on the variety.
    Strict,
    /// `[X1, X2] ∈ span{X1, X2}` on the variety.
    ModSpan,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaxWitness {
    pub trial: usize,
    pub point: Vec<(String, String)>,
    /// The nonvanishing quantity, as a polynomial in `lam`.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaxVerdict {
    pub passed: bool,
    pub mode: LaxMode,
    pub trials_run: usize,
    pub witness: Option<LaxWitness>,
}

fn residual(rows: &[Vec<Polynomial>], mode: LaxMode) -> Option<String> {
    match mode {
        LaxMode::Strict => rows[2]
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("component {}: {c}", i + 1)),
        LaxMode::ModSpan => {
            let n = rows[0].len();
            subsets(n, 3).into_iter().find_map(|cols| {
                let minor: Vec<Vec<Polynomial>> = rows
                    .iter()
                    .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                    .collect();
                let d = polynomial_det(&minor);
                let label: Vec<String> = cols.iter().map(|c| (c + 1).to_string()).collect();
                (!d.is_zero()).then(|| format!("minor ({}): {d}", label.join(",")))
            })
        }
    }
}

/// Checks the Lax condition at `trials` seeded points of the variety. The
/// zero test is exact in `lam`.
pub fn verify_lax(
    x1: &LaxField,
    x2: &LaxField,
    eq: &Polynomial,
    mode: LaxMode,
    trials: usize,
    seed: u64,
) -> Result<LaxVerdict> {
    let n = chart_dim(eq)?;
    if x1.n != n || x2.n != n {
        return Err(Error::Shape(
            "fields and equation differ in dimension".into(),
        ));
    }
    let bracket = commutator(x1, x2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<JetPoint> = (0..trials)
        .map(|_| sample_on_variety(eq, &mut rng))
        .collect::<Result<_>>()?;
    for (t, p) in points.iter().enumerate() {
        let assign = p.assignment();
        let rows: Vec<Vec<Polynomial>> = [x1, x2, &bracket]
            .iter()
            .map(|f| {
                f.components
                    .iter()
                    .map(|c| c.eval_partial(&assign))
                    .collect()
            })
            .collect();
        if let Some(residual) = residual(&rows, mode) {
            return Ok(LaxVerdict {
                passed: false,
                mode,
                trials_run: t + 1,
                witness: Some(LaxWitness {
                    trial: t,
                    point: p.render(),
                    residual,
                }),
            });
        }
    }
    Ok(LaxVerdict {
        passed: true,
        mode,
        trials_run: trials,
        witness: None,
    })
}

/// Reduction `u(x) = w(Rx) + Q(x, x)` with `R` of shape `m × n`: returns the
/// reduced pair and equation in dimension `m`. `∂_i` becomes `Σ_a R_ai ∂_a`.
pub fn reduce_lax(
    x1: &LaxField,
    x2: &LaxField,
    eq: &Polynomial,
    r: &RatMatrix,
    q: &RatMatrix,
) -> Result<(LaxField, LaxField, Polynomial)> {
    let n = chart_dim(eq)?;
    let m = r.rows();
    if x1.n != n || x2.n != n || r.cols() != n {
        return Err(Error::Shape("reduction matrix must be m x n".into()));
    }
    if q.rows() != n || q.cols() != n || !q.is_symmetric() {
        return Err(Error::Shape("Q must be a symmetric n x n matrix".into()));
    }
    let source = jet_ring(n)?;
    let target = jet_ring(m)?;
    let second = |vars: &Vars, u: &dyn Fn(usize, usize) -> Polynomial| -> Vec<Polynomial> {
        (0..num_vars(n))
            .map(|idx| {
                let (i, j) = var_pair(n, idx);
                let mut acc =
                    Polynomial::constant(vars, &q[(i, j)] * Rational::from_integer(2.into()));
                for a in 0..m {
                    for b in 0..m {
                        let c = &r[(a, i)] * &r[(b, j)];
                        if !c.is_zero() {
                            acc += &u(a, b).scale(&c);
                        }
                    }
                }
                acc
            })
            .collect()
    };
    let hv = hessian_vars(m);
    let eq_images = second(&hv, &|a, b| Polynomial::var(&hv, var_index(m, a, b)));
    let reduced_eq = eq.substitute(&eq_images, &hv);
    let mut images = second(&target.vars, &|a, b| target.u(a, b));
    for _ in 0..source.triples.len() {
        images.push(Polynomial::zero(&target.vars));
    }
    images.push(target.lam());
    let reduce = |f: &LaxField| -> Result<LaxField> {
        if f.components.iter().any(|c| source.has_third_order(c)) {
            return Err(Error::Unsupported(
                "reduction of third-order coefficients".into(),
            ));
        }
        let moved: Vec<Polynomial> = f
            .components
            .iter()
            .map(|c| c.substitute(&images, &target.vars))
            .collect();
        let components = (0..m)
            .map(|a| {
                let mut acc = Polynomial::zero(&target.vars);
                for (i, c) in moved.iter().enumerate() {
                    if !r[(a, i)].is_zero() {
                        acc += &c.scale(&r[(a, i)]);
                    }
                }
                acc
            })
            .collect();
        Ok(LaxField { n: m, components })
    };
    Ok((reduce(x1)?, reduce(x2)?, reduced_eq))
}

/// A known Lax pair with its equation `F = 0`.
#[derive(Clone, Copy, Debug)]
pub struct KnownPair {
    pub name: &'static str,
    pub n: usize,
    pub equation: &'static str,
    pub x1: &'static str,
    pub x2: &'static str,
    pub mode: LaxMode,
}

pub const KNOWN_PAIRS: [KnownPair; 6] = [
    KnownPair {
        name: "six-dimensional",
        n: 6,
        equation: "u15 + u26 + u13*u24 - u14*u23",
        x1: "d6 + u13*d4 - u14*d3 + lam*d1",
        x2: "d5 - u23*d4 + u24*d3 - lam*d2",
        mode: LaxMode::Strict,
    },
    KnownPair {
        name: "second-heavenly",
        n: 4,
        equation: "u13 + u24 + u11*u22 - u12^2",
        x1: "d4 + u11*d2 - u12*d1 + lam*d1",
        x2: "d3 - u12*d2 + u22*d1 - lam*d2",
        mode: LaxMode::Strict,
    },
    KnownPair {
        name: "modified-heavenly",
        n: 4,
        equation: "u13 - u12*u44 + u14*u24",
        x1: "u14*d2 - u12*d4 + lam*d1",
        x2: "-d3 + u44*d2 - u24*d4 + lam*d4",
        mode: LaxMode::Strict,
    },
    KnownPair {
        name: "first-heavenly",
        n: 4,
        equation: "u13*u24 - u14*u23 - 1",
        x1: "u13*d4 - u14*d3 + lam*d1",
        x2: "-u23*d4 + u24*d3 - lam*d2",
        mode: LaxMode::Strict,
    },
    KnownPair {
        name: "husain",
        n: 4,
        equation: "u11 + u22 + u13*u24 - u14*u23",
        x1: "d2 + u13*d4 - u14*d3 + lam*d1",
        x2: "d1 - u23*d4 + u24*d3 - lam*d2",
        mode: LaxMode::Strict,
    },
    // α, β, γ = 1, 2, −3
    KnownPair {
        name: "general-heavenly",
        n: 4,
        equation: "u12*u34 + 2*u13*u24 - 3*u14*u23",
        x1: "u34*d1 - u13*d4 - 3*lam*(u34*d1 - u14*d3)",
        x2: "u23*d4 - u34*d2 + 2*lam*(u34*d2 - u24*d3)",
        mode: LaxMode::ModSpan,
    },
];

impl KnownPair {
    pub fn fields(&self) -> Result<(LaxField, LaxField)> {
        Ok((
            LaxField::parse(self.n, self.x1)?,
            LaxField::parse(self.n, self.x2)?,
        ))
    }

    pub fn polynomial(&self) -> Result<Polynomial> {
        parse_polynomial(self.n, self.equation)
    }
}

pub fn known_pair(name: &str) -> Result<KnownPair> {
    KNOWN_PAIRS
        .iter()
        .find(|p| p.name == name)
        .copied()
        .ok_or_else(|| Error::Unsupported(format!("no Lax pair named {name:?}")))
}

/// Reduction of the six-dimensional pair; see [`reduce_lax`].
pub fn reduce_6d_lax(r: &RatMatrix, q: &RatMatrix) -> Result<(LaxField, LaxField, Polynomial)> {
    let six = known_pair("six-dimensional")?;
    let (x1, x2) = six.fields()?;
    reduce_lax(&x1, &x2, &six.polynomial()?, r, q)
}
