//! Binary quartics as the five-dimensional SL(2) module.
//!
//! A quartic is stored by plain coefficients `a0..a4` of
//! `p(t) = a4 t⁴ + a3 t³ + a2 t² + a1 t + a0`. A drop in degree means roots at
//! infinity: `p` has a root of multiplicity `4 - deg p` at `∞`.
//!
//! The invariants use the binomial normalisation
//! `p = a t⁴ + 4b t³ + 6c t² + 4d t + e`, giving
//! `I = ae − 4bd + 3c²`, `J = ace + 2bcd − ad² − b²e − c³` and
//! discriminant `I³ − 27 J²`. Four distinct roots with harmonic cross-ratio
//! are exactly `J = 0` with nonzero discriminant.

use num_traits::{One, Zero};

use super::rational::{frac, int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuartic {
    /// `coeffs[i]` multiplies `t^i`.
    pub coeffs: [Rational; 5],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticInvariants {
    pub i: Rational,
    pub j: Rational,
    pub discriminant: Rational,
}

impl QuarticInvariants {
    pub fn is_harmonic(&self) -> bool {
        self.j.is_zero() && !self.discriminant.is_zero()
    }
}

impl BinaryQuartic {
    pub fn new(coeffs: [Rational; 5]) -> Self {
        BinaryQuartic { coeffs }
    }

    pub fn from_ints(c: [i64; 5]) -> Self {
        BinaryQuartic { coeffs: c.map(int) }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 5])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Degree as a polynomial in `t`; `None` for the zero quartic.
    pub fn degree(&self) -> Option<usize> {
        (0..5).rev().find(|&i| !self.coeffs[i].is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BinaryQuartic {
            coeffs: self.coeffs.clone().map(|a| a * c),
        }
    }

    /// Weight-4 action `(ct + d)^4 p((at + b)/(ct + d))` of `[[a, b], [c, d]]`.
    pub fn act(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Self {
        // (at + b)^i (ct + d)^(4 - i), expanded coefficientwise.
        let lin_num = [b.clone(), a.clone()];
        let lin_den = [d.clone(), c.clone()];
        let mut out = vec![Rational::zero(); 5];
        for i in 0..5 {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let mut term = vec![self.coeffs[i].clone()];
            for _ in 0..i {
                term = upoly_mul(&term, &lin_num);
            }
            for _ in i..4 {
                term = upoly_mul(&term, &lin_den);
            }
            for (k, v) in term.into_iter().enumerate() {
                out[k] += v;
            }
        }
        BinaryQuartic {
            coeffs: [
                out[0].clone(),
                out[1].clone(),
                out[2].clone(),
                out[3].clone(),
                out[4].clone(),
            ],
        }
    }

    /// Binomial-weight coordinates `(a, b, c, d, e)`.
    fn binomial_form(&self) -> [Rational; 5] {
        let c = &self.coeffs;
        [
            c[4].clone(),
            &c[3] * frac(1, 4),
            &c[2] * frac(1, 6),
            &c[1] * frac(1, 4),
            c[0].clone(),
        ]
    }

    pub fn invariants(&self) -> QuarticInvariants {
        let [a, b, c, d, e] = self.binomial_form();
        let i = &a * &e - int(4) * &b * &d + int(3) * &c * &c;
        let j = &a * &c * &e + int(2) * &b * &c * &d - &a * &d * &d - &b * &b * &e - &c * &c * &c;
        let discriminant = &i * &i * &i - int(27) * &j * &j;
        QuarticInvariants { i, j, discriminant }
    }

    /// Root multiplicities over ℂ, including the root at infinity, sorted
    /// descending. Uses a squarefree (gcd-tower) decomposition, no root finding.
    pub fn multiplicity_pattern(&self) -> Result<Vec<usize>> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        let mut pattern = Vec::new();
        if deg < 4 {
            pattern.push(4 - deg);
        }
        let p: Vec<Rational> = self.coeffs[..=deg].to_vec();
        for (mult, factor) in squarefree_decomposition(&p) {
            let d = upoly_degree(&factor);
            for _ in 0..d {
                pattern.push(mult);
            }
        }
        pattern.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert_eq!(pattern.iter().sum::<usize>(), 4);
        Ok(pattern)
    }
}

pub fn multiplicity_pattern(q: &BinaryQuartic) -> Result<Vec<usize>> {
    q.multiplicity_pattern()
}

pub fn quartic_invariants(q: &BinaryQuartic) -> QuarticInvariants {
    q.invariants()
}

// Dense univariate helpers, coefficient vectors low → high.

fn upoly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn upoly_degree(p: &[Rational]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn upoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn upoly_derivative(p: &[Rational]) -> Vec<Rational> {
    let mut d: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * int(i as i64))
        .collect();
    upoly_trim(&mut d);
    d
}

fn upoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    upoly_trim(&mut r);
    let mut b = b.to_vec();
    upoly_trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let coef = &r[r.len() - 1] / &lead;
        for (k, bv) in b.iter().enumerate() {
            r[shift + k] -= &coef * bv;
        }
        q[shift] = coef;
        r.pop();
        upoly_trim(&mut r);
    }
    upoly_trim(&mut q);
    (q, r)
}

fn upoly_monic(p: &[Rational]) -> Vec<Rational> {
    let mut p = p.to_vec();
    upoly_trim(&mut p);
    if let Some(l) = p.last().cloned() {
        for c in p.iter_mut() {
            *c /= &l;
        }
    }
    p
}

fn upoly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    upoly_trim(&mut x);
    upoly_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = upoly_divrem(&x, &y);
        x = y;
        y = r;
    }
    upoly_monic(&x)
}

/// Yun's algorithm: `p = c · Π f_i^i` with squarefree, pairwise coprime `f_i`.
/// Returns `(i, f_i)` for the nonconstant factors.
fn squarefree_decomposition(p: &[Rational]) -> Vec<(usize, Vec<Rational>)> {
    let mut out = Vec::new();
    let dp = upoly_derivative(p);
    let mut a = upoly_gcd(p, &dp);
    let mut b = upoly_divrem(p, &a).0;
    let mut c = upoly_divrem(&dp, &a).0;
    let mut d = sub(&c, &upoly_derivative(&b));
    let mut i = 1;
    while b.len() > 1 {
        a = upoly_gcd(&b, &d);
        if upoly_degree(&a) > 0 {
            out.push((i, a.clone()));
        }
        b = upoly_divrem(&b, &a).0;
        c = upoly_divrem(&d, &a).0;
        d = sub(&c, &upoly_derivative(&b));
        i += 1;
    }
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(k).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    upoly_trim(&mut out);
    out
}

impl std::fmt::Display for BinaryQuartic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        for i in (0..5).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}
