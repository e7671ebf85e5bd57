//! Linearisability and integrability tests, the `E ⊕ F` classification and
//! fingerprint identification.

pub mod ef;
pub mod reduction;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use ef::{
    classify_quartic_pair, ef_basis, ef_coordinates, table_representative, EquationKind,
    PairClassification, QuarticPair,
};
pub use reduction::{permute_coordinates, travelling_wave_reduce, ReductionSample, SampleRecord};

use crate::error::{Error, Result};
use crate::forms::b_omega_lambda;
use crate::grassmann::hessian::subsets;
use crate::grassmann::{
    meets_all_sublagrangians, osculating_containment, partial_legendre, singular_locus_quadratic,
    LagrangePoint, MAEquation,
};
use crate::liesp::{nondegenerate, symmetry_algebra, symmetry_dimension, LieSubalgebra};

pub const DEFAULT_TRIALS: usize = 50;
pub const DEFAULT_SEED: u64 = 2011;
const NONDEGENERACY_SAMPLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Linearisability {
    Linearisable,
    NotLinearisable,
    Degenerate,
}

/// A non-degenerate 3D equation is linearisable iff its symmetry algebra has
/// dimension 9.
pub fn linearisable_3d(eq: &MAEquation, seed: u64) -> Result<Linearisability> {
    if eq.n() != 3 {
        return Err(Error::Precondition("linearisable_3d needs n = 3".into()));
    }
    match nondegenerate(eq, NONDEGENERACY_SAMPLES, seed) {
        Ok(true) => {}
        Ok(false) | Err(Error::NoSamplePoint { .. }) => return Ok(Linearisability::Degenerate),
        Err(e) => return Err(e),
    }
    Ok(if symmetry_dimension(eq)? == 9 {
        Linearisability::Linearisable
    } else {
        Linearisability::NotLinearisable
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Linearisable,
    Integrable,
    NotIntegrable,
    Degenerate,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailingSample {
    pub sample: SampleRecord,
    pub reduced: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticChartEvidence {
    /// 1-based Legendre indices.
    pub chart: Vec<usize>,
    pub singular_dim: usize,
    pub meets_all_sublagrangians: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegrabilityReport {
    pub verdict: Verdict,
    pub samples_run: usize,
    pub nondegenerate_samples: usize,
    pub skipped_degenerate: usize,
    pub skipped_zero: usize,
    pub failing_sample: Option<FailingSample>,
    pub symmetry_dim: usize,
    /// First Legendre chart (1-based) whose origin certifies osculating containment.
    pub osculating_chart: Option<Vec<usize>>,
    pub quadratic_chart: Option<QuadraticChartEvidence>,
}

/// All subsets of `{0..n}`, smallest first.
fn all_charts(n: usize) -> Vec<Vec<usize>> {
    (0..=n).flat_map(|k| subsets(n, k)).collect()
}

/// First chart whose origin lies on the equation with `O_{n−2}` contained.
pub fn osculating_chart(eq: &MAEquation) -> Result<Option<Vec<usize>>> {
    for s in all_charts(eq.n()) {
        let moved = partial_legendre(eq, &s)?;
        if osculating_containment(&moved, &LagrangePoint::origin(eq.n()))? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// A chart in which the equation is purely quadratic, with the singular
/// locus data there. The locus is chart-dependent, so charts where it is
/// four-dimensional and meets every sub-Lagrangian are preferred.
pub fn quadratic_chart(eq: &MAEquation, seed: u64) -> Result<Option<QuadraticChartEvidence>> {
    let mut best: Option<QuadraticChartEvidence> = None;
    let score = |e: &QuadraticChartEvidence| (e.singular_dim == 4, e.meets_all_sublagrangians);
    for s in all_charts(eq.n()) {
        let moved = partial_legendre(eq, &s)?;
        let Ok(locus) = singular_locus_quadratic(&moved) else {
            continue;
        };
        let meets = eq.n() == 4
            && meets_all_sublagrangians(
                &locus.kernel,
                crate::grassmann::singular::DEFAULT_RANK_SAMPLES,
                seed,
            )?;
        let found = QuadraticChartEvidence {
            chart: s.iter().map(|i| i + 1).collect(),
            singular_dim: locus.dim,
            meets_all_sublagrangians: meets,
        };
        if best.as_ref().is_none_or(|b| score(&found) > score(b)) {
            best = Some(found);
        }
        if best.as_ref().is_some_and(|b| score(b) == (true, true)) {
            break;
        }
    }
    Ok(best)
}

/// Integrability of a 4D equation through its travelling-wave reductions.
///
/// A non-degenerate equation is `Linearisable` when its symmetry algebra has
/// dimension 16. Otherwise every sampled non-degenerate reduction must be
/// linearisable; one that is not disproves integrability. Degenerate and
/// vanishing reductions are skipped.
pub fn integrable_4d(eq: &MAEquation, trials: usize, seed: u64) -> Result<IntegrabilityReport> {
    if eq.n() != 4 {
        return Err(Error::Precondition("integrable_4d needs n = 4".into()));
    }
    let mut report = IntegrabilityReport {
        verdict: Verdict::Inconclusive,
        samples_run: 0,
        nondegenerate_samples: 0,
        skipped_degenerate: 0,
        skipped_zero: 0,
        failing_sample: None,
        symmetry_dim: symmetry_dimension(eq)?,
        osculating_chart: None,
        quadratic_chart: quadratic_chart(eq, seed)?,
    };
    let nondeg = match nondegenerate(eq, NONDEGENERACY_SAMPLES, seed) {
        Ok(v) => v,
        Err(Error::NoSamplePoint { .. }) => return Ok(report),
        Err(e) => return Err(e),
    };
    if !nondeg {
        report.verdict = Verdict::Degenerate;
        return Ok(report);
    }
    if report.symmetry_dim == 16 {
        report.osculating_chart = osculating_chart(eq)?.map(|s| s.iter().map(|i| i + 1).collect());
        report.verdict = Verdict::Linearisable;
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<ReductionSample> = (0..trials)
        .map(|t| ReductionSample::random(&mut rng, t % 2 == 1))
        .collect();
    for (t, s) in samples.iter().enumerate() {
        report.samples_run += 1;
        let reduced = match travelling_wave_reduce(eq, s) {
            Ok(r) => r,
            Err(Error::ZeroReduction) => {
                report.skipped_zero += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        match linearisable_3d(&reduced, seed.wrapping_add(t as u64))? {
            Linearisability::Degenerate => report.skipped_degenerate += 1,
            Linearisability::Linearisable => report.nondegenerate_samples += 1,
            Linearisability::NotLinearisable => {
                report.nondegenerate_samples += 1;
                report.failing_sample = Some(FailingSample {
                    sample: s.record(),
                    reduced: reduced.to_string(),
                });
                report.verdict = Verdict::NotIntegrable;
                return Ok(report);
            }
        }
    }
    if report.nondegenerate_samples > 0 {
        report.verdict = Verdict::Integrable;
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub symmetry_dim: usize,
    pub lambda_zero: bool,
    /// Only meaningful when `symmetry_dim = 12`.
    pub reductive: Option<bool>,
    pub nondegenerate: bool,
}

pub fn fingerprint(eq: &MAEquation, seed: u64) -> Result<Fingerprint> {
    let g: LieSubalgebra = symmetry_algebra(eq)?;
    let nondeg = match nondegenerate(eq, NONDEGENERACY_SAMPLES, seed) {
        Ok(v) => v,
        Err(Error::NoSamplePoint { .. }) => false,
        Err(e) => return Err(e),
    };
    Ok(Fingerprint {
        symmetry_dim: g.dim(),
        lambda_zero: b_omega_lambda(eq)?.lambda_zero,
        reductive: (g.dim() == 12).then(|| g.is_reductive()),
        nondegenerate: nondeg,
    })
}

/// Matches the fingerprint against the six normal forms; `None` is Unknown.
pub fn match_fingerprint(f: &Fingerprint) -> Option<EquationKind> {
    use EquationKind::*;
    if !f.nondegenerate {
        return None;
    }
    match (f.symmetry_dim, f.lambda_zero, f.reductive) {
        (16, _, _) => Some(LinearWave),
        (14, true, _) => Some(SecondHeavenly),
        (13, true, _) => Some(ModifiedHeavenly),
        (13, false, _) => Some(FirstHeavenly),
        (12, false, Some(false)) => Some(Husain),
        (12, false, Some(true)) => Some(GeneralHeavenly),
        _ => None,
    }
}

pub fn identify_equation(
    eq: &MAEquation,
    seed: u64,
) -> Result<(Fingerprint, Option<EquationKind>)> {
    if eq.n() != 4 {
        return Err(Error::Precondition("identification needs n = 4".into()));
    }
    let f = fingerprint(eq, seed)?;
    Ok((f, match_fingerprint(&f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;

    #[test]
    fn three_dimensional_examples() {
        assert_eq!(
            linearisable_3d(&builtin("laplace3").unwrap(), 1).unwrap(),
            Linearisability::Linearisable
        );
        assert_eq!(
            linearisable_3d(&builtin("hess3").unwrap(), 1).unwrap(),
            Linearisability::NotLinearisable
        );
    }

    #[test]
    fn identify_examples() {
        let (_, k) = identify_equation(&builtin("modified-heavenly").unwrap(), 1).unwrap();
        assert_eq!(k, Some(EquationKind::ModifiedHeavenly));
        let (f, k) = identify_equation(&builtin("hess4").unwrap(), 1).unwrap();
        assert_eq!(k, None);
        assert_eq!(f.symmetry_dim, 15);
    }
}
