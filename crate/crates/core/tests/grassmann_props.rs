use lagma::algebra::matrix::rational_det;
use lagma::algebra::rational::int;
use lagma::algebra::{RatMatrix, Rational};
use lagma::grassmann::hessian::{matrix_from_values, point_values, subsets};
use lagma::grassmann::legendre::legendre_point;
use lagma::grassmann::{
    minor_basis, num_vars, partial_legendre, plucker_eval, singular_locus_quadratic, translate,
    LagrangePoint, MAEquation,
};
use lagma::liesp::generators;
use num_traits::Zero;
use proptest::prelude::*;

fn equation(n: usize) -> impl Strategy<Value = MAEquation> {
    let len = minor_basis(n).unwrap().len();
    prop::collection::vec((0..len, -3i64..=3), 1..5).prop_filter_map(
        "zero equation",
        move |terms| {
            let mut c = vec![Rational::zero(); len];
            for (k, v) in terms {
                c[k] += int(v);
            }
            MAEquation::from_coords(n, c).ok()
        },
    )
}

fn symmetric(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-3i64..=3, num_vars(n))
        .prop_map(move |v| matrix_from_values(n, &v.into_iter().map(int).collect::<Vec<_>>()))
}

fn all_charts(n: usize) -> Vec<Vec<usize>> {
    (0..=n).flat_map(|k| subsets(n, k)).collect()
}

fn s_block(u: &RatMatrix, s: &[usize]) -> RatMatrix {
    RatMatrix::from_rows(
        s.iter()
            .map(|&i| s.iter().map(|&j| u[(i, j)].clone()).collect())
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn legendre_is_an_involution_3(eq in equation(3)) {
        for s in all_charts(3) {
            let back = partial_legendre(&partial_legendre(&eq, &s).unwrap(), &s).unwrap();
            prop_assert!(back.proportional_to(&eq), "S = {:?}", s);
        }
    }

    #[test]
    fn legendre_is_an_involution_4(eq in equation(4)) {
        for s in all_charts(4) {
            let back = partial_legendre(&partial_legendre(&eq, &s).unwrap(), &s).unwrap();
            prop_assert!(back.proportional_to(&eq), "S = {:?}", s);
        }
    }

    /// The transformed equation agrees with `det A · F(Ũ)` where `Ũ` comes
    /// from the block formulas, up to one constant per chart.
    #[test]
    fn legendre_matches_block_formulas(eq in equation(3), points in prop::collection::vec(symmetric(3), 4)) {
        for s in all_charts(3).into_iter().skip(1) {
            let moved = partial_legendre(&eq, &s).unwrap();
            let mut ratio: Option<Rational> = None;
            for u in &points {
                let delta = rational_det(&s_block(u, &s));
                let Some(ut) = legendre_point(u, &s) else { continue };
                let expected = &delta * &eq.poly().eval(&point_values(&ut));
                let got = moved.poly().eval(&point_values(u));
                if expected.is_zero() {
                    prop_assert!(got.is_zero());
                    continue;
                }
                let r = &got / &expected;
                prop_assert!(!r.is_zero());
                match &ratio {
                    None => ratio = Some(r),
                    Some(c) => prop_assert_eq!(c, &r),
                }
            }
        }
    }

    #[test]
    fn translations_compose(eq in equation(3), a in symmetric(3), b in symmetric(3)) {
        let stepwise = translate(&translate(&eq, &a).unwrap(), &b).unwrap();
        prop_assert_eq!(stepwise, translate(&eq, &a.add(&b)).unwrap());
    }

    #[test]
    fn translation_shifts_the_argument(eq in equation(4), a in symmetric(4), u in symmetric(4)) {
        let moved = translate(&eq, &a).unwrap();
        prop_assert_eq!(
            moved.poly().eval(&point_values(&u)),
            eq.poly().eval(&point_values(&u.add(&a)))
        );
    }

    #[test]
    fn plucker_pairing_evaluates(eq in equation(3), u0 in symmetric(3)) {
        let basis = eq.basis();
        let p = plucker_eval(&LagrangePoint::affine(u0.clone()).unwrap(), &basis).unwrap();
        let pairing = eq.coords().iter().zip(&p).fold(Rational::zero(), |acc, (c, x)| acc + c * x);
        let value = eq.poly().eval(&point_values(&u0));
        prop_assert_eq!(&pairing, &value);
        let recentred = translate(&eq, &u0).unwrap();
        let constant = &recentred.coords()[basis.degree_range(0).start];
        prop_assert_eq!(constant.is_zero(), value.is_zero());
    }

    #[test]
    fn singular_directions_are_null(c in prop::collection::vec(-3i64..=3, 20)) {
        let basis = minor_basis(4).unwrap();
        let mut coords = vec![Rational::zero(); basis.len()];
        for (k, v) in basis.degree_range(2).zip(c) {
            coords[k] = int(v);
        }
        prop_assume!(coords.iter().any(|x| !x.is_zero()));
        let eq = MAEquation::from_coords(4, coords).unwrap();
        let locus = singular_locus_quadratic(&eq).unwrap();
        prop_assert_eq!(locus.dim, locus.kernel.len());
        for d in &locus.kernel {
            prop_assert!(eq.poly().eval(&point_values(d)).is_zero());
        }
    }
}

#[test]
fn generators_preserve_the_minor_span() {
    for n in 2..=4 {
        let basis = minor_basis(n).unwrap();
        let gens = generators(n);
        assert_eq!(gens.len(), n * (2 * n + 1));
        for g in &gens {
            for m in &basis.polys {
                assert!(
                    basis.decompose(&g.apply(m)).is_ok(),
                    "n = {n}, {:?}",
                    g.label
                );
            }
        }
    }
}

#[test]
fn singular_locus_rejects_non_quadratic() {
    let eq = MAEquation::new(
        3,
        &lagma::grassmann::hessian::minor(3, &[0, 1, 2], &[0, 1, 2]),
    )
    .unwrap();
    assert!(singular_locus_quadratic(&eq).is_err());
}
