use lagma::algebra::rational::int;
use lagma::algebra::{BinaryQuartic, RatMatrix, Rational};
use lagma::builtins::builtin;
use lagma::expr::parse_polynomial;
use lagma::grassmann::legendre::legendre_matrix;
use lagma::grassmann::{minor_basis, partial_legendre, MAEquation};
use lagma::integrability::{
    classify_quartic_pair, ef_basis, ef_coordinates, integrable_4d, linearisable_3d,
    table_representative, travelling_wave_reduce, EquationKind, Linearisability, QuarticPair,
    ReductionSample, Verdict,
};
use lagma::liesp::symmetry_dimension;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn eq4(text: &str) -> MAEquation {
    MAEquation::new(4, &parse_polynomial(4, text).unwrap()).unwrap()
}

fn pair(p: [i64; 5], q: [i64; 5]) -> QuarticPair {
    QuarticPair::new(BinaryQuartic::from_ints(p), BinaryQuartic::from_ints(q))
}

#[test]
fn first_heavenly_reduction_closed_form() {
    let eq = builtin("first-heavenly").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let s = ReductionSample::random(&mut rng, false);
        let s = ReductionSample::new(s.k, RatMatrix::zeros(4, 4));
        let [a, b, _] = &s.k;
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let expected = parse_polynomial(
            3,
            &format!("({a})*(u12*u13 - u11*u23) + ({b})*(u13*u22 - u12*u23) - 1"),
        )
        .unwrap();
        assert_eq!(
            travelling_wave_reduce(&eq, &s).unwrap().poly(),
            &expected,
            "{:?}",
            s.k
        );
    }
}

#[test]
fn sampled_reductions_are_sound() {
    for name in [
        "second-heavenly",
        "modified-heavenly",
        "first-heavenly",
        "husain",
        "general-heavenly",
    ] {
        let r = integrable_4d(&builtin(name).unwrap(), 50, 2011).unwrap();
        assert_eq!(r.verdict, Verdict::Integrable, "{name}: {r:?}");
        assert!(r.failing_sample.is_none());
        assert!(r.nondegenerate_samples > 0);
    }
    let r = integrable_4d(&builtin("linear-wave").unwrap(), 50, 2011).unwrap();
    assert_eq!(r.verdict, Verdict::Linearisable);
    let r = integrable_4d(&builtin("hess4").unwrap(), 10, 2011).unwrap();
    assert_eq!(r.verdict, Verdict::NotIntegrable);
    assert!(r.samples_run <= 10);
    let q = r.quadratic_chart.unwrap();
    assert_eq!((q.singular_dim, q.meets_all_sublagrangians), (4, false));
}

fn quartic() -> impl Strategy<Value = BinaryQuartic> {
    prop_oneof![
        1 => Just(BinaryQuartic::from_ints([0; 5])),
        2 => prop::array::uniform5(-3i64..=3).prop_map(BinaryQuartic::from_ints),
        4 => prop::collection::vec((-2i64..=2, -2i64..=2), 4).prop_map(|f| {
            let mut c = vec![int(1)];
            for (r, s) in f {
                let (r, s) = if r == 0 && s == 0 { (0, 1) } else { (r, s) };
                let mut next = vec![Rational::zero(); c.len() + 1];
                for (i, x) in c.iter().enumerate() {
                    next[i] += x * int(s);
                    next[i + 1] += x * int(r);
                }
                c = next;
            }
            BinaryQuartic::new(std::array::from_fn(|i| c[i].clone()))
        }),
    ]
}

fn sl2() -> impl Strategy<Value = [Rational; 4]> {
    prop::collection::vec((any::<bool>(), -3i64..=3), 1..5).prop_map(|steps| {
        let (mut a, mut b, mut c, mut d) = (int(1), int(0), int(0), int(1));
        for (upper, k) in steps {
            let k = int(k);
            if upper {
                b = &b + &(&a * &k);
                d = &d + &(&c * &k);
            } else {
                a = &a + &(&b * &k);
                c = &c + &(&d * &k);
            }
        }
        [a, b, c, d]
    })
}

fn act(q: &BinaryQuartic, g: &[Rational; 4]) -> BinaryQuartic {
    q.act(&g[0], &g[1], &g[2], &g[3])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ef_coordinates_invert_reconstruction(p in quartic(), q in quartic()) {
        let pq = QuarticPair::new(p, q);
        prop_assume!(!(pq.p.is_zero() && pq.q.is_zero()));
        let eq = MAEquation::new(4, &pq.reconstruct()).unwrap();
        prop_assert_eq!(ef_coordinates(&eq).unwrap(), pq);
    }

    #[test]
    fn classification_is_sl2_invariant(p in quartic(), q in quartic(), g in sl2(), h in sl2()) {
        let pq = QuarticPair::new(p, q);
        prop_assume!(!(pq.p.is_zero() && pq.q.is_zero()));
        let moved = QuarticPair::new(act(&pq.p, &g), act(&pq.q, &h));
        let (a, b) = (classify_quartic_pair(&pq).unwrap(), classify_quartic_pair(&moved).unwrap());
        prop_assert_eq!(a.p_pattern, b.p_pattern);
        prop_assert_eq!(a.q_pattern, b.q_pattern);
        prop_assert_eq!((a.p_harmonic, a.q_harmonic), (b.p_harmonic, b.q_harmonic));
        prop_assert_eq!(a.case, b.case);
    }
}

/// Value and gradient at a point of the affine chart.
fn vanishes_to_second_order(f: &lagma::algebra::Polynomial, point: &[Rational]) -> bool {
    f.eval(point).is_zero() && (0..point.len()).all(|k| f.diff(k).eval(point).is_zero())
}

fn l3() -> Vec<Rational> {
    lagma::liesp::point_with(4, &[((0, 3), 1), ((1, 2), -1)])
}

#[test]
fn ef_basis_is_tangent_at_three_points() {
    let basis = minor_basis(4).unwrap();
    let origin = vec![Rational::zero(); 10];
    let full = legendre_matrix(4, &[0, 1, 2, 3]).unwrap();
    for f in ef_basis() {
        assert!(vanishes_to_second_order(f, &origin), "{f} at l2");
        assert!(vanishes_to_second_order(f, &l3()), "{f} at l3");
        let at_infinity = basis.combine(&full.mul_vec(&basis.decompose(f).unwrap()));
        assert!(vanishes_to_second_order(&at_infinity, &origin), "{f} at l1");
    }
}

#[test]
fn tangent_space_is_ten_dimensional() {
    let basis = minor_basis(4).unwrap();
    let low: Vec<usize> = (0..basis.len())
        .filter(|&k| basis.degrees[k] <= 2)
        .collect();
    let full = legendre_matrix(4, &[0, 1, 2, 3]).unwrap();
    let origin = vec![Rational::zero(); 10];
    let conditions = |f: &lagma::algebra::Polynomial, p: &[Rational]| -> Vec<Rational> {
        std::iter::once(f.eval(p))
            .chain((0..10).map(|k| f.diff(k).eval(p)))
            .collect()
    };
    let columns: Vec<Vec<Rational>> = low
        .iter()
        .map(|&k| {
            let f = &basis.polys[k];
            let mut e = vec![Rational::zero(); basis.len()];
            e[k] = int(1);
            let g = basis.combine(&full.mul_vec(&e));
            let mut col = conditions(f, &origin);
            col.extend(conditions(f, &l3()));
            col.extend(conditions(&g, &origin));
            col
        })
        .collect();
    let system = RatMatrix::from_columns(columns[0].len(), &columns);
    assert_eq!(low.len() - system.rank(), 10);
    let ef: Vec<Vec<Rational>> = ef_basis()
        .iter()
        .map(|f| basis.decompose(f).unwrap())
        .collect();
    assert_eq!(RatMatrix::from_rows(ef).rank(), 10);
}

#[test]
fn case_table_rows() {
    use EquationKind::*;
    let kinds = [
        GeneralHeavenly,
        Husain,
        FirstHeavenly,
        Degenerate,
        ModifiedHeavenly,
        SecondHeavenly,
        Degenerate,
        HessOne,
        LinearWave,
        Degenerate,
    ];
    for (case, kind) in (1..=10).zip(kinds) {
        let rep = table_representative(case).unwrap();
        let eq = MAEquation::new(4, &rep.reconstruct()).unwrap();
        let recovered = ef_coordinates(&eq).unwrap();
        assert_eq!(recovered, rep);
        let c = classify_quartic_pair(&recovered).unwrap();
        assert_eq!((c.case, c.kind), (Some(case), Some(kind)), "case {case}");
        let swapped = classify_quartic_pair(&recovered.swapped()).unwrap();
        assert_eq!(swapped.case, Some(case));
        if case == 1 {
            assert_eq!(c.singular_dim, Some(4));
        }
    }
}

#[test]
fn harmonic_quartics_merge_into_case_eight() {
    // t⁴ − 1 and t³ − t are harmonic: J = 0 with non-zero discriminant.
    for p in [[-1, 0, 0, 0, 1], [0, -1, 0, 1, 0]] {
        let q = BinaryQuartic::from_ints(p);
        let inv = q.invariants();
        assert!(inv.j.is_zero() && !inv.discriminant.is_zero());
        let c = classify_quartic_pair(&pair(p, [0; 5])).unwrap();
        assert_eq!(c.case, Some(8));
    }
    // four distinct roots with a non-harmonic cross-ratio
    let c = classify_quartic_pair(&pair([0, -2, -1, 2, 1], [0; 5])).unwrap();
    assert_eq!(c.case, None);
    assert_eq!(c.p_pattern, vec![1, 1, 1, 1]);
}

#[test]
fn legendre_normalisations() {
    let case7 = MAEquation::new(4, &table_representative(7).unwrap().reconstruct()).unwrap();
    assert!(partial_legendre(&case7, &[0])
        .unwrap()
        .proportional_to(&eq4("u22 - u33")));
    let case10 = MAEquation::new(4, &table_representative(10).unwrap().reconstruct()).unwrap();
    assert!(partial_legendre(&case10, &[0])
        .unwrap()
        .proportional_to(&eq4("u22")));

    let quartic_form = MAEquation::new(4, &pair([-1, 0, 0, 0, 1], [0; 5]).reconstruct()).unwrap();
    let hess = builtin("hess4").unwrap();
    assert!(partial_legendre(&quartic_form, &[0, 1])
        .unwrap()
        .proportional_to(&hess));
    let case8 = MAEquation::new(4, &table_representative(8).unwrap().reconstruct()).unwrap();
    assert_eq!(
        symmetry_dimension(&case8).unwrap(),
        symmetry_dimension(&hess).unwrap()
    );

    let case9 = MAEquation::new(4, &table_representative(9).unwrap().reconstruct()).unwrap();
    assert_eq!(partial_legendre(&case9, &[0, 1]).unwrap().degree(), 1);

    let kahler = builtin("kahler").unwrap();
    let flat = partial_legendre(&kahler, &[2]).unwrap();
    let linear = MAEquation::new(3, &parse_polynomial(3, "1 - u11 - u22 - u33").unwrap()).unwrap();
    assert!(flat.proportional_to(&linear), "{}", flat.poly());
    assert_eq!(
        linearisable_3d(&kahler, 1).unwrap(),
        Linearisability::Linearisable
    );
}
