use lagma::algebra::rational::frac;
use lagma::algebra::Rational;
use lagma::expr::parse_equation;
use lagma::grassmann::{minor_basis, MAEquation};
use num_traits::Zero;
use proptest::prelude::*;

fn equation() -> impl Strategy<Value = MAEquation> {
    (2usize..=4).prop_flat_map(|n| {
        let len = minor_basis(n).unwrap().len();
        prop::collection::vec((0..len, -7i64..=7, 1i64..=5), 1..6).prop_filter_map(
            "zero equation",
            move |terms| {
                let mut c = vec![Rational::zero(); len];
                for (k, a, b) in terms {
                    c[k] += frac(a, b);
                }
                MAEquation::from_coords(n, c).ok()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_equations_parse_back(eq in equation()) {
        let back = parse_equation(eq.n(), &eq.to_string()).unwrap();
        prop_assert_eq!(back.coords(), eq.coords());
    }

    #[test]
    fn printed_polynomials_parse_back(eq in equation()) {
        let back = parse_equation(eq.n(), &eq.poly().to_string()).unwrap();
        prop_assert_eq!(back.coords(), eq.coords());
    }
}
