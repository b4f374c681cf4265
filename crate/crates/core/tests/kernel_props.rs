use proptest::prelude::*;
use springer_core::kernel::{
    exact_divide, rat, t_limit, GradedSeries, Lattice, Monomial, Poly, RatFunc, Rational, TLaurent,
};

const NV: usize = 3;

fn poly_strategy(max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5), 0..max_terms).prop_map(
        |terms| {
            Poly::from_terms(
                NV,
                terms
                    .into_iter()
                    .map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]), rat(k))),
            )
        },
    )
}

fn nonzero_poly(max_terms: usize) -> impl Strategy<Value = Poly> {
    poly_strategy(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(3), nonzero_poly(2)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn series_strategy(n: i64) -> impl Strategy<Value = GradedSeries<Rational>> {
    prop::collection::vec(((0i64..4, 0i64..4), -3i64..4), 0..6).prop_map(move |terms| {
        let mut s = GradedSeries::zero(2, n);
        for ((a, b), c) in terms {
            s.add_term(Lattice(vec![a, b]), rat(c));
        }
        s
    })
}

fn laurent_strategy() -> impl Strategy<Value = TLaurent<Rational>> {
    prop::collection::vec((-4i64..3, -3i64..4), 0..5)
        .prop_map(|terms| TLaurent::from_terms(rat(0), -10, terms.into_iter().map(|(e, c)| (e, rat(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_ring_axioms(a in poly_strategy(4), b in poly_strategy(4), c in poly_strategy(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn ratfunc_ring_axioms(a in ratfunc_strategy(), b in ratfunc_strategy(), c in ratfunc_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&(&a + &b) - &b - a.clone()).is_zero());
    }

    #[test]
    fn exact_divide_inverts_product(g in nonzero_poly(3), q in poly_strategy(3)) {
        let f = &g * &q;
        prop_assert_eq!(exact_divide(&f, &g).unwrap(), q);
    }

    #[test]
    fn truncated_product_matches_full(a in series_strategy(3), b in series_strategy(3)) {
        let full_a = a.restrict(0, 3);
        let wide_a = {
            let mut s = GradedSeries::zero(2, 20);
            for (k, c) in full_a.iter() { s.add_term(k.clone(), c.clone()); }
            s
        };
        let wide_b = {
            let mut s = GradedSeries::zero(2, 20);
            for (k, c) in b.iter() { s.add_term(k.clone(), c.clone()); }
            s
        };
        let full = wide_a.mul(&wide_b).truncate(3);
        let trunc = a.mul(&b);
        prop_assert_eq!(full.support(), trunc.support());
        for (k, c) in trunc.iter() {
            prop_assert_eq!(full.get(k), Some(c));
        }
    }

    #[test]
    fn laurent_product_within_cutoff(a in laurent_strategy(), b in laurent_strategy()) {
        let exact = a.mul(&b);
        let ca = a.with_cutoff(3);
        let cb = b.with_cutoff(3);
        let approx = ca.mul(&cb);
        for e in approx.floor()..=6 {
            prop_assert_eq!(approx.coeff(e), exact.coeff(e));
        }
        if let Some(l) = exact.leading_exponent() {
            if l <= 0 {
                prop_assert_eq!(t_limit(&exact).unwrap(), exact.coeff(0));
            }
        }
    }
}
