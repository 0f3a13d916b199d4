use algint_core::analyzer::{check, swap_form, Bounds};
use algint_core::arith::{Elem, Tower};
use algint_core::form::{parse_form_coefficients, parse_poly, parse_rational_function, PlanarOneForm};
use algint_core::hirzebruch::{extend, verify_invariants, ChartId};
use algint_core::poly::{MultiPoly, Vars};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Elem> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Elem::from(BigRational::new(BigInt::from(n), BigInt::from(d))))
}

fn poly_in(vars: Vars, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), rational()), 0..=max_terms)
        .prop_map(move |ts| MultiPoly::from_terms(&vars, &Tower::rationals(), ts))
}

fn xy_poly() -> impl Strategy<Value = MultiPoly> {
    poly_in(Vars::xy(), 4, 6)
}

fn small_form() -> impl Strategy<Value = PlanarOneForm> {
    (poly_in(Vars::xy(), 3, 5), poly_in(Vars::xy(), 3, 5))
        .prop_filter_map("not a valid form", |(a, b)| PlanarOneForm::new(a, b).ok())
}

/// Bihomogeneous polynomial built from factors of bidegree (1, 0) and (0, 1).
fn bihomogeneous(delta: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((any::<bool>(), -3i64..=3, -3i64..=3), 0..4).prop_map(move |fs| {
        let v = Vars::hirzebruch();
        let t = Tower::rationals();
        let var = |i| MultiPoly::var(&v, &t, i);
        fs.into_iter().fold(MultiPoly::from_int(&v, 1), |acc, (second, a, b)| {
            let (a, b) = (if a == 0 && b == 0 { 1 } else { a }, b);
            let f = if second {
                var(2).scale_int(a).add(&var(3).mul_var_pow(0, delta).scale_int(b))
            } else {
                var(0).scale_int(a).add(&var(1).scale_int(b))
            };
            acc.mul(&f)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_polynomials_parse_back(p in xy_poly()) {
        prop_assert_eq!(parse_poly(&p.to_string(), &Vars::xy()).unwrap(), p);
    }

    #[test]
    fn printed_hirzebruch_polynomials_parse_back(p in poly_in(Vars::hirzebruch(), 5, 6)) {
        prop_assert_eq!(parse_poly(&p.to_string(), &Vars::hirzebruch()).unwrap(), p);
    }

    #[test]
    fn printed_forms_parse_back(a in xy_poly(), b in xy_poly()) {
        let text = PlanarOneForm::new_unchecked(a.clone(), b.clone()).to_string();
        prop_assert_eq!(parse_form_coefficients(&text).unwrap(), (a, b));
    }

    #[test]
    fn parser_never_panics(s in "[xy0-9 +*/^().dxy-]{0,24}") {
        let _ = parse_poly(&s, &Vars::xy());
        let _ = parse_rational_function(&s, &Vars::xy());
        let _ = parse_form_coefficients(&s);
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    let v = Vars::xy();
    for s in ["", "x +", "+", "2x", "x y", "x^", "x^-1", "x^y", "(x", "x)", "1/0", "x/y", "x**2", "z", "x^1.5", "()", "3/", "x + * y"] {
        assert!(parse_poly(s, &v).is_err(), "accepted {s:?}");
    }
    for s in ["", "(x) dz", "(x) dx +", "(x)", "dx dy", "(x) dx (y) dy", "(x dx", "x dx ++ dy"] {
        assert!(parse_form_coefficients(s).is_err(), "accepted form {s:?}");
    }
    for s in ["y/", "/x", "y/0", "y//x"] {
        assert!(parse_rational_function(s, &v).is_err(), "accepted fraction {s:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_axioms(p in xy_poly(), q in xy_poly(), r in xy_poly()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
        prop_assert_eq!(p.mul(&MultiPoly::from_int(&Vars::xy(), 1)), p.clone());
    }

    #[test]
    fn substitution_is_a_ring_map(p in xy_poly(), q in xy_poly(), f in xy_poly(), g in xy_poly()) {
        let images = [f, g];
        prop_assert_eq!(p.add(&q).compose(&images), p.compose(&images).add(&q.compose(&images)));
        prop_assert_eq!(p.mul(&q).compose(&images), p.compose(&images).mul(&q.compose(&images)));
    }

    #[test]
    fn bidegree_is_additive(
        (delta, p, q) in (0u32..4).prop_flat_map(|d| (Just(d), bihomogeneous(d), bihomogeneous(d)))
    ) {
        let (bp, bq) = (p.bidegree(delta).unwrap(), q.bidegree(delta).unwrap());
        let bpq = p.mul(&q).bidegree(delta).unwrap();
        prop_assert_eq!((bpq.d1, bpq.d2), (bp.d1 + bq.d1, bp.d2 + bq.d2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extension_invariants(w in small_form(), delta in 0u32..5) {
        let ext = extend(delta, &w).unwrap();
        let report = verify_invariants(&ext);
        prop_assert!(report.all_pass(), "{:?}", report);
        prop_assert!(ext.chart_restrict(ChartId::U00).is_proportional(&w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn swap_is_an_involution(w in small_form()) {
        prop_assert!(swap_form(&swap_form(&w)).is_proportional(&w));
    }

    #[test]
    fn verdicts_are_reproducible(w in small_form()) {
        prop_assume!(!w.b.is_zero());
        let bounds = Bounds { max_delta: 3, max_depth: 32 };
        let first = check(&w, bounds, false);
        prop_assert_eq!(&first, &check(&w, bounds, false));
        if let Ok(v) = first {
            if let (Some(d), Some(d1)) = (v.witness_delta, v.delta1) {
                prop_assert!(d > d1);
            }
        }
    }
}
