use std::path::PathBuf;

use fraclaplace::oracles::rgamma_hp;
use fraclaplace::{
    eval_regular_part, eval_singular_as_function, format_gf, invert, simplify, GeneralizedFunction,
    LaplaceExpr, RegularTerm, Sign, SingularTerm,
};
use proptest::prelude::*;

fn ml_term(coeff: f64, alpha: f64, beta: f64, sign: Sign, lambda: f64) -> RegularTerm {
    RegularTerm::MittagLeffler {
        coeff,
        alpha,
        beta,
        sign,
        lambda,
        t_power: beta - 1.0,
    }
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

// Small parameter pools so that random functions contain mergeable terms.
fn regular() -> impl Strategy<Value = RegularTerm> {
    let c = prop_oneof![Just(0.0), -3.0f64..3.0];
    prop_oneof![
        (c.clone(), prop::sample::select(vec![0.5, 1.0, 1.5]), prop::sample::select(vec![0.25, 1.0]), sign())
            .prop_map(|(c, a, b, s)| ml_term(c, a, b, s, 1.0)),
        (c.clone(), prop::sample::select(vec![-0.5, 0.0, 2.0]))
            .prop_map(|(coeff, p)| RegularTerm::Power { coeff, p }),
        (c.clone(), prop::sample::select(vec![0.0, 0.5]), sign())
            .prop_map(|(coeff, p, sign)| RegularTerm::ExpPower { coeff, p, sign, lambda: 0.5 }),
        (c, prop::sample::select(vec![0.5, 1.7]), 0u32..3).prop_map(|(coeff, order, skip)| {
            RegularTerm::ExpPowerDerivative {
                coeff,
                order,
                p: 0.2,
                sign: Sign::Minus,
                lambda: 1.0,
                skip,
            }
        }),
    ]
}

fn singular() -> impl Strategy<Value = SingularTerm> {
    (
        prop_oneof![Just(0.0), Just(1.0), -2.0f64..2.0],
        prop::sample::select(vec![0.0, 0.5, 1.0, 1.5, 2.25]),
    )
        .prop_map(|(c, o)| SingularTerm::new(c, o))
}

fn gf() -> impl Strategy<Value = GeneralizedFunction> {
    (prop::collection::vec(singular(), 0..6), prop::collection::vec(regular(), 0..6))
        .prop_map(|(s, r)| GeneralizedFunction::new(s, r))
}

proptest! {
    #[test]
    fn simplify_is_idempotent(f in gf()) {
        let once = simplify(&f);
        prop_assert_eq!(simplify(&once), once);
    }

    #[test]
    fn simplify_output_is_normalized(f in gf()) {
        let g = simplify(&f);
        prop_assert!(g.singular.iter().all(|s| s.coeff != 0.0));
        prop_assert!(g.regular.iter().all(|r| r.coeff() != 0.0));
        prop_assert!(g.singular.windows(2).all(|w| w[0].order > w[1].order));
    }

    #[test]
    fn regular_part_is_linear(f in gf(), c in -4.0f64..4.0, t in 0.1f64..5.0) {
        let base = eval_regular_part(&f, t).unwrap();
        let scaled = eval_regular_part(&f.scaled(c), t).unwrap();
        let want = c * base.value;
        // Cancellation inside the sum is covered by the reported bound.
        prop_assert!((scaled.value - want).abs() <= 1e-12 * want.abs() + c.abs() * base.abs_err);
    }

    #[test]
    fn singular_pointwise_form(order in 0.0f64..4.0, coeff in -3.0f64..3.0, t in 0.05f64..20.0) {
        prop_assume!((order - order.round()).abs() > 1e-6);
        let got = eval_singular_as_function(&SingularTerm::new(coeff, order), t).unwrap();
        let want = coeff * rgamma_hp(-order) * t.powf(-order - 1.0);
        prop_assert!((got - want).abs() <= 1e-12 * want.abs());
    }
}

#[test]
fn simplify_examples() {
    let f = GeneralizedFunction::new(vec![SingularTerm::new(1.0, 0.5); 2], vec![]);
    assert_eq!(simplify(&f).singular, vec![SingularTerm::new(2.0, 0.5)]);

    let f = GeneralizedFunction::new(vec![SingularTerm::new(0.0, 0.5)], vec![]);
    assert!(simplify(&f).is_zero());

    let f = GeneralizedFunction::new(
        vec![],
        vec![ml_term(1.0, 0.5, 0.5, Sign::Minus, 1.0), ml_term(-1.0, 0.5, 0.5, Sign::Minus, 1.0)],
    );
    assert!(simplify(&f).regular.is_empty());
}

#[test]
fn merging_needs_bit_equal_parameters() {
    let f = GeneralizedFunction::new(
        vec![SingularTerm::new(1.0, 0.5), SingularTerm::new(1.0, 0.5 + 1e-15)],
        vec![ml_term(1.0, 0.5, 0.5, Sign::Minus, 1.0), ml_term(1.0, 0.5, 0.5, Sign::Plus, 1.0)],
    );
    let g = simplify(&f);
    assert_eq!(g.singular.len(), 2);
    assert_eq!(g.regular.len(), 2);
}

#[test]
fn integer_orders_vanish_pointwise() {
    for n in 0..6 {
        let v = eval_singular_as_function(&SingularTerm::new(2.5, n as f64), 0.7).unwrap();
        assert_eq!(v, 0.0);
    }
}

#[test]
fn pointwise_evaluation_rejects_the_origin() {
    let f = GeneralizedFunction::new(vec![SingularTerm::new(1.0, 0.5)], vec![]);
    assert!(f.eval_pointwise(0.0).is_err());
    assert!(eval_regular_part(&f, -1.0).is_err());
}

#[test]
fn format_examples() {
    assert_eq!(format_gf(&GeneralizedFunction::default()), "0");
    let delta = GeneralizedFunction::new(vec![SingularTerm::new(1.0, 0.0)], vec![]);
    assert_eq!(format_gf(&delta), "δ(t)");
    let f = invert(&LaplaceExpr::binomial(1.5, 1.0, Sign::Minus, 1.0).unwrap()).unwrap();
    assert_eq!(
        format_gf(&f),
        "d^{0.5}δ(t)/dt^{0.5} − 1·t^{-0.5}·E_{1,0.5}(−1·t^1)"
    );
}

fn golden_cases() -> Vec<(&'static str, GeneralizedFunction)> {
    let inv = |e: fraclaplace::Result<LaplaceExpr>| invert(&e.unwrap()).unwrap();
    vec![
        ("zero", GeneralizedFunction::default()),
        ("first_derivative", inv(LaplaceExpr::monomial(1.0))),
        ("half_derivative_scaled", inv(LaplaceExpr::monomial(0.5).map(|e| e.with_mu(-2.5)))),
        ("rabotnov", inv(LaplaceExpr::binomial(0.0, 0.5, Sign::Minus, 1.0))),
        ("q1p5_over_s_plus_1", inv(LaplaceExpr::binomial(1.5, 1.0, Sign::Minus, 1.0))),
        ("q2p5_over_s_plus_1", inv(LaplaceExpr::binomial(2.5, 1.0, Sign::Minus, 1.0))),
        ("exact_multiple", inv(LaplaceExpr::binomial(1.4, 0.7, Sign::Plus, 2.0))),
        ("growing_binomial", inv(LaplaceExpr::binomial(2.1, 0.9, Sign::Plus, 0.5))),
        ("shifted_q0", inv(LaplaceExpr::shifted(0.0, 1.5, Sign::Minus, 2.0))),
        ("shifted_below", inv(LaplaceExpr::shifted(0.4, 1.2, Sign::Minus, 1.0))),
        ("shifted_extracted", inv(LaplaceExpr::shifted(2.3, 0.8, Sign::Plus, 1.5))),
        ("zero_lambda", inv(LaplaceExpr::binomial(0.3, 1.1, Sign::Minus, 0.0))),
        (
            "mixed_powers",
            GeneralizedFunction::new(
                vec![SingularTerm::new(-1.0, 2.0), SingularTerm::new(0.25, 0.75)],
                vec![
                    RegularTerm::Power { coeff: -0.125, p: 3.0 },
                    RegularTerm::ExpPower {
                        coeff: 1.0,
                        p: -0.5,
                        sign: Sign::Plus,
                        lambda: 3.0,
                    },
                ],
            ),
        ),
    ]
}

#[test]
fn format_matches_golden_files() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, f) in golden_cases() {
        let path = dir.join(format!("{name}.txt"));
        let got = format!("{}\n", format_gf(&f));
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e} (rerun with UPDATE_GOLDEN=1)", path.display()));
        assert_eq!(got, want, "{name}");
    }
}
