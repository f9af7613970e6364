use num_rational::Rational64;
use proptest::prelude::*;
use weyl_model::{
    canonical_potential, cell_of_subset, enumerate_cells, l2_norm_integral, occurs_in_sections,
    square_integrable, ConvergenceVerdict, Error, L2Verdict, Method, QuadratureConfig, RootDatum,
    Weight,
};

/// Γ(2c) for the c used below, frozen.
const GAMMA_ORACLE: [(i64, i64, f64); 4] = [(1, 2, 1.0), (1, 1, 1.0), (3, 2, 2.0), (2, 1, 6.0)];

#[test]
fn a1_limits_match_gamma() {
    let d = RootDatum::from_spec_str("A1").unwrap();
    let cell = cell_of_subset(&d, &[]).unwrap();
    let p = canonical_potential(&cell);
    for (num, den, gamma) in GAMMA_ORACLE {
        let lambda = Weight::new(vec![Rational64::new(num, den)]);
        let r = l2_norm_integral(&cell, &p, &lambda, &QuadratureConfig::default()).unwrap();
        assert_eq!(r.verdict, ConvergenceVerdict::Convergent, "c = {num}/{den}");
        let got = r.limit_estimate.unwrap();
        assert!(((got - gamma) / gamma).abs() < 1e-3, "c = {num}/{den}: {got}");
    }
}

#[test]
fn quadrature_agrees_with_exact_verdict_without_inconclusive() {
    let cfg = QuadratureConfig::default();
    for spec in ["A1", "A2", "A1xA1"] {
        let d = RootDatum::from_spec_str(spec).unwrap();
        for cell in enumerate_cells(&d) {
            let p = canonical_potential(&cell);
            for a in 0..=3 {
                for b in 0..=3 {
                    let coords: Vec<i64> = [a, b][..d.rank()].to_vec();
                    let w = Weight::from_integers(&coords);
                    if !cell.spans(&w) {
                        continue;
                    }
                    let r = l2_norm_integral(&cell, &p, &w, &cfg).unwrap();
                    let exact = square_integrable(&cell, &p, &w, 1e-10).unwrap();
                    assert_ne!(r.verdict, ConvergenceVerdict::Inconclusive, "{spec} {cell} {w}");
                    assert_eq!(r.verdict.as_l2(), exact.in_l2, "{spec} {cell} {w}");
                }
            }
        }
    }
}

#[test]
fn weights_outside_the_cell_do_not_occur() {
    let d = RootDatum::from_spec_str("A2").unwrap();
    let ray = cell_of_subset(&d, &[1]).unwrap();
    let p = canonical_potential(&ray);
    let r = square_integrable(&ray, &p, &Weight::from_integers(&[1, 1]), 1e-10).unwrap();
    assert!(!r.occurs);
    assert_eq!(r.in_l2, L2Verdict::No);
    assert_eq!(r.method, Method::Exact);
}

#[test]
fn non_dominant_weights_are_rejected() {
    let d = RootDatum::from_spec_str("A2").unwrap();
    let cell = cell_of_subset(&d, &[]).unwrap();
    let bad = Weight::from_integers(&[-1, 2]);
    assert!(matches!(occurs_in_sections(&cell, &bad), Err(Error::NotDominantIntegral)));
    let half = Weight::new(vec![Rational64::new(1, 2), 1.into()]);
    assert!(matches!(occurs_in_sections(&cell, &half), Err(Error::NotDominantIntegral)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wall_weights_occur_but_are_not_square_integrable(
        coords in proptest::collection::vec(0i64..=4, 3),
        mask in 0u64..8,
    ) {
        let d = RootDatum::from_spec_str("C3").unwrap();
        let cell = enumerate_cells(&d)[mask as usize];
        let w = Weight::from_integers(&coords);
        let p = canonical_potential(&cell);
        let r = square_integrable(&cell, &p, &w, 1e-10).unwrap();
        prop_assert_eq!(r.occurs, cell.closure_contains(&w));
        prop_assert_eq!(r.in_l2 == L2Verdict::Yes, cell.contains(&w));
        if r.occurs && !cell.contains(&w) {
            prop_assert_eq!(r.in_l2, L2Verdict::No);
        }
    }
}
