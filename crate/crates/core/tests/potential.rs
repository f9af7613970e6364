use num_rational::Rational64;
use proptest::prelude::*;
use weyl_model::{
    canonical_potential, cell_of_subset, invert_moment, Cell, Inversion, MomentPoint, Potential,
    RootDatum, Term,
};

fn open_cell(rank: usize) -> Cell {
    Cell::from_mask(rank, 0).unwrap()
}

fn arb_potential() -> impl Strategy<Value = (Potential, Vec<f64>)> {
    (1usize..=3)
        .prop_flat_map(|m| {
            let term = (0.1f64..5.0, proptest::collection::vec((-3i64..=3, 1i64..=3), m));
            (
                Just(m),
                proptest::collection::vec(term, m..=5),
                proptest::collection::vec(-1.0f64..1.0, m),
            )
        })
        .prop_filter_map("forms must span", |(m, terms, y)| {
            let terms: Vec<Term> = terms
                .into_iter()
                .filter_map(|(c, form)| {
                    Term::new(c, form.into_iter().map(|(p, q)| Rational64::new(p, q)).collect()).ok()
                })
                .collect();
            Potential::new(open_cell(m), terms).ok().filter(|p| p.spans()).map(|p| (p, y))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gradient_matches_central_differences((p, y) in arb_potential()) {
        let h = 1e-5;
        let g = p.gradient(&y).unwrap();
        let hess = p.hessian(&y).unwrap();
        let scale = g.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        for i in 0..p.dim() {
            let (mut up, mut down) = (y.clone(), y.clone());
            up[i] += h;
            down[i] -= h;
            let fd = (p.evaluate(&up).unwrap() - p.evaluate(&down).unwrap()) / (2.0 * h);
            prop_assert!((fd - g[i]).abs() <= 1e-6 * scale);
            let (gu, gd) = (p.gradient(&up).unwrap(), p.gradient(&down).unwrap());
            for j in 0..p.dim() {
                let fd = (gu[j] - gd[j]) / (2.0 * h);
                prop_assert!((fd - hess[(i, j)]).abs() <= 1e-5 * hess[(i, j)].abs().max(hess[(j, j)]));
            }
        }
    }

    #[test]
    fn hessian_is_positive_definite((p, y) in arb_potential()) {
        let report = p.hessian_pd_check(&[y]);
        prop_assert!(report.pass());
    }

    #[test]
    fn offset_leaves_moment_map_alone((p, y) in arb_potential(), shift in -5.0f64..5.0) {
        let q = p.clone().with_offset(p.offset() + shift);
        prop_assert_eq!(p.moment_map(&y).unwrap(), q.moment_map(&y).unwrap());
    }

    #[test]
    fn a1_round_trip(c in 1e-3f64..1e3) {
        // canonical A1: ½ e^y = c  ⇔  y = ln 2c
        let p = canonical_potential(&open_cell(1));
        match invert_moment(&p, &MomentPoint::new(vec![c]), 1e-10).unwrap() {
            Inversion::Attained { point, .. } => {
                prop_assert!((point[0] - (2.0 * c).ln()).abs() < 1e-6);
                let back = p.moment_map(&point).unwrap();
                prop_assert!((back.coords()[0] - c).abs() < 1e-10);
            }
            other => prop_assert!(false, "not attained: {other:?}"),
        }
    }

    #[test]
    fn image_is_the_open_cone(
        labels in proptest::sample::subsequence(vec![1usize, 2, 3], 0..=3),
        nums in proptest::collection::vec(-8i64..=8, 3),
        dens in proptest::collection::vec(1i64..=5, 3),
    ) {
        let d = RootDatum::from_spec_str("B3").unwrap();
        let cell = cell_of_subset(&d, &labels).unwrap();
        let p = canonical_potential(&cell);
        let m = cell.dim();
        let q: Vec<Rational64> = (0..m).map(|i| Rational64::new(nums[i], dens[i])).collect();
        let inside = q.iter().all(|x| *x > Rational64::from_integer(0));
        let target = MomentPoint::new(q.iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect());
        let inv = invert_moment(&p, &target, 1e-10).unwrap();
        prop_assert_eq!(inv.is_attained(), inside);
    }
}

#[test]
fn non_canonical_image_is_its_cone() {
    // F = e^{y1} + e^{y2} + e^{y1+y2}: image is still the open quadrant
    let terms = vec![
        Term::new(1.0, vec![1.into(), 0.into()]).unwrap(),
        Term::new(1.0, vec![0.into(), 1.into()]).unwrap(),
        Term::new(1.0, vec![1.into(), 1.into()]).unwrap(),
    ];
    let p = Potential::new(open_cell(2), terms).unwrap();
    for (t, inside) in [([1.0, 1.0], true), ([0.1, 3.0], true), ([0.0, 1.0], false), ([-1.0, 2.0], false)] {
        let inv = invert_moment(&p, &MomentPoint::new(t.to_vec()), 1e-10).unwrap();
        assert_eq!(inv.is_attained(), inside, "{t:?}");
    }
    // negative exponents widen the image to a larger cone: e^{y} + e^{-y} covers all of ℝ
    let both = Potential::new(
        open_cell(1),
        vec![
            Term::new(1.0, vec![1.into()]).unwrap(),
            Term::new(1.0, vec![(-1).into()]).unwrap(),
        ],
    )
    .unwrap();
    for t in [-3.0, 0.0, 2.5] {
        assert!(invert_moment(&both, &MomentPoint::new(vec![t]), 1e-10).unwrap().is_attained());
    }
}
