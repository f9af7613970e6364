use proptest::prelude::*;
use weyl_model::{build_model_catalog, cell_of_weight, enumerate_cells, verify_multiplicity_one, RootDatum};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn catalog_is_multiplicity_one(
        spec in proptest::sample::select(vec!["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A2xA1"]),
        bound in 0u32..=5,
    ) {
        let d = RootDatum::from_spec_str(spec).unwrap();
        let cat = build_model_catalog(&d, bound).unwrap();
        let report = verify_multiplicity_one(&cat);
        prop_assert!(report.ok, "{}", report.summary());
        prop_assert!(cat.violations.is_empty());
        prop_assert_eq!(cat.entries.len(), (bound as usize + 1).pow(d.rank() as u32));
        for e in &cat.entries {
            prop_assert_eq!(e.assignment(), Some(cell_of_weight(&d, &e.lambda).unwrap()));
        }
        // a cell with |S| pinned roots receives exactly bound^(n-|S|) weights
        for cell in enumerate_cells(&d) {
            prop_assert_eq!(cat.count_assigned_to(&cell), (bound as usize).pow(cell.dim() as u32));
        }
    }
}

#[test]
fn summary_counts_weights_and_cells() {
    let d = RootDatum::from_spec_str("B2").unwrap();
    let cat = build_model_catalog(&d, 2).unwrap();
    assert_eq!(verify_multiplicity_one(&cat).summary(), "MODEL OK (9 weights, 4 cells)");
}
