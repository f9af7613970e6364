use num_rational::Rational64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use weyl_model::{cell_of_weight, enumerate_cells, RootDatum, Weight};

fn sweep(rank: usize, bound: i64) -> Vec<Weight> {
    let side = (bound + 1) as usize;
    (0..side.pow(rank as u32))
        .map(|mut code| {
            let coords: Vec<i64> = (0..rank)
                .map(|_| {
                    let c = (code % side) as i64;
                    code /= side;
                    c
                })
                .collect();
            Weight::from_integers(&coords)
        })
        .collect()
}

#[test]
fn cells_partition_the_dominant_box() {
    for spec in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
        let d = RootDatum::from_spec_str(spec).unwrap();
        let cells = enumerate_cells(&d);
        for w in sweep(d.rank(), 10) {
            let hits: Vec<_> = cells.iter().filter(|c| c.contains(&w)).collect();
            assert_eq!(hits.len(), 1, "{spec} {w}");
            assert_eq!(*hits[0], cell_of_weight(&d, &w).unwrap());
        }
    }
}

#[test]
fn coordinate_test_agrees_with_root_pairings() {
    // σ = {x : (x, α_j) = 0 for j ∈ S, (x, α_j) > 0 otherwise}, evaluated directly.
    for spec in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1"] {
        let d = RootDatum::from_spec_str(spec).unwrap();
        let n = d.rank();
        let alphas: Vec<Weight> = (1..=n).map(|j| d.simple_root(j)).collect();
        let mut samples = sweep(n, 3);
        samples.push(Weight::new(vec![Rational64::new(1, 2); n]));
        for w in samples {
            for cell in enumerate_cells(&d) {
                let by_pairing = alphas.iter().enumerate().all(|(j, a)| {
                    let p = d.inner_product(&w, a).unwrap();
                    if cell.is_pinned(j) {
                        p.is_zero()
                    } else {
                        p.is_positive()
                    }
                });
                assert_eq!(by_pairing, cell.contains(&w), "{spec} {w} {cell}");
            }
        }
    }
}

fn arb_weight(rank: usize) -> impl Strategy<Value = Weight> {
    proptest::collection::vec(0i64..6, rank).prop_map(|c| Weight::from_integers(&c))
}

proptest! {
    #[test]
    fn closure_is_consistent(w in arb_weight(3)) {
        let d = RootDatum::from_spec_str("B3").unwrap();
        for cell in enumerate_cells(&d) {
            if cell.contains(&w) {
                prop_assert!(cell.closure_contains(&w));
            }
            if cell.closure_contains(&w) && !cell.contains(&w) {
                let free_zero = cell.free_indices().iter().any(|&i| w.coords()[i].is_zero());
                prop_assert!(free_zero);
            }
        }
    }

    #[test]
    fn complement_is_an_involution(mask in 0u64..16) {
        let d = RootDatum::from_spec_str("A4").unwrap();
        let cell = enumerate_cells(&d)[mask as usize];
        prop_assert_eq!(cell.complementary().complementary(), cell);
        prop_assert_eq!(cell.dim() + cell.complementary().dim(), 4);
    }
}
