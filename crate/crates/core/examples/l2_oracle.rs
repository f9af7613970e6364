//! Independent check of square-integrability by quadrature over growing boxes.
//!
//! For A1 with the canonical potential the norm integral is Γ(2λ).

use num_rational::Rational64;
use weyl_model::{
    canonical_potential, cell_of_subset, l2_norm_integral, QuadratureConfig, RootDatum, Weight,
};

fn main() -> weyl_model::Result<()> {
    let d = RootDatum::from_spec_str("A1")?;
    let cell = cell_of_subset(&d, &[])?;
    let p = canonical_potential(&cell);
    let cfg = QuadratureConfig::default();
    for (num, den) in [(0, 1), (1, 2), (1, 1), (2, 1), (3, 1)] {
        let lambda = Weight::new(vec![Rational64::new(num, den)]);
        let r = l2_norm_integral(&cell, &p, &lambda, &cfg)?;
        let partials: Vec<String> = r.partial_integrals.iter().map(|v| format!("{v:.6}")).collect();
        println!(
            "lambda = {lambda}: {} (partials {}) limit {:?}",
            r.verdict.as_str(),
            partials.join(", "),
            r.limit_estimate
        );
    }

    let d = RootDatum::from_spec_str("A2")?;
    let open = cell_of_subset(&d, &[])?;
    let r = l2_norm_integral(&open, &canonical_potential(&open), &Weight::from_integers(&[1, 2]), &cfg)?;
    println!("A2 lambda = (1,2): {} limit {:?}", r.verdict.as_str(), r.limit_estimate);
    Ok(())
}
