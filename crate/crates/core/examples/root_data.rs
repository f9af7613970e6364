//! Cartan matrices, symmetrizers and positive roots for a few types.
//!
//! cargo run --example root_data -- G2 B3 A1xA2

use weyl_model::{RootDatum, Weight};

fn main() -> weyl_model::Result<()> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = vec!["A2".into(), "G2".into(), "B3".into()];
    }
    for spec in specs {
        let d = RootDatum::from_spec_str(&spec)?;
        println!("{spec}: rank {}, {} positive roots", d.rank(), d.positive_roots().len());
        for row in d.cartan() {
            println!("  {row:?}");
        }
        let sym: Vec<String> = d.symmetrizers().iter().map(|s| s.to_string()).collect();
        println!("  symmetrizers {}", sym.join(" "));
        let highest = d.positive_roots().last().expect("nonempty");
        println!("  highest root in simple-root coordinates {highest:?}");
        let rho = Weight::from_integers(&vec![1; d.rank()]);
        println!("  (rho, rho) = {}", d.inner_product(&rho, &rho)?);
    }
    Ok(())
}
