//! Sweeps a box of dominant weights and checks that every weight is contributed
//! by exactly one cell.
//!
//! cargo run --release --example model -- B3 5

use weyl_model::{build_model_catalog, enumerate_cells, verify_multiplicity_one, RootDatum};

fn main() -> weyl_model::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| "A2".into());
    let bound: u32 = args.next().and_then(|b| b.parse().ok()).unwrap_or(4);
    let d = RootDatum::from_spec_str(&spec)?;
    let catalog = build_model_catalog(&d, bound)?;
    for cell in enumerate_cells(&d) {
        println!("  {cell}: {} weights", catalog.count_assigned_to(&cell));
    }
    let report = verify_multiplicity_one(&catalog);
    println!("{}", report.summary());
    Ok(())
}
