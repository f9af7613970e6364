//! The dominant chamber as a disjoint union of cells, one per subset of simple roots.
//!
//! cargo run --example cells -- A3

use weyl_model::{cell_of_weight, enumerate_cells, RootDatum, Weight};

fn main() -> weyl_model::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "A2".into());
    let d = RootDatum::from_spec_str(&spec)?;
    let cells = enumerate_cells(&d);
    println!("{spec} has {} cells", cells.len());
    for cell in &cells {
        println!("  {cell}  dim {}", cell.dim());
    }

    // every dominant weight lands in exactly one cell, read off its zero pattern
    let n = d.rank();
    let samples = [vec![0; n], vec![1; n], (0..n as i64).collect::<Vec<_>>()];
    for coords in samples {
        let w = Weight::from_integers(&coords);
        let cell = cell_of_weight(&d, &w)?;
        let closures = cells.iter().filter(|c| c.closure_contains(&w)).count();
        println!("  {w} lies in {cell}, and in the closure of {closures} cells");
    }
    Ok(())
}
