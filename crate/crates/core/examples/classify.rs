//! Which highest weights occur in the sections over a cell, and which of those
//! are square-integrable.
//!
//! cargo run --example classify -- B2

use weyl_model::{canonical_potential, enumerate_cells, square_integrable, RootDatum, Weight};

fn main() -> weyl_model::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "A2".into());
    let d = RootDatum::from_spec_str(&spec)?;
    let n = d.rank();
    let weights: Vec<Weight> = (0..3i64.pow(n as u32))
        .map(|mut code| {
            let coords: Vec<i64> = (0..n)
                .map(|_| {
                    let c = code % 3;
                    code /= 3;
                    c
                })
                .collect();
            Weight::from_integers(&coords)
        })
        .collect();

    for cell in enumerate_cells(&d) {
        let p = canonical_potential(&cell);
        let mut line = Vec::new();
        for w in &weights {
            let r = square_integrable(&cell, &p, w, 1e-10)?;
            if r.occurs {
                line.push(format!("{w}:{}", r.in_l2.as_str()));
            }
        }
        println!("{cell}  {}", line.join("  "));
    }
    Ok(())
}
