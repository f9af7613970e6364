//! Moment map of an exponential-sum potential and its inversion by Newton's method.
//!
//! Targets inside the open cone are attained; targets on the boundary or outside
//! are reported as not attained, with the reason.

use weyl_model::{
    canonical_potential, cell_of_subset, legendre_image_probe, Inversion, MomentPoint, Potential,
    RootDatum, Term,
};

fn report(label: &str, t: &MomentPoint, inv: &Inversion) {
    match inv {
        Inversion::Attained { point, residual, iterations } => {
            println!("  {label} {:?} -> y = {point:.6?} (residual {residual:.1e}, {iterations} steps)", t.coords())
        }
        Inversion::NotAttained { reason, iterations, .. } => {
            println!("  {label} {:?} -> not attained ({reason:?}, {iterations} steps)", t.coords())
        }
    }
}

fn main() -> weyl_model::Result<()> {
    let d = RootDatum::from_spec_str("A2")?;
    let open = cell_of_subset(&d, &[])?;
    let targets: Vec<MomentPoint> = [[1.0, 2.0], [0.25, 0.25], [0.0, 1.0], [-1.0, 1.0]]
        .iter()
        .map(|t| MomentPoint::new(t.to_vec()))
        .collect();

    println!("canonical potential e^y1 + e^y2");
    let canonical = canonical_potential(&open);
    for (t, r) in targets.iter().zip(legendre_image_probe(&canonical, &targets, 1e-10)) {
        report("target", t, &r?);
    }

    println!("deformed potential e^y1 + e^y2 + 1/2 e^(y1+y2)");
    let deformed = Potential::new(
        open,
        vec![
            Term::new(1.0, vec![1.into(), 0.into()])?,
            Term::new(1.0, vec![0.into(), 1.into()])?,
            Term::new(0.5, vec![1.into(), 1.into()])?,
        ],
    )?;
    println!("  convexity certified: {}", deformed.hessian_pd_check(&[vec![0.0, 0.0]]).pass());
    for (t, r) in targets.iter().zip(legendre_image_probe(&deformed, &targets, 1e-10)) {
        report("target", t, &r?);
    }
    Ok(())
}
