//! Occurrence and square-integrability of highest-weight representations.
//!
//! For the cell `σ` of a parabolic `P`, the irreducible with highest weight
//! `λ` occurs in the holomorphic sections exactly when `λ ∈ σ̄`, and those
//! sections are square-integrable exactly when `λ` lies in the moment image
//! `½ L_F(𝔞_σ)`. After the `K`-integration, the norm of such a section is a
//! positive multiple of `∫ exp(-F(y) + 2λ(y)) dy` over `𝔞_σ`, which
//! [`l2_norm_integral`] estimates by quadrature as an independent check.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::cells::Cell;
use crate::error::{Error, Result};
use crate::potential::{invert_moment_with, Inversion, MomentPoint, NewtonConfig, Potential};
use crate::quadrature::{shell_nodes, ShellNode};
use crate::root_system::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum L2Verdict {
    Yes,
    No,
    Unknown,
}

impl L2Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            L2Verdict::Yes => "yes",
            L2Verdict::No => "no",
            L2Verdict::Unknown => "unknown",
        }
    }
}

impl fmt::Display for L2Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    Newton,
    Quadrature,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Newton => "newton",
            Method::Quadrature => "quadrature",
        }
    }
}

/// Solver diagnostics attached to a Newton-based verdict.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Details {
    pub residual: Option<f64>,
    pub iterations: Option<usize>,
    pub point: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub lambda: Weight,
    pub cell: Cell,
    pub occurs: bool,
    pub in_l2: L2Verdict,
    pub method: Method,
    pub details: Details,
}

type ImageFilter = Arc<dyn Fn(&Cell, &Weight) -> bool + Send + Sync>;

/// Classification settings. The default is the production path.
#[derive(Clone, Default)]
pub struct Classifier {
    newton: NewtonConfig,
    image_filter: Option<ImageFilter>,
}

impl fmt::Debug for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Classifier")
            .field("newton", &self.newton)
            .field("image_filter", &self.image_filter.is_some())
            .finish()
    }
}

impl Classifier {
    pub fn new(newton: NewtonConfig) -> Self {
        Self {
            newton,
            image_filter: None,
        }
    }

    /// Test hook: weights rejected by `filter` are treated as outside the
    /// moment image. Used to exercise the model's failure reporting.
    pub fn with_image_filter<F>(mut self, filter: F) -> Self
    where
        F: Fn(&Cell, &Weight) -> bool + Send + Sync + 'static,
    {
        self.image_filter = Some(Arc::new(filter));
        self
    }

    pub fn square_integrable(
        &self,
        cell: &Cell,
        potential: &Potential,
        lambda: &Weight,
        tol: f64,
    ) -> Result<ClassificationReport> {
        let occurs = occurs_in_sections(cell, lambda)?;
        if potential.cell() != cell {
            return Err(Error::CellMismatch {
                potential: potential.cell().pinned_labels(),
                requested: cell.pinned_labels(),
            });
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::ToleranceInvalid(tol));
        }

        let mut report = ClassificationReport {
            lambda: lambda.clone(),
            cell: *cell,
            occurs,
            in_l2: L2Verdict::No,
            method: Method::Exact,
            details: Details::default(),
        };

        if !cell.spans(lambda) {
            // outside 𝔱_σ*: rejected, never projected
        } else if potential.is_canonical() {
            // the canonical moment image is the open cell itself
            if cell.contains(lambda) {
                report.in_l2 = L2Verdict::Yes;
            }
        } else {
            report.method = Method::Newton;
            let target = MomentPoint::from_weight(cell, lambda)?;
            match invert_moment_with(potential, &target, tol, &self.newton) {
                Ok(Inversion::Attained {
                    point,
                    residual,
                    iterations,
                }) => {
                    report.in_l2 = L2Verdict::Yes;
                    report.details = Details {
                        residual: Some(residual),
                        iterations: Some(iterations),
                        point: Some(point),
                    };
                }
                Ok(Inversion::NotAttained {
                    residual,
                    iterations,
                    ..
                }) => {
                    report.details = Details {
                        residual: Some(residual),
                        iterations: Some(iterations),
                        point: None,
                    };
                }
                Err(Error::BudgetExceeded {
                    iterations,
                    residual,
                }) => {
                    report.in_l2 = L2Verdict::Unknown;
                    report.details = Details {
                        residual: Some(residual),
                        iterations: Some(iterations),
                        point: None,
                    };
                }
                Err(e) => return Err(e),
            }
        }

        if let Some(filter) = &self.image_filter {
            if report.in_l2 == L2Verdict::Yes && !filter(cell, lambda) {
                report.in_l2 = L2Verdict::No;
            }
        }
        debug_assert!(report.in_l2 != L2Verdict::Yes || report.occurs);
        Ok(report)
    }
}

fn check_dominant_integral(cell: &Cell, lambda: &Weight) -> Result<()> {
    if lambda.rank() != cell.rank() {
        return Err(Error::DimensionMismatch {
            expected: cell.rank(),
            got: lambda.rank(),
        });
    }
    if !lambda.is_dominant_integral() {
        return Err(Error::NotDominantIntegral);
    }
    Ok(())
}

/// Whether the irreducible with highest weight `lambda` occurs in the sections over the cell's parabolic.
pub fn occurs_in_sections(cell: &Cell, lambda: &Weight) -> Result<bool> {
    check_dominant_integral(cell, lambda)?;
    Ok(cell.closure_contains(lambda))
}

pub fn square_integrable(
    cell: &Cell,
    potential: &Potential,
    lambda: &Weight,
    tol: f64,
) -> Result<ClassificationReport> {
    Classifier::default().square_integrable(cell, potential, lambda, tol)
}

// ---------------------------------------------------------------------------
// Quadrature oracle

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Box half-widths, strictly increasing.
    pub radii: Vec<f64>,
    /// Gauss–Legendre points per panel.
    pub order: usize,
    pub panel_width: f64,
    /// Relative size of the last increment below which the integral is convergent.
    pub eps: f64,
    /// Increment growth factor at or above which the integral is divergent.
    pub growth: f64,
    pub max_dim: usize,
    pub exponent_bound: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            radii: vec![2.0, 4.0, 8.0, 16.0, 32.0],
            order: 10,
            panel_width: 1.0,
            eps: 1e-6,
            growth: 1.5,
            max_dim: 3,
            exponent_bound: 700.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.radii.len() < 3 {
            return bad("at least three radii are needed");
        }
        if !self.radii.iter().all(|r| r.is_finite() && *r > 0.0) {
            return bad("radii must be positive and finite");
        }
        if !self.radii.windows(2).all(|w| w[0] < w[1]) {
            return bad("radii must be strictly increasing");
        }
        if self.order == 0 {
            return bad("quadrature order must be positive");
        }
        if !(self.panel_width.is_finite() && self.panel_width > 0.0) {
            return bad("panel width must be positive");
        }
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(Error::ToleranceInvalid(self.eps));
        }
        if !(self.growth.is_finite() && self.growth > 1.0) {
            return bad("growth factor must exceed 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvergenceVerdict {
    Convergent,
    Divergent,
    Inconclusive,
}

impl ConvergenceVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConvergenceVerdict::Convergent => "convergent",
            ConvergenceVerdict::Divergent => "divergent",
            ConvergenceVerdict::Inconclusive => "inconclusive",
        }
    }

    /// The L² verdict this quadrature outcome corresponds to.
    pub fn as_l2(&self) -> L2Verdict {
        match self {
            ConvergenceVerdict::Convergent => L2Verdict::Yes,
            ConvergenceVerdict::Divergent => L2Verdict::No,
            ConvergenceVerdict::Inconclusive => L2Verdict::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub radii: Vec<f64>,
    /// `∫_{[-R,R]^m} exp(-F + 2λ)` for each radius; non-decreasing.
    pub partial_integrals: Vec<f64>,
    pub verdict: ConvergenceVerdict,
    pub limit_estimate: Option<f64>,
}

/// Quadrature of the reduced norm integral over nested boxes.
pub fn l2_norm_integral(
    cell: &Cell,
    potential: &Potential,
    lambda: &Weight,
    cfg: &QuadratureConfig,
) -> Result<ConvergenceReport> {
    cfg.validate()?;
    let m = cell.dim();
    if m > cfg.max_dim {
        return Err(Error::DimensionTooLarge {
            dim: m,
            max: cfg.max_dim,
        });
    }
    if potential.cell() != cell {
        return Err(Error::CellMismatch {
            potential: potential.cell().pinned_labels(),
            requested: cell.pinned_labels(),
        });
    }
    let weight = MomentPoint::from_weight(cell, lambda)?;
    let twice: Vec<f64> = weight.coords().iter().map(|c| 2.0 * c).collect();
    let shells = cfg.radii.len();

    let per_shell: Vec<f64> = if m == 0 {
        let mut v = vec![0.0; shells];
        v[0] = integrand(potential, &[], &[], cfg.exponent_bound)?;
        v
    } else {
        let nodes = shell_nodes(&cfg.radii, cfg.order, cfg.panel_width);
        let rows: Vec<Vec<f64>> = nodes
            .par_iter()
            .map(|first| slab(potential, &twice, &nodes, first, shells, cfg.exponent_bound))
            .collect::<Result<_>>()?;
        let mut acc = vec![0.0; shells];
        for row in rows {
            for (a, r) in acc.iter_mut().zip(row) {
                *a += r;
            }
        }
        acc
    };

    let partial_integrals: Vec<f64> = per_shell
        .iter()
        .scan(0.0, |run, v| {
            *run += v;
            Some(*run)
        })
        .collect();
    let verdict = judge(&partial_integrals, cfg);
    let limit_estimate = (verdict == ConvergenceVerdict::Convergent)
        .then(|| *partial_integrals.last().expect("validated radii"));
    Ok(ConvergenceReport {
        radii: cfg.radii.clone(),
        partial_integrals,
        verdict,
        limit_estimate,
    })
}

/// Sum over all grid points whose first coordinate is `first`, binned by shell.
fn slab(
    potential: &Potential,
    twice: &[f64],
    nodes: &[ShellNode],
    first: &ShellNode,
    shells: usize,
    bound: f64,
) -> Result<Vec<f64>> {
    let m = twice.len();
    let mut acc = vec![0.0; shells];
    let mut idx = vec![0usize; m - 1];
    let mut y = vec![0.0; m];
    y[0] = first.x;
    loop {
        let mut w = first.w;
        let mut shell = first.shell;
        for (k, &i) in idx.iter().enumerate() {
            let node = &nodes[i];
            y[k + 1] = node.x;
            w *= node.w;
            shell = shell.max(node.shell);
        }
        acc[shell] += w * integrand(potential, twice, &y, bound)?;

        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(acc);
            }
            idx[k] += 1;
            if idx[k] < nodes.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn integrand(potential: &Potential, twice: &[f64], y: &[f64], bound: f64) -> Result<f64> {
    let f = match potential.evaluate(y) {
        Ok(f) => f,
        // a term beyond the bound makes exp(-F) vanish
        Err(Error::Overflow { .. }) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    let exponent = -f + twice.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    if exponent > bound {
        return Err(Error::Overflow { exponent, bound });
    }
    Ok(exponent.exp())
}

fn judge(partials: &[f64], cfg: &QuadratureConfig) -> ConvergenceVerdict {
    let k = partials.len();
    let last = partials[k - 1];
    let inc_last = partials[k - 1] - partials[k - 2];
    let inc_prev = partials[k - 2] - partials[k - 3];
    if last > 0.0 && inc_last / last < cfg.eps && inc_last <= inc_prev {
        return ConvergenceVerdict::Convergent;
    }
    if inc_prev > 0.0 && inc_last >= cfg.growth * inc_prev {
        return ConvergenceVerdict::Divergent;
    }
    ConvergenceVerdict::Inconclusive
}
