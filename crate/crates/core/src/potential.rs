//! Strictly convex potentials on 𝔞_σ and their moment maps.
//!
//! A potential is a positive sum of exponentials of linear forms,
//! `F(y) = Σ_j c_j exp(μ_j(y))`, written in the coordinates of 𝔞_σ dual to the
//! cell's free fundamental weights. In these coordinates a covector is a
//! point of 𝔱_σ* with the same components in the fundamental-weight basis, so
//! the Legendre transform is the gradient map and the moment map is half of it.

use nalgebra::{DMatrix, DVector};
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cells::{cell_of_subset, Cell};
use crate::error::{Error, Result};
use crate::root_system::{rational_rank, RootDatum, Weight};

pub const DEFAULT_EXPONENT_BOUND: f64 = 700.0;

/// One summand `c · exp(μ(y))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    coeff: f64,
    form: Vec<Rational64>,
    form_f64: Vec<f64>,
}

impl Term {
    pub fn new(coeff: f64, form: Vec<Rational64>) -> Result<Self> {
        if !(coeff.is_finite() && coeff > 0.0) {
            return Err(Error::InvalidPotential(format!(
                "coefficient {coeff} is not a positive finite number"
            )));
        }
        if form.iter().all(Zero::is_zero) {
            return Err(Error::InvalidPotential(
                "constant terms are not allowed; use an offset".into(),
            ));
        }
        let form_f64 = form.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect();
        Ok(Self {
            coeff,
            form,
            form_f64,
        })
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    pub fn form(&self) -> &[Rational64] {
        &self.form
    }

    fn exponent(&self, y: &[f64]) -> f64 {
        self.form_f64.iter().zip(y).map(|(m, v)| m * v).sum()
    }
}

/// A point of 𝔱_σ* in the basis of the cell's free fundamental weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentPoint(Vec<f64>);

impl MomentPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    /// Restricts a weight of 𝔱_σ* to the free coordinates of `cell`.
    pub fn from_weight(cell: &Cell, weight: &Weight) -> Result<Self> {
        if weight.rank() != cell.rank() {
            return Err(Error::DimensionMismatch {
                expected: cell.rank(),
                got: weight.rank(),
            });
        }
        let off: Vec<usize> = cell
            .pinned_labels()
            .into_iter()
            .filter(|&l| !weight.coords()[l - 1].is_zero())
            .collect();
        if !off.is_empty() {
            return Err(Error::WeightOutsideCell(off));
        }
        Ok(Self(
            cell.free_indices()
                .into_iter()
                .map(|i| weight.coords()[i].to_f64().unwrap_or(f64::NAN))
                .collect(),
        ))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    cell: Cell,
    terms: Vec<Term>,
    offset: f64,
    exponent_bound: f64,
}

/// `F_P(y) = Σ_i exp(y_i)` over the free coordinates of the cell.
pub fn canonical_potential(cell: &Cell) -> Potential {
    let m = cell.dim();
    let terms = (0..m)
        .map(|i| {
            let mut form = vec![Rational64::zero(); m];
            form[i] = Rational64::from_integer(1);
            Term::new(1.0, form).expect("unit forms are valid")
        })
        .collect();
    Potential {
        cell: *cell,
        terms,
        offset: 0.0,
        exponent_bound: DEFAULT_EXPONENT_BOUND,
    }
}

impl Potential {
    pub fn new(cell: Cell, terms: Vec<Term>) -> Result<Self> {
        let m = cell.dim();
        for t in &terms {
            if t.form.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: t.form.len(),
                });
            }
        }
        if m > 0 && terms.is_empty() {
            return Err(Error::InvalidPotential("no terms".into()));
        }
        Ok(Self {
            cell,
            terms,
            offset: 0.0,
            exponent_bound: DEFAULT_EXPONENT_BOUND,
        })
    }

    /// Adds a constant to `F`. Gradients, moment values and verdicts are unaffected.
    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    pub fn with_exponent_bound(mut self, bound: f64) -> Self {
        self.exponent_bound = bound;
        self
    }

    pub fn cell(&self) -> &Cell {
        &self.cell
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.cell.dim()
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn exponent_bound(&self) -> f64 {
        self.exponent_bound
    }

    /// True when the terms are exactly those of the canonical potential (any offset).
    pub fn is_canonical(&self) -> bool {
        let canon = canonical_potential(&self.cell);
        self.terms == canon.terms
    }

    pub fn span_rank(&self) -> usize {
        let rows: Vec<Vec<Rational64>> = self.terms.iter().map(|t| t.form.clone()).collect();
        rational_rank(&rows)
    }

    /// Whether the forms span the dual of 𝔞_σ, which makes `F` strictly convex everywhere.
    pub fn spans(&self) -> bool {
        self.span_rank() == self.dim()
    }

    fn check_point(&self, y: &[f64]) -> Result<()> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: y.len(),
            });
        }
        Ok(())
    }

    /// `c_j exp(μ_j(y))` for every term.
    fn weights(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.check_point(y)?;
        self.terms
            .iter()
            .map(|t| {
                let e = t.exponent(y);
                if e > self.exponent_bound {
                    Err(Error::Overflow {
                        exponent: e,
                        bound: self.exponent_bound,
                    })
                } else {
                    Ok(t.coeff * e.exp())
                }
            })
            .collect()
    }

    pub fn evaluate(&self, y: &[f64]) -> Result<f64> {
        Ok(self.weights(y)?.iter().sum::<f64>() + self.offset)
    }

    pub fn gradient(&self, y: &[f64]) -> Result<Vec<f64>> {
        let w = self.weights(y)?;
        let mut g = vec![0.0; self.dim()];
        for (t, wj) in self.terms.iter().zip(&w) {
            for (gk, mk) in g.iter_mut().zip(&t.form_f64) {
                *gk += wj * mk;
            }
        }
        Ok(g)
    }

    pub fn hessian(&self, y: &[f64]) -> Result<DMatrix<f64>> {
        let w = self.weights(y)?;
        let m = self.dim();
        let mut h = DMatrix::zeros(m, m);
        for (t, wj) in self.terms.iter().zip(&w) {
            let mu = DVector::from_column_slice(&t.form_f64);
            h += *wj * &mu * mu.transpose();
        }
        Ok(h)
    }

    /// `Φ = ½ dF_y`.
    pub fn moment_map(&self, y: &[f64]) -> Result<MomentPoint> {
        Ok(MomentPoint(
            self.gradient(y)?.into_iter().map(|g| 0.5 * g).collect(),
        ))
    }

    pub fn hessian_pd_check(&self, samples: &[Vec<f64>]) -> ConvexityReport {
        let span_pass = self.spans();
        if self.dim() == 0 {
            return ConvexityReport {
                span_pass,
                sampled_pass: true,
                min_eigenvalue: None,
                samples_checked: 0,
                failures: 0,
            };
        }
        let mut min_eig: Option<f64> = None;
        let mut failures = 0;
        for y in samples {
            match self.hessian(y) {
                Ok(h) => {
                    let lo = h.symmetric_eigenvalues().min();
                    min_eig = Some(min_eig.map_or(lo, |m| m.min(lo)));
                    if lo <= 0.0 {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
        ConvexityReport {
            span_pass,
            sampled_pass: failures == 0,
            min_eigenvalue: min_eig,
            samples_checked: samples.len(),
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    /// Symbolic certificate: the forms span, so the Hessian is positive definite everywhere.
    pub span_pass: bool,
    pub sampled_pass: bool,
    pub min_eigenvalue: Option<f64>,
    pub samples_checked: usize,
    pub failures: usize,
}

impl ConvexityReport {
    pub fn pass(&self) -> bool {
        self.span_pass && self.sampled_pass
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonConfig {
    pub max_iterations: usize,
    /// Iterates leaving this sup-norm ball are declared divergent.
    pub radius: f64,
    /// Slack allowed in the asymptotic recession test on the Newton direction.
    pub recession_tol: f64,
    /// Relative Newton step below which a small residual counts as converged.
    pub step_tol: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            radius: 1e4,
            recession_tol: 1e-9,
            step_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Divergence {
    /// The iterate left the configured radius while the objective decreased.
    Radius,
    /// The Newton direction is a recession direction of the objective.
    Recession,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Inversion {
    Attained {
        point: Vec<f64>,
        residual: f64,
        iterations: usize,
    },
    NotAttained {
        last: Vec<f64>,
        residual: f64,
        iterations: usize,
        reason: Divergence,
    },
}

impl Inversion {
    pub fn is_attained(&self) -> bool {
        matches!(self, Inversion::Attained { .. })
    }
}

pub fn invert_moment(potential: &Potential, target: &MomentPoint, tol: f64) -> Result<Inversion> {
    invert_moment_with(potential, target, tol, &NewtonConfig::default())
}

/// Solves `½∇F(y) = target` by damped Newton on `φ(y) = F(y) - 2⟨target, y⟩`.
pub fn invert_moment_with(
    potential: &Potential,
    target: &MomentPoint,
    tol: f64,
    cfg: &NewtonConfig,
) -> Result<Inversion> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::ToleranceInvalid(tol));
    }
    let m = potential.dim();
    if target.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: target.dim(),
        });
    }
    if target.coords().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig("target has non-finite coordinates".into()));
    }
    let rank = potential.span_rank();
    if rank < m {
        return Err(Error::DegeneratePotential { rank, dim: m });
    }
    if m == 0 {
        return Ok(Inversion::Attained {
            point: Vec::new(),
            residual: 0.0,
            iterations: 0,
        });
    }

    let t = target.coords();
    let phi = |y: &[f64]| -> Option<f64> {
        let f = potential.evaluate(y).ok()?;
        Some(f - 2.0 * dot(t, y))
    };

    let mut y = vec![0.0; m];
    let mut residual = f64::INFINITY;
    for iteration in 0..cfg.max_iterations {
        let grad = potential.gradient(&y)?;
        residual = grad
            .iter()
            .zip(t)
            .map(|(g, ti)| (0.5 * g - ti).abs())
            .fold(0.0, f64::max);
        let obj_grad: Vec<f64> = grad.iter().zip(t).map(|(g, ti)| g - 2.0 * ti).collect();
        let hess = potential.hessian(&y)?;
        let d = newton_direction(hess, &obj_grad);
        let d_norm = sup_norm(&d);

        if residual < tol && d_norm <= cfg.step_tol * (1.0 + sup_norm(&y)) {
            return Ok(Inversion::Attained {
                point: y,
                residual,
                iterations: iteration,
            });
        }
        if d_norm > 0.0 && is_recession_direction(potential, t, &d, cfg.recession_tol) {
            return Ok(Inversion::NotAttained {
                last: y,
                residual,
                iterations: iteration,
                reason: Divergence::Recession,
            });
        }

        let phi0 = phi(&y).ok_or(Error::Overflow {
            exponent: f64::INFINITY,
            bound: potential.exponent_bound(),
        })?;
        let slope = dot(&obj_grad, &d);
        let noise = 8.0 * f64::EPSILON * (phi0.abs() + 2.0 * dot_abs(t, &y) + 1.0);
        let mut s = 1.0;
        let mut candidate = axpy(&y, s, &d);
        for _ in 0..60 {
            match phi(&candidate) {
                Some(v) if v <= phi0 + 1e-4 * s * slope + noise => break,
                _ => {
                    s *= 0.5;
                    candidate = axpy(&y, s, &d);
                }
            }
        }
        y = candidate;

        if sup_norm(&y) > cfg.radius {
            return Ok(Inversion::NotAttained {
                last: y,
                residual,
                iterations: iteration + 1,
                reason: Divergence::Radius,
            });
        }
    }
    Err(Error::BudgetExceeded {
        iterations: cfg.max_iterations,
        residual,
    })
}

/// `φ` is non-increasing along `d` iff every form is non-positive on `d` and `⟨t, d⟩ ≥ 0`;
/// a strictly convex `φ` with such a ray has no minimizer.
fn is_recession_direction(potential: &Potential, t: &[f64], d: &[f64], slack: f64) -> bool {
    let scale = sup_norm(d);
    let unit: Vec<f64> = d.iter().map(|v| v / scale).collect();
    potential
        .terms
        .iter()
        .all(|term| dot(&term.form_f64, &unit) <= slack)
        && dot(t, &unit) >= -slack
}

fn newton_direction(hess: DMatrix<f64>, obj_grad: &[f64]) -> Vec<f64> {
    let m = obj_grad.len();
    let rhs = -DVector::from_column_slice(obj_grad);
    if let Some(ch) = hess.clone().cholesky() {
        return ch.solve(&rhs).iter().copied().collect();
    }
    // Underflowed curvature: shift the spectrum until the factorization succeeds.
    let mut shift = f64::MIN_POSITIVE.max(f64::EPSILON * hess.trace().abs());
    for _ in 0..1100 {
        let shifted = &hess + DMatrix::identity(m, m) * shift;
        if let Some(ch) = shifted.cholesky() {
            return ch.solve(&rhs).iter().copied().collect();
        }
        shift *= 2.0;
    }
    rhs.iter().copied().collect()
}

/// Batch of inversions, one verdict per target, in input order.
pub fn legendre_image_probe(
    potential: &Potential,
    targets: &[MomentPoint],
    tol: f64,
) -> Vec<Result<Inversion>> {
    targets
        .par_iter()
        .map(|t| invert_moment(potential, t, tol))
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_abs(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x * y).abs()).sum()
}

fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn axpy(y: &[f64], s: f64, d: &[f64]) -> Vec<f64> {
    y.iter().zip(d).map(|(a, b)| a + s * b).collect()
}

// ---------------------------------------------------------------------------
// Potential spec files

/// On-disk form: `{"cell":{"S":[...]}, "terms":[{"c":float,"mu":[rationals]}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSpec {
    pub cell: CellSpec,
    pub terms: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellSpec {
    #[serde(rename = "S")]
    pub pinned: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermSpec {
    pub c: f64,
    pub mu: Vec<RationalRepr>,
}

/// A rational written as a JSON integer or a string such as `"3/2"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Int(i64),
    Text(String),
    Float(f64),
}

impl RationalRepr {
    pub fn to_rational(&self) -> Result<Rational64> {
        match self {
            RationalRepr::Int(v) => Ok(Rational64::from_integer(*v)),
            RationalRepr::Text(s) => parse_rational(s),
            RationalRepr::Float(f) => {
                if f.fract() == 0.0 && f.abs() < 1e15 {
                    Ok(Rational64::from_integer(*f as i64))
                } else {
                    Err(Error::InvalidPotential(format!(
                        "non-integer form entry {f}; write it as a string like \"1/2\""
                    )))
                }
            }
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::InvalidPotential(format!("cannot parse rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl PotentialSpec {
    /// Builds and validates a potential. Non-spanning forms are rejected.
    pub fn build(&self, datum: &RootDatum) -> Result<Potential> {
        let cell = cell_of_subset(datum, &self.cell.pinned)?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let form = t
                    .mu
                    .iter()
                    .map(RationalRepr::to_rational)
                    .collect::<Result<Vec<_>>>()?;
                Term::new(t.c, form)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut potential = Potential::new(cell, terms)?;
        let rank = potential.span_rank();
        if rank < potential.dim() {
            return Err(Error::DegeneratePotential {
                rank,
                dim: potential.dim(),
            });
        }
        if let Some(offset) = self.offset {
            if !offset.is_finite() {
                return Err(Error::InvalidPotential("offset must be finite".into()));
            }
            potential = potential.with_offset(offset);
        }
        Ok(potential)
    }
}
