//! The multiplicity-one model: sum of the square-integrable sections over all
//! parabolics, each carrying its canonical potential.
//!
//! A catalog sweeps the box of dominant integral weights with coordinates up
//! to `bound`, classifies every weight against every cell, and records which
//! cells contribute. The model property holds when each weight has exactly one
//! contributor, and that contributor is the cell read off the weight's zero pattern.

use rayon::prelude::*;

use crate::cells::{cell_of_weight, enumerate_cells, Cell};
use crate::classifier::{Classifier, L2Verdict};
use crate::error::{Error, Result};
use crate::potential::{canonical_potential, Potential};
use crate::root_system::{RootDatum, Weight};

pub const MAX_MODEL_RANK: usize = 6;

/// Tolerance handed to the classifier; canonical potentials take the exact path.
const SWEEP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub lambda: Weight,
    pub contributors: Vec<Cell>,
    /// `cell_of_weight(λ)`.
    pub expected: Cell,
}

impl CatalogEntry {
    /// The unique contributing cell, if there is exactly one.
    pub fn assignment(&self) -> Option<Cell> {
        match self.contributors.as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Missing,
    Repeated,
    Misassigned,
}

impl ViolationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationKind::Missing => "missing",
            ViolationKind::Repeated => "repeated",
            ViolationKind::Misassigned => "misassigned",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub lambda: Weight,
    pub kind: ViolationKind,
    pub contributors: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelCatalog {
    pub datum: RootDatum,
    pub bound: u32,
    pub cell_count: usize,
    /// Lexicographic in λ.
    pub entries: Vec<CatalogEntry>,
    pub violations: Vec<Violation>,
}

impl ModelCatalog {
    pub fn assignment(&self, lambda: &Weight) -> Option<Cell> {
        self.entries
            .binary_search_by(|e| e.lambda.cmp(lambda))
            .ok()
            .and_then(|i| self.entries[i].assignment())
    }

    /// Number of swept weights uniquely assigned to `cell`.
    pub fn count_assigned_to(&self, cell: &Cell) -> usize {
        self.entries
            .iter()
            .filter(|e| e.assignment().as_ref() == Some(cell))
            .count()
    }
}

pub fn build_model_catalog(datum: &RootDatum, bound: u32) -> Result<ModelCatalog> {
    build_model_catalog_with(datum, bound, &Classifier::default())
}

pub fn build_model_catalog_with(
    datum: &RootDatum,
    bound: u32,
    classifier: &Classifier,
) -> Result<ModelCatalog> {
    let rank = datum.rank();
    if rank > MAX_MODEL_RANK {
        return Err(Error::DimensionTooLarge {
            dim: rank,
            max: MAX_MODEL_RANK,
        });
    }
    let cells = enumerate_cells(datum);
    let potentials: Vec<Potential> = cells.iter().map(canonical_potential).collect();
    let weights = weight_box(rank, bound);

    let entries: Vec<CatalogEntry> = weights
        .into_par_iter()
        .map(|lambda| {
            let mut contributors = Vec::new();
            for (cell, potential) in cells.iter().zip(&potentials) {
                let report = classifier.square_integrable(cell, potential, &lambda, SWEEP_TOL)?;
                if report.in_l2 == L2Verdict::Yes {
                    contributors.push(*cell);
                }
            }
            let expected = cell_of_weight(datum, &lambda)?;
            Ok(CatalogEntry {
                lambda,
                contributors,
                expected,
            })
        })
        .collect::<Result<_>>()?;

    let violations = entries
        .iter()
        .filter_map(|e| {
            let kind = match e.contributors.as_slice() {
                [] => ViolationKind::Missing,
                [only] if *only == e.expected => return None,
                [_] => ViolationKind::Misassigned,
                _ => ViolationKind::Repeated,
            };
            Some(Violation {
                lambda: e.lambda.clone(),
                kind,
                contributors: e.contributors.clone(),
            })
        })
        .collect();

    Ok(ModelCatalog {
        datum: datum.clone(),
        bound,
        cell_count: cells.len(),
        entries,
        violations,
    })
}

/// All weights with integer coordinates in `0..=bound`, lexicographic.
fn weight_box(rank: usize, bound: u32) -> Vec<Weight> {
    let side = bound as usize + 1;
    let total = side.pow(rank as u32);
    (0..total)
        .map(|mut code| {
            let mut coords = vec![0i64; rank];
            for c in coords.iter_mut().rev() {
                *c = (code % side) as i64;
                code /= side;
            }
            Weight::from_integers(&coords)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityReport {
    pub ok: bool,
    pub weights: usize,
    pub cells: usize,
    pub missing: Vec<Weight>,
    pub repeated: Vec<(Weight, Vec<Cell>)>,
}

impl MultiplicityReport {
    pub fn summary(&self) -> String {
        if self.ok {
            format!("MODEL OK ({} weights, {} cells)", self.weights, self.cells)
        } else {
            format!(
                "MODEL VIOLATION ({} weights, {} cells, {} missing, {} repeated)",
                self.weights,
                self.cells,
                self.missing.len(),
                self.repeated.len()
            )
        }
    }
}

/// True iff every swept weight has exactly one contributing cell.
pub fn verify_multiplicity_one(catalog: &ModelCatalog) -> MultiplicityReport {
    let mut missing = Vec::new();
    let mut repeated = Vec::new();
    for e in &catalog.entries {
        match e.contributors.len() {
            0 => missing.push(e.lambda.clone()),
            1 => {}
            _ => repeated.push((e.lambda.clone(), e.contributors.clone())),
        }
    }
    MultiplicityReport {
        ok: missing.is_empty() && repeated.is_empty(),
        weights: catalog.entries.len(),
        cells: catalog.cell_count,
        missing,
        repeated,
    }
}
