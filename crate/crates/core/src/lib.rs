//! Cells of the closed Weyl chamber, moment-map images of exponential Kähler
//! potentials on `G/(P,P)`, and the resulting classification of holomorphic
//! and square-integrable highest-weight representations.
//!
//! The pieces, bottom-up:
//!
//! - [`root_system`]: exact root data (Cartan matrix, symmetrizers, positive
//!   roots, Gram matrix of fundamental weights) for products of simple types.
//! - [`cells`]: the `2^n` cells of the closed chamber indexed by subsets of
//!   simple roots, one per parabolic containing the Borel.
//! - [`potential`]: strictly convex sums of exponentials on `𝔞_σ`, their
//!   gradients and Hessians, the moment map `½ dF`, and its inversion.
//! - [`classifier`]: occurrence (`λ ∈ σ̄`) and square-integrability
//!   (`λ` in the moment image), with a quadrature oracle for the norm integral.
//! - [`model`]: the sweep over all parabolics checking multiplicity one.
//! - [`cli`]: the `weyl-model` command line.

#![allow(clippy::needless_range_loop)]

pub mod cells;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod model;
pub mod potential;
pub mod quadrature;
pub mod root_system;

pub use cells::{cell_of_subset, cell_of_weight, enumerate_cells, Cell};
pub use classifier::{
    l2_norm_integral, occurs_in_sections, square_integrable, ClassificationReport, Classifier,
    ConvergenceReport, ConvergenceVerdict, L2Verdict, Method, QuadratureConfig,
};
pub use error::{Error, Result};
pub use model::{build_model_catalog, verify_multiplicity_one, ModelCatalog, MultiplicityReport};
pub use potential::{
    canonical_potential, invert_moment, legendre_image_probe, Inversion, MomentPoint, NewtonConfig,
    Potential, Term,
};
pub use root_system::{build_root_datum, RootDatum, RootSystemSpec, Weight};
