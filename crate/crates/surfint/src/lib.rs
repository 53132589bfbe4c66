//! Numerical verification of curvature integral identities on parametric
//! surfaces in R³.
//!
//! Given a surface patch as a parametric chart `(u, v) ↦ X(u, v)` and vector
//! or scalar fields as parsed expressions, this crate computes principal
//! curvature frames by exact second-order forward-mode differentiation,
//! integrates by composite Gauss–Legendre quadrature, and checks both sides
//! of a family of classical integral identities against each other to
//! quantified tolerances: generalized Stokes pairings, divergence- and
//! curvature-weighted boundary formulas, Minkowski's formulas, the Liouville
//! derivative of the tangent turning angle, Gauss–Bonnet, vector-field
//! winding numbers, and Poincaré–Hopf.
//!
//! The fastest way in is the examples directory (`cargo run -p surfint
//! --example <name>`):
//!
//! * `parse_and_autodiff` — expression grammar and second-order jets
//! * `principal_frames` — curvature frames on catalog surfaces
//! * `quadrature_convergence` — composite Gauss–Legendre error behaviour
//! * `gauss_bonnet_catalog` — the Gauss–Bonnet check across the catalog
//! * `curvature_identities` — boundary/surface identity pairs with residuals
//! * `liouville_formula` — pointwise turning-angle residual sweeps
//! * `vector_field_index` — winding numbers and Poincaré–Hopf budgeting
//! * `hessian_identities` — the difference-of-curvature Hessian pair
//! * `custom_surface` — verifying a user-supplied surface definition file
//!
//! The same capabilities are scriptable through the thin `verify` binary
//! (`cargo run -p surfint --bin verify -- --help`), which reads surfaces from
//! the built-in catalog or from JSON definition files and writes text, JSON,
//! or CSV reports.

pub mod catalog;
pub mod cli;
mod error;
pub mod expr;
pub mod fields;
pub mod geometry;
pub mod identities;
pub mod quadrature;

pub use error::{Error, Result};
