//! Saturation of 0-1 matrix patterns.
//!
//! A matrix `M` contains a pattern `P` if `P` can be obtained from `M` by
//! deleting rows and columns and turning 1-entries into 0s. `M` is saturated
//! for `P` if it avoids `P` and every added 1-entry creates an occurrence.
//! This crate decides containment, classifies patterns structurally, builds
//! and verifies witnesses certifying bounded saturation, and computes exact
//! `sat`/`ex` values on small grids.

pub mod catalog;
pub mod classify;
pub mod contain;
pub mod error;
pub mod matrix;
pub mod report;
pub mod search;
pub mod witness;

pub use classify::{
    anti_identity_occurrences, is_once_separable, is_permutation, is_trivial, max_anti_identity_height, outer_class,
    AntiIdentityOccurrence, ClassLabel, Orientation, OuterClass, Split,
};
pub use contain::{avoids, contains, contains_using};
pub use error::{Error, Result};
pub use matrix::{apply_symmetry, format_matrix, parse_matrix, Matrix, Occurrence, Pattern, SymmetryOp};
pub use report::{classification_report, Certificate, ReportRow, ReportTable};
pub use search::{
    canonical_form, ex_exact, is_saturated, orbit, permutation_matrices, sat_exact, Extremum, SearchBudget,
    SymmetryGroup,
};
pub use witness::{
    compose, construct_w, expandable_cols, expandable_rows, extend, saturate, verify, Side, WConstruction,
    WitnessReport,
};
