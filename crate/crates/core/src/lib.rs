//! Exact combinatorics of stationary AF-actions of fusion categories.
//!
//! An action is given by a fusion ring `C`, a module category `M` over it
//! (left action matrices), a dual fusion ring `E` acting on `M` from the right,
//! a base object `m₀` and a generating object `Y` of `E`. From these the crate
//! builds the towers `A_n = End(m₀ ◁ Y^{⊗n})` and `B^Y_n = End(Y^{⊗n})`,
//! decides simplicity of their limits, produces unital embedding witnesses of
//! `B^Y_m` into relative commutants, and assembles a Z-stability verdict whose
//! certificate can be re-checked independently.
//!
//! All integer data is arbitrary precision. The Perron-Frobenius enclosure is
//! the only floating-point step and its bounds are verified exactly.

// Index loops mirror the subscripted formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod bratteli;
pub mod document;
pub mod error;
pub mod fusion;
pub mod graph;
pub mod linsolve;
pub mod matrix;
pub mod module_cat;
pub mod multimatrix;
pub mod perron;
pub mod registry;
pub mod stability;

pub use bratteli::{
    decide_simplicity, default_horizon, diagram_for_a, diagram_for_by, telescope, trace_data,
    BratteliDiagram, Simplicity,
};
pub use document::{parse, ActionDocument, ParseError};
pub use error::{Error, Result};
pub use fusion::{strong_generator, FusionRing, ObjectVec};
pub use matrix::IntMatrix;
pub use module_cat::{regular_module, verify_action, BimoduleAction, ModuleData};
pub use multimatrix::{
    central_capacity, embedding_feasible, MultiMatrixInclusion, MultiMatrixShape,
};
pub use perron::{fp_dimension, PfEnclosure};
pub use stability::{analyze, d_stability_note, AnalyzeOptions, StabilityReport, Verdict};
