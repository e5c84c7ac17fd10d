//! Exact symbolic engine for quantum continuous gl∞.
//!
//! The algebra depends on parameters q₁, q₂, q₃ with q₁q₂q₃ = 1 and acts on
//! a family of modules (vector, tensor, W^N, Fock, resonance) by explicit
//! delta-function formulas. Everything here is exact: coefficients are
//! rational functions over ℚ, relations are verified symbolically on finite
//! windows, and an independent Macdonald-polynomial engine cross-checks the
//! representation formulas.

pub mod coeff;
pub mod partition;
pub mod daha;
pub mod macdonald;
pub mod par;
pub mod relations;
pub mod suites;
pub mod reps;
