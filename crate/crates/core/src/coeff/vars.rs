//! Named commuting variables of the coefficient fields.
//!
//! The engine works over ℚ(q₁, q₃, u, …): the parameter q₂ is never stored,
//! it is eliminated everywhere through q₁q₂q₃ = 1. The Macdonald side uses
//! (q, t, x₁…x_N), the resonance specialization uses a single parameter p,
//! and z is the distinguished series/delta variable.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A variable name. `X(i)` is the Macdonald variable xᵢ (1-based), `USub(s)`
/// is the evaluation parameter u_s of the s-th tensor factor (1-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Var {
    Q1,
    Q3,
    U,
    P,
    Q,
    T,
    Z,
    X(u8),
    USub(u8),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q1 => write!(f, "q1"),
            Var::Q3 => write!(f, "q3"),
            Var::U => write!(f, "u"),
            Var::P => write!(f, "p"),
            Var::Q => write!(f, "q"),
            Var::T => write!(f, "t"),
            Var::Z => write!(f, "z"),
            Var::X(i) => write!(f, "x{}", i),
            Var::USub(s) => write!(f, "u{}", s),
        }
    }
}
