//! Exact-rational linear inequality systems over named variables.
//!
//! All constants live in pi-units: the inequality `sum coeffs * v <= rhs`
//! constrains points whose coordinates are angles divided by pi, so every
//! bound of interest (0, 1, 2 for 0, pi, 2pi) is a small rational and the
//! whole pipeline — absolute-value expansion, Fourier-Motzkin elimination,
//! simplex implication, redundancy removal — runs in exact arithmetic.
//! Radians only appear at the module boundary.

mod builders;
mod eliminate;
mod linsys;
mod redundancy;
mod simplex;

pub use builders::{build_named_system, SystemName};
pub use eliminate::{eliminate_in_order, fm_eliminate, lift_witness};
pub use linsys::{AbsIneq, LinExpr, LinIneq, LinSystem};
pub use redundancy::{implies, is_feasible, mutually_implies, remove_redundant};
pub use simplex::{simplex_min, LpOutcome};

use num_rational::BigRational;
use thiserror::Error;

/// Exactness carrier for the whole crate.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational n/d.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[derive(Debug, Error, PartialEq)]
pub enum FmeError {
    #[error("variable {0:?} is not declared in the system")]
    VariableNotFound(String),
    #[error("unknown system name {0:?}")]
    UnknownName(String),
    #[error("system is infeasible")]
    Infeasible,
    #[error("system is unbounded in the queried direction")]
    Unbounded,
    #[error("empty interval while lifting {0:?}: lower bound {1} exceeds upper bound {2}")]
    EmptyInterval(String, Rat, Rat),
}
