//! Exact numerics for moduli of semistable sheaves on the projective plane:
//! Chern characters, exceptional slopes, the Drézet–Le Potier curve,
//! Brill–Noether dimension counts and extremal decompositions.

pub mod brillnoether;
pub mod dlp;
pub mod error;
pub mod exceptional;
pub mod extremal;
pub mod kernel;
pub mod rational;
pub mod verify;

pub use dlp::{classify, Branch, CurveEvaluation, StabilityVerdict, VerdictKind};
pub use error::{Error, Result};
pub use exceptional::{DyadicIndex, ExceptionalSlope, ExceptionalTable};
pub use extremal::{ExtremalTriple, Variant};
pub use kernel::{CharP2, InvariantView};
pub use rational::Rational;
pub use verify::VerificationReport;

/// Dyadic depth used when a caller does not choose one.
pub const DEFAULT_DEPTH: u32 = 10;
