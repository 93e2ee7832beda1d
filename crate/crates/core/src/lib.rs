//! Exact counts of simple summands in tensor powers of the generating object
//! of diagram and interpolation categories, with three cross-checking
//! routes (cellular closed forms, exponential generating functions, brute
//! enumeration) and numerical checks of their growth asymptotics.

pub mod asymptotics;
pub mod bigmath;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod guards;
pub mod qalgebra;
pub mod series;

pub use error::{GrowthError, Result};
pub use families::{bn, DiagramFamily, GrowthSequence, Provenance};
