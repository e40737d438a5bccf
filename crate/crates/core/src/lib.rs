//! Executable semantics for exponential modalities and their liftings to
//! Eilenberg-Moore categories.
//!
//! Every commutative diagram is a pair of composite paths compared by
//! degree-bounded equality over one of the concrete instances: finite sets
//! and functions, finite and graded sets with relations, and exact rational
//! matrices.

pub mod additive;
pub mod cli;
pub mod error;
pub mod hopf;
pub mod instances;
pub mod kernel;
pub mod lifting;
pub mod modality;
pub mod monadic;
pub mod monoidal;

pub use error::{Error, Result};
