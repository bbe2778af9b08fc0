//! Detection of n-qubit n-partite inseparability.
//!
//! The crate provides a dense complex linear-algebra substrate ([`linalg`]),
//! single-qubit positive maps and their partial or product application
//! ([`maps`]), one-sided inseparability criteria ([`criteria`]), fixture state
//! generators ([`states`]) and a table of closed-form reference checks
//! ([`reproduce`]).

pub mod criteria;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod reproduce;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityOperator, HermitianOperator};
