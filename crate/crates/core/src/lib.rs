//! Finite quasigroups and loops with inverse properties, their product
//! constructions, and linearizations as Hopf quasigroups.

pub mod catalog;
pub mod constructions;
pub mod diagnostics;
pub mod error;
pub mod factorization;
pub mod hopf;
pub mod inverse;
pub mod io;
pub mod perm;
pub mod quasigroup;
pub mod search;

pub use error::{Error, Result};
