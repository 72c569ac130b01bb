//! Rationally extended generalized Pöschl–Teller and PT-symmetric Scarf-II
//! potentials from a modified potential-algebra construction, with
//! finite-difference spectral verification.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod potentials;
pub mod specialfun;
pub mod spectral;
pub mod susy;

pub use algebra::{Family, PotentialParams};
pub use error::{Error, Result};
