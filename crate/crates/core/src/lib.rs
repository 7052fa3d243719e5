//! Exact operator algebra for the Coulomb problem in two and three
//! dimensions, with numeric cross-checks.

pub mod cli;
pub mod error;
pub mod exact;
pub mod ladder;
pub mod laguerre;
pub mod opcore;
pub mod radial;
pub mod verify;
pub mod wavefn;

pub use error::{Error, Result};
