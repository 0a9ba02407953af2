pub mod bands;
pub mod coupling;
pub mod dynamics;
pub mod hamiltonian;
pub mod spectrum;
pub mod runner;
pub mod steady;
pub mod error;
pub mod geometry;

pub use error::{Result, RingsimError};
