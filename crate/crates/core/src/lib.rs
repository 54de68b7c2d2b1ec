//! Maximal-entropy random walks and central Markov chains on weighted
//! Bratteli diagrams.

pub mod chain;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod growth;
pub mod knuth;
pub mod lattice;
pub mod rng;
pub mod scalar;
pub mod shape;
pub mod tree;

pub use error::{Error, Result};
pub use scalar::{Exact, Scalar};
