//! Exact computation with cluster algebras and their coefficients.
//!
//! Directions and paths in the public API are 1-based; vectors and matrices
//! are indexed from 0 internally.

pub mod bipartite;
pub mod error;
pub mod exchange_graph;
pub mod finite_type;
pub mod laurent;
pub mod matrix;
pub mod mutation;
mod packed;
pub mod parametrization;
pub mod parse;
pub mod principal;
pub mod rational;
pub mod semifield;

pub use error::{Error, Result};
pub use laurent::{Laurent, Vars};
pub use matrix::IntMatrix;
pub use rational::RationalExpr;
