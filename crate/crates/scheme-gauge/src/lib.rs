//! Semidefinite and linear-programming bounds on cut problems for graphs
//! with large combinatorial symmetry.
//!
//! For a graph whose adjacency matrix lies in (or splits over) the
//! Bose-Mesner algebra of an association scheme, the vector-relaxation
//! bound on maximum cut and its gauge dual collapse to small linear
//! programs over the first eigenmatrix of the scheme, and further to
//! closed-form spectral expressions. This crate computes those bounds with
//! explicit certificates, the analogous quadratic-program pair used for
//! MAX 2-SAT, brute-force oracles for validation, and hyperplane-rounding
//! experiments.

pub mod bounds;
pub mod cli;
pub mod coherent;
pub mod error;
pub mod graphs;
pub mod linalg;
pub mod lp;
pub mod max2sat;
pub mod oracles;
pub mod report;
pub mod rng;
pub mod rounding;
pub mod schemes;

pub use error::{Error, Result};
