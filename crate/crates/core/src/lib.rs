//! Finite Coxeter systems, two-parameter Hecke algebras `H_W(a, b)`, their
//! modules, and explicit verification of Mackey-type decompositions and
//! involution twists.

pub mod coxeter;
pub mod error;
pub mod exec;
pub mod hecke;
pub mod linalg;
pub mod mackey;
pub mod repmod;
pub mod report;
pub mod scalars;
pub mod suite;
pub mod twists;

pub use error::{Error, Result};
