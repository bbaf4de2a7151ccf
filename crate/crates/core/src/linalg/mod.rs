//! Exact dense linear algebra over ℚ and word-sized prime fields.

pub mod modp;
mod rat_matrix;

pub use rat_matrix::RatMatrix;
