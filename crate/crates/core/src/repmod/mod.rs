//! Finite-dimensional modules over parabolic subalgebras `H_I ⊆ H_W(a, b)`,
//! given by matrices for the generators, and the functors between them.

mod induce;
mod iso;
mod module;

pub use induce::{full_type_a_size, outer_in_product, Induced, InducedBasis};
pub use iso::{is_invertible, iso_test, IsoOutcome, ModuleMap};
pub use module::{HeckeModule, ModuleFile, RelationCheck, ValidationReport};
