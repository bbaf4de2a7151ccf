//! Element arithmetic in `H_W(a, b)` over `ℤ[a, b]`, its named
//! (anti-)involutions, and the parabolic conjugation isomorphisms `c_w`.

pub mod checks;
mod element;
mod morphism;

pub(crate) use element::same_system;
pub use element::{Basis, HeckeElement};
pub use morphism::{MorphKind, MorphName, MorphismSpec};
