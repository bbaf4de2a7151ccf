//! Finite Coxeter systems: enumeration from a Coxeter matrix, lengths,
//! descents, reduced words, and parabolic coset machinery.

mod enumerate;
mod matrix;
mod system;
pub mod type_a;

pub use matrix::{named_matrix, CoxeterMatrix, GroupSpec};
pub use system::{format_word, parse_word, CoxeterSystem, Elem, GenSet, Side, DEFAULT_CAP};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Shared `S_n` (type `A_{n-1}`; `S_1` and `S_0` are the trivial rank-0
/// system), enumerated once per process.
pub fn symmetric_group(n: usize) -> Arc<CoxeterSystem> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CoxeterSystem>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("symmetric group cache poisoned");
    guard
        .entry(n.max(1))
        .or_insert_with(|| Arc::new(CoxeterSystem::symmetric(n.max(1))))
        .clone()
}
