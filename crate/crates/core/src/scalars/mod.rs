//! Exact coefficient arithmetic: rationals, the polynomial ring `ℤ[a, b]`, and
//! specialization points `(a0, b0)`.

mod bipoly;
mod rat;

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use bipoly::{y_seq, BiPoly, Monomial};
pub use rat::Rat;

use crate::error::Error;

/// A specialization point for the Hecke parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamSpec {
    pub a: Rat,
    pub b: Rat,
}

impl ParamSpec {
    pub fn new(a: i64, b: i64) -> Self {
        ParamSpec {
            a: Rat::from_int(a),
            b: Rat::from_int(b),
        }
    }

    /// The fixed specializations every theorem check runs at: 0-Hecke,
    /// nil-Coxeter, and two generic points.
    pub fn battery() -> Vec<ParamSpec> {
        vec![
            ParamSpec::new(1, 0),
            ParamSpec::new(0, 0),
            ParamSpec::new(2, 3),
            ParamSpec::new(-1, 1),
        ]
    }

    /// A pseudo-random rational pair derived from `seed`, with nonzero `b`.
    pub fn seeded(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0ab0);
        let mut draw = |nonzero: bool| loop {
            let n: i64 = rng.gen_range(-7..=7);
            let d: i64 = rng.gen_range(1..=5);
            if !nonzero || n != 0 {
                return Rat::new(n, d);
            }
        };
        let a = draw(false);
        let b = draw(true);
        ParamSpec { a, b }
    }

    /// Roots of `x^2 - a0 x - b0` in ℚ, i.e. the eigenvalues a generator can
    /// take in a one-dimensional module. Sorted ascending, deduplicated.
    pub fn rational_eigenvalues(&self) -> Vec<Rat> {
        // x = (a ± sqrt(a^2 + 4b)) / 2
        let disc = &self.a * &self.a + Rat::from_int(4) * &self.b;
        let Some(root) = rational_sqrt(&disc) else {
            return Vec::new();
        };
        let two = Rat::from_int(2);
        let mut out = vec![(&self.a - &root) / &two, (&self.a + &root) / &two];
        out.sort();
        out.dedup();
        out
    }

    pub fn is_eigenvalue(&self, lambda: &Rat) -> bool {
        lambda * lambda == &self.a * lambda + &self.b
    }
}

fn rational_sqrt(r: &Rat) -> Option<Rat> {
    use num_traits::Signed;
    if r.numer().is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl std::str::FromStr for ParamSpec {
    type Err = Error;

    /// Accepts `a,b` with optional surrounding parentheses, e.g. `1,0` or `(2,-1/3)`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `a,b`, got `{s}`")))?;
        Ok(ParamSpec {
            a: a.parse()?,
            b: b.parse()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_at_battery_points() {
        assert_eq!(
            ParamSpec::new(1, 0).rational_eigenvalues(),
            vec![Rat::zero(), Rat::one()]
        );
        assert_eq!(ParamSpec::new(0, 0).rational_eigenvalues(), vec![Rat::zero()]);
        assert_eq!(
            ParamSpec::new(2, 3).rational_eigenvalues(),
            vec![Rat::from_int(-1), Rat::from_int(3)]
        );
        // x^2 + x - 1 has irrational roots
        assert!(ParamSpec::new(-1, 1).rational_eigenvalues().is_empty());
    }

    #[test]
    fn parse_and_display() {
        let p: ParamSpec = "(2,-1/3)".parse().unwrap();
        assert_eq!(p.to_string(), "(2,-1/3)");
        assert!("2".parse::<ParamSpec>().is_err());
    }

    #[test]
    fn seeded_is_deterministic() {
        assert_eq!(ParamSpec::seeded(42), ParamSpec::seeded(42));
        assert!(!ParamSpec::seeded(42).b.is_zero());
    }
}
