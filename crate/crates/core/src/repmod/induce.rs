use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::module::HeckeModule;
use crate::coxeter::{symmetric_group, CoxeterSystem, Elem, GenSet};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::scalars::Rat;

/// Basis `{π_γ ⊗ e_k}` of an induced module: `γ` runs over the minimal left
/// coset representatives of `W_J / W_I` in (length, index) order, `k` over the
/// source basis. Pair `(γ_i, k)` sits at index `i · source_dim + k`.
#[derive(Clone, Debug, Serialize)]
pub struct InducedBasis {
    pub from: GenSet,
    pub to: GenSet,
    pub transversal: Vec<Elem>,
    pub source_dim: usize,
    #[serde(skip)]
    position: HashMap<Elem, usize>,
}

impl InducedBasis {
    pub fn new(sys: &CoxeterSystem, from: GenSet, to: GenSet, source_dim: usize) -> Self {
        let transversal: Vec<Elem> = sys
            .parabolic_elements(to)
            .into_iter()
            .filter(|&g| sys.is_min_left_rep(g, from))
            .collect();
        let position = transversal.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        InducedBasis {
            from,
            to,
            transversal,
            source_dim,
            position,
        }
    }

    pub fn len(&self) -> usize {
        self.transversal.len() * self.source_dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, gamma: Elem, k: usize) -> Option<usize> {
        self.position.get(&gamma).map(|i| i * self.source_dim + k)
    }

    pub fn coset_position(&self, gamma: Elem) -> Option<usize> {
        self.position.get(&gamma).copied()
    }

    pub fn pair(&self, idx: usize) -> (Elem, usize) {
        (self.transversal[idx / self.source_dim], idx % self.source_dim)
    }
}

/// An induced module together with its basis description.
#[derive(Clone, Debug)]
pub struct Induced {
    pub module: HeckeModule,
    pub basis: InducedBasis,
    pub source: HeckeModule,
}

impl Induced {
    /// Coordinates of `π_w ⊗ v` for `w ∈ W_J`: with `w = x y`, `x` minimal and
    /// `y ∈ W_I`, this is `π_x ⊗ ρ(π_y) v`.
    pub fn coords_of(&self, w: Elem, v: &[Rat]) -> Result<Vec<Rat>> {
        let sys = self.module.system();
        let (x, y) = sys.parabolic_factorize(w, self.basis.from);
        let pos = self
            .basis
            .coset_position(x)
            .ok_or_else(|| Error::ElementOutsideParabolic(sys.format_elem(w)))?;
        let image = self.source.act_on_vec(y, v)?;
        let mut out = vec![Rat::zero(); self.basis.len()];
        let d = self.basis.source_dim;
        for (k, c) in image.into_iter().enumerate() {
            out[pos * d + k] = c;
        }
        Ok(out)
    }

    /// Coordinates of `π_w ⊗ e_k`.
    pub fn coords_of_basis(&self, w: Elem, k: usize) -> Result<Vec<Rat>> {
        let mut e = vec![Rat::zero(); self.basis.source_dim];
        e[k] = Rat::one();
        self.coords_of(w, &e)
    }
}

impl HeckeModule {
    /// `H_J ⊗_{H_I} M` for `I ⊆ J`.
    ///
    /// For `j ∈ J` and a representative `γ`: if `s_jγ` is longer and again a
    /// representative the basis vector shifts; if longer but not minimal then
    /// `s_jγ = γ s'` with `s' ∈ I` and `ρ(π_{s'})` acts on the tensor factor;
    /// if shorter, `π_jπ_γ = a π_γ + b π_{s_jγ}`.
    pub fn induce(&self, to: GenSet) -> Result<Induced> {
        let sys = self.system().clone();
        sys.check_subset(to)?;
        let from = self.subset();
        if !from.is_subset(to) {
            return Err(Error::NotSubset {
                sub: from.to_string(),
                sup: to.to_string(),
            });
        }
        let basis = InducedBasis::new(&sys, from, to, self.dim());
        let d = self.dim();
        let n = basis.len();
        let params = self.params();
        let mut gens = BTreeMap::new();
        for j in to.iter() {
            let mut m = RatMatrix::zeros(n, n);
            for (gi, &g) in basis.transversal.iter().enumerate() {
                let sg = sys.lmul(j, g);
                if sys.length(sg) > sys.length(g) {
                    if let Some(si) = basis.coset_position(sg) {
                        for k in 0..d {
                            m.set(si * d + k, gi * d + k, Rat::one());
                        }
                    } else {
                        let s_prime = from
                            .iter()
                            .find(|&t| sys.rmul(g, t) == sg)
                            .expect("s_j γ = γ s' with s' in I when s_j γ is not minimal");
                        let rho = self.gen(s_prime);
                        for k in 0..d {
                            for l in 0..d {
                                let x = rho.get(l, k);
                                if !x.is_zero() {
                                    m.set(gi * d + l, gi * d + k, x.clone());
                                }
                            }
                        }
                    }
                } else {
                    let si = basis
                        .coset_position(sg)
                        .expect("shortening a minimal representative stays minimal");
                    for k in 0..d {
                        m.add_at(gi * d + k, gi * d + k, &params.a);
                        m.add_at(si * d + k, gi * d + k, &params.b);
                    }
                }
            }
            gens.insert(j, m);
        }
        let module = HeckeModule::new(&sys, to, params.clone(), n, gens)?;
        Ok(Induced {
            module,
            basis,
            source: self.clone(),
        })
    }

    /// `M ⊠ N = (M ⊗ N)↑^{H_{m+n}}_{H_m ⊗ H_n}` for `M` over the full `H_{S_m}`
    /// and `N` over the full `H_{S_n}`.
    pub fn boxtimes(m_mod: &HeckeModule, n_mod: &HeckeModule) -> Result<Induced> {
        let (m, n) = (full_type_a_size(m_mod)?, full_type_a_size(n_mod)?);
        if m_mod.params() != n_mod.params() {
            return Err(Error::ParamMismatch);
        }
        let big = symmetric_group(m + n);
        let tensor = outer_in_product(&big, m_mod, m, n_mod)?;
        tensor.induce(big.all_gens())
    }
}

/// `n` when the module lives over all of `H_{S_n}`.
pub fn full_type_a_size(module: &HeckeModule) -> Result<usize> {
    let sys = module.system();
    if !sys.matrix().is_type_a() {
        return Err(Error::NotTypeA(sys.label()));
    }
    if module.subset() != sys.all_gens() {
        return Err(Error::Invalid(format!(
            "expected a module over all of H_{}, got subset {}",
            sys.label(),
            module.subset()
        )));
    }
    Ok(sys.rank() + 1)
}

/// `M ⊗ N` as an `H_{S_m} ⊗ H_{S_n}`-module inside `H_{S_{m+n}}`: `M`'s
/// generators keep their labels, `N`'s shift by `m`.
pub fn outer_in_product(
    big: &Arc<CoxeterSystem>,
    m_mod: &HeckeModule,
    m: usize,
    n_mod: &HeckeModule,
) -> Result<HeckeModule> {
    let shift_m: BTreeMap<usize, usize> = m_mod.subset().iter().map(|i| (i, i)).collect();
    let shift_n: BTreeMap<usize, usize> = n_mod.subset().iter().map(|i| (i, i + m)).collect();
    let mm = m_mod.relabel(big, &shift_m)?;
    let nn = n_mod.relabel(big, &shift_n)?;
    mm.outer_tensor(&nn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ParamSpec;

    #[test]
    fn boxtimes_of_trivials_is_companion_shaped() {
        let p = ParamSpec::new(2, 3);
        let s1 = symmetric_group(1);
        let triv = HeckeModule::scalar(&s1, GenSet::empty(), &p, &Rat::one()).unwrap();
        let ind = HeckeModule::boxtimes(&triv, &triv).unwrap();
        assert_eq!(ind.module.dim(), 2);
        assert_eq!(ind.module.gen(0), &RatMatrix::from_i64(&[&[0, 3], &[1, 2]]));
        assert!(ind.module.validate().passed());
    }

    #[test]
    fn induction_dimensions_and_validity() {
        let sys = Arc::new(CoxeterSystem::named("B3").unwrap());
        for p in ParamSpec::battery() {
            for bits in 0u64..8 {
                let i = GenSet::from_indices((0..3).filter(|k| bits >> k & 1 == 1));
                let m = HeckeModule::regular(&sys, i, &p).unwrap();
                let ind = m.induce(sys.all_gens()).unwrap();
                assert_eq!(ind.module.dim(), 48, "I = {i}");
                assert!(ind.module.validate().passed(), "I = {i} at {p}");
            }
        }
    }

    #[test]
    fn induce_to_same_subset_is_identity() {
        let sys = Arc::new(CoxeterSystem::named("A2").unwrap());
        let p = ParamSpec::new(1, 0);
        let m = HeckeModule::regular(&sys, sys.all_gens(), &p).unwrap();
        let ind = m.induce(sys.all_gens()).unwrap();
        assert_eq!(ind.module, m);
    }

    #[test]
    fn coords_follow_parabolic_factorization() {
        let sys = Arc::new(CoxeterSystem::named("A2").unwrap());
        let p = ParamSpec::new(2, 3);
        let i = GenSet::from_labels(&[1]);
        let m = HeckeModule::regular(&sys, i, &p).unwrap();
        let ind = m.induce(sys.all_gens()).unwrap();
        // π_{s2 s1} ⊗ e_0 = π_{s2} ⊗ ρ(π_{s1}) e_0 = π_{s2} ⊗ e_1
        let w = sys.parse_elem("s2*s1").unwrap();
        let v = ind.coords_of_basis(w, 0).unwrap();
        let idx = ind.basis.index(sys.gen(1), 1).unwrap();
        assert!(v
            .iter()
            .enumerate()
            .all(|(k, x)| if k == idx { x.is_one() } else { x.is_zero() }));
    }
}
