//! Both sides of the Mackey decomposition for `H_W(a, b)`, the explicit
//! isomorphisms between them, and the type-A specialization to induction
//! products.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use crate::coxeter::type_a::{format_one_line, from_one_line, w_family, young_subset};
use crate::coxeter::{symmetric_group, CoxeterSystem, Elem, GenSet};
use crate::error::{Error, Result};
use crate::hecke::MorphismSpec;
use crate::linalg::RatMatrix;
use crate::repmod::{full_type_a_size, iso_test, outer_in_product, HeckeModule, Induced};
use crate::report::VerificationReport;
use crate::scalars::Rat;

/// One summand `c_τ[M↓_{K'}]↑^{H_J}_{H_K}` with `K = J ∩ τIτ⁻¹`, `K' = τ⁻¹Kτ`.
#[derive(Clone, Debug)]
pub struct MackeyBlock {
    pub tau: Elem,
    pub k: GenSet,
    pub k_prime: GenSet,
    /// First basis index of this block inside the direct sum.
    pub offset: usize,
    pub induced: Induced,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockRow {
    pub tau: String,
    pub k: GenSet,
    pub k_prime: GenSet,
    pub index: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct MackeyInstance {
    pub j: GenSet,
    pub source: HeckeModule,
    /// `M↑^{H_S}_{H_I}` before restriction.
    pub induced: Induced,
    /// `M↑^{H_S}_{H_I}↓_{H_J}`.
    pub lhs: HeckeModule,
    pub blocks: Vec<MackeyBlock>,
    pub rhs: HeckeModule,
}

impl MackeyInstance {
    pub fn system(&self) -> &Arc<CoxeterSystem> {
        self.source.system()
    }

    pub fn i(&self) -> GenSet {
        self.source.subset()
    }

    pub fn block_of(&self, tau: Elem) -> Option<&MackeyBlock> {
        self.blocks.iter().find(|b| b.tau == tau)
    }

    pub fn block_table(&self) -> Vec<BlockRow> {
        let sys = self.system();
        self.blocks
            .iter()
            .map(|b| BlockRow {
                tau: sys.format_elem(b.tau),
                k: b.k,
                k_prime: b.k_prime,
                index: b.induced.basis.transversal.len(),
                dim: b.induced.module.dim(),
            })
            .collect()
    }

    pub fn describe(&self) -> serde_json::Value {
        json!({
            "group": self.system().label(),
            "I": self.i(),
            "J": self.j,
            "module_dim": self.source.dim(),
        })
    }
}

/// Builds `M↑↓_{H_J}` and `⊕_τ c_τ[M↓]↑^{H_J}` for `M` over `H_I`.
pub fn build_sides(m: &HeckeModule, j: GenSet) -> Result<MackeyInstance> {
    let sys = m.system().clone();
    sys.check_subset(j)?;
    let i = m.subset();
    let induced = m.induce(sys.all_gens())?;
    let lhs = induced.module.restrict(j)?;
    let mut blocks = Vec::new();
    let mut offset = 0;
    for tau in sys.double_coset_reps(j, i) {
        let c = MorphismSpec::c_w(&sys, tau, j, i)?;
        let twisted = m.restrict(c.codomain())?.twist_along(&c)?;
        let ind = twisted.induce(j)?;
        let dim = ind.module.dim();
        blocks.push(MackeyBlock {
            tau,
            k: c.domain(),
            k_prime: c.codomain(),
            offset,
            induced: ind,
        });
        offset += dim;
    }
    let parts: Vec<HeckeModule> = blocks.iter().map(|b| b.induced.module.clone()).collect();
    let rhs = HeckeModule::direct_sum(&parts)?;
    Ok(MackeyInstance {
        j,
        source: m.clone(),
        induced,
        lhs,
        blocks,
        rhs,
    })
}

/// `Φ : lhs → rhs`, `π_w ⊗ m ↦ E_τ(π_u ⊗ π_v m)` for `w = u τ v`, and
/// `Ψ : rhs → lhs`, `E_τ(π_ξ ⊗ m) ↦ π_ξ π_τ ⊗ m`.
pub fn build_phi_psi(inst: &MackeyInstance) -> Result<(RatMatrix, RatMatrix)> {
    let sys = inst.system();
    let (i, j) = (inst.i(), inst.j);
    let d = inst.source.dim();
    let (nl, nr) = (inst.lhs.dim(), inst.rhs.dim());
    let mut phi = RatMatrix::zeros(nr, nl);
    for (gi, &gamma) in inst.induced.basis.transversal.iter().enumerate() {
        let (u, tau, v) = sys.triple_factorize(gamma, j, i);
        let block = inst
            .block_of(tau)
            .ok_or_else(|| Error::Invalid(format!("no block for {}", sys.format_elem(tau))))?;
        let upos = block
            .induced
            .basis
            .coset_position(u)
            .ok_or_else(|| Error::Invalid(format!("{} is not a block representative", sys.format_elem(u))))?;
        for k in 0..d {
            let mut e = vec![Rat::zero(); d];
            e[k] = Rat::one();
            let image = inst.source.act_on_vec(v, &e)?;
            for (l, c) in image.into_iter().enumerate() {
                if !c.is_zero() {
                    phi.set(block.offset + upos * d + l, gi * d + k, c);
                }
            }
        }
    }
    let mut psi = RatMatrix::zeros(nl, nr);
    for block in &inst.blocks {
        for (xi_pos, &xi) in block.induced.basis.transversal.iter().enumerate() {
            let w = sys.mul(xi, block.tau);
            for k in 0..d {
                let col = inst.induced.coords_of_basis(w, k)?;
                for (r, c) in col.into_iter().enumerate() {
                    if !c.is_zero() {
                        psi.set(r, block.offset + xi_pos * d + k, c);
                    }
                }
            }
        }
    }
    Ok((phi, psi))
}

/// Checks that `Φ` and `Ψ` are mutually inverse `H_J`-module maps.
pub fn verify(inst: &MackeyInstance) -> VerificationReport {
    let mut rep = VerificationReport::new("mackey", inst.describe(), Some(inst.source.params()));
    rep.dim("lhs", inst.lhs.dim());
    rep.dim("rhs", inst.rhs.dim());
    rep.extra = json!({ "blocks": inst.block_table() });
    let sys = inst.system();
    for b in &inst.blocks {
        rep.dim(format!("block {}", sys.format_elem(b.tau)), b.induced.module.dim());
    }
    rep.check(
        "block dimensions sum to lhs dimension",
        inst.blocks.iter().map(|b| b.induced.module.dim()).sum::<usize>() == inst.lhs.dim(),
    );
    let index_sum: usize = inst.blocks.iter().map(|b| b.induced.basis.transversal.len()).sum();
    rep.check(
        "sum of [W_J : W_K] equals [W : W_I]",
        index_sum == inst.induced.basis.transversal.len(),
    );
    rep.check("lhs satisfies the defining relations", inst.lhs.validate().passed());
    rep.check("rhs satisfies the defining relations", inst.rhs.validate().passed());
    let (phi, psi) = match build_phi_psi(inst) {
        Ok(x) => x,
        Err(e) => {
            rep.fail("build Phi and Psi", e);
            return rep;
        }
    };
    rep.check_eq("Psi Phi = Id", &(&psi * &phi), &RatMatrix::identity(inst.lhs.dim()));
    rep.check_eq("Phi Psi = Id", &(&phi * &psi), &RatMatrix::identity(inst.rhs.dim()));
    for s in inst.j.iter() {
        let label = sys.format_elem(sys.gen(s));
        rep.check_eq(
            format!("Psi equivariant for {label}"),
            &(&psi * inst.rhs.gen(s)),
            &(inst.lhs.gen(s) * &psi),
        );
        rep.check_eq(
            format!("Phi equivariant for {label}"),
            &(&phi * inst.lhs.gen(s)),
            &(inst.rhs.gen(s) * &phi),
        );
    }
    rep
}

/// Builds and verifies in one go.
pub fn verify_mackey(m: &HeckeModule, j: GenSet) -> VerificationReport {
    match build_sides(m, j) {
        Ok(inst) => verify(&inst),
        Err(e) => {
            let mut rep = VerificationReport::new(
                "mackey",
                json!({ "group": m.system().label(), "I": m.subset(), "J": j }),
                Some(m.params()),
            );
            rep.fail("build sides", e);
            rep
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// One summand of the type-A decomposition, indexed by `t` (`s = k - t`).
#[derive(Clone, Debug)]
pub struct CorollaryBlock {
    pub t: usize,
    pub s: usize,
    pub w_t: Vec<usize>,
    pub source: HeckeModule,
    pub induced: Induced,
}

/// `T_{t,s}(M↓ ⊗ N↓)` as a module over `H_t ⊗ H_s ⊗ H_{m-t} ⊗ H_{n-s}` inside
/// `H_{m+n}`: the four factors are placed on consecutive position blocks
/// `1..t | t+1..k | k+1..k+m-t | k+m-t+1..m+n`.
pub fn reordered_factor(
    big: &Arc<CoxeterSystem>,
    m_mod: &HeckeModule,
    n_mod: &HeckeModule,
    k: usize,
    t: usize,
) -> Result<HeckeModule> {
    let (m, n) = (full_type_a_size(m_mod)?, full_type_a_size(n_mod)?);
    let s = k - t;
    let mres = m_mod.restrict(young_subset(m, t))?;
    let nres = n_mod.restrict(young_subset(n, s))?;
    let map_m: BTreeMap<usize, usize> = mres
        .subset()
        .iter()
        .map(|i| (i, if i + 1 < t { i } else { i - t + k }))
        .collect();
    let map_n: BTreeMap<usize, usize> = nres
        .subset()
        .iter()
        .map(|j| (j, if j + 1 < s { t + j } else { j - s + k + m - t }))
        .collect();
    mres.relabel(big, &map_m)?.outer_tensor(&nres.relabel(big, &map_n)?)
}

/// Verifies the decomposition of `(M ⊠ N)↓_{H_k ⊗ H_{m+n-k}}` into the
/// summands indexed by `t`, against the block dimensions, the generic
/// double-coset representatives and decomposition, and `iso_test`.
pub fn corollary_type_a(k: usize, m_mod: &HeckeModule, n_mod: &HeckeModule) -> VerificationReport {
    let (m, n) = match (full_type_a_size(m_mod), full_type_a_size(n_mod)) {
        (Ok(m), Ok(n)) => (m, n),
        (Err(e), _) | (_, Err(e)) => {
            let mut rep = VerificationReport::new("corollary", json!({ "k": k }), Some(m_mod.params()));
            rep.fail("factor modules", e);
            return rep;
        }
    };
    let mut rep = VerificationReport::new(
        "corollary",
        json!({ "m": m, "n": n, "k": k, "dim_M": m_mod.dim(), "dim_N": n_mod.dim() }),
        Some(m_mod.params()),
    );
    if let Err(e) = corollary_inner(&mut rep, m, n, k, m_mod, n_mod) {
        rep.fail("construction", e);
    }
    rep
}

fn corollary_inner(
    rep: &mut VerificationReport,
    m: usize,
    n: usize,
    k: usize,
    m_mod: &HeckeModule,
    n_mod: &HeckeModule,
) -> Result<()> {
    if k == 0 || k >= m + n {
        return Err(Error::Invalid(format!("need 1 <= k <= m+n-1, got k = {k}")));
    }
    let big = symmetric_group(m + n);
    let i = young_subset(m + n, m);
    let j = young_subset(m + n, k);
    let boxed = HeckeModule::boxtimes(m_mod, n_mod)?;
    let lhs = boxed.module.restrict(j)?;
    rep.dim("lhs", lhs.dim());
    let (dm, dn) = (m_mod.dim(), n_mod.dim());

    let mut blocks = Vec::new();
    for (t, w) in w_family(m, n, k) {
        let source = reordered_factor(&big, m_mod, n_mod, k, t)?;
        let induced = source.induce(j)?;
        blocks.push(CorollaryBlock {
            t,
            s: k - t,
            w_t: w,
            source,
            induced,
        });
    }
    let mut table = Vec::new();
    for b in &blocks {
        let expected = binom(k, b.t) * binom(m + n - k, m - b.t) * dm * dn;
        let got = b.induced.module.dim();
        rep.dim(format!("block t={}", b.t), got);
        rep.check_with(
            format!("block t={} dimension", b.t),
            got == expected,
            format!(
                "{got} vs C({k},{})*C({},{})*{dm}*{dn} = {expected}",
                b.t,
                m + n - k,
                m - b.t
            ),
        );
        table.push(json!({ "t": b.t, "s": b.s, "w_t": format_one_line(&b.w_t), "dim": got }));
    }
    rep.extra = json!({ "blocks": table });
    let total: usize = blocks.iter().map(|b| b.induced.module.dim()).sum();
    rep.check_with(
        "block dimensions sum to lhs dimension",
        total == lhs.dim(),
        format!("{total} vs {}", lhs.dim()),
    );

    let mut from_formula: Vec<Elem> = blocks
        .iter()
        .map(|b| from_one_line(&big, &b.w_t))
        .collect::<Result<_>>()?;
    from_formula.sort();
    let mut reps = big.double_coset_reps(j, i);
    reps.sort();
    rep.check("w_t equal the double coset representatives", from_formula == reps);

    // The generic decomposition of the same module, block by block.
    let tensor = outer_in_product(&big, m_mod, m, n_mod)?;
    let inst = build_sides(&tensor, j)?;
    let generic = verify(&inst);
    rep.check_with(
        "generic decomposition verifies",
        generic.passed,
        generic
            .failures()
            .map(|c| c.name.clone())
            .collect::<Vec<_>>()
            .join("; "),
    );
    for b in &blocks {
        let tau = from_one_line(&big, &b.w_t)?;
        let same = inst.block_of(tau).is_some_and(|g| g.induced.module == b.induced.module);
        rep.check(format!("block t={} equals the generic block for w_t", b.t), same);
    }

    let parts: Vec<HeckeModule> = blocks.iter().map(|b| b.induced.module.clone()).collect();
    let rhs = HeckeModule::direct_sum(&parts)?;
    rep.check("rhs satisfies the defining relations", rhs.validate().passed());
    let iso = iso_test(&lhs, &rhs)?;
    rep.check_with("iso_test finds lhs and rhs isomorphic", iso.is_iso(), iso.reason);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ParamSpec;

    fn a3() -> Arc<CoxeterSystem> {
        Arc::new(CoxeterSystem::named("A3").unwrap())
    }

    #[test]
    fn s4_regular_instance() {
        let sys = a3();
        let ij = GenSet::from_labels(&[1, 2]);
        for p in [ParamSpec::new(1, 0), ParamSpec::new(0, 0), ParamSpec::new(2, 3)] {
            let m = HeckeModule::regular(&sys, ij, &p).unwrap();
            let inst = build_sides(&m, ij).unwrap();
            assert_eq!(inst.lhs.dim(), 24);
            let dims: Vec<(String, usize)> = inst
                .blocks
                .iter()
                .map(|b| (sys.format_elem(b.tau), b.induced.module.dim()))
                .collect();
            assert_eq!(dims, vec![("e".to_string(), 6), ("s3".to_string(), 18)]);
            let rep = verify(&inst);
            assert!(rep.passed, "{}", rep.to_text());
        }
    }

    #[test]
    fn phi_and_psi_on_named_vectors() {
        let sys = a3();
        let ij = GenSet::from_labels(&[1, 2]);
        let m = HeckeModule::regular(&sys, ij, &ParamSpec::new(1, 0)).unwrap();
        let inst = build_sides(&m, ij).unwrap();
        let (phi, psi) = build_phi_psi(&inst).unwrap();
        let s3 = sys.gen(2);
        let b = inst.block_of(s3).unwrap();
        let lhs_idx = inst.induced.basis.index(s3, 0).unwrap();
        let rhs_idx = b.offset + b.induced.basis.index(Elem::IDENTITY, 0).unwrap();
        assert!(phi.get(rhs_idx, lhs_idx).is_one());
        assert_eq!(phi.column(lhs_idx).iter().filter(|x| !x.is_zero()).count(), 1);
        // Ψ(E_{s3}(π_{s2} ⊗ m)) = π_{s2 s3} ⊗ m
        let s2 = sys.gen(1);
        let col = b.offset + b.induced.basis.index(s2, 0).unwrap();
        let target = inst.induced.basis.index(sys.mul(s2, s3), 0).unwrap();
        assert!(psi.get(target, col).is_one());
    }

    #[test]
    fn degenerate_subsets() {
        let s2 = Arc::new(CoxeterSystem::named("A1").unwrap());
        let p = ParamSpec::new(2, 3);
        let m = HeckeModule::scalar(&s2, GenSet::empty(), &p, &Rat::one()).unwrap();
        let inst = build_sides(&m, GenSet::empty()).unwrap();
        assert_eq!(inst.lhs.dim(), 2);
        assert_eq!(inst.blocks.len(), 2);
        assert!(verify(&inst).passed);
        let sys = a3();
        let all = sys.all_gens();
        let m = HeckeModule::regular(&sys, all, &p).unwrap();
        let inst = build_sides(&m, all).unwrap();
        assert_eq!(inst.blocks.len(), 1);
        assert_eq!(inst.rhs, m);
        assert!(verify(&inst).passed);
    }

    #[test]
    fn corollary_small_cases() {
        let p = ParamSpec::new(2, 3);
        let one = |n: usize| HeckeModule::small(&symmetric_group(n), symmetric_group(n).all_gens(), &p).unwrap();
        let rep = corollary_type_a(2, &one(2), &one(2));
        assert!(rep.passed, "{}", rep.to_text());
        assert_eq!(rep.dims["block t=0"], 1);
        assert_eq!(rep.dims["block t=1"], 4);
        assert_eq!(rep.dims["block t=2"], 1);
        let rep = corollary_type_a(1, &one(1), &one(1));
        assert!(rep.passed, "{}", rep.to_text());
        assert_eq!(rep.dims["lhs"], 2);
    }
}
