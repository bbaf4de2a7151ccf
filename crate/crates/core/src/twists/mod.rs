//! Involution twists against induction products and restriction: explicit
//! isomorphisms for the automorphisms `φ, θ, ω`, and the pairing argument for
//! the anti-automorphisms `φ̂, χ, θ̂, ω̂`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use crate::coxeter::type_a::{format_one_line, from_one_line, gamma, one_line, young_subset};
use crate::coxeter::{symmetric_group, Elem, GenSet};
use crate::error::{Error, Result};
use crate::hecke::{Basis, HeckeElement, MorphName, MorphismSpec};
use crate::linalg::RatMatrix;
use crate::repmod::{full_type_a_size, is_invertible, iso_test, HeckeModule, Induced};
use crate::report::VerificationReport;
use crate::scalars::{ParamSpec, Rat};

/// The involution `γ ↦ γ'` on the minimal transversal `Γ` of
/// `S_{m+n} / (S_m × S_n)`.
#[derive(Clone, Debug)]
pub struct GammaPrime {
    pub m: usize,
    pub n: usize,
    pub table: BTreeMap<Elem, Elem>,
}

impl GammaPrime {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        let sys = symmetric_group(m + n);
        let mut table = BTreeMap::new();
        for g in gamma(&sys, m)? {
            let p = one_line(&sys, g)?;
            let top = m + n + 1;
            let image: Vec<usize> = (1..=m + n)
                .map(|i| if i <= m { top - p[m - i] } else { top - p[2 * m + n - i] })
                .collect();
            table.insert(g, from_one_line(&sys, &image)?);
        }
        Ok(GammaPrime { m, n, table })
    }

    pub fn get(&self, g: Elem) -> Elem {
        self.table[&g]
    }

    pub fn is_involution(&self) -> bool {
        self.table.iter().all(|(g, h)| self.table.get(h) == Some(g))
    }

    /// Rows `(γ, γ')` in one-line notation.
    pub fn rows(&self) -> Vec<(String, String)> {
        let sys = symmetric_group(self.m + self.n);
        self.table
            .iter()
            .map(|(&g, &h)| {
                (
                    format_one_line(&one_line(&sys, g).expect("type A")),
                    format_one_line(&one_line(&sys, h).expect("type A")),
                )
            })
            .collect()
    }
}

fn twist(module: &HeckeModule, name: MorphName) -> Result<HeckeModule> {
    module.twist_along(&MorphismSpec::named(module.system(), name))
}

/// The subset `α⁻¹(I)`: generators whose image under `α` lies in `H_I`.
pub fn preimage_subset(alpha: &MorphismSpec, i: GenSet) -> GenSet {
    GenSet::from_indices(
        alpha
            .images()
            .iter()
            .filter(|(_, x)| x.supported_in(i))
            .map(|(&s, _)| s),
    )
}

/// The map `α[K↑] → α[K]↑`, `π_γ ⊗ e_k ↦ α(π_γ) ⊗ S e_k`, for an
/// involutive automorphism `α` and an identification `S` of the twisted
/// source with the target's source module.
pub fn induced_twist_map(src: &Induced, alpha: &MorphismSpec, target: &Induced, s: &RatMatrix) -> Result<RatMatrix> {
    let params = src.module.params();
    let d = src.basis.source_dim;
    if s.cols() != d || s.rows() != target.basis.source_dim {
        return Err(Error::DimensionMismatch(
            "source identification has the wrong shape".into(),
        ));
    }
    let mut x = RatMatrix::zeros(target.module.dim(), src.module.dim());
    for (gi, &g) in src.basis.transversal.iter().enumerate() {
        let image = alpha.apply_basis(g)?.change_basis(Basis::Pi);
        for k in 0..d {
            let col = gi * d + k;
            let v = s.column(k);
            for (w, c) in image.terms() {
                let c = c.specialize(params);
                if c.is_zero() {
                    continue;
                }
                for (r, y) in target.coords_of(w, &v)?.into_iter().enumerate() {
                    if !y.is_zero() {
                        x.add_at(r, col, &(&c * &y));
                    }
                }
            }
        }
    }
    Ok(x)
}

/// Records that `x : src → tgt` is an invertible module map, and that
/// `iso_test` independently agrees.
fn check_iso_map(rep: &mut VerificationReport, label: &str, x: &RatMatrix, src: &HeckeModule, tgt: &HeckeModule) {
    rep.check(
        format!("{label}: map is {}x{}", tgt.dim(), src.dim()),
        x.rows() == tgt.dim() && x.cols() == src.dim(),
    );
    if x.rows() != tgt.dim() || x.cols() != src.dim() {
        return;
    }
    for s in src.subset().iter() {
        rep.check_eq(
            format!("{label}: equivariant for s{}", s + 1),
            &(x * src.gen(s)),
            &(tgt.gen(s) * x),
        );
    }
    rep.check(format!("{label}: invertible"), is_invertible(x));
    match iso_test(src, tgt) {
        Ok(out) => rep.check_with(format!("{label}: iso_test agrees"), out.is_iso(), out.reason),
        Err(e) => rep.check_with(format!("{label}: iso_test agrees"), false, e.to_string()),
    };
}

/// `e_p ⊗ e_q ↦ e_q ⊗ e_p` from `M ⊗ N` to `N ⊗ M`.
pub fn swap_matrix(dm: usize, dn: usize) -> RatMatrix {
    let mut s = RatMatrix::zeros(dm * dn, dm * dn);
    for p in 0..dm {
        for q in 0..dn {
            s.set(q * dm + p, p * dn + q, Rat::one());
        }
    }
    s
}

/// The explicit isomorphism for one of `φ[M ⊠ N] ≅ φ[N] ⊠ φ[M]`,
/// `θ[M ⊠ N] ≅ θ[M] ⊠ θ[N]`, `ω[M ⊠ N] ≅ ω[N] ⊠ ω[M]`, returned with its
/// source and target modules.
pub struct TwistIso {
    pub source: HeckeModule,
    pub target: HeckeModule,
    pub map: RatMatrix,
    /// Whether the twisted outer tensor agrees with the reordered one.
    pub identification_holds: bool,
}

pub fn boxtimes_twist_iso(name: MorphName, m_mod: &HeckeModule, n_mod: &HeckeModule) -> Result<TwistIso> {
    let (m, n) = (full_type_a_size(m_mod)?, full_type_a_size(n_mod)?);
    let big = symmetric_group(m + n);
    let alpha = MorphismSpec::named(&big, name.clone());
    let swaps = match name {
        MorphName::Phi | MorphName::Omega => true,
        MorphName::Theta => false,
        _ => {
            return Err(Error::InvalidMorphism(format!(
                "{name} is not one of phi, theta, omega"
            )))
        }
    };
    let src = HeckeModule::boxtimes(m_mod, n_mod)?;
    let (tm, tn) = (twist(m_mod, name.clone())?, twist(n_mod, name.clone())?);
    let target = if swaps {
        HeckeModule::boxtimes(&tn, &tm)?
    } else {
        HeckeModule::boxtimes(&tm, &tn)?
    };
    let s = if swaps {
        swap_matrix(m_mod.dim(), n_mod.dim())
    } else {
        RatMatrix::identity(m_mod.dim() * n_mod.dim())
    };
    let b = src.source.subset();
    let b_pre = preimage_subset(&alpha, b);
    let twisted_source = src.source.twist_along(&alpha.restrict(b_pre, b)?)?;
    let identification_holds = b_pre == target.source.subset()
        && b_pre
            .iter()
            .all(|g| (&s * twisted_source.gen(g)) == (target.source.gen(g) * &s));
    let map = induced_twist_map(&src, &alpha, &target, &s)?;
    Ok(TwistIso {
        source: src.module.twist_along(&alpha)?,
        target: target.module,
        map,
        identification_holds,
    })
}

/// Checks `α[K↑^{H_W}_{H_I}] ≅ α[K]↑^{H_W}_{H_{α⁻¹(I)}}` through the explicit
/// map for `α ∈ {φ, θ, ω}` in any finite Coxeter group.
pub fn verify_induced_twist(k_mod: &HeckeModule, name: MorphName) -> VerificationReport {
    let sys = k_mod.system().clone();
    let mut rep = VerificationReport::new(
        "twist-induction",
        json!({ "group": sys.label(), "I": k_mod.subset(), "twist": name.to_string(), "dim_K": k_mod.dim() }),
        Some(k_mod.params()),
    );
    let run = |rep: &mut VerificationReport| -> Result<()> {
        let alpha = MorphismSpec::named(&sys, name.clone());
        let i = k_mod.subset();
        let pre = preimage_subset(&alpha, i);
        let src = k_mod.induce(sys.all_gens())?;
        let tk = k_mod.twist_along(&alpha.restrict(pre, i)?)?;
        let target = tk.induce(sys.all_gens())?;
        let x = induced_twist_map(&src, &alpha, &target, &RatMatrix::identity(k_mod.dim()))?;
        let source = src.module.twist_along(&alpha)?;
        rep.dim("induced", source.dim());
        check_iso_map(rep, "explicit map", &x, &source, &target.module);
        Ok(())
    };
    if let Err(e) = run(&mut rep) {
        rep.fail("construction", e);
    }
    rep
}

fn restriction_twist_check(
    rep: &mut VerificationReport,
    label: &str,
    l: &HeckeModule,
    name: MorphName,
    inner: GenSet,
    outer: GenSet,
) -> Result<()> {
    // α[L↓_{inner}] as a module over α⁻¹(inner) = outer, against α[L]↓_{outer}.
    let alpha = MorphismSpec::named(l.system(), name);
    let lhs = l.restrict(inner)?.twist_along(&alpha.restrict(outer, inner)?)?;
    let rhs = l.twist_along(&alpha)?.restrict(outer)?;
    for s in outer.iter() {
        rep.check_eq(
            format!("{label}: identity equivariant for s{}", s + 1),
            lhs.gen(s),
            rhs.gen(s),
        );
    }
    Ok(())
}

/// All six twist identities for `M` over `H_m`, `N` over `H_n` and each `L`
/// over `H_{m+n}` (the restriction parts).
pub fn verify_outer_twists(m_mod: &HeckeModule, n_mod: &HeckeModule, ls: &[HeckeModule]) -> VerificationReport {
    let mut rep = VerificationReport::new(
        "outer-twists",
        json!({ "m": m_mod.system().rank() + 1, "n": n_mod.system().rank() + 1,
                 "dim_M": m_mod.dim(), "dim_N": n_mod.dim(), "dims_L": ls.iter().map(|l| l.dim()).collect::<Vec<_>>() }),
        Some(m_mod.params()),
    );
    if let Err(e) = outer_twists_inner(&mut rep, m_mod, n_mod, ls) {
        rep.fail("construction", e);
    }
    rep
}

fn outer_twists_inner(
    rep: &mut VerificationReport,
    m_mod: &HeckeModule,
    n_mod: &HeckeModule,
    ls: &[HeckeModule],
) -> Result<()> {
    let (m, n) = (full_type_a_size(m_mod)?, full_type_a_size(n_mod)?);
    if m_mod.params() != n_mod.params() {
        return Err(Error::ParamMismatch);
    }
    for (part, name) in [(1, MorphName::Phi), (2, MorphName::Theta), (3, MorphName::Omega)] {
        let iso = boxtimes_twist_iso(name, m_mod, n_mod)?;
        let label = format!("part {part}");
        rep.dim(format!("{label} source"), iso.source.dim());
        rep.check(
            format!("{label}: twisted outer tensor matches"),
            iso.identification_holds,
        );
        check_iso_map(rep, &label, &iso.map, &iso.source, &iso.target);
    }
    let big = symmetric_group(m + n);
    let (ym, yn) = (young_subset(m + n, m), young_subset(m + n, n));
    for (li, l) in ls.iter().enumerate() {
        if l.system().matrix() != big.matrix() {
            return Err(Error::SystemMismatch);
        }
        let l = if Arc::ptr_eq(l.system(), &big) {
            l.clone()
        } else {
            let ids: BTreeMap<usize, usize> = l.subset().iter().map(|s| (s, s)).collect();
            l.relabel(&big, &ids)?
        };
        restriction_twist_check(rep, &format!("part 4 L{li}"), &l, MorphName::Phi, yn, ym)?;
        restriction_twist_check(rep, &format!("part 5 L{li}"), &l, MorphName::Theta, ym, ym)?;
        restriction_twist_check(rep, &format!("part 6 L{li}"), &l, MorphName::Chi, ym, ym)?;
    }
    Ok(())
}

/// The four cases for how `π_i` meets `π_γ` (or `π̄_γ`), by the blocks of the
/// positions of the values `i` and `i+1` in `γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Branch {
    BothFirst,
    BothSecond,
    FirstThenSecond,
    SecondThenFirst,
}

impl Branch {
    fn of(perm: &[usize], m: usize, i: usize) -> Branch {
        let pos = |v: usize| perm.iter().position(|&x| x == v).expect("value present") + 1;
        match (pos(i) <= m, pos(i + 1) <= m) {
            (true, true) => Branch::BothFirst,
            (false, false) => Branch::BothSecond,
            (true, false) => Branch::FirstThenSecond,
            (false, true) => Branch::SecondThenFirst,
        }
    }

    fn number(self) -> usize {
        match self {
            Branch::BothFirst => 1,
            Branch::BothSecond => 2,
            Branch::FirstThenSecond => 3,
            Branch::SecondThenFirst => 4,
        }
    }
}

/// The pairing between `M ⊠ N` on `{π_γ ⊗ e_k}` and `φ̂[M] ⊠ φ̂[N]` on
/// `{π̄_λ ⊗ ε_l}`, with everything needed to check it.
pub struct Pairing {
    pub m: usize,
    pub n: usize,
    pub gamma_prime: GammaPrime,
    pub lhs: Induced,
    pub rhs: Induced,
    /// `P[(γ,k), (λ,l)] = δ_{γ λ'} δ_{kl}`.
    pub matrix: RatMatrix,
    /// Columns: `π̄_λ ⊗ ε_l` in the π-basis coordinates of `rhs`.
    pub bar_basis: RatMatrix,
}

pub fn build_pairing(m_mod: &HeckeModule, n_mod: &HeckeModule) -> Result<Pairing> {
    let (m, n) = (full_type_a_size(m_mod)?, full_type_a_size(n_mod)?);
    let gp = GammaPrime::new(m, n)?;
    let lhs = HeckeModule::boxtimes(m_mod, n_mod)?;
    let rhs = HeckeModule::boxtimes(&twist(m_mod, MorphName::PhiHat)?, &twist(n_mod, MorphName::PhiHat)?)?;
    let sys = lhs.module.system().clone();
    let d = lhs.basis.source_dim;
    let size = lhs.module.dim();
    let mut p = RatMatrix::zeros(size, size);
    for &g in &lhs.basis.transversal {
        let lam = gp.get(g);
        for k in 0..d {
            p.set(
                lhs.basis.index(g, k).expect("transversal"),
                rhs.basis.index(lam, k).expect("transversal"),
                Rat::one(),
            );
        }
    }
    let mut bar = RatMatrix::zeros(size, size);
    for &lam in &rhs.basis.transversal {
        let expanded = HeckeElement::basis_elem(&sys, Basis::Opi, lam).change_basis(Basis::Pi);
        for l in 0..d {
            let col = rhs.basis.index(lam, l).expect("transversal");
            let mut e = vec![Rat::zero(); d];
            e[l] = Rat::one();
            for (w, c) in expanded.terms() {
                let c = c.specialize(rhs.module.params());
                if c.is_zero() {
                    continue;
                }
                for (r, y) in rhs.coords_of(w, &e)?.into_iter().enumerate() {
                    if !y.is_zero() {
                        bar.add_at(r, col, &(&c * &y));
                    }
                }
            }
        }
    }
    Ok(Pairing {
        m,
        n,
        gamma_prime: gp,
        lhs,
        rhs,
        matrix: p,
        bar_basis: bar,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BranchStats {
    /// Firings of each left-side case over pairs `(i, γ)`.
    pub left: BTreeMap<String, usize>,
    /// Firings of each right-side case over pairs `(i, λ)`.
    pub right: BTreeMap<String, usize>,
    /// Left/right case combinations over triples `(i, γ, λ)` where either
    /// side is nonzero.
    pub combined: BTreeMap<String, usize>,
}

impl BranchStats {
    pub fn merge(&mut self, other: &BranchStats) {
        for (dst, src) in [
            (&mut self.left, &other.left),
            (&mut self.right, &other.right),
            (&mut self.combined, &other.combined),
        ] {
            for (k, v) in src {
                *dst.entry(k.clone()).or_default() += v;
            }
        }
    }

    pub fn covers_all(&self) -> bool {
        (1..=4).all(|b| self.left.contains_key(&format!("A{b}")) && self.right.contains_key(&format!("B{b}")))
    }
}

/// Checks `(π_i x, y) = (x, π_{m+n-i} y)` as a matrix identity and entry by
/// entry from the case formulas for `π_i π_γ` and `π_i π̄_λ`.
pub fn verify_pairing_equivariance(pairing: &Pairing) -> (VerificationReport, BranchStats) {
    let (m, n) = (pairing.m, pairing.n);
    let params = pairing.lhs.module.params().clone();
    let mut rep = VerificationReport::new("pairing", json!({ "m": m, "n": n }), Some(&params));
    let mut stats = BranchStats::default();
    let sys = pairing.lhs.module.system().clone();
    let p = &pairing.matrix;
    let bar_inv = match pairing.bar_basis.inverse() {
        Some(b) => b,
        None => {
            rep.check("bar basis is a basis", false);
            return (rep, stats);
        }
    };
    rep.check("bar basis is a basis", true);
    rep.check("pairing is nondegenerate", is_invertible(p));
    rep.check("gamma prime is an involution", pairing.gamma_prime.is_involution());
    let lhs_basis = &pairing.lhs.basis;
    let rhs_basis = &pairing.rhs.basis;
    let off_pattern = lhs_basis.transversal.iter().all(|&g| {
        rhs_basis.transversal.iter().all(|&lam| {
            let expected = pairing.gamma_prime.get(lam) == g;
            (0..lhs_basis.source_dim).all(|k| {
                (0..rhs_basis.source_dim).all(|l| {
                    let v = p.get(lhs_basis.index(g, k).unwrap(), rhs_basis.index(lam, l).unwrap());
                    if expected && k == l {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
        })
    });
    rep.check("pairing vanishes off the gamma' pattern", off_pattern);

    let rank = m + n - 1;
    let rho_bar: Vec<RatMatrix> = (0..rank)
        .map(|s| &(&bar_inv * pairing.rhs.module.gen(s)) * &pairing.bar_basis)
        .collect();
    let d = lhs_basis.source_dim;
    let src_l = &pairing.lhs.source;
    let src_r = &pairing.rhs.source;
    let (a, b) = (&params.a, &params.b);
    let mut case_mismatch = 0usize;
    let mut table_vs_matrix = 0usize;
    for s in 0..rank {
        let i = s + 1;
        let ip = m + n - i;
        let sp = ip - 1;
        let left = &pairing.lhs.module.gen(s).transpose() * p;
        let right = p * &rho_bar[sp];
        rep.check_eq(format!("matrix identity for s{i}"), &left, &right);
        for &g in &lhs_basis.transversal {
            let gperm = one_line(&sys, g).expect("type A");
            let ab = Branch::of(&gperm, m, i);
            *stats.left.entry(format!("A{}", ab.number())).or_default() += 1;
            let sg = sys.lmul(s, g);
            for &lam in &rhs_basis.transversal {
                let lperm = one_line(&sys, lam).expect("type A");
                let bb = Branch::of(&lperm, m, ip);
                if g == lhs_basis.transversal[0] {
                    *stats.right.entry(format!("B{}", bb.number())).or_default() += 1;
                }
                let lam_p = pairing.gamma_prime.get(lam);
                let slam_p = if rhs_basis.coset_position(sys.lmul(sp, lam)).is_some() {
                    Some(pairing.gamma_prime.get(sys.lmul(sp, lam)))
                } else {
                    None
                };
                let mut nonzero = false;
                for k in 0..d {
                    for l in 0..d {
                        let delta = if k == l { Rat::one() } else { Rat::zero() };
                        let lhs_val = match ab {
                            Branch::BothFirst | Branch::BothSecond => {
                                let j = gperm.iter().position(|&x| x == i).unwrap();
                                if lam_p == g {
                                    src_l.gen(j).get(l, k).clone()
                                } else {
                                    Rat::zero()
                                }
                            }
                            Branch::FirstThenSecond => {
                                if lam_p == sg {
                                    delta.clone()
                                } else {
                                    Rat::zero()
                                }
                            }
                            Branch::SecondThenFirst => {
                                let mut v = Rat::zero();
                                if lam_p == g {
                                    v = &v + &(a * &delta);
                                }
                                if lam_p == sg {
                                    v = &v + &(b * &delta);
                                }
                                v
                            }
                        };
                        let rhs_val = match bb {
                            Branch::BothFirst | Branch::BothSecond => {
                                let j = lperm.iter().position(|&x| x == ip).unwrap();
                                if lam_p == g {
                                    src_r.gen(j).get(k, l).clone()
                                } else {
                                    Rat::zero()
                                }
                            }
                            Branch::FirstThenSecond => {
                                let mut v = Rat::zero();
                                if lam_p == g {
                                    v = &v + &(a * &delta);
                                }
                                if slam_p == Some(g) {
                                    v = &v + &delta;
                                }
                                v
                            }
                            Branch::SecondThenFirst => {
                                if slam_p == Some(g) {
                                    b * &delta
                                } else {
                                    Rat::zero()
                                }
                            }
                        };
                        let (r, c) = (lhs_basis.index(g, k).unwrap(), rhs_basis.index(lam, l).unwrap());
                        if lhs_val != rhs_val {
                            case_mismatch += 1;
                        }
                        if &lhs_val != left.get(r, c) || &rhs_val != right.get(r, c) {
                            table_vs_matrix += 1;
                        }
                        nonzero |= !lhs_val.is_zero() || !rhs_val.is_zero();
                    }
                }
                if nonzero {
                    *stats
                        .combined
                        .entry(format!("A{}/B{}", ab.number(), bb.number()))
                        .or_default() += 1;
                }
            }
        }
    }
    rep.check_with(
        "case formulas agree entry by entry",
        case_mismatch == 0,
        format!("{case_mismatch} mismatching entries"),
    );
    rep.check_with(
        "case formulas match the module actions",
        table_vs_matrix == 0,
        format!("{table_vs_matrix} mismatching entries"),
    );
    rep.extra = json!({ "branches": stats, "gamma_prime": pairing.gamma_prime.rows() });
    (rep, stats)
}

/// The isomorphism `φ̂[M ⊠ N] → φ̂[M] ⊠ φ̂[N]` read off the pairing.
pub fn phi_hat_iso(pairing: &Pairing) -> Result<(HeckeModule, HeckeModule, RatMatrix)> {
    let source = twist(&pairing.lhs.module, MorphName::PhiHat)?;
    let p_inv = pairing
        .matrix
        .inverse()
        .ok_or_else(|| Error::Invalid("pairing is degenerate".into()))?;
    Ok((source, pairing.rhs.module.clone(), &pairing.bar_basis * &p_inv))
}

fn check_literal(rep: &mut VerificationReport, label: &str, x: &HeckeModule, y: &HeckeModule) {
    rep.check(format!("{label} coincide"), x == y);
}

/// All four anti-twist identities for `M ⊠ N`; returns the report and the
/// branch statistics of the pairing.
pub fn verify_anti_twists(m_mod: &HeckeModule, n_mod: &HeckeModule) -> (VerificationReport, BranchStats) {
    let mut rep = VerificationReport::new(
        "anti-twists",
        json!({ "m": m_mod.system().rank() + 1, "n": n_mod.system().rank() + 1,
                 "dim_M": m_mod.dim(), "dim_N": n_mod.dim() }),
        Some(m_mod.params()),
    );
    let mut stats = BranchStats::default();
    if let Err(e) = anti_twists_inner(&mut rep, &mut stats, m_mod, n_mod) {
        rep.fail("construction", e);
    }
    (rep, stats)
}

fn anti_twists_inner(
    rep: &mut VerificationReport,
    stats: &mut BranchStats,
    m_mod: &HeckeModule,
    n_mod: &HeckeModule,
) -> Result<()> {
    if m_mod.params() != n_mod.params() {
        return Err(Error::ParamMismatch);
    }
    // Part 1 through the pairing.
    let pairing = build_pairing(m_mod, n_mod)?;
    let (prep, pstats) = verify_pairing_equivariance(&pairing);
    stats.merge(&pstats);
    rep.extra = prep.extra.clone();
    rep.merge("part 1 pairing: ", prep);
    let (src1, tgt1, f) = phi_hat_iso(&pairing)?;
    rep.dim("M boxtimes N", src1.dim());
    check_iso_map(rep, "part 1", &f, &src1, &tgt1);

    let boxed = HeckeModule::boxtimes(m_mod, n_mod)?.module;
    let tw = |x: &HeckeModule, name| twist(x, name);

    // Part 2: χ[M ⊠ N] → φ̂[φN ⊠ φM] → χN ⊠ χM.
    let (phi_m, phi_n) = (tw(m_mod, MorphName::Phi)?, tw(n_mod, MorphName::Phi)?);
    let g = boxtimes_twist_iso(MorphName::Phi, m_mod, n_mod)?;
    let p2 = build_pairing(&phi_n, &phi_m)?;
    let (_, tgt_f1, f1) = phi_hat_iso(&p2)?;
    let chi_mn = tw(&boxed, MorphName::Chi)?;
    let (chi_m, chi_n) = (tw(m_mod, MorphName::Chi)?, tw(n_mod, MorphName::Chi)?);
    let chi_target = HeckeModule::boxtimes(&chi_n, &chi_m)?.module;
    check_literal(
        rep,
        "part 2: phi-hat of phi-twisted factors and chi-twisted factors",
        &tgt_f1,
        &chi_target,
    );
    check_literal(
        rep,
        "part 2: phi-hat of phi[M boxtimes N] and chi[M boxtimes N]",
        &tw(&g.source, MorphName::PhiHat)?,
        &chi_mn,
    );
    let gt_inv = g
        .map
        .transpose()
        .inverse()
        .ok_or_else(|| Error::Invalid("phi-twist map is singular".into()))?;
    let h2 = &f1 * &gt_inv;
    check_iso_map(rep, "part 2", &h2, &chi_mn, &chi_target);

    // Part 3: θ̂[M ⊠ N] = θ[χ[M ⊠ N]] → θ[χN ⊠ χM] → θ̂N ⊠ θ̂M.
    let t = boxtimes_twist_iso(MorphName::Theta, &chi_n, &chi_m)?;
    let th_mn = tw(&boxed, MorphName::ThetaHat)?;
    let th_target = HeckeModule::boxtimes(&tw(n_mod, MorphName::ThetaHat)?, &tw(m_mod, MorphName::ThetaHat)?)?.module;
    check_literal(
        rep,
        "part 3: theta of chi-twisted factors and theta-hat-twisted factors",
        &t.target,
        &th_target,
    );
    check_literal(
        rep,
        "part 3: theta[chi[M boxtimes N]] and theta-hat[M boxtimes N]",
        &tw(&chi_mn, MorphName::Theta)?,
        &th_mn,
    );
    check_iso_map(rep, "part 3", &(&t.map * &h2), &th_mn, &th_target);

    // Part 4: ω̂[M ⊠ N] = θ[φ̂[M ⊠ N]] → θ[φ̂M ⊠ φ̂N] → ω̂M ⊠ ω̂N.
    let (ph_m, ph_n) = (tw(m_mod, MorphName::PhiHat)?, tw(n_mod, MorphName::PhiHat)?);
    let t4 = boxtimes_twist_iso(MorphName::Theta, &ph_m, &ph_n)?;
    let om_mn = tw(&boxed, MorphName::OmegaHat)?;
    let om_target = HeckeModule::boxtimes(&tw(m_mod, MorphName::OmegaHat)?, &tw(n_mod, MorphName::OmegaHat)?)?.module;
    check_literal(
        rep,
        "part 4: theta of phi-hat-twisted factors and omega-hat-twisted factors",
        &t4.target,
        &om_target,
    );
    check_literal(
        rep,
        "part 4: theta[phi-hat[M boxtimes N]] and omega-hat[M boxtimes N]",
        &tw(&src1, MorphName::Theta)?,
        &om_mn,
    );
    check_iso_map(rep, "part 4", &(&t4.map * &f), &om_mn, &om_target);
    Ok(())
}

/// A default small module over all of `H_{S_n}` at `params`.
pub fn small_full(n: usize, params: &ParamSpec) -> Result<HeckeModule> {
    let sys = symmetric_group(n);
    HeckeModule::small(&sys, sys.all_gens(), params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn elem(n: usize, perm: &[usize]) -> Elem {
        from_one_line(&symmetric_group(n), perm).unwrap()
    }

    #[test]
    fn gamma_prime_tables() {
        let g = GammaPrime::new(1, 1).unwrap();
        let (e, s1) = (Elem::IDENTITY, symmetric_group(2).gen(0));
        assert_eq!(g.get(e), s1);
        assert_eq!(g.get(s1), e);
        let g = GammaPrime::new(2, 1).unwrap();
        assert_eq!(g.get(elem(3, &[2, 3, 1])), elem(3, &[1, 2, 3]));
        assert_eq!(g.get(elem(3, &[1, 2, 3])), elem(3, &[2, 3, 1]));
        assert_eq!(g.get(elem(3, &[1, 3, 2])), elem(3, &[1, 3, 2]));
        for total in 2..=6 {
            for m in 1..total {
                let g = GammaPrime::new(m, total - m).unwrap();
                assert!(g.is_involution(), "({m},{})", total - m);
                assert_eq!(g.table.len(), binom(total, m));
            }
        }
    }

    #[test]
    fn outer_twists_small() {
        for p in ParamSpec::battery() {
            let m = small_full(1, &p).unwrap();
            let n = small_full(1, &p).unwrap();
            let l = HeckeModule::regular(&symmetric_group(2), symmetric_group(2).all_gens(), &p).unwrap();
            let rep = verify_outer_twists(&m, &n, &[l]);
            assert!(rep.passed, "{}", rep.to_text());
            let m2 = small_full(2, &p).unwrap();
            let rep = verify_outer_twists(&m2, &n, &[]);
            assert!(rep.passed, "{}", rep.to_text());
        }
    }

    #[test]
    fn induced_twist_in_b3() {
        let sys = Arc::new(CoxeterSystem::named("B3").unwrap());
        let p = ParamSpec::new(2, 3);
        let k = HeckeModule::regular(&sys, GenSet::from_labels(&[1, 2]), &p).unwrap();
        for name in [MorphName::Phi, MorphName::Theta, MorphName::Omega] {
            let rep = verify_induced_twist(&k, name);
            assert!(rep.passed, "{}", rep.to_text());
        }
    }

    #[test]
    fn anti_twists_small() {
        let mut all = BranchStats::default();
        for p in ParamSpec::battery() {
            for (m, n) in [(1, 1), (2, 1), (2, 2)] {
                let (rep, stats) = verify_anti_twists(&small_full(m, &p).unwrap(), &small_full(n, &p).unwrap());
                assert!(rep.passed, "{}", rep.to_text());
                all.merge(&stats);
            }
        }
        assert!(all.covers_all(), "{all:?}");
    }

    #[test]
    fn pairing_examples() {
        let p = ParamSpec::new(1, 0);
        let one = small_full(1, &p).unwrap();
        let pairing = build_pairing(&one, &one).unwrap();
        assert_eq!(pairing.matrix, RatMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        let (rep, stats) = verify_pairing_equivariance(&pairing);
        assert!(rep.passed, "{}", rep.to_text());
        assert_eq!(stats.left["A3"], 1);
        assert_eq!(stats.left["A4"], 1);
    }
}
