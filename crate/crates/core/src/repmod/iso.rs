//! Module isomorphism testing.
//!
//! `Hom_H(M, N)` is computed modulo a large prime from a presentation of `M`:
//! pick generators `v_g` of `M` (standard basis vectors, greedily), span
//! `M` by the vectors `ρ_M(π_w) v_g`, and read off the linear relations among
//! them. A linear map is a module map exactly when the images `P_g` of the
//! generators satisfy the same relations with `ρ_N` in place of `ρ_M`. A
//! random element of the solution space is tested for invertibility, lifted
//! to ℚ by Chinese remaindering and rational reconstruction, and then checked
//! exactly, so a returned map is always certified over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::module::HeckeModule;
use crate::coxeter::Elem;
use crate::error::{Error, Result};
use crate::hecke::same_system;
use crate::linalg::modp::{self, Crt, ModMatrix};
use crate::linalg::RatMatrix;
use crate::scalars::Rat;

const RANDOM_ATTEMPTS: usize = 32;
const MAX_PRIMES: usize = 400;
const ISO_SEED: u64 = 0x1505_7e57;

/// Outcome of [`iso_test`].
#[derive(Clone, Debug, Serialize)]
pub struct IsoOutcome {
    /// A certified invertible intertwiner `X` with `X ρ_M = ρ_N X`.
    #[serde(skip)]
    pub map: Option<RatMatrix>,
    /// Dimension of `Hom_H(M, N)` over `𝔽_p` (an upper bound for the
    /// dimension over ℚ), when it was computed.
    pub hom_dim: Option<usize>,
    /// True when non-isomorphism is proved, not merely unobserved.
    pub certified_non_iso: bool,
    pub reason: String,
}

impl IsoOutcome {
    pub fn is_iso(&self) -> bool {
        self.map.is_some()
    }

    fn non_iso(hom_dim: Option<usize>, certified: bool, reason: impl Into<String>) -> Self {
        IsoOutcome {
            map: None,
            hom_dim,
            certified_non_iso: certified,
            reason: reason.into(),
        }
    }
}

/// A linear map between two modules over the same parabolic subalgebra.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: HeckeModule,
    pub target: HeckeModule,
    pub matrix: RatMatrix,
}

impl ModuleMap {
    pub fn new(source: &HeckeModule, target: &HeckeModule, matrix: RatMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, modules have dims {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    /// Generators of both subsets on which `X ρ_src(π_s) = ρ_tgt(π_s) X` fails.
    pub fn equivariance_failures(&self) -> Vec<usize> {
        let common = self.source.subset().intersect(self.target.subset());
        common
            .iter()
            .filter(|&s| &self.matrix * self.source.gen(s) != self.target.gen(s) * &self.matrix)
            .collect()
    }

    pub fn is_equivariant(&self) -> bool {
        self.equivariance_failures().is_empty()
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_square() && is_invertible(&self.matrix)
    }
}

/// Invertibility over ℚ, decided modulo primes after clearing denominators.
pub fn is_invertible(x: &RatMatrix) -> bool {
    if !x.is_square() {
        return false;
    }
    if x.rows() == 0 {
        return true;
    }
    let ints = clear_denominators(x);
    // det over ℤ is nonzero iff it is nonzero mod some prime; a handful of
    // 62-bit primes cannot all divide a nonzero determinant of desk size.
    for p in modp::primes().take(8) {
        let m = int_matrix_mod(&ints, x.rows(), x.cols(), p);
        if m.det() != 0 {
            return true;
        }
    }
    x.inverse().is_some()
}

fn clear_denominators(x: &RatMatrix) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for e in x.entries() {
        l = l.lcm(e.denom());
    }
    x.entries().iter().map(|e| e.numer() * (&l / e.denom())).collect()
}

fn int_matrix_mod(ints: &[BigInt], rows: usize, cols: usize, p: u64) -> ModMatrix {
    let pb = BigInt::from(p);
    let data = ints
        .iter()
        .map(|v| {
            let r = ((v % &pb) + &pb) % &pb;
            r.iter_u64_digits().next().unwrap_or(0)
        })
        .collect();
    ModMatrix { p, rows, cols, data }
}

/// Structural choices fixed at the first prime and replayed at the others.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Plan {
    gens: Vec<usize>,
    pivots: Vec<usize>,
    eq_pivots: Vec<usize>,
    coeffs: Vec<i64>,
}

struct PrimeData {
    p: u64,
    act_m: Vec<ModMatrix>,
    act_n: Vec<ModMatrix>,
}

fn actions_mod(module: &HeckeModule, elems: &[Elem], p: u64) -> Option<Vec<ModMatrix>> {
    let sys = module.system();
    let gens: std::collections::BTreeMap<usize, ModMatrix> = module
        .gens()
        .iter()
        .map(|(&s, m)| ModMatrix::from_rat(m, p).map(|mm| (s, mm)))
        .collect::<Option<_>>()?;
    let pos: std::collections::HashMap<Elem, usize> = elems.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let mut out: Vec<ModMatrix> = Vec::with_capacity(elems.len());
    for &w in elems {
        if w == Elem::IDENTITY {
            out.push(ModMatrix::identity(p, module.dim()));
            continue;
        }
        let s = sys.reduced_word(w)[0];
        let rest = pos[&sys.lmul(s, w)];
        out.push(gens[&s].mul(&out[rest]));
    }
    Some(out)
}

impl PrimeData {
    fn new(m: &HeckeModule, n: &HeckeModule, elems: &[Elem], p: u64) -> Option<Self> {
        Some(PrimeData {
            p,
            act_m: actions_mod(m, elems, p)?,
            act_n: actions_mod(n, elems, p)?,
        })
    }

    fn column(act: &ModMatrix, g: usize) -> Vec<u64> {
        (0..act.rows).map(|i| act.get(i, g)).collect()
    }

    /// Greedy generators: standard basis vectors outside the span so far.
    fn choose_gens(&self, d: usize) -> Vec<usize> {
        let mut span = Echelon::new(self.p, d);
        let mut gens = Vec::new();
        for k in 0..d {
            if span.rank() == d {
                break;
            }
            let mut e = vec![0u64; d];
            e[k] = 1;
            if span.contains(&e) {
                continue;
            }
            gens.push(k);
            for act in &self.act_m {
                span.insert(Self::column(act, k));
            }
        }
        gens
    }

    /// Columns `ρ_M(π_w) e_g`, ordered by generator then element.
    fn spanning_matrix(&self, gens: &[usize], d: usize) -> ModMatrix {
        let nw = self.act_m.len();
        let mut v = ModMatrix::zeros(self.p, d, gens.len() * nw);
        for (gi, &g) in gens.iter().enumerate() {
            for (wi, act) in self.act_m.iter().enumerate() {
                for i in 0..d {
                    v.set(i, gi * nw + wi, act.get(i, g));
                }
            }
        }
        v
    }

    /// Runs the whole computation at this prime. With `plan = None`, makes and
    /// returns the structural choices; otherwise replays them and returns
    /// `None` if this prime disagrees (a bad prime).
    fn solve(&self, d: usize, plan: Option<&Plan>, rng: &mut ChaCha8Rng) -> Solve {
        let p = self.p;
        let nw = self.act_m.len();
        let gens = match plan {
            Some(pl) => pl.gens.clone(),
            None => self.choose_gens(d),
        };
        let mut v = self.spanning_matrix(&gens, d);
        let pivots = v.rref();
        if pivots.len() != d || plan.is_some_and(|pl| pl.pivots != pivots) {
            return Solve::BadPrime;
        }
        let unknowns = gens.len() * d;
        let mut eqs = Echelon::new(p, unknowns);
        for c in (0..v.cols).filter(|c| !pivots.contains(c)) {
            // column c = Σ_r v[r][c] · (pivot column r)
            let mut rel: Vec<(usize, u64)> = vec![(c, 1)];
            for (r, &pc) in pivots.iter().enumerate() {
                let x = v.get(r, c);
                if x != 0 {
                    rel.push((pc, modp::sub_mod(0, x, p)));
                }
            }
            for i in 0..d {
                let mut row = vec![0u64; unknowns];
                for &(col, coeff) in &rel {
                    let (gi, wi) = (col / nw, col % nw);
                    let act = &self.act_n[wi];
                    for j in 0..d {
                        let x = act.get(i, j);
                        if x != 0 {
                            let slot = &mut row[gi * d + j];
                            *slot = modp::add_mod(*slot, modp::mul_mod(coeff, x, p), p);
                        }
                    }
                }
                eqs.insert(row);
            }
        }
        let mut e = ModMatrix {
            p,
            rows: eqs.rows.len(),
            cols: unknowns,
            data: eqs.rows.concat(),
        };
        let eq_pivots = e.rref();
        if plan.is_some_and(|pl| pl.eq_pivots != eq_pivots) {
            return Solve::BadPrime;
        }
        let free: Vec<usize> = (0..unknowns).filter(|c| !eq_pivots.contains(c)).collect();
        let hom_dim = free.len();
        if hom_dim == 0 {
            return Solve::NoMap { hom_dim };
        }
        let basis_vec = |t: usize| -> Vec<u64> {
            let f = free[t];
            let mut b = vec![0u64; unknowns];
            b[f] = 1;
            for (r, &pc) in eq_pivots.iter().enumerate() {
                b[pc] = modp::sub_mod(0, e.get(r, f), p);
            }
            b
        };
        let basis: Vec<Vec<u64>> = (0..hom_dim).map(basis_vec).collect();

        let mut u = ModMatrix::zeros(p, d, d);
        for (k, &pc) in pivots.iter().enumerate() {
            let (gi, wi) = (pc / nw, pc % nw);
            for i in 0..d {
                u.set(i, k, self.act_m[wi].get(i, gens[gi]));
            }
        }
        let y_for = |coeffs: &[i64]| -> ModMatrix {
            let mut images = vec![0u64; unknowns];
            for (t, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let cm = if c < 0 {
                    p - (c.unsigned_abs() % p)
                } else {
                    c as u64 % p
                };
                for (slot, &b) in images.iter_mut().zip(&basis[t]) {
                    if b != 0 {
                        *slot = modp::add_mod(*slot, modp::mul_mod(cm, b, p), p);
                    }
                }
            }
            let mut y = ModMatrix::zeros(p, d, d);
            for (k, &pc) in pivots.iter().enumerate() {
                let (gi, wi) = (pc / nw, pc % nw);
                let pg = &images[gi * d..(gi + 1) * d];
                let col = self.act_n[wi].mul_vec(pg);
                for i in 0..d {
                    y.set(i, k, col[i]);
                }
            }
            y
        };
        let coeffs = match plan {
            Some(pl) => pl.coeffs.clone(),
            None => {
                let mut candidates: Vec<Vec<i64>> = (0..RANDOM_ATTEMPTS)
                    .map(|_| (0..hom_dim).map(|_| rng.gen_range(-3i64..=3)).collect())
                    .collect();
                for t in 0..hom_dim {
                    let mut c = vec![0i64; hom_dim];
                    c[t] = 1;
                    candidates.push(c);
                }
                candidates.push(vec![1i64; hom_dim]);
                match candidates.into_iter().find(|c| y_for(c).det() != 0) {
                    Some(c) => c,
                    None => return Solve::NoMap { hom_dim },
                }
            }
        };
        let y = y_for(&coeffs);
        let uinv = u.inverse().expect("pivot columns are independent");
        let x = y.mul(&uinv);
        Solve::Map {
            plan: Plan {
                gens,
                pivots,
                eq_pivots,
                coeffs,
            },
            x,
            hom_dim,
        }
    }
}

enum Solve {
    BadPrime,
    NoMap { hom_dim: usize },
    Map { plan: Plan, x: ModMatrix, hom_dim: usize },
}

/// Semi-echelon row space over `𝔽_p`, each stored row normalized to have a
/// leading 1 at its pivot and zeros at earlier rows' pivots.
struct Echelon {
    p: u64,
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(p: u64, width: usize) -> Self {
        Echelon {
            p,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.p;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if f == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = modp::sub_mod(*x, modp::mul_mod(f, y, p), p);
                }
            }
        }
        v
    }

    fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    fn insert(&mut self, v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = modp::inv_mod(r[pc], self.p).expect("nonzero");
        for x in r.iter_mut() {
            *x = modp::mul_mod(*x, inv, self.p);
        }
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }
}

/// Exact check `X ρ_M(π_s) = ρ_N(π_s) X` for all generators, with `X`
/// integral after scaling.
fn exact_intertwiner(x: &RatMatrix, m: &HeckeModule, n: &HeckeModule) -> bool {
    m.subset().iter().all(|s| (x * m.gen(s)) == (n.gen(s) * x))
}

/// Searches for an isomorphism `M → N` of modules over the same `H_I`.
pub fn iso_test(m: &HeckeModule, n: &HeckeModule) -> Result<IsoOutcome> {
    if !same_system(m.system(), n.system()) || m.subset() != n.subset() || m.params() != n.params() {
        return Err(Error::ParamMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(IsoOutcome::non_iso(
            None,
            true,
            format!("dimensions differ ({} vs {})", m.dim(), n.dim()),
        ));
    }
    let d = m.dim();
    if d == 0 {
        return Ok(IsoOutcome {
            map: Some(RatMatrix::zeros(0, 0)),
            hom_dim: Some(0),
            certified_non_iso: false,
            reason: "zero modules".into(),
        });
    }
    let elems = m.system().parabolic_elements(m.subset());
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED ^ d as u64);
    let mut primes = modp::primes();

    // Reference prime: make the structural choices.
    let (plan, first_x, hom_dim) = loop {
        let p = primes.next().expect("infinite prime supply");
        let Some(data) = PrimeData::new(m, n, &elems, p) else {
            continue;
        };
        match data.solve(d, None, &mut rng) {
            Solve::BadPrime => continue,
            Solve::NoMap { hom_dim } => {
                return Ok(certify_absence(m, n, hom_dim));
            }
            Solve::Map { plan, x, hom_dim } => break (plan, x, hom_dim),
        }
    };

    let mut crt = Crt::new(d * d);
    crt.absorb(&first_x.data, first_x.p);
    let mut previous: Option<Vec<Rat>> = None;
    for _ in 0..MAX_PRIMES {
        if let Some(vals) = crt.reconstruct() {
            if previous.as_ref() == Some(&vals) {
                let x = RatMatrix::from_fn(d, d, |i, j| vals[i * d + j].clone());
                if exact_intertwiner(&x, m, n) && is_invertible(&x) {
                    return Ok(IsoOutcome {
                        map: Some(x),
                        hom_dim: Some(hom_dim),
                        certified_non_iso: false,
                        reason: "certified invertible intertwiner".into(),
                    });
                }
            }
            previous = Some(vals);
        }
        let p = primes.next().expect("infinite prime supply");
        let Some(data) = PrimeData::new(m, n, &elems, p) else {
            continue;
        };
        if let Solve::Map { plan: pl, x, .. } = data.solve(d, Some(&plan), &mut rng) {
            if pl == plan {
                crt.absorb(&x.data, p);
            }
        }
    }
    Ok(IsoOutcome::non_iso(
        Some(hom_dim),
        false,
        "an invertible intertwiner exists modulo p but did not lift within the prime budget",
    ))
}

/// No invertible intertwiner was found; try to prove none exists.
fn certify_absence(m: &HeckeModule, n: &HeckeModule, hom_dim: usize) -> IsoOutcome {
    if hom_dim == 0 {
        return IsoOutcome::non_iso(Some(0), true, "Hom space is zero");
    }
    let sys = m.system();
    for w in sys.parabolic_elements(m.subset()) {
        let (Ok(a), Ok(b)) = (m.act_word(w), n.act_word(w)) else {
            continue;
        };
        let (ra, rb) = (a.rank(), b.rank());
        if ra != rb {
            return IsoOutcome::non_iso(
                Some(hom_dim),
                true,
                format!("rank of pi[{}] differs ({ra} vs {rb})", sys.format_elem(w)),
            );
        }
    }
    IsoOutcome::non_iso(
        Some(hom_dim),
        false,
        "no invertible element found in the Hom space; rank invariants agree",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use crate::scalars::ParamSpec;
    use std::sync::Arc;

    fn s2() -> Arc<CoxeterSystem> {
        Arc::new(CoxeterSystem::named("A1").unwrap())
    }

    #[test]
    fn self_iso_and_dimension_mismatch() {
        let sys = Arc::new(CoxeterSystem::named("A2").unwrap());
        let p = ParamSpec::new(2, 3);
        let reg = HeckeModule::regular(&sys, sys.all_gens(), &p).unwrap();
        let out = iso_test(&reg, &reg).unwrap();
        assert!(out.is_iso());
        let triv = HeckeModule::scalar(&sys, sys.all_gens(), &p, &Rat::from_int(3)).unwrap();
        let out = iso_test(&reg, &HeckeModule::direct_sum(&[triv.clone(), triv]).unwrap()).unwrap();
        assert!(!out.is_iso() && out.certified_non_iso);
    }

    #[test]
    fn conjugate_is_found() {
        let sys = s2();
        let p = ParamSpec::new(2, 3);
        let reg = HeckeModule::regular(&sys, sys.all_gens(), &p).unwrap();
        let conj = reg.random_conjugate(7).unwrap();
        assert!(conj.validate().passed());
        let out = iso_test(&reg, &conj).unwrap();
        let x = out.map.unwrap();
        let map = ModuleMap::new(&reg, &conj, x).unwrap();
        assert!(map.is_equivariant() && map.is_invertible());
    }

    #[test]
    fn nil_coxeter_regular_is_not_semisimple() {
        let sys = s2();
        let p = ParamSpec::new(0, 0);
        let reg = HeckeModule::regular(&sys, sys.all_gens(), &p).unwrap();
        let zero = HeckeModule::scalar(&sys, sys.all_gens(), &p, &Rat::zero()).unwrap();
        let sum = HeckeModule::direct_sum(&[zero.clone(), zero]).unwrap();
        let out = iso_test(&reg, &sum).unwrap();
        assert!(!out.is_iso());
        assert!(out.certified_non_iso, "{}", out.reason);
        assert_eq!(out.hom_dim, Some(2));
    }
}
