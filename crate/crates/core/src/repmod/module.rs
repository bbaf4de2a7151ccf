use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSystem, Elem, GenSet, GroupSpec};
use crate::error::{Error, Result};
use crate::hecke::{same_system, MorphKind, MorphismSpec};
use crate::linalg::RatMatrix;
use crate::scalars::{ParamSpec, Rat};

/// A finite-dimensional module over the parabolic subalgebra `H_I(a0, b0)`,
/// given by the action matrices of the generators in `I`. Vectors are
/// columns: column `k` of `ρ(π_s)` is the image of basis vector `k`.
#[derive(Clone, Debug)]
pub struct HeckeModule {
    sys: Arc<CoxeterSystem>,
    subset: GenSet,
    params: ParamSpec,
    dim: usize,
    gens: BTreeMap<usize, RatMatrix>,
}

impl PartialEq for HeckeModule {
    fn eq(&self, other: &Self) -> bool {
        same_system(&self.sys, &other.sys)
            && self.subset == other.subset
            && self.params == other.params
            && self.dim == other.dim
            && self.gens == other.gens
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
    /// Largest absolute entry of the residual matrix.
    pub residual: Rat,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<RelationCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

impl HeckeModule {
    /// Builds a module from generator matrices (0-based keys). Shapes are
    /// checked here; the defining relations are checked by [`validate`].
    ///
    /// [`validate`]: HeckeModule::validate
    pub fn new(
        sys: &Arc<CoxeterSystem>,
        subset: GenSet,
        params: ParamSpec,
        dim: usize,
        gens: BTreeMap<usize, RatMatrix>,
    ) -> Result<Self> {
        sys.check_subset(subset)?;
        let keys = GenSet::from_indices(gens.keys().copied());
        if keys != subset {
            return Err(Error::DimensionMismatch(format!(
                "actions given for {keys} but the subset is {subset}"
            )));
        }
        for (s, m) in &gens {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for s{} is {}x{}, expected {dim}x{dim}",
                    s + 1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(HeckeModule {
            sys: sys.clone(),
            subset,
            params,
            dim,
            gens,
        })
    }

    /// Like [`new`](HeckeModule::new), but rejects modules that violate the
    /// quadratic or braid relations.
    pub fn new_validated(
        sys: &Arc<CoxeterSystem>,
        subset: GenSet,
        params: ParamSpec,
        dim: usize,
        gens: BTreeMap<usize, RatMatrix>,
    ) -> Result<Self> {
        let m = Self::new(sys, subset, params, dim, gens)?;
        let report = m.validate();
        if let Some(bad) = report.failures().first() {
            return Err(Error::Invalid(format!("module violates {}", bad.relation)));
        }
        Ok(m)
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn subset(&self) -> GenSet {
        self.subset
    }

    pub fn params(&self) -> &ParamSpec {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &BTreeMap<usize, RatMatrix> {
        &self.gens
    }

    pub fn gen(&self, s: usize) -> &RatMatrix {
        &self.gens[&s]
    }

    /// Checks `ρ(π_s)² = a0 ρ(π_s) + b0` and the braid relations.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let id = RatMatrix::identity(self.dim);
        for (&s, x) in &self.gens {
            let rhs = &x.scale(&self.params.a) + &id.scale(&self.params.b);
            let res = &(x * x) - &rhs;
            checks.push(RelationCheck {
                relation: format!("quadratic s{}", s + 1),
                holds: res.is_zero(),
                residual: res.max_abs(),
            });
        }
        for i in self.subset.iter() {
            for j in self.subset.iter().filter(|&j| j > i) {
                let m = self.sys.matrix().entry(i, j) as usize;
                let alt = |first: usize, second: usize| {
                    let mut acc = id.clone();
                    for k in 0..m {
                        acc = &acc * &self.gens[if k % 2 == 0 { &first } else { &second }];
                    }
                    acc
                };
                let res = &alt(i, j) - &alt(j, i);
                checks.push(RelationCheck {
                    relation: format!("braid s{} s{}", i + 1, j + 1),
                    holds: res.is_zero(),
                    residual: res.max_abs(),
                });
            }
        }
        ValidationReport { checks }
    }

    fn check_in_parabolic(&self, y: Elem) -> Result<Vec<usize>> {
        let word = self.sys.reduced_word(y);
        if word.iter().any(|&s| !self.subset.contains(s)) {
            return Err(Error::ElementOutsideParabolic(self.sys.format_elem(y)));
        }
        Ok(word)
    }

    /// `ρ(π_y)` for `y ∈ W_I`, the product along the greedy reduced word.
    pub fn act_word(&self, y: Elem) -> Result<RatMatrix> {
        let word = self.check_in_parabolic(y)?;
        Ok(self.act_letters(&word))
    }

    /// Product of generator matrices along an arbitrary word in `I`.
    pub fn act_letters(&self, word: &[usize]) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.dim);
        for s in word {
            acc = &acc * &self.gens[s];
        }
        acc
    }

    /// `ρ(π_y) v` computed one generator at a time.
    pub fn act_on_vec(&self, y: Elem, v: &[Rat]) -> Result<Vec<Rat>> {
        let word = self.check_in_parabolic(y)?;
        let mut out = v.to_vec();
        for s in word.iter().rev() {
            out = self.gens[s].mul_vec(&out);
        }
        Ok(out)
    }

    /// Action of a specialized Hecke element given as `Σ c_w π_w`.
    pub fn act_element(&self, x: &crate::hecke::HeckeElement) -> Result<RatMatrix> {
        let x = x.change_basis(crate::hecke::Basis::Pi);
        let mut acc = RatMatrix::zeros(self.dim, self.dim);
        for (w, c) in x.terms() {
            let c = c.specialize(&self.params);
            if !c.is_zero() {
                acc = &acc + &self.act_word(w)?.scale(&c);
            }
        }
        Ok(acc)
    }

    pub fn restrict(&self, sub: GenSet) -> Result<HeckeModule> {
        if !sub.is_subset(self.subset) {
            return Err(Error::NotSubset {
                sub: sub.to_string(),
                sup: self.subset.to_string(),
            });
        }
        let gens = sub.iter().map(|s| (s, self.gens[&s].clone())).collect();
        HeckeModule::new(&self.sys, sub, self.params.clone(), self.dim, gens)
    }

    /// Moves the module into another system along an injective map of
    /// generators that preserves the Coxeter matrix entries.
    pub fn relabel(&self, target: &Arc<CoxeterSystem>, map: &BTreeMap<usize, usize>) -> Result<HeckeModule> {
        for i in self.subset.iter() {
            let ti = *map
                .get(&i)
                .ok_or_else(|| Error::Invalid(format!("relabeling misses s{}", i + 1)))?;
            target.check_gen(ti)?;
            for j in self.subset.iter() {
                if self.sys.matrix().entry(i, j) != target.matrix().entry(ti, map[&j]) {
                    return Err(Error::Invalid(format!(
                        "relabeling s{}, s{} -> s{}, s{} changes the Coxeter matrix",
                        i + 1,
                        j + 1,
                        ti + 1,
                        map[&j] + 1
                    )));
                }
            }
        }
        let gens = self.gens.iter().map(|(s, m)| (map[s], m.clone())).collect();
        let subset = GenSet::from_indices(self.subset.iter().map(|s| map[&s]));
        HeckeModule::new(target, subset, self.params.clone(), self.dim, gens)
    }

    /// The twist `spec[M]`: an `H_{domain}`-module on the same space (on the
    /// dual space, with transposed matrices, for anti-morphisms).
    pub fn twist_along(&self, spec: &MorphismSpec) -> Result<HeckeModule> {
        if !same_system(spec.system(), &self.sys) {
            return Err(Error::SystemMismatch);
        }
        if !spec.codomain().is_subset(self.subset) {
            return Err(Error::SupportOutsideDomain(format!(
                "twist codomain {} is not inside the module subset {}",
                spec.codomain(),
                self.subset
            )));
        }
        let mut gens = BTreeMap::new();
        for (&s, img) in spec.images() {
            let m = self.act_element(img)?;
            gens.insert(
                s,
                match spec.kind() {
                    MorphKind::Auto => m,
                    MorphKind::Anti => m.transpose(),
                },
            );
        }
        HeckeModule::new(&self.sys, spec.domain(), self.params.clone(), self.dim, gens)
    }

    /// Transports the module along `v ↦ p v`: actions become `p ρ p⁻¹`.
    pub fn conjugate(&self, p: &RatMatrix) -> Result<HeckeModule> {
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::Invalid("conjugating matrix is singular".into()))?;
        let gens = self.gens.iter().map(|(&s, m)| (s, &(p * m) * &pinv)).collect();
        HeckeModule::new(&self.sys, self.subset, self.params.clone(), self.dim, gens)
    }

    fn check_same_kind(&self, other: &HeckeModule) -> Result<()> {
        if !same_system(&self.sys, &other.sys) {
            return Err(Error::SystemMismatch);
        }
        if self.subset != other.subset || self.params != other.params {
            return Err(Error::ParamMismatch);
        }
        Ok(())
    }

    pub fn direct_sum(parts: &[HeckeModule]) -> Result<HeckeModule> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Invalid("direct sum of an empty list".into()))?;
        for p in parts {
            first.check_same_kind(p)?;
        }
        let dim = parts.iter().map(|p| p.dim).sum();
        let gens = first
            .subset
            .iter()
            .map(|s| {
                let blocks: Vec<RatMatrix> = parts.iter().map(|p| p.gens[&s].clone()).collect();
                (s, RatMatrix::block_diag(&blocks))
            })
            .collect();
        HeckeModule::new(&first.sys, first.subset, first.params.clone(), dim, gens)
    }

    /// `M ⊗ N` over `H_{I ⊔ J}`; basis vector `(p, q)` sits at `p·dim N + q`.
    pub fn outer_tensor(&self, other: &HeckeModule) -> Result<HeckeModule> {
        if !same_system(&self.sys, &other.sys) {
            return Err(Error::SystemMismatch);
        }
        if self.params != other.params {
            return Err(Error::ParamMismatch);
        }
        let (i, j) = (self.subset, other.subset);
        let commuting =
            i.intersect(j).is_empty() && i.iter().all(|x| j.iter().all(|y| self.sys.matrix().entry(x, y) == 2));
        if !commuting {
            return Err(Error::NonCommutingSubsets(i.to_string(), j.to_string()));
        }
        let idm = RatMatrix::identity(self.dim);
        let idn = RatMatrix::identity(other.dim);
        let mut gens = BTreeMap::new();
        for (&s, m) in &self.gens {
            gens.insert(s, m.kron(&idn));
        }
        for (&s, m) in &other.gens {
            gens.insert(s, idm.kron(m));
        }
        HeckeModule::new(&self.sys, i.union(j), self.params.clone(), self.dim * other.dim, gens)
    }

    /// The regular module `H_I` on the basis `π_w`, `w ∈ W_I` in sorted order.
    pub fn regular(sys: &Arc<CoxeterSystem>, subset: GenSet, params: &ParamSpec) -> Result<HeckeModule> {
        sys.check_subset(subset)?;
        let elems = sys.parabolic_elements(subset);
        let pos: BTreeMap<Elem, usize> = elems.iter().enumerate().map(|(k, &w)| (w, k)).collect();
        let d = elems.len();
        let mut gens = BTreeMap::new();
        for s in subset.iter() {
            let mut m = RatMatrix::zeros(d, d);
            for (k, &w) in elems.iter().enumerate() {
                let sw = sys.lmul(s, w);
                if sys.length(sw) > sys.length(w) {
                    m.set(pos[&sw], k, Rat::one());
                } else {
                    m.add_at(k, k, &params.a);
                    m.add_at(pos[&sw], k, &params.b);
                }
            }
            gens.insert(s, m);
        }
        HeckeModule::new(sys, subset, params.clone(), d, gens)
    }

    /// One-dimensional module with every generator acting by `λ`.
    pub fn scalar(sys: &Arc<CoxeterSystem>, subset: GenSet, params: &ParamSpec, lambda: &Rat) -> Result<HeckeModule> {
        if !subset.is_empty() && !params.is_eigenvalue(lambda) {
            return Err(Error::InvalidScalar(lambda.to_string()));
        }
        let gens = subset.iter().map(|s| (s, RatMatrix::scalar(1, lambda))).collect();
        HeckeModule::new(sys, subset, params.clone(), 1, gens)
    }

    /// Two-dimensional module with every generator acting by the companion
    /// matrix `[[0, b0], [1, a0]]` of `x² − a0 x − b0`. Valid at every
    /// specialization, so it stands in for a one-dimensional module where
    /// that polynomial has no rational root.
    pub fn companion(sys: &Arc<CoxeterSystem>, subset: GenSet, params: &ParamSpec) -> Result<HeckeModule> {
        sys.check_subset(subset)?;
        let c = RatMatrix::from_rows(vec![
            vec![Rat::zero(), params.b.clone()],
            vec![Rat::one(), params.a.clone()],
        ])?;
        let gens = subset.iter().map(|s| (s, c.clone())).collect();
        HeckeModule::new(sys, subset, params.clone(), 2, gens)
    }

    /// The smallest nonzero module available at these parameters: a scalar
    /// module at the smallest rational eigenvalue, else the companion module.
    pub fn small(sys: &Arc<CoxeterSystem>, subset: GenSet, params: &ParamSpec) -> Result<HeckeModule> {
        match params.rational_eigenvalues().first() {
            Some(l) => Self::scalar(sys, subset, params, l),
            None if subset.is_empty() => Self::scalar(sys, subset, params, &Rat::one()),
            None => Self::companion(sys, subset, params),
        }
    }

    /// `P M P⁻¹` for a seeded random unimodular-ish integer `P`.
    pub fn random_conjugate(&self, seed: u64) -> Result<HeckeModule> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Unit upper triangular times unit lower triangular: always invertible,
        // with small integer entries.
        let d = self.dim;
        // About two off-diagonal entries per row keeps large conjugates sparse.
        let density = (2.0 / d.max(1) as f64).min(0.3);
        let mut upper = RatMatrix::identity(d);
        let mut lower = RatMatrix::identity(d);
        for i in 0..d {
            for j in i + 1..d {
                if rng.gen_bool(density) {
                    upper.set(i, j, Rat::from_int(rng.gen_range(-2i64..=2)));
                }
                if rng.gen_bool(density) {
                    lower.set(j, i, Rat::from_int(rng.gen_range(-2i64..=2)));
                }
            }
        }
        self.conjugate(&(&upper * &lower))
    }

    pub fn to_file(&self) -> ModuleFile {
        ModuleFile {
            group: self.sys.spec().clone(),
            subset: self.subset,
            params: self.params.clone(),
            dim: self.dim,
            gens: self
                .gens
                .iter()
                .map(|(s, m)| ((s + 1).to_string(), m.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("module serializes")
    }

    /// Parses the module JSON format. The group is enumerated with `cap`.
    pub fn from_json(text: &str, cap: usize) -> Result<HeckeModule> {
        let file: ModuleFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("module JSON: {e}")))?;
        let sys = Arc::new(CoxeterSystem::from_spec(&file.group, cap)?);
        file.into_module(&sys)
    }
}

/// On-disk module format:
/// `{"group":"A3","subset":[1,2],"params":{"a":"1","b":"0"},"dim":2,"gens":{"1":[["0","0"],["1","1"]]}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub group: GroupSpec,
    pub subset: GenSet,
    pub params: ParamSpec,
    pub dim: usize,
    pub gens: BTreeMap<String, RatMatrix>,
}

impl ModuleFile {
    pub fn into_module(self, sys: &Arc<CoxeterSystem>) -> Result<HeckeModule> {
        let mut gens = BTreeMap::new();
        for (k, m) in self.gens {
            let label: usize = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("generator key `{k}` is not a number")))?;
            if label == 0 {
                return Err(Error::Parse("generator keys are 1-based".into()));
            }
            gens.insert(label - 1, m);
        }
        HeckeModule::new(sys, self.subset, self.params, self.dim, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sys(name: &str) -> Arc<CoxeterSystem> {
        Arc::new(CoxeterSystem::named(name).unwrap())
    }

    fn one_gen(s: &Arc<CoxeterSystem>, p: ParamSpec, m: RatMatrix) -> HeckeModule {
        let dim = m.rows();
        HeckeModule::new(s, GenSet::full(1), p, dim, BTreeMap::from([(0, m)])).unwrap()
    }

    #[test]
    fn validation_examples() {
        let s2 = sys("A1");
        let p = ParamSpec::new(1, 0);
        let reg = HeckeModule::regular(&s2, s2.all_gens(), &p).unwrap();
        assert_eq!(reg.gen(0), &RatMatrix::from_i64(&[&[0, 0], &[1, 1]]));
        assert!(reg.validate().passed());
        assert!(one_gen(&s2, p.clone(), RatMatrix::from_i64(&[&[1]]))
            .validate()
            .passed());
        let bad = one_gen(&s2, p.clone(), RatMatrix::from_i64(&[&[1, 0], &[0, 2]]));
        let report = bad.validate();
        assert!(!report.passed());
        assert_eq!(report.failures()[0].residual, Rat::from_int(2));
        assert!(HeckeModule::new_validated(&s2, GenSet::full(1), p, 2, bad.gens.clone()).is_err());
    }

    #[test]
    fn act_word_examples() {
        let s2 = sys("A1");
        let reg = HeckeModule::regular(&s2, s2.all_gens(), &ParamSpec::new(1, 0)).unwrap();
        assert!(reg.act_word(Elem::IDENTITY).unwrap().is_identity());
        assert_eq!(
            reg.act_word(s2.gen(0)).unwrap(),
            RatMatrix::from_i64(&[&[0, 0], &[1, 1]])
        );
        let s3 = sys("A2");
        let m = HeckeModule::regular(&s3, GenSet::from_labels(&[1]), &ParamSpec::new(1, 0)).unwrap();
        assert!(matches!(m.act_word(s3.gen(1)), Err(Error::ElementOutsideParabolic(_))));
    }

    #[test]
    fn restriction_and_constructors() {
        let s3 = sys("A2");
        let p = ParamSpec::new(1, 0);
        let reg = HeckeModule::regular(&s3, s3.all_gens(), &p).unwrap();
        assert_eq!(reg.dim(), 6);
        assert!(reg.validate().passed());
        assert_eq!(reg.restrict(reg.subset()).unwrap(), reg);
        let bare = reg.restrict(GenSet::empty()).unwrap();
        assert_eq!(bare.dim(), 6);
        let r1 = reg.restrict(GenSet::from_labels(&[1])).unwrap();
        assert!(r1.validate().passed() && r1.dim() == 6);
        let small = HeckeModule::regular(&s3, GenSet::from_labels(&[1]), &p).unwrap();
        assert!(matches!(small.restrict(s3.all_gens()), Err(Error::NotSubset { .. })));
        for q in [ParamSpec::new(1, 0), ParamSpec::new(0, 0), ParamSpec::new(5, 0)] {
            assert!(HeckeModule::scalar(&s3, s3.all_gens(), &q, &Rat::zero())
                .unwrap()
                .validate()
                .passed());
        }
        assert!(matches!(
            HeckeModule::scalar(&s3, s3.all_gens(), &p, &Rat::from_int(2)),
            Err(Error::InvalidScalar(_))
        ));
        let q = ParamSpec::new(-1, 1);
        assert!(q.rational_eigenvalues().is_empty());
        let c = HeckeModule::small(&s3, s3.all_gens(), &q).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.validate().passed());
    }

    #[test]
    fn outer_tensor_examples() {
        let s4 = sys("A3");
        let p = ParamSpec::new(2, 3);
        let m = HeckeModule::regular(&s4, GenSet::from_labels(&[1]), &p).unwrap();
        let n = HeckeModule::regular(&s4, GenSet::from_labels(&[3]), &p).unwrap();
        let t = m.outer_tensor(&n).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(t.validate().passed());
        let l1 = HeckeModule::scalar(&s4, GenSet::from_labels(&[1]), &p, &Rat::from_int(3)).unwrap();
        let l3 = HeckeModule::scalar(&s4, GenSet::from_labels(&[3]), &p, &Rat::from_int(-1)).unwrap();
        let t = l1.outer_tensor(&l3).unwrap();
        assert_eq!(t.gen(0), &RatMatrix::from_i64(&[&[3]]));
        assert_eq!(t.gen(2), &RatMatrix::from_i64(&[&[-1]]));
        let n2 = HeckeModule::regular(&s4, GenSet::from_labels(&[2]), &p).unwrap();
        assert!(matches!(m.outer_tensor(&n2), Err(Error::NonCommutingSubsets(..))));
    }

    #[test]
    fn twist_examples() {
        let s2 = sys("A1");
        let p = ParamSpec::new(2, 3);
        let comp = HeckeModule::companion(&s2, s2.all_gens(), &p).unwrap();
        let tw = comp.twist_along(&MorphismSpec::theta(&s2)).unwrap();
        assert_eq!(tw.gen(0), &RatMatrix::from_i64(&[&[2, -3], &[-1, 0]]));
        assert!(tw.validate().passed());
        let l = HeckeModule::scalar(&s2, s2.all_gens(), &p, &Rat::from_int(3)).unwrap();
        assert_eq!(l.twist_along(&MorphismSpec::chi(&s2)).unwrap(), l);

        let s4 = sys("A3");
        let reg = HeckeModule::regular(&s4, s4.all_gens(), &p).unwrap();
        let hat = reg
            .twist_along(&MorphismSpec::named(&s4, crate::hecke::MorphName::PhiHat))
            .unwrap();
        for i in 0..3 {
            assert_eq!(hat.gen(i), &reg.gen(2 - i).transpose());
        }
        assert!(hat.validate().passed());
        for name in ["phi", "theta", "chi", "omega", "phi_hat", "theta_hat", "omega_hat"] {
            let spec = MorphismSpec::named(&s4, name.parse().unwrap());
            let twice = reg.twist_along(&spec).unwrap().twist_along(&spec).unwrap();
            assert_eq!(twice, reg, "{name}");
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"group":"A3","subset":[1,2],"params":{"a":"1","b":"0"},"dim":2,"gens":{"1":[["0","0"],["1","1"]],"2":[["1","0"],["0","1"]]}}"#;
        let m = HeckeModule::from_json(text, crate::coxeter::DEFAULT_CAP).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.subset(), GenSet::from_labels(&[1, 2]));
        let back = HeckeModule::from_json(&m.to_json(), crate::coxeter::DEFAULT_CAP).unwrap();
        assert_eq!(back.gens(), m.gens());
        assert!(HeckeModule::from_json(r#"{"group":"A3"}"#, 1000).is_err());
    }

    #[test]
    fn zero_dimensional_modules_propagate() {
        let s3 = sys("A2");
        let p = ParamSpec::new(2, 3);
        let gens = s3.all_gens().iter().map(|s| (s, RatMatrix::zeros(0, 0))).collect();
        let z = HeckeModule::new(&s3, s3.all_gens(), p, 0, gens).unwrap();
        assert!(z.validate().passed());
        assert_eq!(
            z.restrict(GenSet::from_labels(&[1]))
                .unwrap()
                .induce(s3.all_gens())
                .unwrap()
                .module
                .dim(),
            0
        );
        assert_eq!(z.twist_along(&MorphismSpec::theta(&s3)).unwrap().dim(), 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn braid_words_act_alike(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3, which in 0usize..3) {
            let s3 = sys("A2");
            let p = ParamSpec::new(a, b);
            let base = match which {
                0 => HeckeModule::regular(&s3, s3.all_gens(), &p).unwrap(),
                1 => HeckeModule::companion(&s3, s3.all_gens(), &p).unwrap(),
                _ => HeckeModule::regular(&s3, GenSet::from_labels(&[1]), &p).unwrap().induce(s3.all_gens()).unwrap().module,
            };
            let m = base.random_conjugate(seed).unwrap();
            prop_assert!(m.validate().passed());
            prop_assert_eq!(m.act_letters(&[0, 1, 0]), m.act_letters(&[1, 0, 1]));
        }
    }
}
