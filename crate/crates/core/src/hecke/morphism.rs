use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::element::{same_system, Basis, HeckeElement};
use crate::coxeter::{CoxeterSystem, Elem, GenSet};
use crate::error::{Error, Result};
use crate::scalars::BiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphKind {
    Auto,
    Anti,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphName {
    Phi,
    Theta,
    Chi,
    Omega,
    PhiHat,
    ThetaHat,
    OmegaHat,
    CW,
    Custom(String),
}

impl fmt::Display for MorphName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MorphName::Phi => "phi",
            MorphName::Theta => "theta",
            MorphName::Chi => "chi",
            MorphName::Omega => "omega",
            MorphName::PhiHat => "phi_hat",
            MorphName::ThetaHat => "theta_hat",
            MorphName::OmegaHat => "omega_hat",
            MorphName::CW => "c_w",
            MorphName::Custom(s) => s,
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for MorphName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "phi" => MorphName::Phi,
            "theta" => MorphName::Theta,
            "chi" => MorphName::Chi,
            "omega" => MorphName::Omega,
            "phi_hat" => MorphName::PhiHat,
            "theta_hat" => MorphName::ThetaHat,
            "omega_hat" => MorphName::OmegaHat,
            other => return Err(Error::Parse(format!("unknown twist `{other}`"))),
        })
    }
}

/// An (anti-)homomorphism `H_{I'} → H_I` given by generator images, checked
/// against the quadratic and braid relations when built.
#[derive(Clone, Debug)]
pub struct MorphismSpec {
    sys: Arc<CoxeterSystem>,
    kind: MorphKind,
    name: MorphName,
    domain: GenSet,
    codomain: GenSet,
    images: BTreeMap<usize, HeckeElement>,
}

impl MorphismSpec {
    pub fn new(
        sys: &Arc<CoxeterSystem>,
        kind: MorphKind,
        name: MorphName,
        domain: GenSet,
        codomain: GenSet,
        images: BTreeMap<usize, HeckeElement>,
    ) -> Result<Self> {
        sys.check_subset(domain)?;
        sys.check_subset(codomain)?;
        let keys = GenSet::from_indices(images.keys().copied());
        if keys != domain {
            return Err(Error::InvalidMorphism(format!(
                "images given for {keys} but the domain is {domain}"
            )));
        }
        let images: BTreeMap<usize, HeckeElement> = images
            .into_iter()
            .map(|(s, x)| (s, x.change_basis(Basis::Pi)))
            .collect();
        for (s, x) in &images {
            if !same_system(x.system(), sys) {
                return Err(Error::SystemMismatch);
            }
            if !x.supported_in(codomain) {
                return Err(Error::InvalidMorphism(format!(
                    "image of s{} is not supported in H_{codomain}",
                    s + 1
                )));
            }
        }
        let spec = MorphismSpec {
            sys: sys.clone(),
            kind,
            name,
            domain,
            codomain,
            images,
        };
        spec.check_relations()?;
        Ok(spec)
    }

    fn check_relations(&self) -> Result<()> {
        let a = BiPoly::a();
        let b = BiPoly::b();
        let one = HeckeElement::one(&self.sys, Basis::Pi);
        for (s, x) in &self.images {
            let lhs = x * x;
            let rhs = &x.scale(&a) + &one.scale(&b);
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!(
                    "quadratic relation fails at s{}",
                    s + 1
                )));
            }
        }
        // The braid relations are closed under reversal, so the same check
        // covers anti-homomorphisms.
        for i in self.domain.iter() {
            for j in self.domain.iter().filter(|&j| j > i) {
                let m = self.sys.matrix().entry(i, j) as usize;
                let alt = |first: usize, second: usize| {
                    let mut acc = HeckeElement::one(&self.sys, Basis::Pi);
                    for k in 0..m {
                        let g = if k % 2 == 0 { first } else { second };
                        acc = &acc * &self.images[&g];
                    }
                    acc
                };
                if alt(i, j) != alt(j, i) {
                    return Err(Error::InvalidMorphism(format!(
                        "braid relation fails for s{}, s{}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn kind(&self) -> MorphKind {
        self.kind
    }

    pub fn name(&self) -> &MorphName {
        &self.name
    }

    pub fn domain(&self) -> GenSet {
        self.domain
    }

    pub fn codomain(&self) -> GenSet {
        self.codomain
    }

    pub fn image_of_gen(&self, s: usize) -> Option<&HeckeElement> {
        self.images.get(&s)
    }

    pub fn images(&self) -> &BTreeMap<usize, HeckeElement> {
        &self.images
    }

    /// Image of `π_w` for `w ∈ W_{domain}`; anti-homomorphisms reverse the word.
    pub fn apply_basis(&self, w: Elem) -> Result<HeckeElement> {
        let mut word = self.sys.reduced_word(w);
        if let Some(&s) = word.iter().find(|&&s| !self.domain.contains(s)) {
            return Err(Error::SupportOutsideDomain(format!(
                "{} uses s{} outside {}",
                self.sys.format_elem(w),
                s + 1,
                self.domain
            )));
        }
        if self.kind == MorphKind::Anti {
            word.reverse();
        }
        let mut acc = HeckeElement::one(&self.sys, Basis::Pi);
        for s in word {
            acc = &acc * &self.images[&s];
        }
        Ok(acc)
    }

    /// Applies the morphism; the result is expanded in the π basis.
    pub fn apply(&self, x: &HeckeElement) -> Result<HeckeElement> {
        if !same_system(x.system(), &self.sys) {
            return Err(Error::SystemMismatch);
        }
        let x = x.change_basis(Basis::Pi);
        let mut out = HeckeElement::zero(&self.sys, Basis::Pi);
        for (w, c) in x.terms() {
            out = &out + &self.apply_basis(w)?.scale(c);
        }
        Ok(out)
    }

    /// `self ∘ inner`, requiring `inner`'s codomain to lie in `self`'s domain.
    pub fn compose(&self, inner: &MorphismSpec) -> Result<MorphismSpec> {
        if !inner.codomain.is_subset(self.domain) {
            return Err(Error::NotSubset {
                sub: inner.codomain.to_string(),
                sup: self.domain.to_string(),
            });
        }
        let images = inner
            .images
            .iter()
            .map(|(&s, x)| Ok((s, self.apply(x)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let kind = if self.kind == inner.kind {
            MorphKind::Auto
        } else {
            MorphKind::Anti
        };
        MorphismSpec::new(
            &self.sys,
            kind,
            MorphName::Custom(format!("{}∘{}", self.name, inner.name)),
            inner.domain,
            self.codomain,
            images,
        )
    }

    /// Restriction to a smaller domain with the codomain tightened to the
    /// given subset (which must contain all the images).
    pub fn restrict(&self, domain: GenSet, codomain: GenSet) -> Result<MorphismSpec> {
        if !domain.is_subset(self.domain) {
            return Err(Error::NotSubset {
                sub: domain.to_string(),
                sup: self.domain.to_string(),
            });
        }
        let images = domain.iter().map(|s| (s, self.images[&s].clone())).collect();
        MorphismSpec::new(&self.sys, self.kind, self.name.clone(), domain, codomain, images)
    }

    /// When every generator maps to a single generator, returns that map.
    pub fn generator_permutation(&self) -> Option<BTreeMap<usize, usize>> {
        self.images
            .iter()
            .map(|(&s, x)| {
                let t: Vec<_> = x.terms().collect();
                match t.as_slice() {
                    [(w, c)] if **c == BiPoly::one() && self.sys.length(*w) == 1 => {
                        (0..self.sys.rank()).find(|&g| self.sys.gen(g) == *w).map(|g| (s, g))
                    }
                    _ => None,
                }
            })
            .collect()
    }

    pub fn phi(sys: &Arc<CoxeterSystem>) -> Self {
        Self::named(sys, MorphName::Phi)
    }

    pub fn theta(sys: &Arc<CoxeterSystem>) -> Self {
        Self::named(sys, MorphName::Theta)
    }

    pub fn chi(sys: &Arc<CoxeterSystem>) -> Self {
        Self::named(sys, MorphName::Chi)
    }

    pub fn omega(sys: &Arc<CoxeterSystem>) -> Self {
        Self::named(sys, MorphName::Omega)
    }

    /// One of the seven named (anti-)involutions of `H_W`.
    pub fn named(sys: &Arc<CoxeterSystem>, name: MorphName) -> Self {
        let all = sys.all_gens();
        let w0 = sys.longest();
        let conj = |s: usize| -> usize {
            let t = sys.mul(sys.mul(w0, sys.gen(s)), w0);
            (0..sys.rank()).find(|&g| sys.gen(g) == t).expect("w0 s w0 is simple")
        };
        let pi = |s: usize| HeckeElement::gen(sys, Basis::Pi, s);
        let a_minus = |s: usize| &HeckeElement::scalar(sys, Basis::Pi, BiPoly::a()) - &pi(s);
        let (kind, img): (MorphKind, Box<dyn Fn(usize) -> HeckeElement>) = match name {
            MorphName::Phi => (MorphKind::Auto, Box::new(|s| pi(conj(s)))),
            MorphName::Theta => (MorphKind::Auto, Box::new(a_minus)),
            MorphName::Chi => (MorphKind::Anti, Box::new(pi)),
            MorphName::Omega => (MorphKind::Auto, Box::new(|s| a_minus(conj(s)))),
            MorphName::PhiHat => (MorphKind::Anti, Box::new(|s| pi(conj(s)))),
            MorphName::ThetaHat => (MorphKind::Anti, Box::new(a_minus)),
            MorphName::OmegaHat => (MorphKind::Anti, Box::new(|s| a_minus(conj(s)))),
            MorphName::CW | MorphName::Custom(_) => panic!("{name} is not a named involution"),
        };
        let images = all.iter().map(|s| (s, img(s))).collect();
        MorphismSpec::new(sys, kind, name, all, all, images).expect("named involutions satisfy the relations")
    }

    /// `c_w : H_{K(w)} → H_{w⁻¹K(w)w}`, `π_k ↦ π_{w⁻¹kw}`.
    pub fn c_w(sys: &Arc<CoxeterSystem>, w: Elem, j: GenSet, i: GenSet) -> Result<Self> {
        let (k, kp, pairing) = sys.cross_section(w, j, i)?;
        let images = pairing
            .iter()
            .map(|&(s, t)| (s, HeckeElement::gen(sys, Basis::Pi, t)))
            .collect();
        MorphismSpec::new(sys, MorphKind::Auto, MorphName::CW, k, kp, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(sys: &Arc<CoxeterSystem>, s: &str) -> HeckeElement {
        HeckeElement::parse(sys, s).unwrap()
    }

    #[test]
    fn named_images() {
        let sys = Arc::new(CoxeterSystem::named("A2").unwrap());
        let theta = MorphismSpec::theta(&sys);
        assert_eq!(
            theta.apply(&el(&sys, "pi[s1]")).unwrap(),
            el(&sys, "(a)*pi[e] - pi[s1]")
        );
        let phi = MorphismSpec::phi(&sys);
        assert_eq!(phi.apply(&el(&sys, "pi[s1]")).unwrap(), el(&sys, "pi[s2]"));
        let chi = MorphismSpec::chi(&sys);
        assert_eq!(chi.apply(&el(&sys, "pi[s1*s2]")).unwrap(), el(&sys, "pi[s2*s1]"));
    }

    #[test]
    fn c_w_examples() {
        let sys = Arc::new(CoxeterSystem::named("A3").unwrap());
        let j = GenSet::from_labels(&[1, 2]);
        let c = MorphismSpec::c_w(&sys, sys.gen(2), j, j).unwrap();
        assert_eq!(c.domain(), GenSet::from_labels(&[1]));
        assert_eq!(c.apply(&el(&sys, "pi[s1]")).unwrap(), el(&sys, "pi[s1]"));
        let lhs = &el(&sys, "pi[s1]") * &el(&sys, "pi[s3]");
        let rhs = &el(&sys, "pi[s3]") * &c.apply(&el(&sys, "pi[s1]")).unwrap();
        assert_eq!(lhs, rhs);
        let id = MorphismSpec::c_w(&sys, Elem::IDENTITY, j, GenSet::from_labels(&[2, 3])).unwrap();
        assert_eq!(id.generator_permutation().unwrap(), BTreeMap::from([(1, 1)]));
        assert!(MorphismSpec::c_w(&sys, sys.gen(0), j, j).is_err());
    }

    #[test]
    fn invalid_custom_morphism_rejected() {
        let sys = Arc::new(CoxeterSystem::named("A2").unwrap());
        let all = sys.all_gens();
        // π1 ↦ 2π1 breaks the quadratic relation
        let bad = BTreeMap::from([(0, el(&sys, "(2)*pi[s1]")), (1, el(&sys, "pi[s2]"))]);
        assert!(matches!(
            MorphismSpec::new(&sys, MorphKind::Auto, MorphName::Custom("x".into()), all, all, bad),
            Err(Error::InvalidMorphism(_))
        ));
        let phi = MorphismSpec::phi(&sys);
        let sub = GenSet::from_labels(&[1]);
        let r = phi.restrict(sub, GenSet::from_labels(&[2])).unwrap();
        assert!(matches!(
            r.apply(&el(&sys, "pi[s2]")),
            Err(Error::SupportOutsideDomain(_))
        ));
    }
}
