use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSystem, Elem};
use crate::error::{Error, Result};
use crate::scalars::BiPoly;

/// Which basis an element is expanded in: `π_w`, or `𝜋̄_w = 𝜋̄_{i1}⋯𝜋̄_{il}`
/// with `𝜋̄_i = π_i − a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Pi,
    Opi,
}

impl Basis {
    fn tag(self) -> &'static str {
        match self {
            Basis::Pi => "pi",
            Basis::Opi => "opi",
        }
    }
}

/// A sparse element of `H_W(a, b)` over `ℤ[a, b]`.
#[derive(Clone, Debug)]
pub struct HeckeElement {
    sys: Arc<CoxeterSystem>,
    basis: Basis,
    coeffs: BTreeMap<Elem, BiPoly>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        same_system(&self.sys, &other.sys) && self.basis == other.basis && self.coeffs == other.coeffs
    }
}

impl Eq for HeckeElement {}

pub(crate) fn same_system(a: &Arc<CoxeterSystem>, b: &Arc<CoxeterSystem>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl HeckeElement {
    pub fn zero(sys: &Arc<CoxeterSystem>, basis: Basis) -> Self {
        HeckeElement {
            sys: sys.clone(),
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(sys: &Arc<CoxeterSystem>, basis: Basis) -> Self {
        Self::scalar(sys, basis, BiPoly::one())
    }

    pub fn scalar(sys: &Arc<CoxeterSystem>, basis: Basis, c: BiPoly) -> Self {
        Self::term(sys, basis, Elem::IDENTITY, c)
    }

    pub fn basis_elem(sys: &Arc<CoxeterSystem>, basis: Basis, w: Elem) -> Self {
        Self::term(sys, basis, w, BiPoly::one())
    }

    pub fn gen(sys: &Arc<CoxeterSystem>, basis: Basis, s: usize) -> Self {
        Self::basis_elem(sys, basis, sys.gen(s))
    }

    pub fn term(sys: &Arc<CoxeterSystem>, basis: Basis, w: Elem, c: BiPoly) -> Self {
        let mut e = Self::zero(sys, basis);
        e.add_term(w, c);
        e
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: Elem) -> BiPoly {
        self.coeffs.get(&w).cloned().unwrap_or_else(BiPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Elem, &BiPoly)> {
        self.coeffs.iter().map(|(w, c)| (*w, c))
    }

    pub fn support(&self) -> Vec<Elem> {
        self.coeffs.keys().copied().collect()
    }

    pub fn add_term(&mut self, w: Elem, c: BiPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(w).or_insert_with(BiPoly::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    fn check_compatible(&self, other: &HeckeElement) -> Result<()> {
        if !same_system(&self.sys, &other.sys) {
            return Err(Error::SystemMismatch);
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BiPoly) -> HeckeElement {
        let mut out = Self::zero(&self.sys, self.basis);
        for (w, x) in &self.coeffs {
            out.add_term(*w, x * c);
        }
        out
    }

    /// `T_s · self` by the left multiplication rule of the current basis.
    pub fn left_gen(&self, s: usize) -> HeckeElement {
        let sys = &self.sys;
        let mut out = Self::zero(sys, self.basis);
        let a = match self.basis {
            Basis::Pi => BiPoly::a(),
            Basis::Opi => -BiPoly::a(),
        };
        let b = BiPoly::b();
        for (&w, c) in &self.coeffs {
            let sw = sys.lmul(s, w);
            if sys.length(sw) > sys.length(w) {
                out.add_term(sw, c.clone());
            } else {
                out.add_term(w, c * &a);
                out.add_term(sw, c * &b);
            }
        }
        out
    }

    /// `self · T_s` by the right multiplication rule of the current basis.
    pub fn right_gen(&self, s: usize) -> HeckeElement {
        let sys = &self.sys;
        let mut out = Self::zero(sys, self.basis);
        let a = match self.basis {
            Basis::Pi => BiPoly::a(),
            Basis::Opi => -BiPoly::a(),
        };
        let b = BiPoly::b();
        for (&w, c) in &self.coeffs {
            let ws = sys.rmul(w, s);
            if sys.length(ws) > sys.length(w) {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(w, c * &a);
                out.add_term(ws, c * &b);
            }
        }
        out
    }

    /// Product computed by folding the reduced word of each basis element of
    /// the left factor onto the right factor, one generator at a time.
    pub fn try_mul(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.sys, self.basis);
        for (&v, c) in &self.coeffs {
            let mut acc = other.scale(c);
            for &s in self.sys.reduced_word(v).iter().rev() {
                acc = acc.left_gen(s);
            }
            for (w, x) in acc.coeffs {
                out.add_term(w, x);
            }
        }
        Ok(out)
    }

    /// Same product, computed independently by folding the right factor's
    /// reduced words onto the left factor with the right rule.
    pub fn try_mul_right_fold(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.sys, self.basis);
        for (&v, c) in &other.coeffs {
            let mut acc = self.scale(c);
            for s in self.sys.reduced_word(v) {
                acc = acc.right_gen(s);
            }
            for (w, x) in acc.coeffs {
                out.add_term(w, x);
            }
        }
        Ok(out)
    }

    /// Re-expands the same algebra element in the other basis.
    pub fn change_basis(&self, to: Basis) -> HeckeElement {
        if to == self.basis {
            return self.clone();
        }
        // π_i = 𝜋̄_i + a and 𝜋̄_i = π_i − a, applied along reduced words.
        let shift = match to {
            Basis::Opi => BiPoly::a(),
            Basis::Pi => -BiPoly::a(),
        };
        let mut out = Self::zero(&self.sys, to);
        for (&w, c) in &self.coeffs {
            let mut acc = Self::scalar(&self.sys, to, c.clone());
            for &s in self.sys.reduced_word(w).iter().rev() {
                let shifted = acc.scale(&shift);
                acc = acc.left_gen(s).try_add(&shifted).expect("same system and basis");
            }
            for (v, x) in acc.coeffs {
                out.add_term(v, x);
            }
        }
        out
    }

    /// Whether all basis elements in the support lie in `W_I`.
    pub fn supported_in(&self, set: crate::coxeter::GenSet) -> bool {
        self.coeffs.keys().all(|&w| self.sys.in_parabolic(w, set))
    }

    /// Parses the rendering produced by `Display`, e.g.
    /// `(a)*pi[s1*s2] + (b)*pi[s2]`, `-pi[e]`, `(1 - a)*opi[s1]`.
    pub fn parse(sys: &Arc<CoxeterSystem>, text: &str) -> Result<HeckeElement> {
        parse_element(sys, text)
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let tag = self.basis.tag();
        let mut first = true;
        for (w, c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*{tag}[{}]", self.sys.format_elem(*w))?;
        }
        Ok(())
    }
}

macro_rules! checked_op {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&HeckeElement> for &HeckeElement {
            type Output = HeckeElement;
            /// Panics on system or basis mismatch; use the `try_` form to handle it.
            fn $method(self, rhs: &HeckeElement) -> HeckeElement {
                let f: fn(&HeckeElement, &HeckeElement) -> Result<HeckeElement> = $body;
                f(self, rhs).expect("operands must share system and basis")
            }
        }
    };
}

checked_op!(Add, add, |x, y| x.try_add(y));
checked_op!(Sub, sub, |x, y| x.try_add(&-y));
checked_op!(Mul, mul, |x, y| x.try_mul(y));

impl Neg for &HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        self.scale(&BiPoly::constant(-1))
    }
}

fn parse_element(sys: &Arc<CoxeterSystem>, text: &str) -> Result<HeckeElement> {
    let t = text.trim();
    if t == "0" {
        return Ok(HeckeElement::zero(sys, Basis::Pi));
    }
    // Split into signed terms at depth-0 '+' / '-'.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in t.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if !cur.trim().is_empty() {
                terms.push((neg, cur.trim().to_string()));
            } else if ch == '-' && neg {
                return Err(Error::Parse(format!("doubled sign in `{text}`")));
            }
            cur.clear();
            neg = ch == '-';
            continue;
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        terms.push((neg, cur.trim().to_string()));
    }
    if terms.is_empty() {
        return Err(Error::Parse(format!("empty Hecke element `{text}`")));
    }
    let mut basis = None;
    let mut out_terms = Vec::new();
    for (neg, term) in terms {
        let (coeff, rest) = match term.strip_prefix('(') {
            Some(body) => {
                let close = matching_paren(body).ok_or_else(|| Error::Parse(format!("unbalanced `(` in `{term}`")))?;
                let c: BiPoly = body[..close].parse()?;
                let rest = body[close + 1..].trim();
                let rest = rest
                    .strip_prefix('*')
                    .ok_or_else(|| Error::Parse(format!("expected `*` after coefficient in `{term}`")))?;
                (c, rest.trim().to_string())
            }
            None => (BiPoly::one(), term.clone()),
        };
        let (tag, inner) = if let Some(r) = rest.strip_prefix("opi[") {
            (Basis::Opi, r)
        } else if let Some(r) = rest.strip_prefix("pi[") {
            (Basis::Pi, r)
        } else {
            return Err(Error::Parse(format!("expected `pi[...]` or `opi[...]` in `{term}`")));
        };
        let word = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("missing `]` in `{term}`")))?;
        if *basis.get_or_insert(tag) != tag {
            return Err(Error::BasisMismatch);
        }
        let w = sys.parse_elem(word)?;
        out_terms.push((w, if neg { -coeff } else { coeff }));
    }
    let mut out = HeckeElement::zero(sys, basis.unwrap_or(Basis::Pi));
    for (w, c) in out_terms {
        out.add_term(w, c);
    }
    Ok(out)
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<CoxeterSystem> {
        Arc::new(CoxeterSystem::named("A2").unwrap())
    }

    fn el(sys: &Arc<CoxeterSystem>, s: &str) -> HeckeElement {
        HeckeElement::parse(sys, s).unwrap()
    }

    #[test]
    fn quadratic_and_length_additive_products() {
        let sys = s3();
        assert_eq!(
            &el(&sys, "pi[s1]") * &el(&sys, "pi[s1]"),
            el(&sys, "(a)*pi[s1] + (b)*pi[e]")
        );
        assert_eq!(&el(&sys, "pi[s1]") * &el(&sys, "pi[s2]"), el(&sys, "pi[s1*s2]"));
        assert_eq!(
            &el(&sys, "pi[s1]") * &el(&sys, "pi[s1*s2]"),
            el(&sys, "(a)*pi[s1*s2] + (b)*pi[s2]")
        );
        assert_eq!(
            &el(&sys, "opi[s1]") * &el(&sys, "opi[s1]"),
            el(&sys, "(-a)*opi[s1] + (b)*opi[e]")
        );
    }

    #[test]
    fn basis_changes() {
        let sys = s3();
        assert_eq!(
            el(&sys, "opi[s1]").change_basis(Basis::Pi),
            el(&sys, "pi[s1] + (-a)*pi[e]")
        );
        assert_eq!(
            el(&sys, "pi[s1*s2]").change_basis(Basis::Opi),
            el(&sys, "opi[s1*s2] + (a)*opi[s1] + (a)*opi[s2] + (a^2)*opi[e]")
        );
        for w in sys.elements() {
            let x = HeckeElement::basis_elem(&sys, Basis::Pi, w);
            assert_eq!(x.change_basis(Basis::Opi).change_basis(Basis::Pi), x);
        }
    }

    #[test]
    fn display_round_trip() {
        let sys = s3();
        let x = el(&sys, "(a)*pi[s1*s2] + (b)*pi[s2]");
        assert_eq!(x.to_string(), "(b)*pi[s2] + (a)*pi[s1*s2]");
        assert_eq!(el(&sys, &x.to_string()), x);
        let y = el(&sys, "(1 - a)*opi[s2*s1] - (a*b)*opi[e]");
        assert_eq!(el(&sys, &y.to_string()), y);
        assert_eq!(HeckeElement::zero(&sys, Basis::Pi).to_string(), "0");
        assert!(HeckeElement::parse(&sys, "pi[s1] + opi[s2]").is_err());
        assert!(HeckeElement::parse(&sys, "(a*pi[s1]").is_err());
        assert!(HeckeElement::parse(&sys, "pi[s4]").is_err());
    }

    #[test]
    fn mismatch_errors() {
        let sys = s3();
        assert_eq!(
            el(&sys, "pi[s1]").try_mul(&el(&sys, "opi[s1]")),
            Err(Error::BasisMismatch)
        );
        let other = Arc::new(CoxeterSystem::named("B2").unwrap());
        assert_eq!(
            el(&sys, "pi[s1]").try_add(&HeckeElement::gen(&other, Basis::Pi, 0)),
            Err(Error::SystemMismatch)
        );
    }
}
