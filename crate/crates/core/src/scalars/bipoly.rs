use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ParamSpec, Rat};
use crate::error::Error;

/// Exponent pair `(i, j)` of the monomial `a^i b^j`.
///
/// Ordered graded-lexicographically: total degree first, then the power of `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };

    pub fn degree(self) -> u32 {
        self.a + self.b
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.a, self.b).cmp(&(other.degree(), other.a, other.b))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `ℤ[a, b]`, stored as a sparse map with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    /// The parameter `a`.
    pub fn a() -> Self {
        BiPoly::monomial(1, 1, 0)
    }

    /// The parameter `b`.
    pub fn b() -> Self {
        BiPoly::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, a: u32, b: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(Monomial { a, b }, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn pow(&self, exp: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at `(a0, b0)`.
    pub fn specialize(&self, s: &ParamSpec) -> Rat {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            total += Rat::from_int(c.clone()) * s.a.pow(m.a) * s.b.pow(m.b);
        }
        total
    }
}

/// `y_0 = 0`, `y_1 = -a`, `y_n = -a y_{n-1} + b y_{n-2}`.
pub fn y_seq(n: usize) -> BiPoly {
    let mut prev = BiPoly::zero();
    if n == 0 {
        return prev;
    }
    let mut cur = -BiPoly::a();
    for _ in 1..n {
        let next = &(-BiPoly::a()) * &cur + &BiPoly::b() * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(
                    Monomial {
                        a: m1.a + m2.a,
                        b: m1.b + m2.b,
                    },
                    c1 * c2,
                );
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: Monomial) -> fmt::Result {
    let mut parts = Vec::new();
    for (name, e) in [("a", m.a), ("b", m.b)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for BiPoly {
    /// Highest graded-lex term first, e.g. `-a^3 - a*b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, *m)?;
            }
        }
        Ok(())
    }
}

/// Recursive-descent parser for `expr := term (('+'|'-') term)*`,
/// `term := factor ('*' factor)*`, `factor := '-' factor | atom ('^' int)?`,
/// `atom := int | 'a' | 'b' | '(' expr ')'`.
struct Parser<'s> {
    src: &'s str,
    bytes: &'s [u8],
    pos: usize,
}

impl<'s> Parser<'s> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<BiPoly, Error> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly, Error> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<BiPoly, Error> {
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                Ok(BiPoly::a())
            }
            Some(b'b') => {
                self.pos += 1;
                Ok(BiPoly::b())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(BiPoly::constant(self.integer()?)),
            _ => Err(self.err("expected `a`, `b`, integer or `(`")),
        }
    }
}

impl FromStr for BiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s,
            bytes: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&BiPoly::a() * &BiPoly::a(), BiPoly::monomial(1, 2, 0));
        assert_eq!(&p("a+b") + &BiPoly::zero(), p("a+b"));
        // (-a)*a^2 + b*(-a)
        let lhs = &(-BiPoly::a()) * &BiPoly::monomial(1, 2, 0) + &BiPoly::b() * &(-BiPoly::a());
        assert_eq!(lhs, p("-a^3 - a*b"));
        assert_eq!(lhs, y_seq(3));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let q = &p("a^2 + b") - &p("a^2");
        assert_eq!(q, BiPoly::b());
        assert_eq!(q.terms().count(), 1);
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn y_sequence_initial_values() {
        assert_eq!(y_seq(0), BiPoly::zero());
        assert_eq!(y_seq(1), -BiPoly::a());
        assert_eq!(y_seq(2), p("a^2"));
        assert_eq!(y_seq(3), p("-a^3 - a*b"));
    }

    #[test]
    fn specialization_examples() {
        let q = p("a^2+b");
        assert_eq!(q.specialize(&ParamSpec::new(1, 0)), Rat::one());
        assert_eq!(q.specialize(&ParamSpec::new(2, 3)), Rat::from_int(7));
        let r = p("3*a^2*b - 4*a + 11");
        assert_eq!(r.specialize(&ParamSpec::new(0, 0)), Rat::from_int(11));
        assert_eq!(r.specialize(&ParamSpec::new(0, 0)), Rat::from_int(r.constant_term()));
    }

    #[test]
    fn display_is_graded_lex_descending() {
        assert_eq!(y_seq(3).to_string(), "-a^3 - a*b");
        assert_eq!(p("1 + b + 2*a - 5*a*b^2").to_string(), "-5*a*b^2 + 2*a + b + 1");
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!(p("-(1)").to_string(), "-1");
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = "a + * b".parse::<BiPoly>().unwrap_err();
        assert!(e.to_string().contains("position 4"), "{e}");
        assert!("a b".parse::<BiPoly>().is_err());
        assert!("(a+b".parse::<BiPoly>().is_err());
    }
}
