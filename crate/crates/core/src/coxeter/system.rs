use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::enumerate::right_action_table;
use super::matrix::{CoxeterMatrix, GroupSpec};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 200_000;

/// An element of a [`CoxeterSystem`], stored as an index. Indices are sorted
/// by length, so comparing `Elem`s compares `(length, index)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subset of the generators, stored as a bitset over 0-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GenSet(u64);

impl GenSet {
    pub fn empty() -> Self {
        GenSet(0)
    }

    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << rank) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut g = GenSet::empty();
        for i in it {
            g.insert(i);
        }
        g
    }

    /// Builds a subset from 1-based generator labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        GenSet::from_indices(labels.iter().map(|l| l - 1))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> Self {
        self.remove(i);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersect(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    pub fn minus(self, other: GenSet) -> GenSet {
        GenSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn max_index(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    /// 1-based labels, ascending.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for GenSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        if labels.iter().any(|&l| l == 0 || l > 64) {
            return Err(serde::de::Error::custom("generator labels are 1-based"));
        }
        Ok(GenSet::from_labels(&labels))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Cosets `wW_I`, represented by `W^I`.
    Left,
    /// Cosets `W_I w`, represented by `^I W`.
    Right,
}

/// A fully enumerated finite Coxeter group.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    spec: GroupSpec,
    rank: usize,
    left: Vec<u32>,
    right: Vec<u32>,
    length: Vec<u32>,
    inverse: Vec<u32>,
    longest: Elem,
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for CoxeterSystem {}

impl CoxeterSystem {
    pub fn enumerate(matrix: CoxeterMatrix, cap: usize) -> Result<Self> {
        let spec = GroupSpec::Matrix(matrix.clone());
        Self::build(matrix, spec, cap)
    }

    pub fn from_spec(spec: &GroupSpec, cap: usize) -> Result<Self> {
        Self::build(spec.matrix()?, spec.clone(), cap)
    }

    pub fn named(name: &str) -> Result<Self> {
        let spec: GroupSpec = name.parse()?;
        Self::from_spec(&spec, DEFAULT_CAP)
    }

    /// The symmetric group `S_{n+1}`, i.e. type `A_n`.
    pub fn symmetric(n_plus_one: usize) -> Self {
        let rank = n_plus_one.saturating_sub(1);
        Self::build(
            CoxeterMatrix::type_a(rank),
            GroupSpec::Named(format!("A{rank}")),
            DEFAULT_CAP,
        )
        .expect("symmetric groups of desk size enumerate")
    }

    fn build(matrix: CoxeterMatrix, spec: GroupSpec, cap: usize) -> Result<Self> {
        let raw = right_action_table(&matrix, cap)?;
        let n = matrix.rank();
        let size = raw.len();

        // Renumber breadth-first from the identity so that indices increase
        // with length. `parent[w]` and `last[w]` record w = parent * s_last.
        let mut order = vec![u32::MAX; size];
        let mut bfs = Vec::with_capacity(size);
        let mut parent = Vec::with_capacity(size);
        let mut last = Vec::with_capacity(size);
        let mut length = Vec::with_capacity(size);
        let mut queue = VecDeque::from([0u32]);
        order[0] = 0;
        bfs.push(0u32);
        parent.push(0u32);
        last.push(0usize);
        length.push(0u32);
        while let Some(old) = queue.pop_front() {
            let w = order[old as usize];
            for s in 0..n {
                let nb = raw[old as usize][s];
                if order[nb as usize] == u32::MAX {
                    order[nb as usize] = bfs.len() as u32;
                    bfs.push(nb);
                    parent.push(w);
                    last.push(s);
                    length.push(length[w as usize] + 1);
                    queue.push_back(nb);
                }
            }
        }
        debug_assert_eq!(bfs.len(), size);

        let mut right = vec![0u32; size * n];
        for (w, &old) in bfs.iter().enumerate() {
            for s in 0..n {
                right[w * n + s] = order[raw[old as usize][s] as usize];
            }
        }
        let mut left = vec![0u32; size * n];
        let mut inverse = vec![0u32; size];
        for w in 0..size {
            if w == 0 {
                for s in 0..n {
                    left[s] = right[s];
                }
                continue;
            }
            let (p, t) = (parent[w] as usize, last[w]);
            for s in 0..n {
                let sp = left[p * n + s] as usize;
                left[w * n + s] = right[sp * n + t];
            }
            // w = p t  =>  w^-1 = t p^-1
            inverse[w] = left[inverse[p] as usize * n + t];
        }
        let longest = Elem((size - 1) as u32);
        Ok(CoxeterSystem {
            matrix,
            spec,
            rank: n,
            left,
            right,
            length,
            inverse,
            longest,
        })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn label(&self) -> String {
        self.spec.label()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.length.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size() as u32).map(Elem)
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn longest(&self) -> Elem {
        self.longest
    }

    pub fn all_gens(&self) -> GenSet {
        GenSet::full(self.rank)
    }

    pub fn check_gen(&self, s: usize) -> Result<()> {
        if s < self.rank {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange {
                index: s + 1,
                rank: self.rank,
            })
        }
    }

    pub fn check_subset(&self, set: GenSet) -> Result<()> {
        match set.max_index() {
            Some(i) if i >= self.rank => self.check_gen(i),
            _ => Ok(()),
        }
    }

    pub fn gen(&self, s: usize) -> Elem {
        Elem(self.right[s])
    }

    /// `s · w`
    pub fn lmul(&self, s: usize, w: Elem) -> Elem {
        Elem(self.left[w.index() * self.rank + s])
    }

    /// `w · s`
    pub fn rmul(&self, w: Elem, s: usize) -> Elem {
        Elem(self.right[w.index() * self.rank + s])
    }

    pub fn length(&self, w: Elem) -> usize {
        self.length[w.index()] as usize
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        Elem(self.inverse[w.index()])
    }

    pub fn mul(&self, u: Elem, v: Elem) -> Elem {
        let mut acc = u;
        for s in self.reduced_word(v) {
            acc = self.rmul(acc, s);
        }
        acc
    }

    pub fn word_to_elem(&self, word: &[usize]) -> Elem {
        word.iter().fold(Elem::IDENTITY, |w, &s| self.rmul(w, s))
    }

    pub fn is_left_descent(&self, s: usize, w: Elem) -> bool {
        self.length(self.lmul(s, w)) < self.length(w)
    }

    pub fn is_right_descent(&self, w: Elem, s: usize) -> bool {
        self.length(self.rmul(w, s)) < self.length(w)
    }

    pub fn left_ascents(&self, w: Elem) -> GenSet {
        GenSet::from_indices((0..self.rank).filter(|&s| !self.is_left_descent(s, w)))
    }

    pub fn right_ascents(&self, w: Elem) -> GenSet {
        GenSet::from_indices((0..self.rank).filter(|&s| !self.is_right_descent(w, s)))
    }

    pub fn ascent_sets(&self, w: Elem) -> (GenSet, GenSet) {
        (self.left_ascents(w), self.right_ascents(w))
    }

    /// Greedy reduced word: repeatedly strip the smallest-index left descent.
    /// Generators are 0-based.
    pub fn reduced_word(&self, w: Elem) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(w));
        let mut cur = w;
        while cur != Elem::IDENTITY {
            let s = (0..self.rank)
                .find(|&s| self.is_left_descent(s, cur))
                .expect("non-identity element has a left descent");
            word.push(s);
            cur = self.lmul(s, cur);
        }
        word
    }

    /// Is `w` in the parabolic subgroup `W_I`?
    pub fn in_parabolic(&self, w: Elem, set: GenSet) -> bool {
        self.reduced_word(w).iter().all(|&s| set.contains(s))
    }

    /// Elements of `W_I`, sorted.
    pub fn parabolic_elements(&self, set: GenSet) -> Vec<Elem> {
        let mut seen = vec![false; self.size()];
        let mut out = vec![Elem::IDENTITY];
        seen[0] = true;
        let mut i = 0;
        while i < out.len() {
            let w = out[i];
            i += 1;
            for s in set.iter() {
                let v = self.rmul(w, s);
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    out.push(v);
                }
            }
        }
        out.sort();
        out
    }

    /// Longest element of `W_I`.
    pub fn parabolic_longest(&self, set: GenSet) -> Elem {
        let mut w = Elem::IDENTITY;
        while let Some(s) = set.iter().find(|&s| !self.is_right_descent(w, s)) {
            w = self.rmul(w, s);
        }
        w
    }

    /// `W^I` (side = Left) or `^I W` (side = Right), sorted by (length, index).
    pub fn min_coset_reps(&self, set: GenSet, side: Side) -> Vec<Elem> {
        self.elements()
            .filter(|&w| match side {
                Side::Left => set.is_subset(self.right_ascents(w)),
                Side::Right => set.is_subset(self.left_ascents(w)),
            })
            .collect()
    }

    /// `^J W^I`, sorted by (length, index).
    pub fn double_coset_reps(&self, j: GenSet, i: GenSet) -> Vec<Elem> {
        self.elements()
            .filter(|&w| j.is_subset(self.left_ascents(w)) && i.is_subset(self.right_ascents(w)))
            .collect()
    }

    pub fn is_min_left_rep(&self, w: Elem, set: GenSet) -> bool {
        set.iter().all(|s| !self.is_right_descent(w, s))
    }

    pub fn is_double_min(&self, w: Elem, j: GenSet, i: GenSet) -> bool {
        j.iter().all(|s| !self.is_left_descent(s, w)) && self.is_min_left_rep(w, i)
    }

    /// `w = x y` with `x ∈ W^I`, `y ∈ W_I`, lengths adding.
    pub fn parabolic_factorize(&self, w: Elem, set: GenSet) -> (Elem, Elem) {
        let mut x = w;
        let mut y_rev = Vec::new();
        while let Some(s) = set.iter().find(|&s| self.is_right_descent(x, s)) {
            x = self.rmul(x, s);
            y_rev.push(s);
        }
        let y = y_rev.iter().rev().fold(Elem::IDENTITY, |acc, &s| self.rmul(acc, s));
        (x, y)
    }

    /// `w = y x` with `y ∈ W_J`, `x ∈ ^J W`, lengths adding.
    pub fn parabolic_factorize_right(&self, w: Elem, set: GenSet) -> (Elem, Elem) {
        let mut x = w;
        let mut y = Elem::IDENTITY;
        while let Some(s) = set.iter().find(|&s| self.is_left_descent(s, x)) {
            x = self.lmul(s, x);
            y = self.rmul(y, s);
        }
        (y, x)
    }

    /// `w = u τ v` with `τ ∈ ^J W^I`, `u ∈ W_J^{K(τ)}`, `v ∈ W_I`.
    pub fn triple_factorize(&self, w: Elem, j: GenSet, i: GenSet) -> (Elem, Elem, Elem) {
        let (x, y) = self.parabolic_factorize(w, i);
        let (u0, tau) = self.parabolic_factorize_right(x, j);
        // u0 is already minimal modulo W_K when x ∈ W^I, but fold any
        // remainder through τ to stay correct by construction.
        let (k, _, pairing) = self.cross_section_unchecked(tau, j, i);
        let (u, kpart) = self.parabolic_factorize(u0, k);
        let mut v = y;
        for s in self.reduced_word(kpart).iter().rev() {
            let (_, t) = pairing.iter().find(|(a, _)| a == s).expect("kpart lies in W_K");
            v = self.lmul(*t, v);
        }
        (u, tau, v)
    }

    /// `K = J ∩ τIτ⁻¹` and `K' = τ⁻¹Kτ` with the pairing `k ↦ τ⁻¹kτ` (0-based).
    pub fn cross_section(&self, tau: Elem, j: GenSet, i: GenSet) -> Result<(GenSet, GenSet, Vec<(usize, usize)>)> {
        if !self.is_double_min(tau, j, i) {
            return Err(Error::NotDoubleCosetMinimal(self.format_elem(tau)));
        }
        Ok(self.cross_section_unchecked(tau, j, i))
    }

    fn cross_section_unchecked(&self, tau: Elem, j: GenSet, i: GenSet) -> (GenSet, GenSet, Vec<(usize, usize)>) {
        let tinv = self.inverse(tau);
        let mut k = GenSet::empty();
        let mut kp = GenSet::empty();
        let mut pairing = Vec::new();
        for s in j.iter() {
            let conj = self.mul(self.mul(tinv, self.gen(s)), tau);
            if let Some(t) = i.iter().find(|&t| self.gen(t) == conj) {
                k.insert(s);
                kp.insert(t);
                pairing.push((s, t));
            }
        }
        (k, kp, pairing)
    }

    /// Renders `w` as its greedy reduced word, e.g. `s1*s2*s1`, or `e`.
    pub fn format_elem(&self, w: Elem) -> String {
        format_word(&self.reduced_word(w))
    }

    /// Parses `e`, a word such as `s1*s2*s1` (not necessarily reduced), or in
    /// type A a one-line permutation such as `[2,3,1]`.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        if t.starts_with('[') {
            let perm = super::type_a::parse_one_line(t)?;
            return super::type_a::from_one_line(self, &perm);
        }
        let word = parse_word(t)?;
        for &s in &word {
            self.check_gen(s)?;
        }
        Ok(self.word_to_elem(&word))
    }
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        let parts: Vec<String> = word.iter().map(|s| format!("s{}", s + 1)).collect();
        parts.join("*")
    }
}

/// Parses `e` or `s1*s2*...` into 0-based generator indices.
pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    let t = text.trim();
    if t == "e" || t == "1" || t.is_empty() {
        return Ok(Vec::new());
    }
    t.split('*')
        .map(|part| {
            let p = part.trim();
            let num = p
                .strip_prefix('s')
                .ok_or_else(|| Error::Parse(format!("expected generator like `s1`, got `{p}`")))?;
            let i: usize = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index in `{p}`")))?;
            if i == 0 {
                return Err(Error::Parse("generators are numbered from 1".into()));
            }
            Ok(i - 1)
        })
        .collect()
}

#[cfg(test)]
impl CoxeterSystem {
    fn lengths_max(&self) -> usize {
        self.length.iter().copied().max().unwrap_or(0) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> CoxeterSystem {
        CoxeterSystem::named("A3").unwrap()
    }

    #[test]
    fn group_orders() {
        for (name, order) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("A4", 120),
            ("B3", 48),
            ("B4", 384),
            ("D4", 192),
            ("F4", 1152),
            ("G2", 12),
            ("H3", 120),
            ("I2(7)", 14),
            ("E6", 51840),
        ] {
            let sys = CoxeterSystem::named(name).unwrap();
            assert_eq!(sys.size(), order, "{name}");
            assert_eq!(sys.length(sys.longest()), sys.lengths_max(), "{name}");
        }
    }

    #[test]
    fn rank_zero_is_trivial() {
        let sys = CoxeterSystem::symmetric(1);
        assert_eq!(sys.size(), 1);
        assert_eq!(sys.format_elem(sys.longest()), "e");
    }

    #[test]
    fn affine_input_hits_cap() {
        let m = CoxeterMatrix::new(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]).unwrap();
        assert_eq!(
            CoxeterSystem::enumerate(m, 5000).unwrap_err(),
            Error::GroupTooLarge { cap: 5000 }
        );
    }

    #[test]
    fn table_invariants() {
        for name in ["A3", "B3", "H3", "I2(5)"] {
            let sys = CoxeterSystem::named(name).unwrap();
            for s in 0..sys.rank() {
                let mut seen_l = vec![false; sys.size()];
                let mut seen_r = vec![false; sys.size()];
                for w in sys.elements() {
                    seen_l[sys.lmul(s, w).index()] = true;
                    seen_r[sys.rmul(w, s).index()] = true;
                    assert_eq!(sys.length(sys.lmul(s, w)).abs_diff(sys.length(w)), 1);
                    assert_eq!(sys.length(sys.rmul(w, s)).abs_diff(sys.length(w)), 1);
                }
                assert!(seen_l.iter().all(|&b| b) && seen_r.iter().all(|&b| b));
            }
            let top = sys.lengths_max();
            assert_eq!(sys.elements().filter(|&w| sys.length(w) == top).count(), 1);
            for w in sys.elements() {
                assert_eq!(sys.mul(w, sys.inverse(w)), Elem::IDENTITY);
                let word = sys.reduced_word(w);
                assert_eq!(word.len(), sys.length(w));
                assert_eq!(sys.word_to_elem(&word), w);
            }
        }
    }

    #[test]
    fn reduced_words_and_formatting() {
        let s3 = CoxeterSystem::named("A2").unwrap();
        assert_eq!(s3.reduced_word(Elem::IDENTITY), Vec::<usize>::new());
        assert_eq!(s3.reduced_word(s3.gen(0)), vec![0]);
        assert_eq!(s3.reduced_word(s3.longest()), vec![0, 1, 0]);
        assert_eq!(s3.format_elem(s3.longest()), "s1*s2*s1");
        assert_eq!(s3.parse_elem("s2*s1*s2").unwrap(), s3.longest());
        assert_eq!(s3.parse_elem("s1*s1").unwrap(), Elem::IDENTITY);
        assert!(s3.parse_elem("s3").is_err());
        assert!(s3.parse_elem("x1").is_err());
    }

    #[test]
    fn ascents() {
        let sys = s4();
        let s3 = sys.gen(2);
        let (l, r) = sys.ascent_sets(s3);
        assert!(GenSet::from_labels(&[1, 2]).is_subset(l));
        assert!(GenSet::from_labels(&[1, 2]).is_subset(r));
        assert_eq!(sys.ascent_sets(Elem::IDENTITY), (sys.all_gens(), sys.all_gens()));
        assert_eq!(sys.ascent_sets(sys.longest()), (GenSet::empty(), GenSet::empty()));
    }

    #[test]
    fn coset_reps() {
        let s3 = CoxeterSystem::named("A2").unwrap();
        let i = GenSet::from_labels(&[1]);
        let reps = s3.min_coset_reps(i, Side::Left);
        let expected: Vec<Elem> = ["e", "s2", "s1*s2"].iter().map(|w| s3.parse_elem(w).unwrap()).collect();
        assert_eq!(reps, expected);
        assert_eq!(s3.min_coset_reps(s3.all_gens(), Side::Left), vec![Elem::IDENTITY]);
        assert_eq!(s3.min_coset_reps(GenSet::empty(), Side::Right).len(), 6);

        let sys = s4();
        let j = GenSet::from_labels(&[1, 2]);
        let reps = sys.double_coset_reps(j, j);
        assert_eq!(reps, vec![Elem::IDENTITY, sys.gen(2)]);
        assert_eq!(
            sys.double_coset_reps(sys.all_gens(), sys.all_gens()),
            vec![Elem::IDENTITY]
        );
        assert_eq!(sys.double_coset_reps(GenSet::empty(), GenSet::empty()).len(), 24);
    }

    #[test]
    fn factorizations() {
        let s3 = CoxeterSystem::named("A2").unwrap();
        let i = GenSet::from_labels(&[1]);
        let p = |w: &str| s3.parse_elem(w).unwrap();
        assert_eq!(s3.parabolic_factorize(p("s2*s1"), i), (p("s2"), p("s1")));
        assert_eq!(s3.parabolic_factorize(p("e"), i), (p("e"), p("e")));
        assert_eq!(s3.parabolic_factorize(s3.longest(), i), (p("s1*s2"), p("s1")));

        let sys = s4();
        let j = GenSet::from_labels(&[1, 2]);
        let q = |w: &str| sys.parse_elem(w).unwrap();
        assert_eq!(sys.triple_factorize(q("s3"), j, j), (q("e"), q("s3"), q("e")));
        assert_eq!(sys.triple_factorize(q("e"), j, j), (q("e"), q("e"), q("e")));
        assert_eq!(sys.triple_factorize(q("s3*s1"), j, j), (q("e"), q("s3"), q("s1")));
    }

    #[test]
    fn cross_sections() {
        let sys = s4();
        let j = GenSet::from_labels(&[1, 2]);
        let (k, kp, pairing) = sys.cross_section(sys.gen(2), j, j).unwrap();
        assert_eq!(k, GenSet::from_labels(&[1]));
        assert_eq!(kp, GenSet::from_labels(&[1]));
        assert_eq!(pairing, vec![(0, 0)]);
        let (k, kp, pairing) = sys
            .cross_section(Elem::IDENTITY, j, GenSet::from_labels(&[2, 3]))
            .unwrap();
        assert_eq!(k, GenSet::from_labels(&[2]));
        assert_eq!(kp, k);
        assert_eq!(pairing, vec![(1, 1)]);
        assert!(matches!(
            sys.cross_section(sys.gen(0), j, j),
            Err(Error::NotDoubleCosetMinimal(_))
        ));
        let s2 = CoxeterSystem::named("A1").unwrap();
        let (k, kp, _) = s2.cross_section(s2.gen(0), GenSet::empty(), GenSet::empty()).unwrap();
        assert!(k.is_empty() && kp.is_empty());
    }
}
