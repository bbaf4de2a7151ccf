//! One-line notation for type A, with the convention `(uv)(x) = u(v(x))`:
//! right multiplication by `s_i` swaps positions `i` and `i+1`.

use super::system::{CoxeterSystem, Elem, GenSet, Side};
use crate::error::{Error, Result};

fn require_type_a(sys: &CoxeterSystem) -> Result<()> {
    if sys.matrix().is_type_a() {
        Ok(())
    } else {
        Err(Error::NotTypeA(sys.label()))
    }
}

/// One-line notation `[w(1), ..., w(n+1)]` of an element of `S_{n+1}`.
pub fn one_line(sys: &CoxeterSystem, w: Elem) -> Result<Vec<usize>> {
    require_type_a(sys)?;
    let mut perm: Vec<usize> = (1..=sys.rank() + 1).collect();
    for s in sys.reduced_word(w) {
        perm.swap(s, s + 1);
    }
    Ok(perm)
}

pub fn from_one_line(sys: &CoxeterSystem, perm: &[usize]) -> Result<Elem> {
    require_type_a(sys)?;
    let n = sys.rank() + 1;
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if perm.len() != n || sorted != (1..=n).collect::<Vec<_>>() {
        return Err(Error::Parse(format!("{perm:?} is not a permutation of 1..{n}")));
    }
    // Bubble-sort by right descents: perm · s_{r1} ⋯ s_{rk} = id.
    let mut p = perm.to_vec();
    let mut letters = Vec::new();
    while let Some(i) = (0..n - 1).find(|&i| p[i] > p[i + 1]) {
        p.swap(i, i + 1);
        letters.push(i);
    }
    Ok(letters.iter().rev().fold(Elem::IDENTITY, |w, &s| sys.rmul(w, s)))
}

pub fn format_one_line(perm: &[usize]) -> String {
    let parts: Vec<String> = perm.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn parse_one_line(text: &str) -> Result<Vec<usize>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected one-line notation like [2,3,1], got `{text}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad entry `{x}` in `{text}`")))
        })
        .collect()
}

/// `Γ = W^I` for `I = S \ {s_m}` in `S_{m+n}`: permutations increasing on
/// the first `m` and the last `n` positions.
pub fn gamma(sys: &CoxeterSystem, m: usize) -> Result<Vec<Elem>> {
    require_type_a(sys)?;
    let i = young_subset(sys.rank() + 1, m);
    Ok(sys.min_coset_reps(i, Side::Left))
}

/// Generators of `S_m × S_n` inside `S_{m+n}`: everything except `s_m`.
pub fn young_subset(total: usize, m: usize) -> GenSet {
    let mut set = GenSet::full(total.saturating_sub(1));
    if m >= 1 && m < total {
        set.remove(m - 1);
    }
    set
}

/// The representative `w_t` in one-line notation:
/// `1..t | k+1..k+m-t | t+1..k | m+k-t+1..m+n`.
pub fn w_t(m: usize, n: usize, k: usize, t: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(m + n);
    out.extend(1..=t);
    out.extend(k + 1..=k + m - t);
    out.extend(t + 1..=k);
    out.extend(m + k - t + 1..=m + n);
    out
}

/// Admissible `t` with `0 ≤ t ≤ m` and `0 ≤ k - t ≤ n`, ascending.
pub fn t_range(m: usize, n: usize, k: usize) -> std::ops::RangeInclusive<usize> {
    k.saturating_sub(n)..=m.min(k)
}

pub fn w_family(m: usize, n: usize, k: usize) -> Vec<(usize, Vec<usize>)> {
    t_range(m, n, k).map(|t| (t, w_t(m, n, k, t))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_round_trip() {
        let sys = CoxeterSystem::symmetric(4);
        for w in sys.elements() {
            let p = one_line(&sys, w).unwrap();
            assert_eq!(from_one_line(&sys, &p).unwrap(), w);
        }
        let s1s2 = sys.parse_elem("s1*s2").unwrap();
        // positions: id -> swap(1,2) -> swap(2,3)
        assert_eq!(one_line(&sys, s1s2).unwrap(), vec![2, 3, 1, 4]);
        assert_eq!(sys.parse_elem("[2,3,1,4]").unwrap(), s1s2);
        assert!(from_one_line(&sys, &[1, 1, 2, 3]).is_err());
        assert!(one_line(&CoxeterSystem::named("B2").unwrap(), Elem::IDENTITY).is_err());
    }

    #[test]
    fn w_t_examples() {
        assert_eq!(
            w_family(2, 2, 2),
            vec![(0, vec![3, 4, 1, 2]), (1, vec![1, 3, 2, 4]), (2, vec![1, 2, 3, 4])]
        );
    }

    #[test]
    fn gamma_for_2_1() {
        let sys = CoxeterSystem::symmetric(3);
        let g: Vec<Vec<usize>> = gamma(&sys, 2)
            .unwrap()
            .iter()
            .map(|&w| one_line(&sys, w).unwrap())
            .collect();
        let mut sorted = g.clone();
        sorted.sort();
        assert_eq!(sorted, vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 3, 1]]);
    }

    #[test]
    fn w_family_matches_double_cosets() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3), (3, 3)] {
            let sys = CoxeterSystem::symmetric(m + n);
            for k in 1..m + n {
                let j = young_subset(m + n, k);
                let i = young_subset(m + n, m);
                let mut reps = sys.double_coset_reps(j, i);
                reps.sort();
                let mut fam: Vec<Elem> = w_family(m, n, k)
                    .iter()
                    .map(|(_, p)| from_one_line(&sys, p).unwrap())
                    .collect();
                fam.sort();
                assert_eq!(fam, reps, "(m,n,k)=({m},{n},{k})");
            }
        }
    }
}
