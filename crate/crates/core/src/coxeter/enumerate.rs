//! Coset enumeration over the trivial subgroup (HLT strategy with
//! coincidence processing). Every generator is an involution, so a single
//! column per generator serves for both `s` and `s^-1`.

use super::matrix::CoxeterMatrix;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

struct Table {
    ngens: usize,
    cells: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
}

impl Table {
    fn get(&self, c: u32, s: usize) -> u32 {
        self.cells[c as usize * self.ngens + s]
    }

    fn set(&mut self, c: u32, s: usize, d: u32) {
        self.cells[c as usize * self.ngens + s] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, s: usize) -> Result<()> {
        if self.live >= self.cap {
            return Err(Error::GroupTooLarge { cap: self.cap });
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.cells.extend(std::iter::repeat_n(NONE, self.ngens));
        self.live += 1;
        self.set(c, s, d);
        self.set(d, s, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32, queue: &mut Vec<u32>) {
        let (p, q) = (self.rep(k), self.rep(l));
        if p != q {
            let (lo, hi) = if p < q { (p, q) } else { (q, p) };
            self.parent[hi as usize] = lo;
            self.live -= 1;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for s in 0..self.ngens {
                let d = self.get(g, s);
                if d == NONE {
                    continue;
                }
                self.set(d, s, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_s = self.get(mu, s);
                let nu_s = self.get(nu, s);
                if mu_s != NONE {
                    self.merge(nu, mu_s, &mut queue);
                } else if nu_s != NONE {
                    self.merge(mu, nu_s, &mut queue);
                } else {
                    self.set(mu, s, nu);
                    self.set(nu, s, mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, word: &[usize]) -> Result<()> {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len();
        loop {
            while i < j && self.get(f, word[i]) != NONE {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.get(b, word[j - 1]) != NONE {
                b = self.get(b, word[j - 1]);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, word[i], f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// Right-action table of a finite Coxeter group, one row per element and one
/// column per generator. Row 0 is the identity; other rows are in arbitrary
/// order.
pub(crate) fn right_action_table(matrix: &CoxeterMatrix, cap: usize) -> Result<Vec<Vec<u32>>> {
    let n = matrix.rank();
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut relators: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = matrix.entry(i, j) as usize;
            relators.push((0..2 * m).map(|k| if k % 2 == 0 { i } else { j }).collect());
        }
    }
    let mut t = Table {
        ngens: n,
        cells: vec![NONE; n],
        parent: vec![0],
        live: 1,
        cap: cap.max(1),
    };
    let mut c = 0u32;
    while (c as usize) < t.parent.len() {
        if t.is_live(c) {
            for r in &relators {
                t.scan_and_fill(c, r)?;
                if !t.is_live(c) {
                    break;
                }
            }
            if t.is_live(c) {
                for s in 0..n {
                    if t.get(c, s) == NONE {
                        t.define(c, s)?;
                    }
                }
            }
        }
        c += 1;
    }

    let mut renumber = vec![NONE; t.parent.len()];
    let mut next = 0u32;
    for (old, slot) in renumber.iter_mut().enumerate() {
        if t.parent[old] == old as u32 {
            *slot = next;
            next += 1;
        }
    }
    let mut rows = Vec::with_capacity(next as usize);
    for old in 0..t.parent.len() {
        if renumber[old] == NONE {
            continue;
        }
        let row: Vec<u32> = (0..n)
            .map(|s| {
                let d = t.get(old as u32, s);
                debug_assert!(d != NONE);
                renumber[t.rep(d) as usize]
            })
            .collect();
        rows.push(row);
    }
    Ok(rows)
}
