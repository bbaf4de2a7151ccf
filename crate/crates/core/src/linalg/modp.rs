//! Arithmetic modulo word-sized primes, Chinese remaindering, and rational
//! reconstruction.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::scalars::Rat;

use super::RatMatrix;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'outer: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62 in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut next = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(next) {
            next -= 2;
        }
        let p = next;
        next -= 2;
        Some(p)
    })
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.iter_u64_digits().next().unwrap_or(0)
}

/// Image of a rational in `𝔽_p`, or `None` if `p` divides the denominator.
pub fn rat_mod(x: &Rat, p: u64) -> Option<u64> {
    let d = bigint_mod(x.denom(), p);
    let n = bigint_mod(x.numer(), p);
    inv_mod(d, p).map(|di| mul_mod(n, di, p))
}

/// Dense row-major matrix over `𝔽_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        ModMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Reduction of a rational matrix, or `None` if `p` divides a denominator.
    pub fn from_rat(m: &RatMatrix, p: u64) -> Option<Self> {
        let data = m.entries().iter().map(|x| rat_mod(x, p)).collect::<Option<Vec<_>>>()?;
        Some(ModMatrix {
            p,
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p;
        let mut out = ModMatrix::zeros(p, self.rows, other.cols);
        let mut acc = vec![0u128; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (a, &y) in acc.iter_mut().zip(row) {
                    if y != 0 {
                        *a = (*a + x as u128 * y as u128) % p as u128;
                    }
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = *a as u64;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u128;
                for (k, &y) in v.iter().enumerate() {
                    let x = self.get(i, k);
                    if x != 0 && y != 0 {
                        acc = (acc + x as u128 * y as u128) % p as u128;
                    }
                }
                acc as u64
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(piv, r);
            let inv = inv_mod(self.get(r, c), p).expect("nonzero pivot");
            for j in c..self.cols {
                let v = mul_mod(self.get(r, j), inv, p);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let y = self.get(r, j);
                    if y != 0 {
                        let v = sub_mod(self.get(i, j), mul_mod(f, y, p), p);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let p = self.p;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if piv != c {
                m.swap_rows(piv, c);
                det = sub_mod(0, det, p);
            }
            let d = m.get(c, c);
            det = mul_mod(det, d, p);
            let inv = inv_mod(d, p).expect("nonzero pivot");
            for i in c + 1..n {
                let f = mul_mod(m.get(i, c), inv, p);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    let y = m.get(c, j);
                    if y != 0 {
                        let v = sub_mod(m.get(i, j), mul_mod(f, y, p), p);
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<ModMatrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = ModMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = ModMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }
}

/// Incremental Chinese remaindering of many residues at once.
#[derive(Clone, Debug)]
pub struct Crt {
    pub modulus: BigInt,
    pub values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn absorb(&mut self, residues: &[u64], p: u64) {
        assert_eq!(residues.len(), self.values.len());
        let pb = BigInt::from(p);
        let m_mod_p = bigint_mod(&self.modulus, p);
        let inv = inv_mod(m_mod_p, p).expect("moduli are coprime");
        for (v, &r) in self.values.iter_mut().zip(residues) {
            // v' = v + M·((r − v)·M⁻¹ mod p)
            let vp = bigint_mod(v, p);
            let t = mul_mod(sub_mod(r, vp, p), inv, p);
            if t != 0 {
                *v += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= pb;
    }

    /// Rational reconstruction of every value; `None` if any fails.
    pub fn reconstruct(&self) -> Option<Vec<Rat>> {
        let bound = (&self.modulus / BigInt::from(2)).sqrt();
        self.values
            .iter()
            .map(|v| rational_reconstruct(v, &self.modulus, &bound))
            .collect()
    }
}

/// Finds `n/d ≡ v (mod m)` with `|n|, d ≤ bound`, via the extended Euclidean
/// algorithm.
pub fn rational_reconstruct(v: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rat> {
    let (mut r0, mut r1) = (m.clone(), v.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.iter().all(|&p| is_prime(p) && p < 1 << 62));
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(!is_prime(561));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn crt_reconstructs_rationals() {
        let targets = [Rat::new(-7, 3), Rat::new(123456789, 1024), Rat::zero()];
        let mut crt = Crt::new(targets.len());
        for p in primes().take(3) {
            let r: Vec<u64> = targets.iter().map(|x| rat_mod(x, p).unwrap()).collect();
            crt.absorb(&r, p);
        }
        assert_eq!(crt.reconstruct().unwrap(), targets.to_vec());
    }

    #[test]
    fn det_and_inverse() {
        let p = primes().next().unwrap();
        let m = ModMatrix::from_rat(&RatMatrix::from_i64(&[&[2, 1], &[1, 1]]), p).unwrap();
        assert_eq!(m.det(), 1);
        assert_eq!(m.mul(&m.inverse().unwrap()), ModMatrix::identity(p, 2));
    }
}
