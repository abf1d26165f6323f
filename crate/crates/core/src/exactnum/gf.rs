//! Table-driven arithmetic in a small finite field F_p[x]/(f).
//!
//! Elements are encoded as integers Σ c_i p^i; multiplication goes through discrete
//! logarithm tables for a primitive element.

use super::fp::{is_irreducible, FpPoly, FqElem};
use crate::error::{Error, Result};

/// Largest field size for which tables are built.
pub const MAX_TABLE_SIZE: u64 = 1 << 25;

#[derive(Clone, Debug)]
pub struct GfTables {
    p: u32,
    d: usize,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GfTables {
    /// Tables for F_p[x]/(f) with f monic irreducible.
    pub fn new(f: &FpPoly) -> Result<Self> {
        let p = f.p;
        let d = f.degree().ok_or(Error::BadFactor { p })?;
        if d == 0 || f.c[d] != 1 || !is_irreducible(f) {
            return Err(Error::BadFactor { p });
        }
        let q = (p as u128).pow(d as u32);
        if q > MAX_TABLE_SIZE as u128 {
            return Err(Error::BoundExceeded(MAX_TABLE_SIZE as usize));
        }
        let mut t = GfTables {
            p: p as u32,
            d,
            q: q as u32,
            modulus: f.c.iter().map(|&c| c as u32).collect(),
            exp: vec![],
            log: vec![],
        };
        t.build();
        Ok(t)
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = vec![0; self.d];
        for c in out.iter_mut() {
            *c = a % self.p;
            a /= self.p;
        }
        out
    }

    fn undigits(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    /// Product of polynomials mod f, on digit vectors.
    fn poly_mulmod(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let (p, d) = (self.p as u64, self.d);
        let mut prod = vec![0u64; 2 * d];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (d..2 * d).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus[..d].iter().enumerate() {
                prod[k - d + i] = (prod[k - d + i] + (p - c) * m as u64) % p;
            }
            prod[k] = 0;
        }
        prod[..d].iter().map(|&x| x as u32).collect()
    }

    fn build(&mut self) {
        let n = self.q - 1;
        let factors = prime_factors(n as u64);
        let one = {
            let mut v = vec![0; self.d];
            v[0] = 1;
            v
        };
        for cand in 2..self.q {
            let g = self.digits(cand);
            let mut exp = Vec::with_capacity(n as usize);
            let mut cur = one.clone();
            let mut ok = true;
            for i in 0..n {
                if i > 0 && cur == one {
                    ok = false;
                    break;
                }
                exp.push(self.undigits(&cur));
                cur = self.poly_mulmod(&cur, &g);
            }
            if !ok || cur != one {
                continue;
            }
            debug_assert!(factors.iter().all(|&l| exp[(n as u64 / l) as usize] != 1));
            let mut log = vec![u32::MAX; self.q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            self.exp = exp;
            self.log = log;
            return;
        }
        unreachable!("finite fields have primitive elements");
    }

    pub fn encode(&self, a: &FqElem) -> u32 {
        let c: Vec<u32> = (0..self.d)
            .map(|i| a.coeffs.get(i).copied().unwrap_or(0) as u32)
            .collect();
        self.undigits(&c)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.d {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.d {
            let c = a % self.p;
            out += ((self.p - c) % self.p) * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % n as u64) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A 2×2 matrix over a table field, entries row-major.
pub type Mat2 = [u32; 4];

impl GfTables {
    pub fn mat_mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        let m = |x, y| self.mul(x, y);
        [
            self.add(m(a[0], b[0]), m(a[1], b[2])),
            self.add(m(a[0], b[1]), m(a[1], b[3])),
            self.add(m(a[2], b[0]), m(a[3], b[2])),
            self.add(m(a[2], b[1]), m(a[3], b[3])),
        ]
    }

    /// The scalar multiple whose first nonzero entry is 1.
    pub fn projective_normal(&self, a: &Mat2) -> Mat2 {
        let lead = a
            .iter()
            .copied()
            .find(|&x| x != 0)
            .expect("invertible matrix");
        let s = self.inv(lead);
        [
            self.mul(a[0], s),
            self.mul(a[1], s),
            self.mul(a[2], s),
            self.mul(a[3], s),
        ]
    }
}

/// Order of the image in PGL₂ of the group generated by the matrices, or None once
/// more than `bound` elements appear.
pub fn projective_closure_order(f: &GfTables, gens: &[Mat2], bound: usize) -> Option<usize> {
    use std::collections::HashSet;
    let gens: Vec<Mat2> = gens.iter().map(|g| f.projective_normal(g)).collect();
    let id: Mat2 = [1, 0, 0, 1];
    let mut seen: HashSet<Mat2> = HashSet::from([id]);
    let mut queue = vec![id];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for g in &gens {
            let y = f.projective_normal(&f.mat_mul(&x, g));
            if seen.insert(y) {
                if seen.len() > bound {
                    return None;
                }
                queue.push(y);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f49_tables() {
        // x² + 1 is irreducible mod 7
        let f = GfTables::new(&FpPoly::new(7, vec![1, 0, 1])).unwrap();
        assert_eq!(f.size(), 49);
        for a in 1..49 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
        // x·x = −1
        assert_eq!(f.mul(7, 7), 6);
    }

    #[test]
    fn psl2_of_prime_field() {
        // [[1,1],[0,1]] and [[0,-1],[1,0]] generate SL₂(F_5); image of order 60
        let f = GfTables::new(&FpPoly::new(5, vec![0, 1])).unwrap();
        let a = [1, 1, 0, 1];
        let b = [0, 4, 1, 0];
        assert_eq!(projective_closure_order(&f, &[a, b], 1000), Some(60));
    }
}
