//! Polynomials over prime fields, factorization of cyclotomic polynomials mod p,
//! finite-field elements and residues of cyclotomic numbers at prime ideals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cyclo::CycNum;
use super::poly::cyclotomic_poly;
use crate::error::{Error, Result};

/// Seed used for equal-degree splitting unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed_2100;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of p modulo n (gcd(p, n) = 1, n ≥ 1).
pub fn mult_order(p: u64, n: u64) -> u32 {
    if n == 1 {
        return 1;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = x * (p % n) % n;
        k += 1;
    }
    k
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(p as i128) as u64
}

/// Polynomial over F_p with coefficients low to high and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        let mut f = FpPoly {
            p,
            c: c.into_iter().map(|x| x % p).collect(),
        };
        f.trim();
        f
    }

    pub fn from_bigints(p: u64, c: &[BigInt]) -> Self {
        let bp = BigInt::from(p);
        Self::new(
            p,
            c.iter()
                .map(|x| x.mod_floor(&bp).to_u64().expect("reduced mod p"))
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + p - o.c.get(i).unwrap_or(&0)) % p)
            .collect();
        FpPoly::new(p, c)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, acc.into_iter().map(|x| x as u64).collect())
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        let p = self.p as u128;
        FpPoly::new(
            self.p,
            self.c
                .iter()
                .map(|&a| (a as u128 * k as u128 % p) as u64)
                .collect(),
        )
    }

    pub fn monic(&self) -> FpPoly {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => self.scale(inv_mod(l, self.p)),
        }
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let li = inv_mod(d.c[dd], p) as u128;
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = (r[k + dd] as u128 * li % p as u128) as u64;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                let t = (c as u128 * dj as u128 % p as u128) as u64;
                r[k + j] = (r[k + j] + p - t) % p;
            }
            q[k] = c;
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mulmod(&self, o: &FpPoly, m: &FpPoly) -> FpPoly {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        self.c
            .iter()
            .rev()
            .fold(0u128, |acc, &a| (acc * x as u128 + a as u128) % p) as u64
    }
}

/// Irreducibility test: f has no factor of degree e for e ≤ deg/2.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    let p = BigUint::from(f.p);
    let x = FpPoly::x(f.p);
    let mut xp = x.clone();
    for _ in 1..=d / 2 {
        xp = xp.powmod(&p, f);
        if !f.gcd(&xp.sub(&x)).is_one() {
            return false;
        }
    }
    true
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, deg_below: usize) -> FpPoly {
    FpPoly::new(p, (0..deg_below).map(|_| rng.gen_range(0..p)).collect())
}

/// Splits a squarefree product of irreducible factors of common degree d.
fn equal_degree_split(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    loop {
        let a = random_poly(rng, p, n);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + … + a^{2^{d−1}}
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mulmod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            a.powmod(&e, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.divrem(&g).0;
            equal_degree_split(&g, d, rng, out);
            equal_degree_split(&h, d, rng, out);
            return;
        }
    }
}

/// Complete factorization of Φ_n mod p into monic irreducibles, sorted by coefficient
/// sequence (low to high).
pub fn factor_cyclotomic_mod_p(n: u32, p: u64, seed: u64) -> Result<Vec<FpPoly>> {
    if n == 0 {
        return Err(Error::ZeroConductor);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime { p });
    }
    if (n as u64).is_multiple_of(p) {
        return Err(Error::PrimeDividesConductor { p, n });
    }
    let mut f = FpPoly::from_bigints(p, &cyclotomic_poly(n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = FpPoly::x(p);
    let bp = BigUint::from(p);
    let mut xp = x.clone();
    let mut out = Vec::new();
    let mut i = 0;
    while f.degree().unwrap_or(0) > 0 {
        i += 1;
        if 2 * i > f.degree().unwrap() {
            let d = f.degree().unwrap();
            out.push(f.monic());
            debug_assert!(d > 0);
            break;
        }
        xp = xp.powmod(&bp, &f);
        let g = f.gcd(&xp.sub(&x));
        if g.degree().unwrap_or(0) > 0 {
            equal_degree_split(&g, i, &mut rng, &mut out);
            f = f.divrem(&g).0;
            xp = xp.rem(&f);
        }
    }
    out.sort_by(|a, b| a.c.cmp(&b.c));
    Ok(out)
}

/// An element of F_p[x]/(modulus), with the modulus irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FqElem {
    pub p: u64,
    #[serde(rename = "mod")]
    pub modulus: Vec<u64>,
    #[serde(rename = "c")]
    pub coeffs: Vec<u64>,
}

impl FqElem {
    fn from_poly(modulus: &FpPoly, v: FpPoly) -> Self {
        let d = modulus.c.len() - 1;
        let mut coeffs = v.c;
        coeffs.resize(d, 0);
        FqElem {
            p: modulus.p,
            modulus: modulus.c.clone(),
            coeffs,
        }
    }

    fn poly(&self) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.clone())
    }

    fn modpoly(&self) -> FpPoly {
        FpPoly::new(self.p, self.modulus.clone())
    }

    pub fn from_u64(modulus: &FpPoly, k: u64) -> Self {
        Self::from_poly(modulus, FpPoly::new(modulus.p, vec![k]))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first() == Some(&1) && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &FqElem) -> FqElem {
        Self::from_poly(&self.modpoly(), self.poly().add(&o.poly()))
    }

    pub fn sub(&self, o: &FqElem) -> FqElem {
        Self::from_poly(&self.modpoly(), self.poly().sub(&o.poly()))
    }

    pub fn mul(&self, o: &FqElem) -> FqElem {
        let m = self.modpoly();
        Self::from_poly(&m, self.poly().mulmod(&o.poly(), &m))
    }

    pub fn pow(&self, e: &BigUint) -> FqElem {
        let m = self.modpoly();
        Self::from_poly(&m, self.poly().powmod(e, &m))
    }
}

/// A prime ideal of Z[ζ_n] above p, realized by a monic irreducible factor of Φ_n mod p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub n: u32,
    pub p: u64,
    pub factor: FpPoly,
}

impl PrimeIdeal {
    /// Validates that `factor` is monic, irreducible and divides Φ_n mod p.
    pub fn new(n: u32, p: u64, factor: FpPoly) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        if (n as u64).is_multiple_of(p) {
            return Err(Error::PrimeDividesConductor { p, n });
        }
        let cyc = FpPoly::from_bigints(p, &cyclotomic_poly(n));
        let monic = factor.c.last() == Some(&1);
        if !monic || !cyc.rem(&factor).is_zero() || !is_irreducible(&factor) {
            return Err(Error::BadFactor { p });
        }
        Ok(PrimeIdeal { n, p, factor })
    }

    /// All prime ideals above p, in canonical order.
    pub fn all_above(n: u32, p: u64, seed: u64) -> Result<Vec<PrimeIdeal>> {
        Ok(factor_cyclotomic_mod_p(n, p, seed)?
            .into_iter()
            .map(|factor| PrimeIdeal { n, p, factor })
            .collect())
    }

    pub fn residue_degree(&self) -> usize {
        self.factor.degree().unwrap_or(0)
    }
}

/// Reduction of a cyclotomic number at a prime ideal: ζ_n ↦ x mod factor.
pub fn residue(a: &CycNum, ideal: &PrimeIdeal) -> Result<FqElem> {
    let a = if a.conductor() == ideal.n {
        a.clone()
    } else {
        a.embed(ideal.n)?
    };
    let p = ideal.p;
    let bp = BigInt::from(p);
    let den = a.denominator().mod_floor(&bp).to_u64().expect("reduced");
    if den == 0 {
        return Err(Error::NotIntegral { p });
    }
    let num = FpPoly::from_bigints(p, a.numerators());
    let v = num.rem(&ideal.factor).scale(inv_mod(den, p));
    Ok(FqElem::from_poly(&ideal.factor, v))
}
