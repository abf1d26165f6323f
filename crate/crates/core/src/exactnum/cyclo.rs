//! Elements of cyclotomic fields Q(ζ_n) in the power basis ζ_n^0, …, ζ_n^{φ(n)−1}.
//!
//! Values are stored with a common positive denominator: Σ num[i]·ζ_n^i / den with
//! gcd(num…, den) = 1. Every constructor and operation returns this canonical form,
//! so structural equality at one conductor is field equality.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{cyclotomic_poly, euler_phi, lcm_u32, RatPoly};
use super::Rat;
use crate::error::{Error, Result};

pub(crate) struct CycCtx {
    pub phi: usize,
    /// Φ_n, low to high, monic.
    pub cyclo: Vec<i64>,
}

fn ctx(n: u32) -> Arc<CycCtx> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().unwrap().get(&n) {
        return c.clone();
    }
    let cyclo: Vec<i64> = cyclotomic_poly(n)
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient fits in i64"))
        .collect();
    let c = Arc::new(CycCtx {
        phi: euler_phi(n),
        cyclo,
    });
    cache.write().unwrap().entry(n).or_insert(c).clone()
}

/// Reduce a polynomial (low to high) modulo Φ_n in place and truncate to φ(n) terms.
fn reduce_mod_cyclo(c: &CycCtx, poly: &mut Vec<BigInt>) {
    let phi = c.phi;
    for k in (phi..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let lead = std::mem::take(&mut poly[k]);
        for (j, &cj) in c.cyclo[..phi].iter().enumerate() {
            if cj != 0 {
                poly[k - phi + j] -= &lead * cj;
            }
        }
    }
    poly.resize(phi, BigInt::zero());
}

#[derive(Clone, Debug)]
pub struct CycNum {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(n: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycNum { n, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    /// Builds Σ coeffs[i]·ζ_n^i and reduces it to canonical form. Exponents beyond n
    /// wrap around (ζ_n^n = 1).
    pub fn new(n: u32, coeffs: &[Rat]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        let c = ctx(n);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut poly = vec![BigInt::zero(); (n as usize).max(c.phi)];
        for (i, r) in coeffs.iter().enumerate() {
            poly[i % n as usize] += r.numer() * (&den / r.denom());
        }
        reduce_mod_cyclo(&c, &mut poly);
        Ok(Self::from_parts(n, poly, den))
    }

    pub fn from_ints(n: u32, coeffs: &[i64]) -> Result<Self> {
        let r: Vec<Rat> = coeffs
            .iter()
            .map(|&c| Rat::from_integer(c.into()))
            .collect();
        Self::new(n, &r)
    }

    pub fn zero(n: u32) -> Self {
        let phi = ctx(n).phi;
        CycNum {
            n,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rat(n, &Rat::one())
    }

    pub fn from_rat(n: u32, r: &Rat) -> Self {
        let mut x = Self::zero(n);
        x.num[0] = r.numer().clone();
        x.den = r.denom().clone();
        x
    }

    pub fn from_int(n: u32, k: i64) -> Self {
        Self::from_rat(n, &Rat::from_integer(k.into()))
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let c = ctx(n);
        let mut poly = vec![BigInt::zero(); (n as usize).max(c.phi)];
        poly[e] = BigInt::one();
        reduce_mod_cyclo(&c, &mut poly);
        Self::from_parts(n, poly, BigInt::one())
    }

    /// ω = ζ₃ at conductor 3.
    pub fn omega() -> Self {
        Self::zeta_pow(3, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        self.num
            .iter()
            .map(|c| Rat::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational()
            .then(|| Rat::new(self.num[0].clone(), self.den.clone()))
    }

    /// Re-expresses the element at conductor `m`, a multiple of the current one.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroConductor);
        }
        if !m.is_multiple_of(self.n) {
            return Err(Error::ConductorNotDividing {
                from: self.n,
                to: m,
            });
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let step = (m / self.n) as usize;
        let c = ctx(m);
        let mut poly = vec![BigInt::zero(); (m as usize).max(c.phi)];
        for (i, a) in self.num.iter().enumerate() {
            poly[i * step] = a.clone();
        }
        reduce_mod_cyclo(&c, &mut poly);
        Ok(Self::from_parts(m, poly, self.den.clone()))
    }

    fn at(&self, m: u32) -> std::borrow::Cow<'_, CycNum> {
        if m == self.n {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.embed(m).expect("lcm conductor"))
        }
    }

    fn common<'a>(
        a: &'a CycNum,
        b: &'a CycNum,
    ) -> (std::borrow::Cow<'a, CycNum>, std::borrow::Cow<'a, CycNum>) {
        let m = lcm_u32(a.n, b.n);
        (a.at(m), b.at(m))
    }

    fn add_impl(&self, other: &CycNum, negate: bool) -> CycNum {
        let (a, b) = Self::common(self, other);
        let den = a.den.lcm(&b.den);
        let fa = &den / &a.den;
        let fb = &den / &b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &fa;
                let r = y * &fb;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Self::from_parts(a.n, num, den)
    }

    fn mul_impl(&self, other: &CycNum) -> CycNum {
        let (a, b) = Self::common(self, other);
        let c = ctx(a.n);
        let phi = c.phi;
        let mut poly = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        reduce_mod_cyclo(&c, &mut poly);
        Self::from_parts(a.n, poly, &a.den * &b.den)
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.n, num, &self.den * r.denom())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_n.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = ctx(self.n);
        let a: Vec<Rat> = self.coeffs();
        let m: Vec<Rat> = c
            .cyclo
            .iter()
            .map(|&k| Rat::from_integer(k.into()))
            .collect();
        let s = rat_poly_inverse_mod(&a, &m);
        CycNum::new(self.n, &s)
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = CycNum::one(self.n);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Image under the automorphism ζ_n ↦ ζ_n^k (k coprime to n).
    pub fn galois(&self, k: i64) -> CycNum {
        let n = self.n as i64;
        assert_eq!(k.gcd(&n), 1, "galois exponent must be a unit mod n");
        let c = ctx(self.n);
        let mut poly = vec![BigInt::zero(); (self.n as usize).max(c.phi)];
        for (i, a) in self.num.iter().enumerate() {
            let e = ((i as i64) * k).rem_euclid(n) as usize;
            poly[e] += a;
        }
        reduce_mod_cyclo(&c, &mut poly);
        Self::from_parts(self.n, poly, self.den.clone())
    }

    /// Monic minimal polynomial over Q: the first linear dependence among 1, a, a², ….
    pub fn min_poly(&self) -> RatPoly {
        let phi = self.num.len();
        // basis rows kept in echelon form together with their expression in powers of a
        let mut rows: Vec<(Vec<Rat>, Vec<Rat>, usize)> = Vec::new();
        let mut power = CycNum::one(self.n);
        for k in 0..=phi {
            let mut v = power.coeffs();
            let mut combo = vec![Rat::zero(); k + 1];
            combo[k] = Rat::one();
            for (row, rcombo, piv) in &rows {
                if v[*piv].is_zero() {
                    continue;
                }
                let f = v[*piv].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
                for (x, y) in combo.iter_mut().zip(rcombo) {
                    *x -= &f * y;
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => return RatPoly::new(combo),
                Some(piv) => {
                    let inv = v[piv].recip();
                    for x in v.iter_mut() {
                        *x *= &inv;
                    }
                    for x in combo.iter_mut() {
                        *x *= &inv;
                    }
                    rows.push((v, combo, piv));
                }
            }
            power = &power * self;
        }
        unreachable!("degree of an element never exceeds phi(n)")
    }

    /// Evaluates a rational polynomial at this element.
    pub fn eval_poly(&self, p: &RatPoly) -> CycNum {
        let mut acc = CycNum::zero(self.n);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &CycNum::from_rat(self.n, c);
        }
        acc
    }

    /// Primes dividing the common denominator of the coefficients.
    pub fn denominator_support(&self) -> BTreeSet<u64> {
        prime_factors(&self.den)
    }

    /// Total order used for canonical element sorting: conductor, then the coefficient
    /// sequence compared as rationals.
    pub fn cmp_canonical(&self, other: &CycNum) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (x, y) in self.num.iter().zip(&other.num) {
                let o = (x * &other.den).cmp(&(y * &self.den));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    pub(crate) fn hash_into<H: std::hash::Hasher>(&self, state: &mut H) {
        use std::hash::Hash;
        self.n.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

pub(crate) fn prime_factors(n: &BigInt) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut m = n.abs();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= m {
        let bp = BigInt::from(p);
        if (&m % &bp).is_zero() {
            out.insert(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        out.insert(
            m.to_u64()
                .expect("prime factor beyond trial-division range"),
        );
    }
    out
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![], r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![Rat::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// s with s·a ≡ 1 mod m, assuming gcd(a, m) = 1.
fn rat_poly_inverse_mod(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<Rat> = vec![];
    let mut s1: Vec<Rat> = vec![Rat::one()];
    while r1.len() > 1 {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r1 is a nonzero constant since Φ_n is irreducible
    let c = r1[0].recip();
    s1.iter().map(|x| x * &c).collect()
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                $body(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                $body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_impl(b));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rat::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z{}^{i}", self.n)?,
                (_, false) => write!(f, "{a}*z{}^{i}", self.n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumWire {
    n: u32,
    c: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumWire {
            n: self.n,
            c: self.coeffs().iter().map(|r| r.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = CycNumWire::deserialize(d)?;
        let coeffs =
            w.c.iter()
                .map(|t| {
                    t.trim()
                        .parse::<Rat>()
                        .map_err(|e| D::Error::custom(format!("{t}: {e}")))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
        if coeffs.len() > w.n as usize {
            return Err(D::Error::custom("more coefficients than the conductor"));
        }
        CycNum::new(w.n, &coeffs).map_err(D::Error::custom)
    }
}

/// √−3 = 2ω + 1 at conductor 3.
pub fn sqrt_minus_3() -> CycNum {
    &(&CycNum::omega() + &CycNum::omega()) + &CycNum::one(3)
}

/// √−7 as the quadratic Gauss sum Σ_{k=1}^{6} (k/7)·ζ₇^k at conductor 7.
pub fn sqrt_minus_7() -> CycNum {
    let legendre = [0i64, 1, 1, -1, 1, -1, -1];
    let mut acc = CycNum::zero(7);
    for (k, &s) in legendre.iter().enumerate().skip(1) {
        acc = &acc + &(&CycNum::zeta_pow(7, k as i64) * &CycNum::from_int(7, s));
    }
    acc
}
