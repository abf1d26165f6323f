use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Integer divisors of `n` in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn euler_phi(n: u32) -> usize {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi as usize
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// Exact division of an integer polynomial by a monic one (coefficients low to high).
fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quo = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

/// The n-th cyclotomic polynomial, low-to-high coefficients, obtained by dividing
/// xⁿ − 1 by Φ_d for every proper divisor d of n.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            p = div_monic(&p, &cyclotomic_poly(d));
        }
    }
    p
}

/// Polynomial with rational coefficients, stored low to high without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly(pub Vec<Rat>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
