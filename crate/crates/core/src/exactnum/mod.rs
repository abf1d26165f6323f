//! Exact arithmetic: rationals, cyclotomic fields and finite-field residues.

mod cyclo;
mod fp;
mod gf;
mod poly;

pub use cyclo::{sqrt_minus_3, sqrt_minus_7, CycNum};
pub use fp::{
    factor_cyclotomic_mod_p, is_irreducible, is_prime, mult_order, residue, FpPoly, FqElem,
    PrimeIdeal, DEFAULT_SEED,
};
pub use gf::{projective_closure_order, GfTables, Mat2, MAX_TABLE_SIZE};
pub use poly::{cyclotomic_poly, euler_phi, lcm_u32, RatPoly};

pub type Rat = num_rational::BigRational;
