//! The three-dimensional representation of PSL₂(7) on the Klein quartic, extended by
//! the scalars of order three.

use crate::error::{Error, Result};
use crate::exactla::MatK;
use crate::exactnum::{sqrt_minus_7, CycNum};
use crate::fingrp::{group_closure, FiniteMatrixGroup};

fn z7(k: i64) -> CycNum {
    CycNum::zeta_pow(7, k).embed(21).expect("7 divides 21")
}

/// (S, T, Z) with S = diag(ζ₇⁴, ζ₇², ζ₇), T the symmetric matrix of differences
/// ζ₇^a − ζ₇^{−a} divided by −√−7, and Z = ω·I, all at conductor 21.
///
/// With √−7 the Gauss sum, the sign makes det T = 1; the opposite sign would add −I
/// and double ⟨S, T⟩ to order 336.
pub fn build_klein_rep() -> Result<(MatK, MatK, MatK)> {
    let s = MatK::diag(&[z7(4), z7(2), z7(1)]);
    let d = |a: i64| &z7(a) - &z7(-a);
    let rows = vec![
        vec![d(1), d(2), d(4)],
        vec![d(2), d(4), d(1)],
        vec![d(4), d(1), d(2)],
    ];
    let t = MatK::from_rows(21, rows)?.scale(&(-sqrt_minus_7()).inv()?);
    let z = MatK::scalar(3, &CycNum::omega()).embed(21);
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Pipeline(format!(
                "Klein representation: {what} fails"
            )))
        }
    };
    check(s.pow(7)?.is_identity(), "S^7 = I")?;
    check(t.pow(2)?.is_identity(), "T^2 = I")?;
    check(t.det()?.is_one(), "det T = 1")?;
    Ok((s, t, z))
}

/// The groups ⟨S, T⟩ of order 168 and ⟨S, T, ωI⟩ of order 504.
pub fn klein_groups() -> Result<(FiniteMatrixGroup, FiniteMatrixGroup)> {
    let (s, t, z) = build_klein_rep()?;
    let g168 = group_closure(&[s.clone(), t.clone()], 200)?;
    let g504 = group_closure(&[s, t, z], 600)?;
    if g168.order() != 168 || g504.order() != 504 {
        return Err(Error::Pipeline(format!(
            "closure orders {} and {} instead of 168 and 504",
            g168.order(),
            g504.order()
        )));
    }
    Ok((g168, g504))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::kernel_basis;

    #[test]
    fn orders_and_involutions() {
        let (g168, g504) = klein_groups().unwrap();
        assert_eq!(g504.center().len(), 3);
        assert_eq!(g504.derived_subgroup().len(), 168);
        let mut sizes: Vec<usize> = g168.classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 21, 24, 24, 42, 56]);
        for x in 0..g168.order() {
            if g168.elem_order(x) == 2 {
                let m = g168.element(x);
                assert_eq!(m.trace(), CycNum::from_int(21, -1));
                assert_eq!(kernel_basis(&m.minus_identity()).len(), 1);
            }
        }
    }

    #[test]
    fn labels_of_the_504_group() {
        let (_, g) = klein_groups().unwrap();
        let w = g
            .index_of(&MatK::scalar(3, &CycNum::omega()).embed(21))
            .unwrap();
        assert!(g.is_central(w));
        assert_eq!(g.class_label(w), "1a1");
        assert_eq!(g.elem_order(w), 3);
        let size = |l: &str| g.classes()[g.class_by_label(l).unwrap()].len();
        assert_eq!(size("2a0"), 21);
        assert_eq!(size("3a1"), 56);
        assert_eq!(size("3a2"), 56);
        for x in 0..g.order() {
            if g.elem_order(x) == 2 {
                assert_eq!(g.class_label(x), "2a0");
            }
        }
        let total: usize = g.classes().iter().map(Vec::len).sum();
        assert_eq!(total, 504);
        assert!(g.classes().iter().all(|c| 504 % c.len() == 0));
    }
}
