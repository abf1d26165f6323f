//! The matrices b_j = Φ̄(g, γ′_j)·Ψ̄(g, h_j) on W_g, computed through the Cayley table.

use std::collections::BTreeSet;

use serde::Serialize;

use super::cusps::CuspGenerators;
use super::{act_letter, Tuple};
use crate::braidact::{push_pair, slotwise_mul, BraidWord};
use crate::error::{Error, Result};
use crate::exactla::{classify_rank2, MatK, Rank2Class, Vector};
use crate::exactnum::CycNum;
use crate::fingrp::FiniteMatrixGroup;
use crate::locsys::ParabolicSpace;

/// The cusp matrices after central normalization.
#[derive(Clone, Debug, Serialize)]
pub struct BMatrices {
    pub matrices: Vec<MatK>,
    /// b_j as computed from the given twists, before normalization.
    pub raw: Vec<MatK>,
    /// Exponents k_j with b_j = ω^{k_j}·raw_j.
    pub scalars: Vec<u32>,
    /// Twists after normalization, h_j·z^{k_j}.
    pub twists: Vec<usize>,
    pub classes: Vec<Rank2Class>,
    /// Exponent k with Π raw-normalized b_j = ω^k·I before the final correction.
    pub product_exponent: u32,
    pub denominators: BTreeSet<u64>,
}

/// Φ̄(g, w)·Ψ̄(g, h) on W_g for the tuple of group elements realized by `space`.
///
/// The representatives are pushed along w with entries looked up in the group, then
/// multiplied slotwise by h; the result is read in the representative basis.
pub fn b_matrix(
    g: &FiniteMatrixGroup,
    space: &ParabolicSpace,
    tuple: &[usize],
    w: &BraidWord,
    h: usize,
) -> Result<MatK> {
    let dim = space.tuple().dim();
    let mut t: Tuple = tuple.to_vec();
    let mut vs: Vec<Vector> = space.representatives().to_vec();
    for &l in w.letters() {
        let i = l.index - 1;
        let (a, b) = (t[i], t[i + 1]);
        let (gi_inv, gj, moved) = (g.element(g.inv(a)), g.element(b), g.element(g.conj(a, b)));
        for v in vs.iter_mut() {
            let (lo, hi) = (i * dim, (i + 1) * dim);
            let (ni, nj) = push_pair(&v[lo..hi], &v[hi..hi + dim], l.inverse, gi_inv, gj, moved);
            v[lo..hi].clone_from_slice(&ni);
            v[hi..hi + dim].clone_from_slice(&nj);
        }
        act_letter(g, &mut t, l);
    }
    if t.iter().zip(tuple).any(|(&x, &y)| g.conj(x, h) != y) {
        return Err(Error::Pipeline(
            "moved tuple is not the conjugate of the base tuple by h".into(),
        ));
    }
    let hm = g.element(h);
    let rows = vs
        .iter()
        .map(|v| space.w_coords(&slotwise_mul(v, dim, hm)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatK::from_vectors(
        space.tuple().conductor(),
        space.dim_w(),
        &rows,
    ))
}

fn omega_pow(k: u32) -> CycNum {
    CycNum::omega().pow(k as i64).expect("omega is a unit")
}

fn has_eigenvalue_one(m: &MatK) -> Result<bool> {
    Ok(m.minus_identity().det()?.is_zero())
}

/// The b_j for all cusp generators, each scaled by a cube root of unity so that it
/// has eigenvalue 1, and one homology rescaled so that Π b_j = I.
///
/// Scaling by ω^k is the twist h_j ↦ h_j·z^k with z = ωI central in G.
pub fn bmatrices(
    g: &FiniteMatrixGroup,
    gens: &CuspGenerators,
    space: &ParabolicSpace,
    z: usize,
) -> Result<BMatrices> {
    if space.tuple().mats()
        != gens
            .tuple
            .iter()
            .map(|&x| g.element(x).clone())
            .collect::<Vec<_>>()
    {
        return Err(Error::Pipeline(
            "the space does not belong to the base tuple".into(),
        ));
    }
    if g.element(z).scalar_value() != Some(CycNum::omega()) {
        return Err(Error::Pipeline("z must be the scalar matrix omega".into()));
    }
    let mut raw = Vec::new();
    let mut matrices = Vec::new();
    let mut scalars = Vec::new();
    let mut twists = Vec::new();
    for (j, (w, &h)) in gens.braid_words.iter().zip(&gens.twists).enumerate() {
        let b = b_matrix(g, space, &gens.tuple, w, h)?;
        let mut chosen = None;
        for k in 0..3u32 {
            let m = b.scale(&omega_pow(k));
            if has_eigenvalue_one(&m)? {
                chosen = Some((k, m));
                break;
            }
        }
        let (k, m) = chosen.ok_or_else(|| {
            Error::Pipeline(format!(
                "no cube-root multiple of b_{j} has eigenvalue 1: {b}"
            ))
        })?;
        raw.push(b);
        matrices.push(m);
        scalars.push(k);
        twists.push(g.mul(h, g.pow(z, k as i64)));
    }
    let n = space.tuple().conductor();
    let prod = matrices
        .iter()
        .fold(MatK::identity(n, space.dim_w()), |acc, m| acc.mul(m));
    let c = prod
        .scalar_value()
        .ok_or_else(|| Error::Pipeline(format!("product of the b_j is not scalar: {prod}")))?;
    let product_exponent = (0..3u32)
        .find(|&k| c == omega_pow(k))
        .ok_or_else(|| Error::Pipeline(format!("product of the b_j is {c} times the identity")))?;
    if product_exponent != 0 {
        let target = omega_pow(product_exponent);
        let j = matrices
            .iter()
            .position(|m| matches!(classify_rank2(m), Ok(Rank2Class::Homology { eigenvalue }) if eigenvalue == target))
            .ok_or_else(|| Error::Pipeline("no homology absorbs the scalar product".into()))?;
        let back = 3 - product_exponent;
        matrices[j] = matrices[j].scale(&omega_pow(back));
        scalars[j] = (scalars[j] + back) % 3;
        twists[j] = g.mul(twists[j], g.pow(z, back as i64));
    }
    let classes = matrices
        .iter()
        .map(classify_rank2)
        .collect::<Result<Vec<_>>>()?;
    let mut denominators = BTreeSet::new();
    for m in &matrices {
        for x in m.entries() {
            denominators.extend(x.denominator_support());
        }
    }
    Ok(BMatrices {
        matrices,
        raw,
        scalars,
        twists,
        classes,
        product_exponent,
        denominators,
    })
}
