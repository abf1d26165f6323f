//! Local systems on the punctured sphere as matrix tuples, and their parabolic
//! cohomology W_g = H_g / E_g.
//!
//! An element of V^r is stored flat: slot i occupies coordinates i·d .. (i+1)·d.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{echelon_basis, image_basis, kernel_basis, rref, solve, MatK, Vector};
use crate::exactnum::{lcm_u32, CycNum};

/// A tuple g = (g₁,…,g_r) of invertible d×d matrices with g₁⋯g_r = 1.
#[derive(Clone, Debug)]
pub struct GTuple {
    n: u32,
    dim: usize,
    mats: Vec<MatK>,
    invs: Vec<MatK>,
}

impl PartialEq for GTuple {
    fn eq(&self, o: &GTuple) -> bool {
        self.mats == o.mats
    }
}

impl Eq for GTuple {}

impl GTuple {
    /// Validates shapes, invertibility and the product-one relation.
    pub fn new(mats: Vec<MatK>) -> Result<Self> {
        let Some(first) = mats.first() else {
            return Err(Error::TooFewEntries(0));
        };
        let dim = first.rows();
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Shape(
                "tuple entries must be square of equal size".into(),
            ));
        }
        let n = mats.iter().fold(1, |acc, m| lcm_u32(acc, m.conductor()));
        let mats: Vec<MatK> = mats.iter().map(|m| m.embed(n)).collect();
        let invs = mats.iter().map(MatK::inv).collect::<Result<Vec<_>>>()?;
        let prod = mats
            .iter()
            .fold(MatK::identity(n, dim), |acc, m| acc.mul(m));
        if !prod.is_identity() {
            return Err(Error::ProductNotIdentity);
        }
        if mats.len() < 3 {
            return Err(Error::TooFewEntries(mats.len()));
        }
        Ok(GTuple { n, dim, mats, invs })
    }

    /// Builds a tuple whose entries are already known to be valid, given with inverses.
    pub(crate) fn from_parts_unchecked(mats: Vec<MatK>, invs: Vec<MatK>) -> Self {
        let n = mats.iter().fold(1, |acc, m| lcm_u32(acc, m.conductor()));
        let dim = mats[0].rows();
        GTuple {
            n,
            dim,
            mats: mats.iter().map(|m| m.embed(n)).collect(),
            invs: invs.iter().map(|m| m.embed(n)).collect(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn mats(&self) -> &[MatK] {
        &self.mats
    }

    pub fn get(&self, i: usize) -> &MatK {
        &self.mats[i]
    }

    pub fn inverse(&self, i: usize) -> &MatK {
        &self.invs[i]
    }

    pub fn invs(&self) -> &[MatK] {
        &self.invs
    }

    /// Simultaneous conjugation (h·g_i·h⁻¹)_i.
    pub fn conjugate_by(&self, h: &MatK) -> Result<GTuple> {
        let hi = h.inv()?;
        let mats = self.mats.iter().map(|g| h.mul(g).mul(&hi)).collect();
        let invs = self.invs.iter().map(|g| h.mul(g).mul(&hi)).collect();
        Ok(GTuple::from_parts_unchecked(mats, invs))
    }

    /// Ambient dimension r·d of V^r.
    pub fn total_dim(&self) -> usize {
        self.dim * self.mats.len()
    }
}

#[derive(Serialize, Deserialize)]
struct TupleWire {
    n: u32,
    dim: usize,
    mats: Vec<MatK>,
}

impl Serialize for GTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TupleWire {
            n: self.n,
            dim: self.dim,
            mats: self.mats.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = TupleWire::deserialize(d)?;
        if let Some((i, m)) = w
            .mats
            .iter()
            .enumerate()
            .find(|(_, m)| m.rows() != w.dim || w.n % m.conductor() != 0)
        {
            return Err(D::Error::custom(format!(
                "mats[{i}]: {}x{} at conductor {} is inconsistent with dim {} and conductor {}",
                m.rows(),
                m.cols(),
                m.conductor(),
                w.dim,
                w.n
            )));
        }
        let mats = w.mats.into_iter().map(|m| m.embed(w.n)).collect();
        GTuple::new(mats).map_err(D::Error::custom)
    }
}

/// Splits a flat vector of V^r into its r slots.
pub fn slots(v: &[CycNum], dim: usize) -> Vec<Vector> {
    v.chunks(dim).map(<[CycNum]>::to_vec).collect()
}

/// Canonical basis of H_g: parametrize v_i = w_i(g_i − 1), impose
/// Σ v_i·g_{i+1}⋯g_r = 0, echelonize.
pub fn h_space(g: &GTuple) -> Vec<Vector> {
    let (n, d, r) = (g.n, g.dim, g.len());
    let mut suffix = MatK::identity(n, d);
    let mut blocks = vec![MatK::zero(n, d, d); r];
    for i in (0..r).rev() {
        blocks[i] = g.mats[i].minus_identity().mul(&suffix);
        suffix = g.mats[i].mul(&suffix);
    }
    let stacked = MatK::vstack(&blocks).expect("equal block widths");
    let ws = kernel_basis(&stacked);
    if ws.is_empty() {
        return vec![];
    }
    let diag = MatK::block_diag(&g.mats.iter().map(MatK::minus_identity).collect::<Vec<_>>());
    let vs: Vec<Vector> = ws.iter().map(|w| MatK::vec_mul(w, &diag)).collect();
    echelon_basis(n, r * d, &vs)
}

fn coboundary_matrix(g: &GTuple) -> MatK {
    MatK::hstack(&g.mats.iter().map(MatK::minus_identity).collect::<Vec<_>>())
        .expect("equal block heights")
}

/// Canonical basis of E_g = {(v(g₁−1), …, v(g_r−1))}.
pub fn e_space(g: &GTuple) -> Vec<Vector> {
    image_basis(&coboundary_matrix(g))
}

/// The common fixed space ∩ Ker(g_i − 1) = V^⟨g⟩.
pub fn invariants_space(g: &GTuple) -> Vec<Vector> {
    kernel_basis(&coboundary_matrix(g))
}

/// Dimension predicted by (r−2)·dim V − Σ dim Ker(g_i − 1), with a flag telling
/// whether the invariants vanish (the formula's hypothesis).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedDim {
    pub value: i64,
    pub applicable: bool,
    pub kernel_dims: Vec<usize>,
}

pub fn expected_dim(g: &GTuple) -> ExpectedDim {
    let kernel_dims: Vec<usize> = g
        .mats
        .iter()
        .map(|m| kernel_basis(&m.minus_identity()).len())
        .collect();
    let value = (g.len() as i64 - 2) * g.dim as i64 - kernel_dims.iter().sum::<usize>() as i64;
    ExpectedDim {
        value,
        applicable: invariants_space(g).is_empty(),
        kernel_dims,
    }
}

/// H_g, E_g and a fixed complement of E_g in H_g giving coordinates on W_g.
#[derive(Clone, Debug)]
pub struct ParabolicSpace {
    tuple: GTuple,
    h_basis: Vec<Vector>,
    e_basis: Vec<Vector>,
    reps: Vec<Vector>,
    /// [E; C] stacked, used to solve for coordinates.
    ec: MatK,
}

impl ParabolicSpace {
    /// Bundles H_g and E_g with the canonical complement: H_g vectors reduced modulo
    /// the pivots of E_g, echelonized.
    pub fn new(g: &GTuple) -> Self {
        let h_basis = h_space(g);
        let e_basis = e_space(g);
        let total = g.total_dim();
        let (er, epiv, _) = rref(&MatK::from_vectors(g.n, total, &e_basis));
        let mut residuals = Vec::new();
        for h in &h_basis {
            let mut v = h.clone();
            for (k, &pc) in epiv.iter().enumerate() {
                let c = v[pc].clone();
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(er.row(k)) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * &y);
                    }
                }
            }
            residuals.push(v);
        }
        let reps = echelon_basis(g.n, total, &residuals);
        Self::assemble(g.clone(), h_basis, e_basis, reps)
    }

    fn assemble(
        tuple: GTuple,
        h_basis: Vec<Vector>,
        e_basis: Vec<Vector>,
        reps: Vec<Vector>,
    ) -> Self {
        let total = tuple.total_dim();
        let mut rows = e_basis.clone();
        rows.extend(reps.iter().cloned());
        let ec = MatK::from_vectors(tuple.n, total, &rows);
        ParabolicSpace {
            tuple,
            h_basis,
            e_basis,
            reps,
            ec,
        }
    }

    /// Replaces the complement by user-chosen representatives of a basis of W_g.
    pub fn with_representatives(&self, reps: Vec<Vector>) -> Result<Self> {
        let total = self.tuple.total_dim();
        if reps.iter().any(|v| v.len() != total) {
            return Err(Error::Shape(format!(
                "representatives must have length {total}"
            )));
        }
        for (i, v) in reps.iter().enumerate() {
            if !self.contains_h(v) {
                return Err(Error::Membership(format!(
                    "representative {i} is not in H_g"
                )));
            }
        }
        let mut rows = self.e_basis.clone();
        rows.extend(reps.iter().cloned());
        let rank = MatK::from_vectors(self.tuple.n, total, &rows).rank();
        if reps.len() != self.dim_w() || rank != self.e_basis.len() + reps.len() {
            return Err(Error::DependentModE);
        }
        Ok(Self::assemble(
            self.tuple.clone(),
            self.h_basis.clone(),
            self.e_basis.clone(),
            reps,
        ))
    }

    pub fn tuple(&self) -> &GTuple {
        &self.tuple
    }

    pub fn h_basis(&self) -> &[Vector] {
        &self.h_basis
    }

    pub fn e_basis(&self) -> &[Vector] {
        &self.e_basis
    }

    /// Representatives in H_g of the W-coordinate basis.
    pub fn representatives(&self) -> &[Vector] {
        &self.reps
    }

    pub fn dim_h(&self) -> usize {
        self.h_basis.len()
    }

    pub fn dim_e(&self) -> usize {
        self.e_basis.len()
    }

    pub fn dim_w(&self) -> usize {
        self.h_basis.len() - self.e_basis.len()
    }

    pub fn contains_h(&self, v: &[CycNum]) -> bool {
        in_span(self.tuple.n, &self.h_basis, v)
    }

    pub fn contains_e(&self, v: &[CycNum]) -> bool {
        in_span(self.tuple.n, &self.e_basis, v)
    }

    /// Coordinates of the class of v ∈ H_g in the representative basis of W_g.
    pub fn w_coords(&self, v: &[CycNum]) -> Result<Vector> {
        if self.ec.rows() == 0 {
            return if v.iter().all(CycNum::is_zero) {
                Ok(vec![])
            } else {
                Err(Error::Membership("nonzero vector in a zero H_g".into()))
            };
        }
        let x =
            solve(&self.ec, v).ok_or_else(|| Error::Membership("vector is not in H_g".into()))?;
        Ok(x[self.e_basis.len()..].to_vec())
    }
}

/// Whether v lies in the span of an echelon basis.
pub fn in_span(n: u32, basis: &[Vector], v: &[CycNum]) -> bool {
    if basis.is_empty() {
        return v.iter().all(CycNum::is_zero);
    }
    solve(&MatK::from_vectors(n, v.len(), basis), v).is_some()
}
