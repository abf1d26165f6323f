//! Dense matrices over a cyclotomic field with exact elimination.
//!
//! Vectors are rows and matrices act on the right, v ↦ v·M, so a product A·B means
//! "apply A, then B".

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{lcm_u32, CycNum};

pub type Vector = Vec<CycNum>;

#[derive(Clone, Debug)]
pub struct MatK {
    n: u32,
    rows: usize,
    cols: usize,
    e: Vec<CycNum>,
}

fn lift(x: &CycNum, n: u32) -> CycNum {
    if x.conductor() == n {
        x.clone()
    } else {
        x.embed(n).expect("conductor divides the common conductor")
    }
}

impl MatK {
    /// Builds a matrix from rows, embedding all entries at the lcm of their
    /// conductors and `n`.
    pub fn from_rows(n: u32, rows: Vec<Vec<CycNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let m = rows
            .iter()
            .flatten()
            .fold(n, |acc, x| lcm_u32(acc, x.conductor()));
        let e = rows.iter().flatten().map(|x| lift(x, m)).collect();
        Ok(MatK {
            n: m,
            rows: r,
            cols: c,
            e,
        })
    }

    pub fn from_ints(n: u32, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            n,
            rows.iter()
                .map(|r| r.iter().map(|&k| CycNum::from_int(n, k)).collect())
                .collect(),
        )
    }

    pub fn zero(n: u32, rows: usize, cols: usize) -> Self {
        MatK {
            n,
            rows,
            cols,
            e: vec![CycNum::zero(n); rows * cols],
        }
    }

    pub fn identity(n: u32, k: usize) -> Self {
        Self::scalar(k, &CycNum::one(n))
    }

    pub fn scalar(k: usize, x: &CycNum) -> Self {
        Self::diag(&vec![x.clone(); k])
    }

    pub fn diag(d: &[CycNum]) -> Self {
        let n = d.iter().fold(1, |acc, x| lcm_u32(acc, x.conductor()));
        let k = d.len();
        let mut m = Self::zero(n, k, k);
        for (i, x) in d.iter().enumerate() {
            m.e[i * k + i] = lift(x, n);
        }
        m
    }

    /// A single row vector as a 1×k matrix.
    pub fn row_vector(v: &[CycNum]) -> Self {
        let n = v.iter().fold(1, |acc, x| lcm_u32(acc, x.conductor()));
        MatK {
            n,
            rows: 1,
            cols: v.len(),
            e: v.iter().map(|x| lift(x, n)).collect(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycNum) {
        let m = lcm_u32(self.n, x.conductor());
        if m != self.n {
            *self = self.embed(m);
        }
        self.e[i * self.cols + j] = lift(&x, m);
    }

    pub fn row(&self, i: usize) -> Vector {
        self.e[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_list(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.e
    }

    /// Re-expresses every entry at conductor m (a multiple of the current one).
    pub fn embed(&self, m: u32) -> MatK {
        if m == self.n {
            return self.clone();
        }
        MatK {
            n: m,
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(|x| lift(x, m)).collect(),
        }
    }

    fn aligned<'a>(
        &'a self,
        o: &'a MatK,
    ) -> (std::borrow::Cow<'a, MatK>, std::borrow::Cow<'a, MatK>) {
        use std::borrow::Cow;
        let m = lcm_u32(self.n, o.n);
        let a = if m == self.n {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.embed(m))
        };
        let b = if m == o.n {
            Cow::Borrowed(o)
        } else {
            Cow::Owned(o.embed(m))
        };
        (a, b)
    }

    pub fn try_mul(&self, o: &MatK) -> Result<MatK> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let (a, b) = self.aligned(o);
        let n = a.n;
        let mut out = MatK::zero(n, a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..b.cols {
                    let y = b.get(k, j);
                    if y.is_zero() {
                        continue;
                    }
                    let idx = i * b.cols + j;
                    out.e[idx] = &out.e[idx] + &(x * y);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &MatK) -> MatK {
        self.try_mul(o).expect("matrix shapes agree")
    }

    fn zip_with(&self, o: &MatK, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Result<MatK> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!(
                "{}x{} versus {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let (a, b) = self.aligned(o);
        Ok(MatK {
            n: a.n,
            rows: a.rows,
            cols: a.cols,
            e: a.e.iter().zip(&b.e).map(|(x, y)| f(x, y)).collect(),
        })
    }

    pub fn try_add(&self, o: &MatK) -> Result<MatK> {
        self.zip_with(o, |x, y| x + y)
    }

    pub fn try_sub(&self, o: &MatK) -> Result<MatK> {
        self.zip_with(o, |x, y| x - y)
    }

    pub fn add(&self, o: &MatK) -> MatK {
        self.try_add(o).expect("matrix shapes agree")
    }

    pub fn sub(&self, o: &MatK) -> MatK {
        self.try_sub(o).expect("matrix shapes agree")
    }

    pub fn neg(&self) -> MatK {
        MatK {
            n: self.n,
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> MatK {
        let m = lcm_u32(self.n, c.conductor());
        let a = self.embed(m);
        let c = lift(c, m);
        MatK {
            n: m,
            rows: a.rows,
            cols: a.cols,
            e: a.e.iter().map(|x| x * &c).collect(),
        }
    }

    /// M − I for a square matrix.
    pub fn minus_identity(&self) -> MatK {
        self.sub(&MatK::identity(self.n, self.rows))
    }

    pub fn transpose(&self) -> MatK {
        let mut e = Vec::with_capacity(self.e.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                e.push(self.get(i, j).clone());
            }
        }
        MatK {
            n: self.n,
            rows: self.cols,
            cols: self.rows,
            e,
        }
    }

    pub fn trace(&self) -> CycNum {
        (0..self.rows.min(self.cols)).fold(CycNum::zero(self.n), |acc, i| &acc + self.get(i, i))
    }

    pub fn det(&self) -> Result<CycNum> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let k = self.rows;
        let mut a = self.row_list();
        let mut det = CycNum::one(self.n);
        for col in 0..k {
            let Some(piv) = (col..k).find(|&r| !a[r][col].is_zero()) else {
                return Ok(CycNum::zero(self.n));
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inv()?;
            for r in col + 1..k {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                let (top, rest) = a.split_at_mut(r);
                for (x, y) in rest[0][col..k].iter_mut().zip(&top[col][col..k]) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        Ok(det)
    }

    pub fn inv(&self) -> Result<MatK> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let (r, pivots, t) = rref(self);
        if pivots.len() < self.rows {
            return Err(Error::Singular);
        }
        debug_assert!(r.is_identity());
        Ok(t)
    }

    pub fn pow(&self, e: i64) -> Result<MatK> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = MatK::identity(self.n, self.rows);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(CycNum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Returns λ if the matrix equals λ·I.
    pub fn scalar_value(&self) -> Option<CycNum> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let l = self.get(0, 0).clone();
        let ok = (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    *x == l
                } else {
                    x.is_zero()
                }
            })
        });
        ok.then_some(l)
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &[CycNum], m: &MatK) -> Vector {
        assert_eq!(v.len(), m.rows, "vector length matches matrix rows");
        let mut out = vec![CycNum::zero(m.n); m.cols];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let y = m.get(k, j);
                if !y.is_zero() {
                    *o = &*o + &(x * y);
                }
            }
        }
        out
    }

    /// Horizontal concatenation [A | B | …].
    pub fn hstack(blocks: &[MatK]) -> Result<MatK> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::Shape("hstack row counts differ".into()));
        }
        let n = blocks.iter().fold(1, |acc, b| lcm_u32(acc, b.n));
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut e = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                e.extend(b.e[i * b.cols..(i + 1) * b.cols].iter().map(|x| lift(x, n)));
            }
        }
        Ok(MatK { n, rows, cols, e })
    }

    /// Vertical concatenation.
    pub fn vstack(blocks: &[MatK]) -> Result<MatK> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::Shape("vstack column counts differ".into()));
        }
        let n = blocks.iter().fold(1, |acc, b| lcm_u32(acc, b.n));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let e = blocks
            .iter()
            .flat_map(|b| b.e.iter().map(|x| lift(x, n)))
            .collect();
        Ok(MatK { n, rows, cols, e })
    }

    /// Builds a matrix whose rows are the given vectors (all of length `cols`).
    pub fn from_vectors(n: u32, cols: usize, vs: &[Vector]) -> MatK {
        let m = vs
            .iter()
            .flatten()
            .fold(n, |acc, x| lcm_u32(acc, x.conductor()));
        MatK {
            n: m,
            rows: vs.len(),
            cols,
            e: vs.iter().flatten().map(|x| lift(x, m)).collect(),
        }
    }

    pub fn block_diag(blocks: &[MatK]) -> MatK {
        let n = blocks.iter().fold(1, |acc, b| lcm_u32(acc, b.n));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = MatK::zero(n, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.e[(r0 + i) * cols + c0 + j] = lift(b.get(i, j), n);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Hash consistent with equality among matrices at the same conductor.
    pub fn hash_key(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.rows.hash(&mut h);
        self.cols.hash(&mut h);
        for x in &self.e {
            x.hash_into(&mut h);
        }
        h.finish()
    }

    /// Total order on (rows, cols, entries) used for canonical sorting.
    pub fn cmp_canonical(&self, o: &MatK) -> std::cmp::Ordering {
        self.rows
            .cmp(&o.rows)
            .then(self.cols.cmp(&o.cols))
            .then_with(|| {
                let (a, b) = self.aligned(o);
                for (x, y) in a.e.iter().zip(&b.e) {
                    let c = x.cmp_canonical(y);
                    if c != std::cmp::Ordering::Equal {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            })
    }
}

impl PartialEq for MatK {
    fn eq(&self, o: &MatK) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.e == o.e
    }
}

impl Eq for MatK {}

impl fmt::Display for MatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.e.iter().map(|x| x.to_string()).collect();
        let w = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:>w$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatWire {
    n: u32,
    rows: usize,
    cols: usize,
    e: Vec<Vec<CycNum>>,
}

impl Serialize for MatK {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatWire {
            n: self.n,
            rows: self.rows,
            cols: self.cols,
            e: self.row_list(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatK {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = MatWire::deserialize(d)?;
        if w.e.len() != w.rows || w.e.iter().any(|r| r.len() != w.cols) {
            return Err(D::Error::custom(format!(
                "entries do not form a {}x{} matrix",
                w.rows, w.cols
            )));
        }
        if let Some(x) = w.e.iter().flatten().find(|x| w.n % x.conductor() != 0) {
            return Err(D::Error::custom(format!(
                "entry conductor {} does not divide matrix conductor {}",
                x.conductor(),
                w.n
            )));
        }
        let mut m = MatK::from_rows(w.n, w.e).map_err(D::Error::custom)?;
        m.rows = w.rows;
        m.cols = w.cols;
        Ok(m)
    }
}

/// Reduced row echelon form: returns (R, pivot columns, T) with T·A = R and T invertible.
pub fn rref(a: &MatK) -> (MatK, Vec<usize>, MatK) {
    let n = a.n;
    let (rows, cols) = (a.rows, a.cols);
    let mut r = a.row_list();
    let mut t = MatK::identity(n, rows).row_list();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == rows {
            break;
        }
        let Some(piv) = (prow..rows).find(|&i| !r[i][col].is_zero()) else {
            continue;
        };
        r.swap(piv, prow);
        t.swap(piv, prow);
        let inv = r[prow][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in r[prow].iter_mut().chain(t[prow].iter_mut()) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let (prow_r, prow_t) = (r[prow].clone(), t[prow].clone());
        for i in 0..rows {
            if i == prow || r[i][col].is_zero() {
                continue;
            }
            let f = r[i][col].clone();
            for (x, y) in r[i]
                .iter_mut()
                .zip(&prow_r)
                .chain(t[i].iter_mut().zip(&prow_t))
            {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    (
        MatK::from_vectors(n, cols, &r),
        pivots,
        MatK::from_vectors(n, rows, &t),
    )
}

/// Canonical (reduced echelon) basis of the span of the given vectors.
pub fn echelon_basis(n: u32, dim: usize, vs: &[Vector]) -> Vec<Vector> {
    if vs.is_empty() {
        return vec![];
    }
    let (r, pivots, _) = rref(&MatK::from_vectors(n, dim, vs));
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// Canonical basis of the left kernel {v : v·A = 0}.
pub fn kernel_basis(a: &MatK) -> Vec<Vector> {
    let (_, pivots, t) = rref(a);
    let raw: Vec<Vector> = (pivots.len()..a.rows).map(|i| t.row(i)).collect();
    echelon_basis(a.n, a.rows, &raw)
}

/// Canonical basis of the row space {v·A}.
pub fn image_basis(a: &MatK) -> Vec<Vector> {
    let (r, pivots, _) = rref(a);
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// Some x with x·A = b, free variables set to zero, or None if inconsistent.
pub fn solve(a: &MatK, b: &[CycNum]) -> Option<Vector> {
    assert_eq!(b.len(), a.cols, "right-hand side length matches columns");
    let (r, pivots, t) = rref(a);
    let n = lcm_u32(a.n, b.iter().fold(1, |acc, x| lcm_u32(acc, x.conductor())));
    let mut resid: Vector = b.iter().map(|x| lift(x, n)).collect();
    let mut coef = vec![CycNum::zero(n); pivots.len()];
    for (k, &pc) in pivots.iter().enumerate() {
        let c = resid[pc].clone();
        if c.is_zero() {
            continue;
        }
        for (x, y) in resid.iter_mut().zip(r.row(k)) {
            if !y.is_zero() {
                *x = &*x - &(&c * &y);
            }
        }
        coef[k] = c;
    }
    if !resid.iter().all(CycNum::is_zero) {
        return None;
    }
    let mut x = vec![CycNum::zero(n); a.rows];
    for (k, c) in coef.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (xi, ti) in x.iter_mut().zip(t.row(k)) {
            if !ti.is_zero() {
                *xi = &*xi + &(c * &ti);
            }
        }
    }
    Some(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Rank2Class {
    Identity,
    Transvection,
    Homology { eigenvalue: CycNum },
    Other,
}

impl Rank2Class {
    pub fn is_transvection(&self) -> bool {
        matches!(self, Rank2Class::Transvection)
    }

    pub fn is_homology(&self) -> bool {
        matches!(self, Rank2Class::Homology { .. })
    }
}

impl fmt::Display for Rank2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank2Class::Identity => write!(f, "identity"),
            Rank2Class::Transvection => write!(f, "transvection"),
            Rank2Class::Homology { eigenvalue } => write!(f, "homology({eigenvalue})"),
            Rank2Class::Other => write!(f, "other"),
        }
    }
}

/// Classifies an invertible 2×2 matrix as identity, transvection, homology or other.
pub fn classify_rank2(m: &MatK) -> Result<Rank2Class> {
    if m.rows != 2 || m.cols != 2 {
        return Err(Error::Shape(format!(
            "classification needs a 2x2 matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    if m.is_identity() {
        return Ok(Rank2Class::Identity);
    }
    let u = m.minus_identity();
    if u.mul(&u).is_zero() {
        return Ok(Rank2Class::Transvection);
    }
    let l = m.det()?;
    if !l.is_one() {
        let v = m.sub(&MatK::scalar(2, &l));
        if u.mul(&v).is_zero() {
            return Ok(Rank2Class::Homology { eigenvalue: l });
        }
    }
    Ok(Rank2Class::Other)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> CycNum {
        CycNum::omega()
    }

    fn int(k: i64) -> CycNum {
        CycNum::from_int(3, k)
    }

    #[test]
    fn identity_and_det() {
        let a = MatK::from_ints(3, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(MatK::identity(3, 2).mul(&a), a);
        let d = MatK::diag(&[int(1), int(1), int(-1)]);
        assert_eq!(d.det().unwrap(), int(-1));
        assert_eq!(a.det().unwrap(), int(-2));
    }

    #[test]
    fn trace_of_first_picard_matrix() {
        let w2 = &w() * &w();
        let one = int(1);
        let m = MatK::from_rows(
            3,
            vec![
                vec![w2.clone(), int(0), &one - &w()],
                vec![&w() - &w2, one.clone(), &w2 - &one],
                vec![int(0), int(0), one.clone()],
            ],
        )
        .unwrap();
        assert_eq!(m.trace(), &w2 + &int(2));
    }

    #[test]
    fn rref_examples() {
        let i3 = MatK::identity(3, 3);
        let (r, p, t) = rref(&i3);
        assert_eq!((r, p, t), (i3.clone(), vec![0, 1, 2], i3));
        let z = MatK::zero(3, 2, 3);
        let (r, p, t) = rref(&z);
        assert_eq!(r, z);
        assert!(p.is_empty());
        assert!(t.is_identity());
    }

    #[test]
    fn kernel_and_image_examples() {
        let g = MatK::diag(&[int(1), int(1), int(-1)]);
        assert_eq!(kernel_basis(&g.minus_identity()).len(), 2);
        let s = MatK::scalar(1, &w());
        assert_eq!(image_basis(&s.minus_identity()).len(), 1);
    }

    #[test]
    fn solve_examples() {
        let i = MatK::identity(3, 2);
        let b = vec![w(), int(5)];
        assert_eq!(solve(&i, &b).unwrap(), b);
        assert!(solve(&MatK::zero(3, 2, 2), &b).is_none());
    }

    #[test]
    fn classify_examples() {
        let t = MatK::from_ints(3, &[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(classify_rank2(&t).unwrap(), Rank2Class::Transvection);
        let h = MatK::diag(&[int(1), w()]);
        assert_eq!(
            classify_rank2(&h).unwrap(),
            Rank2Class::Homology { eigenvalue: w() }
        );
        let o = MatK::diag(&[w(), &w() * &w()]);
        assert_eq!(classify_rank2(&o).unwrap(), Rank2Class::Other);
        assert!(classify_rank2(&MatK::identity(3, 3)).is_err());
    }

    #[test]
    fn inverse_and_singular() {
        let a = MatK::from_rows(3, vec![vec![w(), int(1)], vec![int(2), w()]]).unwrap();
        assert!(a.inv().unwrap().mul(&a).is_identity());
        let s = MatK::from_ints(3, &[&[1, 2], &[2, 4]]).unwrap();
        assert!(matches!(s.inv(), Err(Error::Singular)));
    }

    #[test]
    fn json_round_trip() {
        let a = MatK::from_rows(3, vec![vec![w(), int(1)], vec![int(2), w()]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with(r#"{"n":3,"rows":2,"cols":2,"e":[[{"n":3"#));
        let b: MatK = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
