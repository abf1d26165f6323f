//! Braid words, the Hurwitz action on tuples, and the induced maps on parabolic
//! cohomology.
//!
//! Everything acts on the right: a word is applied letter by letter from left to
//! right and maps compose in the same order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{solve, MatK, Vector};
use crate::exactnum::CycNum;
use crate::locsys::{GTuple, ParabolicSpace};

/// A letter β_i^{±1}, with i counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word in the Artin generators on a fixed number of strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn empty(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: vec![],
        }
    }

    pub fn new(strands: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut w = Self::empty(strands);
        for l in letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::BraidIndex {
                    index: l.index,
                    strands,
                });
            }
            w.push(l);
        }
        Ok(w)
    }

    /// Word from signed indices: +i for β_i, −i for β_i⁻¹.
    pub fn from_signed(strands: usize, letters: &[i64]) -> Result<Self> {
        Self::new(
            strands,
            letters
                .iter()
                .map(|&k| Letter::new(k.unsigned_abs() as usize, k < 0)),
        )
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    /// Parses whitespace-separated tokens `s<k>` or `s<k>^-1`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (body, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let index = body
                .strip_prefix('s')
                .and_then(|k| k.parse::<usize>().ok())
                .ok_or_else(|| Error::BraidToken(tok.to_string()))?;
            letters.push(Letter::new(index, inverse));
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, o: &BraidWord) -> BraidWord {
        assert_eq!(
            self.strands, o.strands,
            "words on the same number of strands"
        );
        let mut w = self.clone();
        for &l in &o.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::empty(self.strands), |acc, _| acc.concat(&base))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("s{}^-1", l.index)
                } else {
                    format!("s{}", l.index)
                }
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check_strands(g: &GTuple, w: &BraidWord) -> Result<()> {
    if w.strands() != g.len() {
        return Err(Error::StrandMismatch {
            word: w.strands(),
            tuple: g.len(),
        });
    }
    Ok(())
}

/// Applies one letter to (entries, inverses) in place.
fn act_letter(mats: &mut [MatK], invs: &mut [MatK], l: Letter) {
    let i = l.index - 1;
    let (a, b) = (mats[i].clone(), mats[i + 1].clone());
    let (ai, bi) = (invs[i].clone(), invs[i + 1].clone());
    if !l.inverse {
        // (a, b) ↦ (b, b⁻¹ab)
        mats[i] = b.clone();
        invs[i] = bi.clone();
        mats[i + 1] = bi.mul(&a).mul(&b);
        invs[i + 1] = bi.mul(&ai).mul(&b);
    } else {
        // (a, b) ↦ (aba⁻¹, a)
        mats[i] = a.mul(&b).mul(&ai);
        invs[i] = a.mul(&bi).mul(&ai);
        mats[i + 1] = a;
        invs[i + 1] = ai;
    }
}

/// g^w, acting by the letters of w from left to right.
pub fn tuple_act(g: &GTuple, w: &BraidWord) -> Result<GTuple> {
    check_strands(g, w)?;
    let mut mats = g.mats().to_vec();
    let mut invs = g.invs().to_vec();
    for &l in w.letters() {
        act_letter(&mut mats, &mut invs, l);
    }
    Ok(GTuple::from_parts_unchecked(mats, invs))
}

/// Slots (v_i, v_{i+1}) after one letter β_i^{±1}.
///
/// For β_i they become (v_{i+1}, v_{i+1}(1 − g'_{i+1}) + v_i·g_{i+1}) with
/// g'_{i+1} = g_{i+1}⁻¹g_i g_{i+1} passed as `moved`. For β_i⁻¹ they become
/// ((v_i(g_{i+1} − 1) + v_{i+1})·g_i⁻¹, v_i), the inverse of the map for β_i at g^{β_i⁻¹};
/// `moved` is then unused.
pub fn push_pair(
    vi: &[CycNum],
    vj: &[CycNum],
    inverse: bool,
    gi_inv: &MatK,
    gj: &MatK,
    moved: &MatK,
) -> (Vector, Vector) {
    if !inverse {
        let a = sub_vec(vj, &MatK::vec_mul(vj, moved));
        let b = MatK::vec_mul(vi, gj);
        (vj.to_vec(), add_vec(&a, &b))
    } else {
        let a = sub_vec(&MatK::vec_mul(vi, gj), vi);
        (MatK::vec_mul(&add_vec(&a, vj), gi_inv), vi.to_vec())
    }
}

/// Applies Φ(g, β_i^{±1}) to a flat V^r vector in place.
fn push_vector(g_mats: &[MatK], g_invs: &[MatK], dim: usize, v: &mut [CycNum], l: Letter) {
    let i = l.index - 1;
    let (lo, hi) = (i * dim, (i + 1) * dim);
    let moved = if l.inverse {
        g_mats[i + 1].clone()
    } else {
        g_invs[i + 1].mul(&g_mats[i]).mul(&g_mats[i + 1])
    };
    let (new_i, new_j) = push_pair(
        &v[lo..hi],
        &v[hi..hi + dim],
        l.inverse,
        &g_invs[i],
        &g_mats[i + 1],
        &moved,
    );
    v[lo..hi].clone_from_slice(&new_i);
    v[hi..hi + dim].clone_from_slice(&new_j);
}

fn sub_vec(a: &[CycNum], b: &[CycNum]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_vec(a: &[CycNum], b: &[CycNum]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Pushes vectors of H_g along the word, returning their images in H_{g^w} and g^w.
pub fn push_vectors(g: &GTuple, w: &BraidWord, vs: &[Vector]) -> Result<(Vec<Vector>, GTuple)> {
    check_strands(g, w)?;
    let dim = g.dim();
    let mut mats = g.mats().to_vec();
    let mut invs = g.invs().to_vec();
    let mut out: Vec<Vector> = vs.to_vec();
    for &l in w.letters() {
        for v in out.iter_mut() {
            push_vector(&mats, &invs, dim, v, l);
        }
        act_letter(&mut mats, &mut invs, l);
    }
    Ok((out, GTuple::from_parts_unchecked(mats, invs)))
}

/// A linear map between parabolic spaces, given on H-coordinates (in the echelon bases
/// of H) and on W-coordinates (in the representative bases of W).
#[derive(Clone, Debug)]
pub struct CohMap {
    pub source: ParabolicSpace,
    pub target: ParabolicSpace,
    pub h_matrix: MatK,
    pub w_matrix: MatK,
}

impl CohMap {
    /// Builds the map from the images of the source H basis and W representatives,
    /// checking membership in the target and that E maps into E.
    fn from_images(
        source: &ParabolicSpace,
        target: ParabolicSpace,
        h_images: &[Vector],
        e_images: &[Vector],
        w_images: &[Vector],
    ) -> Result<CohMap> {
        let n = target.tuple().conductor();
        let total = target.tuple().total_dim();
        let hb = MatK::from_vectors(n, total, target.h_basis());
        let mut h_rows = Vec::with_capacity(h_images.len());
        for (k, v) in h_images.iter().enumerate() {
            let x = if target.dim_h() == 0 {
                v.iter().all(CycNum::is_zero).then(Vec::new)
            } else {
                solve(&hb, v)
            };
            let x = x.ok_or_else(|| {
                Error::Membership(format!(
                    "image of H basis vector {k} is not in the target H"
                ))
            })?;
            h_rows.push(x);
        }
        for (k, v) in e_images.iter().enumerate() {
            if !target.contains_e(v) {
                return Err(Error::Membership(format!(
                    "image of coboundary {k} is not a coboundary"
                )));
            }
        }
        let w_rows = w_images
            .iter()
            .map(|v| target.w_coords(v))
            .collect::<Result<Vec<_>>>()?;
        let h_matrix = MatK::from_vectors(n, target.dim_h(), &h_rows);
        let w_matrix = MatK::from_vectors(n, target.dim_w(), &w_rows);
        if w_matrix.rows() > 0 && w_matrix.rank() < w_matrix.rows() {
            return Err(Error::Membership(
                "induced map on W is not invertible".into(),
            ));
        }
        Ok(CohMap {
            source: source.clone(),
            target,
            h_matrix,
            w_matrix,
        })
    }

    pub fn identity(space: &ParabolicSpace) -> CohMap {
        let n = space.tuple().conductor();
        CohMap {
            source: space.clone(),
            target: space.clone(),
            h_matrix: MatK::identity(n, space.dim_h()),
            w_matrix: MatK::identity(n, space.dim_w()),
        }
    }

    /// First self, then o.
    pub fn then(&self, o: &CohMap) -> Result<CohMap> {
        if self.target.tuple() != o.source.tuple() {
            return Err(Error::Pipeline(
                "composed maps do not meet in the same space".into(),
            ));
        }
        if self.target.representatives() != o.source.representatives() {
            return Err(Error::Pipeline(
                "composed maps use different W bases".into(),
            ));
        }
        Ok(CohMap {
            source: self.source.clone(),
            target: o.target.clone(),
            h_matrix: self.h_matrix.mul(&o.h_matrix),
            w_matrix: self.w_matrix.mul(&o.w_matrix),
        })
    }
}

/// Φ(g, w) from `space` (a parabolic space of g) to the canonical space of g^w.
pub fn phi_word(space: &ParabolicSpace, w: &BraidWord) -> Result<CohMap> {
    let g = space.tuple();
    let (h_img, gw) = push_vectors(g, w, space.h_basis())?;
    let (e_img, _) = push_vectors(g, w, space.e_basis())?;
    let (w_img, _) = push_vectors(g, w, space.representatives())?;
    if cfg!(debug_assertions) {
        let (back, g0) = push_vectors(&gw, &w.inverse(), &w_img)?;
        debug_assert!(&g0 == g && back == space.representatives());
    }
    let target = ParabolicSpace::new(&gw);
    CohMap::from_images(space, target, &h_img, &e_img, &w_img)
}

/// Φ(g, β_i^{±1}) for a single generator.
pub fn phi_gen(space: &ParabolicSpace, index: usize, sign: i8) -> Result<CohMap> {
    let w = BraidWord::new(space.tuple().len(), [Letter::new(index, sign < 0)])?;
    let map = phi_word(space, &w)?;
    // the inverse letter at the moved tuple undoes the map on H
    let back = phi_word(&map.target, &w.inverse())?;
    if !map.h_matrix.mul(&back.h_matrix).is_identity() {
        return Err(Error::Membership(
            "generator and inverse generator maps are not mutually inverse".into(),
        ));
    }
    Ok(map)
}

/// v ↦ v·h applied to each slot of a flat V^r vector.
pub fn slotwise_mul(v: &[CycNum], dim: usize, h: &MatK) -> Vector {
    v.chunks(dim).flat_map(|s| MatK::vec_mul(s, h)).collect()
}

/// Ψ(g, h): v ↦ v·h slotwise, from `source` (a space of (h g_i h⁻¹)_i) to `target`
/// (a space of g).
pub fn psi_between(source: &ParabolicSpace, target: &ParabolicSpace, h: &MatK) -> Result<CohMap> {
    let expected = target.tuple().conjugate_by(h)?;
    if &expected != source.tuple() {
        return Err(Error::Pipeline(
            "source tuple of the twist map is not the conjugate of the target by h".into(),
        ));
    }
    let dim = target.tuple().dim();
    let map =
        |vs: &[Vector]| -> Vec<Vector> { vs.iter().map(|v| slotwise_mul(v, dim, h)).collect() };
    CohMap::from_images(
        source,
        target.clone(),
        &map(source.h_basis()),
        &map(source.e_basis()),
        &map(source.representatives()),
    )
}

/// Ψ(g, h) with the canonical space of (h g_i h⁻¹)_i as source and that of g as target.
pub fn psi(g: &GTuple, h: &MatK) -> Result<CohMap> {
    let source = ParabolicSpace::new(&g.conjugate_by(h)?);
    psi_between(&source, &ParabolicSpace::new(g), h)
}

/// A braid move: a word and a twisting element with g^w = (h g_i h⁻¹)_i.
#[derive(Clone, Debug)]
pub struct Move {
    pub word: BraidWord,
    pub h: MatK,
}

/// η_j = Φ̄(g, w_j)·Ψ̄(g, h_j) on W_g, in the representative basis of `space`.
pub fn monodromy(space: &ParabolicSpace, moves: &[Move]) -> Result<Vec<MatK>> {
    let g = space.tuple();
    moves
        .iter()
        .enumerate()
        .map(|(j, mv)| {
            let moved = tuple_act(g, &mv.word)?;
            if moved != g.conjugate_by(&mv.h)? {
                return Err(Error::Compatibility(j));
            }
            let phi = phi_word(space, &mv.word)?;
            let psi = psi_between(&phi.target, space, &mv.h)?;
            Ok(phi.then(&psi)?.w_matrix)
        })
        .collect()
}

/// One entry of a moves file: a braid word and either a matrix or "identity".
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MoveSpec {
    pub w: String,
    pub h: TwistSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TwistSpec {
    Named(String),
    Matrix(MatK),
}

impl MoveSpec {
    pub fn resolve(&self, g: &GTuple) -> Result<Move> {
        let word = BraidWord::parse(&self.w, g.len())?;
        let h = match &self.h {
            TwistSpec::Named(s) if s == "identity" => MatK::identity(g.conductor(), g.dim()),
            TwistSpec::Named(s) => return Err(Error::Parse(format!("unknown twist `{s}`"))),
            TwistSpec::Matrix(m) => m.clone(),
        };
        Ok(Move { word, h })
    }
}
