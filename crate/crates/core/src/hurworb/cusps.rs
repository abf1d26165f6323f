//! Generators of the stabilizer of the base point around the punctures of the cover.
//!
//! The cover of C − {0, 1728} is triangulated: each point x carries the triangle with
//! edges x →δ₀ xδ₀ →δ∞ xδ₀δ∞ →δ₁₇₂₈ x, and each cycle of δ_c bounds a punctured disk
//! (a c-face) traversed against its edges. Gluing all faces along a depth-first tree
//! in the dual graph gives a disk whose boundary is the contour of a tree, so the
//! product of the face lassos in post-order freely reduces to 1. Triangle lassos are
//! trivial, leaving one lasso per puncture with product one.

use serde::Serialize;

use super::free::{product, stallings_index, FreeWord, D0, DINF};
use super::{act_word, invert, q_words, NielsenOrbit, Tuple};
use crate::braidact::BraidWord;
use crate::error::{Error, Result};
use crate::fingrp::FiniteMatrixGroup;

/// A generator around an elliptic point (a cycle of δ₀ or δ₁₇₂₈).
#[derive(Clone, Debug, Serialize)]
pub struct EllipticGenerator {
    pub word: FreeWord,
    pub over: u32,
    pub length: usize,
    pub braid_word: BraidWord,
    pub correction: usize,
    pub twist: usize,
}

/// Loops around the cusps with their braid lifts and twisting elements.
#[derive(Clone, Debug, Serialize)]
pub struct CuspGenerators {
    pub base: usize,
    pub tuple: Tuple,
    pub words: Vec<FreeWord>,
    pub widths: Vec<usize>,
    /// Smallest point of each cusp cycle.
    pub points: Vec<usize>,
    pub braid_words: Vec<BraidWord>,
    /// Index into [`q_words`] of the element appended to the substituted word.
    pub corrections: Vec<usize>,
    pub twists: Vec<usize>,
    pub elliptic: Vec<EllipticGenerator>,
    /// The product of all generators, cusps and elliptic ones in emitted order, is 1.
    pub product_trivial: bool,
    /// Index of the subgroup they generate; equal to the orbit size when they
    /// generate the whole stabilizer.
    pub stabilizer_index: Option<usize>,
}

struct Surface<'a> {
    n: usize,
    s: [&'a [usize]; 3],
    s0_inv: Vec<usize>,
    cycles: Vec<(usize, Vec<usize>)>,
    // per kind: cycle face id and position of each point
    face_of: [Vec<usize>; 3],
    pos_of: [Vec<usize>; 3],
}

struct Step {
    letters: &'static [i8],
    other: usize,
    other_pos: usize,
}

const FORWARD: [&[i8]; 3] = [&[D0], &[DINF], &[-DINF, -D0]];
const BACKWARD: [&[i8]; 3] = [&[-D0], &[-DINF], &[D0, DINF]];

impl<'a> Surface<'a> {
    fn new(d0: &'a [usize], dinf: &'a [usize], d1728: &'a [usize]) -> Self {
        let n = d0.len();
        let s = [d0, dinf, d1728];
        let mut cycles = Vec::new();
        let mut face_of = [vec![0; n], vec![0; n], vec![0; n]];
        let mut pos_of = [vec![0; n], vec![0; n], vec![0; n]];
        for (c, perm) in s.iter().enumerate() {
            for cyc in super::cycles(perm) {
                let id = n + cycles.len();
                for (j, &y) in cyc.iter().enumerate() {
                    face_of[c][y] = id;
                    pos_of[c][y] = j;
                }
                cycles.push((c, cyc));
            }
        }
        Surface {
            n,
            s,
            s0_inv: invert(d0),
            cycles,
            face_of,
            pos_of,
        }
    }

    fn faces(&self) -> usize {
        self.n + self.cycles.len()
    }

    fn len(&self, face: usize) -> usize {
        if face < self.n {
            3
        } else {
            self.cycles[face - self.n].1.len()
        }
    }

    fn step(&self, face: usize, k: usize) -> Step {
        if face < self.n {
            let x = face;
            let verts = [x, self.s[0][x], self.s[1][self.s[0][x]]];
            let y = verts[k];
            let other = self.face_of[k][y];
            let l = self.len(other);
            // the c-face walks backwards; edge (cyc[j], c) is its step −j−1 mod L
            let other_pos = (2 * l - self.pos_of[k][y] - 1) % l;
            Step {
                letters: FORWARD[k],
                other,
                other_pos,
            }
        } else {
            let (c, cyc) = &self.cycles[face - self.n];
            let l = cyc.len();
            let y = cyc[(2 * l - k - 1) % l];
            let (tri, pos) = match c {
                0 => (y, 0),
                1 => (self.s0_inv[y], 1),
                _ => (self.s[2][y], 2),
            };
            Step {
                letters: BACKWARD[*c],
                other: tri,
                other_pos: pos,
            }
        }
    }

    /// Depth-first gluing from `face`, whose walk starts at step `start` with
    /// `path` leading from the base point to the start vertex; lassos are pushed in
    /// post-order.
    fn visit(
        &self,
        face: usize,
        start: usize,
        path: &FreeWord,
        visited: &mut [bool],
        out: &mut Vec<(usize, FreeWord)>,
    ) {
        let len = self.len(face);
        let mut p = path.clone();
        let mut boundary = FreeWord::empty();
        for i in 0..len {
            let st = self.step(face, (start + i) % len);
            if !visited[st.other] {
                visited[st.other] = true;
                let child_start = (st.other_pos + 1) % self.len(st.other);
                self.visit(st.other, child_start, &p, visited, out);
            }
            for &l in st.letters {
                p.push(l);
                boundary.push(l);
            }
        }
        out.push((face, boundary.conjugate(path)));
    }
}

fn lift(
    g: &FiniteMatrixGroup,
    tuple: &[usize],
    word: &FreeWord,
    qs: &[BraidWord; 4],
) -> Result<(BraidWord, usize, usize)> {
    let base = word.to_braid();
    let mut found = None;
    for (k, q) in qs.iter().enumerate() {
        let w = base.concat(q);
        let moved = act_word(g, tuple, &w);
        if let Some(h) = g.find_conjugator(&moved, tuple) {
            if found.is_some() {
                return Err(Error::Pipeline(format!(
                    "two lifts of {word} fix the class of the base tuple"
                )));
            }
            found = Some((w, k, h));
        }
    }
    found.ok_or_else(|| {
        Error::Pipeline(format!(
            "no lift of {word} fixes the class of the base tuple"
        ))
    })
}

/// Cusp and elliptic generators of the stabilizer of the base point, with braid lifts
/// and twisting elements for the base tuple.
///
/// Each word is u·δ∞^w·u⁻¹ (or u·δ_c^ℓ·u⁻¹ for elliptic points) fixing the base point;
/// the emitted order has product one. The substituted braid word is completed by the
/// unique element of Q for which the base tuple is moved to a conjugate of itself, and
/// h_j satisfies g^{γ′_j} = (h_j g_i h_j⁻¹)_i.
pub fn cusp_generators(g: &FiniteMatrixGroup, orbit: &NielsenOrbit) -> Result<CuspGenerators> {
    let d = orbit.deltas.as_ref().ok_or_else(|| {
        Error::Pipeline("cusp generators need an orbit of reduced classes of 4-tuples".into())
    })?;
    let surf = Surface::new(&d.d0, &d.dinf, &d.d1728);
    let base = orbit.base;
    let mut visited = vec![false; surf.faces()];
    visited[base] = true;
    let mut lassos = Vec::new();
    surf.visit(base, 0, &FreeWord::empty(), &mut visited, &mut lassos);
    if visited.iter().any(|v| !v) {
        return Err(Error::Pipeline(
            "the faces of the cover are not connected".into(),
        ));
    }
    let (d0_inv, dinf_inv) = (invert(&d.d0), invert(&d.dinf));
    let tuple = orbit.points[base].rep.clone();
    let qs = q_words();
    let mut out = CuspGenerators {
        base,
        tuple: tuple.clone(),
        words: vec![],
        widths: vec![],
        points: vec![],
        braid_words: vec![],
        corrections: vec![],
        twists: vec![],
        elliptic: vec![],
        product_trivial: false,
        stabilizer_index: None,
    };
    let mut all = Vec::new();
    // inverses in reverse order: loops positively around the punctures
    for (face, lasso) in lassos.into_iter().rev() {
        if face < surf.n {
            continue;
        }
        let gamma = lasso.inverse();
        if gamma.act(base, &d.d0, &d0_inv, &d.dinf, &dinf_inv) != base {
            return Err(Error::Pipeline(format!(
                "generator {gamma} does not fix the base point"
            )));
        }
        let (c, cyc) = &surf.cycles[face - surf.n];
        let (bw, k, h) = lift(g, &tuple, &gamma, &qs)?;
        if *c == 1 {
            out.words.push(gamma.clone());
            out.widths.push(cyc.len());
            out.points.push(cyc[0]);
            out.braid_words.push(bw);
            out.corrections.push(k);
            out.twists.push(h);
        } else {
            out.elliptic.push(EllipticGenerator {
                word: gamma.clone(),
                over: if *c == 0 { 0 } else { 1728 },
                length: cyc.len(),
                braid_word: bw,
                correction: k,
                twist: h,
            });
        }
        all.push(gamma);
    }
    out.product_trivial = product(&all).is_empty();
    out.stabilizer_index = stallings_index(&all);
    Ok(out)
}
