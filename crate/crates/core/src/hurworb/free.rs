//! Words in the free group ⟨δ₀, δ∞⟩ and Stallings folding.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::braidact::{BraidWord, Letter};

/// Letter code for δ₀; δ∞ is [`DINF`] and negatives denote inverses.
pub const D0: i8 = 1;
pub const DINF: i8 = 2;

/// A freely reduced word in δ₀^{±1}, δ∞^{±1}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord(Vec<i8>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(vec![])
    }

    pub fn from_letters(letters: &[i8]) -> Self {
        let mut w = Self::empty();
        for &l in letters {
            w.push(l);
        }
        w
    }

    pub fn push(&mut self, l: i8) {
        debug_assert!(matches!(l.abs(), D0 | DINF));
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &o.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    /// u·self·u⁻¹.
    pub fn conjugate(&self, u: &FreeWord) -> FreeWord {
        u.mul(self).mul(&u.inverse())
    }

    /// Image of a point under the word, acting on the right through the
    /// permutations of δ₀ and δ∞ and their inverses.
    pub fn act(
        &self,
        x: usize,
        d0: &[usize],
        d0_inv: &[usize],
        dinf: &[usize],
        dinf_inv: &[usize],
    ) -> usize {
        self.0.iter().fold(x, |y, &l| match l {
            1 => d0[y],
            -1 => d0_inv[y],
            2 => dinf[y],
            _ => dinf_inv[y],
        })
    }

    /// The braid word under δ∞ ↦ β₁, δ₀ ↦ β₁β₂ on four strands.
    pub fn to_braid(&self) -> BraidWord {
        let mut letters = Vec::with_capacity(2 * self.0.len());
        for &l in &self.0 {
            match l {
                2 => letters.push(Letter::new(1, false)),
                -2 => letters.push(Letter::new(1, true)),
                1 => letters.extend([Letter::new(1, false), Letter::new(2, false)]),
                _ => letters.extend([Letter::new(2, true), Letter::new(1, true)]),
            }
        }
        BraidWord::new(4, letters).expect("indices 1 and 2 exist on four strands")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<&str> = self
            .0
            .iter()
            .map(|&l| match l {
                1 => "d0",
                -1 => "d0^-1",
                2 => "dinf",
                _ => "dinf^-1",
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        true
    }
}

/// Index of the subgroup of ⟨δ₀, δ∞⟩ generated by the words, when it is finite.
///
/// The words are folded into their Stallings graph; the index is finite exactly when
/// the folded graph is a covering (every vertex has one incoming and one outgoing edge
/// per letter), and it then equals the number of vertices.
pub fn stallings_index(words: &[FreeWord]) -> Option<usize> {
    // edges (u, letter, v): u → v labelled δ₀ (0) or δ∞ (1)
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut nv = 1;
    for w in words {
        let mut cur = 0;
        for (k, &l) in w.letters().iter().enumerate() {
            let next = if k + 1 == w.len() {
                0
            } else {
                nv += 1;
                nv - 1
            };
            let a = (l.unsigned_abs() - 1) as usize;
            if l > 0 {
                edges.push((cur, a, next));
            } else {
                edges.push((next, a, cur));
            }
            cur = next;
        }
    }
    let mut uf = UnionFind((0..nv).collect());
    loop {
        let mut changed = false;
        let mut out: HashMap<(usize, usize), usize> = HashMap::new();
        let mut inc: HashMap<(usize, usize), usize> = HashMap::new();
        for &(u, a, v) in &edges {
            let (u, v) = (uf.find(u), uf.find(v));
            if let Some(&t) = out.get(&(u, a)) {
                changed |= uf.union(t, v);
            } else {
                out.insert((u, a), v);
            }
            let v = uf.find(v);
            if let Some(&s) = inc.get(&(v, a)) {
                changed |= uf.union(s, u);
            } else {
                inc.insert((v, a), u);
            }
        }
        if !changed {
            let mut roots: Vec<usize> = (0..nv).map(|x| uf.find(x)).collect();
            roots.sort_unstable();
            roots.dedup();
            let complete = roots
                .iter()
                .all(|&r| (0..2).all(|a| out.contains_key(&(r, a)) && inc.contains_key(&(r, a))));
            return complete.then_some(roots.len());
        }
    }
}

/// Free reduction of a concatenation of words.
pub fn product(words: &[FreeWord]) -> FreeWord {
    words.iter().fold(FreeWord::empty(), |acc, w| acc.mul(w))
}
