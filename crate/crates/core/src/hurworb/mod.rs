//! Nielsen classes, braid orbits on them, the induced cover of the j-line, and
//! generators of the stabilizer around its cusps.
//!
//! Tuples are sequences of element indices of a [`FiniteMatrixGroup`]; all work here
//! goes through the Cayley table.

mod bmat;
mod cusps;
mod free;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use crate::braidact::{BraidWord, Letter};
use crate::error::{Error, Result};
use crate::fingrp::FiniteMatrixGroup;

pub use bmat::{b_matrix, bmatrices, BMatrices};
pub use cusps::{cusp_generators, CuspGenerators, EllipticGenerator};
pub use free::{product, stallings_index, FreeWord, D0, DINF};

/// A tuple of group-element indices.
pub type Tuple = Vec<usize>;

/// A (reduced) Nielsen class, stored as its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NielsenClass {
    pub rep: Tuple,
    pub reduced: bool,
}

/// Applies one letter to an index tuple in place.
pub fn act_letter(g: &FiniteMatrixGroup, t: &mut [usize], l: Letter) {
    let i = l.index - 1;
    let (a, b) = (t[i], t[i + 1]);
    if !l.inverse {
        t[i] = b;
        t[i + 1] = g.conj(a, b);
    } else {
        t[i] = g.conj(b, g.inv(a));
        t[i + 1] = a;
    }
}

/// The tuple acted on by a braid word, letters applied left to right.
pub fn act_word(g: &FiniteMatrixGroup, t: &[usize], w: &BraidWord) -> Tuple {
    let mut out = t.to_vec();
    for &l in w.letters() {
        act_letter(g, &mut out, l);
    }
    out
}

/// The four elements of Q = ⟨β₁β₃⁻¹, (β₁β₂β₃)²⟩, as words on four strands.
pub fn q_words() -> [BraidWord; 4] {
    let a = BraidWord::from_signed(4, &[1, -3]).expect("valid");
    let b = BraidWord::from_signed(4, &[1, 2, 3, 1, 2, 3]).expect("valid");
    let ab = a.concat(&b);
    [BraidWord::empty(4), a, b, ab]
}

/// Tuple product g_1⋯g_r.
pub fn tuple_product(g: &FiniteMatrixGroup, t: &[usize]) -> usize {
    t.iter().fold(g.identity(), |acc, &x| g.mul(acc, x))
}

/// Canonical forms of tuples up to simultaneous conjugation (and Q).
///
/// Only conjugators sending the first entry to the minimum of its class can produce
/// the lexicographic minimum, so those are precomputed per element.
pub struct Canonizer<'a> {
    group: &'a FiniteMatrixGroup,
    transporters: Vec<Vec<u32>>,
    q: [BraidWord; 4],
}

impl<'a> Canonizer<'a> {
    pub fn new(group: &'a FiniteMatrixGroup) -> Self {
        let transporters = (0..group.order())
            .map(|x| {
                let min = group.classes()[group.class_of(x)][0];
                (0..group.order())
                    .filter(|&h| group.conj(x, h) == min)
                    .map(|h| h as u32)
                    .collect()
            })
            .collect();
        Canonizer {
            group,
            transporters,
            q: q_words(),
        }
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        self.group
    }

    fn min_conjugate(&self, t: &[usize], best: &mut Option<Tuple>) {
        let g = self.group;
        'h: for &h in &self.transporters[t[0]] {
            let h = h as usize;
            if let Some(b) = best.as_mut() {
                // compare lazily, stopping at the first larger entry
                let mut smaller = false;
                let mut conj = Vec::with_capacity(t.len());
                for (k, &x) in t.iter().enumerate() {
                    let y = g.conj(x, h);
                    conj.push(y);
                    if !smaller {
                        if y > b[k] {
                            continue 'h;
                        }
                        smaller = y < b[k];
                    }
                }
                if smaller {
                    *b = conj;
                }
            } else {
                *best = Some(t.iter().map(|&x| g.conj(x, h)).collect());
            }
        }
    }

    /// Canonical representative without validation.
    pub fn canonical(&self, t: &[usize], reduced: bool) -> Tuple {
        let mut best = None;
        if reduced && t.len() == 4 {
            for q in &self.q {
                self.min_conjugate(&act_word(self.group, t, q), &mut best);
            }
        } else {
            self.min_conjugate(t, &mut best);
        }
        best.expect("every element has a transporter")
    }

    /// Checks product one and generation, then canonicalizes.
    pub fn class_of(&self, t: &[usize], reduced: bool) -> Result<NielsenClass> {
        let g = self.group;
        if t.iter().any(|&x| x >= g.order()) {
            return Err(Error::Shape(format!(
                "tuple entry out of range for a group of order {}",
                g.order()
            )));
        }
        if tuple_product(g, t) != g.identity() {
            return Err(Error::ProductNotIdentity);
        }
        if !g.subgroup_generates(t) {
            return Err(Error::NotGenerating);
        }
        Ok(NielsenClass {
            rep: self.canonical(t, reduced),
            reduced: reduced && t.len() == 4,
        })
    }
}

/// Canonical form of the (reduced) Nielsen class of a tuple.
pub fn nielsen_canonical(
    g: &FiniteMatrixGroup,
    t: &[usize],
    reduced: bool,
) -> Result<NielsenClass> {
    Canonizer::new(g).class_of(t, reduced)
}

/// Distinct orderings of a sorted multiset, in lexicographic order.
fn arrangements(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len())
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// All class sequences realizing the type: images of the multiset under x ↦ x^n
/// with n prime to |G|, in every order.
pub fn type_closure(g: &FiniteMatrixGroup, classes: &[usize]) -> Vec<Vec<usize>> {
    let exponent = (0..g.order()).fold(1u64, |acc, x| acc.lcm(&(g.elem_order(x) as u64)));
    let mut multisets = BTreeSet::new();
    for n in 1..=exponent {
        if n.gcd(&(g.order() as u64)) != 1 {
            continue;
        }
        let mut m: Vec<usize> = classes
            .iter()
            .map(|&c| g.class_of(g.pow(g.classes()[c][0], n as i64)))
            .collect();
        m.sort_unstable();
        multisets.insert(m);
    }
    let mut out = BTreeSet::new();
    for m in multisets {
        out.extend(arrangements(&m));
    }
    out.into_iter().collect()
}

/// All (reduced) Nielsen classes of the given type, sorted.
///
/// Work is split over `threads` scoped threads; the merge is a sorted set, so the
/// result does not depend on the split.
pub fn enumerate_type(
    g: &FiniteMatrixGroup,
    classes: &[usize],
    reduced: bool,
    threads: usize,
) -> Result<Vec<NielsenClass>> {
    if let Some(&c) = classes.iter().find(|&&c| c >= g.classes().len()) {
        return Err(Error::Shape(format!("class index {c} out of range")));
    }
    if classes.len() < 2 {
        return Err(Error::TooFewEntries(classes.len()));
    }
    let canon = Canonizer::new(g);
    let seqs = type_closure(g, classes);
    let threads = threads.max(1).min(seqs.len().max(1));
    let mut found: BTreeSet<Tuple> = BTreeSet::new();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|k| {
                let canon = &canon;
                let seqs = &seqs;
                s.spawn(move || {
                    let mut local = BTreeSet::new();
                    for seq in seqs.iter().skip(k).step_by(threads) {
                        enumerate_sequence(canon, seq, reduced, &mut local);
                    }
                    local
                })
            })
            .collect();
        for h in handles {
            found.extend(h.join().expect("enumeration thread"));
        }
    });
    Ok(found
        .into_iter()
        .map(|rep| NielsenClass {
            reduced: reduced && rep.len() == 4,
            rep,
        })
        .collect())
}

fn enumerate_sequence(canon: &Canonizer, seq: &[usize], reduced: bool, out: &mut BTreeSet<Tuple>) {
    let g = canon.group;
    let r = seq.len();
    // up to conjugation the first entry is the minimum of its class
    let mut t = vec![g.classes()[seq[0]][0]];
    fn rec(
        canon: &Canonizer,
        seq: &[usize],
        reduced: bool,
        t: &mut Vec<usize>,
        prod: usize,
        out: &mut BTreeSet<Tuple>,
    ) {
        let g = canon.group;
        let r = seq.len();
        if t.len() == r - 1 {
            let last = g.inv(prod);
            if g.class_of(last) != seq[r - 1] {
                return;
            }
            t.push(last);
            if g.subgroup_generates(t) {
                out.insert(canon.canonical(t, reduced));
            }
            t.pop();
            return;
        }
        for &x in &g.classes()[seq[t.len()]] {
            t.push(x);
            rec(canon, seq, reduced, t, g.mul(prod, x), out);
            t.pop();
        }
    }
    if r == 1 {
        return;
    }
    let first = t[0];
    rec(canon, seq, reduced, &mut t, first, out);
}

/// Permutations of δ₀ = β̄₁β̄₂, δ∞ = β̄₁ and δ₁₇₂₈ = β̄₁β̄₂β̄₁ on an orbit of reduced
/// classes of 4-tuples.
#[derive(Clone, Debug, Serialize)]
pub struct Deltas {
    pub d0: Vec<usize>,
    pub dinf: Vec<usize>,
    pub d1728: Vec<usize>,
}

/// An orbit of the braid group on (reduced) Nielsen classes.
#[derive(Clone, Debug, Serialize)]
pub struct NielsenOrbit {
    pub points: Vec<NielsenClass>,
    /// beta[i][x]: image of point x under β̄_{i+1}.
    pub beta: Vec<Vec<usize>>,
    pub deltas: Option<Deltas>,
    pub base: usize,
}

/// Composition acting on the right: first a, then b.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

pub fn invert(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (x, &y) in a.iter().enumerate() {
        out[y] = x;
    }
    out
}

pub fn is_identity_perm(a: &[usize]) -> bool {
    a.iter().enumerate().all(|(x, &y)| x == y)
}

/// Cycles of a permutation, each starting at its smallest point, ordered by that point.
pub fn cycles(a: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for x in 0..a.len() {
        if seen[x] {
            continue;
        }
        let mut c = vec![x];
        seen[x] = true;
        let mut y = a[x];
        while y != x {
            seen[y] = true;
            c.push(y);
            y = a[y];
        }
        out.push(c);
    }
    out
}

/// One-line notation with points counted from 1.
pub fn one_line(a: &[usize]) -> String {
    let v: Vec<String> = a.iter().map(|x| (x + 1).to_string()).collect();
    format!("[{}]", v.join(" "))
}

/// Breadth-first closure of the seed class under β̄₁, …, β̄_{r−1}.
pub fn braid_orbit(g: &FiniteMatrixGroup, seed: &[usize], reduced: bool) -> Result<NielsenOrbit> {
    let canon = Canonizer::new(g);
    let first = canon.class_of(seed, reduced)?;
    let reduced = first.reduced;
    let r = seed.len();
    let mut points = vec![first.clone()];
    let mut index: HashMap<Tuple, usize> = HashMap::from([(first.rep, 0)]);
    let mut beta: Vec<Vec<usize>> = vec![Vec::new(); r.saturating_sub(1)];
    let mut q = VecDeque::from([0usize]);
    while let Some(x) = q.pop_front() {
        for (i, perm) in beta.iter_mut().enumerate() {
            let mut t = points[x].rep.clone();
            act_letter(g, &mut t, Letter::new(i + 1, false));
            let c = canon.canonical(&t, reduced);
            let y = match index.get(&c) {
                Some(&y) => y,
                None => {
                    let y = points.len();
                    index.insert(c.clone(), y);
                    points.push(NielsenClass { rep: c, reduced });
                    q.push_back(y);
                    y
                }
            };
            if perm.len() <= x {
                perm.resize(x + 1, usize::MAX);
            }
            perm[x] = y;
        }
    }
    for perm in beta.iter_mut() {
        perm.resize(points.len(), usize::MAX);
    }
    let deltas = (reduced && r == 4).then(|| {
        let d0 = compose(&beta[0], &beta[1]);
        let d1728 = compose(&d0, &beta[0]);
        Deltas {
            d0,
            dinf: beta[0].clone(),
            d1728,
        }
    });
    Ok(NielsenOrbit {
        points,
        beta,
        deltas,
        base: 0,
    })
}

impl NielsenOrbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same orbit with another base point.
    pub fn rebased(&self, base: usize) -> NielsenOrbit {
        NielsenOrbit {
            base,
            ..self.clone()
        }
    }

    /// Permutation of a braid word on four strands (or fewer letters on r strands).
    pub fn perm_of(&self, w: &BraidWord) -> Vec<usize> {
        let inv: Vec<Vec<usize>> = self.beta.iter().map(|p| invert(p)).collect();
        (0..self.len())
            .map(|x| {
                w.letters().iter().fold(x, |y, l| {
                    if l.inverse {
                        inv[l.index - 1][y]
                    } else {
                        self.beta[l.index - 1][y]
                    }
                })
            })
            .collect()
    }

    /// Graphviz source of the orbit graph with edges for β̄₁, …, β̄_{r−1}.
    pub fn to_dot(&self) -> String {
        let colors = ["red", "blue", "darkgreen", "orange", "purple"];
        let mut s = String::from("digraph orbit {\n");
        for (x, p) in self.points.iter().enumerate() {
            let _ = writeln!(s, "  {x} [label=\"{x}: {:?}\"];", p.rep);
        }
        for (i, perm) in self.beta.iter().enumerate() {
            for (x, &y) in perm.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  {x} -> {y} [label=\"b{}\", color={}];",
                    i + 1,
                    colors[i % colors.len()]
                );
            }
        }
        s.push_str("}\n");
        s
    }
}

/// A cusp: a cycle of δ∞.
#[derive(Clone, Debug, Serialize)]
pub struct Cusp {
    pub width: usize,
    pub point: usize,
}

/// Ramification data of the cover of the j-line given by an orbit.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub degree: usize,
    pub cusps: Vec<Cusp>,
    pub genus: i64,
    pub fixed_points_d0: usize,
    pub fixed_points_d1728: usize,
    pub cycle_type_d0: Vec<usize>,
    pub cycle_type_d1728: Vec<usize>,
}

impl CoverReport {
    pub fn widths(&self) -> Vec<usize> {
        self.cusps.iter().map(|c| c.width).collect()
    }
}

fn cycle_type(a: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = cycles(a).iter().map(Vec::len).collect();
    t.sort_unstable();
    t
}

/// Cusps and genus by Riemann–Hurwitz over the three branch points 0, 1728, ∞.
pub fn cover_analysis(orbit: &NielsenOrbit) -> Result<CoverReport> {
    let d = orbit.deltas.as_ref().ok_or_else(|| {
        Error::Pipeline("cover analysis needs an orbit of reduced classes of 4-tuples".into())
    })?;
    let n = orbit.len();
    if !is_identity_perm(&compose(&compose(&d.d0, &d.dinf), &d.d1728)) {
        return Err(Error::Pipeline("d0·dinf·d1728 is not the identity".into()));
    }
    let ram: usize = [&d.d0, &d.dinf, &d.d1728]
        .iter()
        .map(|p| cycles(p).iter().map(|c| c.len() - 1).sum::<usize>())
        .sum();
    let chi = 2 * n as i64 - ram as i64;
    if chi % 2 != 0 || chi > 2 {
        return Err(Error::Pipeline(format!(
            "Riemann-Hurwitz gives 2 - 2g = {chi}"
        )));
    }
    let cusps = cycles(&d.dinf)
        .into_iter()
        .map(|c| Cusp {
            width: c.len(),
            point: c[0],
        })
        .collect();
    Ok(CoverReport {
        degree: n,
        cusps,
        genus: (2 - chi) / 2,
        fixed_points_d0: (0..n).filter(|&x| d.d0[x] == x).count(),
        fixed_points_d1728: (0..n).filter(|&x| d.d1728[x] == x).count(),
        cycle_type_d0: cycle_type(&d.d0),
        cycle_type_d1728: cycle_type(&d.d1728),
    })
}

/// Parses a type such as "2a0,2a0,3a1,3a2" into class indices.
pub fn parse_type(g: &FiniteMatrixGroup, spec: &str) -> Result<Vec<usize>> {
    spec.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|lab| {
            g.class_by_label(lab).ok_or_else(|| {
                let known = g.class_labels().join(", ");
                Error::Parse(format!("unknown class label `{lab}` (classes: {known})"))
            })
        })
        .collect()
}

/// Orbit summary for output: size, generator permutations and cover data.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub size: usize,
    pub enumerated: usize,
    pub transitive: bool,
    pub generators: Vec<String>,
    pub cover: Option<CoverReport>,
    pub cusps: Vec<CuspRow>,
    /// Why cusp generators are missing, when they could not be lifted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cusp_note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspRow {
    pub width: usize,
    pub word: String,
    pub braid_word: String,
    pub h: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::MatK;
    use crate::exactnum::CycNum;
    use crate::fingrp::group_closure;

    fn c3() -> FiniteMatrixGroup {
        group_closure(&[MatK::scalar(1, &CycNum::omega())], 10).unwrap()
    }

    fn s3() -> FiniteMatrixGroup {
        let a = MatK::from_ints(1, &[&[0, 1], &[1, 0]]).unwrap();
        let b = MatK::from_ints(1, &[&[0, 1], &[-1, -1]]).unwrap();
        group_closure(&[a, b], 10).unwrap()
    }

    #[test]
    fn arrangements_of_multiset() {
        assert_eq!(
            arrangements(&[0, 0, 1]),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        assert_eq!(arrangements(&[0, 0, 1, 2]).len(), 12);
    }

    #[test]
    fn c3_five_tuples() {
        let g = c3();
        let s = (0..3)
            .find(|&x| g.element(x) == &MatK::scalar(1, &CycNum::omega()))
            .unwrap();
        let s2 = g.mul(s, s);
        let t = vec![s, s, s, s, s2];
        let (cs, cs2) = (g.class_of(s), g.class_of(s2));
        let all = enumerate_type(&g, &[cs, cs, cs, cs, cs2], false, 2).unwrap();
        // σ ↦ σ² swaps the two kinds; five positions for the odd entry each
        assert_eq!(all.len(), 10);
        let orbit = braid_orbit(&g, &t, false).unwrap();
        assert_eq!(orbit.len(), 5);
        assert!(orbit.deltas.is_none());
    }

    #[test]
    fn canonical_is_conjugation_invariant() {
        let g = s3();
        let canon = Canonizer::new(&g);
        let inv: Vec<usize> = (0..6).filter(|&x| g.elem_order(x) == 2).collect();
        let t = vec![inv[0], inv[1], inv[1], inv[0]];
        assert_eq!(tuple_product(&g, &t), g.identity());
        let c = canon.canonical(&t, true);
        for h in 0..6 {
            let u: Tuple = t.iter().map(|&x| g.conj(x, h)).collect();
            assert_eq!(canon.canonical(&u, true), c);
            for q in q_words() {
                assert_eq!(canon.canonical(&act_word(&g, &u, &q), true), c);
            }
        }
        assert!(matches!(
            canon.class_of(&[inv[0], inv[1], inv[0], inv[1]], true),
            Err(Error::ProductNotIdentity)
        ));
        assert!(matches!(
            canon.class_of(&[inv[0]; 4], true),
            Err(Error::NotGenerating)
        ));
    }

    #[test]
    fn s3_involution_quadruples() {
        let g = s3();
        let c = g.class_of((0..6).find(|&x| g.elem_order(x) == 2).unwrap());
        let all = enumerate_type(&g, &[c; 4], true, 1).unwrap();
        let orbit = braid_orbit(&g, &all[0].rep, true).unwrap();
        let mut reps: Vec<Tuple> = orbit.points.iter().map(|p| p.rep.clone()).collect();
        reps.sort();
        let mut expect: Vec<Tuple> = all.iter().map(|p| p.rep.clone()).collect();
        expect.sort();
        assert_eq!(reps, expect);
        let cover = cover_analysis(&orbit).unwrap();
        assert_eq!(cover.widths().iter().sum::<usize>(), orbit.len());
        assert!(cover.genus >= 0);
    }

    #[test]
    fn impossible_type_is_empty() {
        let g = c3();
        let s = (0..3).find(|&x| x != g.identity()).unwrap();
        let c = g.class_of(s);
        // three equal entries of order 3 multiply to 1 but σ,σ,σ,σ does not
        assert!(enumerate_type(&g, &[c; 4], false, 1).unwrap().is_empty());
    }
}
