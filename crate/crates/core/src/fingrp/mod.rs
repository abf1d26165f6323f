//! Finite matrix groups by breadth-first closure, with index-based tables.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::MatK;
use crate::exactnum::CycNum;

/// A finite group of matrices with multiplication, inverse and class tables.
///
/// Elements are sorted canonically, so indices are reproducible across runs.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    elements: Vec<MatK>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    gens: Vec<usize>,
    orders: Vec<u32>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    center: Vec<usize>,
    derived: Vec<usize>,
    labels: Vec<String>,
    cosets: Vec<Option<u32>>,
}

/// Closure of the generators, failing once more than `bound` elements appear.
pub fn group_closure(gens: &[MatK], bound: usize) -> Result<FiniteMatrixGroup> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Shape("at least one generator is needed".into()))?;
    let d = first.rows();
    let n = gens
        .iter()
        .fold(1, |acc, g| crate::exactnum::lcm_u32(acc, g.conductor()));
    let gens: Vec<MatK> = gens.iter().map(|g| g.embed(n)).collect();
    for g in &gens {
        if g.rows() != d || g.cols() != d {
            return Err(Error::Shape(
                "generators must be square of equal size".into(),
            ));
        }
        g.inv()?;
    }
    let ng = gens.len();
    let mut elems = vec![MatK::identity(n, d)];
    let mut lookup: HashMap<u64, Vec<usize>> = HashMap::new();
    lookup.entry(elems[0].hash_key()).or_default().push(0);
    // parent[y] = (x, s) with y = x·gens[s]
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut rmul: Vec<Vec<usize>> = Vec::new();
    let mut x = 0;
    while x < elems.len() {
        let mut row = Vec::with_capacity(ng);
        for (s, g) in gens.iter().enumerate() {
            let y = elems[x].mul(g);
            let key = y.hash_key();
            let found = lookup
                .get(&key)
                .and_then(|b| b.iter().copied().find(|&i| elems[i] == y));
            let idx = match found {
                Some(i) => i,
                None => {
                    if elems.len() >= bound {
                        return Err(Error::BoundExceeded(bound));
                    }
                    elems.push(y);
                    parent.push(Some((x, s)));
                    lookup.entry(key).or_default().push(elems.len() - 1);
                    elems.len() - 1
                }
            };
            row.push(idx);
        }
        rmul.push(row);
        x += 1;
    }
    let size = elems.len();
    // mul[x][y] from y = parent·gen: mul[x][y] = rmul[mul[x][parent]][gen]
    let mut mul = vec![0u32; size * size];
    for x in 0..size {
        mul[x * size] = x as u32;
        for y in 1..size {
            let (py, s) = parent[y].expect("non-identity elements have parents");
            mul[x * size + y] = rmul[mul[x * size + py] as usize][s] as u32;
        }
    }
    let gen_idx: Vec<usize> = (0..ng).map(|s| rmul[0][s]).collect();
    // canonical order
    let mut perm: Vec<usize> = (0..size).collect();
    perm.sort_by(|&a, &b| elems[a].cmp_canonical(&elems[b]));
    let mut pos = vec![0usize; size];
    for (new, &old) in perm.iter().enumerate() {
        pos[old] = new;
    }
    let mut sorted_mul = vec![0u32; size * size];
    for a in 0..size {
        for b in 0..size {
            sorted_mul[pos[a] * size + pos[b]] = pos[mul[a * size + b] as usize] as u32;
        }
    }
    let elements: Vec<MatK> = perm.iter().map(|&o| elems[o].clone()).collect();
    let gens: Vec<usize> = gen_idx.iter().map(|&g| pos[g]).collect();
    Ok(FiniteMatrixGroup::from_tables(
        elements, sorted_mul, pos[0], gens,
    ))
}

impl FiniteMatrixGroup {
    fn from_tables(elements: Vec<MatK>, mul: Vec<u32>, identity: usize, gens: Vec<usize>) -> Self {
        let size = elements.len();
        let mut inv = vec![0u32; size];
        for x in 0..size {
            let y = (0..size)
                .find(|&y| mul[x * size + y] as usize == identity)
                .expect("finite group elements have inverses");
            inv[x] = y as u32;
        }
        let mut g = FiniteMatrixGroup {
            elements,
            mul,
            inv,
            identity,
            gens,
            orders: vec![],
            class_of: vec![],
            classes: vec![],
            center: vec![],
            derived: vec![],
            labels: vec![],
            cosets: vec![],
        };
        g.orders = (0..size).map(|x| g.element_order(x)).collect();
        g.build_classes();
        g.center = (0..size)
            .filter(|&z| g.gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z)))
            .collect();
        g.build_derived();
        g.build_labels();
        g
    }

    fn element_order(&self, x: usize) -> u32 {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    fn build_classes(&mut self) {
        let size = self.order();
        let mut class_of = vec![usize::MAX; size];
        let mut classes = Vec::new();
        for x in 0..size {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = vec![x];
            class_of[x] = c;
            let mut q = VecDeque::from([x]);
            while let Some(y) = q.pop_front() {
                for &s in &self.gens {
                    let z = self.conj(y, s);
                    if class_of[z] == usize::MAX {
                        class_of[z] = c;
                        members.push(z);
                        q.push_back(z);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.class_of = class_of;
        self.classes = classes;
    }

    fn build_derived(&mut self) {
        let size = self.order();
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; size];
        for a in 0..size {
            for b in 0..size {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.derived = self.closure_of(&comms);
    }

    /// Labels (order modulo the center, letter, coset index): the coset index k
    /// places x in z^k·D for the chosen central generator z of G/D.
    fn build_labels(&mut self) {
        let size = self.order();
        let in_derived = {
            let mut v = vec![false; size];
            for &d in &self.derived {
                v[d] = true;
            }
            v
        };
        let index = size / self.derived.len();
        let z = self.coset_generator(&in_derived, index);
        let mut cosets = vec![None; size];
        if let Some(z) = z {
            let zi = self.inv(z);
            for (x, c) in cosets.iter_mut().enumerate() {
                let mut y = x;
                for k in 0..index {
                    if in_derived[y] {
                        *c = Some(k as u32);
                        break;
                    }
                    y = self.mul(zi, y);
                }
            }
        }
        let is_central = {
            let mut v = vec![false; size];
            for &c in &self.center {
                v[c] = true;
            }
            v
        };
        let ord_mod_center: Vec<u32> = (0..size)
            .map(|x| {
                let mut y = x;
                let mut k = 1;
                while !is_central[y] {
                    y = self.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        let mut counter: HashMap<(u32, Option<u32>), u32> = HashMap::new();
        let mut labels = Vec::with_capacity(self.classes.len());
        for cls in &self.classes {
            let x = cls[0];
            let key = (ord_mod_center[x], cosets[x]);
            let k = counter.entry(key).or_insert(0);
            let letter = letter_name(*k);
            *k += 1;
            labels.push(match cosets[x] {
                Some(c) => format!("{}{}{}", key.0, letter, c),
                None => format!("{}{}", key.0, letter),
            });
        }
        self.labels = labels;
        self.cosets = cosets;
    }

    /// A central element generating G/D, preferring the scalar ω·I.
    fn coset_generator(&self, in_derived: &[bool], index: usize) -> Option<usize> {
        let generates = |z: usize| {
            let mut y = z;
            for k in 1..=index {
                if in_derived[y] {
                    return k == index;
                }
                y = self.mul(y, z);
            }
            false
        };
        let omega = CycNum::omega();
        let scalar_omega = self
            .center
            .iter()
            .copied()
            .find(|&z| self.elements[z].scalar_value().is_some_and(|v| v == omega));
        if index == 1 {
            return Some(self.identity);
        }
        scalar_omega
            .filter(|&z| generates(z))
            .or_else(|| self.center.iter().copied().find(|&z| generates(z)))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &MatK {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[MatK] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// h⁻¹·x·h.
    #[inline]
    pub fn conj(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), x), h)
    }

    pub fn elem_order(&self, x: usize) -> u32 {
        self.orders[x]
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let o = self.orders[x] as i64;
        let e = k.rem_euclid(o);
        (0..e).fold(self.identity, |acc, _| self.mul(acc, x))
    }

    /// Index of the element equal to the given matrix.
    pub fn index_of(&self, m: &MatK) -> Option<usize> {
        self.elements.binary_search_by(|e| e.cmp_canonical(m)).ok()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_label(&self, x: usize) -> &str {
        &self.labels[self.class_of[x]]
    }

    pub fn class_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn class_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index k with x ∈ z^k·D, when G/D is generated by a central element z.
    pub fn coset_index(&self, x: usize) -> Option<u32> {
        self.cosets[x]
    }

    pub fn center(&self) -> &[usize] {
        &self.center
    }

    pub fn is_central(&self, x: usize) -> bool {
        self.center.binary_search(&x).is_ok()
    }

    pub fn derived_subgroup(&self) -> &[usize] {
        &self.derived
    }

    /// Subgroup generated by the given elements, as sorted indices.
    pub fn closure_of(&self, elems: &[usize]) -> Vec<usize> {
        let size = self.order();
        let mut seen = vec![false; size];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut q = VecDeque::from([self.identity]);
        while let Some(x) = q.pop_front() {
            for &s in elems {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    q.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn subgroup_generates(&self, elems: &[usize]) -> bool {
        self.closure_of(elems).len() == self.order()
    }

    /// First h (by index) with h⁻¹·a_i·h = b_i for all i.
    pub fn find_conjugator(&self, a: &[usize], b: &[usize]) -> Option<usize> {
        if a.len() != b.len() {
            return None;
        }
        (0..self.order()).find(|&h| a.iter().zip(b).all(|(&x, &y)| self.conj(x, h) == y))
    }

    /// Elements commuting with every entry of the tuple.
    pub fn centralizer(&self, a: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&h| a.iter().all(|&x| self.mul(x, h) == self.mul(h, x)))
            .collect()
    }

    pub fn report(&self) -> GroupReport {
        GroupReport {
            order: self.order(),
            center_size: self.center.len(),
            derived_order: self.derived.len(),
            classes: self
                .classes
                .iter()
                .enumerate()
                .map(|(c, m)| ClassInfo {
                    label: self.labels[c].clone(),
                    size: m.len(),
                    element_order: self.orders[m[0]],
                    central: self.is_central(m[0]),
                    representative: m[0],
                })
                .collect(),
        }
    }
}

fn letter_name(k: u32) -> String {
    let mut s = String::new();
    let mut k = k as usize;
    loop {
        s.insert(0, (b'a' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub label: String,
    pub size: usize,
    pub element_order: u32,
    pub central: bool,
    pub representative: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub order: usize,
    pub center_size: usize,
    pub derived_order: usize,
    pub classes: Vec<ClassInfo>,
}

/// Group input file: generators plus a closure bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub gens: Vec<MatK>,
    #[serde(default = "default_bound")]
    pub bound: usize,
}

fn default_bound() -> usize {
    100_000
}
