//! Nielsen classes, braid orbits and cusp matrices for the group of order 504.

use std::collections::BTreeSet;

use parcoh::braidact::{monodromy, BraidWord, Move};
use parcoh::fingrp::FiniteMatrixGroup;
use parcoh::hurworb::{
    act_word, braid_orbit, compose, cover_analysis, cycles, enumerate_type, invert,
    is_identity_perm, parse_type, q_words, type_closure, Canonizer, NielsenOrbit,
};
use parcoh::scenarios::{b_at_base, central_omega, klein_groups, PSL2_TYPE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group() -> FiniteMatrixGroup {
    klein_groups().unwrap().1
}

fn orbit(g: &FiniteMatrixGroup) -> NielsenOrbit {
    let classes = parse_type(g, PSL2_TYPE).unwrap();
    let all = enumerate_type(g, &classes, true, 2).unwrap();
    braid_orbit(g, &all[0].rep, true).unwrap()
}

fn perm_pow(a: &[usize], k: usize) -> Vec<usize> {
    (0..k).fold((0..a.len()).collect(), |acc: Vec<usize>, _| {
        compose(&acc, a)
    })
}

#[test]
fn class_counts_match_brute_force() {
    let g = group();
    let classes = parse_type(&g, PSL2_TYPE).unwrap();
    let allowed: BTreeSet<Vec<usize>> = type_closure(&g, &classes)
        .into_iter()
        .map(|mut m| {
            m.sort();
            m
        })
        .collect();
    let wanted: BTreeSet<usize> = allowed.iter().flatten().copied().collect();
    let pool: Vec<usize> = (0..g.order())
        .filter(|&x| wanted.contains(&g.class_of(x)))
        .collect();
    // generating tuples with product one whose class multiset is admissible
    let mut count = 0usize;
    for &a in &pool {
        for &b in &pool {
            let ab = g.mul(a, b);
            for &c in &pool {
                let d = g.inv(g.mul(ab, c));
                let mut m = vec![g.class_of(a), g.class_of(b), g.class_of(c), g.class_of(d)];
                m.sort();
                if allowed.contains(&m) && g.subgroup_generates(&[a, b, c]) {
                    count += 1;
                }
            }
        }
    }
    // the centralizer of a generating tuple is the center, so G/Z acts freely
    let inner = g.order() / g.center().len();
    assert_eq!(count % inner, 0);
    let unreduced = enumerate_type(&g, &classes, false, 2).unwrap();
    assert_eq!(unreduced.len(), count / inner);
    let reduced = enumerate_type(&g, &classes, true, 2).unwrap();
    assert_eq!(reduced.len(), 90);
    assert_eq!(unreduced.len(), 4 * reduced.len());
}

#[test]
fn canonical_forms_are_invariant() {
    let g = group();
    let canon = Canonizer::new(&g);
    let o = orbit(&g);
    let mut r = ChaCha8Rng::seed_from_u64(7);
    let reps: BTreeSet<Vec<usize>> = o.points.iter().map(|p| p.rep.clone()).collect();
    for p in o.points.iter().step_by(7) {
        let h = r.gen_range(0..g.order());
        let t: Vec<usize> = p.rep.iter().map(|&x| g.conj(x, h)).collect();
        assert_eq!(canon.canonical(&t, true), p.rep);
        assert_eq!(canon.canonical(&t, false), canon.canonical(&p.rep, false));
        for q in q_words() {
            assert_eq!(canon.canonical(&act_word(&g, &t, &q), true), p.rep);
        }
        let w = BraidWord::from_signed(4, &[1, -2, 3, 3, -1, 2]).unwrap();
        let moved = canon.canonical(&act_word(&g, &p.rep, &w), true);
        assert!(reps.contains(&moved), "orbit is not closed under braids");
    }
}

#[test]
fn orbit_permutations_satisfy_the_relations() {
    let g = group();
    let o = orbit(&g);
    assert_eq!(o.len(), 90);
    let w = |s: &[i64]| o.perm_of(&BraidWord::from_signed(4, s).unwrap());
    assert_eq!(w(&[1, 2, 1]), w(&[2, 1, 2]));
    assert_eq!(w(&[2, 3, 2]), w(&[3, 2, 3]));
    assert_eq!(w(&[1, 3]), w(&[3, 1]));
    assert!(is_identity_perm(&w(&[1, 2, 3, 3, 2, 1])));
    for q in q_words() {
        assert!(is_identity_perm(&o.perm_of(&q)));
    }
    // β̄₁ = β̄₃ on reduced classes
    assert_eq!(o.beta[0], o.beta[2]);
    let d = o.deltas.as_ref().unwrap();
    assert!(is_identity_perm(&perm_pow(&d.d0, 3)));
    assert!(is_identity_perm(&perm_pow(&d.d1728, 2)));
    assert_eq!(compose(&d.d0, &d.dinf), d.d1728);
    assert_eq!(d.dinf, o.beta[0]);
    assert!((0..90).all(|x| d.d1728[x] != x && d.d0[x] != x));
    assert_eq!(
        compose(&d.d1728, &invert(&d.d1728)),
        (0..90).collect::<Vec<_>>()
    );
}

#[test]
fn cover_agrees_with_riemann_hurwitz() {
    let g = group();
    let o = orbit(&g);
    let c = cover_analysis(&o).unwrap();
    let d = o.deltas.as_ref().unwrap();
    let defect = |p: &[usize]| cycles(p).iter().map(|c| c.len() - 1).sum::<usize>() as i64;
    let n = o.len() as i64;
    let twice = -2 * n + defect(&d.d0) + defect(&d.dinf) + defect(&d.d1728);
    assert_eq!(twice % 2, 0);
    assert_eq!(c.genus, 1 + twice / 2);
    assert_eq!(c.genus, 0);
    let mut widths = c.widths();
    widths.sort();
    assert_eq!(
        widths,
        vec![1, 1, 3, 3, 3, 3, 4, 4, 4, 4, 4, 6, 6, 8, 8, 14, 14]
    );
    assert_eq!(widths.iter().sum::<usize>(), 90);
}

#[test]
fn fast_cusp_matrices_agree_with_general_monodromy() {
    let g = group();
    let o = orbit(&g);
    let z = central_omega(&g).unwrap();
    let (gens, space, b) = b_at_base(&g, &o, z).unwrap();
    assert!(gens.product_trivial);
    assert_eq!(gens.stabilizer_index, Some(90));
    let mut order: Vec<usize> = (0..gens.braid_words.len()).collect();
    order.sort_by_key(|&j| gens.braid_words[j].len());
    for &j in order.iter().take(3) {
        let mv = Move {
            word: gens.braid_words[j].clone(),
            h: g.element(gens.twists[j]).clone(),
        };
        let eta = monodromy(&space, &[mv]).unwrap();
        assert_eq!(eta[0], b.raw[j], "cusp {j}");
    }
}
