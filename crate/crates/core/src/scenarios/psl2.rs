//! The rank-two local systems attached to four-point covers with group
//! PSL₂(7) × Z/3: orbit combinatorics, the cusp matrices b_j and their reductions.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::klein::klein_groups;
use super::report::ScenarioReport;
use crate::error::{Error, Result};
use crate::exactla::{MatK, Rank2Class};
use crate::exactnum::{
    is_prime, projective_closure_order, residue, CycNum, GfTables, Mat2, PrimeIdeal, DEFAULT_SEED,
    MAX_TABLE_SIZE,
};
use crate::fingrp::FiniteMatrixGroup;
use crate::hurworb::{
    b_matrix, bmatrices, braid_orbit, cover_analysis, cusp_generators, enumerate_type, parse_type,
    BMatrices, CoverReport, CuspGenerators, NielsenOrbit,
};
use crate::locsys::{expected_dim, GTuple, ParabolicSpace};

/// The class type of the tuples.
pub const PSL2_TYPE: &str = "2a0,2a0,3a1,3a2";

/// Largest projective image the full-image check enumerates.
pub const MAX_IMAGE: usize = 10_000_000;

#[derive(Clone, Debug)]
pub struct Psl2Options {
    pub pmax: u64,
    pub full_image_p: Option<u64>,
    pub threads: usize,
    pub seed: u64,
}

impl Default for Psl2Options {
    fn default() -> Self {
        Psl2Options {
            pmax: 199,
            full_image_p: Some(11),
            threads: 1,
            seed: DEFAULT_SEED,
        }
    }
}

/// Everything computed from the group up to the normalized b_j.
pub struct Psl2Data {
    pub group: FiniteMatrixGroup,
    pub enumerated: usize,
    pub transitive: bool,
    pub orbit: NielsenOrbit,
    pub cover: CoverReport,
    pub space: ParabolicSpace,
    pub gens: CuspGenerators,
    pub b: BMatrices,
    pub central: usize,
}

/// Index of ωI in the group.
pub fn central_omega(g: &FiniteMatrixGroup) -> Result<usize> {
    let n = g.element(0).conductor();
    let w = MatK::scalar(3, &CycNum::omega()).embed(n);
    g.index_of(&w)
        .ok_or_else(|| Error::Pipeline("omega I is not in the group".into()))
}

/// The matrix tuple of a tuple of group elements, with its parabolic space.
pub fn space_of(g: &FiniteMatrixGroup, t: &[usize]) -> Result<ParabolicSpace> {
    let gt = GTuple::new(t.iter().map(|&x| g.element(x).clone()).collect())?;
    Ok(ParabolicSpace::new(&gt))
}

/// Cusp generators and normalized b_j for the orbit at its base point.
pub fn b_at_base(
    g: &FiniteMatrixGroup,
    orbit: &NielsenOrbit,
    central: usize,
) -> Result<(CuspGenerators, ParabolicSpace, BMatrices)> {
    let gens = cusp_generators(g, orbit)?;
    let space = space_of(g, &gens.tuple)?;
    let b = bmatrices(g, &gens, &space, central)?;
    Ok((gens, space, b))
}

pub fn psl2_pipeline(threads: usize) -> Result<Psl2Data> {
    let (_, group) = klein_groups()?;
    let central = central_omega(&group)?;
    let classes = parse_type(&group, PSL2_TYPE)?;
    let all = enumerate_type(&group, &classes, true, threads)?;
    let seed = all
        .first()
        .ok_or_else(|| Error::Pipeline("no tuple of the type generates the group".into()))?
        .rep
        .clone();
    let orbit = braid_orbit(&group, &seed, true)?;
    let mut reps: Vec<&Vec<usize>> = orbit.points.iter().map(|p| &p.rep).collect();
    reps.sort();
    let transitive = reps.len() == all.len() && reps.iter().zip(&all).all(|(a, b)| **a == b.rep);
    let cover = cover_analysis(&orbit)?;
    let (gens, space, b) = b_at_base(&group, &orbit, central)?;
    Ok(Psl2Data {
        group,
        enumerated: all.len(),
        transitive,
        orbit,
        cover,
        space,
        gens,
        b,
        central,
    })
}

pub fn scenario_psl2(opts: &Psl2Options) -> ScenarioReport {
    let start = Instant::now();
    let mut rep = ScenarioReport::new("psl2");
    if let Err(e) = run(opts, &mut rep) {
        rep.check("pipeline", false, e.to_string());
    }
    rep.set_elapsed(start.elapsed());
    rep
}

#[derive(Serialize)]
struct CuspEntry {
    width: usize,
    word: String,
    braid_word: String,
    correction: usize,
    h: usize,
    scalar_exponent: u32,
    class: String,
    matrix: MatK,
}

fn census(classes: &[Rank2Class]) -> (usize, usize, usize) {
    let t = classes.iter().filter(|c| c.is_transvection()).count();
    let h = classes.iter().filter(|c| c.is_homology()).count();
    (t, h, classes.len() - t - h)
}

fn kind_multiset(classes: &[Rank2Class]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for c in classes {
        let k = match c {
            Rank2Class::Homology { .. } => "homology".to_string(),
            other => other.to_string(),
        };
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

fn run(opts: &Psl2Options, rep: &mut ScenarioReport) -> Result<()> {
    if opts.pmax < 11 {
        return Err(Error::Pipeline("pmax must be at least 11".into()));
    }
    let data = psl2_pipeline(opts.threads)?;
    let g = &data.group;
    rep.check(
        "group",
        g.order() == 504 && g.derived_subgroup().len() == 168 && g.center().len() == 3,
        format!(
            "|G| = {}, |D(G)| = {}, |Z(G)| = {}",
            g.order(),
            g.derived_subgroup().len(),
            g.center().len()
        ),
    );

    // orbit combinatorics
    let n = data.orbit.len();
    rep.check(
        "nielsen classes",
        data.enumerated == 90,
        format!("{} reduced classes of type {PSL2_TYPE}", data.enumerated),
    );
    rep.check(
        "transitive",
        data.transitive,
        format!("orbit of the seed has {n} of {} classes", data.enumerated),
    );
    let c = &data.cover;
    rep.check(
        "d1728 fixed-point free",
        c.fixed_points_d1728 == 0,
        format!(
            "{} fixed points; cycle type {:?}",
            c.fixed_points_d1728, c.cycle_type_d1728
        ),
    );
    rep.check(
        "d0 fixed-point free",
        c.fixed_points_d0 == 0,
        format!(
            "{} fixed points; cycle type {:?}",
            c.fixed_points_d0, c.cycle_type_d0
        ),
    );
    let widths = c.widths();
    let width4 = widths.iter().filter(|&&w| w == 4).count();
    rep.check(
        "cusps",
        c.cusps.len() == 17,
        format!("{} cusps, widths {:?}", c.cusps.len(), widths),
    );
    rep.check("genus", c.genus == 0, format!("genus {}", c.genus));
    rep.check(
        "width-4 cusps",
        width4 == 5,
        format!("{width4} cusps of width 4"),
    );
    rep.artifact("cover", c);

    // parabolic rank
    let sp = &data.space;
    let ed = expected_dim(sp.tuple());
    rep.check(
        "dim W",
        sp.dim_w() == 2,
        format!(
            "dim H = {}, dim E = {}, dim W = {}",
            sp.dim_h(),
            sp.dim_e(),
            sp.dim_w()
        ),
    );
    rep.check(
        "dimension formula",
        ed.applicable && ed.value == sp.dim_w() as i64,
        format!(
            "(r-2)*dim V - sum dim Ker(g_i - 1) = {} with kernel dims {:?}",
            ed.value, ed.kernel_dims
        ),
    );

    // generators of the stabilizer
    let gens = &data.gens;
    rep.check(
        "cusp generators",
        gens.words.len() == 17 && gens.widths.iter().sum::<usize>() == n,
        format!(
            "{} generators, widths summing to {}",
            gens.words.len(),
            gens.widths.iter().sum::<usize>()
        ),
    );
    rep.check(
        "product of generators",
        gens.product_trivial,
        "product of all cusp and elliptic loops in emitted order reduces to the empty word",
    );
    rep.check(
        "generators span the stabilizer",
        gens.stabilizer_index == Some(n),
        format!(
            "index of the generated subgroup: {:?}",
            gens.stabilizer_index
        ),
    );
    let elliptic_scalar = gens
        .elliptic
        .iter()
        .map(|e| {
            b_matrix(g, sp, &gens.tuple, &e.braid_word, e.twist).map(|m| m.scalar_value().is_some())
        })
        .collect::<Result<Vec<_>>>()?;
    rep.check(
        "elliptic maps scalar",
        elliptic_scalar.iter().all(|&s| s),
        format!(
            "{} of {} elliptic generators act on W by a scalar",
            elliptic_scalar.iter().filter(|&&s| s).count(),
            elliptic_scalar.len()
        ),
    );

    // b_j census
    let b = &data.b;
    let (t, h, o) = census(&b.classes);
    let w = CycNum::omega();
    let w2 = &w * &w;
    let eig_ok = b.classes.iter().all(|c| match c {
        Rank2Class::Homology { eigenvalue } => *eigenvalue == w || *eigenvalue == w2,
        _ => true,
    });
    rep.check(
        "b_j census",
        t == 12 && h == 5 && o == 0 && eig_ok,
        format!("{t} transvections, {h} homologies, {o} other"),
    );
    let (t4, h4, _) = census(
        &b.classes
            .iter()
            .zip(&gens.widths)
            .filter(|(_, &w)| w == 4)
            .map(|(c, _)| c.clone())
            .collect::<Vec<_>>(),
    );
    rep.check(
        "width-4 cusps census",
        t4 == 4 && h4 == 1,
        format!("{t4} transvections and {h4} homologies at width 4"),
    );
    let prod = b
        .matrices
        .iter()
        .fold(MatK::identity(sp.tuple().conductor(), 2), |acc, m| {
            acc.mul(m)
        });
    rep.check(
        "product of b_j",
        prod.is_identity(),
        format!(
            "before the final correction the product was omega^{} I; scalars applied {:?}",
            b.product_exponent, b.scalars
        ),
    );
    rep.check(
        "denominators",
        b.denominators.iter().all(|p| [2, 3, 5, 7].contains(p)),
        format!("primes in denominators: {:?}", b.denominators),
    );
    let entries: Vec<CuspEntry> = (0..b.matrices.len())
        .map(|j| CuspEntry {
            width: gens.widths[j],
            word: gens.words[j].to_string(),
            braid_word: gens.braid_words[j].to_string(),
            correction: gens.corrections[j],
            h: b.twists[j],
            scalar_exponent: b.scalars[j],
            class: b.classes[j].to_string(),
            matrix: b.matrices[j].clone(),
        })
        .collect();
    rep.artifact("cusps", &entries);

    // re-based generators
    let other = (0..n).rev().find(|&x| x != data.orbit.base).unwrap_or(0);
    let (_, _, b2) = b_at_base(g, &data.orbit.rebased(other), data.central)?;
    let (m1, m2) = (kind_multiset(&b.classes), kind_multiset(&b2.classes));
    rep.check(
        "rebased census",
        m1 == m2,
        format!("base {}: {:?}; base {other}: {:?}", data.orbit.base, m1, m2),
    );

    // trace field
    let k = b.matrices.len();
    let mut witness = None;
    'pairs: for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let tr = b.matrices[i].mul(&b.matrices[j]).trace();
            let mp = tr.min_poly();
            if mp.degree() == Some(4) {
                witness = Some((i, j, tr, mp));
                break 'pairs;
            }
        }
    }
    match &witness {
        Some((i, j, tr, mp)) => rep.check(
            "trace field",
            true,
            format!(
                "trace(b_{} b_{}) = {tr} has minimal polynomial {mp}",
                i + 1,
                j + 1
            ),
        ),
        None => rep.check("trace field", false, "no trace(b_i b_j) of degree 4"),
    };

    residual_checks(opts, rep, b)?;
    if let Some(p) = opts.full_image_p {
        full_image(p, opts.seed, rep, b)?;
    }
    Ok(())
}

fn residual_checks(opts: &Psl2Options, rep: &mut ScenarioReport, b: &BMatrices) -> Result<()> {
    let trans: Vec<&MatK> = b
        .matrices
        .iter()
        .zip(&b.classes)
        .filter(|(_, c)| c.is_transvection())
        .map(|(m, _)| m)
        .collect();
    let mut comms = Vec::new();
    for i in 0..trans.len() {
        for j in i + 1..trans.len() {
            let (a, c) = (trans[i], trans[j]);
            let k = a.inv()?.mul(&c.inv()?).mul(a).mul(c).minus_identity();
            comms.push(((i, j), k));
        }
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut nonregular = Vec::new();
    for p in 11..=opts.pmax {
        if !is_prime(p) || b.denominators.contains(&p) || 21 % p == 0 {
            continue;
        }
        if [1, 4, 16].contains(&(p % 21)) {
            nonregular.push(p);
        }
        for ideal in PrimeIdeal::all_above(21, p, opts.seed)? {
            checked += 1;
            let mut ok = false;
            'c: for (_, k) in &comms {
                for x in k.entries() {
                    if !residue(x, &ideal)?.is_zero() {
                        ok = true;
                        break 'c;
                    }
                }
            }
            if !ok {
                failures.push(format!("p = {p}, factor {:?}", ideal.factor.c));
            }
        }
    }
    rep.check(
        "residual commutators",
        failures.is_empty() && checked > 0,
        if failures.is_empty() {
            format!(
                "{checked} prime ideals above 11..{} each see a non-trivial commutator",
                opts.pmax
            )
        } else {
            format!("all commutators trivial at {}", failures.join("; "))
        },
    );
    rep.artifact("primes_1_4_16_mod_21", &nonregular);
    Ok(())
}

fn full_image(p: u64, seed: u64, rep: &mut ScenarioReport, b: &BMatrices) -> Result<()> {
    let ideal = PrimeIdeal::all_above(21, p, seed)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Pipeline("no prime ideal".into()))?;
    let size = (p as u128).pow(ideal.residue_degree() as u32);
    if size > MAX_TABLE_SIZE as u128 {
        rep.check(
            "full residual image",
            false,
            format!("residue field at p = {p} has {size} elements, above the table limit {MAX_TABLE_SIZE}"),
        );
        return Ok(());
    }
    let f = GfTables::new(&ideal.factor)?;
    let gens = b
        .matrices
        .iter()
        .map(|m| {
            let e = m
                .entries()
                .iter()
                .map(|x| residue(x, &ideal).map(|r| f.encode(&r)))
                .collect::<Result<Vec<_>>>()?;
            Ok([e[0], e[1], e[2], e[3]])
        })
        .collect::<Result<Vec<Mat2>>>()?;
    let p2 = (p * p) as usize;
    let expect = p2 * (p2 * p2 - 1) / 2;
    if expect > MAX_IMAGE {
        rep.check(
            "full residual image",
            false,
            format!("|PSL2({p}^2)| = {expect} is above the enumeration limit {MAX_IMAGE}"),
        );
        return Ok(());
    }
    let order = projective_closure_order(&f, &gens, 2 * expect + 1);
    rep.check(
        "full residual image",
        order == Some(expect),
        format!(
            "projective image at p = {p} (residue field of size {}) has order {:?}; |PSL2({p}^2)| = {expect}",
            f.size(),
            order
        ),
    );
    Ok(())
}
