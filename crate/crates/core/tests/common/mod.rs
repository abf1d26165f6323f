//! Random inputs and property checks shared by the property suites and the acceptance
//! harness. Every check takes a seed and returns a description of the first violation.

#![allow(dead_code)]

use parcoh::braidact::{monodromy, phi_word, psi, tuple_act, BraidWord, Letter, Move};
use parcoh::exactla::{kernel_basis, rref, solve, MatK, Vector};
use parcoh::exactnum::{residue, CycNum, PrimeIdeal, Rat, DEFAULT_SEED};
use parcoh::locsys::{expected_dim, invariants_space, GTuple, ParabolicSpace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// Σ c_i ζ_n^i with small integer numerators over a small denominator.
pub fn rand_cyc(r: &mut ChaCha8Rng, n: u32, den: i64) -> CycNum {
    let k = r.gen_range(1..=n as usize);
    let d = r.gen_range(1..=den);
    let c: Vec<Rat> = (0..k)
        .map(|_| Rat::new(r.gen_range(-3i64..=3).into(), d.into()))
        .collect();
    CycNum::new(n, &c).unwrap()
}

/// An element of Z[ω] with coefficients in [−2, 2].
pub fn rand_eisenstein(r: &mut ChaCha8Rng) -> CycNum {
    CycNum::from_ints(3, &[r.gen_range(-2..=2), r.gen_range(-2..=2)]).unwrap()
}

pub fn rand_mat(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> MatK {
    let rows: Vec<Vec<CycNum>> = (0..rows)
        .map(|_| (0..cols).map(|_| rand_eisenstein(r)).collect())
        .collect();
    MatK::from_rows(3, rows).unwrap()
}

/// A product of a few elementary matrices over Z[ω], so the inverse is integral too.
pub fn rand_unimodular(r: &mut ChaCha8Rng, d: usize) -> MatK {
    let units = [
        CycNum::one(3),
        -CycNum::one(3),
        CycNum::omega(),
        -CycNum::omega(),
        &CycNum::omega() * &CycNum::omega(),
    ];
    let mut m = MatK::identity(3, d);
    if d == 1 {
        return MatK::scalar(1, units.choose(r).unwrap());
    }
    for _ in 0..r.gen_range(1..=3) {
        let i = r.gen_range(0..d);
        let mut j = r.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let mut e = MatK::identity(3, d);
        e.set(i, j, units.choose(r).unwrap().clone());
        m = m.mul(&e);
    }
    m
}

/// A tuple of r matrices of size d over Q(ω) with product one: the first r−1 entries
/// are conjugates of diagonal matrices with cube roots of unity and −1 on the diagonal,
/// the last closes the product.
pub fn rand_tuple(r: &mut ChaCha8Rng, d: usize, len: usize) -> GTuple {
    let eig = [
        CycNum::one(3),
        CycNum::omega(),
        &CycNum::omega() * &CycNum::omega(),
        -CycNum::one(3),
    ];
    loop {
        let mut mats = Vec::with_capacity(len);
        for _ in 0..len - 1 {
            let diag: Vec<CycNum> = (0..d).map(|_| eig.choose(r).unwrap().clone()).collect();
            let p = rand_unimodular(r, d);
            mats.push(p.mul(&MatK::diag(&diag)).mul(&p.inv().unwrap()));
        }
        let prod = mats.iter().fold(MatK::identity(3, d), |a, m| a.mul(m));
        mats.push(prod.inv().unwrap());
        if mats.iter().any(|m| !m.is_identity()) {
            return GTuple::new(mats).unwrap();
        }
    }
}

pub fn rand_word(r: &mut ChaCha8Rng, strands: usize, max_len: usize) -> BraidWord {
    let len = r.gen_range(0..=max_len);
    let letters = (0..len).map(|_| Letter::new(r.gen_range(1..strands), r.gen_bool(0.5)));
    BraidWord::new(strands, letters).unwrap()
}

fn word(strands: usize, signed: &[i64]) -> BraidWord {
    BraidWord::from_signed(strands, signed).unwrap()
}

/// Field axioms in Q(ζ_n) for n ∈ {3, 7, 21}, plus embedding and Galois compatibility.
pub fn field_axioms(seed: u64) -> Check {
    let r = &mut rng(seed);
    let n = *[3u32, 7, 21].choose(r).unwrap();
    let (a, b, c) = (rand_cyc(r, n, 3), rand_cyc(r, n, 3), rand_cyc(r, n, 3));
    ensure(&a + &b == &b + &a, || format!("a+b != b+a for {a}, {b}"))?;
    ensure(&a * &b == &b * &a, || format!("ab != ba for {a}, {b}"))?;
    ensure(&(&a + &b) + &c == &a + &(&b + &c), || {
        "addition not associative".into()
    })?;
    ensure(&(&a * &b) * &c == &a * &(&b * &c), || {
        "multiplication not associative".into()
    })?;
    ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || {
        "not distributive".into()
    })?;
    ensure((&(&a + &b) - &b) == a, || "(a+b)-b != a".into())?;
    ensure(&a * &CycNum::one(n) == a, || "1 is not neutral".into())?;
    if !a.is_zero() {
        let ai = a.inv().map_err(|e| e.to_string())?;
        ensure((&a * &ai).is_one(), || format!("a·a⁻¹ != 1 for {a}"))?;
        let q = b.try_div(&a).map_err(|e| e.to_string())?;
        ensure(&q * &a == b, || "(b/a)·a != b".into())?;
    }
    let m = 2 * n;
    let (ea, eb) = (a.embed(m).unwrap(), b.embed(m).unwrap());
    ensure(&ea * &eb == (&a * &b).embed(m).unwrap(), || {
        "embedding is not multiplicative".into()
    })?;
    let k = [1i64, 2, 4, 5]
        .into_iter()
        .filter(|k| num_integer::Integer::gcd(k, &(n as i64)) == 1);
    for k in k {
        ensure((&a * &b).galois(k) == &a.galois(k) * &b.galois(k), || {
            format!("σ_{k} not multiplicative")
        })?;
    }
    ensure(a.eval_poly(&a.min_poly()).is_zero(), || {
        format!("{a} is not a root of its minimal polynomial")
    })
}

/// Reduction at every prime ideal above a random p respects sums and products of
/// elements whose denominators are prime to p.
pub fn residue_homomorphism(seed: u64) -> Check {
    let r = &mut rng(seed);
    let p = *[2u64, 5, 11, 13, 29, 43, 127].choose(r).unwrap();
    let den = if p == 2 { 1 } else { 2 };
    let (a, b) = (rand_cyc(r, 21, den), rand_cyc(r, 21, den));
    let ideals = PrimeIdeal::all_above(21, p, DEFAULT_SEED).map_err(|e| e.to_string())?;
    let degs: usize = ideals.iter().map(|i| i.residue_degree()).sum();
    ensure(degs == 12, || {
        format!("residue degrees above {p} sum to {degs}")
    })?;
    for id in &ideals {
        let res = |x: &CycNum| residue(x, id).map_err(|e| e.to_string());
        let (ra, rb) = (res(&a)?, res(&b)?);
        ensure(res(&(&a + &b))? == ra.add(&rb), || {
            format!("residue of a+b at {p}")
        })?;
        ensure(res(&(&a * &b))? == ra.mul(&rb), || {
            format!("residue of ab at {p}")
        })?;
        ensure(res(&CycNum::one(21))?.is_one(), || "residue of 1".into())?;
    }
    Ok(())
}

/// rref, left kernel and solve on a random matrix over Q(ω).
pub fn linear_algebra(seed: u64) -> Check {
    let r = &mut rng(seed);
    let (rows, cols) = (r.gen_range(1..=4), r.gen_range(1..=6));
    let mut a = rand_mat(r, rows, cols);
    if rows > 1 && r.gen_bool(0.4) {
        // force a dependency
        let sum: Vector = a.row(0).iter().zip(a.row(1)).map(|(x, y)| x + &y).collect();
        for (j, x) in sum.into_iter().enumerate() {
            a.set(rows - 1, j, x);
        }
    }
    let (rr, piv, t) = rref(&a);
    ensure(t.mul(&a) == rr, || "T·A != R".into())?;
    ensure(!t.det().map_err(|e| e.to_string())?.is_zero(), || {
        "T is singular".into()
    })?;
    ensure(piv.windows(2).all(|w| w[0] < w[1]), || {
        "pivots not increasing".into()
    })?;
    for (k, &pc) in piv.iter().enumerate() {
        for i in 0..rows {
            let want = if i == k {
                CycNum::one(3)
            } else {
                CycNum::zero(3)
            };
            ensure(rr.get(i, pc) == &want, || {
                format!("pivot column {pc} is not a unit vector")
            })?;
        }
        ensure((0..pc).all(|j| rr.get(k, j).is_zero()), || {
            format!("row {k} has entries left of its pivot")
        })?;
    }
    ensure(
        (piv.len()..rows).all(|i| rr.row(i).iter().all(CycNum::is_zero)),
        || "nonzero row below rank".into(),
    )?;
    let ker = kernel_basis(&a);
    ensure(ker.len() + piv.len() == rows, || {
        "rank-nullity fails".into()
    })?;
    for v in &ker {
        ensure(MatK::vec_mul(v, &a).iter().all(CycNum::is_zero), || {
            "kernel vector v·A != 0".into()
        })?;
    }
    let x: Vector = (0..rows).map(|_| rand_eisenstein(r)).collect();
    let b = MatK::vec_mul(&x, &a);
    let y = solve(&a, &b).ok_or("consistent system reported inconsistent")?;
    ensure(MatK::vec_mul(&y, &a) == b, || {
        "solution does not satisfy x·A = b".into()
    })
}

/// Artin relations and the sphere relation on tuples and on parabolic cohomology.
pub fn braid_relations(seed: u64) -> Check {
    let r = &mut rng(seed);
    let len = r.gen_range(3..=5);
    let d = r.gen_range(1..=2);
    let g = rand_tuple(r, d, len);
    let space = ParabolicSpace::new(&g);
    let err = |e: parcoh::Error| e.to_string();
    let mut pairs = Vec::new();
    for i in 1..len as i64 - 1 {
        pairs.push((word(len, &[i, i + 1, i]), word(len, &[i + 1, i, i + 1])));
    }
    for i in 1..len as i64 {
        for j in i + 2..len as i64 {
            pairs.push((word(len, &[i, j]), word(len, &[j, i])));
        }
        pairs.push((word(len, &[i, -i]), BraidWord::empty(len)));
    }
    for (u, v) in &pairs {
        ensure(
            tuple_act(&g, u).map_err(err)? == tuple_act(&g, v).map_err(err)?,
            || format!("{u} and {v} differ on tuples"),
        )?;
        let (pu, pv) = (
            phi_word(&space, u).map_err(err)?,
            phi_word(&space, v).map_err(err)?,
        );
        ensure(
            pu.h_matrix == pv.h_matrix && pu.w_matrix == pv.w_matrix,
            || format!("{u} and {v} differ on cohomology"),
        )?;
    }
    // β₁⋯β_{r−1}β_{r−1}⋯β₁ conjugates the tuple by g₁ and acts trivially on W
    let mut s: Vec<i64> = (1..len as i64).collect();
    s.extend((1..len as i64).rev());
    let sphere = word(len, &s);
    let h = g.inverse(0).clone();
    ensure(
        tuple_act(&g, &sphere).map_err(err)? == g.conjugate_by(&h).map_err(err)?,
        || "sphere relation on tuples".into(),
    )?;
    let eta = monodromy(&space, &[Move { word: sphere, h }]).map_err(err)?;
    ensure(eta[0].is_identity(), || {
        format!("sphere relation on W gives\n{}", eta[0])
    })
}

/// Φ(g, ββ′) = Φ(g, β)·Φ(g^β, β′) for random words of total length at most 8.
pub fn cocycle_rule(seed: u64) -> Check {
    let r = &mut rng(seed);
    let len = r.gen_range(3..=5);
    let g = rand_tuple(r, 2, len);
    let space = ParabolicSpace::new(&g);
    let (u, v) = (rand_word(r, len, 4), rand_word(r, len, 4));
    let err = |e: parcoh::Error| e.to_string();
    let whole = phi_word(&space, &u.concat(&v)).map_err(err)?;
    let first = phi_word(&space, &u).map_err(err)?;
    let second = phi_word(&first.target, &v).map_err(err)?;
    let comp = first.then(&second).map_err(err)?;
    ensure(whole.target.tuple() == comp.target.tuple(), || {
        "targets differ".into()
    })?;
    ensure(whole.h_matrix == comp.h_matrix, || {
        format!("cocycle rule fails on H for {u} · {v}")
    })?;
    ensure(whole.w_matrix == comp.w_matrix, || {
        format!("cocycle rule fails on W for {u} · {v}")
    })
}

/// Φ and Ψ carry E into E and induce invertible maps on W that compose to the
/// identity with their inverses.
pub fn phi_psi_on_e(seed: u64) -> Check {
    let r = &mut rng(seed);
    let len = r.gen_range(3..=5);
    let d = r.gen_range(1..=3);
    let g = rand_tuple(r, d, len);
    let space = ParabolicSpace::new(&g);
    let err = |e: parcoh::Error| e.to_string();
    let w = rand_word(r, len, 6);
    let phi = phi_word(&space, &w).map_err(err)?;
    for v in space.e_basis() {
        let (img, _) =
            parcoh::braidact::push_vectors(&g, &w, std::slice::from_ref(v)).map_err(err)?;
        ensure(phi.target.contains_e(&img[0]), || {
            format!("Φ(g, {w}) leaves E")
        })?;
    }
    let back = phi_word(&phi.target, &w.inverse()).map_err(err)?;
    ensure(phi.then(&back).map_err(err)?.w_matrix.is_identity(), || {
        format!("Φ(g, {w}) is not inverted by its inverse word")
    })?;
    let h = rand_unimodular(r, g.dim());
    let ps = psi(&g, &h).map_err(err)?;
    ensure(ps.w_matrix.det().map_err(err)?.inv().is_ok(), || {
        "Ψ is singular on W".into()
    })?;
    let ps_back = psi(&g.conjugate_by(&h).map_err(err)?, &h.inv().map_err(err)?).map_err(err)?;
    ensure(ps.source.tuple() == ps_back.target.tuple(), || {
        "Ψ inverse lands elsewhere".into()
    })
}

/// Outcome of the dimension formula on one random tuple; None when the invariants or
/// coinvariants do not vanish.
pub fn dimension_formula(seed: u64) -> Result<Option<(usize, usize)>, String> {
    let r = &mut rng(seed);
    let d = r.gen_range(1..=4);
    let len = r.gen_range(3..=6);
    let g = rand_tuple(r, d, len);
    let dual: Vec<MatK> = g
        .mats()
        .iter()
        .map(|m| m.inv().unwrap().transpose())
        .collect();
    let dual = GTuple::new(dual).map_err(|e| e.to_string())?;
    let ed = expected_dim(&g);
    if !ed.applicable || !invariants_space(&dual).is_empty() {
        return Ok(None);
    }
    let space = ParabolicSpace::new(&g);
    let kernels: usize = g
        .mats()
        .iter()
        .map(|m| kernel_basis(&m.minus_identity()).len())
        .sum();
    let oracle = (len as i64 - 2) * d as i64 - kernels as i64;
    ensure(ed.value == oracle, || {
        format!("formula value {} != {oracle}", ed.value)
    })?;
    ensure(space.dim_w() as i64 == oracle, || {
        format!(
            "dim W = {} but the formula gives {oracle} for d={d}, r={len}",
            space.dim_w()
        )
    })?;
    ensure(space.dim_h() - space.dim_e() == space.dim_w(), || {
        "dim W != dim H - dim E".into()
    })?;
    Ok(Some((d, len)))
}

/// Runs the dimension formula on seeds from `start` until `want` applicable tuples
/// were checked; returns the number checked.
pub fn dimension_formula_batch(start: u64, want: usize) -> Result<usize, String> {
    let mut done = 0;
    let mut seed = start;
    while done < want {
        if dimension_formula(seed)
            .map_err(|e| format!("seed {seed}: {e}"))?
            .is_some()
        {
            done += 1;
        }
        seed += 1;
        if seed - start > 10 * want as u64 {
            return Err(format!(
                "only {done} applicable tuples in {} seeds",
                seed - start
            ));
        }
    }
    Ok(done)
}
