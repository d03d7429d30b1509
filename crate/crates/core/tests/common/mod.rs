//! Random modules and module-level properties shared by the integration
//! tests.

#![allow(dead_code)]

use perverx::blocks::subgroup_algebra;
use perverx::complex::BoundedComplex;
use perverx::decompose::is_isomorphic;
use perverx::hom::hom_dim;
use perverx::local::LocalGroup;
use perverx::perverse::{euler_identity_holds, perverse_complexes, Perversity};
use perverx::{Field, Gf2, Gf3, Module};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shipped local algebras and their fields.
pub const ALGEBRAS: &[(&str, u32)] =
    &[("C4", 3), ("Q8", 3), ("D8", 3), ("SD16", 3), ("S3", 3), ("A4", 2), ("C2^3:C7", 2)];

fn random_vector<F: Field, R: Rng>(n: usize, rng: &mut R) -> Vec<F> {
    (0..n).map(|_| F::from_index(rng.gen_range(0..F::ORDER))).collect()
}

/// A subquotient of a sum of one or two projective indecomposables: the
/// span of a random vector modulo the span of a random vector inside it.
pub fn random_module<F: Field>(lg: &LocalGroup<F>, seed: u64) -> Module<F> {
    let rep = &lg.rep;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rep.num_simples();
    let mut p = rep.pim(rng.gen_range(0..n)).clone();
    if rng.gen_bool(0.3) {
        p = p.direct_sum(rep.pim(rng.gen_range(0..n))).unwrap();
    }
    let v = random_vector::<F, _>(p.dim(), &mut rng);
    let (m, _) = p.submodule(&p.spin_vector(&v)).unwrap();
    if m.dim() < 2 || rng.gen_bool(0.3) {
        return m;
    }
    let w = random_vector::<F, _>(m.dim(), &mut rng);
    let sub = m.spin_vector(&w);
    if sub.rows() == m.dim() {
        return m;
    }
    m.quotient(&sub).unwrap().0
}

/// Composition factors by MeatAxe chopping, by Loewy layers, by socle
/// layers and by `Hom(P_i, -)` agree.
pub fn chop_loewy<F: Field>(lg: &LocalGroup<F>, m: &Module<F>) -> Result<(), String> {
    let rep = &lg.rep;
    let hom = rep.composition(m);
    let sum = |layers: Vec<Vec<usize>>| {
        layers.iter().fold(vec![0; rep.num_simples()], |mut acc, l| {
            acc.iter_mut().zip(l).for_each(|(a, b)| *a += b);
            acc
        })
    };
    let chop = rep.simples.chop(m, rep.seed);
    let loewy = sum(rep.loewy_layers(m));
    let socle = sum(rep.socle_layers(m));
    if chop == hom && loewy == hom && socle == hom {
        Ok(())
    } else {
        Err(format!("chop {chop:?}, Loewy {loewy:?}, socle {socle:?}, Hom {hom:?}"))
    }
}

/// `Ω Ω⁻¹ M ≅ Ω⁻¹ Ω M ≅` the projective-free part of `M`.
pub fn omega_round_trip<F: Field>(lg: &LocalGroup<F>, m: &Module<F>) -> Result<(), String> {
    let rep = &lg.rep;
    let core = rep.core(m);
    let a = rep.omega(&rep.omega_inv(m));
    let b = rep.omega_inv(&rep.omega(m));
    let same = |x: &Module<F>| x.dim() == core.dim() && (x.dim() == 0 || is_isomorphic(x, &core, rep.seed));
    if same(&a) && same(&b) {
        Ok(())
    } else {
        Err(format!("core dim {}, Ω Ω⁻¹ dim {}, Ω⁻¹ Ω dim {}", core.dim(), a.dim(), b.dim()))
    }
}

/// `dim Hom(P_i, P_j) = dim Hom(P_j, P_i)`.
pub fn cartan_symmetric<F: Field>(lg: &LocalGroup<F>) -> Result<(), String> {
    let rep = &lg.rep;
    let n = rep.num_simples();
    for i in 0..n {
        for j in 0..i {
            let (a, b) = (hom_dim(rep.pim(i), rep.pim(j)), hom_dim(rep.pim(j), rep.pim(i)));
            if a != b {
                return Err(format!("Hom(P{}, P{}) = {a}, reverse {b}", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// The complex `P(M) -> M` in degrees -1, 0.
pub fn cover_complex<F: Field>(lg: &LocalGroup<F>, m: &Module<F>) -> BoundedComplex<F> {
    let (p, f, _) = lg.rep.projective_cover(m);
    BoundedComplex::new(-1, vec![p, m.clone()], vec![f.matrix.clone()]).unwrap()
}

/// A random perversity with values at most 3, zero on the trivial module.
pub fn random_perversity(n: usize, seed: u64) -> Perversity {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Perversity((0..n).map(|i| if i == 0 { 0 } else { rng.gen_range(0..=3) }).collect())
}

pub fn euler<F: Field>(lg: &LocalGroup<F>, c: &BoundedComplex<F>) -> Result<(), String> {
    if c.squares_to_zero() && euler_identity_holds(&lg.rep, c) {
        Ok(())
    } else {
        Err(format!("Euler identity fails in degrees {}..{}", c.lo(), c.hi()))
    }
}

pub fn perverse_euler<F: Field>(lg: &LocalGroup<F>, seed: u64) -> Result<(), String> {
    let pi = random_perversity(lg.rep.num_simples(), seed);
    let xs = perverse_complexes(&lg.rep, &pi).map_err(|e| e.to_string())?;
    xs.iter().try_for_each(|x| euler(lg, x)).map_err(|e| format!("pi {:?}: {e}", pi.0))
}

/// `minimize` is idempotent and keeps cohomology.
pub fn minimize_idempotent<F: Field>(c: &BoundedComplex<F>, seed: u64) -> Result<(), String> {
    let once = c.minimize(seed);
    let twice = once.minimize(seed);
    let dims = |x: &BoundedComplex<F>| x.degrees().map(|d| (d, x.term(d).dim())).collect::<Vec<_>>();
    let coh = |x: &BoundedComplex<F>| x.cohomology_dims().into_iter().filter(|&(_, k)| k > 0).collect::<Vec<_>>();
    if dims(&once) != dims(&twice) {
        return Err(format!("terms {:?} then {:?}", dims(&once), dims(&twice)));
    }
    if coh(&once) != coh(c) {
        return Err(format!("cohomology {:?} became {:?}", coh(c), coh(&once)));
    }
    Ok(())
}

/// `Hom_N(Ind U, M) = Hom_Q(U, Res M)` and `Hom_N(M, Ind U) = Hom_Q(Res M, U)`
/// for `U` trivial and regular on each class of order-`p` subgroups.
pub fn frobenius<F: Field>(lg: &LocalGroup<F>, m: &Module<F>) -> Result<(), String> {
    for (k, set) in lg.q_classes.iter().enumerate() {
        let qa = subgroup_algebra(lg.algebra(), "Q", set).map_err(|e| e.to_string())?;
        let res = m.restrict(&qa).map_err(|e| e.to_string())?;
        for u in [Module::trivial(qa.clone()).unwrap(), Module::regular(qa.clone())] {
            let ind = u.induce(lg.algebra()).map_err(|e| e.to_string())?;
            let (a, b) = (hom_dim(&ind, m), hom_dim(&u, &res));
            let (c, d) = (hom_dim(m, &ind), hom_dim(&res, &u));
            if a != b || c != d {
                return Err(format!("class {k}, dim U = {}: {a} vs {b}, {c} vs {d}", u.dim()));
            }
        }
    }
    Ok(())
}

/// Every property on `count` random modules of one algebra; returns the
/// number of checks run.
pub fn all_properties<F: Field>(name: &str, count: u64) -> Result<usize, String> {
    let lg = LocalGroup::<F>::load(name, 0).map_err(|e| e.to_string())?;
    let mut checks = 0;
    cartan_symmetric(&lg).map_err(|e| format!("{name}: {e}"))?;
    checks += 1;
    for seed in 0..count {
        let m = random_module(&lg, seed);
        let tag = |e: String| format!("{name}, module {seed} (dim {}): {e}", m.dim());
        chop_loewy(&lg, &m).map_err(tag)?;
        omega_round_trip(&lg, &m).map_err(tag)?;
        let c = cover_complex(&lg, &m);
        euler(&lg, &c).map_err(tag)?;
        minimize_idempotent(&c, seed).map_err(tag)?;
        frobenius(&lg, &m).map_err(tag)?;
        checks += 5;
        if seed % 10 == 0 {
            perverse_euler(&lg, seed).map_err(tag)?;
            checks += 1;
        }
    }
    Ok(checks)
}

pub fn all_properties_for(name: &str, field: u32, count: u64) -> Result<usize, String> {
    match field {
        2 => all_properties::<Gf2>(name, count),
        3 => all_properties::<Gf3>(name, count),
        _ => Err(format!("no field F_{field}")),
    }
}
