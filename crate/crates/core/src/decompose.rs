//! Krull-Schmidt decomposition and isomorphism testing.
//!
//! A random endomorphism `phi` gives the Fitting splitting
//! `M = ker phi^N ⊕ im phi^N`. A module is indecomposable iff its
//! endomorphism ring is local, i.e. every endomorphism is nilpotent or
//! invertible; this is checked exhaustively for small rings and by 64
//! seeded samples otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::hom::{combine, endomorphisms, hom};
use crate::matrix::Matrix;
use crate::module::{Module, Morphism};

const LOCAL_SAMPLES: usize = 64;
const EXHAUSTIVE_END_DIM: usize = 4;

/// A direct summand with its embedding: the rows of `basis` span the summand
/// inside the ambient module, and `basis^T` is the inclusion morphism.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub module: Module<F>,
    pub basis: Matrix<F>,
}

fn random_coeffs<F: Field, R: Rng>(n: usize, rng: &mut R) -> Vec<F> {
    (0..n).map(|_| F::from_index(rng.gen_range(0..F::ORDER))).collect()
}

/// `phi^N` for `N >= dim`, by repeated squaring.
fn stable_power<F: Field>(phi: &Matrix<F>) -> Matrix<F> {
    let mut p = phi.clone();
    let mut e = 1;
    while e < phi.rows() {
        p = &p * &p;
        e *= 2;
    }
    p
}

/// Reduce a spanning set of matrices to a basis.
pub fn matrix_span_basis<F: Field>(mats: &[Matrix<F>], rows: usize, cols: usize) -> Vec<Matrix<F>> {
    if mats.is_empty() {
        return Vec::new();
    }
    let flat = Matrix::from_rows(rows * cols, &mats.iter().map(|m| m.data().to_vec()).collect::<Vec<_>>());
    flat.row_space()
        .row_iter()
        .map(|r| Matrix::from_vec(rows, cols, r.to_vec()).unwrap())
        .collect()
}

/// Try to split `m` using the endomorphism span `ends`; returns complementary
/// nonzero submodule bases (RREF rows) when a Fitting split is found.
fn try_split<F: Field, R: Rng>(m: &Module<F>, ends: &[Matrix<F>], rng: &mut R) -> Option<(Matrix<F>, Matrix<F>)> {
    let d = m.dim();
    if d <= 1 || ends.len() <= 1 {
        return None;
    }
    let test = |phi: &Matrix<F>| {
        let p = stable_power(phi);
        let r = p.rank();
        (r != 0 && r != d).then(|| (p.nullspace(), p.transpose().row_space()))
    };
    let q = F::ORDER as u64;
    if ends.len() <= EXHAUSTIVE_END_DIM {
        let total = q.pow(ends.len() as u32);
        for mut idx in 1..total {
            let mut c = Vec::with_capacity(ends.len());
            for _ in 0..ends.len() {
                c.push(F::from_index((idx % q) as u32));
                idx /= q;
            }
            if let Some(s) = test(&combine(ends, &c, d, d)) {
                return Some(s);
            }
        }
        return None;
    }
    for _ in 0..LOCAL_SAMPLES {
        let c = random_coeffs(ends.len(), rng);
        if let Some(s) = test(&combine(ends, &c, d, d)) {
            return Some(s);
        }
    }
    None
}

/// Endomorphisms of `m` restricted to the summand `k` along the complement
/// `i` (both RREF row bases).
fn restrict_ends<F: Field>(ends: &[Matrix<F>], k: &Matrix<F>, i: &Matrix<F>) -> Vec<Matrix<F>> {
    let t_inv = k.vstack(i).inverse().expect("complementary subspaces");
    let dk = k.rows();
    let restricted: Vec<Matrix<F>> = ends
        .iter()
        .map(|psi| {
            let coords = &(k * &psi.transpose()) * &t_inv;
            coords.block(0, 0, dk, dk).transpose()
        })
        .collect();
    matrix_span_basis(&restricted, dk, dk)
}

/// Decompose using a known spanning set of `End(m)`.
pub fn decompose_with_ends<F: Field>(m: &Module<F>, ends: Vec<Matrix<F>>, seed: u64) -> Vec<Summand<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = m.dim();
    if d == 0 {
        return Vec::new();
    }
    let ends = matrix_span_basis(&ends, d, d);
    let mut work = vec![(m.clone(), Matrix::identity(d), ends)];
    let mut done = Vec::new();
    while let Some((x, basis, ends)) = work.pop() {
        match try_split(&x, &ends, &mut rng) {
            None => done.push(Summand { module: x, basis }),
            Some((k, i)) => {
                for (a, b) in [(&i, &k), (&k, &i)] {
                    let (sub, _) = x.submodule(a).expect("Fitting component is a submodule");
                    let e = restrict_ends(&ends, a, b);
                    work.push((sub, a * &basis, e));
                }
            }
        }
    }
    done.sort_by_key(|s| s.module.dim());
    done
}

/// Indecomposable summands of `m`, with embeddings.
pub fn decompose<F: Field>(m: &Module<F>, seed: u64) -> Vec<Summand<F>> {
    decompose_with_ends(m, endomorphisms(m), seed)
}

pub fn is_indecomposable<F: Field>(m: &Module<F>, seed: u64) -> bool {
    m.dim() > 0 && try_split(m, &endomorphisms(m), &mut ChaCha8Rng::seed_from_u64(seed)).is_none()
}

/// An isomorphism `m -> n`, if one exists. Hom dimensions must agree in
/// both directions; then the search over `Hom(m, n)` is exhaustive for
/// spaces of dimension at most 4, otherwise 1000 seeded random samples
/// followed by an exhaustive pass when the space has at most 1e5 elements.
pub fn isomorphism<F: Field>(m: &Module<F>, n: &Module<F>, seed: u64) -> Option<Morphism<F>> {
    if m.dim() != n.dim() {
        return None;
    }
    if m.dim() == 0 {
        return Some(Morphism::zero(m.clone(), n.clone()));
    }
    let mn = hom(m, n);
    if mn.is_empty() {
        return None;
    }
    let nm_dim = hom(n, m).len();
    if nm_dim != mn.len() {
        return None;
    }
    let d = m.dim();
    let mats: Vec<Matrix<F>> = mn.iter().map(|f| f.matrix.clone()).collect();
    let found = |c: &[F]| {
        let f = combine(&mats, c, d, d);
        (f.rank() == d).then(|| Morphism { source: m.clone(), target: n.clone(), matrix: f })
    };
    let q = F::ORDER as u64;
    let k = mats.len();
    let exhaustive = |limit: u64| -> Option<Morphism<F>> {
        let total = q.checked_pow(k as u32).filter(|&t| t <= limit)?;
        for mut idx in 1..total {
            let mut c = Vec::with_capacity(k);
            for _ in 0..k {
                c.push(F::from_index((idx % q) as u32));
                idx /= q;
            }
            if let Some(f) = found(&c) {
                return Some(f);
            }
        }
        None
    };
    if k <= EXHAUSTIVE_END_DIM {
        return exhaustive(u64::MAX);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        if let Some(f) = found(&random_coeffs(k, &mut rng)) {
            return Some(f);
        }
    }
    exhaustive(100_000)
}

pub fn is_isomorphic<F: Field>(m: &Module<F>, n: &Module<F>, seed: u64) -> bool {
    isomorphism(m, n, seed).is_some()
}

/// Group summands into isomorphism classes: (representative, multiplicity).
pub fn group_isomorphic<F: Field>(summands: Vec<Module<F>>, seed: u64) -> Vec<(Module<F>, usize)> {
    let mut out: Vec<(Module<F>, usize)> = Vec::new();
    for s in summands {
        match out.iter_mut().find(|(r, _)| is_isomorphic(r, &s, seed)) {
            Some(e) => e.1 += 1,
            None => out.push((s, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Gf3;
    use crate::group::library;
    use std::sync::Arc;

    #[test]
    fn regular_s3_splits_into_two_pims_each() {
        let a = Algebra::<Gf3>::group_algebra(Arc::new(library::load("S3").unwrap()));
        let reg = Module::regular(a.clone());
        let parts = decompose_with_ends(&reg, a.regular_endomorphisms(), 0);
        assert_eq!(parts.iter().map(|s| s.module.dim()).collect::<Vec<_>>(), vec![3, 3]);
        assert!(!is_isomorphic(&parts[0].module, &parts[1].module, 0));
        // embeddings span the whole module
        let all = parts[0].basis.vstack(&parts[1].basis);
        assert_eq!(all.rank(), 6);
        for p in &parts {
            let incl = Morphism::new(p.module.clone(), reg.clone(), p.basis.transpose());
            assert!(incl.is_ok());
        }
    }

    #[test]
    fn direct_sum_decomposes_back() {
        let a = Algebra::<Gf3>::group_algebra(Arc::new(library::load("S3").unwrap()));
        let t = Module::trivial(a.clone()).unwrap();
        let reg = Module::regular(a);
        let m = t.direct_sum(&reg).unwrap().direct_sum(&t).unwrap();
        let parts = decompose(&m, 3);
        assert_eq!(parts.iter().map(|s| s.module.dim()).collect::<Vec<_>>(), vec![1, 1, 3, 3]);
        let grouped = group_isomorphic(parts.into_iter().map(|s| s.module).collect(), 0);
        assert_eq!(grouped.iter().map(|g| g.1).collect::<Vec<_>>(), vec![2, 1, 1]);
    }

    #[test]
    fn isomorphic_after_basis_change() {
        let a = Algebra::<Gf3>::group_algebra(Arc::new(library::load("D8").unwrap()));
        let reg = Module::regular(a);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = loop {
            let t = Matrix::<Gf3>::random(72, 72, &mut rng);
            if t.inverse().is_some() {
                break t;
            }
        };
        let other = reg.change_basis(&t).unwrap();
        let f = isomorphism(&reg, &other, 0).expect("isomorphic");
        assert!(f.is_homomorphism());
    }
}
