//! MeatAxe: irreducibility testing and composition factors.
//!
//! A random algebra element is pushed through small polynomials until it is
//! singular with small nullity. Norton's test then spins every kernel vector
//! of it and of its transpose; if none spins to a proper subspace the module
//! is irreducible. The search over kernel vectors is exhaustive, so the
//! verdict does not depend on the random choices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::field::Field;
use crate::hom::{hom, SpinPresentation};
use crate::matrix::Matrix;
use crate::module::Module;
use std::sync::Arc;

pub const DEFAULT_SEED: u64 = 0;

/// Candidate polynomials `x - a` and monic irreducible quadratics, as
/// coefficient lists `[c0, c1, 1]`.
fn small_polynomials<F: Field>() -> Vec<Vec<F>> {
    let mut out: Vec<Vec<F>> = F::elements().into_iter().map(|a| vec![-a, F::one()]).collect();
    for b in F::elements() {
        for a in F::elements() {
            let has_root = F::elements().into_iter().any(|x| (x * x + a * x + b).is_zero_elem());
            if !has_root {
                out.push(vec![b, a, F::one()]);
            }
        }
    }
    out
}

fn eval_poly<F: Field>(p: &[F], t: &Matrix<F>) -> Matrix<F> {
    let n = t.rows();
    let mut acc = Matrix::zeros(n, n);
    for &c in p.iter().rev() {
        acc = &(&acc * t) + &Matrix::scalar(n, c);
    }
    acc
}

/// All vectors of a subspace up to scalars: combinations of the basis rows
/// whose first nonzero coefficient is 1.
fn projective_points<F: Field>(basis: &Matrix<F>) -> impl Iterator<Item = Vec<F>> + '_ {
    let k = basis.rows();
    let q = F::ORDER as u64;
    let total = q.saturating_pow(k as u32);
    (1..total).filter_map(move |mut idx| {
        let mut c = Vec::with_capacity(k);
        for _ in 0..k {
            c.push(F::from_index((idx % q) as u32));
            idx /= q;
        }
        let first = c.iter().position(|x| !x.is_zero_elem())?;
        (c[first] == F::one()).then(|| basis.vec_mul(&c))
    })
}

/// Row space spanned by the orbit of `v` under the matrices (acting on row
/// vectors by right multiplication).
fn spin_rows<F: Field>(mats: &[Matrix<F>], v: &[F]) -> Matrix<F> {
    let d = v.len();
    let mut e = crate::matrix::EchelonBasis::new(d);
    let mut queue = vec![v.to_vec()];
    e.insert(v);
    while let Some(x) = queue.pop() {
        for m in mats {
            let w = m.vec_mul(&x);
            if e.insert(&w) {
                if e.is_full() {
                    return Matrix::identity(d);
                }
                queue.push(w);
            }
        }
    }
    e.to_matrix()
}

/// A proper nonzero submodule (RREF basis), or `None` if `m` is irreducible.
pub fn find_submodule<F: Field, R: Rng>(m: &Module<F>, rng: &mut R) -> Option<Matrix<F>> {
    let d = m.dim();
    if d <= 1 {
        return None;
    }
    // row-vector actions: v -> v g^T is the column action; v -> v g is the transpose module
    let col_act: Vec<Matrix<F>> = m.transposed_gens();
    let row_act: Vec<Matrix<F>> = m.gens().to_vec();
    let polys = small_polynomials::<F>();
    let mut words: Vec<Matrix<F>> = m.gens().to_vec();
    let k = words.len();
    for attempt in 0..200 {
        // random walk in the algebra
        for _ in 0..2 {
            let a = rng.gen_range(0..words.len());
            let b = rng.gen_range(0..k);
            let prod = &words[a] * &m.gens()[b];
            words.push(prod);
        }
        let mut theta = Matrix::zeros(d, d);
        for _ in 0..4 {
            let w = &words[rng.gen_range(0..words.len())];
            let c = F::from_index(rng.gen_range(0..F::ORDER));
            theta = &theta + &w.scale(c);
        }
        let mut best: Option<(usize, Matrix<F>)> = None;
        for p in &polys {
            let pt = eval_poly(p, &theta);
            let ker = pt.nullspace();
            let n = ker.rows();
            if n > 0 && best.as_ref().map_or(true, |b| n < b.0) {
                best = Some((n, pt));
            }
        }
        let Some((nullity, pt)) = best else { continue };
        if nullity > 6 && attempt < 100 {
            // a few random spins before trying another element
            let ker = pt.nullspace();
            for _ in 0..8 {
                let c: Vec<F> = (0..ker.rows()).map(|_| F::from_index(rng.gen_range(0..F::ORDER))).collect();
                let v = ker.vec_mul(&c);
                if v.iter().all(|x| x.is_zero_elem()) {
                    continue;
                }
                let s = spin_rows(&col_act, &v);
                if s.rows() < d {
                    return Some(s);
                }
            }
            continue;
        }
        let ker = pt.nullspace();
        for v in projective_points(&ker) {
            let s = spin_rows(&col_act, &v);
            if s.rows() < d {
                return Some(s);
            }
        }
        let kert = pt.transpose().nullspace();
        for v in projective_points(&kert) {
            let s = spin_rows(&row_act, &v);
            if s.rows() < d {
                // annihilator of an invariant subspace of the transpose module
                return Some(s.nullspace());
            }
        }
        return None;
    }
    unreachable!("no singular algebra element found")
}

pub fn is_irreducible<F: Field>(m: &Module<F>, seed: u64) -> bool {
    m.dim() > 0 && find_submodule(m, &mut ChaCha8Rng::seed_from_u64(seed)).is_none()
}

/// Composition factors, as irreducible modules, in discovery order.
pub fn composition_factors<F: Field>(m: &Module<F>, seed: u64) -> Vec<Module<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stack = vec![m.clone()];
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match find_submodule(&x, &mut rng) {
            None => out.push(x),
            Some(w) => {
                let (sub, _) = x.submodule(&w).expect("invariant");
                let (quo, _) = x.quotient(&w).expect("invariant");
                stack.push(quo);
                stack.push(sub);
            }
        }
    }
    out
}

/// The isomorphism classes of simple modules of an algebra.
#[derive(Clone, Debug)]
pub struct SimpleIndex<F: Field> {
    algebra: Arc<Algebra<F>>,
    simples: Vec<Module<F>>,
    labels: Vec<String>,
    end_degree: Vec<usize>,
    presentations: Vec<SpinPresentation<F>>,
}

fn fingerprint<F: Field>(s: &Module<F>) -> (usize, Vec<u32>) {
    let traces = match s.algebra().group() {
        Some(_) => s.all_element_matrices().iter().map(|m| m.trace().index()).collect(),
        None => s.gens().iter().map(|m| m.trace().index()).collect(),
    };
    (s.dim(), traces)
}

impl<F: Field> SimpleIndex<F> {
    /// Chop the regular module and collect its distinct composition factors,
    /// ordered by dimension and then by the character of traces (so the
    /// trivial module comes first). Labels are `1, 2, ...` in that order.
    pub fn compute(algebra: &Arc<Algebra<F>>, seed: u64) -> Self {
        let reg = Module::regular(algebra.clone());
        let mut simples: Vec<Module<F>> = Vec::new();
        for s in composition_factors(&reg, seed) {
            if !simples.iter().any(|t| t.dim() == s.dim() && !hom(&s, t).is_empty()) {
                simples.push(s);
            }
        }
        simples.sort_by_cached_key(fingerprint);
        let labels = (1..=simples.len()).map(|i| i.to_string()).collect();
        Self::from_simples(algebra, simples, labels)
    }

    pub fn from_simples(algebra: &Arc<Algebra<F>>, simples: Vec<Module<F>>, labels: Vec<String>) -> Self {
        let presentations: Vec<SpinPresentation<F>> = simples.iter().map(SpinPresentation::new).collect();
        let end_degree = presentations.iter().zip(&simples).map(|(p, s)| p.hom(s).len()).collect();
        SimpleIndex { algebra: algebra.clone(), simples, labels, end_degree, presentations }
    }

    /// Reorder and relabel: new position `i` holds old simple `perm[i]`.
    pub fn relabel(&self, perm: &[usize], labels: Vec<String>) -> Self {
        assert_eq!(perm.len(), self.simples.len());
        let simples = perm.iter().map(|&i| self.simples[i].clone()).collect();
        SimpleIndex {
            algebra: self.algebra.clone(),
            simples,
            labels,
            end_degree: perm.iter().map(|&i| self.end_degree[i]).collect(),
            presentations: perm.iter().map(|&i| self.presentations[i].clone()).collect(),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn simple(&self, i: usize) -> &Module<F> {
        &self.simples[i]
    }

    pub fn simples(&self) -> &[Module<F>] {
        &self.simples
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn end_degree(&self, i: usize) -> usize {
        self.end_degree[i]
    }

    pub fn presentation(&self, i: usize) -> &SpinPresentation<F> {
        &self.presentations[i]
    }

    /// Index of the simple isomorphic to the irreducible module `s`.
    pub fn identify(&self, s: &Module<F>) -> Option<usize> {
        (0..self.len()).find(|&i| self.simples[i].dim() == s.dim() && !self.presentations[i].hom(s).is_empty())
    }

    /// Composition multiplicities of `m` by MeatAxe chopping.
    pub fn chop(&self, m: &Module<F>, seed: u64) -> Vec<usize> {
        let mut mult = vec![0; self.len()];
        for s in composition_factors(m, seed) {
            let i = self.identify(&s).expect("composition factor is a known simple");
            mult[i] += 1;
        }
        mult
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf3};
    use crate::group::library;

    fn simple_dims<F: Field>(name: &str) -> (Vec<usize>, Vec<usize>) {
        let a = Algebra::<F>::group_algebra(Arc::new(library::load(name).unwrap()));
        let idx = SimpleIndex::compute(&a, DEFAULT_SEED);
        (idx.simples().iter().map(|s| s.dim()).collect(), (0..idx.len()).map(|i| idx.end_degree(i)).collect())
    }

    #[test]
    fn automizer_simples() {
        assert_eq!(simple_dims::<Gf3>("C4"), (vec![1, 1, 2], vec![1, 1, 2]));
        assert_eq!(simple_dims::<Gf3>("Q8").0, vec![1, 1, 1, 1, 2]);
        assert_eq!(simple_dims::<Gf3>("D8").0, vec![1, 1, 1, 1, 2]);
        assert_eq!(simple_dims::<Gf3>("SD16").0, vec![1, 1, 1, 1, 2, 2, 2]);
    }

    #[test]
    fn small_group_simples() {
        assert_eq!(simple_dims::<Gf3>("S3").0, vec![1, 1]);
        assert_eq!(simple_dims::<Gf2>("A4"), (vec![1, 2], vec![1, 2]));
        assert_eq!(simple_dims::<Gf2>("C2^3:C7").0, vec![1, 3, 3]);
    }

    #[test]
    fn trivial_is_first() {
        let a = Algebra::<Gf3>::group_algebra(Arc::new(library::load("SD16").unwrap()));
        let idx = SimpleIndex::compute(&a, DEFAULT_SEED);
        assert_eq!(idx.simple(0).gens(), Module::trivial(a).unwrap().gens());
    }

    #[test]
    fn chop_is_seed_independent() {
        let a = Algebra::<Gf3>::group_algebra(Arc::new(library::load("D8").unwrap()));
        let idx = SimpleIndex::compute(&a, DEFAULT_SEED);
        let reg = Module::regular(a);
        let m0 = idx.chop(&reg, 0);
        for seed in 1..4 {
            assert_eq!(idx.chop(&reg, seed), m0);
        }
        let total: usize = m0.iter().enumerate().map(|(i, k)| k * idx.simple(i).dim()).sum();
        assert_eq!(total, 72);
    }
}
