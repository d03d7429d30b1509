//! Homomorphism spaces by spinning.
//!
//! `M` is presented by a spin basis: seed vectors and their images under
//! generators. A homomorphism is determined by the images of the seeds, and
//! the closing relations of the spin become linear constraints on them.

use crate::field::Field;
use crate::matrix::{EchelonBasis, Matrix};
use crate::module::{Module, Morphism};

/// Spin presentation of a module.
#[derive(Clone, Debug)]
pub struct SpinPresentation<F: Field> {
    module: Module<F>,
    /// For each spin basis vector: its seed ordinal, and its parent and
    /// generator (None for seeds).
    root: Vec<usize>,
    parent: Vec<Option<(usize, usize)>>,
    /// `gen * b_k = sum_j c_j b_j`.
    relations: Vec<(usize, usize, Vec<F>)>,
    seeds: usize,
    /// Inverse of the matrix whose columns are the spin basis.
    basis_inv: Matrix<F>,
}

impl<F: Field> SpinPresentation<F> {
    pub fn new(m: &Module<F>) -> Self {
        let d = m.dim();
        let mut e = EchelonBasis::tracked(d);
        let mut vecs: Vec<Vec<F>> = Vec::with_capacity(d);
        let mut root = Vec::with_capacity(d);
        let mut parent = Vec::with_capacity(d);
        let mut relations = Vec::new();
        let mut seeds = 0;
        let gens_t = m.transposed_gens();
        let mut next = 0;
        for i in 0..d {
            if e.is_full() {
                break;
            }
            let mut v = vec![F::zero(); d];
            v[i] = F::one();
            if e.contains(&v) {
                continue;
            }
            e.insert(&v);
            vecs.push(v);
            root.push(seeds);
            parent.push(None);
            seeds += 1;
            while next < vecs.len() {
                for (x, gt) in gens_t.iter().enumerate() {
                    let w = gt.vec_mul(&vecs[next]);
                    let (res, coeffs) = e.reduce_tracked(&w);
                    if res.iter().all(|a| a.is_zero_elem()) {
                        relations.push((next, x, coeffs));
                    } else {
                        e.insert(&w);
                        vecs.push(w);
                        root.push(root[next]);
                        parent.push(Some((next, x)));
                    }
                }
                next += 1;
            }
        }
        let basis_inv = Matrix::from_rows(d, &vecs).transpose().inverse().expect("spin basis");
        SpinPresentation { module: m.clone(), root, parent, relations, seeds, basis_inv }
    }

    pub fn module(&self) -> &Module<F> {
        &self.module
    }

    pub fn num_seeds(&self) -> usize {
        self.seeds
    }

    /// Basis of `Hom(M, n)`.
    pub fn hom(&self, n: &Module<F>) -> Vec<Morphism<F>> {
        let (dm, dn) = (self.module.dim(), n.dim());
        if dm == 0 || dn == 0 {
            return Vec::new();
        }
        let r = self.seeds;
        let unknowns = r * dn;
        // w[k]: image of b_k as a function of its seed's image
        let mut w: Vec<Matrix<F>> = Vec::with_capacity(dm);
        for k in 0..dm {
            match self.parent[k] {
                None => w.push(Matrix::identity(dn)),
                Some((p, x)) => {
                    let m = &n.gens()[x] * &w[p];
                    w.push(m);
                }
            }
        }
        let mut cons = EchelonBasis::new(unknowns);
        'rel: for (k, x, coeffs) in &self.relations {
            let mut block = Matrix::zeros(dn, unknowns);
            let lhs = &n.gens()[*x] * &w[*k];
            block.set_block(0, self.root[*k] * dn, &lhs);
            for (j, &c) in coeffs.iter().enumerate() {
                if c.is_zero_elem() {
                    continue;
                }
                let off = self.root[j] * dn;
                let cur = block.block(0, off, dn, dn);
                block.set_block(0, off, &(&cur - &w[j].scale(c)));
            }
            for row in block.row_iter() {
                cons.insert(row);
                if cons.is_full() {
                    break 'rel;
                }
            }
        }
        let sols = cons.to_matrix().nullspace();
        sols.row_iter()
            .map(|u| {
                let mut l = Matrix::zeros(dn, dm);
                for k in 0..dm {
                    let s = &u[self.root[k] * dn..(self.root[k] + 1) * dn];
                    let col = w[k].mul_vec(s);
                    for (i, c) in col.into_iter().enumerate() {
                        l.set(i, k, c);
                    }
                }
                Morphism { source: self.module.clone(), target: n.clone(), matrix: &l * &self.basis_inv }
            })
            .collect()
    }
}

/// Basis of `Hom(m, n)`.
pub fn hom<F: Field>(m: &Module<F>, n: &Module<F>) -> Vec<Morphism<F>> {
    SpinPresentation::new(m).hom(n)
}

pub fn hom_dim<F: Field>(m: &Module<F>, n: &Module<F>) -> usize {
    hom(m, n).len()
}

/// Basis of `End(m)` as matrices.
pub fn endomorphisms<F: Field>(m: &Module<F>) -> Vec<Matrix<F>> {
    hom(m, m).into_iter().map(|f| f.matrix).collect()
}

/// Linear combination of morphism matrices.
pub fn combine<F: Field>(basis: &[Matrix<F>], coeffs: &[F], rows: usize, cols: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(rows, cols);
    for (b, &c) in basis.iter().zip(coeffs) {
        if !c.is_zero_elem() {
            m = &m + &b.scale(c);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Gf3;
    use crate::group::library;
    use std::sync::Arc;

    /// Oracle: solve `F a = b F` for all generators directly.
    fn hom_dim_oracle(m: &Module<Gf3>, n: &Module<Gf3>) -> usize {
        let (dm, dn) = (m.dim(), n.dim());
        let vars = dm * dn;
        let mut rows: Vec<Vec<Gf3>> = Vec::new();
        for (a, b) in m.gens().iter().zip(n.gens()) {
            // (F a)_{ij} - (b F)_{ij}, F_{kl} at index k*dm + l
            for i in 0..dn {
                for j in 0..dm {
                    let mut r = vec![Gf3::new(0); vars];
                    for l in 0..dm {
                        r[i * dm + l] += a.get(l, j);
                    }
                    for k in 0..dn {
                        r[k * dm + j] -= b.get(i, k);
                    }
                    rows.push(r);
                }
            }
        }
        if rows.is_empty() {
            return vars;
        }
        vars - Matrix::from_rows(vars, &rows).rank()
    }

    #[test]
    fn hom_matches_linear_oracle() {
        let a = Algebra::<Gf3>::group_algebra(Arc::new(library::load("S3").unwrap()));
        let r = Module::regular(a.clone());
        let t = Module::trivial(a.clone()).unwrap();
        let sgn = Module::new(a.clone(), vec![Matrix::identity(1), Matrix::from_ints(1, 1, &[2])]).unwrap();
        let mods = [r.clone(), t.clone(), sgn.clone(), r.direct_sum(&t).unwrap(), t.direct_sum(&sgn).unwrap()];
        for m in &mods {
            for n in &mods {
                let h = hom(m, n);
                assert_eq!(h.len(), hom_dim_oracle(m, n));
                assert!(h.iter().all(|f| f.is_homomorphism()));
            }
        }
        assert_eq!(hom_dim(&r, &r), 6);
    }

    #[test]
    fn hom_into_zero_is_empty() {
        let a = Algebra::<Gf3>::group_algebra(Arc::new(library::load("S3").unwrap()));
        let r = Module::regular(a.clone());
        assert!(hom(&r, &Module::zero(a)).is_empty());
    }
}
