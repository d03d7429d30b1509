//! Bounded cochain complexes of modules.
//!
//! Degrees run from `lo` up to `lo + len - 1`; `diffs[k]` maps the term at
//! index `k` to the one at `k + 1`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hom::hom;
use crate::matrix::{EchelonBasis, Matrix};
use crate::module::{Module, Morphism};
use crate::structure::RepData;

#[derive(Clone, Debug)]
pub struct BoundedComplex<F: Field> {
    lo: i32,
    terms: Vec<Module<F>>,
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> BoundedComplex<F> {
    /// Checks shapes, that each differential is a homomorphism, and `d^2 = 0`.
    pub fn new(lo: i32, terms: Vec<Module<F>>, diffs: Vec<Matrix<F>>) -> Result<Self> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(Error::Dimension(format!("{} terms with {} differentials", terms.len(), diffs.len())));
        }
        for (k, d) in diffs.iter().enumerate() {
            Morphism::new(terms[k].clone(), terms[k + 1].clone(), d.clone())?;
        }
        for k in 1..diffs.len() {
            if !(&diffs[k] * &diffs[k - 1]).is_zero() {
                return Err(Error::Module(format!("d^2 != 0 at degree {}", lo + k as i32 - 1)));
            }
        }
        Ok(BoundedComplex { lo, terms, diffs })
    }

    /// `m` in the given degree.
    pub fn concentrated(m: Module<F>, degree: i32) -> Self {
        BoundedComplex { lo: degree, terms: vec![m], diffs: Vec::new() }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi()
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        self.terms[0].algebra()
    }

    pub fn terms(&self) -> &[Module<F>] {
        &self.terms
    }

    pub fn diffs(&self) -> &[Matrix<F>] {
        &self.diffs
    }

    /// Term in degree `d` (zero outside the range).
    pub fn term(&self, d: i32) -> Module<F> {
        self.index(d)
            .map(|k| self.terms[k].clone())
            .unwrap_or_else(|| Module::zero(self.algebra().clone()))
    }

    /// Differential leaving degree `d`, when both ends are in range.
    pub fn diff(&self, d: i32) -> Option<&Matrix<F>> {
        self.index(d).and_then(|k| self.diffs.get(k))
    }

    fn index(&self, d: i32) -> Option<usize> {
        (d >= self.lo && d <= self.hi()).then(|| (d - self.lo) as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.dim() == 0)
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(|t| t.dim()).sum()
    }

    pub fn squares_to_zero(&self) -> bool {
        (1..self.diffs.len()).all(|k| (&self.diffs[k] * &self.diffs[k - 1]).is_zero())
    }

    /// Kernel and image bases in degree `d`, as RREF rows.
    fn cycles_boundaries(&self, d: i32) -> (Matrix<F>, Matrix<F>) {
        let n = self.term(d).dim();
        let z = match self.diff(d) {
            Some(m) => m.nullspace(),
            None => Matrix::identity(n),
        };
        let b = match self.diff(d - 1) {
            Some(m) => m.transpose().row_space(),
            None => Matrix::zeros(0, n),
        };
        (z, b)
    }

    /// `H^d` as an explicit module.
    pub fn cohomology(&self, d: i32) -> Module<F> {
        let m = self.term(d);
        if m.dim() == 0 {
            return m;
        }
        let (z, b) = self.cycles_boundaries(d);
        let (zm, _) = m.submodule(&z).expect("cycles form a submodule");
        let coords = z.solve_left(&b).expect("boundaries are cycles");
        zm.quotient(&coords).expect("boundaries form a submodule").0
    }

    /// Nonzero cohomology, lowest degree first.
    pub fn cohomology_all(&self) -> Vec<(i32, Module<F>)> {
        self.degrees()
            .map(|d| (d, self.cohomology(d)))
            .filter(|(_, h)| h.dim() > 0)
            .collect()
    }

    pub fn cohomology_dims(&self) -> Vec<(i32, usize)> {
        self.degrees()
            .map(|d| {
                let (z, b) = self.cycles_boundaries(d);
                (d, z.rows() - b.rows())
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_dims().iter().all(|&(_, k)| k == 0)
    }

    /// Degreewise direct sum (ranges are widened with zero terms).
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for d in lo..=hi {
            terms.push(self.term(d).direct_sum(&other.term(d))?);
            if d < hi {
                let pick = |c: &Self| {
                    c.diff(d)
                        .cloned()
                        .unwrap_or_else(|| Matrix::zeros(c.term(d + 1).dim(), c.term(d).dim()))
                };
                diffs.push(pick(self).block_diag(&pick(other)));
            }
        }
        Ok(BoundedComplex { lo, terms, diffs })
    }

    /// Shift so that the top degree becomes `hi`.
    pub fn with_top(mut self, hi: i32) -> Self {
        self.lo = hi - (self.terms.len() as i32 - 1);
        self
    }

    /// Drop zero terms at both ends (keeping at least one term).
    pub fn trimmed(&self) -> Self {
        let mut a = 0;
        let mut b = self.terms.len();
        while a + 1 < b && self.terms[a].dim() == 0 {
            a += 1;
        }
        while b > a + 1 && self.terms[b - 1].dim() == 0 {
            b -= 1;
        }
        BoundedComplex {
            lo: self.lo + a as i32,
            terms: self.terms[a..b].to_vec(),
            diffs: self.diffs[a..b - 1].to_vec(),
        }
    }

    /// Cancel isomorphism components between indecomposable summands of
    /// adjacent terms until none remain. The result is homotopy equivalent.
    pub fn minimize(&self, seed: u64) -> Self {
        // change every term to a basis adapted to a Krull-Schmidt decomposition
        let mut parts: Vec<Vec<Module<F>>> = Vec::new();
        let mut bases: Vec<Matrix<F>> = Vec::new();
        for t in &self.terms {
            let s = decompose(t, seed);
            let mut basis = Matrix::zeros(0, t.dim());
            for x in &s {
                basis = basis.vstack(&x.basis);
            }
            bases.push(basis.transpose());
            parts.push(s.into_iter().map(|x| x.module).collect());
        }
        let mut diffs: Vec<Matrix<F>> = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| &(&bases[k + 1].inverse().expect("adapted basis") * d) * &bases[k])
            .collect();
        let offsets = |p: &[Module<F>]| {
            let mut o = vec![0];
            for m in p {
                o.push(o.last().unwrap() + m.dim());
            }
            o
        };
        'search: loop {
            for k in 0..diffs.len() {
                let (os, ot) = (offsets(&parts[k]), offsets(&parts[k + 1]));
                for a in 0..parts[k].len() {
                    for b in 0..parts[k + 1].len() {
                        let n = parts[k][a].dim();
                        if parts[k + 1][b].dim() != n {
                            continue;
                        }
                        let phi = diffs[k].block(ot[b], os[a], n, n);
                        let Some(phi_inv) = phi.inverse() else { continue };
                        let keep_src: Vec<usize> = (0..os[parts[k].len()]).filter(|&i| i < os[a] || i >= os[a + 1]).collect();
                        let keep_tgt: Vec<usize> =
                            (0..ot[parts[k + 1].len()]).filter(|&i| i < ot[b] || i >= ot[b + 1]).collect();
                        let a_cols: Vec<usize> = (os[a]..os[a + 1]).collect();
                        let b_rows: Vec<usize> = (ot[b]..ot[b + 1]).collect();
                        let m = &diffs[k];
                        let beta = m.select_rows(&b_rows).select_cols(&keep_src);
                        let gamma = m.select_rows(&keep_tgt).select_cols(&a_cols);
                        let delta = m.select_rows(&keep_tgt).select_cols(&keep_src);
                        diffs[k] = &delta - &(&(&gamma * &phi_inv) * &beta);
                        if k > 0 {
                            diffs[k - 1] = diffs[k - 1].select_rows(&keep_src);
                        }
                        if k + 1 < diffs.len() {
                            diffs[k + 1] = diffs[k + 1].select_cols(&keep_tgt);
                        }
                        parts[k].remove(a);
                        parts[k + 1].remove(b);
                        continue 'search;
                    }
                }
            }
            break;
        }
        let alg = self.algebra().clone();
        let terms = parts.iter().map(|p| Module::direct_sum_all(&alg, p).expect("same algebra")).collect();
        BoundedComplex { lo: self.lo, terms, diffs }
    }

    /// Quasi-isomorphic complex whose terms below the top are injective:
    /// each lower term is embedded in its injective hull and the next term
    /// replaced by the pushout. The top term then represents the complex in
    /// the stable category.
    pub fn stabilize(&self, rep: &RepData<F>) -> Self {
        let mut terms = self.terms.clone();
        let mut diffs = self.diffs.clone();
        for k in 0..diffs.len() {
            let w = terms[k].clone();
            if rep.is_projective(&w) {
                continue;
            }
            let (inj, iota, _) = rep.injective_hull(&w);
            let y = terms[k + 1].clone();
            let sum = y.direct_sum(&inj).expect("same algebra");
            // relations (d w, -iota w)
            let rel = diffs[k].vstack(&iota.matrix.scale(-F::one()));
            let (po, proj) = sum.quotient(&rel.transpose()).expect("pushout relations are invariant");
            let (ny, ni) = (y.dim(), inj.dim());
            let into_po_from_inj = proj.matrix.select_cols(&(ny..ny + ni).collect::<Vec<_>>());
            if k > 0 {
                diffs[k - 1] = &iota.matrix * &diffs[k - 1];
            }
            if k + 1 < diffs.len() {
                // [y, i] -> d y, through a section of the quotient
                let next = &diffs[k + 1];
                let full = next.hstack(&Matrix::zeros(next.rows(), ni));
                // the map factors through proj: full = g * proj
                diffs[k + 1] = proj.matrix.solve_left(&full).expect("well defined on the pushout");
            }
            diffs[k] = into_po_from_inj;
            terms[k] = inj;
            terms[k + 1] = po;
        }
        BoundedComplex { lo: self.lo, terms, diffs }
    }

    /// `End` in the homotopy category, as an algebra with composition
    /// `b_i b_j = b_i o b_j`. The basis is a complement of the null-homotopic
    /// maps inside the chain maps.
    pub fn homotopy_end(&self, name: &str) -> Result<Arc<Algebra<F>>> {
        let n = self.terms.len();
        let dims: Vec<usize> = self.terms.iter().map(|t| t.dim()).collect();
        let flat_len: usize = dims.iter().map(|d| d * d).sum();
        let flatten = |maps: &[Matrix<F>]| -> Vec<F> { maps.iter().flat_map(|m| m.data().to_vec()).collect() };
        let unflatten = |v: &[F]| -> Vec<Matrix<F>> {
            let mut out = Vec::with_capacity(n);
            let mut o = 0;
            for &d in &dims {
                out.push(Matrix::from_vec(d, d, v[o..o + d * d].to_vec()).unwrap());
                o += d * d;
            }
            out
        };
        // chain maps: coefficients over degreewise endomorphism bases
        let ends: Vec<Vec<Matrix<F>>> =
            self.terms.iter().map(|t| hom(t, t).into_iter().map(|f| f.matrix).collect()).collect();
        let offs: Vec<usize> = ends
            .iter()
            .scan(0, |s, e| {
                let o = *s;
                *s += e.len();
                Some(o)
            })
            .collect();
        let vars: usize = ends.iter().map(|e| e.len()).sum();
        let mut cons: Vec<Vec<F>> = Vec::new();
        for k in 0..self.diffs.len() {
            let d = &self.diffs[k];
            let size = d.rows() * d.cols();
            let mut cols: Vec<Vec<F>> = vec![vec![F::zero(); size]; vars];
            for (j, f) in ends[k].iter().enumerate() {
                cols[offs[k] + j] = (d * f).data().to_vec();
            }
            for (j, g) in ends[k + 1].iter().enumerate() {
                cols[offs[k + 1] + j] = (g * d).scale(-F::one()).data().to_vec();
            }
            for r in 0..size {
                cons.push(cols.iter().map(|c| c[r]).collect());
            }
        }
        let sols = if cons.is_empty() { Matrix::identity(vars) } else { Matrix::from_rows(vars, &cons).nullspace() };
        let chain_maps: Vec<Vec<F>> = sols
            .row_iter()
            .map(|c| {
                let maps: Vec<Matrix<F>> = (0..n)
                    .map(|k| {
                        let mut m = Matrix::zeros(dims[k], dims[k]);
                        for (j, e) in ends[k].iter().enumerate() {
                            let x = c[offs[k] + j];
                            if !x.is_zero_elem() {
                                m = &m + &e.scale(x);
                            }
                        }
                        m
                    })
                    .collect();
                flatten(&maps)
            })
            .collect();
        // null-homotopic maps d h + h d
        let mut null = EchelonBasis::new(flat_len);
        for k in 1..n {
            for h in hom(&self.terms[k], &self.terms[k - 1]) {
                let mut maps: Vec<Matrix<F>> = dims.iter().map(|&d| Matrix::zeros(d, d)).collect();
                maps[k] = &self.diffs[k - 1] * &h.matrix;
                maps[k - 1] = &h.matrix * &self.diffs[k - 1];
                null.insert(&flatten(&maps));
            }
        }
        let null_rank = null.rank();
        let mut span = null.clone();
        let mut basis: Vec<Vec<F>> = Vec::new();
        for v in &chain_maps {
            if span.insert(v) {
                basis.push(v.clone());
            }
        }
        let q = basis.len();
        let null_m = null.to_matrix();
        let mut all = Matrix::from_rows(flat_len, &basis);
        all = all.vstack(&null_m);
        debug_assert_eq!(all.rank(), q + null_rank);
        let coords = |v: &[F]| -> Vec<F> {
            let row = Matrix::from_rows(flat_len, &[v.to_vec()]);
            let c = all.solve_left(&row).expect("chain map in span");
            c.row(0)[..q].to_vec()
        };
        let mut left = Vec::with_capacity(q);
        for bi in &basis {
            let fi = unflatten(bi);
            let mut l = Matrix::zeros(q, q);
            for (j, bj) in basis.iter().enumerate() {
                let fj = unflatten(bj);
                let prod: Vec<Matrix<F>> = fi.iter().zip(&fj).map(|(a, b)| a * b).collect();
                for (k, c) in coords(&flatten(&prod)).into_iter().enumerate() {
                    l.set(k, j, c);
                }
            }
            left.push(l);
        }
        let id: Vec<Matrix<F>> = dims.iter().map(|&d| Matrix::identity(d)).collect();
        let unit = if q == 0 { Vec::new() } else { coords(&flatten(&id)) };
        Algebra::from_structure(name, left, unit)
    }
}
