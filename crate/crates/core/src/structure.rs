//! Structural data of modules over a symmetric algebra with known simples:
//! radical and socle series, Loewy layers, projective indecomposables,
//! projective covers, injective hulls and Heller translates.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::decompose::{decompose, decompose_with_ends, Summand};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hom::{hom, SpinPresentation};
use crate::matrix::{EchelonBasis, Matrix};
use crate::meataxe::SimpleIndex;
use crate::module::{Module, Morphism};

/// Multiplicity of each simple in each radical layer, head first.
pub type Layers = Vec<Vec<usize>>;

/// An algebra together with its simples and projective indecomposables.
#[derive(Clone, Debug)]
pub struct RepData<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub simples: SimpleIndex<F>,
    pims: Vec<Module<F>>,
    pim_presentations: Vec<SpinPresentation<F>>,
    pub seed: u64,
}

impl<F: Field> RepData<F> {
    /// Compute simples by chopping the regular module and the projective
    /// indecomposables by splitting it.
    pub fn new(algebra: &Arc<Algebra<F>>, seed: u64) -> Result<Self> {
        let simples = SimpleIndex::compute(algebra, seed);
        let reg = Module::regular(algebra.clone());
        let parts = decompose_with_ends(&reg, algebra.regular_endomorphisms(), seed);
        let mut pims: Vec<Option<Module<F>>> = vec![None; simples.len()];
        for s in parts {
            let heads: Vec<usize> = (0..simples.len())
                .filter(|&i| !hom(&s.module, simples.simple(i)).is_empty())
                .collect();
            if heads.len() != 1 {
                return Err(Error::LiftingFailed);
            }
            pims[heads[0]].get_or_insert(s.module);
        }
        let pims: Vec<Module<F>> = pims.into_iter().collect::<Option<_>>().ok_or(Error::LiftingFailed)?;
        let pim_presentations = pims.iter().map(SpinPresentation::new).collect();
        Ok(RepData { algebra: algebra.clone(), simples, pims, pim_presentations, seed })
    }

    /// Reorder and relabel the simples (and their projectives).
    pub fn relabel(&self, perm: &[usize], labels: Vec<String>) -> Self {
        RepData {
            algebra: self.algebra.clone(),
            simples: self.simples.relabel(perm, labels),
            pims: perm.iter().map(|&i| self.pims[i].clone()).collect(),
            pim_presentations: perm.iter().map(|&i| self.pim_presentations[i].clone()).collect(),
            seed: self.seed,
        }
    }

    pub fn num_simples(&self) -> usize {
        self.simples.len()
    }

    pub fn simple(&self, i: usize) -> &Module<F> {
        self.simples.simple(i)
    }

    pub fn pim(&self, i: usize) -> &Module<F> {
        &self.pims[i]
    }

    pub fn pims(&self) -> &[Module<F>] {
        &self.pims
    }

    pub fn label(&self, i: usize) -> &str {
        self.simples.label(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.simples.index_of(label)
    }

    pub fn end_degree(&self, i: usize) -> usize {
        self.simples.end_degree(i)
    }

    /// `[M : S_i]` for every simple, via `dim Hom(P_i, M)`.
    pub fn composition(&self, m: &Module<F>) -> Vec<usize> {
        (0..self.num_simples())
            .map(|i| self.pim_presentations[i].hom(m).len() / self.end_degree(i))
            .collect()
    }

    /// Multiplicities of the simples in the head.
    pub fn head(&self, m: &Module<F>) -> Vec<usize> {
        let p = SpinPresentation::new(m);
        (0..self.num_simples()).map(|i| p.hom(self.simple(i)).len() / self.end_degree(i)).collect()
    }

    /// Multiplicities of the simples in the socle.
    pub fn socle_multiplicities(&self, m: &Module<F>) -> Vec<usize> {
        (0..self.num_simples())
            .map(|i| self.simples.presentation(i).hom(m).len() / self.end_degree(i))
            .collect()
    }

    /// Basis of `rad(m)`: common kernel of all maps to simples.
    pub fn radical(&self, m: &Module<F>) -> Matrix<F> {
        let p = SpinPresentation::new(m);
        let mut stack = EchelonBasis::new(m.dim());
        for i in 0..self.num_simples() {
            for f in p.hom(self.simple(i)) {
                for r in f.matrix.row_iter() {
                    stack.insert(r);
                }
            }
        }
        stack.to_matrix().nullspace()
    }

    /// Basis of `soc(m)`: sum of images of maps from simples.
    pub fn socle(&self, m: &Module<F>) -> Matrix<F> {
        let mut e = EchelonBasis::new(m.dim());
        for i in 0..self.num_simples() {
            for f in self.simples.presentation(i).hom(m) {
                for r in f.matrix.transpose().row_iter() {
                    e.insert(r);
                }
            }
        }
        e.to_matrix()
    }

    /// Sum of all submodules of `m` isomorphic to simples in `set`.
    pub fn socle_in(&self, m: &Module<F>, set: &[usize]) -> Matrix<F> {
        let mut e = EchelonBasis::new(m.dim());
        for &i in set {
            for f in self.simples.presentation(i).hom(m) {
                for r in f.matrix.transpose().row_iter() {
                    e.insert(r);
                }
            }
        }
        e.to_matrix()
    }

    /// Radical series `m = R_0 > R_1 > ... > R_L = 0` as bases in `m`.
    pub fn radical_series(&self, m: &Module<F>) -> Vec<Matrix<F>> {
        let mut out = vec![Matrix::identity(m.dim())];
        let mut cur = m.clone();
        let mut basis = Matrix::identity(m.dim());
        while cur.dim() > 0 {
            let r = self.radical(&cur);
            let (sub, _) = cur.submodule(&r).expect("radical is a submodule");
            basis = &r * &basis;
            out.push(basis.clone());
            cur = sub;
        }
        out
    }

    /// Loewy layers: simple multiplicities in each radical layer.
    pub fn loewy_layers(&self, m: &Module<F>) -> Layers {
        let mut out = Vec::new();
        let mut cur = m.clone();
        while cur.dim() > 0 {
            out.push(self.head(&cur));
            let r = self.radical(&cur);
            cur = cur.submodule(&r).expect("radical").0;
        }
        out
    }

    /// Socle layers listed top first, so that a module whose socle and
    /// radical series agree shows the same list as `loewy_layers`.
    pub fn socle_layers(&self, m: &Module<F>) -> Layers {
        let mut out = Vec::new();
        let mut cur = m.clone();
        while cur.dim() > 0 {
            out.push(self.socle_multiplicities(&cur));
            let s = self.socle(&cur);
            cur = cur.quotient(&s).expect("socle").0;
        }
        out.reverse();
        out
    }

    /// Index of the dual of each simple.
    pub fn dual_simples(&self) -> Vec<usize> {
        (0..self.num_simples())
            .map(|i| {
                let d = self.simple(i).dual().expect("dual of a simple");
                self.simples.identify(&d).expect("dual of a simple is simple")
            })
            .collect()
    }

    pub fn render_layers(&self, layers: &Layers) -> String {
        render_layers(self.simples.labels(), layers)
    }

    /// Loewy layers in the `/` notation, e.g. `5/1234/555/1234/5`.
    pub fn layer_string(&self, m: &Module<F>) -> String {
        self.render_layers(&self.loewy_layers(m))
    }

    /// Cartan matrix `c[i][j] = [P_j : S_i]`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let cols: Vec<Vec<usize>> = self.pims.iter().map(|p| self.composition(p)).collect();
        (0..self.num_simples()).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }

    /// Projective cover `P -> m`; `P` is a direct sum of projective
    /// indecomposables, listed in `parts` by simple index.
    pub fn projective_cover(&self, m: &Module<F>) -> (Module<F>, Morphism<F>, Vec<usize>) {
        let rad = self.radical(m);
        let head_rank = m.dim() - rad.rows();
        let mut img = EchelonBasis::from_matrix(&rad);
        let mut chosen: Vec<Matrix<F>> = Vec::new();
        let mut parts = Vec::new();
        'outer: for i in 0..self.num_simples() {
            for f in self.pim_presentations[i].hom(m) {
                if img.rank() == m.dim() {
                    break 'outer;
                }
                let before = img.rank();
                for c in f.matrix.transpose().row_iter() {
                    img.insert(c);
                }
                if img.rank() > before {
                    chosen.push(f.matrix);
                    parts.push(i);
                }
            }
        }
        debug_assert_eq!(img.rank() - rad.rows(), head_rank);
        let p = Module::direct_sum_all(&self.algebra, &parts.iter().map(|&i| self.pims[i].clone()).collect::<Vec<_>>())
            .expect("same algebra");
        let mut mat = Matrix::zeros(m.dim(), 0);
        for c in &chosen {
            mat = mat.hstack(c);
        }
        (p.clone(), Morphism { source: p, target: m.clone(), matrix: mat }, parts)
    }

    /// Injective hull `m -> I` (projective indecomposables, symmetric algebra).
    pub fn injective_hull(&self, m: &Module<F>) -> (Module<F>, Morphism<F>, Vec<usize>) {
        let soc = self.socle(m);
        let pres = SpinPresentation::new(m);
        let mut kernel = soc.clone();
        let mut chosen: Vec<Matrix<F>> = Vec::new();
        let mut parts = Vec::new();
        'outer: for i in 0..self.num_simples() {
            for f in pres.hom(&self.pims[i]) {
                if kernel.rows() == 0 {
                    break 'outer;
                }
                // kernel of f restricted to the current kernel subspace
                let img = &f.matrix * &kernel.transpose();
                let null = img.nullspace();
                if null.rows() < kernel.rows() {
                    kernel = (&null * &kernel).row_space();
                    chosen.push(f.matrix);
                    parts.push(i);
                }
            }
        }
        debug_assert_eq!(kernel.rows(), 0);
        let inj = Module::direct_sum_all(&self.algebra, &parts.iter().map(|&i| self.pims[i].clone()).collect::<Vec<_>>())
            .expect("same algebra");
        let mut mat = Matrix::zeros(0, m.dim());
        for c in &chosen {
            mat = mat.vstack(c);
        }
        (inj.clone(), Morphism { source: m.clone(), target: inj, matrix: mat }, parts)
    }

    /// Whether the indecomposable `x` is projective.
    pub fn is_projective_indecomposable(&self, x: &Module<F>) -> Option<usize> {
        let h = self.head(x);
        let total: usize = h.iter().sum();
        if total != 1 {
            return None;
        }
        let i = h.iter().position(|&k| k == 1).unwrap();
        (self.pims[i].dim() == x.dim()).then_some(i)
    }

    /// Split off projective summands: returns the non-projective summands
    /// and the multiplicity of each projective indecomposable.
    pub fn strip_projectives(&self, m: &Module<F>) -> (Vec<Summand<F>>, Vec<usize>) {
        // m is a quotient of its projective cover, so equal dimensions mean
        // m is projective with the head as multiplicities
        let head = self.head(m);
        if head.iter().zip(&self.pims).map(|(h, p)| h * p.dim()).sum::<usize>() == m.dim() {
            return (Vec::new(), head);
        }
        let mut proj = vec![0; self.num_simples()];
        let mut core = Vec::new();
        for s in decompose(m, self.seed) {
            match self.is_projective_indecomposable(&s.module) {
                Some(i) => proj[i] += 1,
                None => core.push(s),
            }
        }
        (core, proj)
    }

    /// The non-projective part of `m` as a single module.
    pub fn core(&self, m: &Module<F>) -> Module<F> {
        let (core, _) = self.strip_projectives(m);
        let parts: Vec<Module<F>> = core.into_iter().map(|s| s.module).collect();
        Module::direct_sum_all(&self.algebra, &parts).expect("same algebra")
    }

    /// Projective-free kernel of the projective cover.
    pub fn omega(&self, m: &Module<F>) -> Module<F> {
        let (_, f, _) = self.projective_cover(m);
        let (k, _) = f.kernel().expect("kernel");
        self.core(&k)
    }

    /// Projective-free cokernel of the injective hull.
    pub fn omega_inv(&self, m: &Module<F>) -> Module<F> {
        let (_, f, _) = self.injective_hull(m);
        let (c, _) = f.cokernel().expect("cokernel");
        self.core(&c)
    }

    pub fn is_projective(&self, m: &Module<F>) -> bool {
        let head = self.head(m);
        head.iter().zip(&self.pims).map(|(h, p)| h * p.dim()).sum::<usize>() == m.dim()
    }
}

/// Render layers with the given labels; labels within a layer follow the
/// label order.
pub fn render_layers(labels: &[String], layers: &Layers) -> String {
    layers
        .iter()
        .map(|l| {
            let mut s = String::new();
            for (i, &k) in l.iter().enumerate() {
                for _ in 0..k {
                    s.push_str(&labels[i]);
                }
            }
            s
        })
        .collect::<Vec<_>>()
        .join("/")
}

/// Parse a `/`-separated layer string over the given labels; labels are
/// matched longest first.
pub fn parse_layers(labels: &[String], s: &str) -> Result<Layers> {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(labels[i].len()));
    let mut out = Vec::new();
    for part in s.trim().split('/') {
        let mut row = vec![0; labels.len()];
        let mut rest = part.trim();
        if rest.is_empty() {
            return Err(Error::Parse(format!("empty layer in `{s}`")));
        }
        while !rest.is_empty() {
            let i = order
                .iter()
                .copied()
                .find(|&i| rest.starts_with(labels[i].as_str()))
                .ok_or_else(|| Error::Parse(format!("unknown label at `{rest}` in `{s}`")))?;
            row[i] += 1;
            rest = &rest[labels[i].len()..];
        }
        out.push(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::is_isomorphic;
    use crate::field::Gf3;
    use crate::group::library;

    fn data(name: &str) -> RepData<Gf3> {
        let a = Algebra::group_algebra(Arc::new(library::load(name).unwrap()));
        RepData::new(&a, 0).unwrap()
    }

    #[test]
    fn s3_projectives_are_uniserial() {
        let d = data("S3");
        assert_eq!(d.layer_string(d.pim(0)), "1/2/1");
        assert_eq!(d.layer_string(d.pim(1)), "2/1/2");
    }

    #[test]
    fn cover_hull_and_heller() {
        let d = data("S3");
        let s2 = d.simple(1).clone();
        let (p, f, parts) = d.projective_cover(&s2);
        assert_eq!((p.dim(), parts), (3, vec![1]));
        assert!(f.is_homomorphism() && f.rank() == 1);
        let (i, g, _) = d.injective_hull(&s2);
        assert_eq!(i.dim(), 3);
        assert!(g.is_homomorphism() && g.rank() == 1);
        let om = d.omega(&s2);
        assert_eq!(d.layer_string(&om), "1/2");
        let back = d.omega_inv(&om);
        assert!(is_isomorphic(&back, &s2, 0));
        assert!(d.omega(d.pim(0)).is_zero());
    }

    #[test]
    fn cartan_symmetric_for_d8() {
        let d = data("D8");
        let c = d.cartan();
        for i in 0..c.len() {
            for j in 0..c.len() {
                assert_eq!(c[i][j], c[j][i]);
            }
        }
        let total: usize = (0..d.num_simples()).map(|i| d.pim(i).dim() * d.simple(i).dim() / d.end_degree(i)).sum();
        assert_eq!(total, 72);
    }
}
