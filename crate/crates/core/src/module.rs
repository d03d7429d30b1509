//! Modules given by generator action matrices, and module homomorphisms.
//!
//! Modules are left modules acting on column vectors; subspaces are row
//! bases in RREF. A morphism `f: M -> N` is a `dim N x dim M` matrix.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraKind};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{EchelonBasis, Matrix};

#[derive(Clone)]
pub struct Module<F: Field> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    gens: Arc<Vec<Matrix<F>>>,
}

impl<F: Field> fmt::Debug for Module<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {} over {})", self.dim, self.algebra.name())
    }
}

#[derive(Clone, Debug)]
pub struct Morphism<F: Field> {
    pub source: Module<F>,
    pub target: Module<F>,
    pub matrix: Matrix<F>,
}

impl<F: Field> Module<F> {
    /// Validated construction: shapes, invertibility of group generators and
    /// the group relations (via the multiplication table) for small sizes.
    pub fn new(algebra: Arc<Algebra<F>>, gens: Vec<Matrix<F>>) -> Result<Self> {
        let k = algebra.num_generators();
        if gens.len() != k {
            return Err(Error::Module(format!("expected {k} action matrices, got {}", gens.len())));
        }
        let dim = gens.first().map(|m| m.rows()).unwrap_or(0);
        if gens.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Module("action matrices must be square of equal size".into()));
        }
        let m = Module { algebra, dim, gens: Arc::new(gens) };
        m.check_relations()?;
        Ok(m)
    }

    pub fn new_unchecked(algebra: Arc<Algebra<F>>, dim: usize, gens: Vec<Matrix<F>>) -> Self {
        debug_assert!(gens.iter().all(|m| m.rows() == dim && m.cols() == dim));
        Module { algebra, dim, gens: Arc::new(gens) }
    }

    fn check_relations(&self) -> Result<()> {
        match self.algebra.kind() {
            AlgebraKind::Group(g) => {
                if self.gens.iter().any(|m| m.inverse().is_none()) {
                    return Err(Error::Module("group generators must act invertibly".into()));
                }
                let mats = self.all_element_matrices();
                for x in 0..g.order() {
                    for (k, &s) in g.generators().iter().enumerate() {
                        if &mats[x] * &self.gens[k] != mats[g.mul(x, s)] {
                            return Err(Error::Module("action violates the group relations".into()));
                        }
                    }
                }
                Ok(())
            }
            AlgebraKind::Structure { left, unit } => {
                let d = left.len();
                let mut u = Matrix::zeros(self.dim, self.dim);
                for (i, &c) in unit.iter().enumerate() {
                    u = &u + &self.gens[i].scale(c);
                }
                if !u.is_identity() {
                    return Err(Error::Module("unit does not act as the identity".into()));
                }
                for i in 0..d {
                    for j in 0..d {
                        let mut rhs = Matrix::zeros(self.dim, self.dim);
                        for k in 0..d {
                            let c = left[i].get(k, j);
                            if !c.is_zero_elem() {
                                rhs = &rhs + &self.gens[k].scale(c);
                            }
                        }
                        if &self.gens[i] * &self.gens[j] != rhs {
                            return Err(Error::Module("action violates the structure constants".into()));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        let k = algebra.num_generators();
        Module { algebra, dim: 0, gens: Arc::new(vec![Matrix::zeros(0, 0); k]) }
    }

    pub fn trivial(algebra: Arc<Algebra<F>>) -> Result<Self> {
        if algebra.group().is_none() {
            return Err(Error::Module("trivial module needs a group algebra".into()));
        }
        let k = algebra.num_generators();
        Ok(Module { algebra, dim: 1, gens: Arc::new(vec![Matrix::identity(1); k]) })
    }

    pub fn regular(algebra: Arc<Algebra<F>>) -> Self {
        let gens = algebra.regular_generators();
        let dim = algebra.dim();
        Module { algebra, dim, gens: Arc::new(gens) }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn gens(&self) -> &[Matrix<F>] {
        &self.gens
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::Module(format!(
                "modules over different algebras ({} vs {})",
                self.algebra.name(),
                other.algebra.name()
            )))
        }
    }

    /// Action matrix of a group element.
    pub fn element_matrix(&self, g: usize) -> Matrix<F> {
        let grp = self.algebra.group().expect("group algebra");
        let mut m = Matrix::identity(self.dim);
        for &k in grp.word(g) {
            m = &m * &self.gens[k];
        }
        m
    }

    /// Action matrices of all group elements, indexed by element.
    pub fn all_element_matrices(&self) -> Vec<Matrix<F>> {
        let grp = self.algebra.group().expect("group algebra");
        let n = grp.order();
        let mut out: Vec<Option<Matrix<F>>> = vec![None; n];
        out[0] = Some(Matrix::identity(self.dim));
        // words are BFS words, so the prefix of a word is computed first
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&g| grp.word(g).len());
        for g in order.into_iter().skip(1) {
            let w = grp.word(g);
            let last = *w.last().unwrap();
            let prefix = grp.mul(g, grp.inv(grp.generators()[last]));
            let m = out[prefix].as_ref().expect("prefix first") * &self.gens[last];
            out[g] = Some(m);
        }
        out.into_iter().map(|m| m.unwrap()).collect()
    }

    /// Action of a group-algebra element `sum c_g g` (coefficients indexed by
    /// group element).
    pub fn algebra_element_matrix(&self, coeffs: &[F]) -> Matrix<F> {
        let mats = self.all_element_matrices();
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (g, &c) in coeffs.iter().enumerate() {
            if !c.is_zero_elem() {
                m = &m + &mats[g].scale(c);
            }
        }
        m
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let gens = self.gens.iter().zip(other.gens.iter()).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Module { algebra: self.algebra.clone(), dim: self.dim + other.dim, gens: Arc::new(gens) })
    }

    pub fn direct_sum_all(algebra: &Arc<Algebra<F>>, parts: &[Module<F>]) -> Result<Self> {
        let mut m = Module::zero(algebra.clone());
        for p in parts {
            m = m.direct_sum(p)?;
        }
        Ok(m)
    }

    /// Contragredient dual `g -> rho(g^-1)^T` (group algebras only).
    pub fn dual(&self) -> Result<Self> {
        if self.algebra.group().is_none() {
            return Err(Error::Module("dual needs a group algebra".into()));
        }
        let gens = self.gens.iter().map(|m| m.inverse().expect("invertible").transpose()).collect();
        Ok(Module { algebra: self.algebra.clone(), dim: self.dim, gens: Arc::new(gens) })
    }

    /// Tensor product with the diagonal group action.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        if self.algebra.group().is_none() {
            return Err(Error::Module("tensor product needs a group algebra".into()));
        }
        let gens = self.gens.iter().zip(other.gens.iter()).map(|(a, b)| a.kronecker(b)).collect();
        Ok(Module { algebra: self.algebra.clone(), dim: self.dim * other.dim, gens: Arc::new(gens) })
    }

    /// Image of a vector under a generator.
    pub fn act(&self, gen: usize, v: &[F]) -> Vec<F> {
        self.gens[gen].mul_vec(v)
    }

    /// Submodule spanned by the orbit of the rows of `vectors`; RREF basis.
    pub fn spin(&self, vectors: &Matrix<F>) -> Matrix<F> {
        let mut e = EchelonBasis::new(self.dim);
        let mut queue: Vec<Vec<F>> = Vec::new();
        for v in vectors.row_iter() {
            if e.insert(v) {
                queue.push(v.to_vec());
            }
        }
        let gens_t: Vec<Matrix<F>> = self.gens.iter().map(|m| m.transpose()).collect();
        while let Some(v) = queue.pop() {
            for gt in &gens_t {
                let w = gt.vec_mul(&v);
                if e.insert(&w) {
                    if e.is_full() {
                        return Matrix::identity(self.dim);
                    }
                    queue.push(w);
                }
            }
        }
        e.to_matrix()
    }

    pub fn spin_vector(&self, v: &[F]) -> Matrix<F> {
        self.spin(&Matrix::from_rows(self.dim, &[v]))
    }

    pub fn is_invariant(&self, basis: &Matrix<F>) -> bool {
        let e = EchelonBasis::from_matrix(basis);
        let gens_t: Vec<Matrix<F>> = self.gens.iter().map(|m| m.transpose()).collect();
        basis.row_iter().all(|v| gens_t.iter().all(|gt| e.contains(&gt.vec_mul(v))))
    }

    /// Action on an invariant subspace with RREF row basis `basis`.
    fn restricted_action(&self, basis: &Matrix<F>) -> Result<Vec<Matrix<F>>> {
        let piv = basis.pivot_columns();
        let mut out = Vec::with_capacity(self.gens.len());
        for g in self.gens.iter() {
            // rows: (g b_i)^T
            let img = basis * &g.transpose();
            let coords = img.select_cols(&piv);
            if &coords * basis != img {
                return Err(Error::NotInvariant);
            }
            out.push(coords.transpose());
        }
        Ok(out)
    }

    /// Submodule on the row space of `basis` (any spanning set), with its
    /// inclusion map.
    pub fn submodule(&self, basis: &Matrix<F>) -> Result<(Module<F>, Morphism<F>)> {
        let b = basis.row_space();
        let gens = self.restricted_action(&b)?;
        let sub = Module { algebra: self.algebra.clone(), dim: b.rows(), gens: Arc::new(gens) };
        let incl = Morphism { source: sub.clone(), target: self.clone(), matrix: b.transpose() };
        Ok((sub, incl))
    }

    /// Quotient by the row space of `basis`, with the projection map. The
    /// quotient basis is the images of the standard vectors at non-pivot
    /// columns of the RREF basis.
    pub fn quotient(&self, basis: &Matrix<F>) -> Result<(Module<F>, Morphism<F>)> {
        let b = basis.row_space();
        if !self.is_invariant(&b) {
            return Err(Error::NotInvariant);
        }
        let proj = quotient_projection(&b, self.dim);
        let free = non_pivots(&b, self.dim);
        let gens = self
            .gens
            .iter()
            .map(|g| (&proj * g).select_cols(&free))
            .collect();
        let q = Module { algebra: self.algebra.clone(), dim: free.len(), gens: Arc::new(gens) };
        Ok((q.clone(), Morphism { source: self.clone(), target: q, matrix: proj }))
    }

    /// Module obtained by changing basis: new vectors are the columns of
    /// `t` (invertible), so the action becomes `t^-1 g t`.
    pub fn change_basis(&self, t: &Matrix<F>) -> Result<Module<F>> {
        let ti = t.inverse().ok_or_else(|| Error::Dimension("basis change is singular".into()))?;
        let gens = self.gens.iter().map(|g| &(&ti * g) * t).collect();
        Ok(Module { algebra: self.algebra.clone(), dim: self.dim, gens: Arc::new(gens) })
    }

    /// Restriction to a subgroup algebra; the subgroup must have a parent
    /// index into this module's group.
    pub fn restrict(&self, sub: &Arc<Algebra<F>>) -> Result<Module<F>> {
        let h = sub.group().ok_or_else(|| Error::Module("restriction needs a group algebra".into()))?;
        let pi = h.parent_index().ok_or_else(|| Error::Module("subgroup has no parent map".into()))?;
        let g = self.algebra.group().ok_or_else(|| Error::Module("restriction needs a group algebra".into()))?;
        if pi.iter().any(|&x| x >= g.order()) || h.order() > g.order() {
            return Err(Error::Module("subgroup does not embed in the group".into()));
        }
        let gens = h.generators().iter().map(|&x| self.element_matrix(pi[x])).collect();
        Ok(Module { algebra: sub.clone(), dim: self.dim, gens: Arc::new(gens) })
    }

    /// Induction from a subgroup algebra to `parent`. Basis `t_j ⊗ m_i` at
    /// index `j * dim + i`, with `t_j` the least element of each left coset.
    pub fn induce(&self, parent: &Arc<Algebra<F>>) -> Result<Module<F>> {
        let h = self.algebra.group().ok_or_else(|| Error::Module("induction needs a group algebra".into()))?;
        let g = parent.group().ok_or_else(|| Error::Module("induction needs a group algebra".into()))?;
        let pi = h.parent_index().ok_or_else(|| Error::Module("subgroup has no parent map".into()))?;
        let (reps, which) = g.left_cosets(pi);
        let mats = self.all_element_matrices();
        let d = self.dim;
        let n = reps.len();
        let gens = g
            .generators()
            .iter()
            .map(|&x| {
                let mut m = Matrix::zeros(n * d, n * d);
                for (j, &t) in reps.iter().enumerate() {
                    let (jj, hp) = which[g.mul(x, t)];
                    let hl = pi.binary_search(&hp).expect("coset decomposition");
                    m.set_block(jj * d, j * d, &mats[hl]);
                }
                m
            })
            .collect();
        Ok(Module { algebra: parent.clone(), dim: n * d, gens: Arc::new(gens) })
    }

    /// Pull back along a quotient map of groups: `proj[g]` is the image in
    /// this module's group of each element of `parent`'s group.
    pub fn inflate(&self, parent: &Arc<Algebra<F>>, proj: &[usize]) -> Result<Module<F>> {
        let g = parent.group().ok_or_else(|| Error::Module("inflation needs a group algebra".into()))?;
        let mats = self.all_element_matrices();
        let gens = g.generators().iter().map(|&x| mats[proj[x]].clone()).collect();
        Module::new(parent.clone(), gens)
    }

    /// Transposed action: the module over the opposite algebra, used for
    /// annihilator arguments.
    pub fn transposed_gens(&self) -> Vec<Matrix<F>> {
        self.gens.iter().map(|m| m.transpose()).collect()
    }
}

/// Non-pivot columns of an RREF basis.
pub fn non_pivots<F: Field>(basis: &Matrix<F>, dim: usize) -> Vec<usize> {
    let piv = basis.pivot_columns();
    (0..dim).filter(|c| !piv.contains(c)).collect()
}

/// Matrix of `V -> V/W` for `W` with RREF basis, in the non-pivot basis.
pub fn quotient_projection<F: Field>(basis: &Matrix<F>, dim: usize) -> Matrix<F> {
    let piv = basis.pivot_columns();
    let free = non_pivots(basis, dim);
    // e_c reduces to e_c - sum_i [c-entry of b_i] b_i for pivots; read free coords
    let mut m = Matrix::zeros(free.len(), dim);
    for c in 0..dim {
        let mut v = vec![F::zero(); dim];
        v[c] = F::one();
        for (i, &p) in piv.iter().enumerate() {
            let a = v[p];
            if !a.is_zero_elem() {
                crate::matrix::axpy(&mut v, -a, basis.row(i));
            }
        }
        for (k, &f) in free.iter().enumerate() {
            m.set(k, c, v[f]);
        }
    }
    m
}

impl<F: Field> Morphism<F> {
    pub fn new(source: Module<F>, target: Module<F>, matrix: Matrix<F>) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension("morphism matrix has the wrong shape".into()));
        }
        let f = Morphism { source, target, matrix };
        if !f.is_homomorphism() {
            return Err(Error::Module("matrix does not intertwine the actions".into()));
        }
        Ok(f)
    }

    pub fn zero(source: Module<F>, target: Module<F>) -> Self {
        let matrix = Matrix::zeros(target.dim(), source.dim());
        Morphism { source, target, matrix }
    }

    pub fn identity(m: Module<F>) -> Self {
        let matrix = Matrix::identity(m.dim());
        Morphism { source: m.clone(), target: m, matrix }
    }

    pub fn is_homomorphism(&self) -> bool {
        self.source
            .gens()
            .iter()
            .zip(self.target.gens())
            .all(|(a, b)| &self.matrix * a == b * &self.matrix)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Morphism<F>) -> Morphism<F> {
        Morphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Kernel as a subspace of the source (RREF rows).
    pub fn kernel_basis(&self) -> Matrix<F> {
        self.matrix.nullspace()
    }

    /// Image as a subspace of the target (RREF rows).
    pub fn image_basis(&self) -> Matrix<F> {
        self.matrix.transpose().row_space()
    }

    pub fn kernel(&self) -> Result<(Module<F>, Morphism<F>)> {
        self.source.submodule(&self.kernel_basis())
    }

    pub fn image(&self) -> Result<(Module<F>, Morphism<F>)> {
        self.target.submodule(&self.image_basis())
    }

    pub fn cokernel(&self) -> Result<(Module<F>, Morphism<F>)> {
        self.target.quotient(&self.image_basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf3;
    use crate::group::library;

    fn ks3() -> Arc<Algebra<Gf3>> {
        Algebra::group_algebra(Arc::new(library::load("S3").unwrap()))
    }

    #[test]
    fn regular_module_is_valid() {
        let a = ks3();
        let r = Module::regular(a.clone());
        assert!(Module::new(a, r.gens().to_vec()).is_ok());
    }

    #[test]
    fn bad_relations_rejected() {
        let a = ks3();
        // p1 of order 3 acting with order 2 violates the relations
        let bad = vec![Matrix::from_ints(1, 1, &[2]), Matrix::from_ints(1, 1, &[1])];
        assert!(Module::new(a, bad).is_err());
    }

    #[test]
    fn submodule_and_quotient_dims() {
        let a = ks3();
        let r = Module::regular(a.clone());
        let t = Module::trivial(a.clone()).unwrap();
        // the all-ones vector spans a trivial submodule
        let ones = Matrix::from_rows(6, &[vec![Gf3::new(1); 6]]);
        let (s, incl) = r.submodule(&ones).unwrap();
        assert!(incl.is_homomorphism());
        assert_eq!(s.gens(), t.gens());
        let (q, proj) = r.quotient(&ones).unwrap();
        assert_eq!(q.dim(), 5);
        assert!(proj.is_homomorphism());
        assert!(proj.compose(&incl).is_zero());
    }

    #[test]
    fn non_invariant_subspace_rejected() {
        let r = Module::regular(ks3());
        let v = Matrix::from_rows(6, &[[1, 0, 0, 0, 0, 0].map(Gf3::new)]);
        assert_eq!(r.submodule(&v).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn induce_trivial_from_whole_group() {
        let a = ks3();
        let g = a.group().unwrap();
        let all: Vec<usize> = (0..g.order()).collect();
        let sub = Algebra::<Gf3>::group_algebra(Arc::new(g.subgroup_on("S3'", &all).unwrap()));
        let t = Module::trivial(sub).unwrap();
        let ind = t.induce(&a).unwrap();
        assert_eq!(ind.gens(), Module::trivial(a).unwrap().gens());
    }

    #[test]
    fn induce_restrict_shapes() {
        let a = ks3();
        let g = a.group().unwrap();
        let p = g.p_part().unwrap();
        let sub = Algebra::<Gf3>::group_algebra(Arc::new(g.subgroup_on("C3", &p).unwrap()));
        let ind = Module::trivial(sub.clone()).unwrap().induce(&a).unwrap();
        assert_eq!(ind.dim(), 2);
        assert!(Module::new(a.clone(), ind.gens().to_vec()).is_ok());
        let res = Module::regular(a).restrict(&sub).unwrap();
        assert!(Module::new(sub, res.gens().to_vec()).is_ok());
    }

    #[test]
    fn dual_and_tensor_are_modules() {
        let a = ks3();
        let r = Module::regular(a.clone());
        let d = r.dual().unwrap();
        assert!(Module::new(a.clone(), d.gens().to_vec()).is_ok());
        let t = d.tensor(&Module::trivial(a.clone()).unwrap()).unwrap();
        assert_eq!(t.dim(), 6);
    }
}
