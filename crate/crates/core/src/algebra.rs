//! Finite-dimensional algebras: group algebras and algebras given by
//! structure constants.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::matrix::Matrix;

pub enum AlgebraKind<F: Field> {
    Group(Arc<FiniteGroup>),
    /// `left[i]` is left multiplication by basis element `i` in the column
    /// convention: `b_i b_j = sum_k left[i][k][j] b_k`.
    Structure { left: Vec<Matrix<F>>, unit: Vec<F> },
}

pub struct Algebra<F: Field> {
    name: String,
    kind: AlgebraKind<F>,
}

impl<F: Field> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {}, GF({}))", self.name, self.dim(), F::ORDER)
    }
}

impl<F: Field> Algebra<F> {
    pub fn group_algebra(group: Arc<FiniteGroup>) -> Arc<Self> {
        Arc::new(Algebra { name: format!("GF({}){}", F::ORDER, group.name()), kind: AlgebraKind::Group(group) })
    }

    /// Algebra from left-multiplication matrices and the unit's coordinates.
    /// Associativity is checked on all basis triples up to dimension 60 and
    /// on a sample of triples above.
    pub fn from_structure(name: &str, left: Vec<Matrix<F>>, unit: Vec<F>) -> Result<Arc<Self>> {
        let d = left.len();
        let bad = |m: &str| Error::Module(format!("{name}: {m}"));
        if unit.len() != d || left.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(bad("structure constants have the wrong shape"));
        }
        let mut lu = Matrix::zeros(d, d);
        for (i, &c) in unit.iter().enumerate() {
            lu = &lu + &left[i].scale(c);
        }
        if d > 0 && !lu.is_identity() {
            return Err(bad("unit does not act as the identity"));
        }
        let step = if d <= 60 { 1 } else { d / 20 + 1 };
        for i in (0..d).step_by(step) {
            for j in (0..d).step_by(step) {
                // left(b_i b_j) = left(b_i) left(b_j)
                let prod = &left[i] * &left[j];
                let mut lij = Matrix::zeros(d, d);
                for k in 0..d {
                    let c = left[i].get(k, j);
                    if !c.is_zero_elem() {
                        lij = &lij + &left[k].scale(c);
                    }
                }
                if prod != lij {
                    return Err(bad("multiplication is not associative"));
                }
            }
        }
        Ok(Arc::new(Algebra { name: name.to_string(), kind: AlgebraKind::Structure { left, unit } }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &AlgebraKind<F> {
        &self.kind
    }

    pub fn group(&self) -> Option<&Arc<FiniteGroup>> {
        match &self.kind {
            AlgebraKind::Group(g) => Some(g),
            AlgebraKind::Structure { .. } => None,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            AlgebraKind::Group(g) => g.order(),
            AlgebraKind::Structure { left, .. } => left.len(),
        }
    }

    /// Number of distinguished generators; modules carry one action matrix
    /// per generator.
    pub fn num_generators(&self) -> usize {
        match &self.kind {
            AlgebraKind::Group(g) => g.generators().len(),
            AlgebraKind::Structure { left, .. } => left.len(),
        }
    }

    /// Action matrices of the generators on the regular left module.
    pub fn regular_generators(&self) -> Vec<Matrix<F>> {
        match &self.kind {
            AlgebraKind::Group(g) => g.generators().iter().map(|&x| self.left_group_element(x)).collect(),
            AlgebraKind::Structure { left, .. } => left.clone(),
        }
    }

    /// Left multiplication by a group element on the regular module.
    pub fn left_group_element(&self, x: usize) -> Matrix<F> {
        let g = self.group().expect("group algebra");
        let n = g.order();
        let mut m = Matrix::zeros(n, n);
        for h in 0..n {
            m.set(g.mul(x, h), h, F::one());
        }
        m
    }

    /// A spanning set of `End_A(A)`: right multiplications by basis elements.
    pub fn regular_endomorphisms(&self) -> Vec<Matrix<F>> {
        match &self.kind {
            AlgebraKind::Group(g) => {
                let n = g.order();
                (0..n)
                    .map(|x| {
                        let mut m = Matrix::zeros(n, n);
                        for h in 0..n {
                            m.set(g.mul(h, x), h, F::one());
                        }
                        m
                    })
                    .collect()
            }
            AlgebraKind::Structure { left, .. } => {
                let d = left.len();
                (0..d)
                    .map(|j| {
                        let mut m = Matrix::zeros(d, d);
                        for (i, li) in left.iter().enumerate() {
                            for k in 0..d {
                                m.set(k, i, li.get(k, j));
                            }
                        }
                        m
                    })
                    .collect()
            }
        }
    }

    pub fn same_as(&self, other: &Algebra<F>) -> bool {
        std::ptr::eq(self, other) || (self.name == other.name && self.dim() == other.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf3;
    use crate::group::library;

    #[test]
    fn right_mult_commutes_with_left() {
        let g = Arc::new(library::load("S3").unwrap());
        let a = Algebra::<Gf3>::group_algebra(g);
        let ends = a.regular_endomorphisms();
        for l in a.regular_generators() {
            for r in &ends {
                assert_eq!(&l * r, r * &l);
            }
        }
    }

    #[test]
    fn structure_algebra_of_dual_numbers() {
        // k[x]/(x^2), basis 1, x
        let one = Matrix::<Gf3>::identity(2);
        let x = Matrix::from_ints(2, 2, &[0, 0, 1, 0]);
        let a = Algebra::from_structure("D", vec![one, x], vec![Gf3::new(1), Gf3::new(0)]).unwrap();
        assert_eq!(a.dim(), 2);
        let bad = Matrix::from_ints(2, 2, &[0, 1, 1, 0]);
        assert!(Algebra::from_structure("B", vec![Matrix::identity(2), bad], vec![Gf3::new(0), Gf3::new(0)]).is_err());
    }
}
