//! Block idempotents of group algebras.
//!
//! The center is spanned by class sums. A central element `z` splits `kG`
//! into `ker L_z^N ⊕ im L_z^N`, two-sided ideals, and projecting `1` onto the
//! image gives a central idempotent. Splitting is repeated until every block
//! component has a local center.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::Module;

const SAMPLES: usize = 64;

/// Group-algebra element as coefficients indexed by group element.
pub type GroupElement<F> = Vec<F>;

/// Class sums of a group algebra.
pub fn class_sums<F: Field>(algebra: &Algebra<F>) -> Vec<GroupElement<F>> {
    let g = algebra.group().expect("group algebra");
    g.conjugacy_classes()
        .iter()
        .map(|c| {
            let mut v = vec![F::zero(); g.order()];
            for &x in c {
                v[x] = F::one();
            }
            v
        })
        .collect()
}

/// Left multiplication by a group-algebra element on the regular module.
fn left_mult<F: Field>(algebra: &Algebra<F>, z: &[F]) -> Matrix<F> {
    let g = algebra.group().expect("group algebra");
    let n = g.order();
    let mut m = Matrix::zeros(n, n);
    for (x, &c) in z.iter().enumerate() {
        if c.is_zero_elem() {
            continue;
        }
        for h in 0..n {
            let t = g.mul(x, h);
            m.set(t, h, m.get(t, h) + c);
        }
    }
    m
}

/// Product in the group algebra.
pub fn multiply<F: Field>(algebra: &Algebra<F>, a: &[F], b: &[F]) -> GroupElement<F> {
    left_mult(algebra, a).mul_vec(b)
}

fn stable_power<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let mut p = m.clone();
    let mut e = 1;
    while e < m.rows() {
        p = &p * &p;
        e *= 2;
    }
    p
}

/// Split the idempotent `e` using central `z`; returns two nonzero
/// orthogonal idempotents summing to `e` if `z e` is neither nilpotent nor
/// invertible on `e kG`.
fn split<F: Field>(algebra: &Algebra<F>, e: &[F], z: &[F]) -> Option<(GroupElement<F>, GroupElement<F>)> {
    let ze = multiply(algebra, z, e);
    let p = stable_power(&left_mult(algebra, &ze));
    let im = p.transpose().row_space();
    let ker = p.nullspace();
    let t_inv = im.vstack(&ker).inverse().expect("Fitting decomposition");
    let coords = t_inv.transpose().mul_vec(e);
    let e1 = im.transpose().mul_vec(&coords[..im.rows()]);
    let e2: Vec<F> = e.iter().zip(&e1).map(|(&a, &b)| a - b).collect();
    let nz = |v: &[F]| v.iter().any(|x| !x.is_zero_elem());
    (nz(&e1) && nz(&e2)).then_some((e1, e2))
}

/// Primitive central idempotents, the principal one first, the rest in order
/// of their least nonzero coefficient position.
pub fn block_idempotents<F: Field>(algebra: &Algebra<F>, seed: u64) -> Result<Vec<GroupElement<F>>> {
    let g = algebra.group().ok_or_else(|| Error::Module("blocks need a group algebra".into()))?;
    let n = g.order();
    let sums = class_sums(algebra);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut one = vec![F::zero(); n];
    one[0] = F::one();
    let mut work = vec![one];
    let mut done = Vec::new();
    while let Some(e) = work.pop() {
        let mut found = None;
        // class sums first, then random central elements
        for z in sums.iter().cloned().chain((0..SAMPLES).map(|_| {
            let mut z = vec![F::zero(); n];
            for s in &sums {
                let c = F::from_index(rng.gen_range(0..F::ORDER));
                for (a, &b) in z.iter_mut().zip(s) {
                    *a += c * b;
                }
            }
            z
        })) {
            if let Some(s) = split(algebra, &e, &z) {
                found = Some(s);
                break;
            }
        }
        match found {
            Some((a, b)) => {
                work.push(a);
                work.push(b);
            }
            None => done.push(e),
        }
    }
    let aug = |e: &[F]| e.iter().fold(F::zero(), |s, &x| s + x);
    done.sort_by_key(|e| (aug(e) != F::one(), e.iter().position(|x| !x.is_zero_elem())));
    for e in &done {
        if multiply(algebra, e, e) != *e {
            return Err(Error::LiftingFailed);
        }
    }
    Ok(done)
}

/// The principal block idempotent.
pub fn principal_block<F: Field>(algebra: &Algebra<F>, seed: u64) -> Result<GroupElement<F>> {
    Ok(block_idempotents(algebra, seed)?.remove(0))
}

/// `e M` as a submodule (for a central idempotent `e`).
pub fn block_component<F: Field>(m: &Module<F>, e: &[F]) -> Module<F> {
    let act = m.algebra_element_matrix(e);
    let im = act.transpose().row_space();
    m.submodule(&im).expect("block component").0
}

/// Group algebra of a subgroup given by a sorted element set.
pub fn subgroup_algebra<F: Field>(parent: &Algebra<F>, name: &str, set: &[usize]) -> Result<Arc<Algebra<F>>> {
    let g = parent.group().ok_or_else(|| Error::Module("subgroup of a non-group algebra".into()))?;
    Ok(Algebra::group_algebra(Arc::new(g.subgroup_on(name, set)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf3;
    use crate::group::{library, FiniteGroup};

    #[test]
    fn c2_over_f3_has_two_blocks() {
        let a = Algebra::<Gf3>::group_algebra(Arc::new(FiniteGroup::cyclic(2).unwrap()));
        let b = block_idempotents(&a, 0).unwrap();
        assert_eq!(b.len(), 2);
        // (1 + s)/2 = 2 + 2s over F3
        assert_eq!(b[0], vec![Gf3::new(2), Gf3::new(2)]);
        assert_eq!(b[1], vec![Gf3::new(2), Gf3::new(1)]);
    }

    #[test]
    fn local_groups_have_one_block() {
        for n in ["C4", "D8", "SD16"] {
            let a = Algebra::<Gf3>::group_algebra(Arc::new(library::load(n).unwrap()));
            let b = block_idempotents(&a, 0).unwrap();
            assert_eq!(b.len(), 1, "{n}");
            let t = Module::trivial(a.clone()).unwrap();
            assert_eq!(block_component(&t, &b[0]).dim(), 1);
        }
    }

    #[test]
    fn idempotents_are_central_orthogonal_and_sum_to_one() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let a = Algebra::<Gf3>::group_algebra(Arc::new(g));
        let b = block_idempotents(&a, 1).unwrap();
        assert_eq!(b.len(), 3);
        let mut sum = vec![Gf3::new(0); 4];
        for (i, e) in b.iter().enumerate() {
            for (s, &x) in sum.iter_mut().zip(e) {
                *s += x;
            }
            for (j, f) in b.iter().enumerate() {
                let p = multiply(&a, e, f);
                if i != j {
                    assert!(p.iter().all(|x| x.is_zero_elem()));
                }
            }
        }
        assert_eq!(sum, vec![Gf3::new(1), Gf3::new(0), Gf3::new(0), Gf3::new(0)]);
    }
}
