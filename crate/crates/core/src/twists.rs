//! Local twists of the stable equivalence.
//!
//! For a subgroup `Q` of order `p` with `|C_E(Q)| = 2`, let `E'_Q = N_E(Q)`,
//! `E_Q = C_E(Q)` and `K = Q:E'_Q`. For a module `L'` of the local group,
//! `L'_Q = V_Q ⊗ Hom_{E_Q}(V_Q, L')` with `g` acting on `f` by
//! `g f g^-1`; its non-projective part `L''_Q` is induced to `L_Q`. The
//! twisted image is `L_Q -> ... -> L_Q -> L'` with `eta(Q)` copies of `L_Q`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::blocks::{block_component, principal_block};
use crate::complex::BoundedComplex;
use crate::decompose::{is_isomorphic, matrix_span_basis};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::hom::{combine, endomorphisms, hom};
use crate::local::LocalGroup;
use crate::matrix::Matrix;
use crate::module::Module;
use crate::structure::RepData;

/// Subgroup data for one class of order-`p` subgroups.
#[derive(Clone, Debug)]
pub struct TwistClass<F: Field> {
    pub class: usize,
    pub q: Vec<usize>,
    /// `N_E(Q)` and `C_E(Q)` as element sets of the local group.
    pub e_prime: Vec<usize>,
    pub e_q: Vec<usize>,
    /// `N_H(Q)` and `K = Q:E'_Q`, the latter as a subgroup of the former.
    pub normalizer: Arc<Algebra<F>>,
    pub k: Arc<Algebra<F>>,
    k_rep: RepData<F>,
    /// Simple `kK`-modules non-trivial on `E_Q`; `v_q` is the chosen one.
    pub v_candidates: Vec<Module<F>>,
    pub v_q: Module<F>,
}

#[derive(Clone, Debug)]
pub struct TwistSpec<F: Field> {
    pub eta: Vec<u32>,
    pub classes: Vec<Option<TwistClass<F>>>,
}

/// `E'_Q`, `E_Q` for `Q` inside a semidirect product.
fn automizer_parts(g: &FiniteGroup, q: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let e = g.e_part().ok_or_else(|| Error::Group("twists need a semidirect product".into()))?;
    let e_prime: Vec<usize> = e.iter().copied().filter(|&x| g.conjugate_set(q, x) == q).collect();
    let e_q: Vec<usize> = e_prime.iter().copied().filter(|&x| q.iter().all(|&h| g.conjugate(h, x) == h)).collect();
    Ok((e_prime, e_q))
}

impl<F: Field> TwistClass<F> {
    fn new(lg: &LocalGroup<F>, class: usize, choice: usize) -> Result<Self> {
        let g = &lg.group;
        let q = lg.q_classes[class].clone();
        let (e_prime, e_q) = automizer_parts(g, &q)?;
        let nset = g.normalizer(&q);
        let nh = Arc::new(g.subgroup_on("N_H(Q)", &nset)?);
        let mut kset = g.closure(&q.iter().chain(&e_prime).copied().collect::<Vec<_>>());
        kset.sort_unstable();
        // K as a subgroup of N_H(Q), in local indices
        let local: Vec<usize> = kset.iter().map(|x| nset.binary_search(x).expect("K inside N_H(Q)")).collect();
        let kg = Arc::new(nh.subgroup_on("Q:E'_Q", &local)?);
        let normalizer = Algebra::group_algebra(nh);
        let k = Algebra::group_algebra(kg.clone());
        let k_rep = RepData::new(&k, lg.rep.seed)?;
        let z_local: Vec<usize> = e_q.iter().map(|x| kset.binary_search(x).unwrap()).collect();
        let v_candidates: Vec<Module<F>> = k_rep
            .simples
            .simples()
            .iter()
            .filter(|s| z_local.iter().any(|&z| !s.element_matrix(z).is_identity()))
            .cloned()
            .collect();
        let v_q = v_candidates
            .get(choice)
            .cloned()
            .ok_or_else(|| Error::Case { case: g.name().into(), message: format!("no V_Q choice {choice} for class {}", class + 1) })?;
        Ok(TwistClass { class, q, e_prime, e_q, normalizer, k, k_rep, v_candidates, v_q })
    }

    /// Elements of `K` in the local group, in `K`'s own order.
    fn k_elements(&self) -> Vec<usize> {
        let nset = self.normalizer.group().unwrap().parent_index().unwrap().to_vec();
        let kin = self.k.group().unwrap().parent_index().unwrap();
        kin.iter().map(|&i| nset[i]).collect()
    }

    /// `L'_Q = V_Q ⊗ Hom_{E_Q}(V_Q, L')` as a `kK`-module.
    pub fn l_prime_q(&self, lprime: &Module<F>) -> Result<Module<F>> {
        let kel = self.k_elements();
        let kg = self.k.group().unwrap();
        let v = &self.v_q;
        let (dv, dl) = (v.dim(), lprime.dim());
        // f (dl x dv) with rho_L(z) f = f rho_V(z) for z in E_Q
        let mut rows: Vec<Vec<F>> = Vec::new();
        for &z in &self.e_q {
            let zl = lprime.element_matrix(z);
            let zk = kel.iter().position(|&x| x == z).unwrap();
            let zv = v.element_matrix(zk);
            for i in 0..dl {
                for j in 0..dv {
                    let mut r = vec![F::zero(); dl * dv];
                    for k in 0..dl {
                        r[k * dv + j] += zl.get(i, k);
                    }
                    for k in 0..dv {
                        r[i * dv + k] -= zv.get(k, j);
                    }
                    rows.push(r);
                }
            }
        }
        let w = if rows.is_empty() { Matrix::identity(dl * dv) } else { Matrix::from_rows(dl * dv, &rows).nullspace() };
        let gens: Vec<Matrix<F>> = kg
            .generators()
            .iter()
            .map(|&x| {
                let gl = lprime.element_matrix(kel[x]);
                let gv = v.element_matrix(x);
                let gv_inv = gv.inverse().expect("group element");
                let images: Vec<Vec<F>> = w
                    .row_iter()
                    .map(|f| {
                        let fm = Matrix::from_vec(dl, dv, f.to_vec()).unwrap();
                        (&(&gl * &fm) * &gv_inv).data().to_vec()
                    })
                    .collect();
                let coords = w.solve_left(&Matrix::from_rows(dl * dv, &images)).expect("Hom is K-stable");
                let on_w = coords.transpose();
                gv.kronecker(&on_w)
            })
            .collect();
        Module::new(self.k.clone(), gens)
    }

    /// `L''_Q`: the non-projective part of `L'_Q`.
    pub fn l_second_q(&self, l: &Module<F>) -> Module<F> {
        self.k_rep.core(l)
    }

    /// `Ind_K^{N_H(Q)} L''_Q`.
    pub fn induced_to_normalizer(&self, l2: &Module<F>) -> Result<Module<F>> {
        l2.induce(&self.normalizer)
    }
}

impl<F: Field> TwistSpec<F> {
    /// `eta` per subgroup class; `choices` picks `V_Q` among the candidates
    /// (default: the first).
    pub fn new(lg: &LocalGroup<F>, eta: &[u32], choices: &[usize]) -> Result<Self> {
        if eta.len() != lg.q_classes.len() {
            return Err(Error::Case {
                case: lg.spec.name.clone(),
                message: format!("{} eta values for {} subgroup classes", eta.len(), lg.q_classes.len()),
            });
        }
        let mut classes = Vec::new();
        for (c, &e) in eta.iter().enumerate() {
            let (_, e_q) = automizer_parts(&lg.group, &lg.q_classes[c])?;
            if e_q.len() != 2 {
                if e > 0 {
                    return Err(Error::Case {
                        case: lg.spec.name.clone(),
                        message: format!("eta is only defined when |C_E(Q)| = 2 (class {})", c + 1),
                    });
                }
                classes.push(None);
                continue;
            }
            classes.push(Some(TwistClass::new(lg, c, choices.get(c).copied().unwrap_or(0))?));
        }
        Ok(TwistSpec { eta: eta.to_vec(), classes })
    }

    pub fn untwisted(lg: &LocalGroup<F>) -> Self {
        TwistSpec { eta: vec![0; lg.q_classes.len()], classes: vec![None; lg.q_classes.len()] }
    }

    pub fn is_trivial(&self) -> bool {
        self.eta.iter().all(|&e| e == 0)
    }
}

/// The pieces of a twisted image for one subgroup class.
#[derive(Clone, Debug)]
pub struct TwistPiece<F: Field> {
    pub class: usize,
    pub l_prime_q: Module<F>,
    pub l_second_q: Module<F>,
    pub l_q: Module<F>,
    /// Spanning map `L_Q -> L'`.
    pub to_top: Matrix<F>,
    /// `Ind(s_Q)` on `L_Q`, when `eta >= 2`.
    pub s: Option<Matrix<F>>,
}

fn case_err<F: Field>(lg: &LocalGroup<F>, message: String) -> Error {
    Error::Case { case: lg.spec.name.clone(), message }
}

/// First nonzero, non-invertible endomorphism `s` (coefficients in
/// lexicographic order) with `s^2 = 0` and `top * Ind(s) = 0`.
fn choose_s<F: Field>(ends: &[Matrix<F>], d: usize, lift: impl Fn(&Matrix<F>) -> Matrix<F>, top: &Matrix<F>) -> Option<Matrix<F>> {
    let q = F::ORDER as u64;
    let k = ends.len();
    let total = q.checked_pow(k as u32).filter(|&t| t <= 200_000)?;
    for mut idx in 1..total {
        let mut c = vec![F::zero(); k];
        for x in c.iter_mut().rev() {
            *x = F::from_index((idx % q) as u32);
            idx /= q;
        }
        let s = combine(ends, &c, d, d);
        if s.is_zero() || s.rank() == d || !(&s * &s).is_zero() {
            continue;
        }
        let big = lift(&s);
        if (top * &big).is_zero() {
            return Some(big);
        }
    }
    None
}

/// The contribution of one class, or `None` when `L''_Q` is zero.
pub fn twist_piece<F: Field>(lg: &LocalGroup<F>, tc: &TwistClass<F>, eta: u32, lprime: &Module<F>) -> Result<Option<TwistPiece<F>>> {
    let lpq = tc.l_prime_q(lprime)?;
    let l2 = tc.l_second_q(&lpq);
    if l2.dim() == 0 {
        return Ok(None);
    }
    let m1 = tc.induced_to_normalizer(&l2)?;
    let mut l_q = m1.induce(lg.algebra())?;
    let b0 = principal_block(lg.algebra(), lg.rep.seed)?;
    let proj_b0 = l_q.algebra_element_matrix(&b0);
    let block_ok = proj_b0.is_identity();
    if !block_ok {
        l_q = block_component(&l_q, &b0);
    }
    let maps = hom(&l_q, lprime);
    if maps.len() != 1 {
        return Err(case_err(lg, format!("dim Hom(L_Q, L') = {} for class {}", maps.len(), tc.class + 1)));
    }
    let to_top = maps[0].matrix.clone();
    let s = if eta >= 2 {
        if l2.dim() != 1 {
            return Err(case_err(lg, format!("dim L''_Q = {} with eta >= 2", l2.dim())));
        }
        if !block_ok {
            return Err(case_err(lg, "non-principal block with eta >= 2".into()));
        }
        let ends = matrix_span_basis(&endomorphisms(&m1), m1.dim(), m1.dim());
        let index = l_q.dim() / m1.dim();
        let lift = |s: &Matrix<F>| Matrix::identity(index).kronecker(s);
        Some(
            choose_s(&ends, m1.dim(), lift, &to_top)
                .ok_or_else(|| case_err(lg, format!("no admissible s_Q for class {}", tc.class + 1)))?,
        )
    } else {
        None
    };
    Ok(Some(TwistPiece { class: tc.class, l_prime_q: lpq, l_second_q: l2, l_q, to_top, s }))
}

/// The twisted image of `lprime`: degree 0 is `lprime`, degree `-j` is the
/// sum of `L_Q` over classes with `eta(Q) >= j`.
pub fn twisted_image<F: Field>(lg: &LocalGroup<F>, spec: &TwistSpec<F>, lprime: &Module<F>) -> Result<BoundedComplex<F>> {
    if spec.is_trivial() {
        return Ok(BoundedComplex::concentrated(lprime.clone(), 0));
    }
    let mut pieces: Vec<(u32, TwistPiece<F>)> = Vec::new();
    for (c, tc) in spec.classes.iter().enumerate() {
        let e = spec.eta[c];
        if e == 0 {
            continue;
        }
        let tc = tc.as_ref().expect("checked in TwistSpec::new");
        if let Some(p) = twist_piece(lg, tc, e, lprime)? {
            pieces.push((e, p));
        }
    }
    let top = pieces.iter().map(|(e, _)| *e).max().unwrap_or(0);
    if top == 0 {
        return Ok(BoundedComplex::concentrated(lprime.clone(), 0));
    }
    let alg = lg.algebra().clone();
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for j in (1..=top).rev() {
        let here: Vec<&TwistPiece<F>> = pieces.iter().filter(|(e, _)| *e >= j).map(|(_, p)| p).collect();
        terms.push(Module::direct_sum_all(&alg, &here.iter().map(|p| p.l_q.clone()).collect::<Vec<_>>())?);
        if j < top {
            // from degree -(j+1) to -j: Ind(s_Q) on matching components
            let below: Vec<&TwistPiece<F>> = pieces.iter().filter(|(e, _)| *e > j).map(|(_, p)| p).collect();
            let rows: usize = here.iter().map(|p| p.l_q.dim()).sum();
            let cols: usize = below.iter().map(|p| p.l_q.dim()).sum();
            let mut d = Matrix::zeros(rows, cols);
            let mut c0 = 0;
            for p in &below {
                let mut r0 = 0;
                for h in &here {
                    if h.class == p.class {
                        d.set_block(r0, c0, p.s.as_ref().expect("eta >= 2"));
                    }
                    r0 += h.l_q.dim();
                }
                c0 += p.l_q.dim();
            }
            diffs.push(d);
        }
    }
    let ones: Vec<&TwistPiece<F>> = pieces.iter().map(|(_, p)| p).collect();
    let mut last = Matrix::zeros(lprime.dim(), 0);
    for p in &ones {
        last = last.hstack(&p.to_top);
    }
    diffs.push(last);
    terms.push(lprime.clone());
    BoundedComplex::new(-(top as i32), terms, diffs)
}

/// Stable comparison of two complexes: the degree-0 representatives of
/// their images in the stable category.
#[derive(Clone, Debug)]
pub struct StableMatch {
    pub isomorphic: bool,
    pub left_core: String,
    pub right_core: String,
}

pub fn stable_match<F: Field>(rep: &RepData<F>, x: &BoundedComplex<F>, y: &BoundedComplex<F>) -> StableMatch {
    let cx = stable_object(rep, x);
    let cy = stable_object(rep, y);
    let isomorphic = cx.dim() == cy.dim() && is_isomorphic(&cx, &cy, rep.seed);
    StableMatch {
        isomorphic,
        left_core: crate::perverse::module_summary(rep, &cx),
        right_core: crate::perverse::module_summary(rep, &cy),
    }
}

/// Non-projective module representing a complex (with top degree 0) in the
/// stable category.
pub fn stable_object<F: Field>(rep: &RepData<F>, x: &BoundedComplex<F>) -> Module<F> {
    let s = x.stabilize(rep);
    let top = s.terms().last().unwrap();
    let core = rep.core(top);
    match s.hi() {
        0 => core,
        // M in degree h is M[-h], and [1] is Omega^-1
        h if h > 0 => (0..h).fold(core, |m, _| rep.omega(&m)),
        h => (0..-h).fold(core, |m, _| rep.omega_inv(&m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf3;

    #[test]
    fn eta_zero_is_concentrated() {
        let lg = LocalGroup::<Gf3>::load("D8", 0).unwrap();
        let spec = TwistSpec::untwisted(&lg);
        let t = lg.rep.simple(3).clone();
        let y = twisted_image(&lg, &spec, &t).unwrap();
        assert_eq!((y.lo(), y.hi()), (0, 0));
    }

    #[test]
    fn d8_twist_of_t4_uses_m41_and_m42() {
        let lg = LocalGroup::<Gf3>::load("D8", 0).unwrap();
        let spec = TwistSpec::new(&lg, &[1, 1], &[]).unwrap();
        let t4 = lg.rep.simple(3).clone();
        let y = twisted_image(&lg, &spec, &t4).unwrap();
        assert_eq!(y.lo(), -1);
        let cat = lg.relproj_catalog().unwrap();
        let want = cat.get("M41").unwrap().direct_sum(cat.get("M42").unwrap()).unwrap();
        assert!(is_isomorphic(&y.terms()[0], &want, 0));
    }

    #[test]
    fn stable_match_ignores_contractible_parts() {
        let lg = LocalGroup::<Gf3>::load("C4", 0).unwrap();
        let r = &lg.rep;
        let x = BoundedComplex::concentrated(r.simple(1).clone(), 0);
        let p = r.pim(0).clone();
        let cone = BoundedComplex::new(-1, vec![p.clone(), p], vec![Matrix::identity(r.pim(0).dim())]).unwrap();
        let y = x.direct_sum(&cone).unwrap();
        assert!(stable_match(r, &x, &y).isomorphic);
    }
}
