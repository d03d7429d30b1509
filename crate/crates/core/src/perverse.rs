//! Perverse complexes for symmetric algebras.
//!
//! For a perversity `pi` on the simples, `C_S` starts with the injective
//! hull of `S` in degree `-pi(S)`; at each step the current image `T` is
//! extended inside its injective hull by factors of smaller perversity,
//! and the quotient is embedded in the next injective hull. The last
//! quotient sits in degree 0.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;

use crate::complex::BoundedComplex;
use crate::decompose::{decompose, is_isomorphic};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{subspace_contains, subspace_sum, Matrix};
use crate::module::{non_pivots, Module, Morphism};
use crate::structure::RepData;

/// Perversity values indexed by simple (in the order of the `RepData`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perversity(pub Vec<u32>);

impl Perversity {
    pub fn zero(n: usize) -> Self {
        Perversity(vec![0; n])
    }

    pub fn parse(csv: &str) -> Result<Self> {
        csv.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| Error::Parse(format!("bad perversity value `{s}`"))))
            .collect::<Result<Vec<_>>>()
            .map(Perversity)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Simples with value at most `level`.
    pub fn at_most(&self, level: u32) -> Vec<usize> {
        (0..self.0.len()).filter(|&j| self.0[j] <= level).collect()
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// Largest subspace `N` of `ambient` containing `sub` with every composition
/// factor of `N / sub` in `set`: the `set`-socle of the quotient is pulled
/// back until stable.
pub fn e_closure_in<F: Field>(rep: &RepData<F>, ambient: &Module<F>, sub: &Matrix<F>, set: &[usize]) -> Matrix<F> {
    let d = ambient.dim();
    let mut n = sub.row_space();
    if set.is_empty() {
        return n;
    }
    loop {
        if n.rows() == d {
            return n;
        }
        let (q, _) = ambient.quotient(&n).expect("closure steps are submodules");
        let soc = rep.socle_in(&q, set);
        if soc.rows() == 0 {
            return n;
        }
        let free = non_pivots(&n, d);
        let mut lifts = Matrix::zeros(soc.rows(), d);
        for (r, row) in soc.row_iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                lifts.set(r, free[j], c);
            }
        }
        n = subspace_sum(&n, &lifts);
    }
}

/// `M^E`: the largest submodule of the injective hull of `m` containing `m`
/// whose quotient by `m` has all composition factors in `set`, with the
/// embedding of `m`.
pub fn e_closure<F: Field>(rep: &RepData<F>, m: &Module<F>, set: &[usize]) -> (Module<F>, Morphism<F>) {
    let (inj, iota, _) = rep.injective_hull(m);
    let img = iota.matrix.transpose().row_space();
    let nb = e_closure_in(rep, &inj, &img, set);
    let (n, _) = inj.submodule(&nb).expect("closure is a submodule");
    let coords = nb.solve_left(&iota.matrix.transpose()).expect("m lies in its closure");
    (n.clone(), Morphism { source: m.clone(), target: n, matrix: coords.transpose() })
}

/// The complex `C_S` for the simple with index `s`.
pub fn perverse_complex<F: Field>(rep: &RepData<F>, pi: &Perversity, s: usize) -> Result<BoundedComplex<F>> {
    if pi.len() != rep.num_simples() {
        return Err(Error::Perversity(format!("{} values for {} simples", pi.len(), rep.num_simples())));
    }
    let simple = rep.simple(s).clone();
    let p = pi.0[s];
    if p == 0 {
        return Ok(BoundedComplex::concentrated(simple, 0));
    }
    let (first, iota, _) = rep.injective_hull(&simple);
    let mut terms = vec![first];
    let mut diffs = Vec::new();
    let mut t = iota.matrix.transpose().row_space();
    for level in (0..p).rev() {
        let cur = terms.last().unwrap().clone();
        // the current term is the injective hull of T, hence also of T^E
        if !subspace_contains(&t, &rep.socle(&cur)) {
            return Err(Error::Perversity(format!("term in degree {} is not the injective hull of its image", level as i64 - p as i64)));
        }
        let te = e_closure_in(rep, &cur, &t, &pi.at_most(level));
        let (q, proj) = cur.quotient(&te)?;
        if level > 0 {
            let (next, inc, _) = rep.injective_hull(&q);
            diffs.push(&inc.matrix * &proj.matrix);
            t = inc.matrix.transpose().row_space();
            terms.push(next);
        } else {
            diffs.push(proj.matrix);
            terms.push(q);
        }
    }
    BoundedComplex::new(-(p as i32), terms, diffs)
}

/// All `C_S`, in simple order.
pub fn perverse_complexes<F: Field>(rep: &RepData<F>, pi: &Perversity) -> Result<Vec<BoundedComplex<F>>> {
    (0..rep.num_simples()).map(|s| perverse_complex(rep, pi, s)).collect()
}

/// `0 -> P_V ⊕ P_U -> A -> 0` for a perversity with values in `{0, 1}`,
/// `ones` the simples of value 1.
pub fn elementary_tilting<F: Field>(rep: &RepData<F>, ones: &[usize]) -> Result<BoundedComplex<F>> {
    let n = rep.num_simples();
    if ones.is_empty() || ones.len() >= n || ones.iter().any(|&i| i >= n) {
        return Err(Error::Perversity("elementary tilting needs a proper nonempty set of simples".into()));
    }
    let zeros: Vec<usize> = (0..n).filter(|i| !ones.contains(i)).collect();
    let a = Module::regular(rep.algebra.clone());
    // smallest U with A/U filtered by `zeros`: strip heads in `zeros`
    let mut u = Matrix::identity(a.dim());
    loop {
        let (um, _) = a.submodule(&u)?;
        let mut killed = crate::matrix::EchelonBasis::new(um.dim());
        for &j in &zeros {
            for f in crate::hom::hom(&um, rep.simple(j)) {
                for r in f.matrix.row_iter() {
                    killed.insert(r);
                }
            }
        }
        if killed.rank() == 0 {
            break;
        }
        let k = killed.to_matrix().nullspace();
        u = (&k * &u).row_space();
    }
    let (um, incl) = a.submodule(&u)?;
    let (pu, f, _) = rep.projective_cover(&um);
    let mut pv_parts = Vec::new();
    for &i in ones {
        let copies = rep.simple(i).dim() / rep.end_degree(i);
        pv_parts.extend(std::iter::repeat(rep.pim(i).clone()).take(copies));
    }
    let pv = Module::direct_sum_all(&rep.algebra, &pv_parts)?;
    let left = pv.direct_sum(&pu)?;
    let d = Matrix::zeros(a.dim(), pv.dim()).hstack(&(&incl.matrix * &f.matrix));
    BoundedComplex::new(-1, vec![left, a], vec![d])
}

/// Renders a module as `P..` for its projective part followed by the Loewy
/// strings of its other indecomposable summands, joined by `⊕`.
pub fn module_summary<F: Field>(rep: &RepData<F>, m: &Module<F>) -> String {
    if m.dim() == 0 {
        return "0".into();
    }
    let (core, proj) = rep.strip_projectives(m);
    let mut rest: Vec<String> = core.iter().map(|s| rep.layer_string(&s.module)).collect();
    let mut parts = Vec::new();
    if proj.iter().any(|&k| k > 0) {
        let mut p = String::from("P");
        for (i, &k) in proj.iter().enumerate() {
            for _ in 0..k {
                p.push_str(rep.label(i));
            }
        }
        parts.push(p);
    }
    rest.sort();
    parts.extend(rest);
    parts.join("⊕")
}

/// Loewy strings of the indecomposable summands, sorted.
pub fn summand_layers<F: Field>(rep: &RepData<F>, m: &Module<F>) -> Vec<String> {
    let mut v: Vec<String> = decompose(m, rep.seed).iter().map(|s| rep.layer_string(&s.module)).collect();
    v.sort();
    v
}

/// Term summaries from the lowest degree up.
pub fn term_summary<F: Field>(rep: &RepData<F>, c: &BoundedComplex<F>) -> Vec<String> {
    c.terms().iter().map(|t| module_summary(rep, t)).collect()
}

/// `sum (-1)^d [C^d] == sum (-1)^d [H^d]` in the Grothendieck group.
pub fn euler_identity_holds<F: Field>(rep: &RepData<F>, c: &BoundedComplex<F>) -> bool {
    let n = rep.num_simples();
    let mut terms = vec![0i64; n];
    let mut coh = vec![0i64; n];
    for d in c.degrees() {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        for (j, k) in rep.composition(&c.term(d)).into_iter().enumerate() {
            terms[j] += sign * k as i64;
        }
        for (j, k) in rep.composition(&c.cohomology(d)).into_iter().enumerate() {
            coh[j] += sign * k as i64;
        }
    }
    terms == coh
}

/// Class of a complex in `K_0`: alternating sum of term compositions.
pub fn k0_class<F: Field>(rep: &RepData<F>, c: &BoundedComplex<F>) -> Vec<i64> {
    let mut v = vec![0i64; rep.num_simples()];
    for d in c.degrees() {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        for (j, k) in rep.composition(&c.term(d)).into_iter().enumerate() {
            v[j] += sign * k as i64;
        }
    }
    v
}

/// Grothendieck-group data of a family of complexes `X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Report {
    /// `[X_i] = sum_j a[i][j] [T_j]`.
    pub a: Vec<Vec<i64>>,
    /// `(-1)^{pi(j)}`.
    pub signs: Vec<i64>,
    /// `[S_i] = sum_j m[i][j] d(chi_j)` with `m[i][j] = signs[j] a[i][j]`.
    pub m: Vec<Vec<i64>>,
    /// Decomposition matrix `D = m^{-1}`: rows characters, columns simples.
    pub decomposition: Option<Vec<Vec<i64>>>,
    /// Row order used for the triangularity check.
    pub order: Vec<usize>,
    pub unitriangular: bool,
}

impl K0Report {
    /// `sum_j m[i][j] chi_j` with the given character names.
    pub fn total(&self, i: usize, names: &[String]) -> String {
        let mut out = String::new();
        for (j, &c) in self.m[i].iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = c.unsigned_abs();
            let coef = if mag == 1 { String::new() } else { mag.to_string() };
            out.push_str(&format!("{sign}{coef}{}", names[j]));
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    /// Decomposition matrix with rows and columns permuted to `order`.
    pub fn ordered_decomposition(&self) -> Option<Vec<Vec<i64>>> {
        let d = self.decomposition.as_ref()?;
        Some(self.order.iter().map(|&r| self.order.iter().map(|&c| d[r][c]).collect()).collect())
    }
}

/// Build the `K_0` report; `order` lists simple indices in the row order to
/// be checked (defaults to increasing perversity, ties by index).
pub fn k0_report<F: Field>(
    rep: &RepData<F>,
    complexes: &[BoundedComplex<F>],
    pi: &Perversity,
    order: Option<&[usize]>,
) -> K0Report {
    let a: Vec<Vec<i64>> = complexes.iter().map(|c| k0_class(rep, c)).collect();
    k0_report_from_classes(a, pi, order)
}

pub fn k0_report_from_classes(a: Vec<Vec<i64>>, pi: &Perversity, order: Option<&[usize]>) -> K0Report {
    let n = a.len();
    let signs: Vec<i64> = pi.0.iter().map(|&p| if p % 2 == 0 { 1 } else { -1 }).collect();
    let m: Vec<Vec<i64>> = a.iter().map(|row| row.iter().zip(&signs).map(|(&x, &s)| x * s).collect()).collect();
    let order: Vec<usize> = match order {
        Some(o) => o.to_vec(),
        None => {
            let mut o: Vec<usize> = (0..n).collect();
            o.sort_by_key(|&j| (pi.0[j], j));
            o
        }
    };
    let decomposition = integer_inverse(&m);
    let unitriangular = decomposition.as_ref().is_some_and(|d| {
        (0..n).all(|r| {
            (0..n).all(|c| {
                let x = d[order[r]][order[c]];
                match r.cmp(&c) {
                    std::cmp::Ordering::Equal => x == 1,
                    std::cmp::Ordering::Less => x == 0,
                    std::cmp::Ordering::Greater => true,
                }
            })
        })
    });
    K0Report { a, signs, m, decomposition, order, unitriangular }
}

/// Transport Brauer characters of the local group to the other side: a
/// row `c` over the `T_j` becomes `± c a^{-1}` over the `S_i`, with the sign
/// making the row non-negative. `None` when `a` is not invertible over Z or
/// a row has entries of both signs.
pub fn transport_rows(a: &[Vec<i64>], rows: &[Vec<usize>]) -> Option<Vec<Vec<i64>>> {
    let inv = integer_inverse(a)?;
    let n = a.len();
    rows.iter()
        .map(|c| {
            let r: Vec<i64> = (0..n).map(|i| (0..n).map(|j| c[j] as i64 * inv[j][i]).sum()).collect();
            if r.iter().all(|&x| x >= 0) {
                Some(r)
            } else if r.iter().all(|&x| x <= 0) {
                Some(r.iter().map(|x| -x).collect())
            } else {
                None
            }
        })
        .collect()
}

/// Inverse over the rationals, when it exists and is integral.
pub fn integer_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| Ratio::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Ratio::from_integer(0))?;
        a.swap(col, piv);
        let inv = Ratio::from_integer(1) / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != Ratio::from_integer(0) {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * p;
                }
            }
        }
    }
    a.iter()
        .map(|row| row[n..].iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect()
}

/// `pi(j) ≡ 0 (mod 2)` iff `signs[j] > 0`. On failure returns the first
/// mismatching index.
pub fn parity_check(pi: &Perversity, signs: &[i8]) -> std::result::Result<(), usize> {
    if pi.len() != signs.len() {
        return Err(pi.len().min(signs.len()));
    }
    match pi.0.iter().zip(signs).position(|(&p, &s)| (p % 2 == 0) != (s > 0)) {
        Some(i) => Err(i),
        None => Ok(()),
    }
}

/// Perversities with values at most `bound` (and the given parities), in
/// order of total weight and then lexicographically, whose degree-0 cores
/// match `targets` up to isomorphism as a multiset. `fixed` pins values.
pub fn pi_search<F: Field>(
    rep: &RepData<F>,
    targets: &[Module<F>],
    bound: u32,
    signs: Option<&[i8]>,
    fixed: &[(usize, u32)],
) -> Result<Vec<Perversity>> {
    let n = rep.num_simples();
    if targets.len() != n {
        return Err(Error::Perversity(format!("{} targets for {} simples", targets.len(), n)));
    }
    let choices: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            (0..=bound)
                .filter(|&v| signs.map_or(true, |s| (v % 2 == 0) == (s[j] > 0)))
                .filter(|&v| fixed.iter().all(|&(i, w)| i != j || w == v))
                .collect()
        })
        .collect();
    let mut candidates: Vec<Vec<u32>> = vec![Vec::new()];
    for c in &choices {
        candidates = candidates
            .into_iter()
            .flat_map(|p| {
                c.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    candidates.sort_by_key(|p| (p.iter().sum::<u32>(), p.clone()));
    let target_cores: Vec<Module<F>> = targets.iter().map(|t| rep.core(t)).collect();
    let target_dims: Vec<usize> = target_cores.iter().map(|t| t.dim()).collect();
    // C_S depends on pi(S) and the sets of simples below each level
    let mut memo: HashMap<(usize, Vec<u32>), Module<F>> = HashMap::new();
    let mut out = Vec::new();
    'cand: for cand in candidates {
        let pi = Perversity(cand);
        let mut used = vec![false; n];
        for s in 0..n {
            let p = pi.0[s];
            let key: Vec<u32> = pi.0.iter().map(|&v| v.min(p)).collect();
            let core = match memo.get(&(s, key.clone())) {
                Some(c) => c.clone(),
                None => {
                    let c = perverse_complex(rep, &pi, s)?;
                    let core = rep.core(c.terms().last().unwrap());
                    memo.insert((s, key), core.clone());
                    core
                }
            };
            let hit = (0..n).find(|&j| {
                !used[j] && target_dims[j] == core.dim() && is_isomorphic(&core, &target_cores[j], rep.seed)
            });
            match hit {
                Some(j) => used[j] = true,
                None => continue 'cand,
            }
        }
        out.push(pi);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Gf3;
    use crate::group::library;
    use std::sync::Arc;

    fn s3() -> RepData<Gf3> {
        let a = Algebra::<Gf3>::group_algebra(Arc::new(library::load("S3").unwrap()));
        RepData::new(&a, 0).unwrap()
    }

    #[test]
    fn closure_extremes() {
        let r = s3();
        let s2 = r.simple(1).clone();
        let (n, _) = e_closure(&r, &s2, &[]);
        assert_eq!(n.dim(), 1);
        let (n, _) = e_closure(&r, &s2, &[0, 1]);
        assert_eq!(n.dim(), 3);
        let (n, f) = e_closure(&r, &s2, &[0]);
        assert_eq!(r.layer_string(&n), "1/2");
        assert!(f.is_homomorphism());
    }

    #[test]
    fn zero_perversity_gives_simples() {
        let r = s3();
        for s in 0..2 {
            let c = perverse_complex(&r, &Perversity::zero(2), s).unwrap();
            assert_eq!((c.lo(), c.hi()), (0, 0));
            assert_eq!(c.terms()[0].dim(), 1);
        }
    }

    #[test]
    fn s3_run_has_the_expected_shape() {
        let r = s3();
        for n in 1..=3u32 {
            let c = perverse_complex(&r, &Perversity(vec![0, n]), 1).unwrap();
            assert_eq!(c.lo(), -(n as i32));
            let t = term_summary(&r, &c);
            assert!(t[..n as usize].iter().all(|x| x == "P2"), "{t:?}");
            assert!(euler_identity_holds(&r, &c));
        }
    }

    #[test]
    fn elementary_tilting_for_s3() {
        let r = s3();
        assert!(elementary_tilting(&r, &[]).is_err());
        let x = elementary_tilting(&r, &[1]).unwrap();
        assert_eq!(term_summary(&r, &x), vec!["P222".to_string(), "P12".to_string()]);
        assert_eq!(x.homotopy_end("B").unwrap().dim(), 6);
    }

    #[test]
    fn k0_zero_perversity_is_identity() {
        let r = s3();
        let pi = Perversity::zero(2);
        let cs = perverse_complexes(&r, &pi).unwrap();
        let k = k0_report(&r, &cs, &pi, None);
        assert_eq!(k.decomposition, Some(vec![vec![1, 0], vec![0, 1]]));
        assert!(k.unitriangular);
    }

    #[test]
    fn parity() {
        let pi = Perversity(vec![0, 4, 2, 5, 7, 6, 3]);
        assert_eq!(parity_check(&pi, &[1, 1, 1, -1, -1, 1, -1]), Ok(()));
        assert_eq!(parity_check(&pi, &[1, 1, -1, -1, -1, 1, -1]), Err(2));
        assert_eq!(parity_check(&Perversity(vec![0, 2]), &[1, 1]), Ok(()));
    }

    #[test]
    fn search_with_simple_targets_finds_zero() {
        let r = s3();
        let t: Vec<Module<Gf3>> = (0..2).map(|i| r.simple(i).clone()).collect();
        let found = pi_search(&r, &t, 0, None, &[]).unwrap();
        assert_eq!(found, vec![Perversity::zero(2)]);
    }

    #[test]
    fn integer_inverse_of_unitriangular() {
        let m = vec![vec![1, 0, 0], vec![1, 1, 0], vec![2, 1, 1]];
        assert_eq!(integer_inverse(&m), Some(vec![vec![1, 0, 0], vec![-1, 1, 0], vec![-1, -1, 1]]));
        assert_eq!(integer_inverse(&[vec![2]]), None);
    }
}
