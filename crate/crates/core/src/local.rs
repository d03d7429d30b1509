//! Local group algebras `k(P:E)` with the simple labelling used throughout.
//!
//! Simples are labelled `1..n`. The default order (dimension, then traces)
//! is permuted until the projective indecomposables have the recorded
//! Loewy layers; remaining ambiguity is fixed per group:
//!
//! - `D8`: `T2` is chosen so that `Ind_{Q_1}^N k` has a summand `5/12/5`.
//! - `SD16`: the kernels of `T2, T3, T4` on `E` are `C8, D8, Q8`.
//! - otherwise the first matching permutation.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::Algebra;
use crate::blocks::subgroup_algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{library, FiniteGroup};
use crate::matrix::Matrix;
use crate::meataxe::SimpleIndex;
use crate::module::Module;
use crate::structure::{render_layers, Layers, RepData};

const LOCAL_DATA: &str = include_str!("../data/local.toml");

#[derive(Clone, Debug, Deserialize)]
pub struct RelProjSpec {
    pub label: String,
    /// 1-based index into the classes of order-`p` subgroups.
    pub class: usize,
    pub source: Source,
    pub layers: String,
}

/// The module on `Q` that is induced.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Trivial,
    /// Uniserial of length 2 (Jordan block).
    Uniserial2,
}

#[derive(Clone, Debug, Deserialize)]
pub struct LocalSpec {
    pub name: String,
    pub field: u32,
    pub pims: Vec<String>,
    #[serde(default)]
    pub relproj: Vec<RelProjSpec>,
}

#[derive(Deserialize)]
struct LocalFile {
    group: Vec<LocalSpec>,
}

/// Recorded data for every shipped local group.
pub fn local_specs() -> Vec<LocalSpec> {
    let f: LocalFile = toml::from_str(LOCAL_DATA).expect("shipped local data");
    f.group
}

pub fn local_spec(name: &str) -> Result<LocalSpec> {
    local_specs()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Group(format!("no local data for `{name}`")))
}

/// A labelled local group algebra.
#[derive(Clone, Debug)]
pub struct LocalGroup<F: Field> {
    pub spec: LocalSpec,
    pub group: Arc<FiniteGroup>,
    pub rep: RepData<F>,
    /// Classes of subgroups of order `p`, as sorted element sets.
    pub q_classes: Vec<Vec<usize>>,
}

impl<F: Field> LocalGroup<F> {
    pub fn load(name: &str, seed: u64) -> Result<Self> {
        let spec = local_spec(name)?;
        if F::CHARACTERISTIC as u32 != spec.field || F::DEGREE != 1 {
            return Err(Error::Group(format!("{name} is defined over F_{}", spec.field)));
        }
        let group = Arc::new(library::load(name)?);
        let p = group.semidirect_data().map(|s| s.p as usize).unwrap_or(F::CHARACTERISTIC as usize);
        let q_classes = group.prime_order_subgroup_classes(p);
        let algebra = Algebra::group_algebra(group.clone());
        let rep = RepData::new(&algebra, seed)?;
        let mut lg = LocalGroup { spec, group, rep, q_classes };
        lg.rep = lg.labelled()?;
        Ok(lg)
    }

    /// An unlabelled local group from a group file: simples keep the
    /// default order and no relatively projective modules are recorded.
    pub fn from_group(group: FiniteGroup, seed: u64) -> Result<Self> {
        let p = group
            .semidirect_data()
            .map(|s| s.p)
            .ok_or_else(|| Error::Group(format!("{} is not given as P:E", group.name())))?;
        if F::CHARACTERISTIC as u32 != p || F::DEGREE != 1 {
            return Err(Error::Group(format!("{} is defined over F_{p}", group.name())));
        }
        let group = Arc::new(group);
        let q_classes = group.prime_order_subgroup_classes(p as usize);
        let rep = RepData::new(&Algebra::group_algebra(group.clone()), seed)?;
        let pims = (0..rep.num_simples()).map(|i| rep.layer_string(rep.pim(i))).collect();
        let spec = LocalSpec { name: group.name().to_string(), field: p, pims, relproj: Vec::new() };
        Ok(LocalGroup { spec, group, rep, q_classes })
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.rep.algebra
    }

    /// `Ind_Q^N` of the source module on the subgroup of class `class`
    /// (0-based).
    pub fn induced(&self, class: usize, source: Source) -> Result<Module<F>> {
        let set = &self.q_classes[class];
        let qa = subgroup_algebra(self.algebra(), "Q", set)?;
        let m = match source {
            Source::Trivial => Module::trivial(qa)?,
            Source::Uniserial2 => {
                let gens = qa.group().unwrap().generators().len();
                let j = Matrix::from_ints(2, 2, &[1, 0, 1, 1]);
                Module::new(qa, vec![j; gens])?
            }
        };
        m.induce(self.algebra())
    }

    /// Non-projective summands of a module with their layer strings, in the
    /// current labelling.
    pub fn relproj_summands(&self, m: &Module<F>) -> Vec<(Module<F>, String)> {
        let (core, _) = self.rep.strip_projectives(m);
        core.into_iter()
            .map(|s| {
                let l = self.rep.layer_string(&s.module);
                (s.module, l)
            })
            .collect()
    }

    /// Brauer characters of the irreducible characters of `N` that are
    /// non-trivial on `P`, as composition multiplicities over the simples.
    ///
    /// By Clifford theory each such character is induced from `P:E_λ`, with
    /// `λ` a non-trivial linear character of `P` and `E_λ` its stabilizer,
    /// so its reduction is `Ind_{P:E_λ}^N` of a simple of `E_λ` (with `P`
    /// acting trivially). One row per `E`-orbit of `λ` and simple of `E_λ`;
    /// over a non-splitting field Galois-conjugate rows stay amalgamated.
    pub fn clifford_rows(&self) -> Result<Vec<Vec<usize>>> {
        let sd = self
            .group
            .semidirect_data()
            .ok_or_else(|| Error::Group(format!("{}: not a semidirect product", self.spec.name)))?;
        let (p, n) = (sd.p as usize, sd.n);
        // right action of E on row vectors: phi -> phi M_e
        let act = |phi: &[usize], e: usize| -> Vec<usize> {
            let m = &sd.e_elements[e];
            (0..n).map(|j| (0..n).map(|i| phi[i] * m[i * n + j] as usize).sum::<usize>() % p).collect()
        };
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut rows = Vec::new();
        for code in 1..p.pow(n as u32) {
            let phi: Vec<usize> = (0..n).map(|i| code / p.pow(i as u32) % p).collect();
            if seen.contains(&phi) {
                continue;
            }
            let stab: Vec<usize> = (0..sd.e_elements.len()).filter(|&e| act(&phi, e) == phi).collect();
            for e in 0..sd.e_elements.len() {
                let v = act(&phi, e);
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
            let set: Vec<usize> = (0..self.group.order()).filter(|&g| stab.contains(&sd.coords[g].1)).collect();
            let ha = subgroup_algebra(self.algebra(), "P:E_l", &set)?;
            let simples = SimpleIndex::compute(&ha, self.rep.seed);
            for s in simples.simples() {
                rows.push(self.rep.composition(&s.induce(self.algebra())?));
            }
        }
        Ok(rows)
    }

    fn labelled(&self) -> Result<RepData<F>> {
        let rep = &self.rep;
        let n = rep.num_simples();
        if self.spec.pims.len() != n {
            return Err(Error::Group(format!("{}: {} simples, {} recorded", self.spec.name, n, self.spec.pims.len())));
        }
        let layers: Vec<Layers> = (0..n).map(|i| rep.loewy_layers(rep.pim(i))).collect();
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let dims: Vec<usize> = (0..n).map(|i| rep.simple(i).dim()).collect();
        let induced_layers = match self.spec.name.as_str() {
            "D8" => {
                let ind = self.induced(0, Source::Trivial)?;
                let (core, _) = rep.strip_projectives(&ind);
                core.iter().map(|s| rep.loewy_layers(&s.module)).collect()
            }
            _ => Vec::new(),
        };
        let kernels: Vec<BTreeMap<usize, usize>> = (0..n).map(|i| self.e_kernel_type(rep.simple(i))).collect();
        for perm in permutations(n) {
            if perm[0] != 0 || perm.iter().enumerate().any(|(i, &j)| dims[i] != dims[j]) {
                continue;
            }
            let shown = |l: &Layers| render_layers(&labels, &permute_layers(l, &perm));
            if (0..n).any(|i| shown(&layers[perm[i]]) != self.spec.pims[i]) {
                continue;
            }
            let ok = match self.spec.name.as_str() {
                "D8" => induced_layers.iter().any(|l| shown(l) == "5/12/5"),
                "SD16" => {
                    let count = |i: usize, ord: usize| kernels[perm[i]].get(&ord).copied().unwrap_or(0);
                    count(1, 8) > 0 && count(2, 2) == 5 && count(3, 4) == 6
                }
                _ => true,
            };
            if ok {
                return Ok(rep.relabel(&perm, labels));
            }
        }
        Err(Error::Group(format!("{}: no labelling matches the recorded projectives", self.spec.name)))
    }

    /// Element-order statistics of the kernel of `s` on `E`, for a
    /// 1-dimensional `s`; empty otherwise.
    fn e_kernel_type(&self, s: &Module<F>) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        let Some(e) = self.group.e_part() else { return out };
        if s.dim() != 1 {
            return out;
        }
        for g in e {
            if s.element_matrix(g).is_identity() {
                *out.entry(self.group.element_order(g)).or_insert(0) += 1;
            }
        }
        out
    }

    /// Labelled relatively projective modules: for each recorded entry, the
    /// matching summand of the induced module, if any.
    pub fn relproj_catalog(&self) -> Result<RelProjCatalog<F>> {
        let mut cache: BTreeMap<(usize, bool), Vec<(Module<F>, String)>> = BTreeMap::new();
        let mut entries = Vec::new();
        for r in &self.spec.relproj {
            let c = r.class.checked_sub(1).filter(|&c| c < self.q_classes.len()).ok_or_else(|| {
                Error::Group(format!("{}: no subgroup class {}", r.label, r.class))
            })?;
            let key = (c, r.source == Source::Uniserial2);
            if !cache.contains_key(&key) {
                let ind = self.induced(c, r.source)?;
                cache.insert(key, self.relproj_summands(&ind));
            }
            let found = cache[&key].iter().find(|(_, l)| *l == r.layers).map(|(m, _)| m.clone());
            entries.push(RelProj { spec: r.clone(), module: found });
        }
        let unmatched = cache
            .values()
            .flatten()
            .filter(|(_, l)| !self.spec.relproj.iter().any(|r| r.layers == *l))
            .map(|(_, l)| l.clone())
            .collect();
        Ok(RelProjCatalog { entries, unmatched })
    }
}

/// A recorded relatively projective module and the summand realizing it.
#[derive(Clone, Debug)]
pub struct RelProj<F: Field> {
    pub spec: RelProjSpec,
    pub module: Option<Module<F>>,
}

#[derive(Clone, Debug)]
pub struct RelProjCatalog<F: Field> {
    pub entries: Vec<RelProj<F>>,
    /// Layer strings of induced summands not in the record.
    pub unmatched: Vec<String>,
}

impl<F: Field> RelProjCatalog<F> {
    pub fn get(&self, label: &str) -> Option<&Module<F>> {
        self.entries.iter().find(|e| e.spec.label == label).and_then(|e| e.module.as_ref())
    }

    pub fn is_complete(&self) -> bool {
        self.unmatched.is_empty() && self.entries.iter().all(|e| e.module.is_some())
    }
}

fn permute_layers(l: &Layers, perm: &[usize]) -> Layers {
    l.iter().map(|row| perm.iter().map(|&j| row[j]).collect()).collect()
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf3};

    fn pim_strings<F: Field>(g: &LocalGroup<F>) -> Vec<String> {
        (0..g.rep.num_simples()).map(|i| g.rep.layer_string(g.rep.pim(i))).collect()
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }

    #[test]
    fn labelled_projectives() {
        for name in ["C4", "Q8", "D8", "SD16", "S3"] {
            let g = LocalGroup::<Gf3>::load(name, 0).unwrap();
            assert_eq!(pim_strings(&g), g.spec.pims, "{name}");
        }
        for name in ["A4", "C2^3:C7"] {
            let g = LocalGroup::<Gf2>::load(name, 0).unwrap();
            assert_eq!(pim_strings(&g), g.spec.pims, "{name}");
        }
    }

    #[test]
    fn wrong_field_is_rejected() {
        assert!(LocalGroup::<Gf2>::load("D8", 0).is_err());
    }

    #[test]
    fn d8_fourth_simple_is_determinant_of_fifth() {
        let g = LocalGroup::<Gf3>::load("D8", 0).unwrap();
        let t5 = g.rep.simple(4);
        let det: Vec<Matrix<Gf3>> = t5
            .gens()
            .iter()
            .map(|m| Matrix::from_vec(1, 1, vec![m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)]).unwrap())
            .collect();
        let d = Module::new(g.algebra().clone(), det).unwrap();
        assert_eq!(g.rep.simples.identify(&d), Some(3));
    }

    #[test]
    fn clifford_row_counts() {
        for (name, rows) in [("C4", 2), ("Q8", 1), ("D8", 4), ("SD16", 2)] {
            let g = LocalGroup::<Gf3>::load(name, 0).unwrap();
            let r = g.clifford_rows().unwrap();
            assert_eq!(r.len(), rows, "{name}");
        }
        let q8 = LocalGroup::<Gf3>::load("Q8", 0).unwrap();
        // E acts regularly on the non-trivial characters of P: Ind_P^N k = kE
        assert_eq!(q8.clifford_rows().unwrap(), vec![vec![1, 1, 1, 1, 2]]);
        let a4 = LocalGroup::<Gf2>::load("A4", 0).unwrap();
        assert_eq!(a4.clifford_rows().unwrap(), vec![vec![1, 1]]);
    }

    #[test]
    fn relproj_catalogs() {
        for name in ["D8", "SD16"] {
            let g = LocalGroup::<Gf3>::load(name, 0).unwrap();
            let c = g.relproj_catalog().unwrap();
            for e in &c.entries {
                assert!(e.module.is_some(), "{name} {}", e.spec.label);
            }
            assert!(c.unmatched.is_empty(), "{name}: {:?}", c.unmatched);
        }
    }
}
