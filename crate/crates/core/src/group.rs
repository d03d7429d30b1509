//! Finite groups by full enumeration.
//!
//! A [`FiniteGroup`] is a multiplication table on `0..n` with `0` the
//! identity, a list of generators and, for each element, a word in the
//! generators. Semidirect products `F_p^n ⋊ E` with `E ≤ GL_n(p)` are the
//! main source of groups; their elements are ordered lexicographically by
//! (vector, index in E), with the identity of `E` first in E's order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::matrix::Matrix;

const MAX_ORDER: usize = 1000;

/// Coordinates of an element of `F_p^n ⋊ E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectData {
    pub p: u32,
    pub n: usize,
    /// Matrix entries (row-major, residues) of each element of E, in E's order.
    pub e_elements: Vec<Vec<u8>>,
    /// `(vector, e index)` of each group element.
    pub coords: Vec<(Vec<u8>, usize)>,
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    table: Vec<u16>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    gen_names: Vec<String>,
    words: Vec<Vec<usize>>,
    parent_index: Option<Vec<usize>>,
    semidirect: Option<SemidirectData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl FiniteGroup {
    /// Build from a table; element 0 must be the identity. Checks closure,
    /// identity, inverses, associativity (Light's test on generators) and
    /// generation.
    pub fn from_table(
        name: &str,
        n: usize,
        table: Vec<u16>,
        generators: Vec<usize>,
        gen_names: Vec<String>,
    ) -> Result<Self> {
        let bad = |m: &str| Error::Group(format!("{name}: {m}"));
        if n == 0 || n > MAX_ORDER {
            return Err(bad("order out of range"));
        }
        if table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(bad("table is not closed"));
        }
        if generators.len() != gen_names.len() || generators.iter().any(|&g| g >= n) {
            return Err(bad("bad generator list"));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(bad("element 0 is not the identity"));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(bad("table row is not a permutation"));
                }
            }
            inverses[a] = row.iter().position(|&x| x == 0).unwrap();
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for &g in &generators {
                    if table[ab * n + g] != table[a * n + table[b * n + g] as usize] {
                        return Err(bad("multiplication is not associative"));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            name: name.to_string(),
            table,
            inverses,
            generators,
            gen_names,
            words: Vec::new(),
            parent_index: None,
            semidirect: None,
        };
        g.words = g.bfs_words().ok_or_else(|| bad("generators do not generate"))?;
        Ok(g)
    }

    fn bfs_words(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.order();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(k);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words.into_iter().collect()
    }

    /// Enumerate the group generated by `gens` under `mul`; elements are
    /// sorted by `key` after placing the identity first.
    pub fn generated_by<T, K: Ord>(
        name: &str,
        gens: &[(String, T)],
        identity: T,
        mul: impl Fn(&T, &T) -> T,
        key: impl Fn(&T) -> K,
    ) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Ord,
    {
        let mut seen: BTreeSet<T> = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity.clone()]);
        while let Some(x) = queue.pop_front() {
            for (_, g) in gens {
                let y = mul(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_ORDER {
                        return Err(Error::Group(format!("{name}: order exceeds {MAX_ORDER}")));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elems: Vec<T> = seen.into_iter().filter(|x| *x != identity).collect();
        elems.sort_by_key(|x| key(x));
        elems.insert(0, identity);
        let index: BTreeMap<T, usize> = elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&mul(a, b)] as u16);
            }
        }
        let generators = gens.iter().map(|(_, g)| index[g]).collect();
        let names = gens.iter().map(|(s, _)| s.clone()).collect();
        Ok((Self::from_table(name, n, table, generators, names)?, elems))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(((a + b) % n) as u16);
            }
        }
        let gens = if n > 1 { vec![1] } else { vec![] };
        let names = gens.iter().map(|_| "a".to_string()).collect();
        Self::from_table(&format!("C{n}"), n, table, gens, names)
    }

    /// Matrix group generated by invertible matrices over `F_p`.
    pub fn matrix_group<const P: u8>(name: &str, gens: &[(String, Matrix<Fp<P>>)]) -> Result<(Self, Vec<Matrix<Fp<P>>>)> {
        let n = gens.first().map(|g| g.1.rows()).unwrap_or(1);
        for (s, m) in gens {
            if !m.is_square() || m.rows() != n || m.inverse().is_none() {
                return Err(Error::Group(format!("{name}: generator {s} is not in GL_{n}")));
            }
        }
        Self::generated_by(name, gens, Matrix::identity(n), |a, b| a * b, |m| m.clone())
    }

    /// `F_p^n ⋊ E` for `E` generated by the given matrices acting on columns.
    pub fn semidirect<const P: u8>(name: &str, n: usize, e_gens: &[(String, Matrix<Fp<P>>)]) -> Result<Self> {
        let (e, e_elems) = Self::matrix_group(&format!("{name}/E"), e_gens)?;
        if e_gens.iter().any(|(_, m)| m.rows() != n) {
            return Err(Error::Group(format!("{name}: action matrices must be {n}x{n}")));
        }
        // faithful by construction: E is a group of matrices
        let p = P as usize;
        let q = p.pow(n as u32);
        let vec_of = |k: usize| -> Vec<Fp<P>> {
            let mut v = Vec::with_capacity(n);
            let mut k = k;
            for _ in 0..n {
                v.push(Fp::<P>::from_index((k % p) as u32));
                k /= p;
            }
            v.reverse();
            v
        };
        let index_of = |v: &[Fp<P>]| v.iter().fold(0usize, |s, x| s * p + x.index() as usize);
        let vecs: Vec<Vec<Fp<P>>> = (0..q).map(vec_of).collect();
        let ne = e.order();
        let order = q * ne;
        // element (v, ei) has index v_index * ne + ei
        let mut table = Vec::with_capacity(order * order);
        for v1 in 0..q {
            for e1 in 0..ne {
                for v2 in 0..q {
                    let w = e_elems[e1].mul_vec(&vecs[v2]);
                    let s: Vec<Fp<P>> = vecs[v1].iter().zip(&w).map(|(&a, &b)| a + b).collect();
                    let vi = index_of(&s);
                    for e2 in 0..ne {
                        table.push((vi * ne + e.mul(e1, e2)) as u16);
                    }
                }
            }
        }
        let mut generators = Vec::new();
        let mut names = Vec::new();
        for i in 0..n {
            let mut v = vec![Fp::<P>::from_index(0); n];
            v[i] = Fp::<P>::new(1);
            generators.push(index_of(&v) * ne);
            names.push(format!("p{}", i + 1));
        }
        for (k, (s, _)) in e_gens.iter().enumerate() {
            generators.push(e.generators[k]);
            names.push(s.clone());
        }
        let mut g = Self::from_table(name, order, table, generators, names)?;
        g.semidirect = Some(SemidirectData {
            p: P as u32,
            n,
            e_elements: e_elems.iter().map(|m| m.data().iter().map(|x| x.index() as u8).collect()).collect(),
            coords: (0..order)
                .map(|k| (vecs[k / ne].iter().map(|x| x.index() as u8).collect(), k % ne))
                .collect(),
        });
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x g x^-1`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Word `w` with `g = gen[w0] * gen[w1] * ...`.
    pub fn word(&self, g: usize) -> &[usize] {
        &self.words[g]
    }

    pub fn parent_index(&self) -> Option<&[usize]> {
        self.parent_index.as_deref()
    }

    pub fn semidirect_data(&self) -> Option<&SemidirectData> {
        self.semidirect.as_ref()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for g in 0..self.order() {
            *m.entry(self.element_order(g)).or_insert(0) += 1;
        }
        m
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| self.generators.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Sorted closure of a set of elements.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let c: BTreeSet<usize> = (0..n).map(|x| self.conjugate(g, x)).collect();
            for &h in &c {
                class_of[h] = classes.len();
            }
            classes.push(c.into_iter().collect());
        }
        classes
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        set.contains(&0)
            && set.iter().all(|&a| set.iter().all(|&b| set.binary_search(&self.mul(a, b)).is_ok()))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        set.iter().all(|&h| self.generators.iter().all(|&x| set.binary_search(&self.conjugate(h, x)).is_ok()))
    }

    pub fn conjugate_set(&self, set: &[usize], x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&h| self.conjugate(h, x)).collect();
        v.sort_unstable();
        v
    }

    pub fn normalizer(&self, set: &[usize]) -> Vec<usize> {
        (0..self.order()).filter(|&x| self.conjugate_set(set, x) == set).collect()
    }

    pub fn centralizer(&self, set: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| set.iter().all(|&h| self.mul(x, h) == self.mul(h, x)))
            .collect()
    }

    /// One representative per conjugacy class of subgroups of prime order
    /// `ell`; each class is represented by the member whose least nontrivial
    /// element is smallest.
    pub fn prime_order_subgroup_classes(&self, ell: usize) -> Vec<Vec<usize>> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 1..self.order() {
            if self.element_order(g) == ell {
                all.insert(self.closure(&[g]));
            }
        }
        let mut reps = Vec::new();
        let mut done: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut by_min: Vec<Vec<usize>> = all.into_iter().collect();
        by_min.sort_by_key(|s| s[1]);
        for s in by_min {
            if done.contains(&s) {
                continue;
            }
            for x in 0..self.order() {
                done.insert(self.conjugate_set(&s, x));
            }
            reps.push(s);
        }
        reps
    }

    /// Standalone group on a sorted subgroup `set`, generated by `gens`
    /// (elements of the parent). Element order follows the parent.
    pub fn subgroup(&self, name: &str, set: &[usize], gens: &[usize]) -> Result<Self> {
        if !self.is_subgroup(set) {
            return Err(Error::Group(format!("{name}: not a subgroup")));
        }
        let local = |x: usize| set.binary_search(&x).expect("element of subgroup");
        let n = set.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in set {
            for &b in set {
                table.push(local(self.mul(a, b)) as u16);
            }
        }
        let names = gens
            .iter()
            .map(|&g| {
                self.generators
                    .iter()
                    .position(|&x| x == g)
                    .map(|k| self.gen_names[k].clone())
                    .unwrap_or_else(|| format!("g{g}"))
            })
            .collect();
        let mut h = Self::from_table(name, n, table, gens.iter().map(|&g| local(g)).collect(), names)?;
        h.parent_index = Some(set.to_vec());
        Ok(h)
    }

    /// Subgroup generated by `gens`, with the generators reduced to a
    /// minimal-looking subset (redundant ones dropped greedily).
    pub fn subgroup_generated(&self, name: &str, gens: &[usize]) -> Result<Self> {
        let set = self.closure(gens);
        let mut kept: Vec<usize> = Vec::new();
        let mut span = vec![0usize];
        for &g in gens {
            if span.binary_search(&g).is_err() {
                kept.push(g);
                span = self.closure(&kept);
            }
        }
        self.subgroup(name, &set, &kept)
    }

    /// Subgroup on a sorted set, with generators chosen greedily by index.
    pub fn subgroup_on(&self, name: &str, set: &[usize]) -> Result<Self> {
        let mut kept: Vec<usize> = Vec::new();
        let mut span = vec![0usize];
        for &g in set {
            if span.binary_search(&g).is_err() {
                kept.push(g);
                span = self.closure(&kept);
            }
        }
        if span != set {
            return Err(Error::Group(format!("{name}: not a subgroup")));
        }
        self.subgroup(name, set, &kept)
    }

    /// Left cosets `gH` of a sorted subgroup, each represented by its least
    /// element; returns the representatives and, for every element `g`, the
    /// pair (coset index, `h`) with `g = t * h`.
    pub fn left_cosets(&self, set: &[usize]) -> (Vec<usize>, Vec<(usize, usize)>) {
        let n = self.order();
        let mut which = vec![(usize::MAX, 0usize); n];
        let mut reps = Vec::new();
        for t in 0..n {
            if which[t].0 != usize::MAX {
                continue;
            }
            let j = reps.len();
            reps.push(t);
            for &h in set {
                which[self.mul(t, h)] = (j, h);
            }
        }
        (reps, which)
    }

    /// Quotient by a normal subgroup, cosets ordered by least element.
    pub fn quotient(&self, name: &str, normal: &[usize]) -> Result<(Self, Vec<usize>)> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::Group(format!("{name}: quotient by a non-normal subgroup")));
        }
        let (reps, which) = self.left_cosets(normal);
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(which[self.mul(a, b)].0 as u16);
            }
        }
        let mut gens: Vec<usize> = Vec::new();
        let mut names = Vec::new();
        for (k, &g) in self.generators.iter().enumerate() {
            let c = which[g].0;
            if c != 0 && !gens.contains(&c) {
                gens.push(c);
                names.push(self.gen_names[k].clone());
            }
        }
        let proj = which.iter().map(|w| w.0).collect();
        Ok((Self::from_table(name, m, table, gens, names)?, proj))
    }

    /// A complement to the normal subgroup `normal`: a subgroup `K` with
    /// `K ∩ normal = 1` and `|K| |normal| = |G|`. Searches subgroups
    /// generated by one, two or three elements of order coprime to
    /// `|normal|`, in lexicographic order of generator tuples.
    pub fn complement_find(&self, normal: &[usize]) -> Result<Vec<usize>> {
        if !self.is_normal(normal) {
            return Err(Error::Group("complement of a non-normal subgroup".into()));
        }
        let target = self.order() / normal.len();
        let nn = normal.len();
        let gcd = |mut a: usize, mut b: usize| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        let cands: Vec<usize> = (0..self.order())
            .filter(|&g| gcd(self.element_order(g), nn) == 1 && target % self.element_order(g) == 0)
            .collect();
        let ok = |s: &[usize]| s.len() == target && s.iter().filter(|x| normal.binary_search(x).is_ok()).count() == 1;
        if target == 1 {
            return Ok(vec![0]);
        }
        for (i, &a) in cands.iter().enumerate() {
            let s = self.closure(&[a]);
            if ok(&s) {
                return Ok(s);
            }
            if s.len() >= target {
                continue;
            }
            for (j, &b) in cands.iter().enumerate().skip(i + 1) {
                let s2 = self.closure(&[a, b]);
                if ok(&s2) {
                    return Ok(s2);
                }
                if s2.len() >= target {
                    continue;
                }
                for &c in cands.iter().skip(j + 1) {
                    let s3 = self.closure(&[a, b, c]);
                    if ok(&s3) {
                        return Ok(s3);
                    }
                }
            }
        }
        Err(Error::Group("no complement found".into()))
    }

    /// Elements of the normal subgroup `P = F_p^n` of a semidirect product.
    pub fn p_part(&self) -> Option<Vec<usize>> {
        let sd = self.semidirect.as_ref()?;
        Some((0..self.order()).filter(|&g| sd.coords[g].1 == 0).collect())
    }

    /// Elements of the complement `E` (zero vector part).
    pub fn e_part(&self) -> Option<Vec<usize>> {
        let sd = self.semidirect.as_ref()?;
        Some((0..self.order()).filter(|&g| sd.coords[g].0.iter().all(|&x| x == 0)).collect())
    }

    /// Readable element label.
    pub fn element_label(&self, g: usize) -> String {
        match &self.semidirect {
            Some(sd) => {
                let (v, e) = &sd.coords[g];
                let vs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({};e{})", vs.join(""), e)
            }
            None => format!("g{g}"),
        }
    }
}

/// Group description files.
///
/// ```text
/// # comment
/// name C3^2:D8
/// semidirect 3 2
/// gen a
/// 2 2 3
/// 0 1
/// 2 0
/// gen b
/// 2 2 3
/// 1 0
/// 0 2
/// ```
///
/// `semidirect p n` gives `P = F_p^n`; each `gen` block names a generator of
/// `E` followed by its `n x n` action matrix in the matrix text format.
pub fn parse_group_file(text: &str) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());
    let mut name = String::from("group");
    let mut header: Option<(u32, usize)> = None;
    let mut gens2: Vec<(String, Matrix<Fp<2>>)> = Vec::new();
    let mut gens3: Vec<(String, Matrix<Fp<3>>)> = Vec::new();
    let at = |line, message: String| Error::ParseAt { line, column: 1, message };
    while let Some((ln, line)) = lines.next() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "name" if toks.len() == 2 => name = toks[1].to_string(),
            "semidirect" if toks.len() == 3 => {
                let p: u32 = toks[1].parse().map_err(|_| at(ln, "bad prime".into()))?;
                let n: usize = toks[2].parse().map_err(|_| at(ln, "bad rank".into()))?;
                if p != 2 && p != 3 {
                    return Err(at(ln, format!("unsupported prime {p}")));
                }
                header = Some((p, n));
            }
            "gen" if toks.len() == 2 => {
                let (p, n) = header.ok_or_else(|| at(ln, "`gen` before `semidirect`".into()))?;
                let (hl, h) = lines.next().ok_or_else(|| at(ln, "missing matrix".into()))?;
                let dims_ok = |r: usize, c: usize| r == n && c == n;
                if p == 2 {
                    let m = Matrix::<Fp<2>>::parse_lines(hl, h, &mut lines)?;
                    if !dims_ok(m.rows(), m.cols()) {
                        return Err(at(hl, format!("matrix must be {n}x{n}")));
                    }
                    gens2.push((toks[1].to_string(), m));
                } else {
                    let m = Matrix::<Fp<3>>::parse_lines(hl, h, &mut lines)?;
                    if !dims_ok(m.rows(), m.cols()) {
                        return Err(at(hl, format!("matrix must be {n}x{n}")));
                    }
                    gens3.push((toks[1].to_string(), m));
                }
            }
            _ => return Err(at(ln, format!("unexpected `{}`", line.trim()))),
        }
    }
    match header {
        Some((2, n)) => FiniteGroup::semidirect::<2>(&name, n, &gens2),
        Some((3, n)) => FiniteGroup::semidirect::<3>(&name, n, &gens3),
        _ => Err(Error::Parse("missing `semidirect p n` header".into())),
    }
}

/// The shipped local groups.
pub mod library {
    use super::*;

    pub const C4: &str = include_str!("../data/groups/c4.grp");
    pub const Q8: &str = include_str!("../data/groups/q8.grp");
    pub const D8: &str = include_str!("../data/groups/d8.grp");
    pub const SD16: &str = include_str!("../data/groups/sd16.grp");
    pub const C8: &str = include_str!("../data/groups/c8.grp");
    pub const C2XC2: &str = include_str!("../data/groups/c2xc2.grp");
    pub const S3: &str = include_str!("../data/groups/s3.grp");
    pub const A4: &str = include_str!("../data/groups/a4.grp");
    pub const C2CUBE_C7: &str = include_str!("../data/groups/c2cube_c7.grp");

    /// Expected element-order statistics of the automizer `E`.
    fn automizer_orders(name: &str) -> Option<Vec<(usize, usize)>> {
        Some(match name {
            "C4" => vec![(1, 1), (2, 1), (4, 2)],
            "C8" => vec![(1, 1), (2, 1), (4, 2), (8, 4)],
            "Q8" => vec![(1, 1), (2, 1), (4, 6)],
            "D8" => vec![(1, 1), (2, 5), (4, 2)],
            "SD16" => vec![(1, 1), (2, 5), (4, 6), (8, 4)],
            "C2xC2" => vec![(1, 1), (2, 3)],
            _ => return None,
        })
    }

    /// Load a shipped group by name (`C4`, `Q8`, `D8`, `SD16`, `C8`,
    /// `C2xC2`, `S3`, `A4`, `C2^3:C7`). Automizer types are checked by
    /// element orders and center size.
    pub fn load(name: &str) -> Result<FiniteGroup> {
        let text = match name {
            "C4" => C4,
            "Q8" => Q8,
            "D8" => D8,
            "SD16" => SD16,
            "C8" => C8,
            "C2xC2" => C2XC2,
            "S3" => S3,
            "A4" => A4,
            "C2^3:C7" => C2CUBE_C7,
            _ => return Err(Error::Group(format!("unknown group `{name}`"))),
        };
        let g = parse_group_file(text)?;
        if let Some(expected) = automizer_orders(name) {
            let e_set = g.e_part().unwrap();
            let e = g.subgroup_on("E", &e_set)?;
            let got: Vec<(usize, usize)> = e.order_statistics().into_iter().collect();
            if got != expected {
                return Err(Error::Group(format!("automizer {name} has element orders {got:?}")));
            }
            let zsize = e.center().len();
            let want_z = match name {
                "C4" | "C8" | "C2xC2" => e.order(),
                _ => 2,
            };
            if zsize != want_z {
                return Err(Error::Group(format!("automizer {name} has center of order {zsize}")));
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_orders() {
        for (n, o) in [("C4", 36), ("Q8", 72), ("D8", 72), ("SD16", 144), ("C8", 72), ("C2xC2", 36), ("S3", 6), ("A4", 12), ("C2^3:C7", 56)] {
            assert_eq!(library::load(n).unwrap().order(), o, "{n}");
        }
    }

    #[test]
    fn c4_element_orders() {
        let g = library::load("C4").unwrap();
        let orders: BTreeSet<usize> = g.order_statistics().keys().copied().collect();
        // fixed-point free: no elements of order 6 or 12
        assert_eq!(orders, BTreeSet::from([1, 2, 3, 4]));
    }

    #[test]
    fn class_equation() {
        for n in ["D8", "SD16", "A4"] {
            let g = library::load(n).unwrap();
            let cl = g.conjugacy_classes();
            assert_eq!(cl.iter().map(|c| c.len()).sum::<usize>(), g.order());
            assert!(cl.iter().all(|c| g.order() % c.len() == 0));
        }
    }

    #[test]
    fn order_three_subgroup_classes() {
        let count = |n| library::load(n).unwrap().prime_order_subgroup_classes(3).len();
        assert_eq!(count("D8"), 2);
        assert_eq!(count("SD16"), 1);
        assert_eq!(count("Q8"), 1);
    }

    #[test]
    fn quotient_by_p() {
        let g = library::load("C4").unwrap();
        let p = g.p_part().unwrap();
        let (q, _) = g.quotient("E", &p).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.order_statistics()[&4], 2);
        let q1 = &g.prime_order_subgroup_classes(3)[0];
        assert!(p.iter().all(|x| g.centralizer(q1).contains(x)));
    }

    #[test]
    fn stabilizers_for_d8() {
        let g = library::load("D8").unwrap();
        let e = g.e_part().unwrap();
        for q in g.prime_order_subgroup_classes(3) {
            let n = g.normalizer(&q);
            let c = g.centralizer(&q);
            assert!(q.iter().all(|x| c.contains(x)) && c.iter().all(|x| n.contains(x)));
            let e_prime: Vec<usize> = e.iter().copied().filter(|x| n.contains(x)).collect();
            let e_q: Vec<usize> = e.iter().copied().filter(|x| c.contains(x)).collect();
            assert_eq!((e_prime.len(), e_q.len()), (4, 2));
        }
    }

    #[test]
    fn complement_of_p() {
        let g = library::load("SD16").unwrap();
        let k = g.complement_find(&g.p_part().unwrap()).unwrap();
        assert_eq!(k.len(), 16);
        assert!(g.is_subgroup(&k));
    }

    #[test]
    fn words_evaluate() {
        let g = library::load("A4").unwrap();
        for x in 0..g.order() {
            let y = g.word(x).iter().fold(0, |acc, &k| g.mul(acc, g.generators()[k]));
            assert_eq!(x, y);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_group_file("semidirect 5 1\n").is_err());
        let e = parse_group_file("semidirect 3 1\ngen a\n1 1 3\n7\n").unwrap_err();
        assert!(matches!(e, Error::ParseAt { line: 4, .. }));
    }
}
