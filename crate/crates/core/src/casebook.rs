//! Case data for the local side: Green correspondent recipes, perversity and
//! twist tables, expected complexes, cohomology and decomposition matrices,
//! with the verification and search pipelines over them.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::complex::BoundedComplex;
use crate::decompose::{group_isomorphic, is_indecomposable, is_isomorphic};
use crate::error::{Error, Result};
use crate::field::{Field, Gf2, Gf3};
use crate::group::{parse_group_file, FiniteGroup};
use crate::hom::hom;
use crate::local::{local_spec, LocalGroup, Source};
use crate::matrix::{EchelonBasis, Matrix};
use crate::module::{non_pivots, Module};
use crate::perverse::{
    euler_identity_holds, k0_report, module_summary, parity_check, perverse_complexes, pi_search, summand_layers,
    term_summary, transport_rows, Perversity,
};
use crate::report::{Report, Table};
use crate::structure::{parse_layers, render_layers, Layers, RepData};
use crate::twists::{stable_object, twisted_image, TwistSpec};

/// How to build a kN-module from the displayed data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GreenRecipe {
    /// A Loewy string: a simple if it has one factor, otherwise a quotient
    /// of the projective cover of its head with these layers.
    Layers(String),
    /// Socle layers, top first: a submodule of the injective hull of the
    /// bottom layer.
    Socle(String),
    Omega(Box<GreenRecipe>),
    OmegaInv(Box<GreenRecipe>),
    /// The summand of `Ind_Q^N` (class 1-based) with these layers.
    Induced { class: usize, source: Source, layers: String },
}

impl FromStr for GreenRecipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("omega_inv:") {
            return Ok(GreenRecipe::OmegaInv(Box::new(rest.parse()?)));
        }
        if let Some(rest) = s.strip_prefix("omega:") {
            return Ok(GreenRecipe::Omega(Box::new(rest.parse()?)));
        }
        if let Some(rest) = s.strip_prefix("soc:") {
            return Ok(GreenRecipe::Socle(rest.trim().to_string()));
        }
        if let Some(rest) = s.strip_prefix("ind:") {
            let parts: Vec<&str> = rest.split(':').collect();
            let [class, source, layers] = parts[..] else {
                return Err(Error::Parse(format!("expected ind:CLASS:SOURCE:LAYERS, got `{s}`")));
            };
            let class = class
                .trim_start_matches('Q')
                .parse()
                .map_err(|_| Error::Parse(format!("bad class `{class}`")))?;
            let source = match source {
                "trivial" => Source::Trivial,
                "uniserial2" => Source::Uniserial2,
                _ => return Err(Error::Parse(format!("bad source `{source}`"))),
            };
            return Ok(GreenRecipe::Induced { class, source, layers: layers.to_string() });
        }
        if s.is_empty() {
            return Err(Error::Parse("empty recipe".into()));
        }
        Ok(GreenRecipe::Layers(s.to_string()))
    }
}

impl fmt::Display for GreenRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GreenRecipe::Layers(l) => write!(f, "{l}"),
            GreenRecipe::Socle(l) => write!(f, "soc:{l}"),
            GreenRecipe::Omega(r) => write!(f, "omega:{r}"),
            GreenRecipe::OmegaInv(r) => write!(f, "omega_inv:{r}"),
            GreenRecipe::Induced { class, source, layers } => {
                let src = match source {
                    Source::Trivial => "trivial",
                    Source::Uniserial2 => "uniserial2",
                };
                write!(f, "ind:Q{class}:{src}:{layers}")
            }
        }
    }
}

/// Number of random descents tried by the quotient search.
const QUOTIENT_TRIALS: usize = 48;

/// Build the module described by `recipe`. A layer search keeps the
/// indecomposable quotients whose socle is the bottom layer; they must form
/// a single isomorphism class.
pub fn realize_green<F: Field>(lg: &LocalGroup<F>, recipe: &GreenRecipe) -> Result<Module<F>> {
    let rep = &lg.rep;
    let err = |m: String| Error::Case { case: lg.spec.name.clone(), message: m };
    match recipe {
        GreenRecipe::Layers(s) => {
            let target = parse_layers(rep.simples.labels(), s)?;
            let bottom = target.last().expect("nonempty layers");
            let out: Vec<Module<F>> = quotient_search(rep, &target)?
                .into_iter()
                .filter(|m| rep.socle_multiplicities(m) == *bottom && is_indecomposable(m, rep.seed))
                .collect();
            single_class(out, rep.seed).map_err(|k| {
                err(if k == 0 { format!("no quotient with layers {s}") } else { format!("{k} non-isomorphic quotients with layers {s}") })
            })
        }
        GreenRecipe::Socle(s) => {
            let target = parse_layers(rep.simples.labels(), s)?;
            let dual = rep.dual_simples();
            let flip = |l: &Vec<usize>| {
                let mut out = vec![0; l.len()];
                for (i, &k) in l.iter().enumerate() {
                    out[dual[i]] += k;
                }
                out
            };
            let dual_target: Layers = target.iter().rev().map(flip).collect();
            let out: Vec<Module<F>> = quotient_search(rep, &dual_target)?
                .into_iter()
                .map(|m| m.dual())
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|m| rep.socle_layers(m) == target && is_indecomposable(m, rep.seed))
                .collect();
            single_class(out, rep.seed).map_err(|k| {
                err(if k == 0 { format!("no submodule with socle layers {s}") } else { format!("{k} non-isomorphic submodules with socle layers {s}") })
            })
        }
        GreenRecipe::Omega(r) => Ok(rep.omega(&realize_green(lg, r)?)),
        GreenRecipe::OmegaInv(r) => Ok(rep.omega_inv(&realize_green(lg, r)?)),
        GreenRecipe::Induced { class, source, layers } => {
            if *class == 0 || *class > lg.q_classes.len() {
                return Err(err(format!("no subgroup class {class}")));
            }
            let ind = lg.induced(class - 1, *source)?;
            let found: Vec<Module<F>> =
                lg.relproj_summands(&ind).into_iter().filter(|(_, l)| l == layers).map(|(m, _)| m).collect();
            match group_isomorphic(found, rep.seed).len() {
                0 => Err(err(format!("no summand {layers} of the induced module"))),
                1 => Ok(lg.relproj_summands(&ind).into_iter().find(|(_, l)| l == layers).unwrap().0),
                k => Err(err(format!("{k} non-isomorphic summands {layers}"))),
            }
        }
    }
}

/// The representative when `ms` forms one isomorphism class, otherwise the
/// number of classes.
fn single_class<F: Field>(ms: Vec<Module<F>>, seed: u64) -> std::result::Result<Module<F>, usize> {
    let mut classes = group_isomorphic(ms, seed);
    match classes.len() {
        1 => Ok(classes.pop().unwrap().0),
        k => Err(k),
    }
}

/// Quotients `P/U` of the projective cover of the head of `target` with
/// Loewy layers `target`.
///
/// Each descent starts from `P / rad^L P` and repeatedly kills the image of
/// a random map `P_t -> rad^i` at the first layer `i` with an excess factor
/// `t`; layers above `i` are unaffected, so every descent terminates.
pub fn quotient_search<F: Field>(rep: &RepData<F>, target: &Layers) -> Result<Vec<Module<F>>> {
    let n = rep.num_simples();
    if target.is_empty() || target.iter().any(|l| l.len() != n) {
        return Err(Error::Parse("layers do not match the simples".into()));
    }
    let head = &target[0];
    let parts: Vec<Module<F>> =
        (0..n).flat_map(|i| std::iter::repeat(rep.pim(i).clone()).take(head[i])).collect();
    let p = Module::direct_sum_all(&rep.algebra, &parts)?;
    let series = rep.radical_series(&p);
    let depth = target.len();
    if depth >= series.len() {
        return Ok(if rep.loewy_layers(&p) == *target { vec![p] } else { Vec::new() });
    }
    let start = series[depth].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(rep.seed);
    let mut out = Vec::new();
    for _ in 0..QUOTIENT_TRIALS {
        let mut u = EchelonBasis::from_matrix(&start);
        loop {
            let basis = u.to_matrix();
            let (q, _) = p.quotient(&basis)?;
            let layers = rep.loewy_layers(&q);
            if layers == *target {
                out.push(q);
                break;
            }
            let Some(i) = (1..depth).find(|&i| layers.get(i) != Some(&target[i])) else { break };
            let Some(have) = layers.get(i) else { break };
            if have.iter().zip(&target[i]).any(|(h, t)| h < t) {
                break;
            }
            let t = (0..n).find(|&t| have[t] > target[i][t]).expect("excess factor");
            let qs = rep.radical_series(&q);
            let (ri, inc) = q.submodule(&qs[i])?;
            let next = EchelonBasis::from_matrix(&qs[i + 1]);
            let maps = hom(rep.pim(t), &ri);
            let mut image = None;
            for _ in 0..32 {
                let f = maps
                    .iter()
                    .map(|m| (&inc.matrix * &m.matrix).scale(F::from_index(rng.gen_range(0..F::ORDER))))
                    .fold(Matrix::zeros(q.dim(), rep.pim(t).dim()), |a, b| &a + &b);
                let cols = f.transpose();
                if cols.row_iter().any(|r| !next.contains(r)) {
                    image = Some(cols);
                    break;
                }
            }
            let Some(image) = image else { break };
            let free = non_pivots(&basis, p.dim());
            for r in image.row_iter() {
                let mut v = vec![F::zero(); p.dim()];
                for (k, &c) in free.iter().enumerate() {
                    v[c] = r[k];
                }
                u.insert(&v);
            }
        }
    }
    Ok(out)
}


/// Shipped case files, embedded at build time.
const CASE_FILES: &[&str] = &[
    include_str!("../data/cases/a7.toml"),
    include_str!("../data/cases/psl3_4.toml"),
    include_str!("../data/cases/psu3_2.toml"),
    include_str!("../data/cases/s6.toml"),
    include_str!("../data/cases/psp4_4.toml"),
    include_str!("../data/cases/a8.toml"),
    include_str!("../data/cases/psl5_2.toml"),
    include_str!("../data/cases/psu4_4.toml"),
    include_str!("../data/cases/psu5_4.toml"),
    include_str!("../data/cases/m11.toml"),
    include_str!("../data/cases/m23.toml"),
    include_str!("../data/cases/m22_2.toml"),
    include_str!("../data/cases/hs.toml"),
    include_str!("../data/cases/hs_nonprincipal.toml"),
    include_str!("../data/cases/a4_klein.toml"),
    include_str!("../data/cases/psl2_8_local.toml"),
];

/// A block with its local data, perversity, twist and expected tables.
/// Simple labels are those of the local group; the simple `S_i` of the
/// block is the one whose complex starts with `P_i`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseRecord {
    pub id: String,
    pub group: String,
    /// Name of a shipped local group.
    pub local: String,
    /// Perversity by simple label.
    pub pi: Vec<u32>,
    /// Twist per class of order-`p` subgroups; empty means untwisted.
    #[serde(default)]
    pub eta: Vec<u32>,
    /// `+` or `-` per simple label.
    pub parity: String,
    /// Column order of the decomposition matrix (1-based labels).
    pub columns: Vec<usize>,
    /// Green correspondent recipes `C_1, C_2, ...`; `-` when not given.
    pub greens: Vec<String>,
    #[serde(default)]
    pub complex: Vec<ComplexRecord>,
    /// Decomposition matrix rows for the basic set, in column order.
    #[serde(default)]
    pub row: Vec<RowRecord>,
    /// Rows of the remaining characters, compared as a multiset.
    #[serde(default)]
    pub lower: Vec<RowRecord>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexRecord {
    /// Label of the first projective term.
    pub t: usize,
    /// Index of the Green correspondent in degree 0 (default `t`, 0 for none).
    pub green: Option<usize>,
    /// Terms in degrees `-pi(t) .. -1`, `P..` plus relatively projective
    /// labels joined by `+`.
    pub terms: Option<Vec<String>>,
    /// Relatively projective parts only, ending in degree -1.
    pub relproj: Option<Vec<String>>,
    /// Negative-degree cohomology; `,` separates summands.
    #[serde(default)]
    pub cohomology: BTreeMap<String, String>,
    /// Signed combination of characters, named by simple label.
    pub total: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowRecord {
    pub character: String,
    pub entries: Vec<i64>,
}

impl CaseRecord {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| match e.span() {
            Some(span) => {
                let before = &text[..span.start];
                let line = before.matches('\n').count() + 1;
                let column = span.start - before.rfind('\n').map_or(0, |k| k + 1) + 1;
                Error::ParseAt { line, column, message: e.message().to_string() }
            }
            None => Error::Parse(e.message().to_string()),
        })
    }

    /// Recipe of `C_g` (1-based).
    pub fn green_recipe(&self, g: usize) -> Result<Option<GreenRecipe>> {
        match self.greens.get(g.wrapping_sub(1)).map(|s| s.trim()) {
            None | Some("-") => Ok(None),
            Some(s) => s.parse().map(Some),
        }
    }

    /// Index of the Green correspondent ending the complex of label `t`.
    pub fn green_of(&self, t: usize) -> usize {
        self.complex.iter().find(|c| c.t == t).and_then(|c| c.green).unwrap_or(t)
    }

    pub fn signs(&self) -> Vec<i8> {
        self.parity.chars().map(|c| if c == '-' { -1 } else { 1 }).collect()
    }

    pub fn eta_for(&self, classes: usize) -> Vec<u32> {
        if self.eta.is_empty() {
            vec![0; classes]
        } else {
            self.eta.clone()
        }
    }

    /// Shape errors against a local group with `n` simples.
    fn shape_errors(&self, n: usize) -> Vec<String> {
        let mut out = Vec::new();
        if self.pi.len() != n {
            out.push(format!("pi has {} entries for {n} simples", self.pi.len()));
        }
        if self.parity.chars().count() != n || self.parity.chars().any(|c| c != '+' && c != '-') {
            out.push(format!("parity `{}` is not {n} signs", self.parity));
        }
        let mut cols = self.columns.clone();
        cols.sort_unstable();
        if cols != (1..=n).collect::<Vec<_>>() {
            out.push(format!("columns {:?} are not a permutation of 1..{n}", self.columns));
        }
        if self.greens.len() != n {
            out.push(format!("{} green recipes for {n} simples", self.greens.len()));
        }
        for (k, r) in self.row.iter().chain(&self.lower).enumerate() {
            if r.entries.len() > n {
                out.push(format!("row {} ({}) is too long", k + 1, r.character));
            }
        }
        for c in &self.complex {
            if c.t == 0 || c.t > n || c.green.is_some_and(|g| g > n) {
                out.push(format!("complex {} refers to a missing simple", c.t));
            }
        }
        out
    }
}

/// All shipped cases, in the order of the case list.
pub fn cases() -> Vec<CaseRecord> {
    CASE_FILES.iter().map(|t| CaseRecord::parse(t).expect("shipped case file")).collect()
}

pub fn case_ids() -> Vec<String> {
    cases().into_iter().map(|c| c.id).collect()
}

/// A shipped case by id (case-insensitive).
pub fn load_case(id: &str) -> Result<CaseRecord> {
    cases()
        .into_iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Parse(format!("unknown case `{id}` (known: {})", case_ids().join(", "))))
}

/// Run `f` over the field of the case's local group.
macro_rules! with_field {
    ($field:expr, $f:ident ( $($arg:expr),* )) => {
        match $field {
            2 => $f::<Gf2>($($arg),*),
            3 => $f::<Gf3>($($arg),*),
            p => Err(Error::Group(format!("unsupported field F_{p}"))),
        }
    };
}

fn local_field(case: &CaseRecord) -> Result<u32> {
    Ok(local_spec(&case.local)?.field)
}

/// Split a printed term `P234+M41+M42` into projective multiplicities and
/// relatively projective labels.
pub fn parse_term(labels: &[String], s: &str) -> Result<(Vec<usize>, Vec<String>)> {
    let mut proj = vec![0; labels.len()];
    let mut rel = Vec::new();
    for part in s.split('+').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some(rest) = part.strip_prefix('P') {
            let l = parse_layers(labels, rest)?;
            if l.len() != 1 {
                return Err(Error::Parse(format!("bad projective term `{part}`")));
            }
            for (p, k) in proj.iter_mut().zip(&l[0]) {
                *p += k;
            }
        } else if part.starts_with('M') {
            rel.push(part.to_string());
        } else {
            return Err(Error::Parse(format!("bad term `{part}`")));
        }
    }
    rel.sort();
    Ok((proj, rel))
}

/// Summand layer strings of a cohomology entry: `,` separates summands and
/// a single-layer summand is a sum of simples.
pub fn normalize_entry(labels: &[String], s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        let l = parse_layers(labels, part)?;
        if l.len() == 1 {
            for (i, &k) in l[0].iter().enumerate() {
                out.extend(std::iter::repeat(labels[i].clone()).take(k));
            }
        } else {
            out.push(render_layers(labels, &l));
        }
    }
    out.sort();
    Ok(out)
}

/// Parse a signed combination such as `4+1-2-3-5` into coefficients.
pub fn parse_total(labels: &[String], s: &str) -> Result<Vec<i64>> {
    let mut out = vec![0i64; labels.len()];
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let (sign, r) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ if first => (1, rest),
            _ => return Err(Error::Parse(format!("bad total `{s}`"))),
        };
        first = false;
        let digits = r.chars().take_while(|c| c.is_ascii_digit()).count();
        // coefficient and label are both digits; labels here are single
        // characters, so a multi-digit run is coefficient then label
        let (coef, r) = if digits > 1 { (r[..digits - 1].parse::<i64>().unwrap(), &r[digits - 1..]) } else { (1, r) };
        let i = (0..labels.len())
            .filter(|&i| r.starts_with(labels[i].as_str()))
            .max_by_key(|&i| labels[i].len())
            .ok_or_else(|| Error::Parse(format!("bad total `{s}`")))?;
        out[i] += sign * coef;
        rest = &r[labels[i].len()..];
    }
    Ok(out)
}

fn join_rows(rows: &[Vec<i64>]) -> String {
    rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("; ")
}

/// Layer strings of the non-projective summands of each negative-degree
/// term, as labels of the relatively projective catalogue where possible.
fn relproj_labels<F: Field>(lg: &LocalGroup<F>, y: &BoundedComplex<F>) -> BTreeMap<i32, Vec<String>> {
    let mut out = BTreeMap::new();
    for d in y.degrees().filter(|&d| d < 0) {
        let mut labels: Vec<String> = lg
            .relproj_summands(&y.term(d))
            .into_iter()
            .map(|(_, l)| lg.spec.relproj.iter().find(|r| r.layers == l).map_or(l, |r| r.label.clone()))
            .collect();
        labels.sort();
        out.insert(d, labels);
    }
    out
}

/// Full verification of a shipped case.
pub fn verify_case(id: &str, seed: u64) -> Result<Report> {
    let case = load_case(id)?;
    with_field!(local_field(&case)?, verify_in(&case, seed))
}

fn verify_in<F: Field>(case: &CaseRecord, seed: u64) -> Result<Report> {
    let mut r = Report::new(format!("{} ({})", case.id, case.group));
    let lg = LocalGroup::<F>::load(&case.local, seed)?;
    let rep = &lg.rep;
    let n = rep.num_simples();
    let labels: Vec<String> = rep.simples.labels().to_vec();
    let shape = case.shape_errors(n);
    r.check("case data", shape.is_empty(), shape.join("; "));
    if !shape.is_empty() {
        return Ok(r);
    }

    let pims: Vec<String> = (0..n).map(|i| rep.layer_string(rep.pim(i))).collect();
    r.check(format!("projectives of {}", case.local), pims == lg.spec.pims, pims.join(", "));
    let catalog = if lg.spec.relproj.is_empty() { None } else { Some(lg.relproj_catalog()?) };
    if let Some(c) = &catalog {
        let missing: Vec<&str> = c.entries.iter().filter(|e| e.module.is_none()).map(|e| e.spec.label.as_str()).collect();
        r.check(
            "relatively projective catalogue",
            c.is_complete(),
            format!("{} entries; missing {:?}; unrecorded {:?}", c.entries.len(), missing, c.unmatched),
        );
    }

    // Green correspondents
    let mut greens: Vec<Option<Module<F>>> = Vec::new();
    for g in 1..=n {
        let Some(recipe) = case.green_recipe(g)? else {
            greens.push(None);
            continue;
        };
        match realize_green(&lg, &recipe) {
            Ok(m) => {
                r.check(format!("C{g} = {recipe}"), true, format!("dim {}, layers {}", m.dim(), rep.layer_string(&m)));
                greens.push(Some(m));
            }
            Err(e) => {
                r.check(format!("C{g} = {recipe}"), false, e.to_string());
                greens.push(None);
            }
        }
    }

    let eta = case.eta_for(lg.q_classes.len());
    let spec = if eta.iter().all(|&e| e == 0) { TwistSpec::untwisted(&lg) } else { TwistSpec::new(&lg, &eta, &[])? };
    let pi = Perversity(case.pi.clone());
    let xs = perverse_complexes(rep, &pi)?;
    let sound = xs.iter().all(|x| x.squares_to_zero() && euler_identity_holds(rep, x));
    r.check("complexes: d^2 = 0 and Euler identity", sound, "");

    let mut ys: Vec<Option<BoundedComplex<F>>> = Vec::new();
    for g in &greens {
        ys.push(match g {
            Some(m) => Some(twisted_image(&lg, &spec, m)?),
            None => None,
        });
    }

    // degree-0 matching
    let mut matched = 0;
    for t in 1..=n {
        let g = case.green_of(t);
        let Some(y) = ys.get(g.wrapping_sub(1)).and_then(|y| y.as_ref()) else { continue };
        let x = &xs[t - 1];
        let core = rep.core(x.terms().last().unwrap());
        let so = stable_object(rep, y);
        let ok = core.dim() == so.dim() && is_isomorphic(&core, &so, seed);
        matched += usize::from(ok);
        r.check(
            format!("degree 0 of X{t} ~ image of C{g}"),
            ok,
            format!("{} vs {}", module_summary(rep, &core), module_summary(rep, &so)),
        );
    }
    let _ = matched;

    // printed terms and relatively projective parts
    for c in &case.complex {
        let t = c.t;
        let g = case.green_of(t);
        let x = &xs[t - 1];
        let printed: Option<Vec<(Vec<usize>, Vec<String>)>> = match (&c.terms, &c.relproj) {
            (Some(ts), _) => Some(ts.iter().map(|s| parse_term(&labels, s)).collect::<Result<_>>()?),
            (None, Some(rs)) => Some(
                rs.iter()
                    .map(|s| parse_term(&labels, s).map(|(_, m)| (vec![0; n], m)))
                    .collect::<Result<_>>()?,
            ),
            _ => None,
        };
        let Some(printed) = printed else { continue };
        let len = printed.len() as i32;
        if let Some(y) = ys.get(g.wrapping_sub(1)).and_then(|y| y.as_ref()) {
            let got = relproj_labels(&lg, y);
            let mut bad = Vec::new();
            for d in (-len.max(-y.lo())..0).rev() {
                let want = printed.get((d + len) as usize).map(|p| p.1.clone()).unwrap_or_default();
                let have = got.get(&d).cloned().unwrap_or_default();
                if want != have {
                    bad.push(format!("H{d}: want {want:?}, got {have:?}"));
                }
            }
            r.check(format!("relatively projective terms of X{t}"), bad.is_empty(), bad.join("; "));
        }
        if c.terms.is_none() {
            continue;
        }
        let shape_ok = len == case.pi[t - 1] as i32;
        let first_m = printed.iter().position(|p| !p.1.is_empty());
        let mut bad = Vec::new();
        if !shape_ok {
            bad.push(format!("{} printed terms for pi = {}", len, case.pi[t - 1]));
        } else {
            for (k, (proj, rel)) in printed.iter().enumerate() {
                let d = k as i32 - len;
                let (core, have) = rep.strip_projectives(&x.term(d));
                if !core.is_empty() {
                    bad.push(format!("degree {d} is not projective"));
                    continue;
                }
                let mut want = proj.clone();
                if Some(k) == first_m {
                    for l in rel {
                        let m = catalog.as_ref().and_then(|c| c.get(l)).ok_or_else(|| {
                            Error::Case { case: case.id.clone(), message: format!("unknown module {l}") }
                        })?;
                        for i in rep.injective_hull(m).2 {
                            want[i] += 1;
                        }
                    }
                }
                let ok = match first_m {
                    Some(f) if k > f => have.iter().zip(&want).all(|(h, w)| h >= w),
                    _ => have == want,
                };
                if !ok {
                    bad.push(format!("degree {d}: printed {}, computed {}", c.terms.as_ref().unwrap()[k], module_summary(rep, &x.term(d))));
                }
            }
        }
        r.check(format!("projective terms of X{t}"), bad.is_empty(), bad.join("; "));
    }

    // cohomology
    let order: Vec<usize> = case.columns.iter().map(|&c| c - 1).collect();
    let k0 = k0_report(rep, &xs, &pi, Some(&order));
    for c in &case.complex {
        let t = c.t;
        let x = &xs[t - 1];
        if !c.cohomology.is_empty() {
            let mut want: BTreeMap<i32, Vec<String>> = BTreeMap::new();
            for (d, e) in &c.cohomology {
                let d: i32 = d.parse().map_err(|_| Error::Parse(format!("bad degree `{d}`")))?;
                want.insert(d, normalize_entry(&labels, e)?);
            }
            let have: BTreeMap<i32, Vec<String>> = x
                .cohomology_all()
                .into_iter()
                .filter(|(d, m)| *d < 0 && m.dim() > 0)
                .map(|(d, m)| (d, summand_layers(rep, &m)))
                .collect();
            let mut bad = Vec::new();
            for d in want.keys().chain(have.keys()).collect::<std::collections::BTreeSet<_>>() {
                let (w, h) = (want.get(d), have.get(d));
                if w != h {
                    bad.push(format!("H{d}: want {}, got {}", w.map_or("0".into(), |v| v.join(",")), h.map_or("0".into(), |v| v.join(","))));
                }
            }
            r.check(format!("cohomology of X{t}"), bad.is_empty(), bad.join("; "));
        }
        if let Some(total) = &c.total {
            let want = parse_total(&labels, total)?;
            let ok = want == k0.m[t - 1];
            r.check(format!("total of X{t} = {total}"), ok, k0.total(t - 1, &labels));
        }
    }

    // decomposition matrix
    if !case.row.is_empty() {
        match &k0.decomposition {
            None => r.check("decomposition matrix", false, "a is not invertible over Z"),
            Some(d) => {
                let mut bad = Vec::new();
                for (k, row) in case.row.iter().enumerate() {
                    let mut want = row.entries.clone();
                    want.resize(n, 0);
                    let have: Vec<i64> = order.iter().map(|&c| d[order[k]][c]).collect();
                    if want != have {
                        bad.push(format!("{}: want {want:?}, got {have:?}", row.character));
                    }
                }
                r.check("decomposition matrix", bad.is_empty() && case.row.len() == n, bad.join("; "));
            }
        }
        r.check("unitriangular in column order", k0.unitriangular, "");
    }
    if !case.lower.is_empty() {
        let rows = lg.clifford_rows()?;
        match transport_rows(&k0.a, &rows) {
            None => r.check("remaining characters", false, "rows do not transport to non-negative rows"),
            Some(t) => {
                let mut have: Vec<Vec<i64>> = t.iter().map(|row| order.iter().map(|&c| row[c]).collect()).collect();
                let mut want: Vec<Vec<i64>> = case
                    .lower
                    .iter()
                    .map(|l| {
                        let mut e = l.entries.clone();
                        e.resize(n, 0);
                        e
                    })
                    .collect();
                have.sort();
                want.sort();
                r.check("remaining characters", have == want, format!("computed {}", join_rows(&have)));
            }
        }
    }
    match parity_check(&pi, &case.signs()) {
        Ok(()) => r.check("parity", true, case.parity.clone()),
        Err(i) => r.check("parity", false, format!("mismatch at T{}", i + 1)),
    }

    // tables
    let mut tc = Table { title: "complexes".into(), header: vec!["X".into(), "pi".into(), "terms".into(), "cohomology".into(), "total".into()], rows: Vec::new() };
    for &t in &order {
        let x = &xs[t];
        if x.lo() == 0 {
            continue;
        }
        let terms = term_summary(rep, x);
        let coh: Vec<String> = x
            .cohomology_all()
            .into_iter()
            .filter(|(d, m)| *d < 0 && m.dim() > 0)
            .map(|(d, m)| format!("H{d}={}", summand_layers(rep, &m).join(",")))
            .collect();
        tc.rows.push(vec![labels[t].clone(), case.pi[t].to_string(), terms.join(" -> "), coh.join(" "), k0.total(t, &labels)]);
    }
    r.tables.push(tc);
    if let Some(d) = &k0.decomposition {
        let mut header = vec!["pi".to_string(), "character".to_string()];
        header.extend(order.iter().map(|&c| format!("S{}", labels[c])));
        let mut td = Table { title: "decomposition matrix".into(), header, rows: Vec::new() };
        for (k, &t) in order.iter().enumerate() {
            let name = case.row.get(k).map_or_else(|| format!("chi{}", labels[t]), |r| r.character.clone());
            let mut row = vec![case.pi[t].to_string(), name];
            row.extend(order.iter().map(|&c| if d[t][c] == 0 { ".".into() } else { d[t][c].to_string() }));
            td.rows.push(row);
        }
        r.tables.push(td);
    }
    Ok(r)
}

/// Perversities up to `bound` whose degree-0 terms match the stable images
/// of the case's Green correspondents.
pub fn search_case(id: &str, bound: u32, use_parity: bool, seed: u64) -> Result<Report> {
    let case = load_case(id)?;
    with_field!(local_field(&case)?, search_in(&case, bound, use_parity, seed))
}

fn search_in<F: Field>(case: &CaseRecord, bound: u32, use_parity: bool, seed: u64) -> Result<Report> {
    let lg = LocalGroup::<F>::load(&case.local, seed)?;
    let rep = &lg.rep;
    let n = rep.num_simples();
    let eta = case.eta_for(lg.q_classes.len());
    let spec = if eta.iter().all(|&e| e == 0) { TwistSpec::untwisted(&lg) } else { TwistSpec::new(&lg, &eta, &[])? };
    let mut targets = Vec::new();
    for g in 1..=n {
        let recipe = case
            .green_recipe(g)?
            .ok_or_else(|| Error::Case { case: case.id.clone(), message: format!("C{g} is not given") })?;
        let m = realize_green(&lg, &recipe)?;
        targets.push(stable_object(rep, &twisted_image(&lg, &spec, &m)?));
    }
    let signs = case.signs();
    let found = pi_search(rep, &targets, bound, use_parity.then_some(&signs[..]), &[])?;
    let mut r = Report::new(format!("search {} (bound {bound}{})", case.id, if use_parity { ", parity" } else { "" }));
    let expected = Perversity(case.pi.clone());
    let within = case.pi.iter().all(|&v| v <= bound);
    if within {
        r.check(format!("({}) found", csv(&case.pi)), found.contains(&expected), format!("{} solutions", found.len()));
    }
    r.tables.push(Table {
        title: "solutions".into(),
        header: vec!["pi".into()],
        rows: found.iter().map(|p| vec![csv(&p.0)]).collect(),
    });
    Ok(r)
}

fn csv(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// What `show` prints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShowWhat {
    Simples,
    Projectives,
    Relproj,
    Green,
}

impl FromStr for ShowWhat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simples" => Ok(ShowWhat::Simples),
            "projectives" => Ok(ShowWhat::Projectives),
            "relproj" => Ok(ShowWhat::Relproj),
            "green" => Ok(ShowWhat::Green),
            _ => Err(Error::Parse(format!("unknown item `{s}` (simples, projectives, relproj, green)"))),
        }
    }
}

pub fn show_case(id: &str, what: ShowWhat, seed: u64) -> Result<Report> {
    let case = load_case(id)?;
    with_field!(local_field(&case)?, show_in(&case, what, seed))
}

fn show_in<F: Field>(case: &CaseRecord, what: ShowWhat, seed: u64) -> Result<Report> {
    let lg = LocalGroup::<F>::load(&case.local, seed)?;
    let rep = &lg.rep;
    let n = rep.num_simples();
    let mut r = Report::new(format!("{} ({}, local {} over F_{})", case.id, case.group, case.local, lg.spec.field));
    let table = match what {
        ShowWhat::Simples => Table {
            title: "simples".into(),
            header: vec!["T".into(), "dim".into(), "End degree".into(), "pi".into()],
            rows: (0..n)
                .map(|i| vec![rep.label(i).into(), rep.simple(i).dim().to_string(), rep.end_degree(i).to_string(), case.pi[i].to_string()])
                .collect(),
        },
        ShowWhat::Projectives => Table {
            title: "projective indecomposables".into(),
            header: vec!["P".into(), "dim".into(), "layers".into()],
            rows: (0..n).map(|i| vec![rep.label(i).into(), rep.pim(i).dim().to_string(), rep.layer_string(rep.pim(i))]).collect(),
        },
        ShowWhat::Relproj => {
            let mut rows = Vec::new();
            if !lg.spec.relproj.is_empty() {
                let cat = lg.relproj_catalog()?;
                for e in &cat.entries {
                    let src = match e.spec.source {
                        Source::Trivial => "trivial",
                        Source::Uniserial2 => "uniserial2",
                    };
                    let found = e.module.as_ref().map_or("missing".to_string(), |m| format!("dim {}", m.dim()));
                    rows.push(vec![e.spec.label.clone(), format!("Q{}", e.spec.class), src.into(), e.spec.layers.clone(), found]);
                }
            }
            Table { title: "relatively projective modules".into(), header: vec!["M".into(), "class".into(), "source".into(), "layers".into(), "found".into()], rows }
        }
        ShowWhat::Green => {
            let mut rows = Vec::new();
            for g in 1..=n {
                let Some(recipe) = case.green_recipe(g)? else {
                    rows.push(vec![format!("C{g}"), "-".into(), "".into(), "".into()]);
                    continue;
                };
                let m = realize_green(&lg, &recipe)?;
                rows.push(vec![format!("C{g}"), recipe.to_string(), m.dim().to_string(), rep.layer_string(&m)]);
            }
            Table { title: "Green correspondents".into(), header: vec!["C".into(), "recipe".into(), "dim".into(), "radical layers".into()], rows }
        }
    };
    r.tables.push(table);
    Ok(r)
}

/// The algorithm on a user-supplied local group: complexes, cohomology and
/// the `K_0` report; with `eta`, also the twisted images of the degree-0
/// cores.
pub fn run_adhoc(group_text: &str, pi: &str, eta: Option<&str>, seed: u64) -> Result<Report> {
    let group = parse_group_file(group_text)?;
    let p = group.semidirect_data().map(|s| s.p).unwrap_or(0);
    with_field!(p, run_in(group, pi, eta, seed))
}

fn run_in<F: Field>(group: FiniteGroup, pi: &str, eta: Option<&str>, seed: u64) -> Result<Report> {
    let lg = LocalGroup::<F>::from_group(group, seed)?;
    let rep = &lg.rep;
    let n = rep.num_simples();
    let pi = Perversity::parse(pi)?;
    if pi.len() != n {
        return Err(Error::Perversity(format!("{} values for {n} simples", pi.len())));
    }
    let labels: Vec<String> = rep.simples.labels().to_vec();
    let xs = perverse_complexes(rep, &pi)?;
    let mut r = Report::new(format!("{} over F_{}, pi = ({})", lg.spec.name, lg.spec.field, csv(&pi.0)));
    let mut ts = Table { title: "simples".into(), header: vec!["T".into(), "dim".into(), "projective".into()], rows: Vec::new() };
    for i in 0..n {
        ts.rows.push(vec![labels[i].clone(), rep.simple(i).dim().to_string(), rep.layer_string(rep.pim(i))]);
    }
    r.tables.push(ts);
    let spec = match eta {
        Some(e) => {
            let eta: Vec<u32> = Perversity::parse(e)?.0;
            Some(TwistSpec::new(&lg, &eta, &[])?)
        }
        None => None,
    };
    let k0 = k0_report(rep, &xs, &pi, None);
    let mut header = vec!["X".into(), "terms".into(), "degree 0".into(), "cohomology".into(), "total".into()];
    if spec.is_some() {
        header.push("twisted image of degree 0".into());
    }
    let mut tc = Table { title: "complexes".into(), header, rows: Vec::new() };
    for (t, x) in xs.iter().enumerate() {
        let terms = term_summary(rep, x);
        let coh: Vec<String> = x
            .cohomology_all()
            .into_iter()
            .filter(|(_, m)| m.dim() > 0)
            .map(|(d, m)| format!("H{d}={}", summand_layers(rep, &m).join(",")))
            .collect();
        let mut row = vec![labels[t].clone(), terms[..terms.len() - 1].join(" -> "), terms[terms.len() - 1].clone(), coh.join(" "), k0.total(t, &labels)];
        if let Some(spec) = &spec {
            let y = twisted_image(&lg, spec, &rep.core(x.terms().last().unwrap()))?;
            row.push(term_summary(rep, &y).join(" -> "));
        }
        tc.rows.push(row);
    }
    r.tables.push(tc);
    r.check("d^2 = 0 and Euler identity", xs.iter().all(|x| x.squares_to_zero() && euler_identity_holds(rep, x)), "");
    r.check("unitriangular in increasing perversity", k0.unitriangular, "");
    if let Some(d) = &k0.decomposition {
        let mut header = vec!["pi".to_string(), "character".to_string()];
        header.extend(k0.order.iter().map(|&c| format!("S{}", labels[c])));
        let rows = k0
            .order
            .iter()
            .map(|&t| {
                let mut row = vec![pi.0[t].to_string(), format!("chi{}", labels[t])];
                row.extend(k0.order.iter().map(|&c| if d[t][c] == 0 { ".".into() } else { d[t][c].to_string() }));
                row
            })
            .collect();
        r.tables.push(Table { title: "predicted decomposition matrix".into(), header, rows });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf3;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn shipped_cases_are_well_formed() {
        let all = cases();
        assert_eq!(all.len(), 16);
        for c in &all {
            let n = local_spec(&c.local).unwrap().pims.len();
            assert_eq!(c.shape_errors(n), Vec::<String>::new(), "{}", c.id);
            for g in 1..=n {
                c.green_recipe(g).unwrap();
            }
        }
        assert_eq!(load_case("m11").unwrap().id, "M11");
        assert!(load_case("M12").is_err());
    }

    #[test]
    fn bad_case_file_reports_position() {
        let text = "id = \"X\"\ngroup = \"X\"\nlocal = \"C4\"\npi = [0, 1, 0]\nparity = 3\n";
        match CaseRecord::parse(text) {
            Err(Error::ParseAt { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn totals_parse() {
        let l = labels(5);
        assert_eq!(parse_total(&l, "4+1-2-3-5").unwrap(), vec![1, -1, -1, 1, -1]);
        assert_eq!(parse_total(&l, "5").unwrap(), vec![0, 0, 0, 0, 1]);
        assert_eq!(parse_total(&l, "-21+2-3").unwrap(), vec![-2, 1, -1, 0, 0]);
        assert!(parse_total(&l, "4x").is_err());
    }

    #[test]
    fn entries_normalize() {
        let l = labels(5);
        assert_eq!(normalize_entry(&l, "11").unwrap(), vec!["1", "1"]);
        assert_eq!(normalize_entry(&l, "1,1/5").unwrap(), vec!["1", "1/5"]);
        assert_eq!(normalize_entry(&l, "23/5/4").unwrap(), vec!["23/5/4"]);
    }

    #[test]
    fn terms_parse() {
        let l = labels(5);
        let (p, m) = parse_term(&l, "P455+M11+M12").unwrap();
        assert_eq!(p, vec![0, 0, 0, 1, 2]);
        assert_eq!(m, vec!["M11", "M12"]);
        assert!(parse_term(&l, "Q1").is_err());
    }

    #[test]
    fn recipes_round_trip() {
        for s in ["1", "5/12/5", "omega:2/3/2", "omega_inv:omega:1", "ind:Q2:uniserial2:135/6677/123455/67", "soc:2/67/45/6"] {
            let r: GreenRecipe = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("ind:Q1:cube:1".parse::<GreenRecipe>().is_err());
    }

    #[test]
    fn uniserial_quotient_in_c4() {
        let g = LocalGroup::<Gf3>::load("C4", 0).unwrap();
        let c2 = realize_green(&g, &"2/3/2".parse().unwrap()).unwrap();
        assert_eq!(g.rep.layer_string(&c2), "2/3/2");
        assert_eq!(g.rep.layer_string(&g.rep.omega(&c2)), "11/3/2");
    }

    #[test]
    fn green_correspondents_with_several_heads() {
        let g = LocalGroup::<Gf3>::load("Q8", 0).unwrap();
        let c5 = realize_green(&g, &"234/55/234".parse().unwrap()).unwrap();
        assert_eq!(c5.dim(), 10);
        let d8 = LocalGroup::<Gf3>::load("D8", 0).unwrap();
        let c2 = realize_green(&d8, &"3/5/3".parse().unwrap()).unwrap();
        assert_eq!(d8.rep.layer_string(&c2), "3/5/3");
    }

    #[test]
    fn socle_recipe_in_sd16() {
        let g = LocalGroup::<Gf3>::load("SD16", 0).unwrap();
        let m = realize_green(&g, &"soc:2/67/45/6".parse().unwrap()).unwrap();
        assert_eq!(g.rep.render_layers(&g.rep.socle_layers(&m)), "2/67/45/6");
        assert_eq!(m.dim(), 10);
    }

    #[test]
    fn impossible_layers_are_reported() {
        let g = LocalGroup::<Gf3>::load("D8", 0).unwrap();
        assert!(realize_green(&g, &"2/5/3".parse().unwrap()).is_err());
    }

    #[test]
    fn induced_summand_matches_catalog() {
        let g = LocalGroup::<Gf3>::load("D8", 0).unwrap();
        let m = realize_green(&g, &"ind:Q1:trivial:5/12/5".parse().unwrap()).unwrap();
        assert_eq!(g.rep.layer_string(&m), "5/12/5");
    }
}
