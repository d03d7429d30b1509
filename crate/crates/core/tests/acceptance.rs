//! Acceptance suite: one line per criterion, then a single assertion.

mod common;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use perverx::casebook::{case_ids, search_case, verify_case};
use perverx::decompose::is_isomorphic;
use perverx::local::LocalGroup;
use perverx::matrix::EchelonBasis;
use perverx::perverse::{perverse_complexes, Perversity};
use perverx::report::Report;
use perverx::{Field, Gf3, Matrix, Module};

const SEED: u64 = 0;

struct Line {
    pass: bool,
    text: String,
}

fn line(n: usize, pass: bool, text: String) -> Line {
    // straight to stderr so the line shows without --nocapture
    let _ = writeln!(std::io::stderr(), "criterion {n}: {} {}", if pass { "PASS" } else { "FAIL" }, text.trim_end());
    Line { pass, text }
}

fn ms(d: Duration) -> String {
    format!("{:.0} ms", d.as_secs_f64() * 1000.0)
}

/// Simple dimensions with their endomorphism degrees, sorted.
const SIMPLES: &[(&str, &[(usize, usize)])] = &[
    ("C4", &[(1, 1), (1, 1), (2, 2)]),
    ("Q8", &[(1, 1), (1, 1), (1, 1), (1, 1), (2, 1)]),
    ("D8", &[(1, 1), (1, 1), (1, 1), (1, 1), (2, 1)]),
    ("SD16", &[(1, 1), (1, 1), (1, 1), (1, 1), (2, 1), (2, 1), (2, 1)]),
];

fn criterion_1() -> Line {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for &(name, want) in SIMPLES {
        let t = Instant::now();
        let lg = LocalGroup::<Gf3>::load(name, SEED).unwrap();
        let mut have: Vec<(usize, usize)> =
            (0..lg.rep.num_simples()).map(|i| (lg.rep.simple(i).dim(), lg.rep.end_degree(i))).collect();
        have.sort_unstable();
        let el = t.elapsed();
        slowest = slowest.max(el);
        if have != want || el > Duration::from_secs(1) {
            bad.push(format!("{name}: {have:?} in {}", ms(el)));
        }
    }
    line(1, bad.is_empty(), format!("simples of C4, Q8, D8, SD16 exact, < 1 s each (slowest {}) {}", ms(slowest), bad.join("; ")))
}

/// Printed projective indecomposables, by simple label.
const PIMS: &[(&str, &[&str])] = &[
    ("C4", &["1/3/122/3/1", "2/3/112/3/2", "3/1122/333/1122/3"]),
    ("Q8", &["1/5/234/5/1", "2/5/134/5/2", "3/5/124/5/3", "4/5/123/5/4", "5/1234/555/1234/5"]),
    ("D8", &["1/5/123/5/1", "2/5/124/5/2", "3/5/134/5/3", "4/5/234/5/4", "5/1234/555/1234/5"]),
    (
        "SD16",
        &["1/7/35/6/1", "2/7/45/6/2", "3/6/15/7/3", "4/6/25/7/4", "5/67/12345/67/5", "6/125/677/345/6", "7/345/667/125/7"],
    ),
];

fn criterion_2() -> Line {
    let mut bad = Vec::new();
    let mut count = 0;
    for &(name, want) in PIMS {
        let lg = LocalGroup::<Gf3>::load(name, SEED).unwrap();
        for (i, w) in want.iter().enumerate() {
            count += 1;
            let have = lg.rep.layer_string(lg.rep.pim(i));
            if have != *w {
                bad.push(format!("{name} P{}: {have} vs {w}", i + 1));
            }
        }
    }
    line(2, bad.is_empty(), format!("{count} projective displays exact {}", bad.join("; ")))
}

/// Printed relatively projective modules.
const RELPROJ: &[(&str, &[(&str, &str)])] = &[
    (
        "D8",
        &[
            ("M11", "5/12/5"),
            ("M21", "5/34/5"),
            ("M31", "12/5/12"),
            ("M41", "34/5/34"),
            ("M12", "5/13/5"),
            ("M22", "5/24/5"),
            ("M32", "13/5/13"),
            ("M42", "24/5/24"),
        ],
    ),
    (
        "SD16",
        &[
            ("M11", "135/67/135"),
            ("M21", "245/67/245"),
            ("M31", "67/135/67"),
            ("M41", "67/245/67"),
            ("M12", "135/6677/123455/67"),
            ("M22", "245/6677/123455/67"),
            ("M32", "67/123455/6677/135"),
            ("M42", "67/123455/6677/245"),
        ],
    ),
];

fn criterion_3() -> Line {
    let mut bad = Vec::new();
    let mut count = 0;
    for &(name, want) in RELPROJ {
        let lg = LocalGroup::<Gf3>::load(name, SEED).unwrap();
        let cat = lg.relproj_catalog().unwrap();
        if !cat.unmatched.is_empty() {
            bad.push(format!("{name}: unrecorded summands {:?}", cat.unmatched));
        }
        for &(label, layers) in want {
            count += 1;
            match cat.get(label) {
                Some(m) if lg.rep.layer_string(m) == layers => {}
                Some(m) => bad.push(format!("{name} {label}: {}", lg.rep.layer_string(m))),
                None => bad.push(format!("{name} {label} missing")),
            }
        }
    }
    line(3, bad.is_empty(), format!("{count} relatively projective displays exact {}", bad.join("; ")))
}

fn is_matrix_check(name: &str) -> bool {
    name.starts_with("decomposition matrix")
        || name.starts_with("unitriangular")
        || name.starts_with("remaining characters")
        || name.starts_with("parity")
}

fn criteria_4_5(reports: &[(String, Report)], elapsed: Duration) -> (Line, Line) {
    let mut bad4 = Vec::new();
    let mut bad5 = Vec::new();
    let (mut n4, mut n5, mut coh) = (0, 0, 0);
    for (id, r) in reports {
        for c in &r.checks {
            if c.name.starts_with("cohomology of") {
                coh += 1;
            }
            let (n, bad) = if is_matrix_check(&c.name) { (&mut n5, &mut bad5) } else { (&mut n4, &mut bad4) };
            *n += 1;
            if !c.pass {
                bad.push(format!("{id}: {} ({})", c.name, c.detail));
            }
        }
    }
    let fast = elapsed < Duration::from_secs(60);
    let l4 = line(
        4,
        bad4.is_empty() && fast,
        format!(
            "{} cases, {n4} matching/term/cohomology checks ({coh} cohomology tables) exact; suite {} < 60 s {}",
            reports.len(),
            ms(elapsed),
            bad4.join("; ")
        ),
    );
    let l5 = line(5, bad5.is_empty(), format!("{n5} decomposition, unitriangularity and parity checks exact {}", bad5.join("; ")));
    (l4, l5)
}

fn criterion_6() -> Line {
    let mut bad = Vec::new();
    let mut times = Vec::new();
    for id in ["A7", "M23"] {
        let t = Instant::now();
        let r = search_case(id, 2, false, SEED).unwrap();
        let el = t.elapsed();
        times.push(format!("{id} {}", ms(el)));
        if !r.passed() || el > Duration::from_secs(30) {
            bad.push(format!("{id}: {}", r.failures().iter().map(|c| c.detail.clone()).collect::<Vec<_>>().join(",")));
        }
    }
    line(6, bad.is_empty(), format!("recorded perversity found with bound 2, < 30 s each ({}) {}", times.join(", "), bad.join("; ")))
}

fn criterion_7() -> Line {
    let mut bad = Vec::new();
    let mut checks = 0;
    for &(name, field) in common::ALGEBRAS {
        match common::all_properties_for(name, field, 100) {
            Ok(n) => checks += n,
            Err(e) => bad.push(e),
        }
    }
    line(7, bad.is_empty(), format!("{checks} property checks on 100 random modules per algebra, 0 failures {}", bad.join("; ")))
}

/// All invariant subspaces of `m`, by brute force over every subspace
/// spanned by at most two vectors (enough for dimension 3).
fn submodules<F: Field>(m: &Module<F>) -> Vec<Matrix<F>> {
    let n = m.dim();
    let vectors: Vec<Vec<F>> = (1..F::ORDER.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let c = F::from_index(k % F::ORDER);
                    k /= F::ORDER;
                    c
                })
                .collect()
        })
        .collect();
    let mut spaces: BTreeMap<String, Matrix<F>> = BTreeMap::new();
    spaces.insert("0".into(), Matrix::zeros(0, n));
    for v in &vectors {
        for w in &vectors {
            let s = Matrix::from_rows(n, &[v.as_slice(), w.as_slice()]).row_space();
            spaces.entry(format!("{s:?}")).or_insert(s);
        }
    }
    let mut subs: Vec<Matrix<F>> = spaces.into_values().filter(|s| m.is_invariant(s)).collect();
    subs.push(Matrix::identity(n));
    subs.sort_by_key(|s| s.rows());
    subs
}

/// Scalar by which generator `g` acts on the one-dimensional `top/bottom`.
fn scalar<F: Field>(m: &Module<F>, g: usize, top: &Matrix<F>, bottom: &Matrix<F>) -> Option<F> {
    let b = EchelonBasis::from_matrix(bottom);
    let r = top.row_iter().find(|r| !b.contains(r))?;
    let gr = m.gens()[g].transpose().vec_mul(r);
    (0..F::ORDER).map(F::from_index).find(|&l| {
        let d: Vec<F> = gr.iter().zip(r).map(|(&x, &y)| x - l * y).collect();
        b.contains(&d)
    })
}

fn criterion_8() -> Line {
    let lg = LocalGroup::<Gf3>::load("S3", SEED).unwrap();
    let rep = &lg.rep;
    let p2 = rep.pim(1);
    let subs = submodules(p2);
    let dims: Vec<usize> = subs.iter().map(|s| s.rows()).collect();
    let mut bad = Vec::new();
    if dims != [0, 1, 2, 3] {
        bad.push(format!("P2 submodule dimensions {dims:?}"));
        return line(8, false, bad.join("; "));
    }
    // simple label of each one-dimensional layer of the uniserial P2
    let trivial = |top: &Matrix<Gf3>, bottom: &Matrix<Gf3>| {
        (0..p2.gens().len()).all(|g| scalar(p2, g, top, bottom) == Some(Gf3::from_index(1)))
    };
    let label = |top: &Matrix<Gf3>, bottom: &Matrix<Gf3>| if trivial(top, bottom) { 0 } else { 1 };
    let (soc, rad, head) = (label(&subs[1], &subs[0]), label(&subs[2], &subs[1]), label(&subs[3], &subs[2]));
    let unit = |i: usize| {
        let mut v = vec![0usize; 2];
        v[i] += 1;
        v
    };
    let add = |a: Vec<usize>, b: Vec<usize>| a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>();
    for n in 1..=3u32 {
        let x = &perverse_complexes(rep, &Perversity(vec![0, n])).unwrap()[1];
        let n = n as i32;
        if x.lo() != -n {
            bad.push(format!("n = {n}: starts in degree {}", x.lo()));
            continue;
        }
        for d in -n..0 {
            if !is_isomorphic(&x.term(d), p2, SEED) {
                bad.push(format!("n = {n}: degree {d} is not P2"));
            }
        }
        let core = rep.core(&x.term(0));
        if rep.composition(&core) != unit(head) {
            bad.push(format!("n = {n}: degree 0 is not the head of P2"));
        }
        for d in -n..=0 {
            let want = match -d {
                j if j == n => add(unit(rad), unit(soc)),
                0 => vec![0, 0],
                _ => unit(rad),
            };
            let have = rep.composition(&x.cohomology(d));
            if have != want {
                bad.push(format!("n = {n}: H^{d} {have:?} vs {want:?}"));
            }
            if d > -n && have[1] != 0 {
                bad.push(format!("n = {n}: H^{d} is not S1-isotypic"));
            }
        }
    }
    line(8, bad.is_empty(), format!("kS3, pi = (0, n), n = 1..3 matches the submodule lattice of P2 {}", bad.join("; ")))
}

#[test]
fn acceptance() {
    let mut lines = vec![criterion_1(), criterion_2(), criterion_3()];
    let t = Instant::now();
    let reports: Vec<(String, Report)> = case_ids().into_iter().map(|id| {
        let r = verify_case(&id, SEED).unwrap();
        (id, r)
    }).collect();
    let (l4, l5) = criteria_4_5(&reports, t.elapsed());
    lines.extend([l4, l5, criterion_6(), criterion_7(), criterion_8()]);
    let failed: Vec<String> = lines.iter().enumerate().filter(|(_, l)| !l.pass).map(|(i, l)| format!("{}: {}", i + 1, l.text)).collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
