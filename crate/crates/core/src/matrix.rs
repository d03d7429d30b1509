//! Dense matrices over a [`Field`].
//!
//! Storage is row-major with one byte-sized element per entry. Subspaces are
//! carried as matrices whose rows form a basis; [`Matrix::row_space`] puts
//! such a basis into reduced row echelon form, which is the canonical form
//! used throughout the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// `y += a * x` on equal-length slices.
#[inline]
pub fn axpy<F: Field>(y: &mut [F], a: F, x: &[F]) {
    if a.is_zero_elem() {
        return;
    }
    if a == F::one() {
        for (u, &v) in y.iter_mut().zip(x) {
            *u += v;
        }
    } else {
        for (u, &v) in y.iter_mut().zip(x) {
            *u += a * v;
        }
    }
}

#[inline]
pub fn scale_slice<F: Field>(y: &mut [F], a: F) {
    for u in y.iter_mut() {
        *u *= a;
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn scalar(n: usize, a: F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = a;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows<R: AsRef<[F]>>(cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Build from small integers reduced into the prime field.
    pub fn from_ints(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Matrix { rows, cols, data: vals.iter().map(|&v| F::from_int(v)).collect() }
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| F::from_index(rng.gen_range(0..F::ORDER))).collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[F]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn push_row(&mut self, r: &[F]) {
        assert_eq!(r.len(), self.cols, "row length mismatch");
        self.data.extend_from_slice(r);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn scale(&self, a: F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| a * x).collect() }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let n = rhs.cols;
        let mut out = Self::zeros(self.rows, n);
        for i in 0..self.rows {
            let (a_row, o_row) = (self.row(i), &mut out.data[i * n..(i + 1) * n]);
            for (k, &a) in a_row.iter().enumerate() {
                axpy(o_row, a, &rhs.data[k * n..(k + 1) * n]);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        self.row_iter()
            .map(|r| r.iter().zip(v).fold(F::zero(), |s, (&a, &b)| s + a * b))
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![F::zero(); self.cols];
        for (i, &a) in v.iter().enumerate() {
            axpy(&mut out, a, self.row(i));
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Matrix { rows: self.rows, cols, data }
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, rhs: &Self) -> Self {
        let mut m = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, rhs);
        m
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            m.row_mut(i).copy_from_slice(&self.row(r0 + i)[c0..c0 + cols]);
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            let c = self.cols;
            self.data[(r0 + i) * c + c0..(r0 + i) * c + c0 + b.cols].copy_from_slice(b.row(i));
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        m
    }

    pub fn kronecker(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut m = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero_elem() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        m.data[(i * rhs.rows + k) * c + j * rhs.cols + l] = a * rhs.get(k, l);
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero_elem()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            scale_slice(self.row_mut(r), inv);
            let pivot_row: Vec<F> = self.row(r)[c..].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if !f.is_zero_elem() {
                    axpy(&mut self.row_mut(i)[c..], -f, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of the row space: the nonzero rows of the RREF.
    pub fn row_space(&self) -> Self {
        let r = self.rref();
        let mut m = r.matrix;
        m.data.truncate(r.rank * m.cols);
        m.rows = r.rank;
        m
    }

    /// Basis (as rows, in RREF) of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Self {
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut basis = Self::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, F::one());
            for (i, &p) in r.pivots.iter().enumerate() {
                basis.set(k, p, -r.matrix.get(i, f));
            }
        }
        basis.row_space()
    }

    /// Basis (as rows) of `{v : v * self = 0}`.
    pub fn left_nullspace(&self) -> Self {
        self.transpose().nullspace()
    }

    /// Some `X` with `self * X = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = self.hstack(b);
        let r = aug.rref();
        if r.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (i, &p) in r.pivots.iter().enumerate() {
            x.row_mut(p).copy_from_slice(&r.matrix.row(i)[self.cols..]);
        }
        Some(x)
    }

    /// Some `X` with `X * self = b`.
    pub fn solve_left(&self, b: &Self) -> Option<Self> {
        self.transpose().solve(&b.transpose()).map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let r = self.hstack(&Self::identity(n)).rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.matrix.block(0, n, n, n))
    }

    /// Whether `v` lies in the row space of `self`.
    pub fn row_space_contains(&self, v: &[F]) -> bool {
        let mut e = EchelonBasis::new(self.cols);
        for r in self.row_iter() {
            e.insert(r);
        }
        e.contains(v)
    }

    /// Coordinates of `v` in a basis already in RREF with the given pivots.
    /// Returns `None` if `v` is outside the span.
    pub fn rref_coordinates(&self, pivots: &[usize], v: &[F]) -> Option<Vec<F>> {
        let coords: Vec<F> = pivots.iter().map(|&p| v[p]).collect();
        let back = self.vec_mul(&coords);
        (back == v).then_some(coords)
    }

    /// Pivot columns of a matrix assumed to be in RREF.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.row_iter()
            .filter_map(|r| r.iter().position(|x| !x.is_zero_elem()))
            .collect()
    }

    /// Convenience: elements mapped by `f`.
    pub fn map(&self, f: impl Fn(F) -> F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |s, i| s + self.get(i, i))
    }

    /// Multiplicative order of an invertible square matrix.
    pub fn order(&self) -> Option<u64> {
        self.inverse()?;
        let id = Self::identity(self.rows);
        let mut p = self.clone();
        let mut k = 1u64;
        while p != id {
            p = &p * self;
            k += 1;
            if k > 1_000_000 {
                return None;
            }
        }
        Some(k)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, F::ORDER);
        for r in self.row_iter() {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parse the `rows cols q` text format. Blank lines and `#` comments are
    /// ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let m = Self::parse_lines(hl, header, &mut lines)?;
        if let Some((ln, _)) = lines.next() {
            return Err(Error::ParseAt { line: ln, column: 1, message: "trailing data".into() });
        }
        Ok(m)
    }

    /// Parse a header line plus following rows from a line iterator.
    pub fn parse_lines<'a>(
        hl: usize,
        header: &str,
        lines: &mut impl Iterator<Item = (usize, &'a str)>,
    ) -> Result<Self> {
        let at = |line, column, message: String| Error::ParseAt { line, column, message };
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(at(hl, 1, "header must be `rows cols q`".into()));
        }
        let num = |k: usize| {
            h[k].parse::<usize>()
                .map_err(|_| at(hl, column_of(header, k), format!("bad integer `{}`", h[k])))
        };
        let (rows, cols, q) = (num(0)?, num(1)?, num(2)?);
        if q != F::ORDER as usize {
            return Err(at(hl, column_of(header, 2), format!("expected q = {}, found {q}", F::ORDER)));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| at(hl, 1, format!("expected {rows} rows")))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != cols {
                return Err(at(ln, 1, format!("expected {cols} entries, found {}", toks.len())));
            }
            for (k, t) in toks.iter().enumerate() {
                let v = F::parse(t).map_err(|_| {
                    at(ln, column_of(line, k), format!("`{t}` is not an element of GF({q})"))
                })?;
                data.push(v);
            }
        }
        Ok(Matrix { rows, cols, data })
    }
}

fn column_of(line: &str, token: usize) -> usize {
    let mut in_tok = false;
    let mut seen = 0;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            in_tok = false;
        } else if !in_tok {
            if seen == token {
                return i + 1;
            }
            seen += 1;
            in_tok = true;
        }
    }
    line.len() + 1
}

/// Sum of two row spaces, in RREF.
pub fn subspace_sum<F: Field>(u: &Matrix<F>, v: &Matrix<F>) -> Matrix<F> {
    u.vstack(v).row_space()
}

/// Intersection of two row spaces by the Zassenhaus double-echelon method.
pub fn subspace_intersect<F: Field>(u: &Matrix<F>, v: &Matrix<F>) -> Matrix<F> {
    assert_eq!(u.cols, v.cols);
    let n = u.cols;
    let top = u.hstack(u);
    let bot = v.hstack(&Matrix::zeros(v.rows, n));
    let r = top.vstack(&bot).rref();
    let mut out = Matrix::zeros(0, n);
    for (i, &p) in r.pivots.iter().enumerate() {
        if p >= n {
            out.push_row(&r.matrix.row(i)[n..]);
        }
    }
    out.row_space()
}

/// Whether row space `u` is contained in row space `v`.
pub fn subspace_contains<F: Field>(v: &Matrix<F>, u: &Matrix<F>) -> bool {
    let e = EchelonBasis::from_matrix(v);
    u.row_iter().all(|r| e.contains(r))
}

/// Incrementally built basis in reduced echelon form.
///
/// With tracking enabled every stored row remembers its expression in the
/// inserted vectors, so reductions can report coordinates.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F> {
    dim: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    track: Option<Vec<Vec<F>>>,
    inserted: usize,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new(), pivots: Vec::new(), track: None, inserted: 0 }
    }

    pub fn tracked(dim: usize) -> Self {
        EchelonBasis { track: Some(Vec::new()), ..Self::new(dim) }
    }

    pub fn from_matrix(m: &Matrix<F>) -> Self {
        let mut e = Self::new(m.cols);
        for r in m.row_iter() {
            e.insert(r);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after clearing pivot columns.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if !c.is_zero_elem() {
                axpy(&mut w, -c, r);
            }
        }
        w
    }

    /// Residual and coefficients `c` over the successfully inserted vectors
    /// such that `v = residual + sum c_i * inserted_i`. Requires tracking.
    pub fn reduce_tracked(&self, v: &[F]) -> (Vec<F>, Vec<F>) {
        let track = self.track.as_ref().expect("tracking not enabled");
        let mut w = v.to_vec();
        let mut coeffs = vec![F::zero(); self.inserted];
        for ((r, &p), t) in self.rows.iter().zip(&self.pivots).zip(track) {
            let c = w[p];
            if !c.is_zero_elem() {
                axpy(&mut w, -c, r);
                axpy(&mut coeffs[..t.len()], c, t);
            }
        }
        (w, coeffs)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero_elem())
    }

    /// Insert `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.dim);
        let idx = self.inserted;
        let (mut w, mut t) = if self.track.is_some() {
            let (w, mut c) = self.reduce_tracked(v);
            for x in c.iter_mut() {
                *x = -*x;
            }
            c.push(F::one());
            (w, Some(c))
        } else {
            (self.reduce(v), None)
        };
        let Some(p) = w.iter().position(|x| !x.is_zero_elem()) else {
            return false;
        };
        self.inserted += 1;
        let inv = w[p].inv().expect("nonzero");
        scale_slice(&mut w, inv);
        if let Some(t) = t.as_mut() {
            scale_slice(t, inv);
            debug_assert_eq!(t.len(), idx + 1);
        }
        // keep fully reduced: clear the new pivot from existing rows
        for k in 0..self.rows.len() {
            let c = self.rows[k][p];
            if !c.is_zero_elem() {
                let (rows, w_ref) = (&mut self.rows, &w);
                axpy(&mut rows[k], -c, w_ref);
                if let (Some(track), Some(t)) = (self.track.as_mut(), t.as_ref()) {
                    let tk = &mut track[k];
                    tk.resize(t.len(), F::zero());
                    axpy(tk, -c, t);
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        if let (Some(track), Some(t)) = (self.track.as_mut(), t) {
            track.insert(pos, t);
        }
        true
    }

    /// Basis in RREF.
    pub fn to_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.dim, &self.rows)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over GF({})", self.rows, self.cols, F::ORDER)?;
        for r in self.row_iter() {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: Self) -> Matrix<F> {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: Self) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimensions");
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: Self) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimensions");
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf3, Gf4, Gf9};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m3(rows: usize, cols: usize, v: &[i64]) -> Matrix<Gf3> {
        Matrix::from_ints(rows, cols, v)
    }

    #[test]
    fn identity_rref() {
        let r = Matrix::<Gf3>::identity(3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, Matrix::identity(3));
    }

    #[test]
    fn singular_over_f3() {
        // det = 1 - 4 = -3
        let r = m3(2, 2, &[1, 2, 2, 1]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, m3(2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn zero_rref() {
        let r = Matrix::<Gf2>::zeros(2, 2).rref();
        assert_eq!(r.rank, 0);
        assert!(r.matrix.is_zero());
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert_eq!(Matrix::<Gf9>::identity(4).nullspace().rows(), 0);
    }

    #[test]
    fn kronecker_with_scalar() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = Matrix::<Gf3>::random(3, 4, &mut rng);
        let two = m3(1, 1, &[2]);
        assert_eq!(two.kronecker(&m), m.scale(Gf3::new(2)));
    }

    #[test]
    fn inverse_and_solve() {
        let a = m3(2, 2, &[0, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(m3(2, 2, &[1, 2, 2, 1]).inverse().is_none());
        let b = m3(2, 1, &[1, 0]);
        assert!(m3(2, 2, &[1, 2, 2, 1]).solve(&b).is_none());
    }

    #[test]
    fn matrix_order() {
        assert_eq!(m3(2, 2, &[0, 1, 1, 1]).order(), Some(8));
        assert_eq!(m3(2, 2, &[0, 2, 1, 0]).order(), Some(4));
    }

    #[test]
    fn text_round_trip_extension() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = Matrix::<Gf9>::random(3, 5, &mut rng);
        assert_eq!(Matrix::<Gf9>::from_text(&m.to_text()).unwrap(), m);
        let m4 = Matrix::<Gf4>::random(2, 2, &mut rng);
        assert_eq!(Matrix::<Gf4>::from_text(&m4.to_text()).unwrap(), m4);
    }

    #[test]
    fn text_errors_report_position() {
        let e = Matrix::<Gf3>::from_text("2 2 3\n1 0\n0 5\n").unwrap_err();
        assert_eq!(e, Error::ParseAt { line: 3, column: 3, message: "`5` is not an element of GF(3)".into() });
        assert!(Matrix::<Gf3>::from_text("2 2 2\n1 0\n0 1\n").is_err());
    }

    #[test]
    fn tracked_reduction_gives_coordinates() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let vs = Matrix::<Gf3>::random(4, 6, &mut rng);
        let mut e = EchelonBasis::tracked(6);
        for r in vs.row_iter() {
            e.insert(r);
        }
        let c = [Gf3::new(1), Gf3::new(2), Gf3::new(0), Gf3::new(1)];
        let v = vs.vec_mul(&c);
        let (res, coeffs) = e.reduce_tracked(&v);
        assert!(res.iter().all(|x| x.is_zero_elem()));
        assert_eq!(vs.vec_mul(&coeffs), v);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix<Gf3>> {
        (0usize..6, 0usize..6, any::<u64>()).prop_map(|(r, c, s)| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            // bias toward low rank
            let k = r.min(c).max(1);
            let a = Matrix::<Gf3>::random(r, k, &mut rng);
            let b = Matrix::<Gf3>::random(k, c, &mut rng);
            if s % 2 == 0 { &a * &b } else { Matrix::random(r, c, &mut rng) }
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent(m in arb_matrix()) {
            let once = m.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once);
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.rows(), m.cols());
            for v in ns.row_iter() {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero_elem()));
            }
        }

        #[test]
        fn intersection_dimension(a in arb_matrix(), s in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let b = Matrix::<Gf3>::random(3, a.cols(), &mut rng);
            let (u, v) = (a.row_space(), b.row_space());
            let i = subspace_intersect(&u, &v);
            let sum = subspace_sum(&u, &v);
            prop_assert!(subspace_contains(&u, &i));
            prop_assert!(subspace_contains(&v, &i));
            prop_assert_eq!(u.rows() + v.rows(), sum.rows() + i.rows());
        }

        #[test]
        fn solve_is_exact(a in arb_matrix(), s in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let x = Matrix::<Gf3>::random(a.cols(), 2, &mut rng);
            let b = &a * &x;
            let y = a.solve(&b).expect("consistent");
            prop_assert_eq!(&a * &y, b);
        }
    }
}
