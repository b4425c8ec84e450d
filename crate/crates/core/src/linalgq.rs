//! Exact dense linear algebra over the rationals.
//!
//! Matrices act on column vectors. A [`Subspace`] is stored as the reduced
//! row-echelon basis of its row space, so two subspaces are equal exactly when
//! their stored bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_from_str(s: &str) -> Result<Q> {
    let s = s.trim();
    let parse = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
    };
    match s.split_once('/') {
        None => Ok(Q::from_integer(parse(s)?)),
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(parse(n)?, d))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(q_to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<Q>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("expected a {rows}x{cols} array of rows")));
        }
        Ok(RationalMatrix { rows, cols, data: entries.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| q(x))).collect();
        RationalMatrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Q) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if !x.is_zero() {
                    t.set(c, r, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let base = i * other.cols;
                for (j, b) in brow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = vec![Q::zero(); self.rows];
        let nz: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
        for (i, o) in out.iter_mut().enumerate() {
            let row = self.row(i);
            for &k in &nz {
                if !row[k].is_zero() {
                    *o += &row[k] * &v[k];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        let mut out = vec![Q::zero(); self.cols];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, a) in self.row(k).iter().enumerate() {
                if !a.is_zero() {
                    out[j] += x * a;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RationalMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        RationalMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Q) -> Self {
        let data = self.data.iter().map(|a| a * s).collect();
        RationalMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[&RationalMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let x = b.get(r, c);
                    if !x.is_zero() {
                        out.set(r0 + r, c0 + c, x.clone());
                    }
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&RationalMatrix]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        RationalMatrix { rows, cols, data }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert_dense(self.row(r));
        }
        e.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Submatrix of the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }
}

/// Sparse row, strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Q)>;

pub fn sparse_from_dense(v: &[Q]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse(n: usize, row: &SparseRow) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    for (i, x) in row {
        v[*i] = x.clone();
    }
    v
}

/// `a - s * b` for sparse rows.
fn axpy(a: &SparseRow, s: &Q, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(s * &b[j].1)));
            j += 1;
        } else {
            let x = &a[i].1 - s * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally maintained fully reduced row-echelon form.
///
/// Every stored row has leading entry one and no other stored row has a
/// nonzero entry in its pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &SparseRow) -> SparseRow {
        let hits: Vec<(usize, Q)> = row
            .iter()
            .filter_map(|(c, x)| self.pivot_row[*c].map(|r| (r, x.clone())))
            .collect();
        let mut out = row.clone();
        for (r, x) in hits {
            out = axpy(&out, &x, &self.rows[r]);
        }
        out
    }

    /// Inserts a row; returns true if it was independent of the stored rows.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let reduced = self.reduce(&row);
        let Some((p, lead)) = reduced.first().cloned() else {
            return false;
        };
        let inv = lead.recip();
        let new: SparseRow = reduced.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        for r in self.rows.iter_mut() {
            if let Ok(k) = r.binary_search_by_key(&p, |e| e.0) {
                let s = r[k].1.clone();
                *r = axpy(r, &s, &new);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(new);
        true
    }

    pub fn insert_dense(&mut self, row: &[Q]) -> bool {
        self.insert(sparse_from_dense(row))
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect();
        p.sort_unstable();
        p
    }

    /// Rows sorted by pivot column: the canonical RREF basis.
    pub fn sorted_rows(&self) -> Vec<SparseRow> {
        self.pivots().into_iter().map(|c| self.rows[self.pivot_row[c].unwrap()].clone()).collect()
    }

    /// Basis of `{x : r . x = 0 for every stored row r}`.
    pub fn null_space(&self) -> Vec<SparseRow> {
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivot_row[f].is_some() {
                continue;
            }
            let mut v: SparseRow = vec![(f, Q::one())];
            for (c, r) in self.pivot_row.iter().enumerate() {
                if let Some(r) = r {
                    if let Ok(k) = self.rows[*r].binary_search_by_key(&f, |e| e.0) {
                        v.push((c, -self.rows[*r][k].1.clone()));
                    }
                }
            }
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }

    pub fn into_subspace(self) -> Subspace {
        let ambient = self.ncols;
        let pivots = self.pivots();
        let rows: Vec<Vec<Q>> =
            self.sorted_rows().iter().map(|r| dense_from_sparse(ambient, r)).collect();
        let basis = RationalMatrix::from_rows(rows.len(), ambient, rows).expect("consistent shape");
        Subspace { ambient, basis, pivots }
    }
}

/// Reduced row-echelon form and pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut e = Echelon::new(m.cols());
    for r in 0..m.rows() {
        e.insert_dense(m.row(r));
    }
    let pivots = e.pivots();
    let mut out = RationalMatrix::zeros(m.rows(), m.cols());
    for (i, r) in e.sorted_rows().iter().enumerate() {
        for (c, x) in r {
            out.set(i, *c, x.clone());
        }
    }
    (out, pivots)
}

/// Null space of `m` acting on column vectors.
pub fn kernel(m: &RationalMatrix) -> Subspace {
    let mut e = Echelon::new(m.cols());
    for r in 0..m.rows() {
        e.insert_dense(m.row(r));
    }
    Subspace::from_sparse(m.cols(), e.null_space())
}

/// Column space of `m`.
pub fn image(m: &RationalMatrix) -> Subspace {
    Subspace::from_vectors(m.rows(), &m.transpose().row_vecs())
}

/// Fixed vectors of a family of square matrices.
pub fn invariant_subspace(dim: usize, gens: &[RationalMatrix]) -> Result<Subspace> {
    let mut e = Echelon::new(dim);
    for g in gens {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::Shape(format!(
                "generator is {}x{}, expected {dim}x{dim}",
                g.rows(),
                g.cols()
            )));
        }
        let d = g.sub(&RationalMatrix::identity(dim));
        for r in 0..dim {
            e.insert_dense(d.row(r));
        }
    }
    Ok(Subspace::from_sparse(dim, e.null_space()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: RationalMatrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: RationalMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<Q>]) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
            e.insert_dense(v);
        }
        e.into_subspace()
    }

    pub fn from_sparse(ambient: usize, vectors: Vec<SparseRow>) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Q>> {
        self.basis.row_vecs()
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let c: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.vec_mul(&c);
        if back.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    /// Coordinates read off the pivot columns without a membership check.
    pub fn coords_unchecked(&self, v: &[Q]) -> Vec<Q> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.row_vecs().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Ok(Subspace::from_vectors(self.ambient, &vs))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        intersect(self, other)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(format!(
                "ambient dimensions {} and {} differ",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &RationalMatrix) -> Subspace {
        let vs: Vec<Vec<Q>> = self.basis_vectors().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::from_vectors(m.rows(), &vs)
    }

    /// Reduction of `v` modulo the subspace; entries at pivot columns vanish.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let s = out[p].clone();
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    out[j] -= &s * b;
                }
            }
        }
        out
    }

    /// Columns outside the pivot set: coordinates on the quotient space.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }
}

/// `A ∩ B`, computed from the kernel of `[A; -B]`.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_ambient(b)?;
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(Subspace::zero(a.ambient));
    }
    let (da, db) = (a.dim(), b.dim());
    let mut e = Echelon::new(da + db);
    for c in 0..a.ambient {
        let mut row: SparseRow = Vec::new();
        for i in 0..da {
            let x = a.basis.get(i, c);
            if !x.is_zero() {
                row.push((i, x.clone()));
            }
        }
        for j in 0..db {
            let x = b.basis.get(j, c);
            if !x.is_zero() {
                row.push((da + j, -x.clone()));
            }
        }
        e.insert(row);
    }
    let vs: Vec<Vec<Q>> = e
        .null_space()
        .iter()
        .map(|k| {
            let coeffs: Vec<Q> = dense_from_sparse(da + db, k)[..da].to_vec();
            a.basis.vec_mul(&coeffs)
        })
        .collect();
    Ok(Subspace::from_vectors(a.ambient, &vs))
}

/// Solves `m x = rhs`, returning one solution if any exists.
pub fn solve(m: &RationalMatrix, rhs: &[Q]) -> Option<Vec<Q>> {
    let n = m.cols();
    let mut e = Echelon::new(n + 1);
    for (r, b) in rhs.iter().enumerate().take(m.rows()) {
        let mut row = sparse_from_dense(m.row(r));
        if !b.is_zero() {
            row.push((n, b.clone()));
        }
        e.insert(row);
    }
    if e.pivot_row[n].is_some() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (c, r) in e.pivot_row.iter().enumerate().take(n) {
        if let Some(r) = r {
            if let Ok(k) = e.rows[*r].binary_search_by_key(&n, |t| t.0) {
                x[c] = e.rows[*r][k].1.clone();
            }
        }
    }
    Some(x)
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}
