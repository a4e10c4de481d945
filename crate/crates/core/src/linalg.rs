//! Basis-indexed sparse vectors and matrices over [`Rational`].
//!
//! Zero entries are never stored, so `==` on vectors and matrices is value
//! equality. Tensor products flatten row-major with the leftmost factor most
//! significant: in `V1 ⊗ V2 ⊗ ... ⊗ Vk` the multi-index `(i1, ..., ik)` sits at
//! `((i1 * d2 + i2) * d3 + i3) ...`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec {
    dim: usize,
    entries: BTreeMap<usize, Rational>,
}

impl SparseVec {
    pub fn zeros(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        let mut v = Self::zeros(dim);
        v.entries.insert(i, Rational::one());
        v
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        Self::from_entries(values.len(), values.iter().cloned().enumerate())
    }

    /// Sums the given `(index, coefficient)` pairs; repeated indices accumulate.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut v = Self::zeros(dim);
        for (i, c) in entries {
            v.add_at(i, &c);
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Rational {
        self.entries.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entry(&self, i: usize) -> Option<&Rational> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    /// Smallest index with a nonzero coefficient.
    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.iter().next().map(|(i, c)| (*i, c))
    }

    pub fn add_at(&mut self, i: usize, c: &Rational) {
        assert!(
            i < self.dim,
            "index {i} out of range for dimension {}",
            self.dim
        );
        if c.is_zero() {
            return;
        }
        match self.entries.entry(i) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &SparseVec) {
        assert_eq!(self.dim, other.dim, "vector dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_at(i, &(c * x));
        }
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zeros(self.dim);
        }
        SparseVec {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut v = self.clone();
        v.add_scaled(&Rational::one(), other);
        v
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut v = self.clone();
        v.add_scaled(&-Rational::one(), other);
        v
    }

    pub fn neg(&self) -> SparseVec {
        self.scaled(&-Rational::one())
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        self.iter()
            .filter_map(|(i, x)| other.entry(i).map(|y| x * y))
            .sum()
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        (0..self.dim).map(|i| self.get(i)).collect()
    }

    /// Entry `(i, j)` of the result sits at flat index `i * other.dim() + j`.
    pub fn tensor(&self, other: &SparseVec) -> SparseVec {
        let n = other.dim;
        let mut entries = BTreeMap::new();
        for (i, x) in self.iter() {
            for (j, y) in other.iter() {
                entries.insert(i * n + j, x * y);
            }
        }
        SparseVec {
            dim: self.dim * n,
            entries,
        }
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseVec[{}]{{", self.dim)?;
        for (k, (i, c)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        write!(f, "}}")
    }
}

pub fn tensor_product(x: &SparseVec, y: &SparseVec) -> SparseVec {
    x.tensor(y)
}

/// Row-major flattening for an ordered list of tensor factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorIndex {
    dims: Vec<usize>,
}

impl TensorIndex {
    pub fn new(dims: Vec<usize>) -> Self {
        TensorIndex { dims }
    }

    /// `n` copies of a `dim`-dimensional factor.
    pub fn power(dim: usize, n: usize) -> Self {
        TensorIndex { dims: vec![dim; n] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.dims.len(), "multi-index arity");
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| {
            assert!(i < d, "tensor leg index {i} out of range {d}");
            acc * d + i
        })
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (k, &d) in self.dims.iter().enumerate().rev() {
            out[k] = flat % d;
            flat /= d;
        }
        out
    }
}

/// Matrix stored by columns; column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            columns: vec![SparseVec::zeros(rows); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Mat {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| SparseVec::basis(n, i)).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        for c in &columns {
            if c.dim() != rows {
                return Err(Error::dim("matrix column", rows, c.dim()));
            }
        }
        Ok(Mat {
            rows,
            cols: columns.len(),
            columns,
        })
    }

    /// Builds from a row-major dense array (`rows[i][j]` is entry `(i, j)`).
    pub fn from_dense_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in rows {
            if r.len() != ncols {
                return Err(Error::dim("matrix row", ncols, r.len()));
            }
        }
        let columns = (0..ncols)
            .map(|j| SparseVec::from_entries(nrows, (0..nrows).map(|i| (i, rows[i][j].clone()))))
            .collect();
        Ok(Mat {
            rows: nrows,
            cols: ncols,
            columns,
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect();
        Mat::from_dense_rows(&dense).expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.columns[j].get(i)
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::zeros(self.cols); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i].add_at(j, c);
            }
        }
        rows
    }

    pub fn transpose(&self) -> Mat {
        Mat {
            rows: self.cols,
            cols: self.rows,
            columns: self.row_vectors(),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.cols, "matrix/vector dimension mismatch");
        let mut out = SparseVec::zeros(self.rows);
        for (j, c) in v.iter() {
            out.add_scaled(c, &self.columns[j]);
        }
        out
    }

    /// Matrix product `self * other`, i.e. the composite map `self ∘ other`.
    pub fn compose(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        Mat {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.rows) && self.rows == self.cols
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense_rows() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form of the span of `rows`: nonzero rows only, sorted by
/// pivot, every pivot 1 and the only nonzero entry in its column.
pub fn rref_rows(rows: impl IntoIterator<Item = SparseVec>) -> (Vec<SparseVec>, Vec<usize>) {
    let mut basis: Vec<(usize, SparseVec)> = Vec::new();
    for mut r in rows {
        for (p, b) in &basis {
            if let Some(c) = r.entry(*p).cloned() {
                r.add_scaled(&-c, b);
            }
        }
        let Some((p, lead)) = r.leading().map(|(p, c)| (p, c.clone())) else {
            continue;
        };
        let r = r.scaled(&lead.recip().expect("leading entry is nonzero"));
        for (_, b) in basis.iter_mut() {
            if let Some(c) = b.entry(p).cloned() {
                b.add_scaled(&-c, &r);
            }
        }
        let pos = basis.partition_point(|(q, _)| *q < p);
        basis.insert(pos, (p, r));
    }
    let pivots = basis.iter().map(|(p, _)| *p).collect();
    (basis.into_iter().map(|(_, r)| r).collect(), pivots)
}

/// Reduced row-echelon form of `m` (same shape, zero rows last) and its pivot
/// columns. The rank is the number of pivots.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let (rows, pivots) = rref_rows(m.row_vectors());
    let mut all = rows;
    all.resize(m.rows(), SparseVec::zeros(m.cols()));
    let reduced = Mat {
        rows: m.rows(),
        cols: m.cols(),
        columns: Mat {
            rows: m.cols(),
            cols: m.rows(),
            columns: all,
        }
        .row_vectors(),
    };
    (reduced, pivots)
}

/// Canonical basis of the column space: the nonzero rows of the RREF of the
/// transpose. Depends only on the subspace, not on the spanning columns.
pub fn image_basis(m: &Mat) -> Vec<SparseVec> {
    rref_rows(m.columns().iter().cloned()).0
}

/// Canonical null-space basis: one vector per free column, with a 1 in that
/// column and the negated RREF entries in the pivot columns.
pub fn kernel_basis(m: &Mat) -> Vec<SparseVec> {
    let (rows, pivots) = rref_rows(m.row_vectors());
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = SparseVec::basis(n, f);
            for (row, &p) in rows.iter().zip(&pivots) {
                if let Some(c) = row.entry(f) {
                    v.add_at(p, &-c);
                }
            }
            v
        })
        .collect()
}

/// A subspace held as the RREF of a spanning set. Membership appends the
/// candidate to the reduced basis and asks whether the rank grows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let (basis, pivots) = rref_rows(vectors.into_iter().inspect(|v| {
            assert_eq!(v.dim(), ambient, "spanning vector dimension");
        }));
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// What is left of `v` after eliminating against the basis; zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if let Some(c) = r.entry(p).cloned() {
                r.add_scaled(&-c, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.contains(v) {
            return None;
        }
        Some(SparseVec::from_entries(
            self.dim(),
            self.pivots.iter().enumerate().map(|(k, &p)| (k, v.get(p))),
        ))
    }

    /// Coordinates of `t ∈ W ⊗ W` in the basis `u_a ⊗ u_b` of `V ⊗ V`, or
    /// `None` if `t ∉ V ⊗ V`. Reads the entries at pivot pairs and checks the
    /// reconstruction, which is valid because the basis is reduced.
    pub fn tensor_square_coordinates(&self, t: &SparseVec) -> Option<SparseVec> {
        let n = self.ambient;
        let k = self.dim();
        assert_eq!(t.dim(), n * n, "tensor square dimension");
        let mut coords = SparseVec::zeros(k * k);
        let mut rebuilt = SparseVec::zeros(n * n);
        for (a, &pa) in self.pivots.iter().enumerate() {
            for (b, &pb) in self.pivots.iter().enumerate() {
                if let Some(c) = t.entry(pa * n + pb) {
                    coords.add_at(a * k + b, c);
                    rebuilt.add_scaled(c, &self.basis[a].tensor(&self.basis[b]));
                }
            }
        }
        (rebuilt == *t).then_some(coords)
    }

    /// Left inverse of [`Subspace::embedding`] that reads pivot entries
    /// (dim × ambient).
    pub fn pivot_projection(&self) -> Mat {
        let cols = (0..self.ambient)
            .map(|j| match self.pivots.iter().position(|&p| p == j) {
                Some(k) => SparseVec::basis(self.dim(), k),
                None => SparseVec::zeros(self.dim()),
            })
            .collect();
        Mat::from_columns(self.dim(), cols).expect("projection shape")
    }

    /// Matrix whose columns are the basis vectors (ambient × dim).
    pub fn embedding(&self) -> Mat {
        Mat::from_columns(self.ambient, self.basis.clone()).expect("basis dimensions agree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_entries(
            xs.len(),
            xs.iter()
                .enumerate()
                .map(|(i, &x)| (i, Rational::from_int(x))),
        )
    }

    #[test]
    fn tensor_basis_case() {
        let e0 = SparseVec::basis(2, 0);
        let e1 = SparseVec::basis(2, 1);
        assert_eq!(tensor_product(&e0, &e1), SparseVec::basis(4, 1));
        assert!(tensor_product(&SparseVec::zeros(2), &e1).is_zero());
        let sum = e0.add(&e1);
        let t = tensor_product(&sum, &e0);
        let idx = TensorIndex::new(vec![2, 2]);
        let expected = SparseVec::basis(4, idx.flatten(&[0, 0]))
            .add(&SparseVec::basis(4, idx.flatten(&[1, 0])));
        assert_eq!(t, expected);
    }

    #[test]
    fn no_stored_zeros() {
        let mut x = v(&[1, 2]);
        x.add_at(0, &Rational::from_int(-1));
        assert_eq!(x.nnz(), 1);
        assert_eq!(x, v(&[0, 2]));
    }

    #[test]
    fn tensor_index_roundtrip() {
        let idx = TensorIndex::new(vec![2, 3, 4]);
        for flat in 0..idx.total() {
            assert_eq!(idx.flatten(&idx.unflatten(flat)), flat);
        }
        assert_eq!(idx.flatten(&[1, 2, 3]), 23);
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Mat::identity(2));
        assert_eq!(r, Mat::identity(2));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = rref(&Mat::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, Mat::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let (r, p) = rref(&Mat::from_ints(&[&[0, 2, 4], &[1, 1, 1], &[1, 2, 3]]));
        assert_eq!(r, Mat::from_ints(&[&[1, 0, -1], &[0, 1, 2], &[0, 0, 0]]));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn image_and_kernel_examples() {
        let z = Mat::zeros(3, 3);
        assert!(image_basis(&z).is_empty());
        assert_eq!(
            kernel_basis(&z),
            (0..3).map(|i| SparseVec::basis(3, i)).collect::<Vec<_>>()
        );

        let id = Mat::identity(3);
        assert_eq!(
            image_basis(&id),
            (0..3).map(|i| SparseVec::basis(3, i)).collect::<Vec<_>>()
        );
        assert!(kernel_basis(&id).is_empty());

        let ones = Mat::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(image_basis(&ones), vec![v(&[1, 1])]);
        assert_eq!(kernel_basis(&ones), vec![v(&[-1, 1])]);
    }

    #[test]
    fn subspace_membership_and_coordinates() {
        let s = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[2, 2, 0]), v(&[0, 1, 1])]);
        assert_eq!(s.dim(), 2);
        let w = v(&[3, 5, 2]);
        assert!(s.contains(&w));
        let coords = s.coordinates(&w).unwrap();
        let rebuilt = s.embedding().apply(&coords);
        assert_eq!(rebuilt, w);
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert!(s.coordinates(&v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn compose_and_transpose() {
        let a = Mat::from_ints(&[&[1, 2], &[3, 4]]);
        let b = Mat::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.compose(&b), Mat::from_ints(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), Mat::from_ints(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.scaled(&q(1, 2)).get(1, 1), Rational::from_int(2));
    }
}
