use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{Mat, SparseVec, TensorIndex};
use crate::rational::Rational;
use crate::report::Report;

/// A bilinear map `V × V → V` given on basis pairs: `table[i][j]` is the image
/// of `(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    dim: usize,
    table: Vec<Vec<SparseVec>>,
}

impl Bilinear {
    pub fn new(dim: usize, table: Vec<Vec<SparseVec>>) -> Result<Self> {
        if table.len() != dim {
            return Err(Error::dim("bilinear table rows", dim, table.len()));
        }
        for row in &table {
            if row.len() != dim {
                return Err(Error::dim("bilinear table columns", dim, row.len()));
            }
            for v in row {
                if v.dim() != dim {
                    return Err(Error::dim("bilinear table entry", dim, v.dim()));
                }
            }
        }
        Ok(Bilinear { dim, table })
    }

    /// Tabulates `f` on all basis pairs.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> SparseVec) -> Self {
        let table = (0..dim)
            .map(|i| (0..dim).map(|j| f(i, j)).collect())
            .collect();
        Bilinear { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<SparseVec>] {
        &self.table
    }

    pub fn apply(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zeros(self.dim);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&(a * b), &self.table[i][j]);
            }
        }
        out
    }

    /// The operation with its arguments swapped.
    pub fn opposite(&self) -> Bilinear {
        Bilinear::from_fn(self.dim, |i, j| self.table[j][i].clone())
    }
}

/// Finite-dimensional associative unital algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructAlgebra {
    basis: Vec<String>,
    mult: Bilinear,
    unit: SparseVec,
}

impl StructAlgebra {
    /// Shape-checks the data; the axioms are left to [`verify_algebra`].
    pub fn new(basis: Vec<String>, mult: Bilinear, unit: SparseVec) -> Result<Self> {
        let dim = basis.len();
        if mult.dim() != dim {
            return Err(Error::dim("multiplication table", dim, mult.dim()));
        }
        if unit.dim() != dim {
            return Err(Error::dim("unit vector", dim, unit.dim()));
        }
        Ok(StructAlgebra { basis, mult, unit })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn mult(&self) -> &Bilinear {
        &self.mult
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.mult.apply(x, y)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        self.mult.basis(i, j)
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a SparseVec>) -> SparseVec {
        factors
            .into_iter()
            .fold(self.unit.clone(), |acc, x| self.mul(&acc, x))
    }

    pub fn basis_vec(&self, i: usize) -> SparseVec {
        SparseVec::basis(self.dim(), i)
    }

    /// Scalar multiple of the unit.
    pub fn scalar(&self, c: &Rational) -> SparseVec {
        self.unit.scaled(c)
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.mul_basis(i, j) != self.mul_basis(j, i))
    }

    /// Multiplies two elements of `A^{⊗n}` leg by leg.
    pub fn mul_legwise(&self, x: &SparseVec, y: &SparseVec, legs: usize) -> SparseVec {
        let idx = TensorIndex::power(self.dim(), legs);
        let mut out = SparseVec::zeros(idx.total());
        for (fi, a) in x.iter() {
            let ii = idx.unflatten(fi);
            for (fj, b) in y.iter() {
                let jj = idx.unflatten(fj);
                let mut t = SparseVec::basis(1, 0).scaled(&(a * b));
                for k in 0..legs {
                    t = t.tensor(self.mul_basis(ii[k], jj[k]));
                }
                out.add_scaled(&Rational::one(), &t);
            }
        }
        out
    }

    /// The algebra with the opposite multiplication.
    pub fn opposite(&self) -> StructAlgebra {
        StructAlgebra {
            basis: self.basis.clone(),
            mult: self.mult.opposite(),
            unit: self.unit.clone(),
        }
    }
}

/// Associativity on all basis triples and two-sided unit on all basis elements.
pub fn verify_algebra(a: &StructAlgebra) -> Report {
    let n = a.dim();
    let mut r = Report::new();

    let assoc = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| {
            let left = a.mul(a.mul_basis(i, j), &a.basis_vec(k));
            let right = a.mul(&a.basis_vec(i), a.mul_basis(j, k));
            left != right
        });
    r.record(
        "ALG.assoc",
        assoc.map(|(i, j, k)| json!({"a": i, "b": j, "c": k})),
    );

    let unit = (0..n).find(|&i| {
        let e = a.basis_vec(i);
        a.mul(a.unit(), &e) != e || a.mul(&e, a.unit()) != e
    });
    r.record("ALG.unit", unit.map(|i| json!({"a": i})));
    r
}

/// Checks that `f: A → A'` is a unital algebra homomorphism; returns a
/// witness for the first failure.
pub fn algebra_hom_failure(
    src: &StructAlgebra,
    tgt: &StructAlgebra,
    f: &Mat,
) -> Option<serde_json::Value> {
    if f.apply(src.unit()) != *tgt.unit() {
        return Some(json!({"unit": true}));
    }
    let n = src.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = f.apply(src.mul_basis(i, j));
            let rhs = tgt.mul(f.column(i), f.column(j));
            if lhs != rhs {
                return Some(json!({"a": i, "b": j}));
            }
        }
    }
    None
}
