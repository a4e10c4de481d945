//! Lie algebras by structure constants and Rota-Baxter systems on them.
//!
//! The Lie identities checked by [`check_lie_rbs`] are
//!
//! ```text
//! [B₁a, B₁b] = B₁([B₁a, B₁b] − [B₂a, B₂b])
//! [B₂b, B₂a] = B₂([B₁a, B₁b] − [B₂a, B₂b])
//! ```

use serde_json::json;

use crate::error::{Error, Result};
use crate::hopf::{primitive_subspace, Bilinear, StructHopf};
use crate::linalg::{Mat, SparseVec, Subspace};
use crate::rbs::RBSystem;
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: Vec<String>,
    bracket: Bilinear,
}

impl LieAlgebra {
    /// Shape check only; see [`verify_lie`]. Dimension zero is allowed.
    pub fn new(basis: Vec<String>, bracket: Bilinear) -> Result<Self> {
        if bracket.dim() != basis.len() {
            return Err(Error::dim("bracket table", basis.len(), bracket.dim()));
        }
        Ok(LieAlgebra { basis, bracket })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn bracket_table(&self) -> &Bilinear {
        &self.bracket
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.bracket.apply(x, y)
    }
}

pub fn verify_lie(l: &LieAlgebra) -> Report {
    let n = l.dim();
    let mut r = Report::new();
    let anti = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .find(|&(i, j)| l.bracket.basis(i, j).add(l.bracket.basis(j, i)) != SparseVec::zeros(n));
    r.record("LIE.antisym", anti.map(|(i, j)| json!({"a": i, "b": j})));
    let e = |i| SparseVec::basis(n, i);
    let jacobi = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| {
            let t1 = l.bracket(&e(i), l.bracket.basis(j, k));
            let t2 = l.bracket(&e(j), l.bracket.basis(k, i));
            let t3 = l.bracket(&e(k), l.bracket.basis(i, j));
            !t1.add(&t2).add(&t3).is_zero()
        });
    r.record(
        "LIE.jacobi",
        jacobi.map(|(i, j, k)| json!({"a": i, "b": j, "c": k})),
    );
    r
}

/// Both identities on all basis pairs. With `strict`, also reports whether
/// the second identity holds with the bracket order `[B₂a, B₂b]` instead; this
/// is information only and never fails the report.
pub fn check_lie_rbs(l: &LieAlgebra, b1: &Mat, b2: &Mat, strict: bool) -> Report {
    let n = l.dim();
    let mut r = Report::new();
    for (name, m) in [("B1", b1), ("B2", b2)] {
        if m.rows() != n || m.cols() != n {
            r.fail("LRB.shape", json!({"map": name, "dim": n}));
            return r;
        }
    }
    let inner = |i: usize, j: usize| {
        l.bracket(b1.column(i), b1.column(j))
            .sub(&l.bracket(b2.column(i), b2.column(j)))
    };
    let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
    let first =
        pairs().find(|&(i, j)| l.bracket(b1.column(i), b1.column(j)) != b1.apply(&inner(i, j)));
    r.record("LRB1", first.map(|(i, j)| json!({"a": i, "b": j})));
    let second =
        pairs().find(|&(i, j)| l.bracket(b2.column(j), b2.column(i)) != b2.apply(&inner(i, j)));
    r.record("LRB2", second.map(|(i, j)| json!({"a": i, "b": j})));
    if strict {
        let signed =
            pairs().find(|&(i, j)| l.bracket(b2.column(i), b2.column(j)) != b2.apply(&inner(i, j)));
        match signed {
            None => r.info("LRB2.signed", json!({"holds": true})),
            Some((i, j)) => r.info("LRB2.signed", json!({"holds": false, "a": i, "b": j})),
        }
    }
    r
}

/// A Lie algebra with a pair of operators, produced by restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRBSystem {
    pub lie: LieAlgebra,
    pub b1: Mat,
    pub b2: Mat,
    /// `P(H) → H`.
    pub embedding: Mat,
}

/// `(P(H), B₁|, −B₂|)` with the commutator bracket, in the canonical basis of
/// the primitive subspace.
///
/// Works on unchecked structures too. Fails with [`Error::NotClosed`] when the
/// commutator or an operator leaves `P(H)`.
pub fn from_primitives(h: &StructHopf, b1: &Mat, b2: &Mat) -> Result<LieRBSystem> {
    let n = h.dim();
    let sub = Subspace::span(n, primitive_subspace(h));
    let k = sub.dim();
    let basis = sub.basis().to_vec();
    let mut table = vec![vec![SparseVec::zeros(k); k]; k];
    for p in 0..k {
        for q in 0..k {
            let comm = h
                .mul(&basis[p], &basis[q])
                .sub(&h.mul(&basis[q], &basis[p]));
            table[p][q] = sub.coordinates(&comm).ok_or_else(|| {
                Error::NotClosed(format!(
                    "commutator of primitives p{p}, p{q} is not primitive"
                ))
            })?;
        }
    }
    let restrict = |m: &Mat, label: &str, negate: bool| -> Result<Mat> {
        let cols = basis
            .iter()
            .enumerate()
            .map(|(p, u)| {
                let v = m.apply(u);
                let v = if negate { v.neg() } else { v };
                sub.coordinates(&v).ok_or_else(|| {
                    Error::NotClosed(format!("{label} maps primitive p{p} outside P(H)"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Mat::from_columns(k, cols)
    };
    let rb1 = restrict(b1, "B1", false)?;
    let rb2 = restrict(b2, "B2", true)?;
    let names = (0..k).map(|p| format!("p{p}")).collect();
    Ok(LieRBSystem {
        lie: LieAlgebra::new(names, Bilinear::new(k, table)?)?,
        b1: rb1,
        b2: rb2,
        embedding: sub.embedding(),
    })
}

pub fn restrict_to_primitives(s: &RBSystem) -> Result<LieRBSystem> {
    from_primitives(s.hopf(), s.b1(), s.b2())
}
