use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{Mat, SparseVec, TensorIndex};
use crate::rational::Rational;
use crate::report::Report;

/// Finite-dimensional coalgebra: `comult[i]` is `Δ(e_i)` as a flat vector in
/// `C ⊗ C`, `counit[i]` is `ε(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructCoalgebra {
    basis: Vec<String>,
    comult: Vec<SparseVec>,
    counit: Vec<Rational>,
}

/// One summand `coeff · e_left ⊗ e_right` of a comultiplication.
pub type ComultTerm = (Rational, usize, usize);

impl StructCoalgebra {
    pub fn new(basis: Vec<String>, comult: Vec<SparseVec>, counit: Vec<Rational>) -> Result<Self> {
        let dim = basis.len();
        if comult.len() != dim {
            return Err(Error::dim("comultiplication list", dim, comult.len()));
        }
        for c in &comult {
            if c.dim() != dim * dim {
                return Err(Error::dim("comultiplication entry", dim * dim, c.dim()));
            }
        }
        if counit.len() != dim {
            return Err(Error::dim("counit", dim, counit.len()));
        }
        Ok(StructCoalgebra {
            basis,
            comult,
            counit,
        })
    }

    /// Builds from per-basis term lists `(coeff, left, right)`.
    pub fn from_terms(
        basis: Vec<String>,
        terms: Vec<Vec<ComultTerm>>,
        counit: Vec<Rational>,
    ) -> Result<Self> {
        let dim = basis.len();
        let mut comult = Vec::with_capacity(terms.len());
        for list in terms {
            let mut v = SparseVec::zeros(dim * dim);
            for (c, l, r) in list {
                if l >= dim || r >= dim {
                    return Err(Error::dim("comultiplication index", dim, l.max(r)));
                }
                v.add_at(l * dim + r, &c);
            }
            comult.push(v);
        }
        Self::new(basis, comult, counit)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn comult_basis(&self, i: usize) -> &SparseVec {
        &self.comult[i]
    }

    pub fn counit_basis(&self, i: usize) -> &Rational {
        &self.counit[i]
    }

    pub fn counit_values(&self) -> &[Rational] {
        &self.counit
    }

    pub fn terms(&self, i: usize) -> Vec<ComultTerm> {
        let n = self.dim();
        self.comult[i]
            .iter()
            .map(|(f, c)| (c.clone(), f / n, f % n))
            .collect()
    }

    pub fn comult(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zeros(self.dim() * self.dim());
        for (i, c) in x.iter() {
            out.add_scaled(c, &self.comult[i]);
        }
        out
    }

    pub fn counit(&self, x: &SparseVec) -> Rational {
        x.iter().map(|(i, c)| c * &self.counit[i]).sum()
    }

    /// Applies `Δ` to leg `leg` of an element of `C^{⊗legs}`.
    pub fn comult_at(&self, t: &SparseVec, legs: usize, leg: usize) -> SparseVec {
        let n = self.dim();
        let src = TensorIndex::power(n, legs);
        let dst = TensorIndex::power(n, legs + 1);
        let mut out = SparseVec::zeros(dst.total());
        let mut idx = vec![0; legs + 1];
        for (flat, c) in t.iter() {
            let ii = src.unflatten(flat);
            idx[..leg].copy_from_slice(&ii[..leg]);
            idx[leg + 2..].copy_from_slice(&ii[leg + 1..]);
            for (d, l, r) in self.terms(ii[leg]) {
                idx[leg] = l;
                idx[leg + 1] = r;
                out.add_at(dst.flatten(&idx), &(c * &d));
            }
        }
        out
    }

    /// Applies `ε` to leg `leg`, dropping it.
    pub fn counit_at(&self, t: &SparseVec, legs: usize, leg: usize) -> SparseVec {
        let n = self.dim();
        let src = TensorIndex::power(n, legs);
        let dst = TensorIndex::power(n, legs - 1);
        let mut out = SparseVec::zeros(dst.total());
        for (flat, c) in t.iter() {
            let mut ii = src.unflatten(flat);
            let e = &self.counit[ii[leg]];
            if e.is_zero() {
                continue;
            }
            ii.remove(leg);
            out.add_at(dst.flatten(&ii), &(c * e));
        }
        out
    }

    /// `Δ_{n-1}(x)` in `C^{⊗n}`, comultiplying the last leg each time.
    pub fn sweedler(&self, x: &SparseVec, n: usize) -> SparseVec {
        assert!(n >= 1, "sweedler order must be positive");
        let mut t = x.clone();
        for legs in 1..n {
            t = self.comult_at(&t, legs, legs - 1);
        }
        t
    }

    /// Terms of `Δ_{n-1}(e_i)` as `(coeff, [i_1, ..., i_n])`.
    pub fn sweedler_terms(&self, i: usize, n: usize) -> Vec<(Rational, Vec<usize>)> {
        let idx = TensorIndex::power(self.dim(), n);
        self.sweedler(&SparseVec::basis(self.dim(), i), n)
            .iter()
            .map(|(f, c)| (c.clone(), idx.unflatten(f)))
            .collect()
    }

    pub fn cocommutativity_witness(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| twist(&self.comult[i], self.dim()) != self.comult[i])
    }

    pub fn is_cocommutative(&self) -> bool {
        self.cocommutativity_witness().is_none()
    }
}

/// The flip `x ⊗ y ↦ y ⊗ x` on `V ⊗ V`.
pub fn twist(t: &SparseVec, dim: usize) -> SparseVec {
    SparseVec::from_entries(
        t.dim(),
        t.iter()
            .map(|(f, c)| ((f % dim) * dim + f / dim, c.clone())),
    )
}

/// Applies one linear map per tensor leg. `maps[k]` acts on leg `k`; legs may
/// change dimension.
pub fn apply_legwise(maps: &[&Mat], t: &SparseVec) -> SparseVec {
    let src = TensorIndex::new(maps.iter().map(|m| m.cols()).collect());
    let out_dim: usize = maps.iter().map(|m| m.rows()).product();
    assert_eq!(t.dim(), src.total(), "tensor dimension mismatch");
    let mut out = SparseVec::zeros(out_dim);
    for (flat, c) in t.iter() {
        let ii = src.unflatten(flat);
        let mut v = SparseVec::basis(1, 0).scaled(c);
        for (m, &i) in maps.iter().zip(&ii) {
            v = v.tensor(m.column(i));
            if v.is_zero() {
                break;
            }
        }
        out.add_scaled(&Rational::one(), &v);
    }
    out
}

/// Coassociativity and counit law on every basis element, plus
/// cocommutativity recorded as information.
pub fn verify_coalgebra(c: &StructCoalgebra) -> Report {
    let n = c.dim();
    let mut r = Report::new();
    let coassoc = (0..n).find(|&i| {
        let d = c.comult_basis(i);
        c.comult_at(d, 2, 0) != c.comult_at(d, 2, 1)
    });
    r.record("COALG.coassoc", coassoc.map(|i| json!({"a": i})));

    let counit = (0..n).find(|&i| {
        let e = SparseVec::basis(n, i);
        let d = c.comult_basis(i);
        c.counit_at(d, 2, 0) != e || c.counit_at(d, 2, 1) != e
    });
    r.record("COALG.counit", counit.map(|i| json!({"a": i})));

    match c.cocommutativity_witness() {
        None => r.info("COALG.cocommutative", json!({"holds": true})),
        Some(i) => r.info("COALG.cocommutative", json!({"holds": false, "a": i})),
    }
    r
}

fn hom_failure(src: &StructCoalgebra, tgt: &StructCoalgebra, f: &Mat, anti: bool) -> Option<Value> {
    for i in 0..src.dim() {
        let image = f.column(i);
        if tgt.counit(image) != *src.counit_basis(i) {
            return Some(json!({"a": i, "law": "counit"}));
        }
        let lhs = tgt.comult(image);
        let mut rhs = apply_legwise(&[f, f], src.comult_basis(i));
        if anti {
            rhs = twist(&rhs, tgt.dim());
        }
        if lhs != rhs {
            return Some(json!({"a": i, "law": "comult"}));
        }
    }
    None
}

/// Witness for the first basis element where `Δ'f = (f⊗f)Δ` or `ε'f = ε` fails.
pub fn coalgebra_hom_failure(
    src: &StructCoalgebra,
    tgt: &StructCoalgebra,
    f: &Mat,
) -> Option<Value> {
    hom_failure(src, tgt, f, false)
}

pub fn coalgebra_antihom_failure(
    src: &StructCoalgebra,
    tgt: &StructCoalgebra,
    f: &Mat,
) -> Option<Value> {
    hom_failure(src, tgt, f, true)
}

pub fn is_coalgebra_hom(src: &StructCoalgebra, tgt: &StructCoalgebra, f: &Mat) -> bool {
    coalgebra_hom_failure(src, tgt, f).is_none()
}

pub fn is_coalgebra_antihom(src: &StructCoalgebra, tgt: &StructCoalgebra, f: &Mat) -> bool {
    coalgebra_antihom_failure(src, tgt, f).is_none()
}
