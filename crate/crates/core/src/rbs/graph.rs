//! The bialgebra `H ⊗ H ⊗ H` with product
//!
//! ```text
//! (a⊗b⊗c)(a'⊗b'⊗c') = a₁a' ⊗ ε(b) a₂ b' S(c₂) ⊗ c₁c'
//! ```
//!
//! and legwise coproduct, and the graph `span{B₁(a₁) ⊗ a₂ ⊗ B₂(a₃)}` of a pair
//! of operators inside it.

use serde_json::json;

use crate::error::{Error, Result};
use crate::hopf::{
    coalgebra_hom_failure, verify_algebra, verify_bialgebra, verify_coalgebra, Bilinear,
    StructAlgebra, StructCoalgebra, StructHopf,
};
use crate::linalg::{Mat, SparseVec, Subspace, TensorIndex};
use crate::rational::Rational;
use crate::report::{Report, Status};

/// Eager structure constants of the triple product. The multiplication table
/// has `dim⁶` entries, so this is meant for small `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleBialgebra {
    algebra: StructAlgebra,
    coalgebra: StructCoalgebra,
}

impl TripleBialgebra {
    pub fn algebra(&self) -> &StructAlgebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &StructCoalgebra {
        &self.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Associativity, unit, coassociativity, counit and compatibility, with
    /// ids prefixed `TRIPLE`.
    pub fn verify(&self) -> Report {
        let mut r = verify_algebra(&self.algebra);
        r.extend(verify_coalgebra(&self.coalgebra));
        r.extend(verify_bialgebra(&self.algebra, &self.coalgebra));
        let mut out = Report::new();
        out.extend_prefixed("TRIPLE", r);
        out
    }
}

fn triple_mul_basis(h: &StructHopf, x: &[usize], y: &[usize]) -> SparseVec {
    let n = h.dim();
    let idx = TensorIndex::power(n, 3);
    let mut out = SparseVec::zeros(idx.total());
    let eps_b = h.coalgebra().counit_basis(x[1]);
    if eps_b.is_zero() {
        return out;
    }
    let (b2, a2, c2) = (h.basis_vec(y[1]), h.basis_vec(y[0]), h.basis_vec(y[2]));
    for (alpha, a_1, a_2) in h.coalgebra().terms(x[0]) {
        let left = h.mul(&h.basis_vec(a_1), &a2);
        for (gamma, c_1, c_2) in h.coalgebra().terms(x[2]) {
            let coef = &(eps_b * &alpha) * &gamma;
            let middle = h.product([&h.basis_vec(a_2), &b2, h.antipode().column(c_2)]);
            let right = h.mul(&h.basis_vec(c_1), &c2);
            out.add_scaled(&coef, &left.tensor(&middle).tensor(&right));
        }
    }
    out
}

fn triple_mul(h: &StructHopf, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let idx = TensorIndex::power(h.dim(), 3);
    let mut out = SparseVec::zeros(idx.total());
    for (fx, cx) in x.iter() {
        let ix = idx.unflatten(fx);
        for (fy, cy) in y.iter() {
            out.add_scaled(&(cx * cy), &triple_mul_basis(h, &ix, &idx.unflatten(fy)));
        }
    }
    out
}

fn triple_comult(h: &StructHopf, x: &SparseVec) -> SparseVec {
    let n = h.dim();
    let idx = TensorIndex::power(n, 3);
    let big = idx.total();
    let mut out = SparseVec::zeros(big * big);
    for (f, c) in x.iter() {
        let ii = idx.unflatten(f);
        for (p, a1, a2) in h.coalgebra().terms(ii[0]) {
            for (q, b1, b2) in h.coalgebra().terms(ii[1]) {
                for (r, c1, c2) in h.coalgebra().terms(ii[2]) {
                    let coef = &(&(c * &p) * &q) * &r;
                    let at = idx.flatten(&[a1, b1, c1]) * big + idx.flatten(&[a2, b2, c2]);
                    out.add_at(at, &coef);
                }
            }
        }
    }
    out
}

/// The triple-product bialgebra on `H ⊗ H ⊗ H`. Requires `H` cocommutative.
pub fn triple_bialgebra(h: &StructHopf) -> Result<TripleBialgebra> {
    if !h.is_cocommutative() {
        return Err(Error::Precondition(
            "the triple product needs a cocommutative Hopf algebra".into(),
        ));
    }
    let n = h.dim();
    let idx = TensorIndex::power(n, 3);
    let total = idx.total();
    let names: Vec<String> = (0..total)
        .map(|f| {
            let ii = idx.unflatten(f);
            ii.iter()
                .map(|&i| h.basis_names()[i].as_str())
                .collect::<Vec<_>>()
                .join("⊗")
        })
        .collect();
    let mult = Bilinear::from_fn(total, |i, j| {
        triple_mul_basis(h, &idx.unflatten(i), &idx.unflatten(j))
    });
    let unit = h.unit().tensor(h.unit()).tensor(h.unit());
    let algebra = StructAlgebra::new(names.clone(), mult, unit)?;
    let comult = (0..total)
        .map(|f| triple_comult(h, &SparseVec::basis(total, f)))
        .collect();
    let counit = (0..total)
        .map(|f| {
            idx.unflatten(f)
                .iter()
                .map(|&i| h.coalgebra().counit_basis(i).clone())
                .fold(Rational::one(), |a, b| &a * &b)
        })
        .collect();
    let coalgebra = StructCoalgebra::new(names, comult, counit)?;
    Ok(TripleBialgebra { algebra, coalgebra })
}

fn render(h: &StructHopf, v: &SparseVec) -> String {
    let idx = TensorIndex::power(h.dim(), 3);
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(f, c)| {
            let names: Vec<&str> = idx
                .unflatten(f)
                .iter()
                .map(|&i| h.basis_names()[i].as_str())
                .collect();
            format!("{c}*{}", names.join("⊗"))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The generator `B₁(a₁) ⊗ a₂ ⊗ B₂(a₃)` for a basis element `a`.
fn graph_generator(h: &StructHopf, b1: &Mat, b2: &Mat, i: usize) -> SparseVec {
    let n = h.dim();
    let mut out = SparseVec::zeros(n * n * n);
    for (c, idx) in h.sweedler_terms(i, 3) {
        out.add_scaled(
            &c,
            &b1.column(idx[0])
                .tensor(&h.basis_vec(idx[1]))
                .tensor(b2.column(idx[2])),
        );
    }
    out
}

/// Whether the graph of `(B₁, B₂)` is a subbialgebra of the triple product.
/// The operator preconditions are reported alongside and do not short-cut the
/// closure checks.
pub fn graph_check(h: &StructHopf, b1: &Mat, b2: &Mat) -> Report {
    let n = h.dim();
    let mut r = Report::new();
    if !h.is_cocommutative() {
        r.fail(
            "GRAPH.cocommutative",
            json!({"a": h.coalgebra().cocommutativity_witness()}),
        );
        return r;
    }
    r.record(
        "GRAPH.b1_coalg_hom",
        coalgebra_hom_failure(h.coalgebra(), h.coalgebra(), b1),
    );
    r.record(
        "GRAPH.b2_coalg_hom",
        coalgebra_hom_failure(h.coalgebra(), h.coalgebra(), b2),
    );
    let unit_fixed = b1.apply(h.unit()) == *h.unit() && b2.apply(h.unit()) == *h.unit();
    r.record_bool(
        "GRAPH.unit_fixed",
        unit_fixed,
        json!({"reason": "an operator moves 1"}),
    );

    let gens: Vec<SparseVec> = (0..n).map(|i| graph_generator(h, b1, b2, i)).collect();
    let gr = Subspace::span(n * n * n, gens.iter().cloned());
    r.info("GRAPH.dim", json!({"dim": gr.dim()}));

    let unit = h.unit().tensor(h.unit()).tensor(h.unit());
    r.record_bool(
        "GRAPH.unit",
        gr.contains(&unit),
        json!({"reason": "1⊗1⊗1 is not in the graph"}),
    );

    let mult = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find_map(|(i, j)| {
            let p = triple_mul(h, &gens[i], &gens[j]);
            (!gr.contains(&p)).then(|| json!({"a": i, "b": j, "product": render(h, &p)}))
        });
    r.record("GRAPH.mult_closure", mult);

    let comult = (0..n).find(|&i| {
        gr.tensor_square_coordinates(&triple_comult(h, &gens[i]))
            .is_none()
    });
    r.record("GRAPH.comult_closure", comult.map(|i| json!({"a": i})));
    r
}

/// True iff the graph contains the unit and is closed under the triple
/// product and coproduct.
pub fn graph_is_subbialgebra(h: &StructHopf, b1: &Mat, b2: &Mat) -> bool {
    let r = graph_check(h, b1, b2);
    ["GRAPH.unit", "GRAPH.mult_closure", "GRAPH.comult_closure"]
        .iter()
        .all(|id| r.status(id) == Some(Status::Pass))
}
