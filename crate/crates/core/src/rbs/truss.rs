use serde_json::json;

use crate::hopf::{coalgebra_hom_failure, verify_hopf, Bilinear, StructHopf};
use crate::linalg::{Mat, SparseVec};
use crate::report::Report;

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

/// Hopf-truss conditions for an operation `∘` with cocycle `σ` on the coalgebra
/// of `h`:
///
/// - `σ` is a coalgebra endomorphism;
/// - `∘` is a coalgebra map `H ⊗ H → H` and associative;
/// - `a ∘ (bc) = (a₁ ∘ b) S(σ(a₂)) (a₃ ∘ c)`.
///
/// Whether `1 ∘ a = a` is reported as information.
pub fn check_hopf_truss(h: &StructHopf, circ: &Bilinear, sigma: &Mat) -> Report {
    let n = h.dim();
    let c = h.coalgebra();
    let mut r = Report::new();
    r.record("HTS.sigma_coalg_hom", coalgebra_hom_failure(c, c, sigma));

    let comult = pairs(n).find(|&(i, j)| {
        let lhs = c.comult(circ.basis(i, j));
        let mut rhs = SparseVec::zeros(n * n);
        for (x, i1, i2) in c.terms(i) {
            for (y, j1, j2) in c.terms(j) {
                rhs.add_scaled(&(&x * &y), &circ.basis(i1, j1).tensor(circ.basis(i2, j2)));
            }
        }
        lhs != rhs
    });
    r.record(
        "HTS.circ_comult",
        comult.map(|(i, j)| json!({"a": i, "b": j})),
    );

    let counit = pairs(n)
        .find(|&(i, j)| c.counit(circ.basis(i, j)) != c.counit_basis(i) * c.counit_basis(j));
    r.record(
        "HTS.circ_counit",
        counit.map(|(i, j)| json!({"a": i, "b": j})),
    );

    let assoc = triples(n).find(|&(i, j, k)| {
        let left = circ.apply(circ.basis(i, j), &h.basis_vec(k));
        let right = circ.apply(&h.basis_vec(i), circ.basis(j, k));
        left != right
    });
    r.record(
        "HTS.assoc",
        assoc.map(|(i, j, k)| json!({"a": i, "b": j, "c": k})),
    );

    let s_sigma = h.antipode().compose(sigma);
    let truss = triples(n).find(|&(i, j, k)| {
        let lhs = circ.apply(&h.basis_vec(i), h.algebra().mul_basis(j, k));
        let (b, cc) = (h.basis_vec(j), h.basis_vec(k));
        let mut rhs = SparseVec::zeros(n);
        for (coef, idx) in h.sweedler_terms(i, 3) {
            let left = circ.apply(&h.basis_vec(idx[0]), &b);
            let right = circ.apply(&h.basis_vec(idx[2]), &cc);
            rhs.add_scaled(&coef, &h.product([&left, s_sigma.column(idx[1]), &right]));
        }
        lhs != rhs
    });
    r.record(
        "HTS",
        truss.map(|(i, j, k)| json!({"a": i, "b": j, "c": k})),
    );

    let left_unit = (0..n).find(|&i| circ.apply(h.unit(), &h.basis_vec(i)) != h.basis_vec(i));
    match left_unit {
        None => r.info("HTS.left_unit", json!({"holds": true})),
        Some(i) => r.info("HTS.left_unit", json!({"holds": false, "a": i})),
    }
    r
}

/// Hopf-brace conditions for a second Hopf structure `hcirc` on the same
/// coalgebra as `h`: both are Hopf algebras, they share unit, and
/// `a ∘ (bc) = (a₁ ∘ b) S(a₂) (a₃ ∘ c)`.
pub fn check_hopf_brace(h: &StructHopf, hcirc: &StructHopf) -> Report {
    let n = h.dim();
    let mut r = Report::new();
    r.record_bool(
        "HB.coalgebra_match",
        h.coalgebra() == hcirc.coalgebra(),
        json!({"reason": "the two structures have different coalgebras"}),
    );
    let base = verify_hopf(h);
    r.record(
        "HB.base_hopf",
        base.failures()
            .next()
            .map(|c| json!({"check": c.id, "witness": c.witness})),
    );
    let circ_report = verify_hopf(hcirc);
    let circ_fail = circ_report
        .failures()
        .next()
        .map(|c| json!({"check": c.id, "witness": c.witness}));
    let circ_ok = circ_fail.is_none();
    r.record("HB.circ_hopf", circ_fail);
    if !circ_ok || r.status("HB.coalgebra_match") != Some(crate::report::Status::Pass) {
        r.skip(
            "HB",
            "second structure is not a Hopf algebra on the same coalgebra",
        );
        r.skip(
            "HB.unit",
            "second structure is not a Hopf algebra on the same coalgebra",
        );
        return r;
    }

    let circ = hcirc.algebra().mult();
    let brace = triples(n).find(|&(i, j, k)| {
        let lhs = circ.apply(&h.basis_vec(i), h.algebra().mul_basis(j, k));
        let (b, c) = (h.basis_vec(j), h.basis_vec(k));
        let mut rhs = SparseVec::zeros(n);
        for (coef, idx) in h.sweedler_terms(i, 3) {
            let left = circ.apply(&h.basis_vec(idx[0]), &b);
            let right = circ.apply(&h.basis_vec(idx[2]), &c);
            rhs.add_scaled(
                &coef,
                &h.product([&left, h.antipode().column(idx[1]), &right]),
            );
        }
        lhs != rhs
    });
    r.record("HB", brace.map(|(i, j, k)| json!({"a": i, "b": j, "c": k})));
    r.record_bool(
        "HB.unit",
        h.unit() == hcirc.unit(),
        json!({"reason": "units differ"}),
    );
    r
}
