use serde_json::json;

use super::RBSystem;
use crate::error::{Error, Result};
use crate::hopf::{
    algebra_hom_failure, coalgebra_hom_failure, verify_hopf, Bilinear, StructAlgebra,
    StructCoalgebra, StructHopf,
};
use crate::linalg::{Mat, SparseVec, Subspace};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    B1,
    B2,
}

impl Which {
    pub fn label(self) -> &'static str {
        match self {
            Which::B1 => "B1",
            Which::B2 => "B2",
        }
    }
}

/// `H₁ = Im σ` with the descendent operation, the restricted coalgebra and
/// antipode `T(a) = S(B₁(a₁)) B₂(a₂)`, written in the canonical (reduced)
/// basis of `Im σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendentHopf {
    hopf: StructHopf,
    subspace: Subspace,
    embed: Mat,
    project: Mat,
}

impl DescendentHopf {
    pub fn hopf(&self) -> &StructHopf {
        &self.hopf
    }

    pub fn dim(&self) -> usize {
        self.hopf.dim()
    }

    /// `Im σ` inside `H`.
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// `H₁ → H`, columns are the basis of `Im σ`.
    pub fn embedding(&self) -> &Mat {
        &self.embed
    }

    /// `H → H₁` reading pivot coordinates; a left inverse of the embedding.
    pub fn projection(&self) -> &Mat {
        &self.project
    }
}

fn basis_label(h: &StructHopf, u: &SparseVec, k: usize) -> String {
    match u.iter().collect::<Vec<_>>().as_slice() {
        [(i, c)] if c.is_one() => h.basis_names()[*i].clone(),
        _ => format!("u{k}"),
    }
}

fn closure_error(id: &str, witness: serde_json::Value) -> Error {
    let mut r = Report::new();
    r.fail(id, witness);
    Error::contradiction("descendent Hopf algebra", r)
}

/// Builds `(Im σ, ∘, 1, Δ|, ε|, T)` and verifies it as a Hopf algebra.
///
/// A failure of closure or of any Hopf axiom contradicts the theory for a
/// verified system and is returned as [`Error::Contradiction`].
pub fn descendent_hopf(s: &RBSystem) -> Result<DescendentHopf> {
    let h = s.hopf();
    let n = h.dim();
    let sub = Subspace::span(n, s.sigma().columns().iter().cloned());
    let k = sub.dim();
    let basis = sub.basis().to_vec();

    let unit = sub.coordinates(h.unit()).ok_or_else(|| {
        closure_error(
            "DESC.unit",
            json!({"reason": "1 is not in the image of sigma"}),
        )
    })?;

    let mut table = vec![vec![SparseVec::zeros(k); k]; k];
    for p in 0..k {
        for q in 0..k {
            let prod = s.descendent_op(&basis[p], &basis[q]);
            table[p][q] = sub
                .coordinates(&prod)
                .ok_or_else(|| closure_error("DESC.circ_closure", json!({"a": p, "b": q})))?;
        }
    }

    let mut comult = Vec::with_capacity(k);
    let mut counit = Vec::with_capacity(k);
    for (p, u) in basis.iter().enumerate() {
        let d = h.comult(u);
        comult.push(
            sub.tensor_square_coordinates(&d)
                .ok_or_else(|| closure_error("DESC.comult_closure", json!({"a": p})))?,
        );
        counit.push(h.counit(u));
    }

    // T on all of H, then restricted.
    let sb1 = h.antipode().compose(s.b1());
    let t_cols = (0..n)
        .map(|i| {
            let mut out = SparseVec::zeros(n);
            for (c, l, r) in h.coalgebra().terms(i) {
                out.add_scaled(&c, &h.mul(sb1.column(l), s.b2().column(r)));
            }
            out
        })
        .collect();
    let t_full = Mat::from_columns(n, t_cols)?;
    let mut t_cols = Vec::with_capacity(k);
    for (p, u) in basis.iter().enumerate() {
        t_cols.push(
            sub.coordinates(&t_full.apply(u))
                .ok_or_else(|| closure_error("DESC.antipode_closure", json!({"a": p})))?,
        );
    }

    let names: Vec<String> = basis
        .iter()
        .enumerate()
        .map(|(p, u)| basis_label(h, u, p))
        .collect();
    let algebra = StructAlgebra::new(names.clone(), Bilinear::new(k, table)?, unit)?;
    let coalgebra = StructCoalgebra::new(names, comult, counit)?;
    let hopf = StructHopf::from_parts_unchecked(
        format!("{}_1", h.name()),
        algebra,
        coalgebra,
        Mat::from_columns(k, t_cols)?,
    )?;
    let report = verify_hopf(&hopf);
    if !report.passed() {
        return Err(Error::contradiction("descendent Hopf algebra", report));
    }
    let embed = sub.embedding();
    let project = sub.pivot_projection();
    Ok(DescendentHopf {
        hopf,
        subspace: sub,
        embed,
        project,
    })
}

/// `Bᵢ: H₁ → H` is a Hopf-algebra map and its image is a Hopf subalgebra of
/// `H`. Check ids are prefixed `SUB.B1` or `SUB.B2`.
pub fn image_subhopf(s: &RBSystem, d: &DescendentHopf, which: Which) -> Report {
    let h = s.hopf();
    let n = h.dim();
    let bi = s.b(which);
    let f = bi.compose(d.embedding());
    let mut r = Report::new();

    r.record(
        "alg_hom",
        algebra_hom_failure(d.hopf().algebra(), h.algebra(), &f),
    );
    r.record(
        "coalg_hom",
        coalgebra_hom_failure(d.hopf().coalgebra(), h.coalgebra(), &f),
    );
    let lhs = f.compose(d.hopf().antipode());
    let rhs = h.antipode().compose(&f);
    r.record(
        "antipode",
        (0..f.cols())
            .find(|&p| lhs.column(p) != rhs.column(p))
            .map(|p| json!({"a": p})),
    );

    let im = Subspace::span(n, bi.columns().iter().cloned());
    r.info("image_dim", json!({"dim": im.dim()}));
    r.record_bool(
        "image_unit",
        im.contains(h.unit()),
        json!({"reason": "1 is not in the image"}),
    );
    let basis = im.basis();
    let mult = (0..basis.len())
        .flat_map(|p| (0..basis.len()).map(move |q| (p, q)))
        .find(|&(p, q)| !im.contains(&h.mul(&basis[p], &basis[q])));
    r.record("image_mult", mult.map(|(p, q)| json!({"a": p, "b": q})));
    let comult =
        (0..basis.len()).find(|&p| im.tensor_square_coordinates(&h.comult(&basis[p])).is_none());
    r.record("image_comult", comult.map(|p| json!({"a": p})));
    let anti = (0..basis.len()).find(|&p| !im.contains(&h.apply_antipode(&basis[p])));
    r.record("image_antipode", anti.map(|p| json!({"a": p})));

    let mut out = Report::new();
    out.extend_prefixed(&format!("SUB.{}", which.label()), r);
    out
}
