//! Rota-Baxter systems of cocommutative Hopf algebras.
//!
//! A system `(H, B₁, B₂)` consists of two coalgebra endomorphisms fixing `1`
//! such that
//!
//! ```text
//! B₁(a)B₁(b) = B₁(a ∘ b),   B₂(a)B₂(b) = B₂(a ∘ b),
//! a ∘ b = B₁(a₁) b S(B₂(a₂)).
//! ```
//!
//! The cocycle is `σ(a) = B₁(a₁) S(B₂(a₂)) = a ∘ 1`. Everything here is
//! checked exactly on basis elements.

mod descendent;
mod graph;
mod restrict;
mod truss;

pub use descendent::{descendent_hopf, image_subhopf, DescendentHopf, Which};
pub use graph::{graph_check, graph_is_subbialgebra, triple_bialgebra, TripleBialgebra};
pub use restrict::restrict_to_group_likes;
pub use truss::{check_hopf_brace, check_hopf_truss};

use serde_json::json;

use crate::error::{Error, Result};
use crate::hopf::{
    algebra_hom_failure, coalgebra_hom_failure, Bilinear, StructAlgebra, StructHopf,
};
use crate::linalg::{Mat, SparseVec};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBSystem {
    h: StructHopf,
    b1: Mat,
    b2: Mat,
    sigma: Mat,
    circ: Bilinear,
}

impl RBSystem {
    /// Builds the system and runs [`check_hopf_rbs`]; failures are returned as
    /// an error carrying the report.
    pub fn new(h: StructHopf, b1: Mat, b2: Mat) -> Result<Self> {
        let report = check_hopf_rbs(&h, &b1, &b2);
        if !report.passed() {
            return Err(Error::verification("Rota-Baxter system", report));
        }
        Self::new_unchecked(h, b1, b2)
    }

    /// Computes the cached cocycle and descendent operation without checking
    /// any axiom. For negative controls and `--unchecked` input.
    pub fn new_unchecked(h: StructHopf, b1: Mat, b2: Mat) -> Result<Self> {
        let n = h.dim();
        for (name, m) in [("B1", &b1), ("B2", &b2)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::dim(
                    format!("operator {name}"),
                    n,
                    m.rows().max(m.cols()),
                ));
            }
        }
        let sb2 = h.antipode().compose(&b2);
        let sigma = h.convolve(&b1, &sb2)?;
        let circ = descendent_table(&h, &b1, &sb2);
        Ok(RBSystem {
            h,
            b1,
            b2,
            sigma,
            circ,
        })
    }

    pub fn hopf(&self) -> &StructHopf {
        &self.h
    }

    pub fn b1(&self) -> &Mat {
        &self.b1
    }

    pub fn b2(&self) -> &Mat {
        &self.b2
    }

    pub fn b(&self, which: Which) -> &Mat {
        match which {
            Which::B1 => &self.b1,
            Which::B2 => &self.b2,
        }
    }

    /// The cocycle `σ = B₁ ∗ (S ∘ B₂)`.
    pub fn sigma(&self) -> &Mat {
        &self.sigma
    }

    /// The descendent operation `a ∘ b` on basis pairs.
    pub fn circ(&self) -> &Bilinear {
        &self.circ
    }

    pub fn descendent_op(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.circ.apply(a, b)
    }

    pub fn sigma_is_identity(&self) -> bool {
        self.sigma.is_identity()
    }
}

/// Cocycle `σ(a) = B₁(a₁) S(B₂(a₂))` as a matrix.
pub fn cocycle(s: &RBSystem) -> &Mat {
    s.sigma()
}

pub fn descendent_op(s: &RBSystem, a: &SparseVec, b: &SparseVec) -> SparseVec {
    s.descendent_op(a, b)
}

/// `a ∘ b = B₁(a₁) b S(B₂(a₂))` on basis pairs; `sb2` is `S ∘ B₂`.
fn descendent_table(h: &StructHopf, b1: &Mat, sb2: &Mat) -> Bilinear {
    let n = h.dim();
    let terms: Vec<_> = (0..n).map(|i| h.coalgebra().terms(i)).collect();
    Bilinear::from_fn(n, |i, j| {
        let e = h.basis_vec(j);
        let mut out = SparseVec::zeros(n);
        for (c, l, r) in &terms[i] {
            out.add_scaled(c, &h.product([b1.column(*l), &e, sb2.column(*r)]));
        }
        out
    })
}

fn first_pair(n: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<serde_json::Value> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| bad(i, j))
        .map(|(i, j)| json!({"a": i, "b": j}))
}

fn cocommutative_check(r: &mut Report, id: &str, h: &StructHopf) {
    r.record(
        id,
        h.coalgebra()
            .cocommutativity_witness()
            .map(|i| json!({"a": i})),
    );
}

/// Coalgebra-homomorphism property of both maps, `B₁(1) = B₂(1) = 1`, and the
/// two defining identities on all basis pairs.
pub fn check_hopf_rbs(h: &StructHopf, b1: &Mat, b2: &Mat) -> Report {
    let n = h.dim();
    let mut r = Report::new();
    if b1.rows() != n || b1.cols() != n || b2.rows() != n || b2.cols() != n {
        r.fail("RBS.shape", json!({"dim": n}));
        return r;
    }
    cocommutative_check(&mut r, "RBS.cocommutative", h);
    r.record(
        "RBS.b1_coalg_hom",
        coalgebra_hom_failure(h.coalgebra(), h.coalgebra(), b1),
    );
    r.record(
        "RBS.b2_coalg_hom",
        coalgebra_hom_failure(h.coalgebra(), h.coalgebra(), b2),
    );
    let unit_bad = if b1.apply(h.unit()) != *h.unit() {
        Some(json!({"map": "B1"}))
    } else if b2.apply(h.unit()) != *h.unit() {
        Some(json!({"map": "B2"}))
    } else {
        None
    };
    r.record("RBS.unit", unit_bad);

    let sb2 = h.antipode().compose(b2);
    let circ = descendent_table(h, b1, &sb2);
    r.record(
        "RB1",
        first_pair(n, |i, j| {
            h.mul(b1.column(i), b1.column(j)) != b1.apply(circ.basis(i, j))
        }),
    );
    r.record(
        "RB2",
        first_pair(n, |i, j| {
            h.mul(b2.column(i), b2.column(j)) != b2.apply(circ.basis(i, j))
        }),
    );
    r
}

/// A Rota-Baxter operator on a cocommutative Hopf algebra:
/// `B(a)B(b) = B(a₁ B(a₂) b S(B(a₃)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBHopf {
    h: StructHopf,
    b: Mat,
}

impl RBHopf {
    pub fn new(h: StructHopf, b: Mat) -> Result<Self> {
        let report = check_rb_hopf(&h, &b);
        if !report.passed() {
            return Err(Error::verification("Rota-Baxter operator", report));
        }
        Ok(RBHopf { h, b })
    }

    pub fn hopf(&self) -> &StructHopf {
        &self.h
    }

    pub fn operator(&self) -> &Mat {
        &self.b
    }

    /// `a ∘ b = a₁ B(a₂) b S(B(a₃))` on basis pairs.
    pub fn descendent_table(&self) -> Bilinear {
        let h = &self.h;
        let sb = h.antipode().compose(&self.b);
        let n = h.dim();
        Bilinear::from_fn(n, |i, j| {
            let e_j = h.basis_vec(j);
            let mut out = SparseVec::zeros(n);
            for (c, idx) in h.sweedler_terms(i, 3) {
                let a1 = h.basis_vec(idx[0]);
                out.add_scaled(
                    &c,
                    &h.product([&a1, self.b.column(idx[1]), &e_j, sb.column(idx[2])]),
                );
            }
            out
        })
    }

    /// `T(a) = S(B(a₁)) S(a₂) B(a₃)`.
    pub fn descendent_antipode(&self) -> Mat {
        let h = &self.h;
        let sb = h.antipode().compose(&self.b);
        let cols = (0..h.dim())
            .map(|i| {
                let mut out = SparseVec::zeros(h.dim());
                for (c, idx) in h.sweedler_terms(i, 3) {
                    out.add_scaled(
                        &c,
                        &h.product([
                            sb.column(idx[0]),
                            h.antipode().column(idx[1]),
                            self.b.column(idx[2]),
                        ]),
                    );
                }
                out
            })
            .collect();
        Mat::from_columns(h.dim(), cols).expect("square")
    }

    /// `(H, ∘, 1, Δ, ε, T)` assembled without verification.
    pub fn descendent_structure(&self) -> Result<StructHopf> {
        let alg = StructAlgebra::new(
            self.h.basis_names().to_vec(),
            self.descendent_table(),
            self.h.unit().clone(),
        )?;
        self.h.with_algebra(
            format!("{}_circ", self.h.name()),
            alg,
            self.descendent_antipode(),
        )
    }
}

/// Coalgebra-homomorphism property and the operator identity on all basis
/// pairs.
pub fn check_rb_hopf(h: &StructHopf, b: &Mat) -> Report {
    let n = h.dim();
    let mut r = Report::new();
    if b.rows() != n || b.cols() != n {
        r.fail("RBH.shape", json!({"dim": n}));
        return r;
    }
    cocommutative_check(&mut r, "RBH.cocommutative", h);
    r.record(
        "RBH.coalg_hom",
        coalgebra_hom_failure(h.coalgebra(), h.coalgebra(), b),
    );
    let rb = RBHopf {
        h: h.clone(),
        b: b.clone(),
    };
    let circ = rb.descendent_table();
    r.record(
        "HRB",
        first_pair(n, |i, j| {
            h.mul(b.column(i), b.column(j)) != b.apply(circ.basis(i, j))
        }),
    );
    r
}

/// `(H, id ∗ B, B)`; its cocycle is the identity.
pub fn from_rb_hopf(rb: &RBHopf) -> Result<RBSystem> {
    let h = rb.hopf().clone();
    let b1 = h.convolve(&Mat::identity(h.dim()), rb.operator())?;
    let s = RBSystem::new(h, b1, rb.operator().clone())?;
    if !s.sigma_is_identity() {
        let mut report = Report::new();
        report.fail("FROMRB.sigma_identity", json!({"rank": s.sigma().rank()}));
        return Err(Error::contradiction(
            "system induced by a Rota-Baxter operator",
            report,
        ));
    }
    Ok(s)
}

fn first_column_mismatch(a: &Mat, b: &Mat) -> Option<serde_json::Value> {
    (0..a.cols())
        .find(|&j| a.column(j) != b.column(j))
        .map(|j| json!({"a": j}))
}

/// `B₁σ = B₁`, `B₂σ = B₂`, `σ² = σ`, `σ` a coalgebra map, plus the two unit
/// laws of the descendent operation (`a ∘ 1 = σ(a)`, `1 ∘ a = a`) and the
/// convolution form of `σ` recomputed from the operation.
pub fn lemma_idm(s: &RBSystem) -> Report {
    let h = s.hopf();
    let sigma = s.sigma();
    let mut r = Report::new();
    r.record(
        "IDM.b1_sigma",
        first_column_mismatch(&s.b1().compose(sigma), s.b1()),
    );
    r.record(
        "IDM.b2_sigma",
        first_column_mismatch(&s.b2().compose(sigma), s.b2()),
    );
    r.record(
        "IDM.sigma_idem",
        first_column_mismatch(&sigma.compose(sigma), sigma),
    );
    r.record(
        "IDM.sigma_coalg_hom",
        coalgebra_hom_failure(h.coalgebra(), h.coalgebra(), sigma),
    );
    let n = h.dim();
    let right = (0..n).find(|&i| s.descendent_op(&h.basis_vec(i), h.unit()) != *sigma.column(i));
    r.record("IDM.circ_right_unit", right.map(|i| json!({"a": i})));
    let left = (0..n).find(|&i| s.descendent_op(h.unit(), &h.basis_vec(i)) != h.basis_vec(i));
    r.record("IDM.circ_left_unit", left.map(|i| json!({"a": i})));
    r
}

/// When `σ` is surjective, checks that `(H, B₂)` and `(H, B₁ ∘ S)` are
/// Rota-Baxter operators; otherwise reports that the hypothesis is not met.
pub fn sigma_surjective_consequence(s: &RBSystem) -> Report {
    let h = s.hopf();
    let rank = s.sigma().rank();
    let mut r = Report::new();
    r.info("SURJ.rank", json!({"rank": rank, "dim": h.dim()}));
    if rank == h.dim() {
        r.extend_prefixed("SURJ.B2", check_rb_hopf(h, s.b2()));
        r.extend_prefixed("SURJ.B1S", check_rb_hopf(h, &s.b1().compose(h.antipode())));
    } else {
        r.skip(
            "SURJ.hypothesis",
            "hypothesis not met: sigma is not surjective",
        );
    }
    r
}

/// `φ` a bialgebra endomorphism, `B` a coalgebra endomorphism, and
/// `B(a)B(b) = B(B(a₁) b S(φ(B(a₂))))` on all basis pairs.
pub fn check_twisted(h: &StructHopf, b: &Mat, phi: &Mat) -> Report {
    let n = h.dim();
    let mut r = Report::new();
    cocommutative_check(&mut r, "TW.cocommutative", h);
    r.record(
        "TW.phi_alg_hom",
        algebra_hom_failure(h.algebra(), h.algebra(), phi),
    );
    r.record(
        "TW.phi_coalg_hom",
        coalgebra_hom_failure(h.coalgebra(), h.coalgebra(), phi),
    );
    r.record(
        "TW.b_coalg_hom",
        coalgebra_hom_failure(h.coalgebra(), h.coalgebra(), b),
    );
    let s_phi_b = h.antipode().compose(phi).compose(b);
    let circ = descendent_table(h, b, &s_phi_b);
    r.record(
        "TW",
        first_pair(n, |i, j| {
            h.mul(b.column(i), b.column(j)) != b.apply(circ.basis(i, j))
        }),
    );
    r
}

/// `(H, B, φ ∘ B)` for a `φ`-twisted operator `B`, verified as a system.
pub fn twisted_to_system(h: &StructHopf, b: &Mat, phi: &Mat) -> Result<RBSystem> {
    let report = check_twisted(h, b, phi);
    for id in ["TW.phi_alg_hom", "TW.phi_coalg_hom"] {
        if let Some(c) = report
            .get(id)
            .filter(|c| c.status == crate::report::Status::Fail)
        {
            return Err(Error::Precondition(format!(
                "phi is not a bialgebra homomorphism ({} at {})",
                c.id,
                c.witness
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or_default()
            )));
        }
    }
    if !report.passed() {
        return Err(Error::verification("twisted Rota-Baxter operator", report));
    }
    RBSystem::new(h.clone(), b.clone(), phi.compose(b))
}
