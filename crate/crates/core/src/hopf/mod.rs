//! Structure-constant Hopf algebras.
//!
//! A [`StructHopf`] bundles an algebra and a coalgebra on the same ordered
//! basis with an antipode matrix. All axioms are checked on basis elements,
//! which suffices by multilinearity. [`StructHopf::new`] refuses data that
//! fails [`verify_hopf`]; [`StructHopf::from_parts_unchecked`] exists for
//! negative controls and `--unchecked` loading.

mod algebra;
mod coalgebra;

pub use algebra::{algebra_hom_failure, verify_algebra, Bilinear, StructAlgebra};
pub use coalgebra::{
    apply_legwise, coalgebra_antihom_failure, coalgebra_hom_failure, is_coalgebra_antihom,
    is_coalgebra_hom, twist, verify_coalgebra, ComultTerm, StructCoalgebra,
};

use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Mat, SparseVec};
use crate::rational::Rational;
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructHopf {
    name: String,
    algebra: StructAlgebra,
    coalgebra: StructCoalgebra,
    antipode: Mat,
    commutative: bool,
    cocommutative: bool,
}

impl StructHopf {
    /// Assembles and verifies; any failing axiom is returned as an error
    /// carrying the full report.
    pub fn new(
        name: impl Into<String>,
        algebra: StructAlgebra,
        coalgebra: StructCoalgebra,
        antipode: Mat,
    ) -> Result<Self> {
        let h = Self::from_parts_unchecked(name, algebra, coalgebra, antipode)?;
        let report = verify_hopf(&h);
        if !report.passed() {
            return Err(Error::verification(
                format!("Hopf algebra {:?}", h.name),
                report,
            ));
        }
        Ok(h)
    }

    /// Shape checks only.
    pub fn from_parts_unchecked(
        name: impl Into<String>,
        algebra: StructAlgebra,
        coalgebra: StructCoalgebra,
        antipode: Mat,
    ) -> Result<Self> {
        let n = algebra.dim();
        if coalgebra.dim() != n {
            return Err(Error::dim("coalgebra", n, coalgebra.dim()));
        }
        if algebra.basis_names() != coalgebra.basis_names() {
            return Err(Error::Precondition(
                "algebra and coalgebra basis names differ".into(),
            ));
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(Error::dim(
                "antipode",
                n,
                antipode.rows().max(antipode.cols()),
            ));
        }
        let commutative = algebra.is_commutative();
        let cocommutative = coalgebra.is_cocommutative();
        Ok(StructHopf {
            name: name.into(),
            algebra,
            coalgebra,
            antipode,
            commutative,
            cocommutative,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn basis_names(&self) -> &[String] {
        self.algebra.basis_names()
    }

    pub fn algebra(&self) -> &StructAlgebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &StructCoalgebra {
        &self.coalgebra
    }

    pub fn antipode(&self) -> &Mat {
        &self.antipode
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_cocommutative(&self) -> bool {
        self.cocommutative
    }

    pub fn basis_vec(&self, i: usize) -> SparseVec {
        SparseVec::basis(self.dim(), i)
    }

    pub fn unit(&self) -> &SparseVec {
        self.algebra.unit()
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.algebra.mul(x, y)
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a SparseVec>) -> SparseVec {
        self.algebra.product(factors)
    }

    pub fn comult(&self, x: &SparseVec) -> SparseVec {
        self.coalgebra.comult(x)
    }

    pub fn counit(&self, x: &SparseVec) -> Rational {
        self.coalgebra.counit(x)
    }

    pub fn apply_antipode(&self, x: &SparseVec) -> SparseVec {
        self.antipode.apply(x)
    }

    pub fn sweedler(&self, x: &SparseVec, n: usize) -> SparseVec {
        self.coalgebra.sweedler(x, n)
    }

    pub fn sweedler_terms(&self, i: usize, n: usize) -> Vec<(Rational, Vec<usize>)> {
        self.coalgebra.sweedler_terms(i, n)
    }

    /// The map `a ↦ ε(a)1`, unit of the convolution algebra `End(H)`.
    pub fn counit_map(&self) -> Mat {
        convolution_unit(&self.coalgebra, &self.algebra)
    }

    pub fn convolve(&self, f: &Mat, g: &Mat) -> Result<Mat> {
        convolution(&self.coalgebra, &self.algebra, f, g)
    }

    pub fn is_coalgebra_endo(&self, f: &Mat) -> bool {
        is_coalgebra_hom(&self.coalgebra, &self.coalgebra, f)
    }

    /// Replaces the multiplication, unit and antipode while keeping the
    /// coalgebra. Used to assemble second Hopf structures on the same
    /// coalgebra (braces, descendent algebras).
    pub fn with_algebra(
        &self,
        name: impl Into<String>,
        algebra: StructAlgebra,
        antipode: Mat,
    ) -> Result<StructHopf> {
        StructHopf::from_parts_unchecked(name, algebra, self.coalgebra.clone(), antipode)
    }
}

/// Compatibility of the algebra and coalgebra: `Δ` and `ε` are unital algebra
/// homomorphisms.
pub fn verify_bialgebra(a: &StructAlgebra, c: &StructCoalgebra) -> Report {
    let n = a.dim();
    let mut r = Report::new();
    let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));

    let comult_mult = pairs().find(|&(i, j)| {
        let lhs = c.comult(a.mul_basis(i, j));
        let rhs = a.mul_legwise(c.comult_basis(i), c.comult_basis(j), 2);
        lhs != rhs
    });
    r.record(
        "BIALG.comult_mult",
        comult_mult.map(|(i, j)| json!({"a": i, "b": j})),
    );
    r.record_bool(
        "BIALG.comult_unit",
        c.comult(a.unit()) == a.unit().tensor(a.unit()),
        json!({"unit": true}),
    );
    let counit_mult = pairs()
        .find(|&(i, j)| c.counit(a.mul_basis(i, j)) != c.counit_basis(i) * c.counit_basis(j));
    r.record(
        "BIALG.counit_mult",
        counit_mult.map(|(i, j)| json!({"a": i, "b": j})),
    );
    r.record_bool(
        "BIALG.counit_unit",
        c.counit(a.unit()).is_one(),
        json!({"unit": true}),
    );
    r
}

/// Full Hopf-algebra verification: algebra, coalgebra, bialgebra
/// compatibility, the antipode law `a₁S(a₂) = ε(a)1 = S(a₁)a₂`, and `S² = id`
/// when the algebra is commutative or cocommutative.
pub fn verify_hopf(h: &StructHopf) -> Report {
    let mut r = verify_algebra(&h.algebra);
    r.extend(verify_coalgebra(&h.coalgebra));
    r.extend(verify_bialgebra(&h.algebra, &h.coalgebra));

    let id = Mat::identity(h.dim());
    let witness = (0..h.dim()).find_map(|i| {
        let expected = h.algebra.scalar(h.coalgebra.counit_basis(i));
        let d = h.coalgebra.comult_basis(i);
        let right = contract(h, &apply_legwise(&[&id, &h.antipode], d));
        if right != expected {
            return Some(json!({"a": i, "side": "a1 S(a2)"}));
        }
        let left = contract(h, &apply_legwise(&[&h.antipode, &id], d));
        if left != expected {
            return Some(json!({"a": i, "side": "S(a1) a2"}));
        }
        None
    });
    r.record("HOPF.antipode", witness);

    if h.commutative || h.cocommutative {
        let s2 = h.antipode.compose(&h.antipode);
        let bad = (0..h.dim()).find(|&i| *s2.column(i) != h.basis_vec(i));
        r.record("HOPF.S2", bad.map(|i| json!({"a": i})));
    } else {
        r.skip("HOPF.S2", "neither commutative nor cocommutative");
    }
    r
}

/// Multiplies the two legs of an element of `H ⊗ H`.
pub fn contract(h: &StructHopf, t: &SparseVec) -> SparseVec {
    let n = h.dim();
    let mut out = SparseVec::zeros(n);
    for (f, c) in t.iter() {
        out.add_scaled(c, h.algebra.mul_basis(f / n, f % n));
    }
    out
}

/// `e = 1_A ∘ ε_C`.
pub fn convolution_unit(c: &StructCoalgebra, a: &StructAlgebra) -> Mat {
    let cols = (0..c.dim()).map(|i| a.scalar(c.counit_basis(i))).collect();
    Mat::from_columns(a.dim(), cols).expect("unit has algebra dimension")
}

/// `(f ∗ g)(x) = f(x₁) g(x₂)`, i.e. `m_A ∘ (f ⊗ g) ∘ Δ_C`.
pub fn convolution(c: &StructCoalgebra, a: &StructAlgebra, f: &Mat, g: &Mat) -> Result<Mat> {
    for (name, m) in [
        ("left convolution factor", f),
        ("right convolution factor", g),
    ] {
        if m.cols() != c.dim() {
            return Err(Error::dim(name, c.dim(), m.cols()));
        }
        if m.rows() != a.dim() {
            return Err(Error::dim(name, a.dim(), m.rows()));
        }
    }
    let cols = (0..c.dim())
        .map(|i| {
            let mut out = SparseVec::zeros(a.dim());
            for (coef, l, r) in c.terms(i) {
                out.add_scaled(&coef, &a.mul(f.column(l), g.column(r)));
            }
            out
        })
        .collect();
    Mat::from_columns(a.dim(), cols)
}

pub fn is_group_like(h: &StructHopf, x: &SparseVec) -> bool {
    h.counit(x).is_one() && h.comult(x) == x.tensor(x)
}

/// Keeps the candidates satisfying `Δ(a) = a ⊗ a` and `ε(a) = 1`.
pub fn group_likes(h: &StructHopf, candidates: &[SparseVec]) -> Vec<SparseVec> {
    candidates
        .iter()
        .filter(|x| is_group_like(h, x))
        .cloned()
        .collect()
}

/// Indices of basis vectors that are group-like.
pub fn group_like_basis(h: &StructHopf) -> Vec<usize> {
    (0..h.dim())
        .filter(|&i| is_group_like(h, &h.basis_vec(i)))
        .collect()
}

pub fn is_primitive(h: &StructHopf, x: &SparseVec) -> bool {
    h.comult(x) == x.tensor(h.unit()).add(&h.unit().tensor(x))
}

/// Canonical basis of `P(H) = ker(a ↦ Δ(a) − a⊗1 − 1⊗a)`.
pub fn primitive_subspace(h: &StructHopf) -> Vec<SparseVec> {
    let n = h.dim();
    let cols = (0..n)
        .map(|i| {
            let e = h.basis_vec(i);
            h.comult(&e)
                .sub(&e.tensor(h.unit()))
                .sub(&h.unit().tensor(&e))
        })
        .collect();
    kernel_basis(&Mat::from_columns(n * n, cols).expect("tensor square dimension"))
}
