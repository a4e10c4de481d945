//! JSON file formats.
//!
//! Matrices are arrays of rows, so entry `[i][j]` is the coefficient of `e_i`
//! in the image of `e_j`. Rationals are `"p/q"` strings on output and accept
//! `"p"`, `"p/q"` or JSON integers on input.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::character::CommAlgebra;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupEndo};
use crate::hopf::{Bilinear, StructAlgebra, StructCoalgebra, StructHopf};
use crate::lie::LieAlgebra;
use crate::linalg::{Mat, SparseVec};
use crate::rational::Rational;
use crate::report::Report;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<Rational>,
    pub mult: Vec<Vec<Vec<Rational>>>,
    pub comult: Vec<Vec<(Rational, usize, usize)>>,
    pub counit: Vec<Rational>,
    pub antipode: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default)]
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<Rational>,
    pub mult: Vec<Vec<Vec<Rational>>>,
    #[serde(default)]
    pub commutative: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoFile {
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieFile {
    pub dim: usize,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    pub bracket: Vec<Vec<Vec<Rational>>>,
}

/// A matrix given as bare rows or as `{"matrix": rows}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixDoc {
    Bare(Vec<Vec<Rational>>),
    Wrapped { matrix: Vec<Vec<Rational>> },
}

impl MatrixDoc {
    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        match self {
            MatrixDoc::Bare(r) | MatrixDoc::Wrapped { matrix: r } => r,
        }
    }
}

/// Either a path (relative to the bundle file) or an inline document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(String),
    Inline(T),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub hopf: Ref<HopfFile>,
    pub b1: Ref<MatrixDoc>,
    pub b2: Ref<MatrixDoc>,
}

/// Raw bytes of an input together with its SHA-256.
#[derive(Clone, Debug)]
pub struct Source {
    pub path: String,
    pub text: String,
    pub sha256: String,
}

pub fn read_source(path: impl AsRef<Path>) -> Result<Source> {
    let p = path.as_ref();
    let text = std::fs::read_to_string(p).map_err(|source| Error::Io {
        path: p.display().to_string(),
        source,
    })?;
    Ok(Source {
        path: p.display().to_string(),
        sha256: sha256_hex(text.as_bytes()),
        text,
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Records an input's provenance as an information check `INPUT.<role>`.
pub fn record_input(r: &mut Report, role: &str, src: &Source) {
    r.info(
        format!("INPUT.{role}"),
        json!({"path": src.path, "sha256": src.sha256}),
    );
}

fn parse<T: for<'de> Deserialize<'de>>(what: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn check_len(what: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::dim(what, expected, found));
    }
    Ok(())
}

fn vector(values: &[Rational]) -> SparseVec {
    SparseVec::from_dense(values)
}

fn bilinear(what: &str, dim: usize, table: &[Vec<Vec<Rational>>]) -> Result<Bilinear> {
    check_len(what, dim, table.len())?;
    let mut out = Vec::with_capacity(dim);
    for row in table {
        check_len(what, dim, row.len())?;
        let mut r = Vec::with_capacity(dim);
        for v in row {
            check_len(what, dim, v.len())?;
            r.push(vector(v));
        }
        out.push(r);
    }
    Bilinear::new(dim, out)
}

fn bilinear_rows(b: &Bilinear) -> Vec<Vec<Vec<Rational>>> {
    b.table()
        .iter()
        .map(|row| row.iter().map(|v| v.to_dense()).collect())
        .collect()
}

pub fn matrix_from_rows(what: &str, rows: &[Vec<Rational>], dim: Option<usize>) -> Result<Mat> {
    if let Some(n) = dim {
        check_len(what, n, rows.len())?;
        for r in rows {
            check_len(what, n, r.len())?;
        }
    }
    Mat::from_dense_rows(rows)
}

fn algebra_from(
    what: &str,
    dim: usize,
    basis: Vec<String>,
    unit: &[Rational],
    mult: &[Vec<Vec<Rational>>],
) -> Result<StructAlgebra> {
    check_len(&format!("{what} basis"), dim, basis.len())?;
    check_len(&format!("{what} unit"), dim, unit.len())?;
    StructAlgebra::new(
        basis,
        bilinear(&format!("{what} mult"), dim, mult)?,
        vector(unit),
    )
}

impl HopfFile {
    /// Builds the structure; verification is run unless `unchecked`.
    pub fn build(&self, unchecked: bool) -> Result<StructHopf> {
        let n = self.dim;
        let algebra = algebra_from("hopf", n, self.basis.clone(), &self.unit, &self.mult)?;
        check_len("hopf comult", n, self.comult.len())?;
        check_len("hopf counit", n, self.counit.len())?;
        let coalgebra = StructCoalgebra::from_terms(
            self.basis.clone(),
            self.comult.clone(),
            self.counit.clone(),
        )?;
        let antipode = matrix_from_rows("hopf antipode", &self.antipode, Some(n))?;
        if unchecked {
            StructHopf::from_parts_unchecked(self.name.clone(), algebra, coalgebra, antipode)
        } else {
            StructHopf::new(self.name.clone(), algebra, coalgebra, antipode)
        }
    }

    pub fn from_hopf(h: &StructHopf) -> Self {
        let n = h.dim();
        HopfFile {
            name: h.name().to_string(),
            dim: n,
            basis: h.basis_names().to_vec(),
            unit: h.unit().to_dense(),
            mult: bilinear_rows(h.algebra().mult()),
            comult: (0..n).map(|i| h.coalgebra().terms(i)).collect(),
            counit: h.coalgebra().counit_values().to_vec(),
            antipode: h.antipode().to_dense_rows(),
        }
    }
}

pub fn parse_hopf(text: &str, unchecked: bool) -> Result<StructHopf> {
    parse::<HopfFile>("hopf file", text)?.build(unchecked)
}

pub fn hopf_to_json(h: &StructHopf) -> String {
    to_pretty(&HopfFile::from_hopf(h))
}

/// The raw document, for reporting on tables that are not groups.
pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let f: GroupFile = parse("group file", text)?;
    check_len("group elements", f.order, f.elements.len())?;
    check_len("group table", f.order, f.table.len())?;
    Ok(f)
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let f = parse_group_file(text)?;
    FiniteGroup::new(f.name, f.elements, f.table)
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    to_pretty(&GroupFile {
        name: g.name().to_string(),
        order: g.order(),
        elements: g.elements().to_vec(),
        table: g.table().to_vec(),
    })
}

pub fn parse_endo(text: &str, g: &FiniteGroup) -> Result<GroupEndo> {
    let f: EndoFile = parse("group map file", text)?;
    GroupEndo::new(g, f.images)
}

pub fn endo_to_json(e: &GroupEndo) -> String {
    to_pretty(&EndoFile {
        images: e.images.clone(),
    })
}

pub fn parse_matrix(text: &str, dim: Option<usize>) -> Result<Mat> {
    let rows = parse::<MatrixDoc>("matrix file", text)?.into_rows();
    matrix_from_rows("matrix", &rows, dim)
}

pub fn matrix_to_json(m: &Mat) -> String {
    to_pretty(&m.to_dense_rows())
}

pub fn parse_lie(text: &str) -> Result<LieAlgebra> {
    let f: LieFile = parse("Lie algebra file", text)?;
    let basis = f
        .basis
        .unwrap_or_else(|| (0..f.dim).map(|i| format!("x{i}")).collect());
    check_len("Lie basis", f.dim, basis.len())?;
    LieAlgebra::new(basis, bilinear("Lie bracket", f.dim, &f.bracket)?)
}

pub fn lie_to_json(l: &LieAlgebra) -> String {
    to_pretty(&LieFile {
        dim: l.dim(),
        basis: Some(l.basis_names().to_vec()),
        bracket: bilinear_rows(l.bracket_table()),
    })
}

/// A commutative algebra file; `commutative` must be `true` when present.
pub fn parse_comm_algebra(text: &str) -> Result<CommAlgebra> {
    let f: AlgebraFile = parse("algebra file", text)?;
    if f.commutative == Some(false) {
        return Err(Error::Precondition(
            "algebra file declares commutative: false".into(),
        ));
    }
    CommAlgebra::new(algebra_from("algebra", f.dim, f.basis, &f.unit, &f.mult)?)
}

pub fn comm_algebra_to_json(a: &CommAlgebra) -> String {
    let alg = a.algebra();
    to_pretty(&AlgebraFile {
        name: None,
        dim: alg.dim(),
        basis: alg.basis_names().to_vec(),
        unit: alg.unit().to_dense(),
        mult: bilinear_rows(alg.mult()),
        commutative: Some(true),
    })
}

pub fn parse_units(text: &str, a: &CommAlgebra) -> Result<Vec<SparseVec>> {
    let raw: Vec<Vec<Rational>> = parse("unit candidates file", text)?;
    raw.iter()
        .map(|v| {
            check_len("unit candidate", a.dim(), v.len())?;
            Ok(vector(v))
        })
        .collect()
}

/// A loaded bundle: the Hopf algebra, both operators, and the provenance of
/// every file read.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub hopf: StructHopf,
    pub b1: Mat,
    pub b2: Mat,
    pub inputs: Vec<(String, Source)>,
}

impl Bundle {
    pub fn record_inputs(&self, r: &mut Report) {
        for (role, src) in &self.inputs {
            record_input(r, role, src);
        }
    }
}

fn resolve<T: Clone + for<'de> Deserialize<'de>>(
    base: &Path,
    role: &str,
    r: &Ref<T>,
    inputs: &mut Vec<(String, Source)>,
) -> Result<T> {
    match r {
        Ref::Inline(doc) => Ok(doc.clone()),
        Ref::Path(p) => {
            let src = read_source(base.join(p))?;
            let doc = parse(&format!("{role} file {}", src.path), &src.text)?;
            inputs.push((role.to_string(), src));
            Ok(doc)
        }
    }
}

/// Loads a bundle; relative paths inside it are resolved against the
/// bundle's directory.
pub fn load_bundle(path: impl AsRef<Path>, unchecked: bool) -> Result<Bundle> {
    let src = read_source(path.as_ref())?;
    let base: PathBuf = path
        .as_ref()
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_default();
    let file: BundleFile = parse(&format!("bundle {}", src.path), &src.text)?;
    let mut inputs = vec![("bundle".to_string(), src)];
    let hopf = resolve(&base, "hopf", &file.hopf, &mut inputs)?.build(unchecked)?;
    let b1 = resolve(&base, "b1", &file.b1, &mut inputs)?.into_rows();
    let b2 = resolve(&base, "b2", &file.b2, &mut inputs)?.into_rows();
    let b1 = matrix_from_rows("b1", &b1, Some(hopf.dim()))?;
    let b2 = matrix_from_rows("b2", &b2, Some(hopf.dim()))?;
    Ok(Bundle {
        hopf,
        b1,
        b2,
        inputs,
    })
}

/// A self-contained bundle with everything inline.
pub fn bundle_to_json(h: &StructHopf, b1: &Mat, b2: &Mat) -> String {
    to_pretty(&BundleFile {
        hopf: Ref::Inline(HopfFile::from_hopf(h)),
        b1: Ref::Inline(MatrixDoc::Bare(b1.to_dense_rows())),
        b2: Ref::Inline(MatrixDoc::Bare(b2.to_dense_rows())),
    })
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Renders a vector with basis names, e.g. `"1/1*g + -1/2*1"`; `"0"` when zero.
pub fn render_vector(names: &[String], v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| format!("{c}*{}", names[i]))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn value_of_vector(v: &SparseVec) -> Value {
    json!(v.to_dense())
}
