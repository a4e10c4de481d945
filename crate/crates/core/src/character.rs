//! Convolution groups of characters `H → A` and the decomposition machinery
//! attached to a Rota-Baxter system.
//!
//! Characters are stored as value matrices (`dim A × dim H`) and groups of
//! characters are kept sorted by those matrices, so tables are deterministic.
//! Enumeration is limited to sources whose basis consists of group-likes
//! closed under multiplication, with values in a finite set of units of `A`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hopf::{
    convolution, convolution_unit, is_group_like, verify_algebra, Bilinear, StructAlgebra,
    StructHopf,
};
use crate::linalg::{Mat, SparseVec};
use crate::rational::Rational;
use crate::rbs::{DescendentHopf, RBSystem};
use crate::report::Report;

/// A commutative, associative, unital algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    algebra: StructAlgebra,
}

impl CommAlgebra {
    pub fn new(algebra: StructAlgebra) -> Result<Self> {
        let mut report = verify_algebra(&algebra);
        report.record(
            "ALG.commutative",
            algebra
                .commutativity_witness()
                .map(|(i, j)| json!({"a": i, "b": j})),
        );
        if !report.passed() {
            return Err(Error::verification("commutative algebra", report));
        }
        Ok(CommAlgebra { algebra })
    }

    /// The rationals as a one-dimensional algebra.
    pub fn rationals() -> Self {
        let mult = Bilinear::from_fn(1, |_, _| SparseVec::basis(1, 0));
        let algebra =
            StructAlgebra::new(vec!["1".into()], mult, SparseVec::basis(1, 0)).expect("shape");
        CommAlgebra { algebra }
    }

    pub fn algebra(&self) -> &StructAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `{1_A, −1_A}`.
    pub fn default_units(&self) -> Vec<SparseVec> {
        let one = self.algebra.unit().clone();
        vec![one.clone(), one.neg()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Character {
    values: Mat,
}

impl Character {
    pub fn new(values: Mat) -> Self {
        Character { values }
    }

    pub fn values(&self) -> &Mat {
        &self.values
    }

    /// Value on the `i`-th basis element of the source.
    pub fn at(&self, i: usize) -> &SparseVec {
        self.values.column(i)
    }
}

/// Witness for the first failure of `f(1) = 1_A` or `f(ab) = f(a)f(b)`.
pub fn character_failure(h: &StructHopf, a: &CommAlgebra, f: &Mat) -> Option<Value> {
    crate::hopf::algebra_hom_failure(h.algebra(), a.algebra(), f)
}

pub fn convolve(h: &StructHopf, a: &CommAlgebra, f: &Character, g: &Character) -> Character {
    Character::new(
        convolution(h.coalgebra(), a.algebra(), &f.values, &g.values).expect("character shapes"),
    )
}

/// `e = 1_A ∘ ε`.
pub fn identity_character(h: &StructHopf, a: &CommAlgebra) -> Character {
    Character::new(convolution_unit(h.coalgebra(), a.algebra()))
}

/// `f ∘ S`, checked to be a two-sided convolution inverse.
pub fn conv_inverse(h: &StructHopf, a: &CommAlgebra, f: &Character) -> Result<Character> {
    let inv = Character::new(f.values.compose(h.antipode()));
    let e = identity_character(h, a);
    let mut r = Report::new();
    r.record_bool(
        "CONV.right_inverse",
        convolve(h, a, f, &inv) == e,
        json!({"side": "f * (f o S)"}),
    );
    r.record_bool(
        "CONV.left_inverse",
        convolve(h, a, &inv, f) == e,
        json!({"side": "(f o S) * f"}),
    );
    if !r.passed() {
        return Err(Error::contradiction("convolution inverse", r));
    }
    Ok(inv)
}

/// The characters `H → A` with values in a finite unit set, under
/// convolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharGroup {
    source: StructHopf,
    target: CommAlgebra,
    units: Vec<SparseVec>,
    elements: Vec<Character>,
    group: FiniteGroup,
}

impl CharGroup {
    pub fn source(&self) -> &StructHopf {
        &self.source
    }

    pub fn target(&self) -> &CommAlgebra {
        &self.target
    }

    pub fn units(&self) -> &[SparseVec] {
        &self.units
    }

    pub fn elements(&self) -> &[Character] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The abstract group with the canonical element order.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn index_of(&self, f: &Character) -> Option<usize> {
        self.elements.binary_search(f).ok()
    }

    pub fn mul(&self, f: usize, g: usize) -> usize {
        self.group.mul(f, g)
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.group.inverse(f)
    }

    pub fn identity(&self) -> usize {
        self.group.identity()
    }
}

/// Multiplication of a group-algebra-type basis: `e_i e_j = e_k`.
fn basis_group_table(h: &StructHopf) -> Result<Vec<Vec<usize>>> {
    let n = h.dim();
    if let Some(i) = (0..n).find(|&i| !is_group_like(h, &h.basis_vec(i))) {
        return Err(Error::Precondition(format!(
            "basis element {} of {} is not group-like",
            h.basis_names()[i],
            h.name()
        )));
    }
    let mut table = vec![vec![0; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let p = h.algebra().mul_basis(i, j);
            match p.iter().collect::<Vec<_>>().as_slice() {
                [(k, c)] if c.is_one() => *slot = *k,
                _ => {
                    return Err(Error::Precondition(format!(
                        "product of basis elements {} and {} is not a basis element",
                        h.basis_names()[i],
                        h.basis_names()[j]
                    )))
                }
            }
        }
    }
    Ok(table)
}

/// Checks each candidate is invertible within the set; returns the product
/// table of candidates restricted to the set.
fn unit_table(a: &CommAlgebra, units: &[SparseVec]) -> Result<Vec<Vec<Option<usize>>>> {
    for u in units {
        if u.dim() != a.dim() {
            return Err(Error::dim("unit candidate", a.dim(), u.dim()));
        }
    }
    let table: Vec<Vec<Option<usize>>> = units
        .iter()
        .map(|u| {
            units
                .iter()
                .map(|v| {
                    let p = a.algebra().mul(u, v);
                    units.iter().position(|w| *w == p)
                })
                .collect()
        })
        .collect();
    let one = a.algebra().unit();
    for (i, u) in units.iter().enumerate() {
        if !units.iter().any(|v| a.algebra().mul(u, v) == *one) {
            return Err(Error::Precondition(format!(
                "unit candidate {i} has no inverse among the candidates"
            )));
        }
    }
    Ok(table)
}

/// Enumerates every character of a group-algebra-type source with values in
/// `units`, builds the convolution table and verifies the group axioms.
pub fn enumerate_characters(
    h: &StructHopf,
    a: &CommAlgebra,
    units: &[SparseVec],
) -> Result<CharGroup> {
    let basis_table = basis_group_table(h)?;
    let utab = unit_table(a, units)?;
    let n = h.dim();
    let one = a.algebra().unit();
    let unit_idx = units
        .iter()
        .position(|u| u == one)
        .ok_or_else(|| Error::Precondition("the unit candidates must contain 1_A".into()))?;
    let h_unit = (0..n)
        .find(|&i| h.basis_vec(i) == *h.unit())
        .ok_or_else(|| {
            Error::Precondition("the unit of the source is not a basis element".into())
        })?;

    let mut order = vec![h_unit];
    order.extend((0..n).filter(|&i| i != h_unit));
    let mut vals: Vec<Option<usize>> = vec![None; n];
    let mut found = Vec::new();
    search(
        &basis_table,
        &utab,
        &order,
        0,
        &mut vals,
        unit_idx,
        &mut found,
    );

    let mut elements: Vec<Character> = found
        .into_iter()
        .map(|v| {
            let cols = v.iter().map(|&k| units[k].clone()).collect();
            Character::new(Mat::from_columns(a.dim(), cols).expect("character shape"))
        })
        .collect();
    elements.sort();
    elements.dedup();

    let m = elements.len();
    let mut table = vec![vec![0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let p = convolve(h, a, &elements[i], &elements[j]);
            table[i][j] = elements.binary_search(&p).map_err(|_| {
                Error::NotClosed(format!(
                    "{}",
                    json!({"reason": "convolution leaves the enumerated characters", "f": i, "g": j})
                ))
            })?;
        }
    }
    let names = (0..m).map(|k| format!("chi{k}")).collect();
    let group = FiniteGroup::new(format!("Cha({})", h.name()), names, table)?;
    let cg = CharGroup {
        source: h.clone(),
        target: a.clone(),
        units: units.to_vec(),
        elements,
        group,
    };
    let report = verify_char_group(&cg);
    if !report.passed() {
        return Err(Error::verification("character group", report));
    }
    Ok(cg)
}

fn search(
    basis: &[Vec<usize>],
    utab: &[Vec<Option<usize>>],
    order: &[usize],
    pos: usize,
    vals: &mut Vec<Option<usize>>,
    unit_idx: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if pos == order.len() {
        out.push(vals.iter().map(|v| v.expect("assigned")).collect());
        return;
    }
    let x = order[pos];
    let choices: Vec<usize> = if pos == 0 {
        vec![unit_idx]
    } else {
        (0..utab.len()).collect()
    };
    for c in choices {
        vals[x] = Some(c);
        if consistent(basis, utab, vals, x) {
            search(basis, utab, order, pos + 1, vals, unit_idx, out);
        }
    }
    vals[x] = None;
}

/// Multiplicativity on every fully assigned triple touching `x`.
fn consistent(
    basis: &[Vec<usize>],
    utab: &[Vec<Option<usize>>],
    vals: &[Option<usize>],
    x: usize,
) -> bool {
    let n = basis.len();
    for i in 0..n {
        for j in 0..n {
            let k = basis[i][j];
            if i != x && j != x && k != x {
                continue;
            }
            if let (Some(a), Some(b), Some(c)) = (vals[i], vals[j], vals[k]) {
                if utab[a][b] != Some(c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Group-axiom and character checks for an already built group, plus the
/// inverse computed as `f ∘ S` against the table inverse.
pub fn verify_char_group(cg: &CharGroup) -> Report {
    let h = cg.source();
    let a = cg.target();
    let m = cg.order();
    let mut r = Report::new();
    let not_char = (0..m).find(|&k| character_failure(h, a, cg.elements[k].values()).is_some());
    r.record("CHA.characters", not_char.map(|k| json!({"f": k})));
    let closure = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .find(|&(i, j)| {
            cg.index_of(&convolve(h, a, &cg.elements[i], &cg.elements[j])) != Some(cg.mul(i, j))
        });
    r.record("CHA.closure", closure.map(|(i, j)| json!({"f": i, "g": j})));
    let gr = crate::group::verify_group_table(cg.group().table());
    for id in ["GRP.assoc", "GRP.identity", "GRP.inverse"] {
        let new_id = id.replacen("GRP", "CHA", 1);
        match gr.get(id) {
            Some(c) if c.status == crate::report::Status::Fail => {
                r.fail(new_id, c.witness.clone().unwrap_or(Value::Null))
            }
            _ => r.pass(new_id),
        }
    }
    r.record_bool(
        "CHA.identity_is_counit",
        cg.elements[cg.identity()] == identity_character(h, a),
        json!({"reason": "table identity differs from 1_A o counit"}),
    );
    let inv = (0..m).find(|&k| match conv_inverse(h, a, &cg.elements[k]) {
        Ok(g) => cg.index_of(&g) != Some(cg.inverse(k)),
        Err(_) => true,
    });
    r.record("CHA.antipode_inverse", inv.map(|k| json!({"f": k})));
    r
}

fn sorted_image(map: &[usize]) -> Vec<usize> {
    let mut v = map.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn kernel(map: &[usize], identity: usize) -> Vec<usize> {
    (0..map.len()).filter(|&x| map[x] == identity).collect()
}

/// The three induced maps `Cha(H, A) → Cha(H₁, A)` as index maps into the
/// two canonical element lists.
#[derive(Clone, Debug)]
pub struct CalMaps {
    pub source: CharGroup,
    pub target: CharGroup,
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
    pub psi: Vec<usize>,
    pub report: Report,
}

impl CalMaps {
    pub fn image(&self, which: crate::rbs::Which) -> Vec<usize> {
        sorted_image(self.map(which))
    }

    pub fn kernel(&self, which: crate::rbs::Which) -> Vec<usize> {
        kernel(self.map(which), self.target.identity())
    }

    pub fn map(&self, which: crate::rbs::Which) -> &[usize] {
        match which {
            crate::rbs::Which::B1 => &self.b1,
            crate::rbs::Which::B2 => &self.b2,
        }
    }

    pub fn psi_image(&self) -> Vec<usize> {
        sorted_image(&self.psi)
    }
}

/// `𝓑ᵢ(f) = f ∘ Bᵢ` and `Ψ(f) = f|H₁`, all written in the canonical basis of
/// `H₁`, each checked to be a group homomorphism over the full table.
///
/// A value that is not a character of `H₁` is a hard error.
pub fn cal_maps(s: &RBSystem, d: &DescendentHopf, cg: &CharGroup) -> Result<CalMaps> {
    let target = enumerate_characters(d.hopf(), cg.target(), cg.units())?;
    let mut report = Report::new();
    report.extend_prefixed("H", verify_char_group(cg));
    report.extend_prefixed("H1", verify_char_group(&target));
    let embed = d.embedding();

    let mut maps = Vec::new();
    for (label, pre) in [("B1", Some(s.b1())), ("B2", Some(s.b2())), ("Psi", None)] {
        let lin = match pre {
            Some(b) => b.compose(embed),
            None => embed.clone(),
        };
        let mut map = Vec::with_capacity(cg.order());
        for (k, f) in cg.elements().iter().enumerate() {
            let v = Character::new(f.values().compose(&lin));
            match target.index_of(&v) {
                Some(t) => map.push(t),
                None => {
                    let mut r = Report::new();
                    let witness = match character_failure(d.hopf(), cg.target(), v.values()) {
                        Some(w) => json!({"f": k, "failure": w}),
                        None => {
                            json!({"f": k, "reason": "value outside the enumerated characters"})
                        }
                    };
                    r.fail(format!("CAL.{label}.character"), witness);
                    return Err(Error::contradiction("induced character maps", r));
                }
            }
        }
        let m = cg.order();
        let hom = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .find(|&(i, j)| map[cg.mul(i, j)] != target.mul(map[i], map[j]));
        report.record(
            format!("CAL.{label}.hom"),
            hom.map(|(i, j)| json!({"f": i, "g": j})),
        );
        report.info(
            format!("CAL.{label}.image"),
            json!({"image": sorted_image(&map), "kernel": kernel(&map, target.identity())}),
        );
        maps.push(map);
    }
    let psi = maps.pop().expect("psi");
    let b2 = maps.pop().expect("b2");
    let b1 = maps.pop().expect("b1");
    Ok(CalMaps {
        source: cg.clone(),
        target,
        b1,
        b2,
        psi,
        report,
    })
}

/// Conjugation-closure of `𝓑₁(ker 𝓑₂)` in `Im 𝓑₁` and of `𝓑₂(ker 𝓑₁)` in
/// `Im 𝓑₂`, including the subgroup property.
pub fn normality_check(cal: &CalMaps) -> Report {
    use crate::rbs::Which;
    let mut r = Report::new();
    for (which, other, id) in [
        (Which::B1, Which::B2, "NORM.B1"),
        (Which::B2, Which::B1, "NORM.B2"),
    ] {
        let n = normal_candidate(cal, which, other);
        let im = cal.image(which);
        r.record(id, normality_failure(&cal.target, &im, &n));
    }
    r
}

/// `𝓑_which(ker 𝓑_other)`.
fn normal_candidate(
    cal: &CalMaps,
    which: crate::rbs::Which,
    other: crate::rbs::Which,
) -> Vec<usize> {
    let map = cal.map(which);
    let ker = cal.kernel(other);
    sorted_image(&ker.iter().map(|&x| map[x]).collect::<Vec<_>>())
}

fn normality_failure(g: &CharGroup, ambient: &[usize], n: &[usize]) -> Option<Value> {
    if !n.contains(&g.identity()) {
        return Some(json!({"reason": "identity missing"}));
    }
    for &x in n {
        for &y in n {
            if n.binary_search(&g.mul(x, g.inverse(y))).is_err() {
                return Some(json!({"reason": "not a subgroup", "x": x, "y": y}));
            }
        }
    }
    for &a in ambient {
        for &x in n {
            let conj = g.mul(g.mul(a, x), g.inverse(a));
            if n.binary_search(&conj).is_err() {
                return Some(json!({"g": a, "n": x}));
            }
        }
    }
    None
}

/// Left cosets `yN` of a subgroup inside a subset of `Cha(H₁, A)`, each
/// represented by its least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub cosets: Vec<Vec<usize>>,
    coset_of: BTreeMap<usize, usize>,
}

impl Quotient {
    fn new(g: &CharGroup, ambient: &[usize], n: &[usize]) -> Self {
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut coset_of = BTreeMap::new();
        for &y in ambient {
            if coset_of.contains_key(&y) {
                continue;
            }
            let c = sorted_image(&n.iter().map(|&x| g.mul(y, x)).collect::<Vec<_>>());
            let id = cosets.len();
            for &z in &c {
                coset_of.insert(z, id);
            }
            cosets.push(c);
        }
        Quotient { cosets, coset_of }
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn representative(&self, c: usize) -> usize {
        self.cosets[c][0]
    }

    pub fn coset_of(&self, y: usize) -> Option<usize> {
        self.coset_of.get(&y).copied()
    }
}

#[derive(Clone, Debug)]
pub struct CayleyTransform {
    pub q1: Quotient,
    pub q2: Quotient,
    /// Coset index in `q1` to coset index in `q2`.
    pub theta: Vec<usize>,
    pub report: Report,
}

/// `Θ: Im 𝓑₁ / 𝓑₁(ker 𝓑₂) → Im 𝓑₂ / 𝓑₂(ker 𝓑₁)`, coset of `𝓑₁(f)` to coset
/// of `𝓑₂(f)`. Well-definedness is checked over every preimage.
pub fn cayley_transform(cal: &CalMaps) -> Result<CayleyTransform> {
    use crate::rbs::Which;
    let norm = normality_check(cal);
    if !norm.passed() {
        return Err(Error::contradiction(
            "normality of the Cayley transform kernels",
            norm,
        ));
    }
    let g = &cal.target;
    let q1 = Quotient::new(
        g,
        &cal.image(Which::B1),
        &normal_candidate(cal, Which::B1, Which::B2),
    );
    let q2 = Quotient::new(
        g,
        &cal.image(Which::B2),
        &normal_candidate(cal, Which::B2, Which::B1),
    );
    let mut theta: Vec<Option<usize>> = vec![None; q1.len()];
    let mut r = Report::new();
    let mut bad = None;
    for f in 0..cal.source.order() {
        let c1 = q1.coset_of(cal.b1[f]).expect("image element has a coset");
        let c2 = q2.coset_of(cal.b2[f]).expect("image element has a coset");
        match theta[c1] {
            None => theta[c1] = Some(c2),
            Some(prev) if prev != c2 && bad.is_none() => bad = Some(json!({"f": f, "coset": c1})),
            _ => {}
        }
    }
    r.record("THETA.well_defined", bad);
    let theta: Vec<usize> = theta
        .into_iter()
        .map(|t| t.expect("every coset has a preimage"))
        .collect();
    let mut hit = sorted_image(&theta);
    hit.dedup();
    r.record_bool(
        "THETA.bijective",
        theta.len() == q2.len() && hit.len() == q2.len(),
        json!({"domain": q1.len(), "codomain": q2.len(), "image": hit.len()}),
    );
    let hom = (0..q1.len())
        .flat_map(|i| (0..q1.len()).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let p1 = q1.coset_of(g.mul(q1.representative(i), q1.representative(j)));
            let p2 = q2.coset_of(g.mul(q2.representative(theta[i]), q2.representative(theta[j])));
            match (p1, p2) {
                (Some(a), Some(b)) => theta[a] != b,
                _ => true,
            }
        });
    r.record("THETA.hom", hom.map(|(i, j)| json!({"a": i, "b": j})));
    if !r.passed() {
        return Err(Error::contradiction("Cayley transform", r));
    }
    Ok(CayleyTransform {
        q1,
        q2,
        theta,
        report: r,
    })
}

#[derive(Clone, Debug)]
pub struct PairGroup {
    /// `G_{𝓑₁,𝓑₂}`, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// `Φ(f₁, f₂) = f₁ ∗ f₂⁻¹` for each pair.
    pub phi: Vec<usize>,
    pub report: Report,
}

impl PairGroup {
    pub fn contains(&self, p: (usize, usize)) -> bool {
        self.pairs.binary_search(&p).is_ok()
    }
}

/// Lists `G = {(f₁, f₂) : Θ(f̄₁) = f̄₂}` inside `Im 𝓑₁ × Im 𝓑₂` with the
/// componentwise product, and checks `Φ` is an isomorphism onto `Im Ψ`.
pub fn pair_group_and_phi(cal: &CalMaps, ct: &CayleyTransform) -> Result<PairGroup> {
    use crate::rbs::Which;
    let g = &cal.target;
    let mut pairs = Vec::new();
    for &y1 in &cal.image(Which::B1) {
        for &y2 in &cal.image(Which::B2) {
            let c1 = ct.q1.coset_of(y1).expect("coset");
            if ct.q2.coset_of(y2) == Some(ct.theta[c1]) {
                pairs.push((y1, y2));
            }
        }
    }
    pairs.sort_unstable();
    let mut r = Report::new();
    r.info("PAIR.order", json!({"order": pairs.len()}));
    let e = g.identity();
    let contains = |p: (usize, usize)| pairs.binary_search(&p).is_ok();
    let sub = if !contains((e, e)) {
        Some(json!({"reason": "identity missing"}))
    } else {
        pairs
            .iter()
            .flat_map(|&p| pairs.iter().map(move |&q| (p, q)))
            .find_map(|(p, q)| {
                let prod = (g.mul(p.0, q.0), g.mul(p.1, q.1));
                let inv = (g.inverse(p.0), g.inverse(p.1));
                (!contains(prod) || !contains(inv))
                    .then(|| json!({"x": [p.0, p.1], "y": [q.0, q.1]}))
            })
    };
    r.record("PAIR.subgroup", sub);

    let phi: Vec<usize> = pairs.iter().map(|&(a, b)| g.mul(a, g.inverse(b))).collect();
    let idx = |p: (usize, usize)| pairs.binary_search(&p).ok();
    let hom = (0..pairs.len())
        .flat_map(|i| (0..pairs.len()).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let (p, q) = (pairs[i], pairs[j]);
            match idx((g.mul(p.0, q.0), g.mul(p.1, q.1))) {
                Some(k) => phi[k] != g.mul(phi[i], phi[j]),
                None => true,
            }
        });
    r.record("PHI.hom", hom.map(|(i, j)| json!({"x": i, "y": j})));
    let image = sorted_image(&phi);
    r.record_bool(
        "PHI.injective",
        image.len() == phi.len(),
        json!({"pairs": phi.len(), "image": image.len()}),
    );
    let psi = cal.psi_image();
    r.record_bool(
        "PHI.onto_im_psi",
        image == psi,
        json!({"image": image, "im_psi": psi}),
    );
    if !r.passed() {
        return Err(Error::contradiction("pair group", r));
    }
    Ok(PairGroup {
        pairs,
        phi,
        report: r,
    })
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Index in `Cha(H₁, A)`.
    pub f: usize,
    pub f1: usize,
    pub f2: usize,
    /// `(f₁, f₂⁻¹)`, emitted when `σ = id`.
    pub corollary: Option<(usize, usize)>,
    pub report: Report,
}

/// The unique `(f₁, f₂) ∈ G` with `f = f₁ ∗ f₂⁻¹`, found by scanning all of
/// `G`; the reconstruction is recomputed by convolution.
pub fn decompose(f: usize, s: &RBSystem, cal: &CalMaps, pg: &PairGroup) -> Result<Decomposition> {
    let g = &cal.target;
    if !cal.psi_image().contains(&f) {
        return Err(Error::OutOfDomain(format!(
            "character {f} is not in the image of Psi"
        )));
    }
    let hits: Vec<usize> = (0..pg.pairs.len()).filter(|&k| pg.phi[k] == f).collect();
    let mut r = Report::new();
    r.record_bool(
        "DEM.unique",
        hits.len() == 1,
        json!({"f": f, "matches": hits.len()}),
    );
    let Some(&k) = hits.first() else {
        return Err(Error::contradiction("decomposition", r));
    };
    let (f1, f2) = pg.pairs[k];
    let (h1, a) = (g.source(), g.target());
    let el = g.elements();
    let rebuilt = convolve(h1, a, &el[f1], &conv_inverse(h1, a, &el[f2])?);
    r.record_bool(
        "DEM.reconstruct",
        rebuilt == el[f],
        json!({"f": f, "f1": f1, "f2": f2}),
    );

    let corollary = if s.sigma_is_identity() {
        let f2_inv = g.inverse(f2);
        let prod = convolve(h1, a, &el[f1], &el[f2_inv]);
        r.record_bool(
            "DEM.corollary",
            prod == el[f],
            json!({"f": f, "f1": f1, "f2": f2_inv}),
        );
        r.info(
            "DEM.corollary_pair_in_group",
            json!({"holds": pg.contains((f1, f2_inv))}),
        );
        Some((f1, f2_inv))
    } else {
        None
    };
    if r.failures().next().is_some() {
        return Err(Error::contradiction("decomposition", r));
    }
    Ok(Decomposition {
        f,
        f1,
        f2,
        corollary,
        report: r,
    })
}

/// For `σ = id`: `Ψ` is the identity and both character sets coincide.
pub fn corollary_checks(s: &RBSystem, cal: &CalMaps) -> Report {
    let mut r = Report::new();
    if !s.sigma_is_identity() {
        r.skip("COR.psi_identity", "sigma is not the identity");
        r.skip("COR.char_sets_equal", "sigma is not the identity");
        return r;
    }
    let src = cal.source.elements();
    let tgt = cal.target.elements();
    let psi_bad = (0..src.len()).find(|&k| tgt[cal.psi[k]] != src[k]);
    r.record("COR.psi_identity", psi_bad.map(|k| json!({"f": k})));
    r.record_bool(
        "COR.char_sets_equal",
        src == tgt,
        json!({"source": src.len(), "target": tgt.len()}),
    );
    r
}

/// Readable values `basis name → A-vector` for each character.
pub fn describe(cg: &CharGroup) -> Value {
    let names = cg.source().basis_names();
    let list: Vec<Value> = cg
        .elements()
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let vals: serde_json::Map<String, Value> = names
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    let v: Vec<Rational> = f.at(i).to_dense();
                    (n.clone(), json!(v))
                })
                .collect();
            json!({"index": k, "values": vals})
        })
        .collect();
    json!(list)
}
