//! Finite groups as Cayley tables and Rota-Baxter systems of groups.
//!
//! A Rota-Baxter system of groups is a pair of bare self-maps `(B₁, B₂)` with
//!
//! ```text
//! B₁(a)B₁(b) = B₁(B₁(a) b B₂(a))
//! B₂(b)B₂(a) = B₂(B₁(a) b B₂(a))
//! ```
//!
//! for all `a, b`. Systems fixing the identity linearize to Rota-Baxter
//! systems of Hopf algebras on the group algebra, with the second operator
//! composed with inversion (see [`extend_to_group_algebra`]).

use itertools_free::cartesian;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::hopf::{Bilinear, StructAlgebra, StructCoalgebra, StructHopf};
use crate::linalg::{Mat, SparseVec};
use crate::rational::Rational;
use crate::rbs::RBSystem;
use crate::report::Report;

/// Default refusal bound for exhaustive enumeration.
pub const DEFAULT_MAX_ORDER: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Verifies the table and derives the identity and inverses.
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let name = name.into();
        if elements.len() != table.len() {
            return Err(Error::dim(
                "group element list",
                table.len(),
                elements.len(),
            ));
        }
        let report = verify_group_table(&table);
        if !report.passed() {
            return Err(Error::verification(format!("group {name:?}"), report));
        }
        let n = table.len();
        let identity = find_identity(&table).expect("verified table has an identity");
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity)
                    .expect("verified table has inverses")
            })
            .collect();
        Ok(FiniteGroup {
            name,
            elements,
            table,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let elements = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::new(format!("C{n}"), elements, table).expect("cyclic table is a group")
    }

    /// Symmetric group on `{0, …, k-1}`, elements in lexicographic order of
    /// their one-line notation (identity first), product `(pq)(x) = p(q(x))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &[usize]| {
            perms
                .iter()
                .position(|q| q == p)
                .expect("permutation listed")
        };
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq: Vec<usize> = (0..k).map(|x| p[q[x]]).collect();
                        index(&pq)
                    })
                    .collect()
            })
            .collect();
        let elements = perms
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<String>())
            .collect();
        FiniteGroup::new(format!("S{k}"), elements, table).expect("permutation table is a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(k, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn find_identity(table: &[Vec<usize>]) -> Option<usize> {
    let n = table.len();
    (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
}

/// Latin square, associativity, identity and inverses for a raw table.
pub fn verify_group_table(table: &[Vec<usize>]) -> Report {
    let n = table.len();
    let mut r = Report::new();

    let shape = table.iter().enumerate().find_map(|(i, row)| {
        if row.len() != n {
            Some(json!({"row": i, "len": row.len()}))
        } else {
            row.iter()
                .position(|&x| x >= n)
                .map(|j| json!({"a": i, "b": j}))
        }
    });
    if n == 0 {
        r.fail("GRP.shape", json!({"order": 0}));
        return r;
    }
    if let Some(w) = shape {
        r.fail("GRP.shape", w);
        return r;
    }
    r.pass("GRP.shape");

    let latin = (0..n).find_map(|i| {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for j in 0..n {
            let x = table[i][j];
            if seen_row[x] {
                return Some(json!({"row": i, "value": x}));
            }
            seen_row[x] = true;
            let y = table[j][i];
            if seen_col[y] {
                return Some(json!({"col": i, "value": y}));
            }
            seen_col[y] = true;
        }
        None
    });
    r.record("GRP.latin", latin);

    let assoc =
        cartesian(n, 3).find(|t| table[table[t[0]][t[1]]][t[2]] != table[t[0]][table[t[1]][t[2]]]);
    r.record(
        "GRP.assoc",
        assoc.map(|t| json!({"a": t[0], "b": t[1], "c": t[2]})),
    );

    match find_identity(table) {
        None => {
            r.fail("GRP.identity", json!({"found": false}));
            r.skip("GRP.inverse", "no identity");
        }
        Some(e) => {
            r.pass("GRP.identity");
            let bad = (0..n).find(|&a| !(0..n).any(|b| table[a][b] == e && table[b][a] == e));
            r.record("GRP.inverse", bad.map(|a| json!({"a": a})));
        }
    }
    r
}

/// Table checks plus consistency of the stored identity and inverse arrays.
pub fn verify_group(g: &FiniteGroup) -> Report {
    let mut r = verify_group_table(&g.table);
    r.record_bool(
        "GRP.identity_index",
        find_identity(&g.table) == Some(g.identity),
        json!({"identity": g.identity}),
    );
    let bad = (0..g.order()).find(|&a| {
        g.table[a][g.inverse[a]] != g.identity || g.table[g.inverse[a]][a] != g.identity
    });
    r.record("GRP.inverse_table", bad.map(|a| json!({"a": a})));
    r
}

/// A bare self-map of a group's element set, by index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupEndo {
    pub images: Vec<usize>,
}

impl GroupEndo {
    pub fn new(group: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::dim("group map images", group.order(), images.len()));
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= group.order()) {
            return Err(Error::dim("group map image index", group.order(), bad));
        }
        Ok(GroupEndo { images })
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        GroupEndo {
            images: (0..group.order()).collect(),
        }
    }

    pub fn constant(group: &FiniteGroup, value: usize) -> Self {
        GroupEndo {
            images: vec![value; group.order()],
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    /// Linearization: the matrix sending basis element `g` to `f(g)`.
    pub fn matrix(&self) -> Mat {
        basis_map_matrix(&self.images)
    }
}

/// Column `j` is the basis vector `images[j]`.
pub fn basis_map_matrix(images: &[usize]) -> Mat {
    let n = images.len();
    Mat::from_columns(n, images.iter().map(|&i| SparseVec::basis(n, i)).collect())
        .expect("square basis map")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRBSystem {
    pub group: FiniteGroup,
    pub b1: GroupEndo,
    pub b2: GroupEndo,
}

impl GroupRBSystem {
    pub fn new(group: FiniteGroup, b1: GroupEndo, b2: GroupEndo) -> Result<Self> {
        GroupEndo::new(&group, b1.images.clone())?;
        GroupEndo::new(&group, b2.images.clone())?;
        Ok(GroupRBSystem { group, b1, b2 })
    }

    pub fn fixes_unit(&self) -> bool {
        let e = self.group.identity();
        self.b1.apply(e) == e && self.b2.apply(e) == e
    }
}

/// Both defining identities over all pairs `(a, b)`.
pub fn check_group_rbs(s: &GroupRBSystem) -> Report {
    let g = &s.group;
    let n = g.order();
    let (b1, b2) = (&s.b1.images, &s.b2.images);
    let x = |a: usize, b: usize| g.mul(g.mul(b1[a], b), b2[a]);
    let mut r = Report::new();
    let first = cartesian(n, 2).find(|p| g.mul(b1[p[0]], b1[p[1]]) != b1[x(p[0], p[1])]);
    r.record("GRB1", first.map(|p| json!({"a": p[0], "b": p[1]})));
    let second = cartesian(n, 2).find(|p| g.mul(b2[p[1]], b2[p[0]]) != b2[x(p[0], p[1])]);
    r.record("GRB2", second.map(|p| json!({"a": p[0], "b": p[1]})));
    r
}

/// Every pair `(B₁, B₂)` satisfying both identities, sorted
/// lexicographically by `(B₁ images, B₂ images)`.
///
/// The search assigns `(B₁(x), B₂(x))` one element at a time and abandons a
/// branch as soon as any pair whose identity is fully determined fails.
pub fn enumerate_group_rbs(
    g: &FiniteGroup,
    require_unit_fixed: bool,
    max_order: usize,
) -> Result<Vec<GroupRBSystem>> {
    let n = g.order();
    if n > max_order {
        return Err(Error::EnumerationBound {
            order: n,
            bound: max_order,
        });
    }
    let e = g.identity();
    let mut order = vec![e];
    order.extend((0..n).filter(|&x| x != e));

    let choices = |x: usize| -> Vec<(usize, usize)> {
        if require_unit_fixed && x == e {
            vec![(e, e)]
        } else {
            (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).collect()
        }
    };

    // Split on the first two assigned elements so workers get balanced chunks.
    let mut prefixes: Vec<Vec<(usize, usize)>> = Vec::new();
    for c0 in choices(order[0]) {
        if n == 1 {
            prefixes.push(vec![c0]);
            continue;
        }
        for c1 in choices(order[1]) {
            prefixes.push(vec![c0, c1]);
        }
    }

    let mut found: Vec<(Vec<usize>, Vec<usize>)> = prefixes
        .par_iter()
        .flat_map_iter(|prefix| {
            let mut b1 = vec![None; n];
            let mut b2 = vec![None; n];
            let mut out = Vec::new();
            let mut ok = true;
            for (k, &(p, q)) in prefix.iter().enumerate() {
                b1[order[k]] = Some(p);
                b2[order[k]] = Some(q);
                if !consistent(g, &b1, &b2) {
                    ok = false;
                    break;
                }
            }
            if ok {
                search(
                    g,
                    &order,
                    prefix.len(),
                    &choices,
                    &mut b1,
                    &mut b2,
                    &mut out,
                );
            }
            out
        })
        .collect();
    found.sort();
    Ok(found
        .into_iter()
        .map(|(b1, b2)| GroupRBSystem {
            group: g.clone(),
            b1: GroupEndo { images: b1 },
            b2: GroupEndo { images: b2 },
        })
        .collect())
}

fn search(
    g: &FiniteGroup,
    order: &[usize],
    depth: usize,
    choices: &dyn Fn(usize) -> Vec<(usize, usize)>,
    b1: &mut Vec<Option<usize>>,
    b2: &mut Vec<Option<usize>>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    if depth == order.len() {
        out.push((
            b1.iter().map(|x| x.unwrap()).collect(),
            b2.iter().map(|x| x.unwrap()).collect(),
        ));
        return;
    }
    let x = order[depth];
    for (p, q) in choices(x) {
        b1[x] = Some(p);
        b2[x] = Some(q);
        if consistent(g, b1, b2) {
            search(g, order, depth + 1, choices, b1, b2, out);
        }
    }
    b1[x] = None;
    b2[x] = None;
}

/// False if some identity whose every ingredient is assigned already fails.
fn consistent(g: &FiniteGroup, b1: &[Option<usize>], b2: &[Option<usize>]) -> bool {
    let n = g.order();
    for a in 0..n {
        let (Some(b1a), Some(b2a)) = (b1[a], b2[a]) else {
            continue;
        };
        for b in 0..n {
            let x = g.mul(g.mul(b1a, b), b2a);
            if let (Some(b1b), Some(b1x)) = (b1[b], b1[x]) {
                if g.mul(b1a, b1b) != b1x {
                    return false;
                }
            }
            if let (Some(b2b), Some(b2x)) = (b2[b], b2[x]) {
                if g.mul(b2b, b2a) != b2x {
                    return false;
                }
            }
        }
    }
    true
}

/// `F[G]` with the group elements as basis in table order, `Δ(g) = g ⊗ g`,
/// `ε(g) = 1` and `S(g) = g⁻¹`.
pub fn group_algebra(g: &FiniteGroup) -> StructHopf {
    let n = g.order();
    let mult = Bilinear::from_fn(n, |i, j| SparseVec::basis(n, g.mul(i, j)));
    let algebra = StructAlgebra::new(
        g.elements().to_vec(),
        mult,
        SparseVec::basis(n, g.identity()),
    )
    .expect("group algebra shape");
    let terms = (0..n).map(|i| vec![(Rational::one(), i, i)]).collect();
    let coalgebra =
        StructCoalgebra::from_terms(g.elements().to_vec(), terms, vec![Rational::one(); n])
            .expect("group coalgebra shape");
    let antipode = basis_map_matrix(g.inverses());
    StructHopf::new(format!("F[{}]", g.name()), algebra, coalgebra, antipode)
        .expect("group algebras are Hopf algebras")
}

/// Linear extension `B̃₁(g) = B₁(g)`, `B̃₂(g) = B₂(g)⁻¹` to `F[G]`.
///
/// Requires both identities and `B₁(1) = B₂(1) = 1`; the returned system has
/// passed the full Hopf-level check.
pub fn extend_to_group_algebra(s: &GroupRBSystem) -> Result<RBSystem> {
    let report = check_group_rbs(s);
    if let Some(c) = report.failures().next() {
        return Err(Error::Precondition(format!(
            "{} fails at {}",
            c.id,
            c.witness
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_default()
        )));
    }
    let e = s.group.identity();
    if s.b1.apply(e) != e {
        return Err(Error::Precondition("B1(1_G) = 1_G does not hold".into()));
    }
    if s.b2.apply(e) != e {
        return Err(Error::Precondition("B2(1_G) = 1_G does not hold".into()));
    }
    let h = group_algebra(&s.group);
    let b1 = s.b1.matrix();
    let b2_inv: Vec<usize> = s.b2.images.iter().map(|&x| s.group.inverse(x)).collect();
    let b2 = basis_map_matrix(&b2_inv);
    RBSystem::new(h, b1, b2)
}

/// Every unit-fixing self-map of the group, as image arrays in lexicographic
/// order.
pub fn unit_fixing_maps(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let e = g.identity();
    let free: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    cartesian(n, free.len())
        .map(|vals| {
            let mut images = vec![e; n];
            for (&x, &v) in free.iter().zip(&vals) {
                images[x] = v;
            }
            images
        })
        .collect()
}

mod itertools_free {
    /// All tuples in `{0..n}^k` in lexicographic order.
    pub fn cartesian(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
        let total = if n == 0 && k > 0 { 0 } else { n.pow(k as u32) };
        (0..total).map(move |mut t| {
            let mut v = vec![0; k];
            for slot in v.iter_mut().rev() {
                *slot = t % n;
                t /= n;
            }
            v
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn standard_groups_verify() {
        assert!(verify_group(&FiniteGroup::cyclic(2)).passed());
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(verify_group(&s3).passed());
        assert!(!s3.is_abelian());
        assert_eq!(s3.identity(), 0);
    }

    #[test]
    fn repeated_row_entry_is_not_latin() {
        let r = verify_group_table(&[vec![0, 0], vec![1, 0]]);
        assert_eq!(r.status("GRP.latin"), Some(Status::Fail));
        assert_eq!(
            r.get("GRP.latin").unwrap().witness,
            Some(json!({"row": 0, "value": 0}))
        );
        assert!(FiniteGroup::new(
            "bad",
            vec!["a".into(), "b".into()],
            vec![vec![0, 0], vec![1, 0]]
        )
        .is_err());
    }

    #[test]
    fn out_of_range_table_entry() {
        let r = verify_group_table(&[vec![0, 2], vec![1, 0]]);
        assert_eq!(r.status("GRP.shape"), Some(Status::Fail));
    }

    #[test]
    fn trivial_system_passes() {
        let g = FiniteGroup::symmetric(3);
        let one = GroupEndo::constant(&g, g.identity());
        let s = GroupRBSystem::new(g, one.clone(), one).unwrap();
        assert!(check_group_rbs(&s).passed());
    }

    #[test]
    fn identity_and_trivial_on_abelian() {
        let g = FiniteGroup::cyclic(4);
        let s = GroupRBSystem::new(
            g.clone(),
            GroupEndo::identity(&g),
            GroupEndo::constant(&g, 0),
        )
        .unwrap();
        assert!(check_group_rbs(&s).passed());
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let g = FiniteGroup::symmetric(3);
        match enumerate_group_rbs(&g, true, 4) {
            Err(Error::EnumerationBound { order: 6, bound: 4 }) => {}
            other => panic!("expected bound error, got {other:?}"),
        }
    }

    #[test]
    fn extension_rejects_unit_violation() {
        let g = FiniteGroup::cyclic(2);
        // B1 = const 1, B2 = translation by g satisfies both identities on C2 but moves 1.
        let s = GroupRBSystem::new(
            g.clone(),
            GroupEndo::constant(&g, 0),
            GroupEndo::new(&g, vec![1, 0]).unwrap(),
        )
        .unwrap();
        assert!(check_group_rbs(&s).passed());
        match extend_to_group_algebra(&s) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("B2(1_G)")),
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn cartesian_is_lexicographic() {
        let v: Vec<Vec<usize>> = cartesian(2, 2).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(cartesian(3, 0).count(), 1);
    }
}
