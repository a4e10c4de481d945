#![allow(dead_code)]

use hopftruss_core::group::{group_algebra, FiniteGroup};
use hopftruss_core::hopf::{Bilinear, StructAlgebra, StructCoalgebra, StructHopf};
use hopftruss_core::linalg::{Mat, SparseVec};
use hopftruss_core::Rational;

pub fn standard_groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::symmetric(3),
    ]
}

pub fn fc(n: usize) -> StructHopf {
    group_algebra(&FiniteGroup::cyclic(n))
}

pub fn fs3() -> StructHopf {
    group_algebra(&FiniteGroup::symmetric(3))
}

/// `a ↦ ε(a)1`.
pub fn counit_map(h: &StructHopf) -> Mat {
    h.counit_map()
}

/// Basis map `e_i ↦ e_{images[i]}`.
pub fn basis_map(images: &[usize]) -> Mat {
    let n = images.len();
    Mat::from_columns(n, images.iter().map(|&i| SparseVec::basis(n, i)).collect()).unwrap()
}

/// Dual numbers `Q[x]/(x²)` with `x` primitive and `S(x) = −x`. Not a
/// bialgebra over the rationals (`Δ(x²) = 2x⊗x ≠ 0`), but its primitive
/// subspace is nonzero, which the group algebras never offer.
pub fn dual_numbers() -> StructHopf {
    let e = |i| SparseVec::basis(2, i);
    let names = vec!["1".to_string(), "x".to_string()];
    let mult = Bilinear::from_fn(2, |i, j| {
        if i + j < 2 {
            e(i + j)
        } else {
            SparseVec::zeros(2)
        }
    });
    let algebra = StructAlgebra::new(names.clone(), mult, e(0)).unwrap();
    let one = Rational::one();
    let terms = vec![
        vec![(one.clone(), 0, 0)],
        vec![(one.clone(), 1, 0), (one.clone(), 0, 1)],
    ];
    let coalgebra = StructCoalgebra::from_terms(names, terms, vec![one, Rational::zero()]).unwrap();
    let antipode = Mat::from_ints(&[&[1, 0], &[0, -1]]);
    StructHopf::from_parts_unchecked("dual", algebra, coalgebra, antipode).unwrap()
}

/// Every map `{0..n} → {0..n}` fixing `fixed` (when given), in
/// lexicographic order. Written without any search pruning.
pub fn all_maps(n: usize, fixed: Option<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = n.pow(n as u32);
    for mut code in 0..total {
        let mut m = vec![0; n];
        for slot in m.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        if fixed.map_or(true, |e| m[e] == e) {
            out.push(m);
        }
    }
    out
}

pub fn satisfies_group_rbs(g: &FiniteGroup, b1: &[usize], b2: &[usize]) -> bool {
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            let x = g.mul(g.mul(b1[a], b), b2[a]);
            if g.mul(b1[a], b1[b]) != b1[x] || g.mul(b2[b], b2[a]) != b2[x] {
                return false;
            }
        }
    }
    true
}

/// Brute-force oracle: all pairs of maps, no pruning.
pub fn oracle_naive(g: &FiniteGroup, fix_unit: bool) -> Vec<(Vec<usize>, Vec<usize>)> {
    let maps = all_maps(g.order(), fix_unit.then(|| g.identity()));
    let mut out = Vec::new();
    for b1 in &maps {
        for b2 in &maps {
            if satisfies_group_rbs(g, b1, b2) {
                out.push((b1.clone(), b2.clone()));
            }
        }
    }
    out
}

/// Oracle for larger groups: the first identity constrains each `B₂(a)`
/// separately once `B₁` is fixed, so candidates for `B₂` are filtered
/// pointwise before the full check.
pub fn oracle_split(g: &FiniteGroup, fix_unit: bool) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    let fixed = fix_unit.then(|| g.identity());
    let mut out = Vec::new();
    for b1 in all_maps(n, fixed) {
        let allowed: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&y| fixed.map_or(true, |e| a != e || y == e))
                    .filter(|&y| {
                        (0..n).all(|b| g.mul(b1[a], b1[b]) == b1[g.mul(g.mul(b1[a], b), y)])
                    })
                    .collect()
            })
            .collect();
        if allowed.iter().any(|s| s.is_empty()) {
            continue;
        }
        let mut idx = vec![0; n];
        'odometer: loop {
            let b2: Vec<usize> = (0..n).map(|a| allowed[a][idx[a]]).collect();
            if satisfies_group_rbs(g, &b1, &b2) {
                out.push((b1.clone(), b2));
            }
            for k in (0..n).rev() {
                idx[k] += 1;
                if idx[k] < allowed[k].len() {
                    continue 'odometer;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    out.sort();
    out
}

/// Regression counts of group systems with `B₁(1) = B₂(1) = 1`. The tests
/// recompute them with the oracles above.
pub const FROZEN_UNIT_FIXED: [(&str, usize); 4] = [("C2", 3), ("C3", 4), ("C4", 9), ("S3", 39)];
/// Counts without the unit condition.
pub const FROZEN_ALL: [(&str, usize); 3] = [("C2", 5), ("C3", 10), ("C4", 25)];
