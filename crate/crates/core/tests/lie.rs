mod common;

use common::*;
use hopftruss_core::group::{
    enumerate_group_rbs, extend_to_group_algebra, group_algebra, FiniteGroup,
};
use hopftruss_core::hopf::Bilinear;
use hopftruss_core::lie::{
    check_lie_rbs, from_primitives, restrict_to_primitives, verify_lie, LieAlgebra,
};
use hopftruss_core::linalg::{Mat, SparseVec};
use hopftruss_core::{q, Error, Status};

fn sl2() -> LieAlgebra {
    let e = |i| SparseVec::basis(3, i);
    // h = 0, e = 1, f = 2
    let bracket = Bilinear::from_fn(3, |i, j| match (i, j) {
        (0, 1) => e(1).scaled(&q(2, 1)),
        (1, 0) => e(1).scaled(&q(-2, 1)),
        (0, 2) => e(2).scaled(&q(-2, 1)),
        (2, 0) => e(2).scaled(&q(2, 1)),
        (1, 2) => e(0),
        (2, 1) => e(0).neg(),
        _ => SparseVec::zeros(3),
    });
    LieAlgebra::new(vec!["h".into(), "e".into(), "f".into()], bracket).unwrap()
}

fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::new(
        (0..n).map(|i| format!("x{i}")).collect(),
        Bilinear::from_fn(n, |_, _| SparseVec::zeros(n)),
    )
    .unwrap()
}

/// Independent evaluation of the first identity on one pair.
fn first_identity(l: &LieAlgebra, b1: &Mat, b2: &Mat, a: usize, b: usize) -> bool {
    let n = l.dim();
    let (x, y) = (SparseVec::basis(n, a), SparseVec::basis(n, b));
    let (p, r) = (b1.apply(&x), b1.apply(&y));
    let inner = l
        .bracket(&p, &r)
        .sub(&l.bracket(&b2.apply(&x), &b2.apply(&y)));
    l.bracket(&p, &r) == b1.apply(&inner)
}

#[test]
fn sl2_and_abelian_verify() {
    assert!(verify_lie(&sl2()).passed());
    for n in 0..4 {
        assert!(verify_lie(&abelian(n)).passed());
    }
}

#[test]
fn broken_jacobi_has_witness() {
    let l = sl2();
    let mut table = l.bracket_table().table().to_vec();
    table[1][2] = SparseVec::basis(3, 1);
    table[2][1] = SparseVec::basis(3, 1).neg();
    let bad = LieAlgebra::new(l.basis_names().to_vec(), Bilinear::new(3, table).unwrap()).unwrap();
    let r = verify_lie(&bad);
    assert_eq!(r.status("LIE.antisym"), Some(Status::Pass));
    assert_eq!(r.status("LIE.jacobi"), Some(Status::Fail));
    assert!(r.get("LIE.jacobi").unwrap().witness.is_some());
}

#[test]
fn operator_examples() {
    let l = sl2();
    let (id, zero) = (Mat::identity(3), Mat::zeros(3, 3));
    assert!(check_lie_rbs(&l, &zero, &zero, false).passed());
    assert!(check_lie_rbs(&l, &id, &zero, false).passed());
    assert_eq!(
        check_lie_rbs(&l, &id, &id, false).status("LRB1"),
        Some(Status::Fail)
    );
    for a in 0..3 {
        for b in 0..3 {
            assert!(first_identity(&l, &id, &zero, a, b));
        }
    }
    assert!(!(0..3).all(|a| (0..3).all(|b| first_identity(&l, &id, &id, a, b))));
}

#[test]
fn abelian_accepts_any_operators() {
    let l = abelian(2);
    let b1 = Mat::from_ints(&[&[1, 2], &[3, 4]]);
    let b2 = Mat::from_ints(&[&[0, -1], &[5, 7]]);
    assert!(check_lie_rbs(&l, &b1, &b2, true).passed());
}

#[test]
fn group_algebras_restrict_to_zero() {
    for g in standard_groups() {
        for gs in enumerate_group_rbs(&g, true, 8).unwrap() {
            let s = extend_to_group_algebra(&gs).unwrap();
            let l = restrict_to_primitives(&s).unwrap();
            assert_eq!(l.lie.dim(), 0);
            assert!(verify_lie(&l.lie).passed());
            assert!(check_lie_rbs(&l.lie, &l.b1, &l.b2, false).passed());
        }
    }
    let h = group_algebra(&FiniteGroup::cyclic(1));
    let l = from_primitives(&h, &Mat::identity(1), &Mat::identity(1)).unwrap();
    assert_eq!(l.lie.dim(), 0);
}

#[test]
fn nonzero_primitive_path() {
    let h = dual_numbers();
    let l = from_primitives(&h, &Mat::identity(2), &Mat::identity(2)).unwrap();
    assert_eq!(l.lie.dim(), 1);
    assert_eq!(l.embedding.column(0), &SparseVec::basis(2, 1));
    assert_eq!(l.b1, Mat::identity(1));
    assert_eq!(l.b2, Mat::identity(1).scaled(&q(-1, 1)));
    assert!(check_lie_rbs(&l.lie, &l.b1, &l.b2, false).passed());
}

#[test]
fn operator_leaving_primitives_is_an_error() {
    let h = dual_numbers();
    // x ↦ 1 is not primitive.
    let b = Mat::from_ints(&[&[1, 1], &[0, 0]]);
    assert!(matches!(
        from_primitives(&h, &b, &Mat::identity(2)),
        Err(Error::NotClosed(_))
    ));
}
