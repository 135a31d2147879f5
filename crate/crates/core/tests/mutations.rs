//! Corrupted structures must be rejected by the checks.

mod common;

use std::sync::Arc;

use common::*;
use uqsgd_core::coaction::{
    canonical_coaction, check_comodule_algebra, check_structure_lemmas, check_transposed,
    path_algebra_presentation, Side,
};
use uqsgd_core::linalg::{Scalar, SparseVec};
use uqsgd_core::quiver::catalog;
use uqsgd_core::wba::{check_axioms, from_face_algebra, GradedWba, Tensor};

fn rebuild(h: &GradedWba, coproduct: impl Fn(usize, usize) -> Tensor + Sync) -> GradedWba {
    GradedWba::from_parts(
        (0..=h.max_degree()).map(|d| h.labels(d).to_vec()).collect(),
        |d, i, e, j| h.mul_basis(d, i, e, j).clone(),
        h.unit().clone(),
        coproduct,
        |d, i| h.counit_basis(d, i).clone(),
    )
    .unwrap()
}

#[test]
fn flipped_degree_two_coproduct_is_caught() {
    let q = catalog::loops(2);
    let h = from_face_algebra(&q, 2);
    assert!(check_axioms(&h).passed());
    // x[t1.t2;t2.t1] has a coproduct with distinct tensor factors
    let target = h
        .labels(2)
        .iter()
        .position(|l| l == "x[t1.t2;t2.t1]")
        .unwrap();
    let bad = rebuild(&h, |d, i| {
        let t = h.coproduct_basis(d, i).clone();
        if d == 2 && i == target {
            let mut flipped: Tensor = t.into_iter().map(|((a, b), c)| ((b, a), c)).collect();
            flipped.sort_by_key(|(k, _)| *k);
            flipped
        } else {
            t
        }
    });
    let report = check_axioms(&bad);
    assert!(!report.passed());
    assert!(
        report
            .checks
            .iter()
            .any(|c| !c.passed() && c.id.contains("multiplicative")),
        "{report:?}"
    );
}

#[test]
fn scaled_degree_one_coproduct_is_caught() {
    let q = catalog::cycle(3);
    let h = from_face_algebra(&q, 2);
    let bad = rebuild(&h, |d, i| {
        let t = h.coproduct_basis(d, i).clone();
        if d == 1 && i == 0 {
            t.into_iter()
                .map(|(k, c)| (k, &c * &Scalar::from_int(2)))
                .collect()
        } else {
            t
        }
    });
    assert!(!check_axioms(&bad).passed());
}

#[test]
fn zeroed_coaction_coefficient_is_caught() {
    let q = Arc::new(catalog::kronecker());
    let host = from_face_algebra(&q, 2);
    let alg = path_algebra_presentation(&q, 2);
    let mut c = canonical_coaction(&q, 2, Side::Left);
    assert!(check_comodule_algebra(&c, &host, &alg, 2).unwrap().passed());
    c.coefficients[1][0][0] = SparseVec::new();
    assert!(!check_comodule_algebra(&c, &host, &alg, 2).unwrap().passed());
    assert!(!check_structure_lemmas(&c, &host, &q, None)
        .unwrap()
        .passed());
}

#[test]
fn perturbed_right_coaction_is_not_transposed() {
    let q = Arc::new(catalog::loops(2));
    let l = canonical_coaction(&q, 2, Side::Left);
    let mut r = canonical_coaction(&q, 2, Side::Right);
    assert!(check_transposed(&l, &r).unwrap().passed());
    let entry = r.coefficients[2][1][2].clone();
    r.coefficients[2][1][2] = &entry + &SparseVec::unit(0);
    assert!(!check_transposed(&l, &r).unwrap().passed());
}

#[test]
fn counit_off_by_scalar_is_caught() {
    let q = catalog::loops(1);
    let h = from_face_algebra(&q, 2);
    let bad = GradedWba::from_parts(
        (0..=2).map(|d| h.labels(d).to_vec()).collect(),
        |d, i, e, j| h.mul_basis(d, i, e, j).clone(),
        h.unit().clone(),
        |d, i| h.coproduct_basis(d, i).clone(),
        |d, i| {
            if d == 1 {
                int(3)
            } else {
                h.counit_basis(d, i).clone()
            }
        },
    )
    .unwrap();
    assert!(!check_axioms(&bad).passed());
}
