//! Library results against independent brute-force computations and
//! hand-worked values.

mod common;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use uqsgd_core::coaction::{canonical_coaction, check_transposed, Side};
use uqsgd_core::face::{
    counital_map, face_basis, face_coproduct, face_counit, face_multiply, face_unit, CounitalSide,
    FaceElement, FaceMonomial,
};
use uqsgd_core::linalg::{null_space, reduced_echelon, Scalar, SparseMatrix, SparseVec, Subspace};
use uqsgd_core::path_algebra::{
    catalog as rel, multiply, parse_relations, HomogeneousIdeal, PathElement,
};
use uqsgd_core::quiver::{catalog, enumerate_paths, Path, Quiver};
use uqsgd_core::uqsgd::{
    build_uqsgd, coaction_relations, normal_form_gram, uqsgd_biideal_pieces, UqsgdSide,
};
use uqsgd_core::wba::{from_face_algebra, BiidealGens};

fn dense(rows: &[&[i64]]) -> SparseMatrix {
    SparseMatrix::from_dense(
        &rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect::<Vec<_>>(),
    )
}

fn vec_of(xs: &[i64]) -> SparseVec {
    SparseVec::from_dense(&xs.iter().map(|&x| int(x)).collect::<Vec<_>>())
}

#[test]
fn echelon_and_kernel_examples() {
    let (r, piv) = reduced_echelon(&dense(&[&[2, 0], &[0, 3]]));
    assert_eq!((r, piv), (dense(&[&[1, 0], &[0, 1]]), vec![0, 1]));
    let (r, piv) = reduced_echelon(&dense(&[&[1, 1], &[1, 1]]));
    assert_eq!((r, piv), (dense(&[&[1, 1]]), vec![0]));
    let (r, piv) = reduced_echelon(&dense(&[&[0, 0]]));
    assert_eq!((r.nrows(), piv.len()), (0, 0));

    assert_eq!(
        null_space(&dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).dim(),
        0
    );
    assert_eq!(
        null_space(&dense(&[&[1, 1]])),
        Subspace::span(2, &[vec_of(&[1, -1])])
    );
    assert_eq!(
        null_space(&dense(&[&[1, -1, 0], &[0, 1, -1]])),
        Subspace::span(3, &[vec_of(&[1, 1, 1])])
    );

    let e1 = Subspace::span(2, &[vec_of(&[1, 0])]);
    assert!(e1.contains(&vec_of(&[2, 0])));
    assert!(!e1.contains(&vec_of(&[0, 1])));
    assert_eq!(
        Subspace::span(2, &[vec_of(&[1, 1]), vec_of(&[1, -1])]),
        Subspace::full(2)
    );
    assert_ne!(e1, Subspace::span(2, &[vec_of(&[0, 1])]));
    assert_eq!(Subspace::zero(3), Subspace::zero(3));
}

#[test]
fn path_counts_match_adjacency_powers() {
    let mut quivers = catalog::fleet();
    quivers.push(("4-cycle", catalog::cycle(4)));
    for (name, q) in &quivers {
        for l in 0..=5 {
            assert_eq!(
                enumerate_paths(q, l).len() as u64,
                adjacency_path_count(q, l),
                "{name} l={l}"
            );
        }
    }
    assert_eq!(enumerate_paths(&catalog::loops(2), 3).len(), 8);
    assert!(enumerate_paths(&catalog::two_points(), 1).is_empty());
}

#[test]
fn hand_expanded_product() {
    let q = Arc::new(catalog::loops(2));
    let path = |s: &str| PathElement::path(q.clone(), q.parse_path(s).unwrap());
    let c = path("t1.t2").add(&path("t2.t1").scale(&int(-1))).unwrap();
    let want = path("t1.t2.t1")
        .add(&path("t2.t1.t1").scale(&int(-1)))
        .unwrap();
    assert_eq!(multiply(&c, &path("t1")).unwrap(), want);
}

fn sample_ideals() -> Vec<(&'static str, HomogeneousIdeal)> {
    let loops2 = Arc::new(catalog::loops(2));
    let loops3 = Arc::new(catalog::loops(3));
    let kron = Arc::new(catalog::kronecker());
    let cyc = Arc::new(catalog::cycle(3));
    let mk = |q: &Arc<Quiver>, g: Vec<PathElement>| HomogeneousIdeal::new(q.clone(), g).unwrap();
    let text = r#"{"relations": [[{"coeff": 1, "path": ["p1", "p2", "p3"]}], [{"coeff": 2, "path": ["p2", "p3"]}]]}"#;
    vec![
        ("polynomial 2", mk(&loops2, rel::polynomial(&loops2))),
        ("polynomial 3", mk(&loops3, rel::polynomial(&loops3))),
        ("exterior", mk(&loops2, rel::exterior(&loops2))),
        (
            "quantum plane",
            mk(&loops2, rel::quantum_plane(&loops2, Scalar::ratio(3, 2))),
        ),
        ("kronecker zero", HomogeneousIdeal::zero(kron)),
        (
            "cycle mixed degree",
            mk(&cyc, parse_relations(&cyc, text).unwrap()),
        ),
        (
            "preprojective",
            uqsgd_core::path_algebra::preprojective_relations(&catalog::cycle(3)).unwrap(),
        ),
    ]
}

#[test]
fn ideal_pieces_match_sandwich_spans() {
    for (name, ideal) in sample_ideals() {
        for d in 0..=4 {
            assert_eq!(
                *ideal.graded_piece(d),
                sandwich_ideal_piece(&ideal, d),
                "{name} d={d}"
            );
        }
    }
}

#[test]
fn commutator_quotient_dims_are_monomial_counts() {
    for n in 1..=3usize {
        let q = Arc::new(catalog::loops(n));
        let ideal = HomogeneousIdeal::new(q.clone(), rel::polynomial(&q)).unwrap();
        for d in 0..=4usize {
            assert_eq!(
                ideal.quotient_dimension(d) as u64,
                binomial((n + d - 1) as u64, d as u64),
                "n={n} d={d}"
            );
        }
    }
    let q = Arc::new(catalog::loops(2));
    let ideal = HomogeneousIdeal::new(q.clone(), rel::polynomial(&q)).unwrap();
    assert_eq!(ideal.graded_piece(2).dim(), 1);
    assert_eq!(ideal.graded_piece(3).dim(), 4);
    let ext = HomogeneousIdeal::new(q.clone(), rel::exterior(&q)).unwrap();
    assert_eq!(ext.quotient_dimension(2), 1);
}

#[test]
fn biideal_pieces_match_sandwich_spans() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    type Case = (
        String,
        Arc<uqsgd_core::wba::GradedWba>,
        Vec<(usize, SparseVec)>,
    );
    let mut cases: Vec<Case> = Vec::new();
    for (name, q) in catalog::fleet() {
        let h = Arc::new(from_face_algebra(&q, 3));
        for trial in 0..3 {
            let gens: Vec<(usize, SparseVec)> = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let d = rng.gen_range(1..=2);
                    let n = h.dim(d);
                    let v = if n == 0 {
                        SparseVec::new()
                    } else {
                        SparseVec::from_entries(
                            (0..3).map(|_| (rng.gen_range(0..n), int(rng.gen_range(-2..=2)))),
                        )
                    };
                    (d, v)
                })
                .collect();
            cases.push((format!("{name} #{trial}"), h.clone(), gens));
        }
    }
    for (name, h, gens) in cases {
        let pieces = BiidealGens::new(h.clone(), gens.clone())
            .unwrap()
            .graded_pieces(3);
        for (d, piece) in pieces.iter().enumerate() {
            assert_eq!(*piece, sandwich_biideal_piece(&h, &gens, d), "{name} d={d}");
        }
    }
    let q = Arc::new(catalog::loops(2));
    let h = Arc::new(from_face_algebra(&q, 2));
    let comms = coords(&q, 2, &polynomial_commutators(&q, 2));
    let b = BiidealGens::new(h, comms.into_iter().map(|v| (2, v)).collect()).unwrap();
    assert_eq!(
        b.graded_pieces(2)
            .iter()
            .map(Subspace::dim)
            .collect::<Vec<_>>(),
        [0, 0, 6]
    );
}

fn random_face_element(q: &Arc<Quiver>, d: usize, rng: &mut ChaCha8Rng) -> FaceElement {
    let basis = face_basis(q, d);
    FaceElement::from_terms(
        q.clone(),
        (0..3).map(|_| {
            (
                int(rng.gen_range(-3..=3)),
                basis[rng.gen_range(0..basis.len())].clone(),
            )
        }),
    )
}

#[test]
fn face_algebra_worked_values() {
    assert_eq!(face_basis(&catalog::loops(2), 1).len(), 4);
    assert_eq!(face_basis(&catalog::two_points(), 0).len(), 4);
    assert_eq!(face_basis(&catalog::cycle(3), 2).len(), 9);

    let q = Arc::new(catalog::cycle(3));
    assert!(mul(&x(&q, "p1", "p1"), &x(&q, "p3", "p3")).is_zero());

    let l2 = Arc::new(catalog::loops(2));
    let d = face_coproduct(&x(&l2, "t1", "t2"));
    assert_eq!(
        d.to_string(),
        "1 * x[t1;t1] ⊗ x[t1;t2] + 1 * x[t1;t2] ⊗ x[t2;t2]"
    );
    assert_eq!(
        face_counit(&face_unit(&Arc::new(catalog::two_points()))),
        int(2)
    );
}

#[test]
fn presentation_relations_hold_on_monomials() {
    for (name, q) in catalog::fleet() {
        let q = Arc::new(q);
        let unit = face_unit(&q);
        for d in 0..=3 {
            for m in face_basis(&q, d) {
                let e = FaceElement::monomial(q.clone(), m.clone());
                assert_eq!(face_multiply(&unit, &e).unwrap(), e, "{name}");
                assert_eq!(face_multiply(&e, &unit).unwrap(), e, "{name}");
                if d == 1 {
                    let (s, t) = (m.left().source(), m.right().source());
                    let (u, v) = (m.left().target(), m.right().target());
                    let vx = |i: usize, j: usize| {
                        FaceElement::monomial(
                            q.clone(),
                            FaceMonomial::new(Path::trivial(i), Path::trivial(j)).unwrap(),
                        )
                    };
                    assert_eq!(face_multiply(&vx(s, t), &e).unwrap(), e);
                    assert_eq!(face_multiply(&e, &vx(u, v)).unwrap(), e);
                }
            }
        }
        for i in 0..q.num_vertices() {
            for j in 0..q.num_vertices() {
                for k in 0..q.num_vertices() {
                    for l in 0..q.num_vertices() {
                        let vx = |a: usize, b: usize| {
                            FaceElement::monomial(
                                q.clone(),
                                FaceMonomial::new(Path::trivial(a), Path::trivial(b)).unwrap(),
                            )
                        };
                        let p = face_multiply(&vx(i, j), &vx(k, l)).unwrap();
                        let want = if i == k && j == l {
                            vx(i, j)
                        } else {
                            FaceElement::zero(q.clone())
                        };
                        assert_eq!(p, want);
                    }
                }
            }
        }
    }
}

#[test]
fn counit_is_product_of_deltas_on_random_words() {
    let q = Arc::new(catalog::cycle(3));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let k = rng.gen_range(1..=4);
        // words of single-arrow monomials, composable or not
        let pairs: Vec<(usize, usize)> = (0..k)
            .map(|_| (rng.gen_range(0..3), rng.gen_range(0..3)))
            .collect();
        let mut e = face_unit(&q);
        for &(p, r) in &pairs {
            let m = FaceMonomial::new(q.arrow_path(p), q.arrow_path(r)).unwrap();
            e = face_multiply(&e, &FaceElement::monomial(q.clone(), m)).unwrap();
        }
        let composable = pairs.windows(2).all(|w| {
            q.arrows()[w[0].0].target == q.arrows()[w[1].0].source
                && q.arrows()[w[0].1].target == q.arrows()[w[1].1].source
        });
        let deltas = pairs.iter().all(|(p, r)| p == r);
        assert_eq!(
            face_counit(&e),
            int(i64::from(composable && deltas)),
            "{pairs:?}"
        );
    }
}

#[test]
fn counital_maps_are_idempotent_and_span_the_face_idempotents() {
    let q = Arc::new(catalog::cycle(3));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let d = rng.gen_range(0..=3);
        let u = random_face_element(&q, d, &mut rng);
        for side in [CounitalSide::Source, CounitalSide::Target] {
            let once = counital_map(&u, side);
            assert_eq!(counital_map(&once, side), once);
        }
    }
    let (a, _) = uqsgd_core::face::face_idempotents(&q);
    let images: Vec<FaceElement> = (0..=2)
        .flat_map(|d| face_basis(&q, d))
        .map(|m| counital_map(&FaceElement::monomial(q.clone(), m), CounitalSide::Source))
        .collect();
    assert_eq!(span_of(&q, 0, &images), span_of(&q, 0, &a));
}

#[test]
fn coaction_relation_examples() {
    let q = Arc::new(catalog::loops(2));
    let ideal = HomogeneousIdeal::new(q.clone(), rel::polynomial(&q)).unwrap();
    let qd = uqsgd_core::path_algebra::quadratic_data(&ideal).unwrap();
    let gens = coaction_relations(&qd, Side::Left);
    // R^⊥ in the order t1t1, t1t2 + t2t1, t2t2
    assert_eq!(gens[0], commutator(&x(&q, "t1", "t1"), &x(&q, "t2", "t1")));
    let sym = add(
        &commutator(&x(&q, "t1", "t1"), &x(&q, "t2", "t2")),
        &commutator(&x(&q, "t1", "t2"), &x(&q, "t2", "t1")),
    );
    assert_eq!(gens[1], sym);
}

#[test]
fn generator_basis_does_not_matter() {
    let q = Arc::new(catalog::loops(2));
    let ideal = HomogeneousIdeal::new(q.clone(), rel::quantum_plane(&q, int(2))).unwrap();
    let qd = uqsgd_core::path_algebra::quadratic_data(&ideal).unwrap();
    let pieces = uqsgd_biideal_pieces(&qd, UqsgdSide::Left, 3);
    // the same biideal from hand-chosen bases c = t2t1 - 2 t1t2 and
    // d ∈ {t1t1, t2t2, 2 t2t1 + t1t2} rescaled and mixed
    let r = [(int(-2), "t1.t2"), (int(1), "t2.t1")];
    let perp: Vec<Vec<(Scalar, &str)>> = vec![
        vec![(int(3), "t1.t1"), (int(1), "t2.t2")],
        vec![(int(1), "t2.t2")],
        vec![(int(1), "t1.t2"), (int(2), "t2.t1"), (int(5), "t1.t1")],
    ];
    let h = Arc::new(from_face_algebra(&q, 3));
    let elems: Vec<FaceElement> = perp
        .iter()
        .map(|d| {
            let qr: &Quiver = &q;
            FaceElement::from_terms(
                q.clone(),
                r.iter().flat_map(|(c, a)| {
                    d.iter().map(move |(e, b)| {
                        (
                            c * e,
                            FaceMonomial::new(qr.parse_path(a).unwrap(), qr.parse_path(b).unwrap())
                                .unwrap(),
                        )
                    })
                }),
            )
        })
        .collect();
    let gens = coords(&q, 2, &elems).into_iter().map(|v| (2, v)).collect();
    assert_eq!(BiidealGens::new(h, gens).unwrap().graded_pieces(3), pieces);
}

#[test]
fn transposedness_needs_the_normal_form_pairing() {
    // On k[t1,t2] the two induced coactions do not share coefficients in the
    // coset basis, but they are transposed for the pairing induced by kQ.
    let q = Arc::new(catalog::loops(2));
    let ideal = HomogeneousIdeal::new(q.clone(), rel::polynomial(&q)).unwrap();
    let r = build_uqsgd(&ideal, UqsgdSide::Trans, 2).unwrap();
    let (l, rho) = (
        r.coaction(Side::Left).unwrap(),
        r.coaction(Side::Right).unwrap(),
    );
    assert!(!check_transposed(l, rho).unwrap().passed());
    let gram = normal_form_gram(&r.algebra);
    assert!(
        uqsgd_core::coaction::check_transposed_with_form(l, rho, &gram)
            .unwrap()
            .passed()
    );
    // with the free algebra the pairing is the identity and both agree
    let free = build_uqsgd(&HomogeneousIdeal::zero(q.clone()), UqsgdSide::Trans, 2).unwrap();
    let (l, rho) = (
        free.coaction(Side::Left).unwrap(),
        free.coaction(Side::Right).unwrap(),
    );
    assert!(check_transposed(l, rho).unwrap().passed());
    assert_eq!(*l, canonical_coaction(&q, 2, Side::Left));
}

#[test]
fn quantum_plane_swap_carries_left_onto_right() {
    let q = Arc::new(catalog::loops(2));
    let ideal = HomogeneousIdeal::new(q.clone(), rel::quantum_plane(&q, int(2))).unwrap();
    let report = uqsgd_core::uqsgd::check_quadratic_dualities(&ideal, 3).unwrap();
    assert!(report.get("duality.left-to-right-swap").unwrap().passed());
    let free = uqsgd_core::uqsgd::check_quadratic_dualities(&HomogeneousIdeal::zero(q), 3).unwrap();
    assert!(free.passed());
}
