//! Workloads shared by the criterion benches.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uqsgd_core::linalg::{reduced_echelon, Scalar, SparseMatrix};
use uqsgd_core::path_algebra::{catalog as rel, quadratic_data, HomogeneousIdeal, QuadraticData};
use uqsgd_core::quiver::{catalog, Quiver};
use uqsgd_core::report::Report;
use uqsgd_core::uqsgd::{uqsgd_biideal_pieces, UqsgdSide};
use uqsgd_core::wba::{check_axioms, from_face_algebra};

/// Builds `𝔥(Q)` up to `max_degree` and checks every axiom.
pub fn face_with_axioms(q: &Quiver, max_degree: usize) -> Report {
    check_axioms(&from_face_algebra(q, max_degree))
}

/// Quadratic data of `k[t1..tn]`.
pub fn polynomial_ring(n: usize) -> QuadraticData {
    let q = Arc::new(catalog::loops(n));
    quadratic_data(&HomogeneousIdeal::new(q.clone(), rel::polynomial(&q)).unwrap()).unwrap()
}

pub fn biideal_dims(qd: &QuadraticData, side: UqsgdSide, max_degree: usize) -> Vec<usize> {
    uqsgd_biideal_pieces(qd, side, max_degree)
        .iter()
        .map(|s| s.dim())
        .collect()
}

/// A seeded `rows x cols` matrix with small integer entries, about a third nonzero.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> SparseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dense: Vec<Vec<Scalar>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.gen_bool(1.0 / 3.0) {
                        Scalar::from_int(rng.gen_range(-5..=5))
                    } else {
                        Scalar::from_int(0)
                    }
                })
                .collect()
        })
        .collect();
    SparseMatrix::from_dense(&dense)
}

pub fn rref_rank(m: &SparseMatrix) -> usize {
    reduced_echelon(m).1.len()
}
