//! Shared fixtures for the integration tests: relation families written out
//! by hand, and brute-force oracles that avoid the library's spanning code.
#![allow(dead_code)]

use std::sync::Arc;

use uqsgd_core::face::{face_multiply, FaceElement, FaceMonomial};
use uqsgd_core::linalg::{Scalar, SparseVec, Subspace};
use uqsgd_core::path_algebra::{HomogeneousIdeal, PathElement};
use uqsgd_core::quiver::{compose_paths, PathBasis, Quiver};
use uqsgd_core::wba::{FaceIndex, GradedWba};

pub fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `x[p;q]` for single arrows named `p` and `q`.
pub fn x(q: &Arc<Quiver>, p: &str, r: &str) -> FaceElement {
    let m = FaceMonomial::new(q.parse_path(p).unwrap(), q.parse_path(r).unwrap()).unwrap();
    FaceElement::monomial(q.clone(), m)
}

pub fn mul(u: &FaceElement, v: &FaceElement) -> FaceElement {
    face_multiply(u, v).unwrap()
}

pub fn sub(u: &FaceElement, v: &FaceElement) -> FaceElement {
    u.add(&v.scale(&int(-1))).unwrap()
}

pub fn add(u: &FaceElement, v: &FaceElement) -> FaceElement {
    u.add(v).unwrap()
}

pub fn commutator(u: &FaceElement, v: &FaceElement) -> FaceElement {
    sub(&mul(u, v), &mul(v, u))
}

/// Coordinates of face elements of degree `d` in the basis of `𝔥(Q)_d`.
pub fn coords(q: &Quiver, d: usize, elems: &[FaceElement]) -> Vec<SparseVec> {
    let fx = FaceIndex::new(q, d);
    elems
        .iter()
        .map(|e| {
            SparseVec::from_entries(e.terms().map(|(m, c)| {
                assert_eq!(m.degree(), d);
                (fx.index(m), c.clone())
            }))
        })
        .collect()
}

pub fn span_of(q: &Quiver, d: usize, elems: &[FaceElement]) -> Subspace {
    Subspace::span(FaceIndex::new(q, d).dim(d), &coords(q, d, elems))
}

fn t(i: usize) -> String {
    format!("t{i}")
}

/// Left half-quantum-group relations for `k[t1..tn]`:
/// `[x_{ij}, x_{kj}]` and `[x_{ij}, x_{kl}] - [x_{kj}, x_{il}]` for `j != l`.
pub fn polynomial_left_families(q: &Arc<Quiver>, n: usize) -> Vec<FaceElement> {
    let y = |i: usize, j: usize| x(q, &t(i), &t(j));
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                out.push(commutator(&y(i, j), &y(k, j)));
                for l in (1..=n).filter(|&l| l != j) {
                    out.push(sub(
                        &commutator(&y(i, j), &y(k, l)),
                        &commutator(&y(k, j), &y(i, l)),
                    ));
                }
            }
        }
    }
    out
}

/// Right half-quantum-group relations: `[x_{ij}, x_{ik}]` and
/// `[x_{ij}, x_{kl}] - [x_{il}, x_{kj}]` for `i != k`.
pub fn polynomial_right_families(q: &Arc<Quiver>, n: usize) -> Vec<FaceElement> {
    let y = |i: usize, j: usize| x(q, &t(i), &t(j));
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                out.push(commutator(&y(i, j), &y(i, k)));
                for l in 1..=n {
                    if i != k {
                        out.push(sub(
                            &commutator(&y(i, j), &y(k, l)),
                            &commutator(&y(i, l), &y(k, j)),
                        ));
                    }
                }
            }
        }
    }
    out
}

/// All commutators `[x_{ij}, x_{kl}]`.
pub fn polynomial_commutators(q: &Arc<Quiver>, n: usize) -> Vec<FaceElement> {
    let y = |i: usize, j: usize| x(q, &t(i), &t(j));
    let mut out = Vec::new();
    for (i, j, k, l) in index_quads(n) {
        out.push(commutator(&y(i, j), &y(k, l)));
    }
    out
}

fn index_quads(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    v.push((i, j, k, l));
                }
            }
        }
    }
    v
}

/// Arrow names on the doubled `n`-cycle with indices taken mod `n` (1-based).
fn p(n: usize, i: i64) -> String {
    format!("p{}", (i - 1).rem_euclid(n as i64) + 1)
}

fn ps(n: usize, i: i64) -> String {
    format!("{}*", p(n, i))
}

/// The three hand-written families generating the left biideal of the
/// preprojective algebra on the doubled `n`-cycle, for all vertices `i, k`.
pub fn preprojective_left_families(q: &Arc<Quiver>, n: usize) -> Vec<FaceElement> {
    let y = |a: String, b: String| x(q, &a, &b);
    let mut out = Vec::new();
    for i in 1..=n as i64 {
        for k in 1..=n as i64 {
            out.push(sub(
                &mul(&y(p(n, k), p(n, i)), &y(ps(n, k), p(n, i + 1))),
                &mul(&y(ps(n, k - 1), p(n, i)), &y(p(n, k - 1), p(n, i + 1))),
            ));
            out.push(sub(
                &add(
                    &mul(&y(p(n, k), p(n, i)), &y(ps(n, k), ps(n, i))),
                    &mul(&y(p(n, k), ps(n, i - 1)), &y(ps(n, k), p(n, i - 1))),
                ),
                &add(
                    &mul(&y(ps(n, k - 1), p(n, i)), &y(p(n, k - 1), ps(n, i))),
                    &mul(&y(ps(n, k - 1), ps(n, i - 1)), &y(p(n, k - 1), p(n, i - 1))),
                ),
            ));
            out.push(sub(
                &mul(&y(p(n, k), ps(n, i)), &y(ps(n, k), ps(n, i - 1))),
                &mul(&y(ps(n, k - 1), ps(n, i)), &y(p(n, k - 1), ps(n, i - 1))),
            ));
        }
    }
    out
}

/// The three hand-written families generating the right biideal.
pub fn preprojective_right_families(q: &Arc<Quiver>, n: usize) -> Vec<FaceElement> {
    let y = |a: String, b: String| x(q, &a, &b);
    let mut out = Vec::new();
    for i in 1..=n as i64 {
        for k in 1..=n as i64 {
            out.push(sub(
                &mul(&y(p(n, i), p(n, k)), &y(p(n, i + 1), ps(n, k))),
                &mul(&y(p(n, i), ps(n, k - 1)), &y(p(n, i + 1), p(n, k - 1))),
            ));
            out.push(sub(
                &add(
                    &mul(&y(p(n, i), p(n, k)), &y(ps(n, i), ps(n, k))),
                    &mul(&y(ps(n, i - 1), p(n, k)), &y(p(n, i - 1), ps(n, k))),
                ),
                &add(
                    &mul(&y(p(n, i), ps(n, k - 1)), &y(ps(n, i), p(n, k - 1))),
                    &mul(&y(ps(n, i - 1), ps(n, k - 1)), &y(p(n, i - 1), p(n, k - 1))),
                ),
            ));
            out.push(sub(
                &mul(&y(ps(n, i), p(n, k)), &y(ps(n, i - 1), ps(n, k))),
                &mul(&y(ps(n, i), ps(n, k - 1)), &y(ps(n, i - 1), p(n, k - 1))),
            ));
        }
    }
    out
}

/// Number of length-`l` paths as the entry sum of the `l`-th power of the
/// adjacency matrix.
pub fn adjacency_path_count(q: &Quiver, l: usize) -> u64 {
    let n = q.num_vertices();
    let mut adj = vec![vec![0u64; n]; n];
    for a in q.arrows() {
        adj[a.source][a.target] += 1;
    }
    let mut pow: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for _ in 0..l {
        pow = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| pow[i][k] * adj[k][j]).sum())
                    .collect()
            })
            .collect();
    }
    pow.iter().flatten().sum()
}

/// `I_d` as the span of all `m_L g m_R` with `m_L, m_R` paths and `g` a
/// generator, without the one-step recursion.
pub fn sandwich_ideal_piece(ideal: &HomogeneousIdeal, d: usize) -> Subspace {
    let q = ideal.quiver();
    let basis = PathBasis::new(q, d);
    let mut vs = Vec::new();
    for g in ideal.generators() {
        let e = g.degree().unwrap();
        if e > d {
            continue;
        }
        for l in 0..=d - e {
            let r = d - e - l;
            for ml in PathBasis::new(q, l).paths(l) {
                for mr in PathBasis::new(q, r).paths(r) {
                    let terms = g.terms().filter_map(|(p, c)| {
                        let lp = compose_paths(ml, p)?;
                        Some((c.clone(), compose_paths(&lp, mr)?))
                    });
                    let v = PathElement::from_terms(q.clone(), terms.collect::<Vec<_>>());
                    vs.push(v.coords(&basis, d));
                }
            }
        }
    }
    Subspace::span(basis.dim(d), &vs)
}

/// Two-sided ideal of a graded algebra generated by `gens`, in degree `d`, as
/// the span of `u g v` over basis elements `u, v` of all compatible degrees.
pub fn sandwich_biideal_piece(h: &GradedWba, gens: &[(usize, SparseVec)], d: usize) -> Subspace {
    let mut vs = Vec::new();
    for (e, g) in gens {
        if *e > d {
            continue;
        }
        for l in 0..=d - e {
            let r = d - e - l;
            for u in 0..h.dim(l) {
                let ug = h.mul(l, &SparseVec::unit(u), *e, g);
                if ug.is_zero() {
                    continue;
                }
                for v in 0..h.dim(r) {
                    vs.push(h.mul(l + e, &ug, r, &SparseVec::unit(v)));
                }
            }
        }
    }
    Subspace::span(h.dim(d), &vs)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
