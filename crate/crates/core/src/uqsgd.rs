//! Presentations of the left, right and transposed universal quantum linear
//! semigroupoids of a quadratic algebra `kQ/(R)` as quotients of `𝔥(Q)`.
//!
//! With `c` ranging over a basis of `R` and `d` over a basis of `R^⊥`, the
//! left biideal is generated by `Σ c_a d_b x[a;b]` and the right one by
//! `Σ c_a d_b x[b;a]`; the transposed one by both.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coaction::{
    check_comodule_algebra, check_structure_lemmas, check_transposed_with_form, search_base_iso,
    verify_base_iso, CoactionError, CoactionSpec, Side,
};
use crate::face::{FaceElement, FaceMonomial};
use crate::linalg::{Accum, Scalar, SparseVec, Subspace};
use crate::path_algebra::{
    quadratic_data, quadratic_dual, star_index_map, HomogeneousIdeal, PathAlgebraError,
    PathQuotient, QuadraticData,
};
use crate::quiver::{PathBasis, Quiver};
use crate::report::{Check, Report};
use crate::wba::{
    check_axioms, check_biideal_pieces, from_face_algebra, quotient_by_pieces, BiidealGens,
    FaceIndex, GradedWba, QuotientWba, WbaError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UqsgdSide {
    Left,
    Right,
    Trans,
}

impl UqsgdSide {
    fn coaction_sides(self) -> &'static [Side] {
        match self {
            UqsgdSide::Left => &[Side::Left],
            UqsgdSide::Right => &[Side::Right],
            UqsgdSide::Trans => &[Side::Left, Side::Right],
        }
    }
}

#[derive(Debug, Error)]
pub enum UqsgdError {
    #[error(transparent)]
    PathAlgebra(#[from] PathAlgebraError),
    #[error(transparent)]
    Wba(#[from] WbaError),
    #[error(transparent)]
    Coaction(#[from] CoactionError),
    #[error("verification failed")]
    Unsound(Vec<Report>),
}

/// Degree-2 generators in the coordinates of `𝔥(Q)_2` (index `a * |Q_2| + b`
/// for `x[a;b]`), one per pair of basis vectors of `R` and `R^⊥`, relation-major.
pub fn relation_vectors(qd: &QuadraticData, side: Side) -> Vec<SparseVec> {
    let n = qd.relation_space.ambient_dim();
    let perp = qd.relation_space.orthogonal_complement();
    let mut out = Vec::with_capacity(qd.relation_space.dim() * perp.dim());
    for c in qd.relation_space.basis() {
        for d in perp.basis() {
            let mut acc = Accum::new();
            for (a, x) in c.iter() {
                for (b, y) in d.iter() {
                    let idx = match side {
                        Side::Left => a * n + b,
                        Side::Right => b * n + a,
                    };
                    acc.add_product(idx, x, y);
                }
            }
            let v = acc.into_vec();
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    out
}

fn face_element(q: &Arc<Quiver>, fx: &FaceIndex, d: usize, v: &SparseVec) -> FaceElement {
    FaceElement::from_terms(
        q.clone(),
        v.iter().map(|(i, c)| (c.clone(), fx.monomial(d, i))),
    )
}

/// The generators of the one-sided biideals as face elements.
pub fn coaction_relations(qd: &QuadraticData, side: Side) -> Vec<FaceElement> {
    let fx = FaceIndex::new(&qd.quiver, 2);
    relation_vectors(qd, side)
        .iter()
        .map(|v| face_element(&qd.quiver, &fx, 2, v))
        .collect()
}

/// Degree-2 generators for `side`; the transposed side takes the left ones
/// followed by the right ones.
pub fn biideal_generators(qd: &QuadraticData, side: UqsgdSide) -> Vec<SparseVec> {
    side.coaction_sides()
        .iter()
        .flat_map(|&s| relation_vectors(qd, s))
        .collect()
}

/// Graded pieces of the biideal for `side` inside `𝔥(Q)` truncated at `max_degree`.
pub fn uqsgd_biideal_pieces(
    qd: &QuadraticData,
    side: UqsgdSide,
    max_degree: usize,
) -> Vec<Subspace> {
    let host = Arc::new(from_face_algebra(&qd.quiver, max_degree));
    let gens = if max_degree >= 2 {
        biideal_generators(qd, side)
            .into_iter()
            .map(|v| (2, v))
            .collect()
    } else {
        Vec::new()
    };
    BiidealGens::new(host, gens)
        .expect("degree-2 generators within range")
        .graded_pieces(max_degree)
}

#[derive(Debug, Clone)]
pub struct UqsgdResult {
    pub side: UqsgdSide,
    pub quadratic: QuadraticData,
    pub generators: Vec<FaceElement>,
    pub host: Arc<GradedWba>,
    pub quotient: QuotientWba,
    pub algebra: PathQuotient,
    /// Induced coactions on `kQ/I`: one for a one-sided result, left then right
    /// for the transposed one.
    pub coactions: Vec<CoactionSpec>,
    pub base_isos: Vec<Vec<SparseVec>>,
    pub reports: Vec<Report>,
}

impl UqsgdResult {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.quotient.wba.dims()
    }

    pub fn biideal_piece(&self, d: usize) -> &Subspace {
        &self.quotient.pieces[d]
    }

    pub fn coaction(&self, side: Side) -> Option<&CoactionSpec> {
        self.coactions.iter().find(|c| c.side == side)
    }
}

/// The canonical coaction on `kQ` pushed down to `H/ℐ` and `kQ/I`, on the
/// coset bases of both.
pub fn induced_coaction(
    side: Side,
    fx: &FaceIndex,
    quotient: &QuotientWba,
    algebra: &PathQuotient,
) -> CoactionSpec {
    let max = algebra.algebra.max_degree();
    let coefficients = (0..=max)
        .map(|d| {
            let n = algebra.algebra.dim(d);
            let np = algebra.paths.dim(d);
            let p = &algebra.projectors[d];
            let mut y = vec![vec![SparseVec::new(); n]; n];
            for j in 0..n {
                let r = algebra.rep(d, j);
                let mut acc: Vec<Accum> = (0..n).map(|_| Accum::new()).collect();
                for b in 0..np {
                    let x = match side {
                        Side::Left => fx.pair(d, r, b),
                        Side::Right => fx.pair(d, b, r),
                    };
                    let px = quotient.projectors[d].project_unit(x);
                    if px.is_zero() {
                        continue;
                    }
                    for (k, c) in p.project_unit(b).iter() {
                        acc[k].add_vec(px, c);
                    }
                }
                for (k, a) in acc.into_iter().enumerate() {
                    match side {
                        Side::Left => y[j][k] = a.into_vec(),
                        Side::Right => y[k][j] = a.into_vec(),
                    }
                }
            }
            y
        })
        .collect();
    CoactionSpec {
        side,
        algebra_labels: (0..=max)
            .map(|d| algebra.algebra.labels(d).to_vec())
            .collect(),
        coefficients,
    }
}

/// The canonical coaction sends each basis vector of `I_d` to zero in
/// `(H/ℐ) ⊗ (kQ/I)` (left) or `(kQ/I) ⊗ (H/ℐ)` (right).
fn check_descends(
    side: Side,
    fx: &FaceIndex,
    quotient: &QuotientWba,
    algebra: &PathQuotient,
) -> Check {
    let q = &algebra.quiver;
    let mut results = Vec::new();
    for d in 0..=algebra.algebra.max_degree() {
        let np = algebra.paths.dim(d);
        for v in algebra.pieces[d].basis() {
            let mut acc = Accum::<(usize, usize)>::new();
            for (a, c) in v.iter() {
                for b in 0..np {
                    let x = match side {
                        Side::Left => fx.pair(d, a, b),
                        Side::Right => fx.pair(d, b, a),
                    };
                    let px = quotient.projectors[d].project_unit(x);
                    for (k, z) in algebra.projectors[d].project_unit(b).iter() {
                        let cz = c * z;
                        for (h, w) in px.iter() {
                            acc.add((h, k), &(&cz * w));
                        }
                    }
                }
            }
            let fail = !acc.is_zero();
            results.push(fail.then(|| {
                vec![
                    crate::path_algebra::PathElement::from_coords(q.clone(), &algebra.paths, d, v)
                        .to_string(),
                ]
            }));
        }
    }
    Check::from_results(format!("coaction.{}-descends", side_name(side)), results)
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

/// `N_d[j][k] = Σ_b NF(b)_j NF(b)_k` over the paths `b` of length `d`, where
/// `NF` is the coset normal form. The identity when `I_d = 0`.
pub fn normal_form_gram(algebra: &PathQuotient) -> Vec<Vec<Vec<Scalar>>> {
    (0..=algebra.algebra.max_degree())
        .map(|d| {
            let n = algebra.algebra.dim(d);
            let mut g = vec![vec![Scalar::zero(); n]; n];
            for b in 0..algebra.paths.dim(d) {
                let nf = algebra.projectors[d].project_unit(b);
                for (j, x) in nf.iter() {
                    for (k, y) in nf.iter() {
                        g[j][k] = &g[j][k] + &(x * y);
                    }
                }
            }
            g
        })
        .collect()
}

/// Builds `𝔥(Q)/ℐ` for a quadratic ideal, induces the coaction(s) on `kQ/I`
/// and verifies the whole bundle up to `max_degree`.
pub fn build_uqsgd(
    ideal: &HomogeneousIdeal,
    side: UqsgdSide,
    max_degree: usize,
) -> Result<UqsgdResult, UqsgdError> {
    let qd = quadratic_data(ideal)?;
    let q = qd.quiver.clone();
    let fx = FaceIndex::new(&q, max_degree);
    let host = Arc::new(from_face_algebra(&q, max_degree));
    let gens_vec = if max_degree >= 2 {
        biideal_generators(&qd, side)
    } else {
        Vec::new()
    };
    let generators = gens_vec
        .iter()
        .map(|v| face_element(&q, &fx, 2, v))
        .collect();
    let gens = BiidealGens::new(host.clone(), gens_vec.into_iter().map(|v| (2, v)).collect())?;
    let pieces = gens.graded_pieces(max_degree);
    let biideal_report = check_biideal_pieces(&host, &pieces);
    if !biideal_report.passed() {
        return Err(WbaError::NotBiideal(Box::new(biideal_report)).into());
    }
    let quotient = quotient_by_pieces(&host, pieces);
    let algebra = PathQuotient::new(ideal, max_degree);

    let mut reports = vec![biideal_report, check_axioms(&quotient.wba)];
    let mut coactions = Vec::new();
    let mut base_isos = Vec::new();
    for &s in side.coaction_sides() {
        let c = induced_coaction(s, &fx, &quotient, &algebra);
        let mut r = check_comodule_algebra(&c, &quotient.wba, &algebra.algebra, max_degree)?;
        r.push(check_descends(s, &fx, &quotient, &algebra));
        r.subject = format!("{} induced coaction", side_name(s));
        reports.push(r);
        match search_base_iso(&c, &quotient.wba)? {
            Some(iso) => {
                let mut v = verify_base_iso(&c, &quotient.wba, &iso);
                v.push(Check::single("base-iso.found", true, Vec::new));
                reports.push(v);
                reports.push(check_structure_lemmas(&c, &quotient.wba, &q, Some(&iso))?);
                base_isos.push(iso);
            }
            None => {
                let mut v = Report::new(format!("{} base isomorphism", side_name(s)));
                v.push(Check::single("base-iso.found", false, || {
                    vec!["no bijection of primitive idempotents".into()]
                }));
                reports.push(v);
                reports.push(check_structure_lemmas(&c, &quotient.wba, &q, None)?);
            }
        }
        coactions.push(c);
    }
    if side == UqsgdSide::Trans {
        let mut r = Report::new("transposed coactions");
        r.push(check_transposed_with_form(
            &coactions[0],
            &coactions[1],
            &normal_form_gram(&algebra),
        )?);
        reports.push(r);
    }
    let result = UqsgdResult {
        side,
        quadratic: qd,
        generators,
        host,
        quotient,
        algebra,
        coactions,
        base_isos,
        reports,
    };
    if !result.passed() {
        return Err(UqsgdError::Unsound(result.reports));
    }
    Ok(result)
}

fn transport(piece: &Subspace, map: impl Fn(usize) -> usize) -> Subspace {
    let moved: Vec<SparseVec> = piece
        .basis()
        .iter()
        .map(|v| v.remap(|i| Some(map(i))))
        .collect();
    Subspace::span(piece.ambient_dim(), &moved)
}

/// `x[a;b] ↦ x[a*;b*]` from `𝔥(Q)_d` to `𝔥(Q^op)_d`.
fn star_pair_map(q: &Quiver, op: &Quiver, d: usize) -> impl Fn(usize) -> usize {
    let star = star_index_map(q, op, d);
    let n = star.len();
    move |i| star[i / n] * n + star[i % n]
}

fn swap_pair_map(q: &Quiver, d: usize) -> impl Fn(usize) -> usize {
    let n = PathBasis::new(q, d).dim(d);
    move |i| (i % n) * n + i / n
}

/// Transports between the biideals of `A = kQ/I` and of its quadratic dual:
/// `x[a;b] ↦ x[a*;b*]` carries left(A) onto right(A^!), right(A) onto
/// left(A^!) and trans(A) onto trans(A^!); `x[a;b] ↦ x[b;a]` carries left(A)
/// onto right(A). Each is checked as subspace equality in every degree up to
/// `max_degree`, together with equality of the quotient dimensions.
pub fn check_quadratic_dualities(
    ideal: &HomogeneousIdeal,
    max_degree: usize,
) -> Result<Report, UqsgdError> {
    let qd = quadratic_data(ideal)?;
    let dual = quadratic_dual(&qd);
    let (q, op) = (&qd.quiver, &dual.quiver);
    let pieces = |data: &QuadraticData, s| uqsgd_biideal_pieces(data, s, max_degree);
    let (l, r, t) = (
        pieces(&qd, UqsgdSide::Left),
        pieces(&qd, UqsgdSide::Right),
        pieces(&qd, UqsgdSide::Trans),
    );
    let (dl, dr, dt) = (
        pieces(&dual, UqsgdSide::Left),
        pieces(&dual, UqsgdSide::Right),
        pieces(&dual, UqsgdSide::Trans),
    );

    let mut report = Report::new("quadratic dualities");
    let star = |from: &[Subspace], to: &[Subspace]| -> Vec<Option<Vec<String>>> {
        (0..=max_degree)
            .map(|d| {
                let moved = transport(&from[d], star_pair_map(q, op, d));
                (moved != to[d]).then(|| {
                    vec![format!(
                        "degree {d}: transported dimension {}, target dimension {}",
                        moved.dim(),
                        to[d].dim()
                    )]
                })
            })
            .collect()
    };
    report.push(Check::from_results(
        "duality.left-to-dual-right",
        star(&l, &dr),
    ));
    report.push(Check::from_results(
        "duality.right-to-dual-left",
        star(&r, &dl),
    ));
    let swap = (0..=max_degree)
        .map(|d| {
            let moved = transport(&l[d], swap_pair_map(q, d));
            (moved != r[d]).then(|| {
                vec![format!(
                    "degree {d}: swapped dimension {}, right dimension {}",
                    moved.dim(),
                    r[d].dim()
                )]
            })
        })
        .collect();
    report.push(Check::from_results("duality.left-to-right-swap", swap));
    report.push(Check::from_results(
        "duality.trans-to-dual-trans",
        star(&t, &dt),
    ));
    Ok(report)
}

/// Degree-2 elements of `𝔥(Q)` given as face elements, in host coordinates.
pub fn face_vectors(q: &Quiver, elems: &[FaceElement]) -> Vec<SparseVec> {
    let fx = FaceIndex::new(q, 2);
    elems
        .iter()
        .map(|e| {
            SparseVec::from_entries(
                e.terms()
                    .map(|(m, c): (&FaceMonomial, &Scalar)| (fx.index(m), c.clone())),
            )
        })
        .collect()
}
