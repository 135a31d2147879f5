//! Linear coactions of graded weak bialgebras on graded algebras, and the
//! checks that make them comodule algebras with a base isomorphism.
//!
//! Coefficients are stored as one matrix per degree. On the left,
//! `v_j ↦ Σ_k y[j][k] ⊗ v_k`; on the right, `v_j ↦ Σ_k v_k ⊗ y[k][j]`.
//! A left and a right coaction are transposed when their matrices agree.

use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::face::{CounitalSide, FaceElement, FaceError};
use crate::linalg::{Accum, Scalar, SparseVec, Subspace};
use crate::path_algebra::GradedAlgebra;
use crate::quiver::{PathBasis, Quiver};
use crate::report::{Check, Report};
use crate::wba::{primitive_idempotents, FaceIndex, GradedWba, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// The counital subalgebra that must receive `A_0` under a base isomorphism.
    pub fn base_side(self) -> CounitalSide {
        match self {
            Side::Left => CounitalSide::Target,
            Side::Right => CounitalSide::Source,
        }
    }

    /// The counital subalgebra containing the coefficients of the image of `1_A`.
    pub fn unit_side(self) -> CounitalSide {
        match self {
            Side::Left => CounitalSide::Source,
            Side::Right => CounitalSide::Target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoactionError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coactions are not over the same algebra basis")]
    BasisMismatch,
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),
    #[error("malformed coaction document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Face(#[from] FaceError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoactionSpec {
    pub side: Side,
    pub algebra_labels: Vec<Vec<String>>,
    /// `coefficients[d][j][k]`, an element of the host's degree-`d` piece.
    pub coefficients: Vec<Vec<Vec<SparseVec>>>,
}

impl CoactionSpec {
    pub fn max_degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn y(&self, d: usize, j: usize, k: usize) -> &SparseVec {
        &self.coefficients[d][j][k]
    }

    fn dim(&self, d: usize) -> usize {
        self.algebra_labels[d].len()
    }

    fn validate(
        &self,
        host: &GradedWba,
        algebra: Option<&GradedAlgebra>,
    ) -> Result<(), CoactionError> {
        if self.coefficients.len() != self.algebra_labels.len() {
            return Err(CoactionError::DimensionMismatch(
                "coefficient and basis degree counts differ".into(),
            ));
        }
        for (d, m) in self.coefficients.iter().enumerate() {
            let n = self.dim(d);
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(CoactionError::DimensionMismatch(format!(
                    "degree {d} matrix is not {n}x{n}"
                )));
            }
            if n > 0 && d > host.max_degree() {
                return Err(CoactionError::DimensionMismatch(format!(
                    "degree {d} exceeds the host truncation"
                )));
            }
            if m.iter()
                .flatten()
                .any(|y| y.entries().last().is_some_and(|(i, _)| *i >= host.dim(d)))
            {
                return Err(CoactionError::DimensionMismatch(format!(
                    "degree {d} coefficient outside the host"
                )));
            }
            if let Some(a) = algebra {
                if d <= a.max_degree() && a.dim(d) != n {
                    return Err(CoactionError::DimensionMismatch(format!(
                        "degree {d}: algebra has dimension {} but the coaction {n}",
                        a.dim(d)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Image of `v_j` (degree `d`) as `(host element, algebra index)` pairs.
    fn image(&self, d: usize, j: usize) -> Vec<(&SparseVec, usize)> {
        (0..self.dim(d))
            .map(|k| match self.side {
                Side::Left => (&self.coefficients[d][j][k], k),
                Side::Right => (&self.coefficients[d][k][j], k),
            })
            .filter(|(y, _)| !y.is_zero())
            .collect()
    }
}

/// `e_j ↦ Σ_i x[e_j;e_i] ⊗ e_i` and `q ↦ Σ_p x[q;p] ⊗ p` on the left, and
/// `e_j ↦ Σ_i e_i ⊗ x[e_i;e_j]`, `q ↦ Σ_p p ⊗ x[p;q]` on the right, extended
/// multiplicatively to all paths up to `max_degree`. Both sides share the
/// coefficient matrix `y[a][b] = x[a;b]`.
pub fn canonical_coaction(q: &Quiver, max_degree: usize, side: Side) -> CoactionSpec {
    let fx = FaceIndex::new(q, max_degree);
    let algebra_labels = (0..=max_degree)
        .map(|d| fx.paths.paths(d).iter().map(|p| q.path_label(p)).collect())
        .collect();
    let coefficients = (0..=max_degree)
        .map(|d| {
            let n = fx.paths.dim(d);
            (0..n)
                .map(|a| (0..n).map(|b| SparseVec::unit(fx.pair(d, a, b))).collect())
                .collect()
        })
        .collect();
    CoactionSpec {
        side,
        algebra_labels,
        coefficients,
    }
}

/// Coaction of `D` (or of the first summand of `D ⊕ D`) on `kQ••`, where
/// `y11 = y22 = x` and `y12 = y21 = y`; basis indices 0 and 1 of the host.
pub fn two_point_coaction(side: Side, max_degree: usize) -> CoactionSpec {
    let x = SparseVec::unit(0);
    let y = SparseVec::unit(1);
    let mut algebra_labels = vec![Vec::new(); max_degree + 1];
    algebra_labels[0] = vec!["e:1".to_string(), "e:2".to_string()];
    let mut coefficients = vec![Vec::new(); max_degree + 1];
    coefficients[0] = vec![vec![x.clone(), y.clone()], vec![y, x]];
    CoactionSpec {
        side,
        algebra_labels,
        coefficients,
    }
}

fn lab(c: &CoactionSpec, d: usize, j: usize) -> String {
    c.algebra_labels[d][j].clone()
}

/// Coassociativity, counitality, multiplicativity and the unit condition
/// `λ(1) ∈ H_s ⊗ A` (left) or `ρ(1) ∈ A ⊗ H_t` (right), up to `max_degree`.
pub fn check_comodule_algebra(
    c: &CoactionSpec,
    host: &GradedWba,
    algebra: &GradedAlgebra,
    max_degree: usize,
) -> Result<Report, CoactionError> {
    c.validate(host, Some(algebra))?;
    let max = max_degree
        .min(c.max_degree())
        .min(algebra.max_degree())
        .min(host.max_degree());
    let mut report = Report::new(format!("{:?} comodule algebra", c.side).to_lowercase());

    let entries: Vec<(usize, usize, usize)> = (0..=max)
        .flat_map(|d| (0..c.dim(d)).flat_map(move |j| (0..c.dim(d)).map(move |k| (d, j, k))))
        .collect();
    report.push(Check::over(
        "comodule.coassociativity",
        &entries,
        |&(d, j, k)| {
            let lhs = host.coproduct(d, c.y(d, j, k));
            let mut rhs = Accum::<(usize, usize)>::new();
            for l in 0..c.dim(d) {
                for (a, x) in c.y(d, j, l).iter() {
                    for (b, z) in c.y(d, l, k).iter() {
                        rhs.add((a, b), &(x * z));
                    }
                }
            }
            (lhs != rhs.into_sorted())
                .then(|| vec![format!("y[{};{}]", lab(c, d, j), lab(c, d, k))])
        },
    ));
    report.push(Check::over("comodule.counit", &entries, |&(d, j, k)| {
        let want = if j == k {
            Scalar::one()
        } else {
            Scalar::zero()
        };
        (host.counit(d, c.y(d, j, k)) != want)
            .then(|| vec![format!("y[{};{}]", lab(c, d, j), lab(c, d, k))])
    }));

    let pairs: Vec<(usize, usize, usize, usize)> = (0..=max)
        .flat_map(|da| (0..=max - da).map(move |db| (da, db)))
        .flat_map(|(da, db)| {
            (0..c.dim(da))
                .cartesian_product(0..c.dim(db))
                .map(move |(a, b)| (da, a, db, b))
        })
        .collect();
    report.push(Check::over(
        "comodule.multiplicative",
        &pairs,
        |&(da, a, db, b)| {
            let dn = da + db;
            // image of v_a v_b, and the product of images, as coefficient rows indexed by v_n
            let mut lhs: Vec<Accum> = (0..c.dim(dn)).map(|_| Accum::new()).collect();
            for (m, mu) in algebra.mul_basis(da, a, db, b).iter() {
                for (y, n) in c.image(dn, m) {
                    lhs[n].add_vec(y, mu);
                }
            }
            let mut rhs: Vec<Accum> = (0..c.dim(dn)).map(|_| Accum::new()).collect();
            for (ya, k) in c.image(da, a) {
                for (yb, l) in c.image(db, b) {
                    let prod = algebra.mul_basis(da, k, db, l);
                    if prod.is_zero() {
                        continue;
                    }
                    let yy = host.mul(da, ya, db, yb);
                    if yy.is_zero() {
                        continue;
                    }
                    for (n, mu) in prod.iter() {
                        rhs[n].add_vec(&yy, mu);
                    }
                }
            }
            let differs = lhs
                .into_iter()
                .zip(rhs)
                .any(|(l, r)| l.into_vec() != r.into_vec());
            differs.then(|| vec![lab(c, da, a), lab(c, db, b)])
        },
    ));

    let sub = host.counital_subalgebra(c.side.unit_side());
    let mut coeffs: Vec<Accum> = (0..c.dim(0)).map(|_| Accum::new()).collect();
    for (j, u) in algebra.unit().iter() {
        for (y, k) in c.image(0, j) {
            coeffs[k].add_vec(y, u);
        }
    }
    let results: Vec<Option<Vec<String>>> = coeffs
        .into_iter()
        .enumerate()
        .map(|(k, acc)| {
            let v = acc.into_vec();
            (!sub.contains(&v)).then(|| vec![lab(c, 0, k), host.render_element(0, &v)])
        })
        .collect();
    report.push(Check::from_results(
        "comodule.unit-in-counital-subalgebra",
        results,
    ));
    Ok(report)
}

fn same_basis(l: &CoactionSpec, r: &CoactionSpec) -> Result<(), CoactionError> {
    if l.side != Side::Left || r.side != Side::Right || l.algebra_labels != r.algebra_labels {
        return Err(CoactionError::BasisMismatch);
    }
    Ok(())
}

/// Entrywise `yλ[j][k] = yρ[j][k]` in every degree.
pub fn check_transposed(left: &CoactionSpec, right: &CoactionSpec) -> Result<Check, CoactionError> {
    same_basis(left, right)?;
    let mut results = Vec::new();
    for d in 0..=left.max_degree().min(right.max_degree()) {
        for j in 0..left.dim(d) {
            for k in 0..left.dim(d) {
                results.push(
                    (left.y(d, j, k) != right.y(d, j, k))
                        .then(|| vec![format!("y[{};{}]", lab(left, d, j), lab(left, d, k))]),
                );
            }
        }
    }
    Ok(Check::from_results("coaction.transposed", results))
}

/// Transposedness relative to a symmetric bilinear form `N_d` on each `A_d`:
/// `N Yλ = Yρ N`. With `N` the identity this is [`check_transposed`].
pub fn check_transposed_with_form(
    left: &CoactionSpec,
    right: &CoactionSpec,
    forms: &[Vec<Vec<Scalar>>],
) -> Result<Check, CoactionError> {
    same_basis(left, right)?;
    let mut results = Vec::new();
    for d in 0..=left
        .max_degree()
        .min(right.max_degree())
        .min(forms.len().saturating_sub(1))
    {
        let n = left.dim(d);
        let form = &forms[d];
        if form.len() != n || form.iter().any(|r| r.len() != n) {
            return Err(CoactionError::DimensionMismatch(format!(
                "form in degree {d}"
            )));
        }
        for j in 0..n {
            for k in 0..n {
                let mut l = Accum::new();
                let mut r = Accum::new();
                for m in 0..n {
                    l.add_vec(left.y(d, m, k), &form[j][m]);
                    r.add_vec(right.y(d, j, m), &form[m][k]);
                }
                results.push(
                    (l.into_vec() != r.into_vec())
                        .then(|| vec![format!("y[{};{}]", lab(left, d, j), lab(left, d, k))]),
                );
            }
        }
    }
    Ok(Check::from_results("coaction.transposed-for-form", results))
}

/// Checks that `e_i ↦ candidate[i]` is an algebra isomorphism from `A_0`
/// (spanned by the orthogonal idempotents `e_i`) onto the counital
/// subalgebra (`H_t` on the left, `H_s` on the right) intertwining the
/// coaction with the coproduct.
pub fn verify_base_iso(c: &CoactionSpec, host: &GradedWba, candidate: &[SparseVec]) -> Report {
    let mut report = Report::new(format!("{:?} base isomorphism", c.side).to_lowercase());
    let n = c.dim(0);
    let names = |i: usize| vec![lab(c, 0, i), host.render_element(0, &candidate[i])];
    if candidate.len() != n {
        report.push(Check::single("base-iso.arity", false, || {
            vec![format!("{} images for {n} idempotents", candidate.len())]
        }));
        return report;
    }
    let mut results = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = host.mul(0, &candidate[i], 0, &candidate[j]);
            let want = if i == j {
                candidate[i].clone()
            } else {
                SparseVec::new()
            };
            results.push((p != want).then(|| vec![lab(c, 0, i), lab(c, 0, j)]));
        }
    }
    let mut total = Accum::new();
    for v in candidate {
        total.add_vec(v, &Scalar::one());
    }
    let unit_ok = total.into_vec() == *host.unit();
    results.push((!unit_ok).then(|| vec!["1".to_string()]));
    report.push(Check::from_results("base-iso.algebra-map", results));

    let sub = host.counital_subalgebra(c.side.base_side());
    let span = Subspace::span(host.dim(0), candidate);
    report.push(Check::single(
        "base-iso.bijective-onto-counital-subalgebra",
        span == *sub && span.dim() == n,
        || {
            vec![format!(
                "image dimension {}, counital subalgebra dimension {}, |A_0| = {n}",
                span.dim(),
                sub.dim()
            )]
        },
    ));

    let results = (0..n)
        .map(|i| {
            let want = host.coproduct(0, &candidate[i]);
            let mut got = Accum::<(usize, usize)>::new();
            for k in 0..n {
                let (y, psi_k) = match c.side {
                    Side::Left => (c.y(0, i, k), &candidate[k]),
                    Side::Right => (c.y(0, k, i), &candidate[k]),
                };
                for (a, x) in y.iter() {
                    for (b, z) in psi_k.iter() {
                        let key = if c.side == Side::Left { (a, b) } else { (b, a) };
                        got.add(key, &(x * z));
                    }
                }
            }
            let got: Tensor = got.into_sorted();
            (got != want).then(|| names(i))
        })
        .collect();
    report.push(Check::from_results(
        "base-iso.intertwines-coaction",
        results,
    ));
    report
}

/// Tries every bijection between the `e_i` and the primitive idempotents of
/// the counital subalgebra, in lexicographic order of permutations.
pub fn search_base_iso(
    c: &CoactionSpec,
    host: &GradedWba,
) -> Result<Option<Vec<SparseVec>>, CoactionError> {
    c.validate(host, None)?;
    let sub = host.counital_subalgebra(c.side.base_side());
    let idems = primitive_idempotents(host, sub).ok_or_else(|| {
        CoactionError::UnsupportedBase(
            "degree-0 part is not spanned by orthogonal idempotents".into(),
        )
    })?;
    let n = c.dim(0);
    if idems.len() != n {
        return Ok(None);
    }
    for perm in (0..n).permutations(n) {
        let cand: Vec<SparseVec> = perm.iter().map(|&p| idems[p].clone()).collect();
        if verify_base_iso(c, host, &cand).passed() {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Identities forced on the coefficients `y_{i,j}` (vertices) and `y_{p,q}`
/// (arrows) of a comodule algebra structure on `kQ/I` with a base isomorphism,
/// plus the resulting description of the counital subalgebras through
/// `η_j = Σ_i y_{i,j}` and `θ_j = Σ_i y_{j,i}`.
pub fn check_structure_lemmas(
    c: &CoactionSpec,
    host: &GradedWba,
    quiver: &Quiver,
    base_iso: Option<&[SparseVec]>,
) -> Result<Report, CoactionError> {
    c.validate(host, None)?;
    let nv = quiver.num_vertices();
    let na = quiver.num_arrows();
    let has_arrows = c.max_degree() >= 1 && host.max_degree() >= 1;
    if c.dim(0) != nv || (has_arrows && c.dim(1) != na) {
        return Err(CoactionError::DimensionMismatch(
            "coaction basis does not match the quiver's vertices and arrows".into(),
        ));
    }
    let mut report = Report::new(format!("{:?} structure identities", c.side).to_lowercase());
    let y0 = |i: usize, j: usize| c.y(0, i, j);
    let mul0 = |a: &SparseVec, b: &SparseVec| host.mul(0, a, 0, b);
    let degrees: Vec<usize> = if has_arrows { vec![0, 1] } else { vec![0] };

    for &d in &degrees {
        let n = c.dim(d);
        let mut results = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut rhs = Accum::<(usize, usize)>::new();
                for k in 0..n {
                    for (a, x) in c.y(d, i, k).iter() {
                        for (b, z) in c.y(d, k, j).iter() {
                            rhs.add((a, b), &(x * z));
                        }
                    }
                }
                let delta_ok = host.coproduct(d, c.y(d, i, j)) == rhs.into_sorted();
                let want = if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                let eps_ok = host.counit(d, c.y(d, i, j)) == want;
                results.push(
                    (!(delta_ok && eps_ok))
                        .then(|| vec![format!("y[{};{}]", lab(c, d, i), lab(c, d, j))]),
                );
            }
        }
        let id = if d == 0 {
            "lemma.vertex-coefficients-grouplike-matrix"
        } else {
            "lemma.arrow-coefficients-grouplike-matrix"
        };
        report.push(Check::from_results(id, results));
    }

    let orth = |results: &mut Vec<Option<Vec<String>>>, column: bool| {
        for k in 0..nv {
            for i in 0..nv {
                for j in 0..nv {
                    let (a, b) = if column {
                        (y0(i, k), y0(j, k))
                    } else {
                        (y0(k, i), y0(k, j))
                    };
                    let want = if i == j { a.clone() } else { SparseVec::new() };
                    if mul0(a, b) != want {
                        results.push(Some(vec![format!(
                            "k={}, i={}, j={}",
                            lab(c, 0, k),
                            lab(c, 0, i),
                            lab(c, 0, j)
                        )]));
                    } else {
                        results.push(None);
                    }
                }
            }
        }
    };
    match c.side {
        Side::Left => {
            let mut r = Vec::new();
            orth(&mut r, true);
            report.push(Check::from_results("lemma.column-orthogonality", r));
        }
        Side::Right => {
            let mut r = Vec::new();
            orth(&mut r, false);
            report.push(Check::from_results("lemma.row-orthogonality", r));
        }
    }

    if has_arrows {
        let arrows = quiver.arrows();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        for p in 0..na {
            for q in 0..na {
                let ypq = c.y(1, p, q);
                let w = || vec![format!("y[{};{}]", arrows[p].name, arrows[q].name)];
                let s = host.mul(0, y0(arrows[p].source, arrows[q].source), 1, ypq);
                src.push((s != *ypq).then(w));
                let t = host.mul(1, ypq, 0, y0(arrows[p].target, arrows[q].target));
                tgt.push((t != *ypq).then(w));
            }
        }
        report.push(Check::from_results("lemma.source-absorption", src));
        report.push(Check::from_results("lemma.target-absorption", tgt));
    }

    let sum = |f: &dyn Fn(usize) -> SparseVec| -> Vec<SparseVec> { (0..nv).map(f).collect() };
    let eta = sum(&|j| {
        let mut a = Accum::new();
        for i in 0..nv {
            a.add_vec(y0(i, j), &Scalar::one());
        }
        a.into_vec()
    });
    let theta = sum(&|j| {
        let mut a = Accum::new();
        for i in 0..nv {
            a.add_vec(y0(j, i), &Scalar::one());
        }
        a.into_vec()
    });
    report.push(Check::from_results(
        "prop.eta-theta-nonzero",
        (0..nv)
            .map(|j| (eta[j].is_zero() || theta[j].is_zero()).then(|| vec![lab(c, 0, j)]))
            .collect(),
    ));
    let basis_check = |id: &str, family: &[SparseVec], side: CounitalSide| {
        let sub = host.counital_subalgebra(side);
        let mut results = Vec::new();
        for i in 0..nv {
            for j in 0..nv {
                let want = if i == j {
                    family[i].clone()
                } else {
                    SparseVec::new()
                };
                results.push(
                    (mul0(&family[i], &family[j]) != want)
                        .then(|| vec![lab(c, 0, i), lab(c, 0, j)]),
                );
            }
        }
        let span = Subspace::span(host.dim(0), family);
        results.push(
            (span != *sub || span.dim() != nv)
                .then(|| vec![format!("span dimension {} vs {}", span.dim(), sub.dim())]),
        );
        Check::from_results(id, results)
    };
    report.push(basis_check(
        "prop.eta-orthogonal-idempotent-basis-of-source",
        &eta,
        CounitalSide::Source,
    ));
    report.push(basis_check(
        "prop.theta-orthogonal-idempotent-basis-of-target",
        &theta,
        CounitalSide::Target,
    ));

    let mut total = Accum::new();
    for i in 0..nv {
        for j in 0..nv {
            total.add_vec(y0(i, j), &Scalar::one());
        }
    }
    report.push(Check::single(
        "prop.unit-is-sum-of-vertex-coefficients",
        total.into_vec() == *host.unit(),
        || vec!["1".into()],
    ));

    let mut results = Vec::new();
    for (i, j, k, l) in (0..nv)
        .cartesian_product(0..nv)
        .cartesian_product(0..nv)
        .cartesian_product(0..nv)
        .map(|(((a, b), c), d)| (a, b, c, d))
    {
        let want = if i == k && j == l {
            y0(i, j).clone()
        } else {
            SparseVec::new()
        };
        results.push((mul0(y0(i, j), y0(k, l)) != want).then(|| {
            vec![format!(
                "y[{};{}] y[{};{}]",
                lab(c, 0, i),
                lab(c, 0, j),
                lab(c, 0, k),
                lab(c, 0, l)
            )]
        }));
    }
    report.push(Check::from_results(
        "prop.vertex-coefficients-orthogonal-idempotents",
        results,
    ));

    if let Some(iso) = base_iso {
        let family = match c.side {
            Side::Left => &theta,
            Side::Right => &eta,
        };
        report.push(Check::single(
            "prop.base-iso-is-vertex-sums",
            iso == family.as_slice(),
            || {
                vec![format!(
                    "{:?} base isomorphism differs from the vertex sums",
                    c.side
                )]
            },
        ));
    }
    Ok(report)
}

/// One degree of a coaction document: algebra basis labels and the
/// coefficient matrix as face-element text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoactionDegreeDoc {
    pub basis: Vec<String>,
    pub coefficients: Vec<Vec<String>>,
}

/// `{"side": "left"|"right", "degrees": [{"basis": [...], "coefficients": [[...]]}]}`,
/// with coefficients in the face algebra of the given quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoactionDoc {
    pub side: Side,
    pub degrees: Vec<CoactionDegreeDoc>,
}

pub fn parse_coaction(q: &Arc<Quiver>, text: &str) -> Result<CoactionSpec, CoactionError> {
    let doc: CoactionDoc =
        serde_json::from_str(text).map_err(|e| CoactionError::Malformed(e.to_string()))?;
    coaction_from_doc(q, &doc)
}

pub fn coaction_from_doc(
    q: &Arc<Quiver>,
    doc: &CoactionDoc,
) -> Result<CoactionSpec, CoactionError> {
    if doc.degrees.is_empty() {
        return Err(CoactionError::Malformed("no degrees given".into()));
    }
    let max = doc.degrees.len() - 1;
    let fx = FaceIndex::new(q, max);
    let mut coefficients = Vec::new();
    for (d, deg) in doc.degrees.iter().enumerate() {
        let n = deg.basis.len();
        if deg.coefficients.len() != n || deg.coefficients.iter().any(|r| r.len() != n) {
            return Err(CoactionError::DimensionMismatch(format!(
                "degree {d} matrix is not {n}x{n}"
            )));
        }
        let mut rows = Vec::new();
        for row in &deg.coefficients {
            let mut out = Vec::new();
            for text in row {
                let e = FaceElement::parse(q.clone(), text)?;
                let mut entries = Vec::new();
                for (m, x) in e.terms() {
                    if m.degree() != d {
                        return Err(CoactionError::Malformed(format!(
                            "{text:?} is not of degree {d}"
                        )));
                    }
                    entries.push((fx.index(m), x.clone()));
                }
                out.push(SparseVec::from_entries(entries));
            }
            rows.push(out);
        }
        coefficients.push(rows);
    }
    Ok(CoactionSpec {
        side: doc.side,
        algebra_labels: doc.degrees.iter().map(|d| d.basis.clone()).collect(),
        coefficients,
    })
}

/// Inverse of [`coaction_from_doc`] for coactions with coefficients in `𝔥(Q)`.
pub fn coaction_to_doc(q: &Arc<Quiver>, c: &CoactionSpec) -> CoactionDoc {
    let fx = FaceIndex::new(q, c.max_degree());
    let render = |d: usize, v: &SparseVec| {
        FaceElement::from_terms(
            q.clone(),
            v.iter().map(|(i, x)| (x.clone(), fx.monomial(d, i))),
        )
        .to_string()
    };
    CoactionDoc {
        side: c.side,
        degrees: c
            .coefficients
            .iter()
            .enumerate()
            .map(|(d, rows)| CoactionDegreeDoc {
                basis: c.algebra_labels[d].clone(),
                coefficients: rows
                    .iter()
                    .map(|row| row.iter().map(|v| render(d, v)).collect())
                    .collect(),
            })
            .collect(),
    }
}

/// The path algebra `kQ` (no relations) as a graded algebra presentation.
pub fn path_algebra_presentation(q: &Quiver, max_degree: usize) -> GradedAlgebra {
    let pb = PathBasis::new(q, max_degree);
    GradedAlgebra::new(
        (0..=max_degree)
            .map(|d| pb.paths(d).iter().map(|p| q.path_label(p)).collect())
            .collect(),
        |d, i, e, j| match crate::quiver::compose_paths(&pb.paths(d)[i], &pb.paths(e)[j]) {
            Some(p) => SparseVec::unit(pb.index_of(&p).unwrap()),
            None => SparseVec::new(),
        },
        SparseVec::from_entries((0..q.num_vertices()).map(|i| (i, Scalar::one()))),
    )
}
