//! Graded weak bialgebras given by structure constants, truncated at a
//! maximal degree, together with axiom checks, direct sums, biideals and
//! quotients.
//!
//! Every identity is checked only on instances whose intermediate terms stay
//! within the truncation window.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::face::{monomial_product, CounitalSide, FaceMonomial};
use crate::linalg::{Accum, CosetProjector, EchelonBuilder, Scalar, SparseVec, Subspace};
use crate::quiver::{PathBasis, Quiver};
use crate::report::{Check, Report};

/// Element of `H_d ⊗ H_d`: sorted `((left, right), coefficient)` terms.
pub type Tensor = Vec<((usize, usize), Scalar)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WbaError {
    #[error("truncation mismatch: maximal degrees {0} and {1}")]
    TruncationMismatch(usize, usize),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("generator {index} has degree {degree}, above the truncation degree {max}")]
    GeneratorDegree {
        index: usize,
        degree: usize,
        max: usize,
    },
    #[error("generators do not span a biideal")]
    NotBiideal(Box<Report>),
}

/// A graded weak bialgebra presented by per-degree bases and structure
/// constants up to `max_degree`. The coproduct and counit preserve degree.
#[derive(Debug, Clone)]
pub struct GradedWba {
    max_degree: usize,
    labels: Vec<Vec<String>>,
    // products[d][e][i * dim(e) + j] = b_i b_j for d + e <= max_degree
    products: Vec<Vec<Vec<SparseVec>>>,
    unit: SparseVec,
    coproducts: Vec<Vec<Tensor>>,
    counit: Vec<Vec<Scalar>>,
    source: OnceLock<Subspace>,
    target: OnceLock<Subspace>,
}

fn tensor_from_accum(acc: Accum<(usize, usize)>) -> Tensor {
    acc.into_sorted()
}

impl GradedWba {
    pub fn from_parts(
        labels: Vec<Vec<String>>,
        product: impl Fn(usize, usize, usize, usize) -> SparseVec + Sync,
        unit: SparseVec,
        coproduct: impl Fn(usize, usize) -> Tensor + Sync,
        counit: impl Fn(usize, usize) -> Scalar + Sync,
    ) -> Result<Self, WbaError> {
        if labels.is_empty() {
            return Err(WbaError::Malformed("need at least degree 0".into()));
        }
        let max = labels.len() - 1;
        let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
        let products: Vec<Vec<Vec<SparseVec>>> = (0..=max)
            .map(|d| {
                (0..=max - d)
                    .map(|e| {
                        (0..dims[d] * dims[e])
                            .into_par_iter()
                            .map(|k| product(d, k / dims[e], e, k % dims[e]))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        for d in 0..=max {
            for e in 0..=max - d {
                for v in &products[d][e] {
                    if v.entries().last().is_some_and(|(i, _)| *i >= dims[d + e]) {
                        return Err(WbaError::Malformed(format!(
                            "product of degrees {d},{e} out of range"
                        )));
                    }
                }
            }
        }
        if unit.entries().last().is_some_and(|(i, _)| *i >= dims[0]) {
            return Err(WbaError::Malformed("unit out of range".into()));
        }
        let coproducts: Vec<Vec<Tensor>> = (0..=max)
            .map(|d| {
                (0..dims[d])
                    .into_par_iter()
                    .map(|i| coproduct(d, i))
                    .collect()
            })
            .collect();
        for (d, row) in coproducts.iter().enumerate() {
            for t in row {
                if t.iter().any(|((a, b), _)| *a >= dims[d] || *b >= dims[d]) {
                    return Err(WbaError::Malformed(format!(
                        "coproduct in degree {d} out of range"
                    )));
                }
            }
        }
        let counit = (0..=max)
            .map(|d| (0..dims[d]).map(|i| counit(d, i)).collect())
            .collect();
        Ok(GradedWba {
            max_degree: max,
            labels,
            products,
            unit,
            coproducts,
            counit,
            source: OnceLock::new(),
            target: OnceLock::new(),
        })
    }

    /// The zero weak bialgebra (every graded piece is zero).
    pub fn zero(max_degree: usize) -> Self {
        GradedWba::from_parts(
            vec![Vec::new(); max_degree + 1],
            |_, _, _, _| SparseVec::new(),
            SparseVec::new(),
            |_, _| Vec::new(),
            |_, _| Scalar::zero(),
        )
        .expect("zero presentation")
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self, d: usize) -> usize {
        self.labels[d].len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, d: usize) -> &[String] {
        &self.labels[d]
    }

    pub fn label(&self, d: usize, i: usize) -> &str {
        &self.labels[d][i]
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn mul_basis(&self, d: usize, i: usize, e: usize, j: usize) -> &SparseVec {
        &self.products[d][e][i * self.dim(e) + j]
    }

    pub fn mul(&self, d: usize, u: &SparseVec, e: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (i, x) in u.iter() {
            for (j, y) in v.iter() {
                acc.add_vec(self.mul_basis(d, i, e, j), &(x * y));
            }
        }
        acc.into_vec()
    }

    pub fn coproduct_basis(&self, d: usize, i: usize) -> &Tensor {
        &self.coproducts[d][i]
    }

    pub fn coproduct(&self, d: usize, u: &SparseVec) -> Tensor {
        let mut acc = Accum::new();
        for (i, x) in u.iter() {
            for (k, c) in &self.coproducts[d][i] {
                acc.add(*k, &(c * x));
            }
        }
        tensor_from_accum(acc)
    }

    pub fn counit_basis(&self, d: usize, i: usize) -> &Scalar {
        &self.counit[d][i]
    }

    pub fn counit(&self, d: usize, u: &SparseVec) -> Scalar {
        u.iter().map(|(i, x)| x * &self.counit[d][i]).sum()
    }

    /// `(Δ⊗Δ)`-style product of tensors in degrees `d` and `e`.
    pub fn mul_tensor(&self, d: usize, s: &Tensor, e: usize, t: &Tensor) -> Tensor {
        let mut acc = Accum::new();
        for ((a, b), x) in s {
            for ((c, dd), y) in t {
                let l = self.mul_basis(d, *a, e, *c);
                if l.is_zero() {
                    continue;
                }
                let r = self.mul_basis(d, *b, e, *dd);
                let xy = x * y;
                for (i, p) in l.iter() {
                    for (j, q) in r.iter() {
                        acc.add((i, j), &(&xy * &(p * q)));
                    }
                }
            }
        }
        tensor_from_accum(acc)
    }

    pub fn delta_one(&self) -> Tensor {
        self.coproduct(0, &self.unit)
    }

    /// `ε_s(x) = 1₁ ε(x 1₂)` or `ε_t(x) = ε(1₁ x) 1₂` for `x ∈ H_d`; lands in degree 0.
    pub fn counital_map(&self, side: CounitalSide, d: usize, u: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for ((m, n), t) in self.delta_one() {
            let (keep, e) = match side {
                CounitalSide::Source => {
                    (m, self.counit(d, &self.mul(d, u, 0, &SparseVec::unit(n))))
                }
                CounitalSide::Target => {
                    (n, self.counit(d, &self.mul(0, &SparseVec::unit(m), d, u)))
                }
            };
            acc.add(keep, &(&t * &e));
        }
        acc.into_vec()
    }

    /// `H_s` or `H_t` as a subspace of `H_0`: the image of the counital map.
    pub fn counital_subalgebra(&self, side: CounitalSide) -> &Subspace {
        let cell = match side {
            CounitalSide::Source => &self.source,
            CounitalSide::Target => &self.target,
        };
        cell.get_or_init(|| {
            let images: Vec<SparseVec> = (0..=self.max_degree)
                .flat_map(|d| (0..self.dim(d)).map(move |i| (d, i)))
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&(d, i)| self.counital_map(side, d, &SparseVec::unit(i)))
                .collect();
            Subspace::span(self.dim(0), &images)
        })
    }

    /// Same presentation, cut down to degrees `0..=max`.
    pub fn truncate(&self, max: usize) -> GradedWba {
        assert!(max <= self.max_degree);
        GradedWba {
            max_degree: max,
            labels: self.labels[..=max].to_vec(),
            products: (0..=max)
                .map(|d| self.products[d][..=max - d].to_vec())
                .collect(),
            unit: self.unit.clone(),
            coproducts: self.coproducts[..=max].to_vec(),
            counit: self.counit[..=max].to_vec(),
            source: OnceLock::new(),
            target: OnceLock::new(),
        }
    }

    pub fn render_element(&self, d: usize, u: &SparseVec) -> String {
        if u.is_zero() {
            return "0".into();
        }
        u.iter()
            .map(|(i, c)| format!("{c} * {}", self.labels[d][i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Canonical, label-aware dump of every structure constant.
    pub fn dump(&self) -> PresentationDump {
        let mut products = Vec::new();
        for d in 0..=self.max_degree {
            for e in 0..=self.max_degree - d {
                for i in 0..self.dim(d) {
                    for j in 0..self.dim(e) {
                        let v = self.mul_basis(d, i, e, j);
                        if !v.is_zero() {
                            products.push(format!(
                                "{} * {} = {}",
                                self.labels[d][i],
                                self.labels[e][j],
                                self.render_element(d + e, v)
                            ));
                        }
                    }
                }
            }
        }
        let mut coproducts = Vec::new();
        let mut counit = Vec::new();
        for d in 0..=self.max_degree {
            for i in 0..self.dim(d) {
                let t = &self.coproducts[d][i];
                let terms: Vec<String> = t
                    .iter()
                    .map(|((a, b), c)| {
                        format!("{c} * {} ⊗ {}", self.labels[d][*a], self.labels[d][*b])
                    })
                    .collect();
                coproducts.push(format!("Δ {} = {}", self.labels[d][i], terms.join(" + ")));
                let e = &self.counit[d][i];
                if !e.is_zero() {
                    counit.push(format!("ε {} = {e}", self.labels[d][i]));
                }
            }
        }
        PresentationDump {
            max_degree: self.max_degree,
            dims: self.dims(),
            labels: self.labels.clone(),
            unit: self.render_element(0, &self.unit),
            products,
            coproducts,
            counit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PresentationDump {
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub unit: String,
    pub products: Vec<String>,
    pub coproducts: Vec<String>,
    pub counit: Vec<String>,
}

/// Face monomial bases of `𝔥(Q)` up to `max_degree`, with index lookup.
#[derive(Debug, Clone)]
pub struct FaceIndex {
    pub paths: PathBasis,
}

impl FaceIndex {
    pub fn new(q: &Quiver, max_degree: usize) -> Self {
        FaceIndex {
            paths: PathBasis::new(q, max_degree),
        }
    }

    pub fn index(&self, m: &FaceMonomial) -> usize {
        let d = m.degree();
        let n = self.paths.dim(d);
        self.paths.index_of(m.left()).unwrap() * n + self.paths.index_of(m.right()).unwrap()
    }

    pub fn monomial(&self, d: usize, i: usize) -> FaceMonomial {
        let n = self.paths.dim(d);
        let ps = self.paths.paths(d);
        FaceMonomial::new(ps[i / n].clone(), ps[i % n].clone()).unwrap()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.paths.dim(d) * self.paths.dim(d)
    }

    /// Index of `x[a;b]` from path indices.
    pub fn pair(&self, d: usize, a: usize, b: usize) -> usize {
        a * self.paths.dim(d) + b
    }
}

pub fn from_face_algebra(q: &Quiver, max_degree: usize) -> GradedWba {
    let fx = FaceIndex::new(q, max_degree);
    let labels: Vec<Vec<String>> = (0..=max_degree)
        .map(|d| (0..fx.dim(d)).map(|i| fx.monomial(d, i).label(q)).collect())
        .collect();
    let n0 = fx.paths.dim(0);
    GradedWba::from_parts(
        labels,
        |d, i, e, j| match monomial_product(&fx.monomial(d, i), &fx.monomial(e, j)) {
            Some(m) => SparseVec::unit(fx.index(&m)),
            None => SparseVec::new(),
        },
        SparseVec::from_entries((0..n0 * n0).map(|k| (k, Scalar::one()))),
        |d, i| {
            let n = fx.paths.dim(d);
            let (a, b) = (i / n, i % n);
            (0..n)
                .map(|c| ((fx.pair(d, a, c), fx.pair(d, c, b)), Scalar::one()))
                .collect()
        },
        |d, i| {
            let n = fx.paths.dim(d);
            if i / n == i % n {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        },
    )
    .expect("face algebra presentation")
}

/// The bialgebra `D` on `x, y` (orthogonal idempotents, `1 = x + y`,
/// `Δx = x⊗x + y⊗y`, `Δy = x⊗y + y⊗x`), concentrated in degree 0.
pub fn bialgebra_d(max_degree: usize) -> GradedWba {
    let mut labels = vec![Vec::new(); max_degree + 1];
    labels[0] = vec!["x".to_string(), "y".to_string()];
    let one = Scalar::one;
    GradedWba::from_parts(
        labels,
        |_, i, _, j| {
            if i == j {
                SparseVec::unit(i)
            } else {
                SparseVec::new()
            }
        },
        SparseVec::from_entries([(0, one()), (1, one())]),
        |_, i| match i {
            0 => vec![((0, 0), one()), ((1, 1), one())],
            _ => vec![((0, 1), one()), ((1, 0), one())],
        },
        |_, i| if i == 0 { one() } else { Scalar::zero() },
    )
    .expect("D presentation")
}

/// `H ⊕ K` with componentwise product, coproduct `Δ(h,k) = (h₁,0)⊗(h₂,0) + (0,k₁)⊗(0,k₂)`
/// and counit `ε(h,k) = ε(h) + ε(k)`.
pub fn direct_sum(h: &GradedWba, k: &GradedWba) -> Result<GradedWba, WbaError> {
    if h.max_degree != k.max_degree {
        return Err(WbaError::TruncationMismatch(h.max_degree, k.max_degree));
    }
    let max = h.max_degree;
    let hd = h.dims();
    let labels = (0..=max)
        .map(|d| {
            h.labels[d]
                .iter()
                .map(|l| format!("({l},0)"))
                .chain(k.labels[d].iter().map(|l| format!("(0,{l})")))
                .collect()
        })
        .collect();
    let shift = |v: &SparseVec, by: usize| v.remap(|i| Some(i + by));
    let unit = &h.unit + &shift(&k.unit, hd[0]);
    GradedWba::from_parts(
        labels,
        |d, i, e, j| match (i < hd[d], j < hd[e]) {
            (true, true) => h.mul_basis(d, i, e, j).clone(),
            (false, false) => shift(k.mul_basis(d, i - hd[d], e, j - hd[e]), hd[d + e]),
            _ => SparseVec::new(),
        },
        unit,
        |d, i| {
            if i < hd[d] {
                h.coproduct_basis(d, i).clone()
            } else {
                k.coproduct_basis(d, i - hd[d])
                    .iter()
                    .map(|((a, b), c)| ((a + hd[d], b + hd[d]), c.clone()))
                    .collect()
            }
        },
        |d, i| {
            if i < hd[d] {
                h.counit_basis(d, i).clone()
            } else {
                k.counit_basis(d, i - hd[d]).clone()
            }
        },
    )
}

type Triple = (usize, usize, usize);

fn tensor3_accum_products(
    acc: &mut Accum<Triple>,
    c: &Scalar,
    a: &SparseVec,
    b: &SparseVec,
    d: &SparseVec,
) {
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            let xy = x * y;
            for (k, z) in d.iter() {
                acc.add((i, j, k), &(c * &(&xy * z)));
            }
        }
    }
}

fn pairs_within(h: &GradedWba) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for da in 0..=h.max_degree {
        for db in 0..=h.max_degree - da {
            for a in 0..h.dim(da) {
                for b in 0..h.dim(db) {
                    out.push((da, a, db, b));
                }
            }
        }
    }
    out
}

fn singles(h: &GradedWba) -> Vec<(usize, usize)> {
    (0..=h.max_degree)
        .flat_map(|d| (0..h.dim(d)).map(move |i| (d, i)))
        .collect()
}

/// `generated[d]` is true when `d >= 2` and products of degree-1 and
/// degree-`(d-1)` basis elements span `H_d`.
fn generated_by_degree_one(h: &GradedWba) -> Vec<bool> {
    (0..=h.max_degree)
        .map(|d| {
            d >= 2 && {
                let prods: Vec<SparseVec> = (0..h.dim(1))
                    .into_par_iter()
                    .flat_map_iter(|i| {
                        (0..h.dim(d - 1)).map(move |j| h.mul_basis(1, i, d - 1, j).clone())
                    })
                    .collect();
                Subspace::span(h.dim(d), &prods).dim() == h.dim(d)
            }
        })
        .collect()
}

/// Checks the algebra, coalgebra and weak bialgebra identities on basis
/// elements within the truncation window.
pub fn check_axioms(h: &GradedWba) -> Report {
    let mut report = Report::new("weak bialgebra axioms");
    let pairs = pairs_within(h);
    let singles = singles(h);
    let lab = |d: usize, i: usize| h.labels[d][i].clone();

    report.push(Check::over(
        "algebra.associativity",
        &pairs,
        |&(da, a, db, b)| {
            let ab = h.mul_basis(da, a, db, b);
            for dc in 0..=h.max_degree - da - db {
                for c in 0..h.dim(dc) {
                    let left = h.mul(da + db, ab, dc, &SparseVec::unit(c));
                    let bc = h.mul_basis(db, b, dc, c);
                    let right = h.mul(da, &SparseVec::unit(a), db + dc, bc);
                    if left != right {
                        return Some(vec![lab(da, a), lab(db, b), lab(dc, c)]);
                    }
                }
            }
            None
        },
    ));

    report.push(Check::over("algebra.unit", &singles, |&(d, a)| {
        let e = SparseVec::unit(a);
        (h.mul(0, &h.unit, d, &e) != e || h.mul(d, &e, 0, &h.unit) != e).then(|| vec![lab(d, a)])
    }));

    // When H_d = H_1 H_{d-1}, coassociativity in degree d follows from lower
    // degrees and multiplicativity of Δ, which is checked on every basis pair.
    let generated = generated_by_degree_one(h);
    let coassoc: Vec<(usize, usize)> = singles
        .iter()
        .copied()
        .filter(|&(d, _)| !generated[d])
        .collect();
    report.push(Check::over(
        "coalgebra.coassociativity",
        &coassoc,
        |&(d, a)| {
            let mut left = Accum::<Triple>::new();
            let mut right = Accum::<Triple>::new();
            for ((m, n), t) in &h.coproducts[d][a] {
                for ((m1, m2), s) in &h.coproducts[d][*m] {
                    left.add((*m1, *m2, *n), &(t * s));
                }
                for ((n1, n2), s) in &h.coproducts[d][*n] {
                    right.add((*m, *n1, *n2), &(t * s));
                }
            }
            (left.into_sorted() != right.into_sorted()).then(|| vec![lab(d, a)])
        },
    ));

    report.push(Check::over("coalgebra.counit", &singles, |&(d, a)| {
        let mut l = Accum::new();
        let mut r = Accum::new();
        for ((m, n), t) in &h.coproducts[d][a] {
            l.add(*n, &(t * &h.counit[d][*m]));
            r.add(*m, &(t * &h.counit[d][*n]));
        }
        let e = SparseVec::unit(a);
        (l.into_vec() != e || r.into_vec() != e).then(|| vec![lab(d, a)])
    }));

    report.push(Check::over(
        "wba.multiplicative-coproduct",
        &pairs,
        |&(da, a, db, b)| {
            let left = h.coproduct(da + db, h.mul_basis(da, a, db, b));
            let right = h.mul_tensor(da, &h.coproducts[da][a], db, &h.coproducts[db][b]);
            (left != right).then(|| vec![lab(da, a), lab(db, b)])
        },
    ));

    let (left_iv, right_iv) = check_weak_counit(h, &pairs);
    report.push(left_iv);
    report.push(right_iv);

    let (left_v, right_v) = check_weak_unit(h);
    report.push(left_v);
    report.push(right_v);
    report
}

/// `E[d][e][u]` is the row `v ↦ ε(b_u b_v)` over degree-`e` basis elements.
fn counit_pairing(h: &GradedWba) -> Vec<Vec<Vec<SparseVec>>> {
    (0..=h.max_degree)
        .map(|d| {
            (0..=h.max_degree - d)
                .map(|e| {
                    (0..h.dim(d))
                        .into_par_iter()
                        .map(|u| {
                            SparseVec::from_entries(
                                (0..h.dim(e))
                                    .map(|v| (v, h.counit(d + e, h.mul_basis(d, u, e, v)))),
                            )
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `ε(abc) = ε(ab₁)ε(b₂c)` and `ε(abc) = ε(ab₂)ε(b₁c)`.
fn check_weak_counit(h: &GradedWba, pairs: &[(usize, usize, usize, usize)]) -> (Check, Check) {
    let e = counit_pairing(h);
    type Witness = Option<Vec<String>>;
    let results: Vec<(Witness, Witness)> = pairs
        .par_iter()
        .map(|&(da, a, db, b)| {
            let lab = |d: usize, i: usize| h.labels[d][i].clone();
            let ab = h.mul_basis(da, a, db, b);
            let ea = &e[da][db][a];
            let (mut fl, mut fr) = (None, None);
            for dc in 0..=h.max_degree - da - db {
                let mut lhs = Accum::new();
                for (k, x) in ab.iter() {
                    lhs.add_vec(&e[da + db][dc][k], x);
                }
                let lhs = lhs.into_vec();
                let mut r1 = Accum::new();
                let mut r2 = Accum::new();
                for ((m, n), t) in &h.coproducts[db][b] {
                    if let Some(x) = ea.get(*m) {
                        r1.add_vec(&e[db][dc][*n], &(t * x));
                    }
                    if let Some(x) = ea.get(*n) {
                        r2.add_vec(&e[db][dc][*m], &(t * x));
                    }
                }
                let witness = |r: SparseVec| {
                    let bad = lhs
                        .iter()
                        .map(|(c, _)| c)
                        .chain(r.iter().map(|(c, _)| c))
                        .find(|&c| lhs.coeff(c) != r.coeff(c))
                        .unwrap();
                    vec![lab(da, a), lab(db, b), lab(dc, bad)]
                };
                let r1 = r1.into_vec();
                if fl.is_none() && r1 != lhs {
                    fl = Some(witness(r1));
                }
                let r2 = r2.into_vec();
                if fr.is_none() && r2 != lhs {
                    fr = Some(witness(r2));
                }
            }
            (fl, fr)
        })
        .collect();
    let (l, r): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    (
        Check::from_results("wba.weak-multiplicative-counit.left", l),
        Check::from_results("wba.weak-multiplicative-counit.right", r),
    )
}

/// `Δ²(1) = (Δ(1)⊗1)(1⊗Δ(1)) = (1⊗Δ(1))(Δ(1)⊗1)` in degree 0.
fn check_weak_unit(h: &GradedWba) -> (Check, Check) {
    let d1 = h.delta_one();
    let mut dd = Accum::<Triple>::new();
    for ((m, n), t) in &d1 {
        for ((a, b), s) in &h.coproducts[0][*m] {
            dd.add((*a, *b, *n), &(t * s));
        }
    }
    let dd = dd.into_sorted();
    let mut first = Accum::<Triple>::new();
    let mut second = Accum::<Triple>::new();
    for ((m, n), t) in &d1 {
        for (k, u) in h.unit.iter() {
            for ((m2, n2), t2) in &d1 {
                for (k2, u2) in h.unit.iter() {
                    let c = &(t * u) * &(t2 * u2);
                    // (m ⊗ n ⊗ k)(k2 ⊗ m2 ⊗ n2)
                    tensor3_accum_products(
                        &mut first,
                        &c,
                        h.mul_basis(0, *m, 0, k2),
                        h.mul_basis(0, *n, 0, *m2),
                        h.mul_basis(0, k, 0, *n2),
                    );
                    // (k2 ⊗ m2 ⊗ n2)(m ⊗ n ⊗ k)
                    tensor3_accum_products(
                        &mut second,
                        &c,
                        h.mul_basis(0, k2, 0, *m),
                        h.mul_basis(0, *m2, 0, *n),
                        h.mul_basis(0, *n2, 0, k),
                    );
                }
            }
        }
    }
    let w = || vec!["1".to_string()];
    (
        Check::single(
            "wba.weak-comultiplicative-unit.left",
            first.into_sorted() == dd,
            w,
        ),
        Check::single(
            "wba.weak-comultiplicative-unit.right",
            second.into_sorted() == dd,
            w,
        ),
    )
}

/// Homogeneous generators of a candidate biideal inside `host`.
#[derive(Debug, Clone)]
pub struct BiidealGens {
    host: Arc<GradedWba>,
    generators: Vec<(usize, SparseVec)>,
}

impl BiidealGens {
    pub fn new(
        host: Arc<GradedWba>,
        generators: Vec<(usize, SparseVec)>,
    ) -> Result<Self, WbaError> {
        for (index, (degree, v)) in generators.iter().enumerate() {
            if *degree > host.max_degree {
                return Err(WbaError::GeneratorDegree {
                    index,
                    degree: *degree,
                    max: host.max_degree,
                });
            }
            if v.entries()
                .last()
                .is_some_and(|(i, _)| *i >= host.dim(*degree))
            {
                return Err(WbaError::Malformed(format!(
                    "generator {index} out of range"
                )));
            }
        }
        let generators = generators
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(BiidealGens { host, generators })
    }

    pub fn host(&self) -> &Arc<GradedWba> {
        &self.host
    }

    pub fn generators(&self) -> &[(usize, SparseVec)] {
        &self.generators
    }

    /// `I_0, ..., I_max` of the two-sided ideal generated inside the truncation.
    /// Each piece is spanned from the degree-`d` generators and degree-1
    /// multiples of `I_{d-1}` on both sides, then closed under degree-0
    /// multiplication until its dimension stabilizes.
    pub fn graded_pieces(&self, max: usize) -> Vec<Subspace> {
        let h = &*self.host;
        assert!(max <= h.max_degree);
        let mut pieces: Vec<Subspace> = Vec::with_capacity(max + 1);
        for d in 0..=max {
            let mut b = EchelonBuilder::new(h.dim(d));
            for (_, g) in self.generators.iter().filter(|(gd, _)| *gd == d) {
                b.insert(g);
            }
            if d > 0 {
                let spawned: Vec<SparseVec> = pieces[d - 1]
                    .basis()
                    .par_iter()
                    .flat_map_iter(|row| {
                        (0..h.dim(1)).flat_map(move |m| {
                            let e = SparseVec::unit(m);
                            [h.mul(1, &e, d - 1, row), h.mul(d - 1, row, 1, &e)]
                        })
                    })
                    .collect();
                for v in &spawned {
                    b.insert(v);
                }
            }
            let mut piece = b.finish();
            loop {
                let before = piece.dim();
                let spawned: Vec<SparseVec> = piece
                    .basis()
                    .par_iter()
                    .flat_map_iter(|row| {
                        (0..h.dim(0)).flat_map(move |m| {
                            let e = SparseVec::unit(m);
                            [h.mul(0, &e, d, row), h.mul(d, row, 0, &e)]
                        })
                    })
                    .collect();
                piece = piece.extend(&spawned);
                if piece.dim() == before {
                    break;
                }
            }
            pieces.push(piece);
        }
        pieces
    }
}

pub fn biideal_graded_pieces(b: &BiidealGens, d: usize) -> Subspace {
    b.graded_pieces(d).pop().expect("non-empty")
}

/// `ε(I) = 0` and `Δ(I_d) ⊆ I_d ⊗ H_d + H_d ⊗ I_d` for every `d ≤ max`.
pub fn check_biideal(b: &BiidealGens, max: usize) -> Report {
    check_biideal_pieces(&b.host, &b.graded_pieces(max))
}

pub fn check_biideal_pieces(h: &GradedWba, pieces: &[Subspace]) -> Report {
    let mut report = Report::new("biideal");
    let items: Vec<(usize, usize)> = pieces
        .iter()
        .enumerate()
        .flat_map(|(d, p)| (0..p.dim()).map(move |r| (d, r)))
        .collect();
    report.push(Check::over("biideal.counit-vanishes", &items, |&(d, r)| {
        let v = &pieces[d].basis()[r];
        (!h.counit(d, v).is_zero()).then(|| vec![h.render_element(d, v)])
    }));
    let projectors: Vec<CosetProjector> = pieces.iter().map(CosetProjector::new).collect();
    report.push(Check::over("biideal.coideal", &items, |&(d, r)| {
        let v = &pieces[d].basis()[r];
        let p = &projectors[d];
        let mut acc = Accum::<(usize, usize)>::new();
        for (i, x) in v.iter() {
            for ((m, n), t) in &h.coproducts[d][i] {
                let (pm, pn) = (p.project_unit(*m), p.project_unit(*n));
                if pm.is_zero() || pn.is_zero() {
                    continue;
                }
                let c = x * t;
                for (k, y) in pm.iter() {
                    let cy = &c * y;
                    for (l, z) in pn.iter() {
                        acc.add((k, l), &(&cy * z));
                    }
                }
            }
        }
        (!acc.is_zero()).then(|| vec![h.render_element(d, v)])
    }));
    report
}

/// `H/I` together with the projections `H_d → (H/I)_d`.
#[derive(Debug, Clone)]
pub struct QuotientWba {
    pub wba: GradedWba,
    pub pieces: Vec<Subspace>,
    pub projectors: Vec<CosetProjector>,
}

impl QuotientWba {
    pub fn project(&self, d: usize, v: &SparseVec) -> SparseVec {
        self.projectors[d].project(v)
    }
}

/// The quotient by the biideal generated by `b`, on the basis of cosets of
/// non-pivot monomials. Refuses when the biideal check fails.
pub fn quotient(b: &BiidealGens) -> Result<QuotientWba, WbaError> {
    let h = &*b.host;
    let pieces = b.graded_pieces(h.max_degree);
    let report = check_biideal_pieces(h, &pieces);
    if !report.passed() {
        return Err(WbaError::NotBiideal(Box::new(report)));
    }
    Ok(quotient_by_pieces(h, pieces))
}

pub(crate) fn quotient_by_pieces(h: &GradedWba, pieces: Vec<Subspace>) -> QuotientWba {
    let projectors: Vec<CosetProjector> = pieces.iter().map(CosetProjector::new).collect();
    let reps: Vec<Vec<usize>> = projectors.iter().map(|p| p.reps().to_vec()).collect();
    let labels = (0..=h.max_degree)
        .map(|d| reps[d].iter().map(|&i| h.labels[d][i].clone()).collect())
        .collect();
    let wba = GradedWba::from_parts(
        labels,
        |d, i, e, j| projectors[d + e].project(h.mul_basis(d, reps[d][i], e, reps[e][j])),
        projectors[0].project(&h.unit),
        |d, i| {
            let p = &projectors[d];
            let mut acc = Accum::new();
            for ((m, n), t) in &h.coproducts[d][reps[d][i]] {
                for (k, y) in p.project_unit(*m).iter() {
                    for (l, z) in p.project_unit(*n).iter() {
                        acc.add((k, l), &(t * &(y * z)));
                    }
                }
            }
            acc.into_sorted()
        },
        |d, i| h.counit[d][reps[d][i]].clone(),
    )
    .expect("quotient presentation");
    QuotientWba {
        wba,
        pieces,
        projectors,
    }
}

pub fn quotient_wba(b: &BiidealGens) -> Result<GradedWba, WbaError> {
    quotient(b).map(|q| q.wba)
}

/// Primitive idempotents of a subalgebra of `H_0`, when `H_0`'s basis is a
/// family of orthogonal idempotents. The subalgebra is then the algebra of
/// functions constant on blocks of basis indices, and its primitive
/// idempotents are the block indicators. `None` when `H_0` is not of that form.
pub fn primitive_idempotents(h: &GradedWba, sub: &Subspace) -> Option<Vec<SparseVec>> {
    let n = h.dim(0);
    for i in 0..n {
        for j in 0..n {
            let want = if i == j {
                SparseVec::unit(i)
            } else {
                SparseVec::new()
            };
            if *h.mul_basis(0, i, 0, j) != want {
                return None;
            }
        }
    }
    let mut classes: HashMap<Vec<Scalar>, Vec<usize>> = HashMap::new();
    for p in 0..n {
        let sig: Vec<Scalar> = sub.basis().iter().map(|v| v.coeff(p)).collect();
        if sig.iter().all(Scalar::is_zero) {
            continue;
        }
        classes.entry(sig).or_default().push(p);
    }
    let mut blocks: Vec<Vec<usize>> = classes.into_values().collect();
    blocks.sort();
    let idems: Vec<SparseVec> = blocks
        .iter()
        .map(|b| SparseVec::from_entries(b.iter().map(|&p| (p, Scalar::one()))))
        .collect();
    // the block indicators must lie in (and hence span) the subalgebra
    (idems.len() == sub.dim() && idems.iter().all(|e| sub.contains(e))).then_some(idems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;

    #[test]
    fn face_algebra_dims_and_axioms() {
        let h = from_face_algebra(&catalog::loops(1), 4);
        assert_eq!(h.dims(), [1, 1, 1, 1, 1]);
        let h = from_face_algebra(&catalog::kronecker(), 2);
        assert_eq!(h.dims(), [4, 4, 0]);
        assert!(check_axioms(&h).passed(), "{}", check_axioms(&h).render());
    }

    #[test]
    fn corrupted_counit_is_caught() {
        let mut h = from_face_algebra(&catalog::loops(2), 2);
        // ε(x[t1;t2]) := 1
        let i = h.labels(1).iter().position(|l| l == "x[t1;t2]").unwrap();
        h.counit[1][i] = Scalar::one();
        let r = check_axioms(&h);
        assert!(!r.passed());
        assert!(!r.get("coalgebra.counit").unwrap().passed());
        assert!(r.get("coalgebra.counit").unwrap().failures > 0);
    }

    #[test]
    fn d_is_a_bialgebra() {
        let d = bialgebra_d(2);
        assert!(check_axioms(&d).passed());
        assert_eq!(d.counital_subalgebra(CounitalSide::Source).dim(), 1);
        assert_eq!(d.counital_subalgebra(CounitalSide::Target).dim(), 1);
    }

    #[test]
    fn d_plus_d_is_weak_but_not_a_bialgebra() {
        let dd = direct_sum(&bialgebra_d(1), &bialgebra_d(1)).unwrap();
        assert!(check_axioms(&dd).passed(), "{}", check_axioms(&dd).render());
        let t = dd.counital_subalgebra(CounitalSide::Target);
        assert_eq!(t.dim(), 2);
        let ones = [
            SparseVec::from_entries([(0, Scalar::one()), (1, Scalar::one())]),
            SparseVec::from_entries([(2, Scalar::one()), (3, Scalar::one())]),
        ];
        assert_eq!(*t, Subspace::span(4, &ones));
        assert_eq!(primitive_idempotents(&dd, t).unwrap(), ones);
        assert!(matches!(
            direct_sum(&bialgebra_d(1), &bialgebra_d(2)),
            Err(WbaError::TruncationMismatch(1, 2))
        ));
    }

    #[test]
    fn zero_summand_is_neutral() {
        let h = from_face_algebra(&catalog::cycle(3), 2);
        let s = direct_sum(&h, &GradedWba::zero(2)).unwrap();
        let (a, b) = (h.dump(), s.dump());
        assert_eq!(a.dims, b.dims);
        assert_eq!(a.products.len(), b.products.len());
        assert_eq!(a.coproducts.len(), b.coproducts.len());
        let strip = |s: &str| s.replace("(", "").replace(",0)", "");
        assert_eq!(
            a.products,
            b.products.iter().map(|p| strip(p)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn zero_biideal_quotient_is_identical() {
        let h = Arc::new(from_face_algebra(&catalog::kronecker(), 3));
        let q = quotient_wba(&BiidealGens::new(h.clone(), Vec::new()).unwrap()).unwrap();
        assert_eq!(
            serde_json::to_string(&q.dump()).unwrap(),
            serde_json::to_string(&h.dump()).unwrap()
        );
    }

    #[test]
    fn commutators_give_matrix_coordinate_ring() {
        // O(Mat_2) on the 2-loop quiver: commutators of all degree-1 generators
        let h = Arc::new(from_face_algebra(&catalog::loops(2), 3));
        let n1 = h.dim(1);
        let mut gens = Vec::new();
        for a in 0..n1 {
            for b in a + 1..n1 {
                let ab = h.mul_basis(1, a, 1, b);
                let ba = h.mul_basis(1, b, 1, a);
                gens.push((2, ab - ba));
            }
        }
        let b = BiidealGens::new(h, gens).unwrap();
        assert!(check_biideal(&b, 3).passed());
        let q = quotient_wba(&b).unwrap();
        assert_eq!(q.dims(), [1, 4, 10, 20]);
        assert!(check_axioms(&q).passed());
    }

    #[test]
    fn non_biideal_is_refused() {
        let h = Arc::new(from_face_algebra(&catalog::loops(2), 2));
        // x[t1;t1] alone: ε does not vanish
        let i = h.labels(1).iter().position(|l| l == "x[t1;t1]").unwrap();
        let b = BiidealGens::new(h.clone(), vec![(1, SparseVec::unit(i))]).unwrap();
        assert!(matches!(quotient_wba(&b), Err(WbaError::NotBiideal(_))));
        // x[t1;t1] - x[t2;t2]: ε vanishes but Δ escapes
        let j = h.labels(1).iter().position(|l| l == "x[t2;t2]").unwrap();
        let g = SparseVec::from_entries([(i, Scalar::one()), (j, -Scalar::one())]);
        let b = BiidealGens::new(h, vec![(1, g)]).unwrap();
        let r = check_biideal(&b, 2);
        assert!(r.get("biideal.counit-vanishes").unwrap().passed());
        assert!(!r.get("biideal.coideal").unwrap().passed());
    }
}
