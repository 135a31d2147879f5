//! Path algebras `kQ`, homogeneous ideals and quadratic duality.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{CosetProjector, EchelonBuilder, Scalar, SparseVec, Subspace};
use crate::quiver::{
    compose_paths, double_quiver, opposite_quiver, star_path, Path, PathBasis, Quiver, QuiverError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathAlgebraError {
    #[error("elements live over different quivers")]
    QuiverMismatch,
    #[error("generator {index} is not homogeneous")]
    Inhomogeneous { index: usize },
    #[error("generator {index} has degree {degree}; ideal generators need degree at least 2")]
    LowDegree { index: usize, degree: usize },
    #[error("ideal is not quadratic: generator {index} has degree {degree}")]
    NonQuadratic { index: usize, degree: usize },
    #[error("unsupported quiver shape: {0}")]
    UnsupportedShape(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("malformed relations document: {0}")]
    Malformed(String),
}

/// A finite linear combination of paths.
#[derive(Debug, Clone)]
pub struct PathElement {
    quiver: Arc<Quiver>,
    terms: BTreeMap<Path, Scalar>,
}

impl PartialEq for PathElement {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver) && self.terms == other.terms
    }
}

fn same_quiver(a: &Arc<Quiver>, b: &Arc<Quiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PathElement {
    pub fn zero(quiver: Arc<Quiver>) -> Self {
        PathElement {
            quiver,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        quiver: Arc<Quiver>,
        terms: impl IntoIterator<Item = (Scalar, Path)>,
    ) -> Self {
        let mut e = PathElement::zero(quiver);
        for (c, p) in terms {
            e.add_term(p, &c);
        }
        e
    }

    pub fn path(quiver: Arc<Quiver>, p: Path) -> Self {
        PathElement::from_terms(quiver, [(Scalar::one(), p)])
    }

    fn add_term(&mut self, p: Path, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common length of all paths, if there is one.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Path::len);
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }

    pub fn add(&self, other: &PathElement) -> Result<PathElement, PathAlgebraError> {
        if !same_quiver(&self.quiver, &other.quiver) {
            return Err(PathAlgebraError::QuiverMismatch);
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> PathElement {
        PathElement::from_terms(
            self.quiver.clone(),
            self.terms.iter().map(|(p, x)| (x * c, p.clone())),
        )
    }

    /// Coordinates in the path basis of the given length.
    pub fn coords(&self, basis: &PathBasis, len: usize) -> SparseVec {
        SparseVec::from_entries(
            self.terms
                .iter()
                .filter(|(p, _)| p.len() == len)
                .map(|(p, c)| {
                    (
                        basis.index_of(p).expect("path within basis range"),
                        c.clone(),
                    )
                }),
        )
    }

    pub fn from_coords(quiver: Arc<Quiver>, basis: &PathBasis, len: usize, v: &SparseVec) -> Self {
        let ps = basis.paths(len);
        PathElement::from_terms(quiver, v.iter().map(|(i, c)| (c.clone(), ps[i].clone())))
    }
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{c} * {}", self.quiver.path_label(p)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn multiply(a: &PathElement, b: &PathElement) -> Result<PathElement, PathAlgebraError> {
    if !same_quiver(&a.quiver, &b.quiver) {
        return Err(PathAlgebraError::QuiverMismatch);
    }
    let mut out = PathElement::zero(a.quiver.clone());
    for (p, x) in &a.terms {
        for (q, y) in &b.terms {
            if let Some(pq) = compose_paths(p, q) {
                out.add_term(pq, &(x * y));
            }
        }
    }
    Ok(out)
}

/// One term of a relation: a coefficient and a path written as arrow names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: Scalar,
    pub path: Vec<String>,
}

/// On-disk relations: `{"relations": [[{"coeff": "1", "path": ["a", "b"]}, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationsDoc {
    pub relations: Vec<Vec<TermDoc>>,
}

pub fn parse_relations(
    quiver: &Arc<Quiver>,
    text: &str,
) -> Result<Vec<PathElement>, PathAlgebraError> {
    let doc: RelationsDoc =
        serde_json::from_str(text).map_err(|e| PathAlgebraError::Malformed(e.to_string()))?;
    relations_from_doc(quiver, &doc)
}

pub fn relations_from_doc(
    quiver: &Arc<Quiver>,
    doc: &RelationsDoc,
) -> Result<Vec<PathElement>, PathAlgebraError> {
    doc.relations
        .iter()
        .map(|terms| {
            let ts = terms
                .iter()
                .map(|t| Ok((t.coeff.clone(), quiver.path_from_names(&t.path)?)))
                .collect::<Result<Vec<_>, QuiverError>>()?;
            Ok(PathElement::from_terms(quiver.clone(), ts))
        })
        .collect()
}

pub fn relations_to_doc(gens: &[PathElement]) -> RelationsDoc {
    RelationsDoc {
        relations: gens
            .iter()
            .map(|g| {
                g.terms()
                    .map(|(p, c)| TermDoc {
                        coeff: c.clone(),
                        path: g.quiver().path_names(p),
                    })
                    .collect()
            })
            .collect(),
    }
}

struct IdealCache {
    basis: PathBasis,
    pieces: Vec<Arc<Subspace>>,
}

/// A two-sided ideal of `kQ` generated by homogeneous elements of degree at
/// least 2. Graded pieces are computed on demand and memoized.
pub struct HomogeneousIdeal {
    quiver: Arc<Quiver>,
    generators: Vec<PathElement>,
    cache: Mutex<IdealCache>,
}

impl fmt::Debug for HomogeneousIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomogeneousIdeal")
            .field("generators", &self.generators)
            .finish()
    }
}

impl Clone for HomogeneousIdeal {
    fn clone(&self) -> Self {
        HomogeneousIdeal::new(self.quiver.clone(), self.generators.clone())
            .expect("already validated")
    }
}

impl HomogeneousIdeal {
    pub fn new(
        quiver: Arc<Quiver>,
        generators: Vec<PathElement>,
    ) -> Result<Self, PathAlgebraError> {
        let mut kept = Vec::new();
        for (index, g) in generators.into_iter().enumerate() {
            if !same_quiver(&quiver, g.quiver()) {
                return Err(PathAlgebraError::QuiverMismatch);
            }
            if g.is_zero() {
                continue;
            }
            match g.degree() {
                None => return Err(PathAlgebraError::Inhomogeneous { index }),
                Some(degree) if degree < 2 => {
                    return Err(PathAlgebraError::LowDegree { index, degree })
                }
                Some(_) => kept.push(g),
            }
        }
        let basis = PathBasis::new(&quiver, 0);
        Ok(HomogeneousIdeal {
            quiver,
            generators: kept,
            cache: Mutex::new(IdealCache {
                basis,
                pieces: Vec::new(),
            }),
        })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        HomogeneousIdeal::new(quiver, Vec::new()).expect("empty ideal")
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn generators(&self) -> &[PathElement] {
        &self.generators
    }

    /// Path basis covering at least lengths `0..=len`.
    pub fn path_basis(&self, len: usize) -> PathBasis {
        let mut c = self.cache.lock().expect("ideal cache poisoned");
        if c.basis.max_len() < len {
            c.basis = PathBasis::new(&self.quiver, len);
        }
        c.basis.clone()
    }

    /// `I ∩ kQ_d`, spanned from the generators of degree `d`, arrow multiples
    /// of `I_{d-1}` on both sides, and their vertex-idempotent cuts.
    pub fn graded_piece(&self, d: usize) -> Arc<Subspace> {
        let mut c = self.cache.lock().expect("ideal cache poisoned");
        if c.basis.max_len() < d {
            c.basis = PathBasis::new(&self.quiver, d);
        }
        while c.pieces.len() <= d {
            let k = c.pieces.len();
            let piece = self.compute_piece(&c.basis, k, c.pieces.last().map(|p| &**p));
            c.pieces.push(Arc::new(piece));
        }
        c.pieces[d].clone()
    }

    fn compute_piece(&self, basis: &PathBasis, d: usize, prev: Option<&Subspace>) -> Subspace {
        let dim = basis.dim(d);
        let mut b = EchelonBuilder::new(dim);
        for g in self.generators.iter().filter(|g| g.degree() == Some(d)) {
            let v = g.coords(basis, d);
            // e_i g e_j for all vertex pairs
            for (i, j) in vertex_cut_pairs(&self.quiver) {
                b.insert(&restrict_endpoints(basis, d, &v, i, j));
            }
        }
        if let (Some(prev), true) = (prev, d > 0) {
            let arrows: Vec<Path> = basis.paths(1).to_vec();
            for row in prev.basis() {
                for a in &arrows {
                    b.insert(&shift(basis, d - 1, row, a, true));
                    b.insert(&shift(basis, d - 1, row, a, false));
                }
            }
        }
        b.finish()
    }

    pub fn quotient_dimension(&self, d: usize) -> usize {
        let piece = self.graded_piece(d);
        piece.codim()
    }
}

fn vertex_cut_pairs(q: &Quiver) -> Vec<(usize, usize)> {
    let n = q.num_vertices();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

fn restrict_endpoints(basis: &PathBasis, d: usize, v: &SparseVec, s: usize, t: usize) -> SparseVec {
    let ps = basis.paths(d);
    SparseVec::from_sorted(
        v.iter()
            .filter(|(k, _)| ps[*k].source() == s && ps[*k].target() == t)
            .map(|(k, c)| (k, c.clone()))
            .collect(),
    )
}

/// `a · v` (left) or `v · a` (right) for `v` in degree `d`.
fn shift(basis: &PathBasis, d: usize, v: &SparseVec, a: &Path, left: bool) -> SparseVec {
    let ps = basis.paths(d);
    SparseVec::from_entries(v.iter().filter_map(|(k, c)| {
        let p = if left {
            compose_paths(a, &ps[k])
        } else {
            compose_paths(&ps[k], a)
        }?;
        Some((basis.index_of(&p).expect("length within basis"), c.clone()))
    }))
}

pub fn ideal_graded_piece(ideal: &HomogeneousIdeal, d: usize) -> Arc<Subspace> {
    ideal.graded_piece(d)
}

pub fn quotient_dimension(ideal: &HomogeneousIdeal, d: usize) -> usize {
    ideal.quotient_dimension(d)
}

/// A quadratic algebra `kQ/(R)` recorded by its relation space `R ⊆ kQ_2`,
/// in coordinates of the length-2 path basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticData {
    pub quiver: Arc<Quiver>,
    pub relation_space: Subspace,
}

impl QuadraticData {
    pub fn new(quiver: Arc<Quiver>, relation_space: Subspace) -> Self {
        assert_eq!(
            relation_space.ambient_dim(),
            PathBasis::new(&quiver, 2).dim(2)
        );
        QuadraticData {
            quiver,
            relation_space,
        }
    }

    pub fn pair_basis(&self) -> Vec<Path> {
        PathBasis::new(&self.quiver, 2).paths(2).to_vec()
    }

    pub fn generators(&self) -> Vec<PathElement> {
        let basis = PathBasis::new(&self.quiver, 2);
        self.relation_space
            .basis()
            .iter()
            .map(|v| PathElement::from_coords(self.quiver.clone(), &basis, 2, v))
            .collect()
    }

    pub fn ideal(&self) -> HomogeneousIdeal {
        HomogeneousIdeal::new(self.quiver.clone(), self.generators()).expect("quadratic generators")
    }
}

pub fn quadratic_data(ideal: &HomogeneousIdeal) -> Result<QuadraticData, PathAlgebraError> {
    for (index, g) in ideal.generators().iter().enumerate() {
        let degree = g.degree().expect("validated homogeneous");
        if degree != 2 {
            return Err(PathAlgebraError::NonQuadratic { index, degree });
        }
    }
    Ok(QuadraticData {
        quiver: ideal.quiver().clone(),
        relation_space: (*ideal.graded_piece(2)).clone(),
    })
}

/// The index map `a ↦ a*` from length-`len` paths of `q` to those of its opposite.
pub fn star_index_map(q: &Quiver, op: &Quiver, len: usize) -> Vec<usize> {
    let b = PathBasis::new(q, len);
    let bop = PathBasis::new(op, len);
    b.paths(len)
        .iter()
        .map(|p| {
            bop.index_of(&star_path(p))
                .expect("starred path exists in the opposite quiver")
        })
        .collect()
}

/// `(kQ/I)^! = kQ^op / (I_op^⊥)`: the starred orthogonal complement of `R`.
pub fn quadratic_dual(qd: &QuadraticData) -> QuadraticData {
    let op = Arc::new(opposite_quiver(&qd.quiver));
    let star = star_index_map(&qd.quiver, &op, 2);
    let perp = qd.relation_space.orthogonal_complement();
    let starred: Vec<SparseVec> = perp
        .basis()
        .iter()
        .map(|v| v.remap(|i| Some(star[i])))
        .collect();
    QuadraticData {
        relation_space: Subspace::span(star.len(), &starred),
        quiver: op,
    }
}

/// Preprojective relations `p_i p_i* - p_{i-1}* p_{i-1}` on the doubled quiver
/// of a directed cycle with at least three vertices, one per vertex.
pub fn preprojective_relations(q: &Quiver) -> Result<HomogeneousIdeal, PathAlgebraError> {
    let n = q.num_vertices();
    if n < 3 {
        return Err(PathAlgebraError::UnsupportedShape(format!(
            "preprojective relations need a cycle with at least 3 vertices, got {n}"
        )));
    }
    let mut out_arrow = vec![None; n];
    let mut in_arrow = vec![None; n];
    for (i, a) in q.arrows().iter().enumerate() {
        if out_arrow[a.source].replace(i).is_some() || in_arrow[a.target].replace(i).is_some() {
            return Err(PathAlgebraError::UnsupportedShape(
                "quiver is not a directed cycle".into(),
            ));
        }
    }
    if q.num_arrows() != n || out_arrow.iter().any(Option::is_none) {
        return Err(PathAlgebraError::UnsupportedShape(
            "quiver is not a directed cycle".into(),
        ));
    }
    let mut seen = vec![false; n];
    let mut v = 0;
    for _ in 0..n {
        seen[v] = true;
        v = q.arrows()[out_arrow[v].unwrap()].target;
    }
    if seen.iter().any(|s| !s) {
        return Err(PathAlgebraError::UnsupportedShape(
            "quiver is a union of several cycles".into(),
        ));
    }
    let dq = Arc::new(double_quiver(q)?);
    let m = q.num_arrows();
    let gens = (0..n)
        .map(|i| {
            let p = out_arrow[i].unwrap();
            let r = in_arrow[i].unwrap();
            let path = |a: usize, b: usize| {
                compose_paths(&dq.arrow_path(a), &dq.arrow_path(b)).expect("doubled arrows compose")
            };
            PathElement::from_terms(
                dq.clone(),
                [
                    (Scalar::one(), path(p, p + m)),
                    (-Scalar::one(), path(r + m, r)),
                ],
            )
        })
        .collect();
    HomogeneousIdeal::new(dq, gens)
}

/// A graded algebra presented by per-degree bases and structure constants,
/// truncated at a maximal degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    labels: Vec<Vec<String>>,
    // products[d][e][i * dim(e) + j] for d + e <= max degree
    products: Vec<Vec<Vec<SparseVec>>>,
    unit: SparseVec,
}

impl GradedAlgebra {
    pub fn new(
        labels: Vec<Vec<String>>,
        product: impl Fn(usize, usize, usize, usize) -> SparseVec,
        unit: SparseVec,
    ) -> Self {
        let max = labels.len() - 1;
        let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
        let products = (0..=max)
            .map(|d| {
                (0..=max - d)
                    .map(|e| {
                        (0..dims[d] * dims[e])
                            .map(|k| product(d, k / dims[e], e, k % dims[e]))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GradedAlgebra {
            labels,
            products,
            unit,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.labels.len() - 1
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

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn mul_basis(&self, d: usize, i: usize, e: usize, j: usize) -> &SparseVec {
        &self.products[d][e][i * self.dim(e) + j]
    }
}

/// `kQ/I` up to a maximal degree, on the basis of non-pivot path cosets.
#[derive(Debug, Clone)]
pub struct PathQuotient {
    pub quiver: Arc<Quiver>,
    pub paths: PathBasis,
    pub pieces: Vec<Arc<Subspace>>,
    pub projectors: Vec<CosetProjector>,
    pub algebra: GradedAlgebra,
}

impl PathQuotient {
    pub fn new(ideal: &HomogeneousIdeal, max_degree: usize) -> Self {
        let q = ideal.quiver().clone();
        let paths = ideal.path_basis(max_degree);
        let pieces: Vec<Arc<Subspace>> = (0..=max_degree).map(|d| ideal.graded_piece(d)).collect();
        let projectors: Vec<CosetProjector> =
            pieces.iter().map(|p| CosetProjector::new(p)).collect();
        let labels = (0..=max_degree)
            .map(|d| {
                projectors[d]
                    .reps()
                    .iter()
                    .map(|&i| q.path_label(&paths.paths(d)[i]))
                    .collect()
            })
            .collect();
        let algebra = GradedAlgebra::new(
            labels,
            |d, i, e, j| {
                let (a, b) = (
                    &paths.paths(d)[projectors[d].reps()[i]],
                    &paths.paths(e)[projectors[e].reps()[j]],
                );
                match compose_paths(a, b) {
                    Some(p) => projectors[d + e]
                        .project_unit(paths.index_of(&p).unwrap())
                        .clone(),
                    None => SparseVec::new(),
                }
            },
            projectors[0].project(&SparseVec::from_entries(
                (0..q.num_vertices()).map(|i| (i, Scalar::one())),
            )),
        );
        PathQuotient {
            quiver: q,
            paths,
            pieces,
            projectors,
            algebra,
        }
    }

    /// Path index of the `k`-th basis coset in degree `d`.
    pub fn rep(&self, d: usize, k: usize) -> usize {
        self.projectors[d].reps()[k]
    }
}

/// Standard relation sets on the catalog quivers.
pub mod catalog {
    use super::*;

    fn pair(q: &Arc<Quiver>, a: &str, b: &str) -> Path {
        q.path_from_names(&[a, b]).expect("catalog path")
    }

    /// Commutators `t_i t_j - t_j t_i` on the `n`-loop quiver.
    pub fn polynomial(q: &Arc<Quiver>) -> Vec<PathElement> {
        let names: Vec<String> = q.arrows().iter().map(|a| a.name.clone()).collect();
        let mut out = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                out.push(PathElement::from_terms(
                    q.clone(),
                    [
                        (Scalar::one(), pair(q, &names[i], &names[j])),
                        (-Scalar::one(), pair(q, &names[j], &names[i])),
                    ],
                ));
            }
        }
        out
    }

    /// `t2 t1 - c t1 t2` on the 2-loop quiver.
    pub fn quantum_plane(q: &Arc<Quiver>, c: Scalar) -> Vec<PathElement> {
        vec![PathElement::from_terms(
            q.clone(),
            [
                (Scalar::one(), pair(q, "t2", "t1")),
                (-c, pair(q, "t1", "t2")),
            ],
        )]
    }

    /// `t_i^2` and `t_i t_j + t_j t_i` on the `n`-loop quiver.
    pub fn exterior(q: &Arc<Quiver>) -> Vec<PathElement> {
        let names: Vec<String> = q.arrows().iter().map(|a| a.name.clone()).collect();
        let mut out = Vec::new();
        for i in 0..names.len() {
            out.push(PathElement::path(q.clone(), pair(q, &names[i], &names[i])));
            for j in i + 1..names.len() {
                out.push(PathElement::from_terms(
                    q.clone(),
                    [
                        (Scalar::one(), pair(q, &names[i], &names[j])),
                        (Scalar::one(), pair(q, &names[j], &names[i])),
                    ],
                ));
            }
        }
        out
    }
}
