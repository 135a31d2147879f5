//! The face algebra `𝔥(Q)` of a quiver, on its monomial basis `x[a;b]`.
//!
//! Multiplication concatenates both paths and is zero unless both concatenate.
//! The coproduct splits through every middle path of the same length.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::linalg::Scalar;
use crate::quiver::{compose_paths, enumerate_paths, Path, Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceError {
    #[error("face monomial needs paths of equal length, got {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("elements live over different quivers")]
    QuiverMismatch,
    #[error("cannot parse face element term {0:?}")]
    Parse(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// `x[left;right]` with `|left| = |right|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceMonomial {
    left: Path,
    right: Path,
}

impl FaceMonomial {
    pub fn new(left: Path, right: Path) -> Result<Self, FaceError> {
        if left.len() != right.len() {
            return Err(FaceError::LengthMismatch(left.len(), right.len()));
        }
        Ok(FaceMonomial { left, right })
    }

    pub fn left(&self) -> &Path {
        &self.left
    }

    pub fn right(&self) -> &Path {
        &self.right
    }

    pub fn degree(&self) -> usize {
        self.left.len()
    }

    pub fn label(&self, q: &Quiver) -> String {
        format!(
            "x[{};{}]",
            q.path_label(&self.left),
            q.path_label(&self.right)
        )
    }
}

/// `x[a;b] x[c;d] = x[ac;bd]`, or zero when either concatenation fails.
pub fn monomial_product(m: &FaceMonomial, n: &FaceMonomial) -> Option<FaceMonomial> {
    Some(FaceMonomial {
        left: compose_paths(&m.left, &n.left)?,
        right: compose_paths(&m.right, &n.right)?,
    })
}

/// Monomials of degree `len`, ordered lexicographically by `(left, right)`.
pub fn face_basis(q: &Quiver, len: usize) -> Vec<FaceMonomial> {
    let paths = enumerate_paths(q, len);
    paths
        .iter()
        .flat_map(|a| {
            paths.iter().map(move |b| FaceMonomial {
                left: a.clone(),
                right: b.clone(),
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct FaceElement {
    quiver: Arc<Quiver>,
    terms: BTreeMap<FaceMonomial, Scalar>,
}

impl PartialEq for FaceElement {
    fn eq(&self, other: &Self) -> bool {
        *self.quiver == *other.quiver && self.terms == other.terms
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: &Scalar) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl FaceElement {
    pub fn zero(quiver: Arc<Quiver>) -> Self {
        FaceElement {
            quiver,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(quiver: Arc<Quiver>, m: FaceMonomial) -> Self {
        FaceElement::from_terms(quiver, [(Scalar::one(), m)])
    }

    pub fn from_terms(
        quiver: Arc<Quiver>,
        terms: impl IntoIterator<Item = (Scalar, FaceMonomial)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (c, m) in terms {
            add_into(&mut map, m, &c);
        }
        FaceElement { quiver, terms: map }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FaceMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &FaceMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FaceElement) -> Result<FaceElement, FaceError> {
        if *self.quiver != *other.quiver {
            return Err(FaceError::QuiverMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_into(&mut out.terms, m.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> FaceElement {
        FaceElement::from_terms(
            self.quiver.clone(),
            self.terms.iter().map(|(m, x)| (x * c, m.clone())),
        )
    }

    /// Parses `c * x[a;b] + c' * x[a';b']`; paths use the `.`-joined arrow
    /// names and `e:<vertex>` for trivial paths. `"0"` is the zero element.
    pub fn parse(quiver: Arc<Quiver>, text: &str) -> Result<Self, FaceError> {
        let t = text.trim();
        if t == "0" {
            return Ok(FaceElement::zero(quiver));
        }
        let mut terms = Vec::new();
        for raw in t.split(" + ") {
            let bad = || FaceError::Parse(raw.to_string());
            let raw = raw.trim();
            let open = raw.find("x[").ok_or_else(bad)?;
            let body = raw[open + 2..].strip_suffix(']').ok_or_else(bad)?;
            let (l, r) = body.split_once(';').ok_or_else(bad)?;
            let coeff = raw[..open].trim();
            let coeff = match coeff.strip_suffix('*') {
                Some(c) => c.trim().parse::<Scalar>().map_err(|_| bad())?,
                None if coeff.is_empty() => Scalar::one(),
                None if coeff == "-" => -Scalar::one(),
                None => return Err(bad()),
            };
            let m = FaceMonomial::new(quiver.parse_path(l)?, quiver.parse_path(r)?)?;
            terms.push((coeff, m));
        }
        Ok(FaceElement::from_terms(quiver, terms))
    }
}

impl fmt::Display for FaceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c} * {}", m.label(&self.quiver)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone)]
pub struct TensorElement {
    quiver: Arc<Quiver>,
    terms: BTreeMap<(FaceMonomial, FaceMonomial), Scalar>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        *self.quiver == *other.quiver && self.terms == other.terms
    }
}

impl TensorElement {
    pub fn zero(quiver: Arc<Quiver>) -> Self {
        TensorElement {
            quiver,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(FaceMonomial, FaceMonomial), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, l: FaceMonomial, r: FaceMonomial, c: &Scalar) {
        add_into(&mut self.terms, (l, r), c);
    }

    /// `u ⊗ v`.
    pub fn simple(u: &FaceElement, v: &FaceElement) -> TensorElement {
        let mut t = TensorElement::zero(u.quiver.clone());
        for (m, x) in &u.terms {
            for (n, y) in &v.terms {
                t.add_term(m.clone(), n.clone(), &(x * y));
            }
        }
        t
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c);
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| {
                format!(
                    "{c} * {} ⊗ {}",
                    l.label(&self.quiver),
                    r.label(&self.quiver)
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn face_multiply(u: &FaceElement, v: &FaceElement) -> Result<FaceElement, FaceError> {
    if *u.quiver != *v.quiver {
        return Err(FaceError::QuiverMismatch);
    }
    let mut out = FaceElement::zero(u.quiver.clone());
    for (m, x) in &u.terms {
        for (n, y) in &v.terms {
            if let Some(mn) = monomial_product(m, n) {
                add_into(&mut out.terms, mn, &(x * y));
            }
        }
    }
    Ok(out)
}

/// Componentwise product of two tensors.
pub fn tensor_multiply(s: &TensorElement, t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(s.quiver.clone());
    for ((a, b), x) in &s.terms {
        for ((c, d), y) in &t.terms {
            if let (Some(ac), Some(bd)) = (monomial_product(a, c), monomial_product(b, d)) {
                out.add_term(ac, bd, &(x * y));
            }
        }
    }
    out
}

/// `1 = Σ_{i,j} x[e_i;e_j]`.
pub fn face_unit(q: &Arc<Quiver>) -> FaceElement {
    FaceElement::from_terms(
        q.clone(),
        face_basis(q, 0).into_iter().map(|m| (Scalar::one(), m)),
    )
}

/// `Δ(x[a;b]) = Σ_c x[a;c] ⊗ x[c;b]` over paths `c` of the same length.
pub fn face_coproduct(u: &FaceElement) -> TensorElement {
    let mut out = TensorElement::zero(u.quiver.clone());
    let mut mids: BTreeMap<usize, Vec<Path>> = BTreeMap::new();
    for (m, x) in &u.terms {
        let mid = mids
            .entry(m.degree())
            .or_insert_with(|| enumerate_paths(&u.quiver, m.degree()));
        for c in mid.iter() {
            out.add_term(
                FaceMonomial {
                    left: m.left.clone(),
                    right: c.clone(),
                },
                FaceMonomial {
                    left: c.clone(),
                    right: m.right.clone(),
                },
                x,
            );
        }
    }
    out
}

/// `ε(x[a;b]) = δ_{a,b}`.
pub fn face_counit(u: &FaceElement) -> Scalar {
    u.terms
        .iter()
        .filter(|(m, _)| m.left == m.right)
        .map(|(_, c)| c.clone())
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CounitalSide {
    Source,
    Target,
}

/// `ε_s(x) = 1₁ ε(x 1₂)` and `ε_t(x) = ε(1₁ x) 1₂`, computed from `Δ(1)`.
pub fn counital_map(u: &FaceElement, side: CounitalSide) -> FaceElement {
    let delta_one = face_coproduct(&face_unit(&u.quiver));
    let mut out = FaceElement::zero(u.quiver.clone());
    for ((l, r), c) in &delta_one.terms {
        let (keep, probe) = match side {
            CounitalSide::Source => (
                l,
                face_multiply(u, &FaceElement::monomial(u.quiver.clone(), r.clone())),
            ),
            CounitalSide::Target => (
                r,
                face_multiply(&FaceElement::monomial(u.quiver.clone(), l.clone()), u),
            ),
        };
        let e = face_counit(&probe.expect("same quiver"));
        add_into(&mut out.terms, keep.clone(), &(c * &e));
    }
    out
}

/// `(a_j, a'_j)` with `a_j = Σ_i x[e_i;e_j]` (source) and `a'_j = Σ_i x[e_j;e_i]` (target).
pub fn face_idempotents(q: &Arc<Quiver>) -> (Vec<FaceElement>, Vec<FaceElement>) {
    let n = q.num_vertices();
    let x = |i: usize, j: usize| FaceMonomial {
        left: Path::trivial(i),
        right: Path::trivial(j),
    };
    let source = (0..n)
        .map(|j| FaceElement::from_terms(q.clone(), (0..n).map(|i| (Scalar::one(), x(i, j)))))
        .collect();
    let target = (0..n)
        .map(|j| FaceElement::from_terms(q.clone(), (0..n).map(|i| (Scalar::one(), x(j, i)))))
        .collect();
    (source, target)
}
