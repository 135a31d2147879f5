//! Finite quivers and their paths.
//!
//! Paths read left to right: `p q` means "first `p`, then `q`". Paths of a
//! fixed length are ordered lexicographically by arrow index sequence; trivial
//! paths by vertex index.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("malformed quiver document: {0}")]
    Malformed(String),
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow name {0:?}")]
    DuplicateArrow(String),
    #[error("arrow {arrow:?} refers to unknown vertex {vertex:?}")]
    DanglingArrow { arrow: String, vertex: String },
    #[error("invalid name {0:?}: names must be non-empty and avoid whitespace and the characters []:;.,")]
    InvalidName(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("arrows {0:?} and {1:?} do not compose")]
    NotComposable(String, String),
    #[error("empty path")]
    EmptyPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// On-disk form: `{"vertices": [..], "arrows": [{"name", "source", "target"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Debug, Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}
impl Eq for Quiver {}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || "[]:;.,".contains(c))
}

impl Quiver {
    /// Arrows are given as `(name, source label, target label)`.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !valid_name(v) {
                return Err(QuiverError::InvalidName(v.clone()));
            }
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut out = Vec::new();
        let mut arrow_index = HashMap::new();
        for (name, s, t) in arrows {
            if !valid_name(&name) {
                return Err(QuiverError::InvalidName(name));
            }
            let look = |v: &String| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| QuiverError::DanglingArrow {
                        arrow: name.clone(),
                        vertex: v.clone(),
                    })
            };
            let (source, target) = (look(&s)?, look(&t)?);
            if arrow_index.insert(name.clone(), out.len()).is_some() {
                return Err(QuiverError::DuplicateArrow(name));
            }
            out.push(Arrow {
                name,
                source,
                target,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
            vertex_index,
            arrow_index,
        })
    }

    pub fn from_doc(doc: &QuiverDoc) -> Result<Self, QuiverError> {
        Quiver::new(
            doc.vertices.iter().cloned(),
            doc.arrows
                .iter()
                .map(|a| (a.name.clone(), a.source.clone(), a.target.clone())),
        )
    }

    pub fn to_doc(&self) -> QuiverDoc {
        QuiverDoc {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDoc {
                    name: a.name.clone(),
                    source: self.vertices[a.source].clone(),
                    target: self.vertices[a.target].clone(),
                })
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, label: &str) -> Result<usize, QuiverError> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(label.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<usize, QuiverError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let ar = &self.arrows[a];
        Path {
            source: ar.source,
            target: ar.target,
            arrows: vec![a],
        }
    }

    /// Builds a path from arrow names; `["e:<label>"]` is the trivial path.
    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, QuiverError> {
        match names {
            [] => Err(QuiverError::EmptyPath),
            [one] if one.as_ref().starts_with("e:") => {
                Ok(Path::trivial(self.vertex(&one.as_ref()[2..])?))
            }
            _ => {
                let mut p: Option<Path> = None;
                for n in names {
                    let a = self.arrow_path(self.arrow(n.as_ref())?);
                    p = Some(match p {
                        None => a,
                        Some(prev) => compose_paths(&prev, &a).ok_or_else(|| {
                            QuiverError::NotComposable(
                                self.arrows[*prev.arrows.last().unwrap()].name.clone(),
                                n.as_ref().to_string(),
                            )
                        })?,
                    });
                }
                Ok(p.unwrap())
            }
        }
    }

    /// Parses the `.`-separated text form produced by [`Quiver::path_label`].
    pub fn parse_path(&self, text: &str) -> Result<Path, QuiverError> {
        let t = text.trim();
        if t.starts_with("e:") {
            return self.path_from_names(&[t]);
        }
        let names: Vec<&str> = t.split('.').collect();
        self.path_from_names(&names)
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e:{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    pub fn path_names(&self, p: &Path) -> Vec<String> {
        if p.arrows.is_empty() {
            vec![format!("e:{}", self.vertices[p.source])]
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.clone())
                .collect()
        }
    }

    fn out_arrows(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            out[a.source].push(i);
        }
        out
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver, QuiverError> {
    let doc: QuiverDoc =
        serde_json::from_str(text).map_err(|e| QuiverError::Malformed(e.to_string()))?;
    Quiver::from_doc(&doc)
}

/// A path. Trivial paths carry their vertex as both source and target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            write!(f, "{:?}", self.arrows)
        }
    }
}

/// Concatenation `a b`, defined when `t(a) = s(b)`.
pub fn compose_paths(a: &Path, b: &Path) -> Option<Path> {
    if a.target != b.source {
        return None;
    }
    if a.arrows.is_empty() {
        return Some(b.clone());
    }
    if b.arrows.is_empty() {
        return Some(a.clone());
    }
    let mut arrows = Vec::with_capacity(a.arrows.len() + b.arrows.len());
    arrows.extend_from_slice(&a.arrows);
    arrows.extend_from_slice(&b.arrows);
    Some(Path {
        source: a.source,
        target: b.target,
        arrows,
    })
}

/// All paths of length `len`, in basis order.
pub fn enumerate_paths(q: &Quiver, len: usize) -> Vec<Path> {
    let mut level: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    let out = q.out_arrows();
    for _ in 0..len {
        level = extend(q, &level, &out);
    }
    level
}

fn extend(q: &Quiver, level: &[Path], out: &[Vec<usize>]) -> Vec<Path> {
    let mut next = Vec::new();
    // For trivial paths, lexicographic order is by first arrow, not by vertex.
    if level.first().is_some_and(Path::is_trivial) {
        return (0..q.num_arrows()).map(|a| q.arrow_path(a)).collect();
    }
    for p in level {
        for &a in &out[p.target] {
            let mut arrows = p.arrows.clone();
            arrows.push(a);
            next.push(Path {
                source: p.source,
                target: q.arrows[a].target,
                arrows,
            });
        }
    }
    next
}

/// Paths of every length up to `max_len` with index lookup.
#[derive(Debug, Clone)]
pub struct PathBasis {
    by_len: Vec<Vec<Path>>,
    index: Vec<HashMap<Path, usize>>,
}

impl PathBasis {
    pub fn new(q: &Quiver, max_len: usize) -> Self {
        let out = q.out_arrows();
        let mut by_len: Vec<Vec<Path>> = vec![(0..q.num_vertices()).map(Path::trivial).collect()];
        for l in 1..=max_len {
            let next = extend(q, &by_len[l - 1], &out);
            by_len.push(next);
        }
        let index = by_len
            .iter()
            .map(|ps| ps.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect())
            .collect();
        PathBasis { by_len, index }
    }

    pub fn max_len(&self) -> usize {
        self.by_len.len() - 1
    }

    pub fn paths(&self, len: usize) -> &[Path] {
        &self.by_len[len]
    }

    pub fn dim(&self, len: usize) -> usize {
        self.by_len[len].len()
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p.len())?.get(p).copied()
    }
}

fn star_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// Reverses every arrow; `p` becomes `p*` and `p*` becomes `p`. Arrow order is kept.
pub fn opposite_quiver(q: &Quiver) -> Quiver {
    Quiver::new(
        q.vertices.iter().cloned(),
        q.arrows.iter().map(|a| {
            (
                star_name(&a.name),
                q.vertices[a.target].clone(),
                q.vertices[a.source].clone(),
            )
        }),
    )
    .expect("starring is injective on names")
}

/// Adds a reversed copy `p*` after the original arrows.
pub fn double_quiver(q: &Quiver) -> Result<Quiver, QuiverError> {
    let originals = q.arrows.iter().map(|a| {
        (
            a.name.clone(),
            q.vertices[a.source].clone(),
            q.vertices[a.target].clone(),
        )
    });
    let stars = q.arrows.iter().map(|a| {
        (
            format!("{}*", a.name),
            q.vertices[a.target].clone(),
            q.vertices[a.source].clone(),
        )
    });
    Quiver::new(
        q.vertices.iter().cloned(),
        originals.chain(stars).collect::<Vec<_>>(),
    )
}

/// `(p1 ... pl)* = pl* ... p1*` as a path of the opposite quiver.
pub fn star_path(p: &Path) -> Path {
    let mut arrows = p.arrows.clone();
    arrows.reverse();
    Path {
        source: p.target,
        target: p.source,
        arrows,
    }
}

/// Small quivers used throughout the test fleet.
pub mod catalog {
    use super::Quiver;

    fn build(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        Quiver::new(
            vertices.iter().copied(),
            arrows
                .iter()
                .map(|(n, s, t)| (n.to_string(), s.to_string(), t.to_string())),
        )
        .expect("catalog quivers are well formed")
    }

    /// One vertex with loops `t1..tn`.
    pub fn loops(n: usize) -> Quiver {
        let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        let arrows: Vec<(&str, &str, &str)> =
            names.iter().map(|s| (s.as_str(), "1", "1")).collect();
        build(&["1"], &arrows)
    }

    /// Two vertices, no arrows.
    pub fn two_points() -> Quiver {
        build(&["1", "2"], &[])
    }

    pub fn kronecker() -> Quiver {
        build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")])
    }

    /// Vertices `1..n`, arrows `p_i: i -> i+1` (mod n).
    pub fn cycle(n: usize) -> Quiver {
        let verts: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        Quiver::new(
            verts.clone(),
            (0..n).map(|i| {
                (
                    format!("p{}", i + 1),
                    verts[i].clone(),
                    verts[(i + 1) % n].clone(),
                )
            }),
        )
        .expect("cycle is well formed")
    }

    pub fn doubled_cycle(n: usize) -> Quiver {
        super::double_quiver(&cycle(n)).expect("doubling a cycle keeps names distinct")
    }

    pub fn fleet() -> Vec<(&'static str, Quiver)> {
        vec![
            ("1-loop", loops(1)),
            ("2-loop", loops(2)),
            ("3-loop", loops(3)),
            ("two-points", two_points()),
            ("kronecker", kronecker()),
            ("3-cycle", cycle(3)),
            ("doubled-3-cycle", doubled_cycle(3)),
        ]
    }
}
