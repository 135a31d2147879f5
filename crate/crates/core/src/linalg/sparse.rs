use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::Scalar;

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::one())],
        }
    }

    pub fn scaled_unit(i: usize, c: Scalar) -> Self {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec {
                entries: vec![(i, c)],
            }
        }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(it: I) -> Self {
        let mut acc = Accum::new();
        for (i, c) in it {
            acc.add(i, &c);
        }
        acc.into_vec()
    }

    /// Trusted constructor: entries must already be sorted, distinct and nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, c)| !c.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let v = &a[i].1 + &(&b[j].1 * c);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut s = Scalar::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    s += &(&a[i].1 * &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        s
    }

    /// Reindexes through `f`, dropping entries mapped to `None`.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(
            self.iter()
                .filter_map(|(i, c)| f(i).map(|j| (j, c.clone()))),
        )
    }
}

impl std::ops::Neg for &SparseVec {
    type Output = SparseVec;
    fn neg(self) -> SparseVec {
        self.scaled(&-Scalar::one())
    }
}

impl std::ops::Add for &SparseVec {
    type Output = SparseVec;
    fn add(self, rhs: &SparseVec) -> SparseVec {
        self.add_scaled(rhs, &Scalar::one())
    }
}

impl std::ops::Sub for &SparseVec {
    type Output = SparseVec;
    fn sub(self, rhs: &SparseVec) -> SparseVec {
        self.add_scaled(rhs, &-Scalar::one())
    }
}

/// Hash-based accumulator for linear combinations keyed by `K`.
#[derive(Clone, Debug)]
pub struct Accum<K = usize> {
    map: HashMap<K, Scalar>,
}

impl<K: Hash + Eq + Ord + Clone> Default for Accum<K> {
    fn default() -> Self {
        Accum {
            map: HashMap::new(),
        }
    }
}

impl<K: Hash + Eq + Ord + Clone> Accum<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, k: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&k) {
            Some(v) => *v += c,
            None => {
                self.map.insert(k, c.clone());
            }
        }
    }

    pub fn add_product(&mut self, k: K, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        self.add(k, &(a * b));
    }

    pub fn is_zero(&self) -> bool {
        self.map.values().all(Scalar::is_zero)
    }

    /// Nonzero entries sorted by key.
    pub fn into_sorted(self) -> Vec<(K, Scalar)> {
        let mut v: Vec<(K, Scalar)> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

impl Accum<usize> {
    pub fn add_vec(&mut self, v: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add(i, &(x * c));
        }
    }

    pub fn into_vec(self) -> SparseVec {
        SparseVec::from_sorted(self.into_sorted())
    }
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(ncols: usize, rows: Vec<SparseVec>) -> Self {
        assert!(
            rows.iter()
                .all(|r| r.entries().last().is_none_or(|(i, _)| *i < ncols)),
            "row entry out of range"
        );
        SparseMatrix { ncols, rows }
    }

    pub fn from_entries(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = ((usize, usize), Scalar)>,
    ) -> Self {
        let mut acc: Vec<Accum> = (0..nrows).map(|_| Accum::new()).collect();
        for ((r, c), x) in entries {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) out of range");
            acc[r].add(c, &x);
        }
        SparseMatrix {
            ncols,
            rows: acc.into_iter().map(Accum::into_vec).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        SparseMatrix {
            ncols,
            rows: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.rows[r].coeff(c)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, x)| ((r, c), x)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_entries(
            self.ncols,
            self.rows.len(),
            self.entries().map(|((r, c), x)| ((c, r), x.clone())),
        )
    }
}
