use std::collections::HashMap;

use serde::Serialize;

use super::{Accum, Scalar, SparseMatrix, SparseVec};

/// Incremental row echelon form. Rows are normalized (pivot entry 1) and each
/// new row is reduced against earlier ones; full back-substitution happens in
/// [`EchelonBuilder::finish`].
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ambient: usize,
    rows: HashMap<usize, SparseVec>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        EchelonBuilder {
            ambient,
            rows: HashMap::new(),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        EchelonBuilder {
            ambient: s.ambient,
            rows: s
                .pivots
                .iter()
                .copied()
                .zip(s.rows.iter().cloned())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        let mut from = 0;
        loop {
            let hit = w
                .entries()
                .iter()
                .skip_while(|(i, _)| *i < from)
                .find(|(i, _)| self.rows.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            match hit {
                Some((p, c)) => {
                    w = w.add_scaled(&self.rows[&p], &-c);
                    from = p + 1;
                }
                None => return w,
            }
        }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        assert!(
            v.entries().last().is_none_or(|(i, _)| *i < self.ambient),
            "vector exceeds ambient dimension {}",
            self.ambient
        );
        let w = self.reduce(v);
        match w.leading() {
            None => false,
            Some((p, c)) => {
                let inv = c.recip();
                let row = w.scaled(&inv);
                self.rows.insert(p, row);
                true
            }
        }
    }

    pub fn finish(self) -> Subspace {
        let mut pivots: Vec<usize> = self.rows.keys().copied().collect();
        pivots.sort_unstable();
        let mut done: HashMap<usize, SparseVec> = HashMap::with_capacity(pivots.len());
        for &p in pivots.iter().rev() {
            let row = &self.rows[&p];
            let mut acc = Accum::new();
            acc.add_vec(row, &Scalar::one());
            for (q, c) in row.iter() {
                if q != p {
                    if let Some(rq) = done.get(&q) {
                        acc.add_vec(rq, &-c);
                    }
                }
            }
            done.insert(p, acc.into_vec());
        }
        let rows: Vec<SparseVec> = pivots.iter().map(|p| done.remove(p).unwrap()).collect();
        Subspace::from_rref(self.ambient, rows, pivots)
    }
}

/// A subspace of `Q^n` held in canonical reduced row echelon form, so two
/// subspaces are equal exactly when their representations are.
#[derive(Clone, Debug, Serialize)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    #[serde(skip)]
    pivot_row: HashMap<usize, usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }
}
impl Eq for Subspace {}

impl Subspace {
    fn from_rref(ambient: usize, rows: Vec<SparseVec>, pivots: Vec<usize>) -> Self {
        let pivot_row = pivots.iter().enumerate().map(|(r, p)| (*p, r)).collect();
        Subspace {
            ambient,
            rows,
            pivots,
            pivot_row,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace::from_rref(ambient, Vec::new(), Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_rref(
            ambient,
            (0..ambient).map(SparseVec::unit).collect(),
            (0..ambient).collect(),
        )
    }

    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(ambient: usize, vs: I) -> Self {
        let mut b = EchelonBuilder::new(ambient);
        for v in vs {
            b.insert(v);
        }
        b.finish()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    /// RREF basis, ordered by pivot column.
    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Complement of the pivot columns, ascending; these index a basis of the quotient.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivot_row.contains_key(c))
            .collect()
    }

    /// Remainder of `v` modulo the subspace; supported on non-pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        let mut touched = false;
        for (c, x) in v.iter() {
            if let Some(&r) = self.pivot_row.get(&c) {
                touched = true;
                acc.add_vec(&self.rows[r], &-x);
            }
        }
        if !touched {
            return v.clone();
        }
        acc.add_vec(v, &Scalar::one());
        acc.into_vec()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut b = EchelonBuilder::from_subspace(self);
        for r in &other.rows {
            b.insert(r);
        }
        b.finish()
    }

    pub fn extend<'a, I: IntoIterator<Item = &'a SparseVec>>(&self, vs: I) -> Subspace {
        let mut b = EchelonBuilder::from_subspace(self);
        for v in vs {
            b.insert(v);
        }
        b.finish()
    }

    /// Complement under the standard dot product.
    pub fn orthogonal_complement(&self) -> Subspace {
        let vs: Vec<SparseVec> = self
            .non_pivots()
            .into_iter()
            .map(|f| {
                let mut entries = vec![(f, Scalar::one())];
                for (r, p) in self.pivots.iter().enumerate() {
                    let x = self.rows[r].coeff(f);
                    if !x.is_zero() {
                        entries.push((*p, -x));
                    }
                }
                SparseVec::from_entries(entries)
            })
            .collect();
        Subspace::span(self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }

    pub fn as_matrix(&self) -> SparseMatrix {
        SparseMatrix::new(self.ambient, self.rows.clone())
    }
}

/// Reduced row echelon form of `m` and its pivot columns.
pub fn reduced_echelon(m: &SparseMatrix) -> (SparseMatrix, Vec<usize>) {
    let s = Subspace::span(m.ncols(), m.rows());
    let pivots = s.pivots().to_vec();
    (s.as_matrix(), pivots)
}

pub fn rank(m: &SparseMatrix) -> usize {
    Subspace::span(m.ncols(), m.rows()).dim()
}

/// Kernel `{x : m x = 0}` in canonical form.
pub fn null_space(m: &SparseMatrix) -> Subspace {
    Subspace::span(m.ncols(), m.rows()).orthogonal_complement()
}

pub fn span_contains(vs: &[SparseVec], ambient: usize, v: &SparseVec) -> bool {
    Subspace::span(ambient, vs).contains(v)
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> bool {
    a == b
}

/// Projection onto the quotient `Q^n / S`, with the non-pivot columns of `S`
/// as coordinates. Images of all unit vectors are precomputed.
#[derive(Clone, Debug)]
pub struct CosetProjector {
    reps: Vec<usize>,
    rep_pos: Vec<Option<usize>>,
    images: Vec<SparseVec>,
}

impl CosetProjector {
    pub fn new(s: &Subspace) -> Self {
        let reps = s.non_pivots();
        let mut rep_pos = vec![None; s.ambient];
        for (k, &r) in reps.iter().enumerate() {
            rep_pos[r] = Some(k);
        }
        let images = (0..s.ambient)
            .map(|m| match rep_pos[m] {
                Some(k) => SparseVec::unit(k),
                None => {
                    let row = &s.rows[s.pivot_row[&m]];
                    SparseVec::from_sorted(
                        row.iter()
                            .filter(|(c, _)| *c != m)
                            .map(|(c, x)| (rep_pos[c].unwrap(), -x))
                            .collect(),
                    )
                }
            })
            .collect();
        CosetProjector {
            reps,
            rep_pos,
            images,
        }
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn rep_position(&self, ambient_index: usize) -> Option<usize> {
        self.rep_pos[ambient_index]
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn project_unit(&self, m: usize) -> &SparseVec {
        &self.images[m]
    }

    pub fn project(&self, v: &SparseVec) -> SparseVec {
        if v.nnz() == 1 {
            let (m, c) = v.leading().unwrap();
            return self.images[m].scaled(c);
        }
        let mut acc = Accum::new();
        for (m, c) in v.iter() {
            acc.add_vec(&self.images[m], c);
        }
        acc.into_vec()
    }

    /// Embeds quotient coordinates back as the combination of representatives.
    pub fn lift(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(v.iter().map(|(k, c)| (self.reps[k], c.clone())).collect())
    }
}
