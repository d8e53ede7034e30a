//! Sparse vectors and an incremental reduced-row-echelon eliminator.

use std::collections::HashMap;

use super::scalar::{Field, Scalar};

/// Sparse vector as `(index, value)` pairs, sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Sums duplicate indices, drops zeros, sorts.
pub fn normalize(entries: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: HashMap<usize, Scalar> = HashMap::new();
    for (i, x) in entries {
        acc.entry(i).and_modify(|y| *y = &*y + &x).or_insert(x);
    }
    let mut v: SparseVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    v.sort_unstable_by_key(|(i, _)| *i);
    v
}

/// `a ⊗ b` with index `i * b_dim + j`.
pub fn kron(a: &SparseVec, b: &SparseVec, b_dim: usize) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a {
        for (j, y) in b {
            out.push((i * b_dim + j, x * y));
        }
    }
    out
}

/// Rows kept in reduced echelon form with leading pivots: every row starts
/// with a 1 at its pivot column and has zeros at every other pivot column.
/// Inserting rows in any order yields the canonical RREF of their span.
#[derive(Clone, Debug)]
pub struct RowReducer {
    field: Field,
    dim: usize,
    rows: HashMap<usize, SparseVec>,
    // column -> pivots whose row may have a nonzero entry there (may be stale)
    occurs: HashMap<usize, Vec<usize>>,
}

impl RowReducer {
    pub fn new(field: Field, dim: usize) -> Self {
        RowReducer {
            field,
            dim,
            rows: HashMap::new(),
            occurs: HashMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        self.rows.get(&col)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// `v` minus its components along pivot rows; supported on non-pivot columns.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: HashMap<usize, Scalar> = HashMap::with_capacity(v.len() * 2);
        for (c, x) in v {
            if x.is_zero() {
                continue;
            }
            match self.rows.get(c) {
                Some(row) => {
                    let neg = -x;
                    for (j, y) in row.iter().skip(1) {
                        acc.entry(*j)
                            .and_modify(|z| z.add_mul(&neg, y))
                            .or_insert_with(|| &neg * y);
                    }
                }
                None => {
                    acc.entry(*c)
                        .and_modify(|z| *z = &*z + x)
                        .or_insert_with(|| x.clone());
                }
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        out.sort_unstable_by_key(|(i, _)| *i);
        out
    }

    /// Adds a vector to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let mut r = self.reduce(v);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        for (_, x) in r.iter_mut() {
            *x = &*x * &inv;
        }
        // clear column p from the existing rows
        if let Some(users) = self.occurs.remove(&p) {
            for q in users {
                let Some(row) = self.rows.get_mut(&q) else {
                    continue;
                };
                let Ok(pos) = row.binary_search_by_key(&p, |(i, _)| *i) else {
                    continue;
                };
                let f = -&row[pos].1;
                let updated = axpy(row, &f, &r);
                for (j, _) in updated.iter().skip(1) {
                    self.occurs.entry(*j).or_default().push(q);
                }
                *row = updated;
            }
        }
        for (j, _) in r.iter().skip(1) {
            self.occurs.entry(*j).or_default().push(p);
        }
        self.rows.insert(p, r);
        true
    }

    /// True iff `v` lies in the span.
    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Basis of the null space of the row space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in 0..self.dim {
            if self.is_pivot(f) {
                continue;
            }
            let mut v: SparseVec = vec![(f, self.field.one())];
            if let Some(users) = self.occurs.get(&f) {
                let mut seen: Vec<usize> = users.clone();
                seen.sort_unstable();
                seen.dedup();
                for c in seen {
                    let row = &self.rows[&c];
                    if let Ok(pos) = row.binary_search_by_key(&f, |(i, _)| *i) {
                        v.push((c, -&row[pos].1));
                    }
                }
            }
            v.sort_unstable_by_key(|(i, _)| *i);
            out.push(v);
        }
        out
    }
}

/// `x + a * y` for sparse sorted vectors.
pub fn axpy(x: &[(usize, Scalar)], a: &Scalar, y: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            let v = a * &y[j].1;
            if !v.is_zero() {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let mut v = x[i].1.clone();
            v.add_mul(a, &y[j].1);
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
