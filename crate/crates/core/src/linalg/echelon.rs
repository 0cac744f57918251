//! Incremental sparse Gaussian elimination.
//!
//! Vectors are inserted one at a time and reduced against the pivot rows
//! inserted before them, in insertion order. A surviving vector becomes a new
//! pivot row; its pivot is the entry with the smallest [`Field::pivot_cost`]
//! (ties broken by lowest index), which keeps rational coefficients small.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::Field;
use crate::linalg::sparse::{Accumulator, SparseVector};

#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    /// Only indices below this bound may become pivots (augmented systems).
    pivot_limit: usize,
    rows: Vec<SparseVector<F::Elem>>,
    pivot_cols: Vec<usize>,
    pivot_of: Vec<Option<usize>>,
    reduced: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        Self::with_pivot_limit(field, dim, dim)
    }

    pub fn with_pivot_limit(field: &F, dim: usize, pivot_limit: usize) -> Self {
        Echelon {
            field: field.clone(),
            dim,
            pivot_limit,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            pivot_of: vec![None; dim],
            reduced: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn rows(&self) -> &[SparseVector<F::Elem>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of[col].is_some()
    }

    /// Reduces `v` against all pivot rows so no pivot column survives.
    pub fn reduce(&self, v: &SparseVector<F::Elem>) -> SparseVector<F::Elem> {
        debug_assert_eq!(v.dim(), self.dim);
        let f = &self.field;
        let mut heap: BinaryHeap<Reverse<usize>> = v.entries().iter().filter_map(|(c, _)| self.pivot_of[*c].map(Reverse)).collect();
        let mut cur = v.clone();
        let mut last = None;
        while let Some(Reverse(k)) = heap.pop() {
            if last == Some(k) {
                continue;
            }
            last = Some(k);
            let col = self.pivot_cols[k];
            let Some(c) = cur.get(col).cloned() else { continue };
            let row = &self.rows[k];
            for (j, _) in row.entries() {
                if let Some(r) = self.pivot_of[*j] {
                    if r > k && cur.get(*j).is_none() {
                        heap.push(Reverse(r));
                    }
                }
            }
            cur = cur.axpy(f, &f.neg(&c), row);
        }
        cur
    }

    /// Inserts `v`; returns `true` if it was independent of the rows so far.
    pub fn insert(&mut self, v: &SparseVector<F::Elem>) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    /// Adds an already-reduced vector as a pivot row. Returns `false` if it
    /// has no admissible pivot (zero, or supported only past the pivot limit).
    pub fn push_reduced(&mut self, r: SparseVector<F::Elem>) -> bool {
        let f = &self.field;
        let best = r.entries().iter().filter(|(c, _)| *c < self.pivot_limit).min_by_key(|(c, v)| (f.pivot_cost(v), *c));
        let Some((col, val)) = best.cloned() else { return false };
        let inv = f.inv(&val).expect("nonzero pivot");
        let row = r.scale(f, &inv);
        self.pivot_of[col] = Some(self.rows.len());
        self.pivot_cols.push(col);
        self.rows.push(row);
        self.reduced = false;
        true
    }

    /// Back-substitutes so every pivot row vanishes on all other pivot columns.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let f = self.field.clone();
        let mut acc = Accumulator::new(self.dim);
        for k in (0..self.rows.len()).rev() {
            let coeffs: Vec<(usize, F::Elem)> = self.rows[k]
                .entries()
                .iter()
                .filter_map(|(c, v)| match self.pivot_of[*c] {
                    Some(j) if j != k => Some((j, v.clone())),
                    _ => None,
                })
                .collect();
            if coeffs.is_empty() {
                continue;
            }
            acc.add_scaled(&f, &f.one(), &self.rows[k]);
            for (j, c) in coeffs {
                acc.add_scaled(&f, &f.neg(&c), &self.rows[j]);
            }
            self.rows[k] = acc.drain(&f, self.dim);
        }
        self.reduced = true;
    }

    /// Basis of `{x : row · x = 0 for every row}` restricted to the first
    /// `pivot_limit` coordinates, one vector per free column.
    pub fn null_space(&mut self) -> Vec<SparseVector<F::Elem>> {
        self.make_reduced();
        let f = self.field.clone();
        let n = self.pivot_limit;
        let mut by_free: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); n];
        let free: Vec<usize> = (0..n).filter(|c| self.pivot_of[*c].is_none()).collect();
        for (k, row) in self.rows.iter().enumerate() {
            let pc = self.pivot_cols[k];
            for (c, v) in row.entries() {
                if *c < n && *c != pc {
                    by_free[*c].push((pc, f.neg(v)));
                }
            }
        }
        free.into_iter()
            .map(|c| {
                let mut e = std::mem::take(&mut by_free[c]);
                e.push((c, f.one()));
                SparseVector::from_unsorted(&f, n, e)
            })
            .collect()
    }
}
