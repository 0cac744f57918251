use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// A sparse vector: sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVector<E> {
    dim: usize,
    entries: Vec<(usize, E)>,
}

impl<E: fmt::Debug> fmt::Debug for SparseVector<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseVector[{}]{:?}", self.dim, self.entries)
    }
}

impl<E> SparseVector<E> {
    pub fn zero(dim: usize) -> Self {
        SparseVector { dim, entries: Vec::new() }
    }

    /// Entries must be sorted by index, distinct, and nonzero.
    pub fn from_sorted(dim: usize, entries: Vec<(usize, E)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.last().is_none_or(|e| e.0 < dim));
        SparseVector { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, E)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn with_dim(mut self, dim: usize) -> Self {
        debug_assert!(self.entries.last().is_none_or(|e| e.0 < dim));
        self.dim = dim;
        self
    }
}

impl<E: Clone> SparseVector<E> {
    pub fn basis<F: Field<Elem = E>>(field: &F, dim: usize, i: usize) -> Self {
        SparseVector { dim, entries: vec![(i, field.one())] }
    }

    /// Builds from unsorted, possibly duplicated entries (duplicates are summed).
    pub fn from_unsorted<F: Field<Elem = E>>(field: &F, dim: usize, mut entries: Vec<(usize, E)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, E)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            debug_assert!(i < dim);
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = field.add(&last.1, &v),
                _ => out.push((i, v)),
            }
        }
        out.retain(|e| !field.is_zero(&e.1));
        SparseVector { dim, entries: out }
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, values: &[E]) -> Self {
        let entries = values.iter().enumerate().filter(|(_, v)| !field.is_zero(v)).map(|(i, v)| (i, v.clone())).collect();
        SparseVector { dim: values.len(), entries }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<E> {
        let mut out = vec![field.zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return SparseVector::zero(self.dim);
        }
        SparseVector { dim: self.dim, entries: self.entries.iter().map(|(i, v)| (*i, field.mul(v, c))).collect() }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        SparseVector { dim: self.dim, entries: self.entries.iter().map(|(i, v)| (*i, field.neg(v))).collect() }
    }

    /// `self + c * other`.
    pub fn axpy<F: Field<Elem = E>>(&self, field: &F, c: &E, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        if field.is_zero(c) || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    let v = field.add(&x.1, &field.mul(c, &y.1));
                    if !field.is_zero(&v) {
                        out.push((x.0, v));
                    }
                    a.next();
                    b.next();
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    out.push((*x).clone());
                    a.next();
                }
                (Some(_), Some(y)) => {
                    out.push((y.0, field.mul(c, &y.1)));
                    b.next();
                }
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, Some(y)) => {
                    out.push((y.0, field.mul(c, &y.1)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVector { dim: self.dim, entries: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.axpy(field, &field.one(), other)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.axpy(field, &field.neg(&field.one()), other)
    }

    /// Tensor product `self ⊗ other` in big-endian indexing.
    pub fn kron_vec<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                entries.push((i * other.dim + j, field.mul(x, y)));
            }
        }
        SparseVector { dim: self.dim * other.dim, entries }
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(i, v)| (i + self.dim, v.clone())));
        SparseVector { dim: self.dim + other.dim, entries }
    }

    /// The coordinates in `[start, start + len)`, reindexed from zero.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        let entries = self.entries.iter().filter(|(i, _)| *i >= start && *i < start + len).map(|(i, v)| (i - start, v.clone())).collect();
        SparseVector { dim: len, entries }
    }

    pub fn dot<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> E {
        let mut acc = field.zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some(x), Some(y)) = (a.peek(), b.peek()) {
            if x.0 == y.0 {
                acc = field.add(&acc, &field.mul(&x.1, &y.1));
                a.next();
                b.next();
            } else if x.0 < y.0 {
                a.next();
            } else {
                b.next();
            }
        }
        acc
    }
}

/// Dense scatter accumulator used to build sparse results without hashing.
pub(crate) struct Accumulator<E> {
    values: Vec<Option<E>>,
    touched: Vec<usize>,
}

impl<E: Clone> Accumulator<E> {
    pub(crate) fn new(dim: usize) -> Self {
        Accumulator { values: vec![None; dim], touched: Vec::new() }
    }

    pub(crate) fn add<F: Field<Elem = E>>(&mut self, field: &F, i: usize, v: E) {
        match &mut self.values[i] {
            Some(x) => *x = field.add(x, &v),
            slot @ None => {
                *slot = Some(v);
                self.touched.push(i);
            }
        }
    }

    pub(crate) fn add_scaled<F: Field<Elem = E>>(&mut self, field: &F, c: &E, v: &SparseVector<E>) {
        for (i, x) in v.entries() {
            self.add(field, *i, field.mul(c, x));
        }
    }

    /// Drains into a sparse vector and resets the accumulator for reuse.
    pub(crate) fn drain<F: Field<Elem = E>>(&mut self, field: &F, dim: usize) -> SparseVector<E> {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            if let Some(v) = self.values[i].take() {
                if !field.is_zero(&v) {
                    entries.push((i, v));
                }
            }
        }
        self.touched.clear();
        SparseVector::from_sorted(dim, entries)
    }
}

/// A sparse matrix stored by columns. No stored zeros, no duplicate positions.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVector<E>>,
}

impl<E: fmt::Debug> fmt::Debug for SparseMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.entries() {
                write!(f, " ({i},{j})={v:?}")?;
            }
        }
        write!(f, " ]")
    }
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![SparseVector::zero(rows); cols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, columns: (0..n).map(|i| SparseVector::basis(field, n, i)).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVector<E>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.dim() == rows));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn from_triplets<F: Field<Elem = E>>(
        field: &F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Result<Self> {
        let mut per_col: Vec<Vec<(usize, E)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Input(format!("entry ({r},{c}) outside {rows}x{cols} matrix")));
            }
            per_col[c].push((r, v));
        }
        Ok(SparseMatrix { rows, cols, columns: per_col.into_iter().map(|e| SparseVector::from_unsorted(field, rows, e)).collect() })
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, rows: &[Vec<E>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let columns = (0..nc)
            .map(|j| {
                let col: Vec<E> = rows.iter().map(|r| r[j].clone()).collect();
                SparseVector::from_dense(field, &col)
            })
            .collect();
        SparseMatrix { rows: nr, cols: nc, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn column(&self, j: usize) -> &SparseVector<E> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVector<E>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SparseVector<E>> {
        self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        self.columns[j].get(i)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &E)> + '_ {
        self.columns.iter().enumerate().flat_map(|(j, c)| c.entries().iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut per_row: Vec<Vec<(usize, E)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.entries() {
                per_row[*i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: per_row.into_iter().map(|e| SparseVector::from_sorted(self.cols, e)).collect(),
        }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![field.zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &SparseVector<E>) -> SparseVector<E> {
        assert_eq!(v.dim(), self.cols, "matrix-vector dimension mismatch");
        let mut acc = Accumulator::new(self.rows);
        for (j, x) in v.entries() {
            acc.add_scaled(field, x, &self.columns[*j]);
        }
        acc.drain(field, self.rows)
    }

    /// `self * other`.
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut acc = Accumulator::new(self.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                for (k, x) in col.entries() {
                    acc.add_scaled(field, x, &self.columns[*k]);
                }
                acc.drain(field, self.rows)
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(field, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| a.sub(field, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        SparseMatrix { rows: self.rows, cols: self.cols, columns: self.columns.iter().map(|col| col.scale(field, c)).collect() }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        SparseMatrix { rows: self.rows, cols: self.cols, columns: self.columns.iter().map(|col| col.neg(field)).collect() }
    }

    /// Kronecker product, consistent with big-endian tensor indexing:
    /// `(a ⊗ b)[(i*p + k), (j*q + l)] = a[i,j] * b[k,l]`.
    pub fn kron<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let (p, q) = other.shape();
        let mut columns = Vec::with_capacity(self.cols * q);
        for a in &self.columns {
            for b in &other.columns {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.entries() {
                    for (k, y) in b.entries() {
                        entries.push((i * p + k, field.mul(x, y)));
                    }
                }
                // a field has no zero divisors, so products of nonzeros are nonzero
                columns.push(SparseVector::from_sorted(self.rows * p, entries));
            }
        }
        SparseMatrix { rows: self.rows * p, cols: self.cols * q, columns }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        SparseMatrix { rows: self.rows, cols: self.cols + other.cols, columns }
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| a.concat(b)).collect();
        SparseMatrix { rows: self.rows + other.rows, cols: self.cols, columns }
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let top = SparseVector::zero(self.rows);
        let bottom = SparseVector::zero(other.rows);
        let mut columns: Vec<_> = self.columns.iter().map(|c| c.concat(&bottom)).collect();
        columns.extend(other.columns.iter().map(|c| top.concat(c)));
        SparseMatrix { rows: self.rows + other.rows, cols: self.cols + other.cols, columns }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        SparseMatrix { rows: self.rows, cols: idx.len(), columns: idx.iter().map(|&j| self.columns[j].clone()).collect() }
    }

    /// Rows `[start, start + len)`.
    pub fn row_block(&self, start: usize, len: usize) -> Self {
        SparseMatrix { rows: len, cols: self.cols, columns: self.columns.iter().map(|c| c.slice(start, len)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> SparseMatrix<crate::field::Rational> {
        let f = Rationals;
        let d: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        SparseMatrix::from_dense(&f, &d)
    }

    #[test]
    fn product_and_transpose() {
        let f = Rationals;
        let a = q(&[&[1, 2], &[0, 1]]);
        let b = q(&[&[1, -2], &[0, 1]]);
        assert_eq!(a.mul(&f, &b), SparseMatrix::identity(&f, 2));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose(), q(&[&[1, 0], &[2, 1]]));
    }

    #[test]
    fn kron_follows_big_endian_indexing() {
        let f = Rationals;
        let a = q(&[&[1, 2]]);
        let b = q(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&f, &b);
        assert_eq!(k, q(&[&[0, 1, 0, 2], &[1, 0, 2, 0]]));
    }

    #[test]
    fn triplets_sum_duplicates_and_drop_zeros() {
        let f = PrimeField::new(2).unwrap();
        let m = SparseMatrix::from_triplets(&f, 2, 2, vec![(0, 0, 1), (0, 0, 1), (1, 1, 1)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert!(SparseMatrix::from_triplets(&f, 2, 2, vec![(2, 0, 1)]).is_err());
    }
}
