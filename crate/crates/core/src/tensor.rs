//! Tensor-slot bookkeeping.
//!
//! All tensor products use big-endian indexing: slot 0 is leftmost and the
//! basis vector `e_{i0} ⊗ … ⊗ e_{i(n-1)}` of a space with slot dimensions
//! `dims` has index `Σ i_s · Π_{t>s} dims[t]`. `H^⊗0` is the ground field
//! with the single basis vector of index 0.

use crate::field::Field;
use crate::linalg::{Accumulator, SparseMatrix, SparseVector};

pub fn encode(digits: &[usize], dims: &[usize]) -> usize {
    debug_assert_eq!(digits.len(), dims.len());
    digits.iter().zip(dims).fold(0, |acc, (i, d)| {
        debug_assert!(i < d);
        acc * d + i
    })
}

pub fn decode(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for s in (0..dims.len()).rev() {
        out[s] = index % dims[s];
        index /= dims[s];
    }
    out
}

/// The basis indexing of `H^⊗q` for `dim H = d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorPowerSpace {
    pub base_dim: usize,
    pub exponent: usize,
}

impl TensorPowerSpace {
    pub fn new(base_dim: usize, exponent: usize) -> Self {
        TensorPowerSpace { base_dim, exponent }
    }

    pub fn dim(&self) -> usize {
        self.base_dim.pow(self.exponent as u32)
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        encode(digits, &vec![self.base_dim; self.exponent])
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        decode(index, &vec![self.base_dim; self.exponent])
    }
}

/// `(I_left ⊗ map ⊗ I_right) v`, computed without materializing the Kronecker product.
pub fn apply_local<F: Field>(
    field: &F,
    v: &SparseVector<F::Elem>,
    left: usize,
    map: &SparseMatrix<F::Elem>,
    right: usize,
) -> SparseVector<F::Elem> {
    let (out_mid, in_mid) = map.shape();
    debug_assert_eq!(v.dim(), left * in_mid * right);
    let out_dim = left * out_mid * right;
    let mut entries = Vec::new();
    for (idx, x) in v.entries() {
        let z = idx % right;
        let rest = idx / right;
        let y = rest % in_mid;
        let l = rest / in_mid;
        for (y2, c) in map.column(y).entries() {
            entries.push(((l * out_mid + y2) * right + z, field.mul(x, c)));
        }
    }
    SparseVector::from_unsorted(field, out_dim, entries)
}

/// `I_left ⊗ map ⊗ I_right` as a matrix.
pub fn kron_local<E: Clone>(left: usize, map: &SparseMatrix<E>, right: usize) -> SparseMatrix<E> {
    let (out_mid, in_mid) = map.shape();
    let rows = left * out_mid * right;
    let mut columns = Vec::with_capacity(left * in_mid * right);
    for l in 0..left {
        for y in 0..in_mid {
            for z in 0..right {
                let e = map.column(y).entries().iter().map(|(y2, c)| ((l * out_mid + y2) * right + z, c.clone())).collect();
                columns.push(SparseVector::from_sorted(rows, e));
            }
        }
    }
    SparseMatrix::from_columns(rows, columns)
}

/// The permutation of tensor slots sending input slot `perm[s]` to output slot `s`.
pub fn permutation<F: Field>(field: &F, dims: &[usize], perm: &[usize]) -> SparseMatrix<F::Elem> {
    assert_eq!(dims.len(), perm.len());
    let total: usize = dims.iter().product();
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let columns = (0..total)
        .map(|i| {
            let d = decode(i, dims);
            let od: Vec<usize> = perm.iter().map(|&p| d[p]).collect();
            SparseVector::basis(field, total, encode(&od, &out_dims))
        })
        .collect();
    SparseMatrix::from_columns(total, columns)
}

/// Product of a sequence of matrices applied right to left: `ms[0] * ms[1] * …`.
pub fn compose<F: Field>(field: &F, ms: &[&SparseMatrix<F::Elem>]) -> SparseMatrix<F::Elem> {
    let mut it = ms.iter().rev();
    let mut acc = (*it.next().expect("nonempty product")).clone();
    for m in it {
        acc = m.mul(field, &acc);
    }
    acc
}

/// Applies `I_left ⊗ map ⊗ I_right` to every column of `m`.
pub fn apply_local_columns<F: Field>(
    field: &F,
    m: &SparseMatrix<F::Elem>,
    left: usize,
    map: &SparseMatrix<F::Elem>,
    right: usize,
) -> SparseMatrix<F::Elem> {
    let rows = left * map.rows() * right;
    let cols = m.columns().iter().map(|c| apply_local(field, c, left, map, right)).collect();
    SparseMatrix::from_columns(rows, cols)
}

/// Scatter-accumulates `Σ c_k v_k`.
pub fn linear_combination<F: Field>(
    field: &F,
    dim: usize,
    terms: impl IntoIterator<Item = (F::Elem, SparseVector<F::Elem>)>,
) -> SparseVector<F::Elem> {
    let mut acc = Accumulator::new(dim);
    for (c, v) in terms {
        acc.add_scaled(field, &c, &v);
    }
    acc.drain(field, dim)
}

/// Row-major vectorization of a linear map `V → W`: entry `(w, v)` sits at `w·dim_v + v`.
pub fn vec_to_matrix<F: Field>(field: &F, v: &SparseVector<F::Elem>, rows: usize, cols: usize) -> SparseMatrix<F::Elem> {
    debug_assert_eq!(v.dim(), rows * cols);
    let t = v.entries().iter().map(|(i, c)| (i / cols, i % cols, c.clone()));
    SparseMatrix::from_triplets(field, rows, cols, t).expect("indices in range")
}

pub fn matrix_to_vec<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> SparseVector<F::Elem> {
    let cols = m.cols();
    let e = m.triplets().map(|(r, c, v)| (r * cols + c, v.clone())).collect();
    SparseVector::from_unsorted(field, m.rows() * cols, e)
}

/// Matrix of the linear map `Hom(V, W) → Hom(X, Y)`,
/// `G ↦ outer ∘ (I_a ⊗ G ⊗ I_b) ∘ inner`, in row-major vectorization.
///
/// `inner` is `(a·dim_v·b) × dim_x` and `outer` is `dim_y × (a·dim_w·b)`.
pub fn lift_operator<F: Field>(
    field: &F,
    dim_v: usize,
    dim_w: usize,
    a: usize,
    b: usize,
    outer: &SparseMatrix<F::Elem>,
    inner: &SparseMatrix<F::Elem>,
) -> SparseMatrix<F::Elem> {
    assert_eq!(inner.rows(), a * dim_v * b, "inner map has wrong codomain");
    assert_eq!(outer.cols(), a * dim_w * b, "outer map has wrong domain");
    let dim_x = inner.cols();
    let dim_y = outer.rows();
    let mut cols: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); dim_w * dim_v];
    for x in 0..dim_x {
        for (idx, c) in inner.column(x).entries() {
            let j = idx % b;
            let rest = idx / b;
            let v = rest % dim_v;
            let i = rest / dim_v;
            for w in 0..dim_w {
                let col = &mut cols[w * dim_v + v];
                for (y, o) in outer.column((i * dim_w + w) * b + j).entries() {
                    col.push((y * dim_x + x, field.mul(c, o)));
                }
            }
        }
    }
    let rows = dim_y * dim_x;
    SparseMatrix::from_columns(rows, cols.into_iter().map(|e| SparseVector::from_unsorted(field, rows, e)).collect())
}
