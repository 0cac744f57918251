//! Exact sparse linear algebra over any [`Field`]: rank, kernel, solve,
//! subspaces and quotients.

mod echelon;
mod sparse;

pub use echelon::Echelon;
pub(crate) use sparse::Accumulator;
pub use sparse::{SparseMatrix, SparseVector};

use crate::error::{Error, Result};
use crate::field::Field;

/// A subspace of `F^ambient` with a reduced basis: basis vector `i` has a 1
/// at `pivots[i]` and a 0 at every other pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<SparseVector<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(|i| SparseVector::basis(field, ambient, i)).collect(), pivots: (0..ambient).collect() }
    }

    pub fn span<F: Field<Elem = E>>(field: &F, ambient: usize, vectors: &[SparseVector<E>]) -> Self {
        let mut ech = Echelon::new(field, ambient);
        for v in vectors {
            ech.insert(v);
        }
        ech.make_reduced();
        Subspace { ambient, basis: ech.rows().to_vec(), pivots: ech.pivot_columns().to_vec() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVector<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> SparseMatrix<E> {
        SparseMatrix::from_columns(self.ambient, self.basis.clone())
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in the subspace.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, v: &SparseVector<E>) -> Option<SparseVector<E>> {
        let coords: Vec<(usize, E)> = self.pivots.iter().enumerate().filter_map(|(i, p)| v.get(*p).map(|x| (i, x.clone()))).collect();
        let coords = SparseVector::from_sorted(self.dim(), coords);
        let mut rest = v.clone();
        for (i, c) in coords.entries() {
            rest = rest.axpy(field, &field.neg(c), &self.basis[*i]);
        }
        rest.is_zero().then_some(coords)
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &SparseVector<E>) -> bool {
        self.coordinates(field, v).is_some()
    }

    pub fn contains_subspace<F: Field<Elem = E>>(&self, field: &F, other: &Subspace<E>) -> bool {
        other.basis.iter().all(|b| self.contains(field, b))
    }

    /// Linear independence of the stored basis, checked by rank.
    pub fn is_independent<F: Field<Elem = E>>(&self, field: &F) -> bool {
        rank(field, &self.basis_matrix()) == self.dim()
    }
}

pub fn rank<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> usize {
    // eliminate along the shorter side
    if m.cols() <= m.rows() {
        let mut ech = Echelon::new(field, m.rows());
        for c in m.columns() {
            ech.insert(c);
        }
        ech.rank()
    } else {
        let t = m.transpose();
        rank(field, &t)
    }
}

pub fn rank_and_kernel<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> (usize, Subspace<F::Elem>) {
    let rows = m.transpose();
    let mut ech = Echelon::new(field, m.cols());
    for r in rows.columns() {
        ech.insert(r);
    }
    let r = ech.rank();
    let kernel = ech.null_space();
    let pivots = (0..m.cols()).filter(|c| !ech.is_pivot(*c)).collect();
    (r, Subspace { ambient: m.cols(), basis: kernel, pivots })
}

pub fn kernel<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F::Elem> {
    rank_and_kernel(field, m).1
}

/// Image (column space) of `m`.
pub fn image<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F::Elem> {
    Subspace::span(field, m.rows(), m.columns())
}

/// A particular solution of `m x = b` together with the kernel of `m`.
#[derive(Clone, Debug)]
pub struct Solution<E> {
    pub particular: SparseVector<E>,
    pub homogeneous: Subspace<E>,
}

pub fn solve<F: Field>(field: &F, m: &SparseMatrix<F::Elem>, b: &SparseVector<F::Elem>) -> Result<Option<Solution<F::Elem>>> {
    if b.dim() != m.rows() {
        return Err(Error::Input(format!("right-hand side has length {} but matrix has {} rows", b.dim(), m.rows())));
    }
    let n = m.cols();
    let augmented = m.hstack(&SparseMatrix::from_columns(m.rows(), vec![b.clone()]));
    let rows = augmented.transpose();
    let mut ech = Echelon::with_pivot_limit(field, n + 1, n);
    for r in rows.columns() {
        let red = ech.reduce(r);
        if red.is_zero() {
            continue;
        }
        if red.entries().iter().all(|(c, _)| *c == n) {
            return Ok(None);
        }
        ech.push_reduced(red);
    }
    ech.make_reduced();
    let mut part = Vec::new();
    for (k, row) in ech.rows().iter().enumerate() {
        if let Some(v) = row.get(n) {
            part.push((ech.pivot_columns()[k], v.clone()));
        }
    }
    let particular = SparseVector::from_unsorted(field, n, part);
    let basis = ech.null_space();
    let pivots = (0..n).filter(|c| !ech.is_pivot(*c)).collect();
    Ok(Some(Solution { particular, homogeneous: Subspace { ambient: n, basis, pivots } }))
}

/// The quotient of `F^ambient` by `sub`, represented on the non-pivot
/// coordinates of `sub`'s reduced basis.
#[derive(Clone, Debug)]
pub struct Quotient<E> {
    /// `dim_quotient x ambient`
    pub projection: SparseMatrix<E>,
    /// `ambient x dim_quotient`, with `projection * section = id`.
    pub section: SparseMatrix<E>,
}

pub fn quotient<F: Field>(field: &F, ambient: usize, sub: &Subspace<F::Elem>) -> Quotient<F::Elem> {
    assert_eq!(sub.ambient(), ambient, "subspace lives in a different ambient space");
    let mut is_pivot = vec![None; ambient];
    for (i, p) in sub.pivots().iter().enumerate() {
        is_pivot[*p] = Some(i);
    }
    let free: Vec<usize> = (0..ambient).filter(|c| is_pivot[*c].is_none()).collect();
    let mut pos = vec![usize::MAX; ambient];
    for (k, c) in free.iter().enumerate() {
        pos[*c] = k;
    }
    let q = free.len();
    let proj_cols = (0..ambient)
        .map(|c| match is_pivot[c] {
            None => SparseVector::basis(field, q, pos[c]),
            Some(i) => {
                let e =
                    sub.basis()[i].entries().iter().filter(|(j, _)| is_pivot[*j].is_none()).map(|(j, v)| (pos[*j], field.neg(v))).collect();
                SparseVector::from_unsorted(field, q, e)
            }
        })
        .collect();
    let section_cols = free.iter().map(|c| SparseVector::basis(field, ambient, *c)).collect();
    Quotient { projection: SparseMatrix::from_columns(q, proj_cols), section: SparseMatrix::from_columns(ambient, section_cols) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &PrimeField, rows: usize, cols: usize, density: f64, seed: u64) -> SparseMatrix<u32> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                if rng.gen_bool(density) {
                    t.push((i, j, rng.gen_range(0..f.modulus())));
                }
            }
        }
        SparseMatrix::from_triplets(f, rows, cols, t).unwrap()
    }

    #[test]
    fn identity_rank_and_kernel() {
        let f = Rationals;
        let (r, k) = rank_and_kernel(&f, &SparseMatrix::identity(&f, 2));
        assert_eq!(r, 2);
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn ones_row_over_gf2() {
        let f = PrimeField::new(2).unwrap();
        let m = SparseMatrix::from_dense(&f, &[vec![1, 1]]);
        let (r, k) = rank_and_kernel(&f, &m);
        assert_eq!(r, 1);
        assert_eq!(k.basis(), &[SparseVector::from_dense(&f, &[1, 1])]);
    }

    #[test]
    fn random_gf7_kernel_by_remultiplication() {
        let f = PrimeField::new(7).unwrap();
        for seed in 0..5 {
            let m = random_matrix(&f, 20, 30, 0.3, seed);
            let (r, k) = rank_and_kernel(&f, &m);
            assert_eq!(r + k.dim(), 30);
            assert_eq!(r, rank(&f, &m));
            for v in k.basis() {
                assert!(m.apply(&f, v).is_zero());
            }
            assert!(k.is_independent(&f));
        }
    }

    #[test]
    fn solve_examples() {
        let f = Rationals;
        let id = SparseMatrix::identity(&f, 3);
        let b = SparseVector::from_dense(&f, &[f.from_i64(4), f.zero(), f.from_i64(-2)]);
        let s = solve(&f, &id, &b).unwrap().unwrap();
        assert_eq!(s.particular, b);

        let zero = SparseMatrix::zeros(2, 2);
        let b = SparseVector::from_dense(&f, &[f.one(), f.zero()]);
        assert!(solve(&f, &zero, &b).unwrap().is_none());

        let m = SparseMatrix::from_dense(&f, &[vec![f.one(), f.one()], vec![f.zero(), f.zero()]]);
        let b = SparseVector::from_dense(&f, &[f.from_i64(3), f.zero()]);
        let s = solve(&f, &m, &b).unwrap().unwrap();
        assert_eq!(m.apply(&f, &s.particular), b);
        assert_eq!(s.homogeneous.dim(), 1);

        assert!(solve(&f, &m, &SparseVector::zero(3)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let f = Rationals;
        let q0 = quotient(&f, 3, &Subspace::zero(3));
        assert_eq!(q0.projection, SparseMatrix::identity(&f, 3));

        let v = SparseVector::from_dense(&f, &[f.one(), f.one()]);
        let sub = Subspace::span(&f, 2, std::slice::from_ref(&v));
        let q1 = quotient(&f, 2, &sub);
        assert_eq!(q1.projection.rows(), 1);
        assert!(q1.projection.apply(&f, &v).is_zero());
        assert_eq!(q1.projection.mul(&f, &q1.section), SparseMatrix::identity(&f, 1));
    }

    #[test]
    fn random_quotient_gf5() {
        let f = PrimeField::new(5).unwrap();
        for seed in 0..5 {
            let gens = random_matrix(&f, 10, 4, 0.4, 100 + seed);
            let sub = Subspace::span(&f, 10, gens.columns());
            let q = quotient(&f, 10, &sub);
            assert_eq!(rank(&f, &q.projection), 10 - sub.dim());
            assert_eq!(q.projection.mul(&f, &q.section), SparseMatrix::identity(&f, 10 - sub.dim()));
            for b in sub.basis() {
                assert!(q.projection.apply(&f, b).is_zero());
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn rank_nullity(seed in 0u64..200, rows in 1usize..12, cols in 1usize..12) {
            let f = PrimeField::new(3).unwrap();
            let m = random_matrix(&f, rows, cols, 0.5, seed);
            let (r, k) = rank_and_kernel(&f, &m);
            proptest::prop_assert_eq!(r + k.dim(), cols);
            proptest::prop_assert_eq!(r, rank(&f, &m.transpose()));
            for v in k.basis() {
                proptest::prop_assert!(m.apply(&f, v).is_zero());
            }
        }
    }
}
