//! Cup products on the H4 and reduced b complexes, the Leibniz check and the
//! graded-commutativity test.
//!
//! A component of bidegree `(s, x)` lives in cell `(s, x)`: cobar index `s`,
//! bar index `x`, total degree `s + x`. For the reduced complex it is a map
//! `H^{⊗x} → H^{⊗s}`; for H4 it is `M ⊗ H^{⊗x} → H^{⊗s} ⊗ L`.

use crate::bimodule::{same_base, HopfBimodule};
use crate::cohomology::{is_coboundary, DoubleComplex, Theory};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::FiniteHopfAlgebra;
use crate::linalg::{SparseMatrix, SparseVector};
use crate::tensor::{kron_local, matrix_to_vec, permutation, vec_to_matrix};

type Mat<F> = SparseMatrix<<F as Field>::Elem>;

fn pow(d: usize, k: usize) -> usize {
    d.pow(k as u32)
}

fn exponent(d: usize, n: usize, what: &str) -> Result<usize> {
    let mut k = 0;
    let mut acc = 1;
    while acc < n {
        acc *= d;
        k += 1;
    }
    if acc != n {
        return Err(Error::Input(format!("{what} dimension {n} is not a power of {d}")));
    }
    Ok(k)
}

/// `a ↦ (Δ^{(k−1)}(a^(1)_1⋯a^(1)_n) ⊗ a^(2)) : H^n → H^k ⊗ H^n`.
fn spread_left<F: Field>(h: &FiniteHopfAlgebra<F>, k: usize, n: usize) -> Mat<F> {
    let f = h.field();
    let lead = h.iterated_comultiplication(k as isize - 1).mul(f, &h.iterated_multiplication(n));
    lead.kron(f, &SparseMatrix::identity(f, pow(h.dim(), n))).mul(f, &h.sweedler_split(n))
}

/// Cup product of reduced components `f: H^x → H^s` and `g: H^y → H^r` as a
/// `d^{s+r} × d^{x+y}` matrix.
pub fn cup_b_matrix<F: Field>(h: &FiniteHopfAlgebra<F>, f: &Mat<F>, g: &Mat<F>) -> Result<Mat<F>> {
    let fl = h.field();
    let d = h.dim();
    let s = exponent(d, f.rows(), "left factor target")?;
    let x = exponent(d, f.cols(), "left factor source")?;
    let r = exponent(d, g.rows(), "right factor target")?;
    let y = exponent(d, g.cols(), "right factor source")?;
    // f(a^(1)) ⊗ Δ^{(r−1)}(a^(2)_1⋯a^(2)_x)
    let tail = h.iterated_comultiplication(r as isize - 1).mul(fl, &h.iterated_multiplication(x));
    let left = f.kron(fl, &tail).mul(fl, &h.sweedler_split(x));
    // Δ^{(s−1)}(b^(1)_1⋯b^(1)_y) ⊗ g(b^(2))
    let right = kron_local(pow(d, s), g, 1).mul(fl, &spread_left(h, s, y));
    let prod = h.componentwise_product_map(s + r).mul(fl, &left.kron(fl, &right));
    Ok(prod.scale(fl, &fl.parity_sign(s * y)))
}

/// Cup product of H4 components `f: M⊗H^x → H^s⊗L` and `g: L⊗H^y → H^r⊗N`,
/// as a map `M⊗H^{x+y} → H^{s+r}⊗N`.
pub fn cup_h4_matrix<F: Field>(m: &HopfBimodule<F>, l: &HopfBimodule<F>, n: &HopfBimodule<F>, f: &Mat<F>, g: &Mat<F>) -> Result<Mat<F>> {
    if !same_base(m.algebra(), l.algebra()) || !same_base(l.algebra(), n.algebra()) {
        return Err(Error::Input("cup product of cochains over different Hopf algebras".into()));
    }
    let h = m.algebra();
    let fl = h.field();
    let d = h.dim();
    let x = exponent(d, f.cols() / m.dim().max(1), "left factor source")?;
    let s = exponent(d, f.rows() / l.dim().max(1), "left factor target")?;
    let y = exponent(d, g.cols() / l.dim().max(1), "right factor source")?;
    let r = exponent(d, g.rows() / n.dim().max(1), "right factor target")?;
    if f.shape() != (pow(d, s) * l.dim(), m.dim() * pow(d, x)) || g.shape() != (pow(d, r) * n.dim(), l.dim() * pow(d, y)) {
        return Err(Error::Input("cochain shapes do not match the coefficient modules".into()));
    }
    let (ds, dx, dy) = (pow(d, s), pow(d, x), pow(d, y));
    // m ⊗ a ⊗ b ↦ m ⊗ a ⊗ Δ^{(s−1)}(b^(1)…) ⊗ b^(2)
    let step1 = kron_local(m.dim() * dx, &spread_left(h, s, y), 1);
    let step2 = kron_local(1, f, ds * dy);
    // (u ⊗ l) ⊗ v ⊗ b ↦ (u·v) ⊗ l ⊗ b
    let shuffle = permutation(fl, &[ds, l.dim(), ds, dy], &[0, 2, 1, 3]);
    let step3 = kron_local(1, &h.componentwise_product_map(s), l.dim() * dy).mul(fl, &shuffle);
    let step4 = kron_local(ds, g, 1);
    let out = step4.mul(fl, &step3).mul(fl, &step2).mul(fl, &step1);
    Ok(out.scale(fl, &fl.parity_sign(s * y)))
}

fn require_reduced<F: Field>(dc: &DoubleComplex<F>) -> Result<()> {
    if !dc.reduced {
        return Err(Error::Input("cup_b needs the reduced b complex".into()));
    }
    Ok(())
}

fn check_degree<F: Field>(dc: &DoubleComplex<F>, n: usize, v: &SparseVector<F::Elem>) -> Result<()> {
    if n > dc.n_max + 1 {
        return Err(Error::Input(format!("degree {n} is outside the computed grid (up to {})", dc.n_max + 1)));
    }
    if v.dim() != dc.total_dim(n) {
        return Err(Error::Input(format!("cochain has length {} but T^{n} has dimension {}", v.dim(), dc.total_dim(n))));
    }
    Ok(())
}

/// Cup product of total cochains of degrees `a` and `b` in the reduced complex.
pub fn cup_b<F: Field>(
    dc: &DoubleComplex<F>,
    a: usize,
    f: &SparseVector<F::Elem>,
    b: usize,
    g: &SparseVector<F::Elem>,
) -> Result<SparseVector<F::Elem>> {
    require_reduced(dc)?;
    check_degree(dc, a, f)?;
    check_degree(dc, b, g)?;
    if a + b > dc.n_max + 1 {
        return Err(Error::Input(format!("product degree {} is outside the computed grid", a + b)));
    }
    let h = dc.algebra();
    let fl = dc.field();
    let d = h.dim();
    let mut acc = SparseVector::zero(dc.total_dim(a + b));
    for s in 0..=a {
        let fs = dc.component(a, s, f);
        if fs.is_zero() {
            continue;
        }
        let fm = vec_to_matrix(fl, &fs, pow(d, s), pow(d, a - s));
        for r in 0..=b {
            let gr = dc.component(b, r, g);
            if gr.is_zero() {
                continue;
            }
            let gm = vec_to_matrix(fl, &gr, pow(d, r), pow(d, b - r));
            let c = matrix_to_vec(fl, &cup_b_matrix(h, &fm, &gm)?);
            acc = acc.add(fl, &dc.embed(a + b, s + r, &c));
        }
    }
    Ok(acc)
}

/// Cup product `T^a(M, L) ⊗ T^b(L, N) → T^{a+b}(M, N)` on H4 complexes.
pub fn cup_h4<F: Field>(
    ml: &DoubleComplex<F>,
    ln: &DoubleComplex<F>,
    mn: &DoubleComplex<F>,
    a: usize,
    f: &SparseVector<F::Elem>,
    b: usize,
    g: &SparseVector<F::Elem>,
) -> Result<SparseVector<F::Elem>> {
    let coeffs = |dc: &DoubleComplex<F>| -> Result<(HopfBimodule<F>, HopfBimodule<F>)> {
        if dc.theory == Theory::Gs || dc.reduced {
            return Err(Error::Input("cup_h4 needs H4 style complexes".into()));
        }
        let (x, y) = dc.coefficients().unwrap();
        Ok((x.clone(), y.clone()))
    };
    let (m, l) = coeffs(ml)?;
    let (l2, n) = coeffs(ln)?;
    let (m2, n2) = coeffs(mn)?;
    if l.dim() != l2.dim() || m.dim() != m2.dim() || n.dim() != n2.dim() {
        return Err(Error::Input("coefficient modules of the three complexes do not chain".into()));
    }
    check_degree(ml, a, f)?;
    check_degree(ln, b, g)?;
    if a + b > mn.n_max + 1 {
        return Err(Error::Input(format!("product degree {} is outside the computed grid", a + b)));
    }
    let fl = ml.field();
    let mut acc = SparseVector::zero(mn.total_dim(a + b));
    for s in 0..=a {
        let cf = ml.cell(s, a - s).unwrap();
        let fs = cf.to_raw(fl, &ml.component(a, s, f));
        if fs.is_zero() {
            continue;
        }
        let fm = vec_to_matrix(fl, &fs, cf.target_dim, cf.source_dim);
        for r in 0..=b {
            let cg = ln.cell(r, b - r).unwrap();
            let gr = cg.to_raw(fl, &ln.component(b, r, g));
            if gr.is_zero() {
                continue;
            }
            let gm = vec_to_matrix(fl, &gr, cg.target_dim, cg.source_dim);
            let raw = matrix_to_vec(fl, &cup_h4_matrix(&m, &l, &n, &fm, &gm)?);
            let out = mn.cell(s + r, a + b - s - r).unwrap();
            let coords = out
                .coordinates(fl, &raw)
                .ok_or_else(|| Error::Internal(format!("cup product left cell ({}, {})", s + r, a + b - s - r)))?;
            acc = acc.add(fl, &mn.embed(a + b, s + r, &coords));
        }
    }
    Ok(acc)
}

/// `D(f⌣g) = Df⌣g + (−1)^a f⌣Dg` for `f ∈ T^a`, `g ∈ T^b` in the reduced complex.
pub fn check_leibniz<F: Field>(
    dc: &DoubleComplex<F>,
    a: usize,
    f: &SparseVector<F::Elem>,
    b: usize,
    g: &SparseVector<F::Elem>,
) -> Result<bool> {
    if a + b > dc.n_max {
        return Err(Error::Input(format!("Leibniz check in degree {} needs n_max ≥ {}", a + b, a + b)));
    }
    let fl = dc.field();
    let lhs = dc.apply_total(a + b, &cup_b(dc, a, f, b, g)?);
    let df = cup_b(dc, a + 1, &dc.apply_total(a, f), b, g)?;
    let dg = cup_b(dc, a, f, b + 1, &dc.apply_total(b, g))?;
    Ok(lhs == df.add(fl, &dg.scale(fl, &fl.parity_sign(a))))
}

/// Leibniz identity for the H4 cup product across three complexes.
#[allow(clippy::too_many_arguments)]
pub fn check_leibniz_h4<F: Field>(
    ml: &DoubleComplex<F>,
    ln: &DoubleComplex<F>,
    mn: &DoubleComplex<F>,
    a: usize,
    f: &SparseVector<F::Elem>,
    b: usize,
    g: &SparseVector<F::Elem>,
) -> Result<bool> {
    let fl = ml.field();
    let lhs = mn.apply_total(a + b, &cup_h4(ml, ln, mn, a, f, b, g)?);
    let df = cup_h4(ml, ln, mn, a + 1, &ml.apply_total(a, f), b, g)?;
    let dg = cup_h4(ml, ln, mn, a, f, b + 1, &ln.apply_total(b, g))?;
    Ok(lhs == df.add(fl, &dg.scale(fl, &fl.parity_sign(a))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommutatorVerdict<E> {
    /// `f⌣g − (−1)^{ab} g⌣f = D(witness)`.
    Coboundary {
        witness: SparseVector<E>,
    },
    NotCoboundary,
}

impl<E> CommutatorVerdict<E> {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, CommutatorVerdict::Coboundary { .. })
    }
}

/// Whether `f⌣g − (−1)^{ab} g⌣f` is a coboundary, for cocycles `f`, `g`.
pub fn graded_commutator_test<F: Field>(
    dc: &DoubleComplex<F>,
    a: usize,
    f: &SparseVector<F::Elem>,
    b: usize,
    g: &SparseVector<F::Elem>,
) -> Result<CommutatorVerdict<F::Elem>> {
    let fl = dc.field();
    for (deg, c, name) in [(a, f, "left"), (b, g, "right")] {
        check_degree(dc, deg, c)?;
        if deg <= dc.n_max && !dc.apply_total(deg, c).is_zero() {
            return Err(Error::Input(format!("{name} factor is not a cocycle")));
        }
    }
    let fg = cup_b(dc, a, f, b, g)?;
    let gf = cup_b(dc, b, g, a, f)?;
    let comm = fg.sub(fl, &gf.scale(fl, &fl.parity_sign(a * b)));
    Ok(match is_coboundary(dc, a + b, &comm)? {
        Some(witness) => CommutatorVerdict::Coboundary { witness },
        None => CommutatorVerdict::NotCoboundary,
    })
}

/// Product of two representative classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupEntry<E> {
    /// `(degree, index)` of the left factor among the representatives.
    pub left: (usize, usize),
    pub right: (usize, usize),
    /// Class of the product in the basis of degree-`a+b` representatives.
    pub coordinates: Vec<E>,
    /// Verdict of the graded-commutator test for this pair.
    pub commutator_coboundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupTable<E> {
    pub dims: Vec<usize>,
    /// Every pair with `a + b ≤ n_max`, ordered by `(a, i, b, j)`.
    pub entries: Vec<CupEntry<E>>,
}

/// Products of the stored representatives `reps[n]` of a reduced complex.
pub fn cup_table<F: Field>(dc: &DoubleComplex<F>, reps: &[Vec<SparseVector<F::Elem>>]) -> Result<CupTable<F::Elem>> {
    use rayon::prelude::*;
    require_reduced(dc)?;
    let fl = dc.field();
    let n_max = dc.n_max.min(reps.len().saturating_sub(1));
    // [representatives | image of D] per degree; the leading coordinates of a solution give the class
    let systems: Vec<SparseMatrix<F::Elem>> = (0..=n_max)
        .map(|n| {
            let mut cols = reps[n].clone();
            if n > 0 {
                cols.extend(dc.total_differential(n - 1).columns().iter().cloned());
            }
            SparseMatrix::from_columns(dc.total_dim(n), cols)
        })
        .collect();
    let mut pairs = Vec::new();
    for a in 0..=n_max {
        for i in 0..reps[a].len() {
            for b in 0..=n_max - a {
                for j in 0..reps[b].len() {
                    pairs.push((a, i, b, j));
                }
            }
        }
    }
    let entries = pairs
        .par_iter()
        .map(|&(a, i, b, j)| {
            let (f, g) = (&reps[a][i], &reps[b][j]);
            let prod = cup_b(dc, a, f, b, g)?;
            let sol = crate::linalg::solve(fl, &systems[a + b], &prod)?
                .ok_or_else(|| Error::Internal(format!("product of classes ({a},{i}) and ({b},{j}) is not a cocycle")))?;
            let coordinates = (0..reps[a + b].len()).map(|k| sol.particular.get(k).cloned().unwrap_or_else(|| fl.zero())).collect();
            let commutator_coboundary = graded_commutator_test(dc, a, f, b, g)?.is_coboundary();
            Ok(CupEntry { left: (a, i), right: (b, j), coordinates, commutator_coboundary })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CupTable { dims: reps[..=n_max].iter().map(Vec::len).collect(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{build_double_complex, reduced_b_complex, reduced_to_parameter, total_cohomology, Limits};
    use crate::field::{PrimeField, Rationals};
    use crate::hopf::{cyclic_group_table, group_algebra, taft_algebra};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn random_vec<F: Field>(f: &F, dim: usize, rng: &mut ChaCha8Rng) -> SparseVector<F::Elem> {
        let mut e = Vec::new();
        for i in 0..dim {
            if rng.gen_bool(0.5) {
                e.push((i, f.from_i64(rng.gen_range(-3..=3))));
            }
        }
        SparseVector::from_unsorted(f, dim, e)
    }

    #[test]
    fn unit_and_scalars() {
        let f = Rationals;
        let h = Arc::new(taft_algebra(&f, 2, &f.from_i64(-1)).unwrap());
        let dc = reduced_b_complex(&h, 2, &Limits::default()).unwrap();
        let one = SparseVector::basis(&f, 1, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..=2 {
            let c = random_vec(&f, dc.total_dim(n), &mut rng);
            assert_eq!(cup_b(&dc, n, &c, 0, &one).unwrap(), c);
            assert_eq!(cup_b(&dc, 0, &one, n, &c).unwrap(), c);
        }
        let a = one.scale(&f, &f.from_i64(3));
        let b = one.scale(&f, &f.from_i64(-2));
        assert_eq!(cup_b(&dc, 0, &a, 0, &b).unwrap(), one.scale(&f, &f.from_i64(-6)));
    }

    #[test]
    fn leibniz_and_associativity_over_h4() {
        let f = Rationals;
        let h = Arc::new(taft_algebra(&f, 2, &f.from_i64(-1)).unwrap());
        let dc = reduced_b_complex(&h, 3, &Limits::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (a, b) in [(0, 1), (1, 0), (1, 1), (0, 2), (2, 1), (1, 2)] {
            let x = random_vec(&f, dc.total_dim(a), &mut rng);
            let y = random_vec(&f, dc.total_dim(b), &mut rng);
            assert!(check_leibniz(&dc, a, &x, b, &y).unwrap(), "({a},{b})");
        }
        let dense = |k: i64| SparseVector::from_dense(&f, &(0..8).map(|i| f.from_i64((i * k) % 5 - 2)).collect::<Vec<_>>());
        let (x, y, z) = (dense(1), dense(3), dense(7));
        // negative control: the opposite sign on f⌣Dg breaks the identity
        let lhs = dc.apply_total(2, &cup_b(&dc, 1, &x, 1, &y).unwrap());
        let df = cup_b(&dc, 2, &dc.apply_total(1, &x), 1, &y).unwrap();
        let dg = cup_b(&dc, 1, &x, 2, &dc.apply_total(1, &y)).unwrap();
        assert_ne!(lhs, df.add(&f, &dg));
        let xy = cup_b(&dc, 1, &x, 1, &y).unwrap();
        let yz = cup_b(&dc, 1, &y, 1, &z).unwrap();
        assert_eq!(cup_b(&dc, 2, &xy, 1, &z).unwrap(), cup_b(&dc, 1, &x, 2, &yz).unwrap());
    }

    #[test]
    fn commutator_is_coboundary_over_kc2_mod_2() {
        let f = PrimeField::new(2).unwrap();
        let h = Arc::new(group_algebra(&f, &cyclic_group_table(2), None).unwrap());
        let dc = reduced_b_complex(&h, 3, &Limits::default()).unwrap();
        let reps = total_cohomology(&dc, true).representatives;
        for a in 0..=3 {
            for b in 0..=3 - a {
                for x in &reps[a] {
                    for y in &reps[b] {
                        assert!(graded_commutator_test(&dc, a, x, b, y).unwrap().is_coboundary());
                    }
                }
            }
        }
    }

    #[test]
    fn h4_cup_matches_reduced_cup() {
        let f = Rationals;
        let h = Arc::new(group_algebra(&f, &cyclic_group_table(2), None).unwrap());
        let r = HopfBimodule::regular(h.clone());
        let full = build_double_complex(Theory::H4, &r, &r, 2, &Limits::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = h.dim();
        for (s, x, r_, y) in [(0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 1, 0), (0, 0, 1, 1), (1, 0, 1, 1)] {
            let fc: SparseVector<_> = random_vec(&f, pow(d, s + x), &mut rng);
            let gc: SparseVector<_> = random_vec(&f, pow(d, r_ + y), &mut rng);
            let lift = |p: usize, q: usize, c: &SparseVector<_>| {
                let cell = full.cell(p, q).unwrap();
                let raw = reduced_to_parameter(&h, p, q).unwrap().apply(&f, c);
                vec_to_matrix(&f, &raw, cell.target_dim, cell.source_dim)
            };
            let via_h4 = cup_h4_matrix(&r, &r, &r, &lift(s, x, &fc), &lift(r_, y, &gc)).unwrap();
            let fm = vec_to_matrix(&f, &fc, pow(d, s), pow(d, x));
            let gm = vec_to_matrix(&f, &gc, pow(d, r_), pow(d, y));
            let cb = matrix_to_vec(&f, &cup_b_matrix(&h, &fm, &gm).unwrap());
            assert_eq!(via_h4, lift(s + r_, x + y, &cb), "({s},{x})⌣({r_},{y})");
        }
    }

    #[test]
    fn h4_leibniz_over_taft() {
        let f = Rationals;
        let h = Arc::new(taft_algebra(&f, 2, &f.from_i64(-1)).unwrap());
        let r = HopfBimodule::regular(h.clone());
        let dc = build_double_complex(Theory::H4, &r, &r, 2, &Limits::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (a, b) in [(0, 1), (1, 1), (0, 2), (2, 0)] {
            let x = random_vec(&f, dc.total_dim(a), &mut rng);
            let y = random_vec(&f, dc.total_dim(b), &mut rng);
            assert!(check_leibniz_h4(&dc, &dc, &dc, a, &x, b, &y).unwrap(), "({a},{b})");
        }
    }

    #[test]
    fn cup_table_over_kc2_mod_2() {
        let f = PrimeField::new(2).unwrap();
        let h = Arc::new(group_algebra(&f, &cyclic_group_table(2), None).unwrap());
        let dc = reduced_b_complex(&h, 3, &Limits::default()).unwrap();
        let reps = total_cohomology(&dc, true).representatives;
        let t = cup_table(&dc, &reps).unwrap();
        assert_eq!(t.dims, vec![1, 1, 1, 1]);
        assert_eq!(t.entries.len(), 10);
        assert!(t.entries.iter().all(|e| e.commutator_coboundary));
        // one class per degree and every product nonzero, as in a polynomial ring on the degree-1 class
        assert!(t.entries.iter().all(|e| e.coordinates.len() == 1 && f.is_one(&e.coordinates[0])));
    }
}
