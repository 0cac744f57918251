//! Exact sequences of Hopf bimodules `0 → L → E_{n−1} → … → E_0 → R → 0`
//! and the extension calculus: splice, sign flip, Baer sum, tensor product
//! over `H`, the comparison maps `λ` and `ρ`, and 1-extensions built from
//! H4 cocycles.
//!
//! Positions run from `−1` (the right end `R`) to `n` (the left end `L`);
//! `maps[k]` leaves position `k`, so `maps[0] = p` and `maps[n] = i`.

use crate::bimodule::{check_morphism, direct_sum, hom_space, same_object, HopfBimodule, Structure};
use crate::cohomology::{DoubleComplex, Theory};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::AxiomReport;
use crate::linalg::{self, SparseMatrix, SparseVector};
use crate::tensor::{kron_local, matrix_to_vec, vec_to_matrix};

type Mat<F> = SparseMatrix<<F as Field>::Elem>;

#[derive(Clone, Debug)]
pub struct Extension<F: Field> {
    pub left: HopfBimodule<F>,
    pub right: HopfBimodule<F>,
    /// `E_0 … E_{n−1}`.
    pub terms: Vec<HopfBimodule<F>>,
    /// `maps[0] = p: E_0 → R`, `maps[k]: E_k → E_{k−1}`, `maps[n] = i: L → E_{n−1}`.
    pub maps: Vec<Mat<F>>,
}

impl<F: Field> Extension<F> {
    pub fn new(left: HopfBimodule<F>, right: HopfBimodule<F>, terms: Vec<HopfBimodule<F>>, maps: Vec<Mat<F>>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Input("extensions have length at least 1".into()));
        }
        if maps.len() != terms.len() + 1 {
            return Err(Error::Input(format!("an extension of length {} needs {} maps, got {}", terms.len(), terms.len() + 1, maps.len())));
        }
        let e = Extension { left, right, terms, maps };
        for k in 0..=e.len() {
            let (src, tgt) = (e.object(k as isize).dim(), e.object(k as isize - 1).dim());
            if e.maps[k].shape() != (tgt, src) {
                return Err(Error::Input(format!("map leaving position {k} has shape {:?}, expected ({tgt}, {src})", e.maps[k].shape())));
            }
        }
        Ok(e)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn field(&self) -> &F {
        self.right.field()
    }

    /// The object at position `k ∈ −1..=n`.
    pub fn object(&self, k: isize) -> &HopfBimodule<F> {
        let n = self.len() as isize;
        assert!((-1..=n).contains(&k), "position out of range");
        if k == -1 {
            &self.right
        } else if k == n {
            &self.left
        } else {
            &self.terms[k as usize]
        }
    }

    pub fn projection(&self) -> &Mat<F> {
        &self.maps[0]
    }

    pub fn inclusion(&self) -> &Mat<F> {
        &self.maps[self.len()]
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionReport {
    /// Homology dimension at each position `−1..=n`.
    pub homology: Vec<(isize, usize)>,
    pub checks: AxiomReport,
}

impl ExtensionReport {
    pub fn is_exact(&self) -> bool {
        self.homology.iter().all(|(_, h)| *h == 0)
    }

    pub fn all_pass(&self) -> bool {
        self.is_exact() && self.checks.all_pass()
    }
}

pub fn check_extension<F: Field>(e: &Extension<F>) -> ExtensionReport {
    let f = e.field();
    let n = e.len();
    let ranks: Vec<usize> = e.maps.iter().map(|m| linalg::rank(f, m)).collect();
    let mut checks = AxiomReport::new();
    for k in 0..n {
        checks.push(format!("composite through position {k} vanishes"), e.maps[k].mul(f, &e.maps[k + 1]).is_zero());
    }
    for k in 0..=n {
        let rep = check_morphism(e.object(k as isize), e.object(k as isize - 1), &e.maps[k]);
        checks.extend_prefixed(&format!("map leaving position {k}"), rep);
    }
    let homology = (-1..=n as isize)
        .map(|k| {
            let out = if k >= 0 { ranks[k as usize] } else { 0 };
            let inc = if k < n as isize { ranks[(k + 1) as usize] } else { 0 };
            (k, e.object(k).dim().saturating_sub(out + inc))
        })
        .collect();
    ExtensionReport { homology, checks }
}

/// `0 → L → L ⊕ R → R → 0`.
pub fn split_extension<F: Field>(left: &HopfBimodule<F>, right: &HopfBimodule<F>) -> Result<Extension<F>> {
    let s = direct_sum(left, right)?;
    let [_, p] = s.projections;
    let [i, _] = s.injections;
    Extension::new(left.clone(), right.clone(), vec![s.module], vec![p, i])
}

/// `E ♯ F`: `0 → L_F → F_{n−1} → … → F_0 → E_{m−1} → … → E_0 → R_E → 0`
/// with connecting map `i_E ∘ p_F`.
pub fn splice<F: Field>(e: &Extension<F>, f: &Extension<F>) -> Result<Extension<F>> {
    if !same_object(&e.left, &f.right) {
        return Err(Error::Input("splice needs the left end of E to equal the right end of F".into()));
    }
    let fl = e.field();
    let mut terms = e.terms.clone();
    terms.extend(f.terms.iter().cloned());
    let mut maps: Vec<Mat<F>> = e.maps[..e.len()].to_vec();
    maps.push(e.inclusion().mul(fl, f.projection()));
    maps.extend(f.maps[1..].iter().cloned());
    Extension::new(f.left.clone(), e.right.clone(), terms, maps)
}

/// `(−1)E`: the same sequence with `p` negated.
pub fn negate<F: Field>(e: &Extension<F>) -> Extension<F> {
    let mut out = e.clone();
    out.maps[0] = out.maps[0].neg(e.field());
    out
}

/// `(−1)^k E`.
pub fn negate_pow<F: Field>(e: &Extension<F>, k: usize) -> Extension<F> {
    if k % 2 == 1 {
        negate(e)
    } else {
        e.clone()
    }
}

fn block_diag<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    a.direct_sum(b)
}

/// Baer sum: termwise direct sum, pulled back along the diagonal of `R` and
/// pushed out along the codiagonal of `L`.
pub fn baer_sum<F: Field>(e: &Extension<F>, f: &Extension<F>) -> Result<Extension<F>> {
    if e.len() != f.len() {
        return Err(Error::Input("Baer sum needs extensions of equal length".into()));
    }
    if !same_object(&e.left, &f.left) || !same_object(&e.right, &f.right) {
        return Err(Error::Input("Baer sum needs extensions with the same end objects".into()));
    }
    let fl = e.field();
    let n = e.len();
    let sums = (0..n).map(|k| direct_sum(&e.terms[k], &f.terms[k])).collect::<Result<Vec<_>>>()?;
    let mut terms: Vec<HopfBimodule<F>> = sums.iter().map(|s| s.module.clone()).collect();
    let mut maps: Vec<Mat<F>> = vec![SparseMatrix::zeros(0, 0); n + 1];
    for k in 1..n {
        maps[k] = block_diag::<F>(&e.maps[k], &f.maps[k]);
    }
    // pullback at position 0
    let theta = e.maps[0].mul(fl, &sums[0].projections[0]).sub(fl, &f.maps[0].mul(fl, &sums[0].projections[1]));
    let pb = linalg::kernel(fl, &theta);
    let (p_obj, incl) = terms[0].sub_object(&pb)?;
    let coords = |m: &Mat<F>| -> Result<Mat<F>> {
        let cols = m
            .columns()
            .iter()
            .map(|c| pb.coordinates(fl, c).ok_or_else(|| Error::Internal("map does not land in the pullback".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(pb.dim(), cols))
    };
    maps[0] = e.maps[0].mul(fl, &sums[0].projections[0]).mul(fl, &incl);
    if n >= 2 {
        maps[1] = coords(&maps[1])?;
    }
    terms[0] = p_obj;
    // pushout at position n − 1
    let top = n - 1;
    let anti = sums[top].injections[0].mul(fl, &e.maps[n]).sub(fl, &sums[top].injections[1].mul(fl, &f.maps[n]));
    let first = sums[top].injections[0].mul(fl, &e.maps[n]);
    let (anti, first) = if top == 0 { (coords(&anti)?, coords(&first)?) } else { (anti, first) };
    let rel = linalg::image(fl, &anti);
    let q = linalg::quotient(fl, terms[top].dim(), &rel);
    let q_obj = terms[top].quotient_object(&q.projection, &q.section)?;
    maps[top] = maps[top].mul(fl, &q.section);
    maps[n] = q.projection.mul(fl, &first);
    terms[top] = q_obj;
    Extension::new(e.left.clone(), e.right.clone(), terms, maps)
}

/// A Hopf-bimodule section of `p` for a length-1 extension, if one exists.
pub fn find_section<F: Field>(e: &Extension<F>) -> Result<Option<Mat<F>>> {
    if e.len() != 1 {
        return Err(Error::Input("splitting is decided for length-1 extensions only".into()));
    }
    let fl = e.field();
    let (r, x) = (&e.right, &e.terms[0]);
    let homs = hom_space(r, x, &Structure::ALL)?;
    let p = e.projection();
    let images: Vec<SparseVector<F::Elem>> =
        homs.basis().iter().map(|b| matrix_to_vec(fl, &p.mul(fl, &vec_to_matrix(fl, b, x.dim(), r.dim())))).collect();
    let system = SparseMatrix::from_columns(r.dim() * r.dim(), images);
    let target = matrix_to_vec(fl, &SparseMatrix::identity(fl, r.dim()));
    Ok(linalg::solve(fl, &system, &target)?.map(|sol| {
        let v = homs.basis_matrix().apply(fl, &sol.particular);
        vec_to_matrix(fl, &v, x.dim(), r.dim())
    }))
}

struct Tensored<F: Field> {
    module: HopfBimodule<F>,
    projection: Mat<F>,
    section: Mat<F>,
}

fn tensor<F: Field>(a: &HopfBimodule<F>, b: &HopfBimodule<F>) -> Result<Tensored<F>> {
    let (module, projection, section) = a.tensor_over_h(b)?;
    Ok(Tensored { module, projection, section })
}

/// `φ ⊗_H ψ` between tensor products over `H`.
fn tensor_map<F: Field>(src: &Tensored<F>, tgt: &Tensored<F>, phi: &Mat<F>, psi: &Mat<F>) -> Mat<F> {
    let f = src.module.field();
    tgt.projection.mul(f, &phi.kron(f, psi)).mul(f, &src.section)
}

/// A chain map between extensions; `components[k + 1]` acts at position `k`.
#[derive(Clone, Debug)]
pub struct ExtensionMorphism<F: Field> {
    pub components: Vec<Mat<F>>,
}

impl<F: Field> ExtensionMorphism<F> {
    pub fn at(&self, k: isize) -> &Mat<F> {
        &self.components[(k + 1) as usize]
    }
}

/// Commuting squares and per-component morphism checks.
pub fn check_chain_map<F: Field>(src: &Extension<F>, tgt: &Extension<F>, phi: &ExtensionMorphism<F>) -> AxiomReport {
    let f = src.field();
    let mut rep = AxiomReport::new();
    let n = src.len();
    if tgt.len() != n || phi.components.len() != n + 2 {
        rep.push("lengths agree", false);
        return rep;
    }
    for k in 0..=n as isize {
        let lhs = tgt.maps[k as usize].mul(f, phi.at(k));
        let rhs = phi.at(k - 1).mul(f, &src.maps[k as usize]);
        rep.push(format!("square at position {k}"), lhs == rhs);
    }
    for k in -1..=n as isize {
        rep.extend_prefixed(&format!("component {k}"), check_morphism(src.object(k), tgt.object(k), phi.at(k)));
    }
    rep
}

/// Tensor product over `H` together with the bookkeeping needed for `λ` and `ρ`.
pub struct TensorExtension<F: Field> {
    pub extension: Extension<F>,
    /// `(s, t, offset)` of every summand `E_s ⊗_H F_t` in position `r = s + t`.
    pub summands: Vec<Vec<(usize, usize, usize)>>,
    pieces: Vec<Vec<Tensored<F>>>,
    end: Tensored<F>,
}

impl<F: Field> TensorExtension<F> {
    fn piece(&self, s: usize, t: usize) -> &Tensored<F> {
        &self.pieces[s][t]
    }

    /// Projection of position `r` onto the summand `(s, t)`.
    fn summand_projection(&self, s: usize, t: usize) -> Mat<F> {
        let r = s + t;
        let (_, _, off) = *self.summands[r].iter().find(|(a, b, _)| (*a, *b) == (s, t)).expect("summand present");
        let total = self.extension.object(r as isize).dim();
        let dim = self.piece(s, t).module.dim();
        let f = self.extension.field();
        SparseMatrix::from_triplets(f, dim, total, (0..dim).map(|i| (i, off + i, f.one()))).expect("in range")
    }
}

fn direct_sum_many<F: Field>(parts: &[HopfBimodule<F>]) -> Result<HopfBimodule<F>> {
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = direct_sum(&acc, p)?.module;
    }
    Ok(acc)
}

/// `(E ⊗_H F)_r = ⊕_{s+t=r} E_s ⊗_H F_t` with differential `d_E ⊗ 1 + (−1)^s 1 ⊗ d_F`.
pub fn tensor_extensions<F: Field>(e: &Extension<F>, f: &Extension<F>) -> Result<TensorExtension<F>> {
    let fl = e.field();
    let (m, n) = (e.len(), f.len());
    let mut pieces = Vec::with_capacity(m + 1);
    for s in 0..=m {
        let row = (0..=n).map(|t| tensor(e.object(s as isize), f.object(t as isize))).collect::<Result<Vec<_>>>()?;
        pieces.push(row);
    }
    let end = tensor(&e.right, &f.right)?;
    let mut summands = Vec::with_capacity(m + n + 1);
    let mut objects = Vec::with_capacity(m + n + 1);
    for r in 0..=m + n {
        let mut off = 0;
        let mut list = Vec::new();
        let mut parts = Vec::new();
        for s in r.saturating_sub(n)..=r.min(m) {
            let t = r - s;
            list.push((s, t, off));
            off += pieces[s][t].module.dim();
            parts.push(pieces[s][t].module.clone());
        }
        summands.push(list);
        objects.push(direct_sum_many(&parts)?);
    }
    let mut maps = Vec::with_capacity(m + n + 1);
    maps.push(tensor_map(&pieces[0][0], &end, e.projection(), f.projection()));
    for r in 1..=m + n {
        let rows = objects[r - 1].dim();
        let cols = objects[r].dim();
        let mut trip = Vec::new();
        let find = |s: usize, t: usize| summands[r - 1].iter().find(|(a, b, _)| (*a, *b) == (s, t)).map(|x| x.2);
        for &(s, t, off) in &summands[r] {
            let src = &pieces[s][t];
            if s >= 1 {
                let id = SparseMatrix::identity(fl, f.object(t as isize).dim());
                let blk = tensor_map(src, &pieces[s - 1][t], &e.maps[s], &id);
                let row_off = find(s - 1, t).expect("summand present");
                trip.extend(blk.triplets().map(|(i, j, x)| (row_off + i, off + j, x.clone())));
            }
            if t >= 1 {
                let id = SparseMatrix::identity(fl, e.object(s as isize).dim());
                let blk = tensor_map(src, &pieces[s][t - 1], &id, &f.maps[t]).scale(fl, &fl.parity_sign(s));
                let row_off = find(s, t - 1).expect("summand present");
                trip.extend(blk.triplets().map(|(i, j, x)| (row_off + i, off + j, x.clone())));
            }
        }
        maps.push(SparseMatrix::from_triplets(fl, rows, cols, trip)?);
    }
    let left = objects.pop().expect("top position");
    let extension = Extension::new(left, end.module.clone(), objects, maps)?;
    Ok(TensorExtension { extension, summands, pieces, end })
}

fn require_regular_ends<F: Field>(e: &Extension<F>) -> Result<()> {
    let r = HopfBimodule::regular(e.right.algebra().clone());
    if !same_object(&e.left, &r) || !same_object(&e.right, &r) {
        return Err(Error::Input("λ and ρ are defined for extensions of H by H".into()));
    }
    Ok(())
}

/// `λ_{E,F}: E ⊗_H F → F ♯ E`. Returns the target and the chain map.
pub fn lambda_map<F: Field>(e: &Extension<F>, f: &Extension<F>) -> Result<(TensorExtension<F>, Extension<F>, ExtensionMorphism<F>)> {
    require_regular_ends(e)?;
    require_regular_ends(f)?;
    let fl = e.field();
    let (m, n) = (e.len(), f.len());
    let t = tensor_extensions(e, f)?;
    let target = splice(f, e)?;
    let mu = e.right.left_action();
    let mut components = vec![mu.mul(fl, &t.end.section)];
    for k in 0..=m + n {
        let c = if k < n {
            // E_0 ⊗_H F_k → H ⊗_H F_k ≅ F_k
            let fk = f.object(k as isize);
            let collapse = fk.left_action().mul(fl, &kron_local(1, e.projection(), fk.dim()));
            collapse.mul(fl, &t.piece(0, k).section).mul(fl, &t.summand_projection(0, k))
        } else {
            // E_{k−n} ⊗_H H ≅ E_{k−n}
            let ek = e.object((k - n) as isize);
            ek.right_action().mul(fl, &t.piece(k - n, n).section).mul(fl, &t.summand_projection(k - n, n))
        };
        components.push(c);
    }
    Ok((t, target, ExtensionMorphism { components }))
}

/// `ρ_{E,F}: E ⊗_H F → (−1)^{mn} E ♯ F`. Returns the target and the chain map.
pub fn rho_map<F: Field>(e: &Extension<F>, f: &Extension<F>) -> Result<(TensorExtension<F>, Extension<F>, ExtensionMorphism<F>)> {
    require_regular_ends(e)?;
    require_regular_ends(f)?;
    let fl = e.field();
    let (m, n) = (e.len(), f.len());
    let t = tensor_extensions(e, f)?;
    let target = negate_pow(&splice(e, f)?, m * n);
    let mu = e.right.left_action();
    let mut components = vec![mu.mul(fl, &t.end.section)];
    for k in 0..=m + n {
        let c = if k < m {
            // E_k ⊗_H F_0 → E_k ⊗_H H ≅ E_k
            let ek = e.object(k as isize);
            let collapse = ek.right_action().mul(fl, &kron_local(ek.dim(), f.projection(), 1));
            let c = collapse.mul(fl, &t.piece(k, 0).section).mul(fl, &t.summand_projection(k, 0));
            c.scale(fl, &fl.parity_sign(m * n))
        } else {
            // H ⊗_H F_{k−m} ≅ F_{k−m}
            let fk = f.object((k - m) as isize);
            let c = fk.left_action().mul(fl, &t.piece(m, k - m).section).mul(fl, &t.summand_projection(m, k - m));
            c.scale(fl, &fl.parity_sign(m + n - k))
        };
        components.push(c);
    }
    Ok((t, target, ExtensionMorphism { components }))
}

/// The 1-extension `0 → N → X → M → 0` of an H4 1-cocycle: `X = N ⊕ M` with
/// the right action twisted by the `(0,1)` component and the left coaction
/// twisted by the `(1,0)` component.
pub fn extension_from_1cocycle<F: Field>(dc: &DoubleComplex<F>, c: &SparseVector<F::Elem>) -> Result<Extension<F>> {
    if dc.reduced || dc.theory == Theory::Gs {
        return Err(Error::Input("extensions are built from cocycles of an H4 style complex".into()));
    }
    if dc.n_max < 1 {
        return Err(Error::Input("the complex must reach degree 1".into()));
    }
    if c.dim() != dc.total_dim(1) {
        return Err(Error::Input(format!("cochain has length {} but T^1 has dimension {}", c.dim(), dc.total_dim(1))));
    }
    if !dc.apply_total(1, c).is_zero() {
        return Err(Error::Input("cochain is not a cocycle".into()));
    }
    let fl = dc.field();
    let (m, n) = dc.coefficients().expect("H4 complexes carry coefficients");
    let d = m.algebra().dim();
    let c01 = dc.cell(0, 1).unwrap();
    let c10 = dc.cell(1, 0).unwrap();
    let a = vec_to_matrix(fl, &c01.to_raw(fl, &dc.component(1, 0, c)), c01.target_dim, c01.source_dim);
    let b = vec_to_matrix(fl, &c10.to_raw(fl, &dc.component(1, 1, c)), c10.target_dim, c10.source_dim);
    let s = direct_sum(n, m)?;
    let i_n = &s.injections[0];
    let p_m = &s.projections[1];
    let id_d = SparseMatrix::identity(fl, d);
    let right_action = s.module.right_action().add(fl, &i_n.mul(fl, &a).mul(fl, &p_m.kron(fl, &id_d)));
    let left_coaction = s.module.left_coaction().add(fl, &id_d.kron(fl, i_n).mul(fl, &b).mul(fl, p_m));
    let x = HopfBimodule::new(
        m.algebra().clone(),
        s.module.dim(),
        s.module.left_action().clone(),
        right_action,
        left_coaction,
        s.module.right_coaction().clone(),
    )?;
    let rep = x.check();
    if !rep.all_pass() {
        return Err(Error::Internal(format!("twisted module fails: {}", rep.failures().join(", "))));
    }
    Extension::new(n.clone(), m.clone(), vec![x], vec![p_m.clone(), i_n.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{build_double_complex, is_coboundary, total_cohomology, Limits};
    use crate::field::{PrimeField, Rationals};
    use crate::hopf::{cyclic_group_table, group_algebra, FiniteHopfAlgebra};
    use std::sync::Arc;

    fn kc2_mod2() -> Arc<FiniteHopfAlgebra<PrimeField>> {
        let f = PrimeField::new(2).unwrap();
        Arc::new(group_algebra(&f, &cyclic_group_table(2), None).unwrap())
    }

    fn cocycle_extension<F: Field>(h: Arc<FiniteHopfAlgebra<F>>) -> (DoubleComplex<F>, Vec<SparseVector<F::Elem>>) {
        let r = HopfBimodule::regular(h);
        let dc = build_double_complex(Theory::H4, &r, &r, 1, &Limits::default()).unwrap();
        let reps = total_cohomology(&dc, true).representatives[1].clone();
        (dc, reps)
    }

    #[test]
    fn split_and_truncated() {
        let h = kc2_mod2();
        let r = HopfBimodule::regular(h);
        let e = split_extension(&r, &r).unwrap();
        assert!(check_extension(&e).all_pass());
        assert!(find_section(&e).unwrap().is_some());
        let mut broken = e.clone();
        broken.maps[1] = SparseMatrix::zeros(4, 2);
        let rep = check_extension(&broken);
        assert!(!rep.is_exact());
        assert_ne!(rep.homology.last().unwrap().1, 0);
    }

    #[test]
    fn cocycle_extensions_are_nonsplit_and_coboundaries_split() {
        let h = kc2_mod2();
        let (dc, reps) = cocycle_extension(h.clone());
        assert_eq!(reps.len(), 1);
        let e = extension_from_1cocycle(&dc, &reps[0]).unwrap();
        assert!(check_extension(&e).all_pass());
        assert!(is_coboundary(&dc, 1, &reps[0]).unwrap().is_none());
        assert!(find_section(&e).unwrap().is_none());
        let f = *dc.field();
        let x = SparseVector::basis(&f, dc.total_dim(0), 0);
        let db = dc.apply_total(0, &x);
        let split = extension_from_1cocycle(&dc, &db).unwrap();
        assert!(check_extension(&split).all_pass());
        assert!(find_section(&split).unwrap().is_some());
        let zero = extension_from_1cocycle(&dc, &SparseVector::zero(dc.total_dim(1))).unwrap();
        assert!(find_section(&zero).unwrap().is_some());
    }

    #[test]
    fn splice_negate_and_baer() {
        let h = kc2_mod2();
        let (dc, reps) = cocycle_extension(h.clone());
        let e = extension_from_1cocycle(&dc, &reps[0]).unwrap();
        let fl = *e.field();
        let s = splice(&e, &e).unwrap();
        assert!(check_extension(&s).all_pass());
        let conn = &s.maps[1];
        assert_eq!(linalg::image(&fl, conn), linalg::image(&fl, e.inclusion()));
        assert_eq!(linalg::kernel(&fl, conn), linalg::kernel(&fl, e.projection()));
        let ne = negate(&e);
        assert!(check_extension(&ne).all_pass());
        assert_eq!(negate(&ne).maps, e.maps);
        let b = baer_sum(&e, &ne).unwrap();
        assert!(check_extension(&b).all_pass());
        assert_eq!(b.terms[0].dim(), 2 * e.terms[0].dim() - 2 * h.dim());
        assert!(find_section(&b).unwrap().is_some());
        let r = HopfBimodule::regular(h.clone());
        let sp = split_extension(&r, &r).unwrap();
        assert!(find_section(&baer_sum(&sp, &sp).unwrap()).unwrap().is_some());
        let b2 = baer_sum(&s, &s).unwrap();
        assert!(check_extension(&b2).all_pass());
    }

    #[test]
    fn baer_sum_over_rationals_cancels_negation() {
        let f = Rationals;
        let h = Arc::new(crate::hopf::taft_algebra(&f, 2, &f.from_i64(-1)).unwrap());
        let r = HopfBimodule::regular(h.clone());
        let m = r.under_tensor(&r).unwrap();
        let dc = build_double_complex(Theory::H4, &m, &r, 1, &Limits::default()).unwrap();
        let reps = total_cohomology(&dc, true).representatives[1].clone();
        for c in &reps {
            let e = extension_from_1cocycle(&dc, c).unwrap();
            assert!(check_extension(&e).all_pass());
            assert!(find_section(&e).unwrap().is_none());
            assert!(find_section(&baer_sum(&e, &negate(&e)).unwrap()).unwrap().is_some());
        }
    }

    #[test]
    fn tensor_and_comparison_maps() {
        let h = kc2_mod2();
        let (dc, reps) = cocycle_extension(h.clone());
        let e = extension_from_1cocycle(&dc, &reps[0]).unwrap();
        let r = HopfBimodule::regular(h.clone());
        let sp = split_extension(&r, &r).unwrap();
        let ee = splice(&e, &e).unwrap();
        for (a, b) in [(&sp, &sp), (&e, &sp), (&e, &e), (&sp, &e), (&e, &ee)] {
            let t = tensor_extensions(a, b).unwrap();
            assert!(check_extension(&t.extension).all_pass());
            for term in &t.extension.terms {
                assert_eq!(term.dim() % h.dim(), 0);
            }
            let (t, tgt, lam) = lambda_map(a, b).unwrap();
            assert!(check_chain_map(&t.extension, &tgt, &lam).all_pass());
            let (t, tgt, rho) = rho_map(a, b).unwrap();
            assert!(check_chain_map(&t.extension, &tgt, &rho).all_pass());
        }
    }

    #[test]
    fn rho_needs_odd_first_length() {
        let f = Rationals;
        let h = Arc::new(crate::hopf::taft_algebra(&f, 2, &f.from_i64(-1)).unwrap());
        let r = HopfBimodule::regular(h.clone());
        let dc = build_double_complex(Theory::H4, &r, &r, 1, &Limits::default()).unwrap();
        let e = split_extension(&r, &r).unwrap();
        let c = SparseVector::basis(&f, dc.total_dim(0), 0);
        let ext = extension_from_1cocycle(&dc, &dc.apply_total(0, &c)).unwrap();
        let ee = splice(&ext, &e).unwrap();
        let (t, tgt, rho) = rho_map(&ee, &ext).unwrap();
        assert!(!check_chain_map(&t.extension, &tgt, &rho).all_pass());
        let (t, tgt, lam) = lambda_map(&ee, &ext).unwrap();
        assert!(check_chain_map(&t.extension, &tgt, &lam).all_pass());
    }

    #[test]
    fn doubled_class_splits_in_characteristic_two() {
        let (dc, reps) = cocycle_extension(kc2_mod2());
        let e = extension_from_1cocycle(&dc, &reps[0]).unwrap();
        assert!(find_section(&baer_sum(&e, &e).unwrap()).unwrap().is_some());
    }
}
