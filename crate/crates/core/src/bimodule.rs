//! Hopf bimodules and plain bimodules over a finite Hopf algebra.
//!
//! Structure maps act on column vectors with tensor slots in the evident
//! order: `μ_L: H⊗M → M`, `μ_R: M⊗H → M`, `δ_L: M → H⊗M`, `δ_R: M → M⊗H`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::{AxiomReport, FiniteHopfAlgebra};
use crate::linalg::{self, SparseMatrix, SparseVector, Subspace};
use crate::tensor::{compose, kron_local, lift_operator, permutation};

type Mat<F> = SparseMatrix<<F as Field>::Elem>;

/// One of the four structure maps a morphism may be asked to intertwine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Structure {
    LeftAction,
    RightAction,
    LeftCoaction,
    RightCoaction,
}

impl Structure {
    pub const ALL: [Structure; 4] = [Structure::LeftAction, Structure::RightAction, Structure::LeftCoaction, Structure::RightCoaction];
    pub const ACTIONS: [Structure; 2] = [Structure::LeftAction, Structure::RightAction];
    pub const COACTIONS: [Structure; 2] = [Structure::LeftCoaction, Structure::RightCoaction];

    pub fn name(self) -> &'static str {
        match self {
            Structure::LeftAction => "left action",
            Structure::RightAction => "right action",
            Structure::LeftCoaction => "left coaction",
            Structure::RightCoaction => "right coaction",
        }
    }
}

#[derive(Clone, Debug)]
pub struct HopfBimodule<F: Field> {
    algebra: Arc<FiniteHopfAlgebra<F>>,
    dim: usize,
    left_action: Mat<F>,
    right_action: Mat<F>,
    left_coaction: Mat<F>,
    right_coaction: Mat<F>,
}

/// An H-bimodule without coactions.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    algebra: Arc<FiniteHopfAlgebra<F>>,
    dim: usize,
    left_action: Mat<F>,
    right_action: Mat<F>,
}

#[derive(Clone, Debug)]
pub struct HopfBimoduleMap<F: Field> {
    pub source: HopfBimodule<F>,
    pub target: HopfBimodule<F>,
    pub matrix: Mat<F>,
}

fn check_shape<E: Clone>(what: &str, m: &SparseMatrix<E>, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::Input(format!("{what} has shape {}x{}, expected {rows}x{cols}", m.rows(), m.cols())));
    }
    Ok(())
}

pub fn same_base<F: Field>(a: &Arc<FiniteHopfAlgebra<F>>, b: &Arc<FiniteHopfAlgebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || a.same_structure(b)
}

fn require_same_base<F: Field>(a: &Arc<FiniteHopfAlgebra<F>>, b: &Arc<FiniteHopfAlgebra<F>>) -> Result<()> {
    if same_base(a, b) {
        Ok(())
    } else {
        Err(Error::Input("objects live over different Hopf algebras".into()))
    }
}

// ---------------------------------------------------------------------------
// Diagonal and codiagonal structure maps on tensor products

/// `h·(x_1⊗…⊗x_k) = h^(1)x_1 ⊗ … ⊗ h^(k)x_k` for left actions `acts[i]` on slots of dims `dims[i]`.
fn diagonal_left_action<F: Field>(h: &FiniteHopfAlgebra<F>, acts: &[&Mat<F>], dims: &[usize]) -> Mat<F> {
    let f = h.field();
    let d = h.dim();
    let k = dims.len();
    let total: usize = dims.iter().product();
    let spread = h.iterated_comultiplication(k as isize - 1).kron(f, &SparseMatrix::identity(f, total));
    let mut all_dims = vec![d; k];
    all_dims.extend_from_slice(dims);
    let perm: Vec<usize> = (0..k).flat_map(|i| [i, k + i]).collect();
    let shuffle = permutation(f, &all_dims, &perm);
    let act = acts.iter().fold(SparseMatrix::identity(f, 1), |acc, a| acc.kron(f, a));
    compose(f, &[&act, &shuffle, &spread])
}

/// `(x_1⊗…⊗x_k)·h = x_1 h^(1) ⊗ … ⊗ x_k h^(k)`.
fn diagonal_right_action<F: Field>(h: &FiniteHopfAlgebra<F>, acts: &[&Mat<F>], dims: &[usize]) -> Mat<F> {
    let f = h.field();
    let d = h.dim();
    let k = dims.len();
    let total: usize = dims.iter().product();
    let spread = SparseMatrix::identity(f, total).kron(f, &h.iterated_comultiplication(k as isize - 1));
    let mut all_dims = dims.to_vec();
    all_dims.extend(std::iter::repeat_n(d, k));
    let perm: Vec<usize> = (0..k).flat_map(|i| [i, k + i]).collect();
    let shuffle = permutation(f, &all_dims, &perm);
    let act = acts.iter().fold(SparseMatrix::identity(f, 1), |acc, a| acc.kron(f, a));
    compose(f, &[&act, &shuffle, &spread])
}

/// `δ_L(x_1⊗…⊗x_k) = x_1(−1)…x_k(−1) ⊗ x_1(0)⊗…⊗x_k(0)`.
fn codiagonal_left_coaction<F: Field>(h: &FiniteHopfAlgebra<F>, coacts: &[&Mat<F>], dims: &[usize]) -> Mat<F> {
    let f = h.field();
    let d = h.dim();
    let k = dims.len();
    let total: usize = dims.iter().product();
    let co = coacts.iter().fold(SparseMatrix::identity(f, 1), |acc, c| acc.kron(f, c));
    let interleaved: Vec<usize> = dims.iter().flat_map(|&m| [d, m]).collect();
    let perm: Vec<usize> = (0..k).map(|i| 2 * i).chain((0..k).map(|i| 2 * i + 1)).collect();
    let gather = permutation(f, &interleaved, &perm);
    let merge = h.iterated_multiplication(k).kron(f, &SparseMatrix::identity(f, total));
    compose(f, &[&merge, &gather, &co])
}

/// `δ_R(x_1⊗…⊗x_k) = x_1(0)⊗…⊗x_k(0) ⊗ x_1(1)…x_k(1)`.
fn codiagonal_right_coaction<F: Field>(h: &FiniteHopfAlgebra<F>, coacts: &[&Mat<F>], dims: &[usize]) -> Mat<F> {
    let f = h.field();
    let d = h.dim();
    let k = dims.len();
    let total: usize = dims.iter().product();
    let co = coacts.iter().fold(SparseMatrix::identity(f, 1), |acc, c| acc.kron(f, c));
    let interleaved: Vec<usize> = dims.iter().flat_map(|&m| [m, d]).collect();
    let perm: Vec<usize> = (0..k).map(|i| 2 * i).chain((0..k).map(|i| 2 * i + 1)).collect();
    let gather = permutation(f, &interleaved, &perm);
    let merge = SparseMatrix::identity(f, total).kron(f, &h.iterated_multiplication(k));
    compose(f, &[&merge, &gather, &co])
}

// ---------------------------------------------------------------------------
// Axiom checks shared by bimodules and Hopf bimodules

fn bimodule_axioms<F: Field>(h: &FiniteHopfAlgebra<F>, m: usize, l: &Mat<F>, r: &Mat<F>, rep: &mut AxiomReport) {
    let f = h.field();
    let d = h.dim();
    let id_m = SparseMatrix::identity(f, m);
    rep.push("left action associative", l.mul(f, &kron_local(1, h.mu(), m)) == l.mul(f, &kron_local(d, l, 1)));
    rep.push("left action unital", l.mul(f, &h.eta().kron(f, &id_m)) == id_m);
    rep.push("right action associative", r.mul(f, &kron_local(1, r, d)) == r.mul(f, &kron_local(m, h.mu(), 1)));
    rep.push("right action unital", r.mul(f, &id_m.kron(f, h.eta())) == id_m);
    rep.push("actions commute", r.mul(f, &kron_local(1, l, d)) == l.mul(f, &kron_local(d, r, 1)));
}

impl<F: Field> Bimodule<F> {
    pub fn new(algebra: Arc<FiniteHopfAlgebra<F>>, dim: usize, left_action: Mat<F>, right_action: Mat<F>) -> Result<Self> {
        let d = algebra.dim();
        check_shape("left action", &left_action, dim, d * dim)?;
        check_shape("right action", &right_action, dim, dim * d)?;
        Ok(Bimodule { algebra, dim, left_action, right_action })
    }

    pub fn algebra(&self) -> &Arc<FiniteHopfAlgebra<F>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action(&self) -> &Mat<F> {
        &self.left_action
    }

    pub fn right_action(&self) -> &Mat<F> {
        &self.right_action
    }

    pub fn check(&self) -> AxiomReport {
        let mut rep = AxiomReport::new();
        bimodule_axioms(&self.algebra, self.dim, &self.left_action, &self.right_action, &mut rep);
        rep
    }

    /// `H` acting on itself from both sides.
    pub fn regular(algebra: Arc<FiniteHopfAlgebra<F>>) -> Self {
        let mu = algebra.mu().clone();
        let d = algebra.dim();
        Bimodule { algebra, dim: d, left_action: mu.clone(), right_action: mu }
    }

    /// The ground field with `h·1·h' = ε(h)ε(h')`.
    pub fn trivial(algebra: Arc<FiniteHopfAlgebra<F>>) -> Self {
        let eps = algebra.epsilon().clone();
        Bimodule { algebra, dim: 1, left_action: eps.clone(), right_action: eps }
    }

    /// The free bimodule `H⊗H` with `h(a⊗b)h' = ha⊗bh'`.
    pub fn free_rank_one(algebra: Arc<FiniteHopfAlgebra<F>>) -> Self {
        let d = algebra.dim();
        let left = kron_local(1, algebra.mu(), d);
        let right = kron_local(d, algebra.mu(), 1);
        Bimodule { algebra, dim: d * d, left_action: left, right_action: right }
    }
}

// ---------------------------------------------------------------------------

impl<F: Field> HopfBimodule<F> {
    pub fn new(
        algebra: Arc<FiniteHopfAlgebra<F>>,
        dim: usize,
        left_action: Mat<F>,
        right_action: Mat<F>,
        left_coaction: Mat<F>,
        right_coaction: Mat<F>,
    ) -> Result<Self> {
        let d = algebra.dim();
        check_shape("left action", &left_action, dim, d * dim)?;
        check_shape("right action", &right_action, dim, dim * d)?;
        check_shape("left coaction", &left_coaction, d * dim, dim)?;
        check_shape("right coaction", &right_coaction, dim * d, dim)?;
        Ok(HopfBimodule { algebra, dim, left_action, right_action, left_coaction, right_coaction })
    }

    pub fn algebra(&self) -> &Arc<FiniteHopfAlgebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action(&self) -> &Mat<F> {
        &self.left_action
    }

    pub fn right_action(&self) -> &Mat<F> {
        &self.right_action
    }

    pub fn left_coaction(&self) -> &Mat<F> {
        &self.left_coaction
    }

    pub fn right_coaction(&self) -> &Mat<F> {
        &self.right_coaction
    }

    pub fn structure_map(&self, s: Structure) -> &Mat<F> {
        match s {
            Structure::LeftAction => &self.left_action,
            Structure::RightAction => &self.right_action,
            Structure::LeftCoaction => &self.left_coaction,
            Structure::RightCoaction => &self.right_coaction,
        }
    }

    pub fn underlying_bimodule(&self) -> Bimodule<F> {
        Bimodule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            left_action: self.left_action.clone(),
            right_action: self.right_action.clone(),
        }
    }

    /// H over itself: actions `μ`, coactions `Δ`.
    pub fn regular(algebra: Arc<FiniteHopfAlgebra<F>>) -> Self {
        let d = algebra.dim();
        let mu = algebra.mu().clone();
        let delta = algebra.delta().clone();
        HopfBimodule { algebra, dim: d, left_action: mu.clone(), right_action: mu, left_coaction: delta.clone(), right_coaction: delta }
    }

    pub fn zero(algebra: Arc<FiniteHopfAlgebra<F>>) -> Self {
        HopfBimodule {
            algebra,
            dim: 0,
            left_action: SparseMatrix::zeros(0, 0),
            right_action: SparseMatrix::zeros(0, 0),
            left_coaction: SparseMatrix::zeros(0, 0),
            right_coaction: SparseMatrix::zeros(0, 0),
        }
    }

    pub fn check(&self) -> AxiomReport {
        let h = &*self.algebra;
        let f = h.field();
        let d = h.dim();
        let m = self.dim;
        let id_m = SparseMatrix::identity(f, m);
        let (l, r, cl, cr) = (&self.left_action, &self.right_action, &self.left_coaction, &self.right_coaction);
        let mut rep = AxiomReport::new();
        bimodule_axioms(h, m, l, r, &mut rep);

        rep.push("left coaction coassociative", kron_local(1, h.delta(), m).mul(f, cl) == kron_local(d, cl, 1).mul(f, cl));
        rep.push("left coaction counital", h.epsilon().kron(f, &id_m).mul(f, cl) == id_m);
        rep.push("right coaction coassociative", kron_local(1, cr, d).mul(f, cr) == kron_local(m, h.delta(), 1).mul(f, cr));
        rep.push("right coaction counital", id_m.kron(f, h.epsilon()).mul(f, cr) == id_m);
        rep.push("coactions commute", kron_local(1, cl, d).mul(f, cr) == kron_local(d, cr, 1).mul(f, cl));

        // δ_L(hm) = h(1)m(−1) ⊗ h(2)m(0)
        let lhs = cl.mul(f, l);
        let p = permutation(f, &[d, d, d, m], &[0, 2, 1, 3]);
        let rhs = compose(f, &[&h.mu().kron(f, l), &p, &h.delta().kron(f, cl)]);
        rep.push("left coaction is left linear", lhs == rhs);
        // δ_L(mh) = m(−1)h(1) ⊗ m(0)h(2)
        let lhs = cl.mul(f, r);
        let p = permutation(f, &[d, m, d, d], &[0, 2, 1, 3]);
        let rhs = compose(f, &[&h.mu().kron(f, r), &p, &cl.kron(f, h.delta())]);
        rep.push("left coaction is right linear", lhs == rhs);
        // δ_R(hm) = h(1)m(0) ⊗ h(2)m(1)
        let lhs = cr.mul(f, l);
        let p = permutation(f, &[d, d, m, d], &[0, 2, 1, 3]);
        let rhs = compose(f, &[&l.kron(f, h.mu()), &p, &h.delta().kron(f, cr)]);
        rep.push("right coaction is left linear", lhs == rhs);
        // δ_R(mh) = m(0)h(1) ⊗ m(1)h(2)
        let lhs = cr.mul(f, r);
        let p = permutation(f, &[m, d, d, d], &[0, 2, 1, 3]);
        let rhs = compose(f, &[&r.kron(f, h.mu()), &p, &cr.kron(f, h.delta())]);
        rep.push("right coaction is right linear", lhs == rhs);
        rep
    }

    pub fn is_valid(&self) -> bool {
        self.check().all_pass()
    }

    /// `M ⊗̲ N`: regular actions on the outer slots, codiagonal coactions.
    pub fn under_tensor(&self, other: &HopfBimodule<F>) -> Result<HopfBimodule<F>> {
        require_same_base(&self.algebra, &other.algebra)?;
        let h = &*self.algebra;
        let (m, n) = (self.dim, other.dim);
        let dims = [m, n];
        Ok(HopfBimodule {
            algebra: self.algebra.clone(),
            dim: m * n,
            left_action: kron_local(1, &self.left_action, n),
            right_action: kron_local(m, &other.right_action, 1),
            left_coaction: codiagonal_left_coaction(h, &[&self.left_coaction, &other.left_coaction], &dims),
            right_coaction: codiagonal_right_coaction(h, &[&self.right_coaction, &other.right_coaction], &dims),
        })
    }

    /// `M ⊗̄ N`: diagonal actions, coactions on the outer slots.
    pub fn bar_tensor(&self, other: &HopfBimodule<F>) -> Result<HopfBimodule<F>> {
        require_same_base(&self.algebra, &other.algebra)?;
        let h = &*self.algebra;
        let (m, n) = (self.dim, other.dim);
        let dims = [m, n];
        Ok(HopfBimodule {
            algebra: self.algebra.clone(),
            dim: m * n,
            left_action: diagonal_left_action(h, &[&self.left_action, &other.left_action], &dims),
            right_action: diagonal_right_action(h, &[&self.right_action, &other.right_action], &dims),
            left_coaction: kron_local(1, &self.left_coaction, n),
            right_coaction: kron_local(m, &other.right_coaction, 1),
        })
    }

    /// `E ⊗_H F`: the quotient of `E ⊗̲ F` by `{eh⊗f − e⊗hf}`, with the
    /// projection from `E ⊗̲ F` and a linear section of it.
    pub fn tensor_over_h(&self, other: &HopfBimodule<F>) -> Result<(HopfBimodule<F>, Mat<F>, Mat<F>)> {
        let t = self.under_tensor(other)?;
        let f = self.field();
        let (m, n) = (self.dim, other.dim);
        let rel = kron_local(1, &self.right_action, n).sub(f, &kron_local(m, &other.left_action, 1));
        let sub = linalg::image(f, &rel);
        let q = linalg::quotient(f, t.dim, &sub);
        let module = t.quotient_object(&q.projection, &q.section)?;
        Ok((module, q.projection, q.section))
    }

    /// The sub-object on the column span of `inclusion`, which must be stable.
    pub fn sub_object(&self, sub: &Subspace<F::Elem>) -> Result<(HopfBimodule<F>, Mat<F>)> {
        let f = self.field();
        let d = self.algebra.dim();
        let k = sub.dim();
        let incl = sub.basis_matrix();
        // The basis is reduced at its pivots, so reading the pivot rows gives coordinates.
        let proj = SparseMatrix::from_triplets(f, k, self.dim, sub.pivots().iter().enumerate().map(|(i, &p)| (i, p, f.one())))?;
        let id_d = SparseMatrix::identity(f, d);
        let transfer = |name: &str, outer_proj: &Mat<F>, outer_incl: &Mat<F>, map: &Mat<F>, inner_incl: &Mat<F>| -> Result<Mat<F>> {
            let image = map.mul(f, inner_incl);
            let restricted = outer_proj.mul(f, &image);
            if outer_incl.mul(f, &restricted) != image {
                return Err(Error::Internal(format!("subspace not stable under the {name}")));
            }
            Ok(restricted)
        };
        let left_action = transfer("left action", &proj, &incl, &self.left_action, &id_d.kron(f, &incl))?;
        let right_action = transfer("right action", &proj, &incl, &self.right_action, &incl.kron(f, &id_d))?;
        let left_coaction = transfer("left coaction", &id_d.kron(f, &proj), &id_d.kron(f, &incl), &self.left_coaction, &incl)?;
        let right_coaction = transfer("right coaction", &proj.kron(f, &id_d), &incl.kron(f, &id_d), &self.right_coaction, &incl)?;
        let module = HopfBimodule { algebra: self.algebra.clone(), dim: k, left_action, right_action, left_coaction, right_coaction };
        Ok((module, incl))
    }

    /// The quotient object with the given projection and a section of it;
    /// fails if the kernel of the projection is not a sub-object.
    pub fn quotient_object(&self, projection: &Mat<F>, section: &Mat<F>) -> Result<HopfBimodule<F>> {
        let f = self.field();
        let d = self.algebra.dim();
        let id_d = SparseMatrix::identity(f, d);
        let p = projection;
        let descend = |name: &str, outer: &Mat<F>, map: &Mat<F>, inner_sec: &Mat<F>, inner_proj: &Mat<F>| -> Result<Mat<F>> {
            let lhs = outer.mul(f, map);
            let induced = lhs.mul(f, inner_sec);
            if induced.mul(f, inner_proj) != lhs {
                return Err(Error::Internal(format!("relation subspace not stable under the {name}")));
            }
            Ok(induced)
        };
        let left_action = descend("left action", p, &self.left_action, &id_d.kron(f, section), &id_d.kron(f, p))?;
        let right_action = descend("right action", p, &self.right_action, &section.kron(f, &id_d), &p.kron(f, &id_d))?;
        let left_coaction = descend("left coaction", &id_d.kron(f, p), &self.left_coaction, section, p)?;
        let right_coaction = descend("right coaction", &p.kron(f, &id_d), &self.right_coaction, section, p)?;
        Ok(HopfBimodule { algebra: self.algebra.clone(), dim: p.rows(), left_action, right_action, left_coaction, right_coaction })
    }
}

/// `ε⊗id⊗ε: H⊗V⊗H → V`.
pub fn sandwich_counit<F: Field>(h: &FiniteHopfAlgebra<F>, middle: usize) -> Mat<F> {
    let f = h.field();
    h.epsilon().kron(f, &SparseMatrix::identity(f, middle)).kron(f, h.epsilon())
}

/// `H ⊗̄ V ⊗̄ H` for a bimodule `V`.
pub fn sandwich<F: Field>(v: &Bimodule<F>) -> HopfBimodule<F> {
    let alg = v.algebra.clone();
    let h = &*alg;
    let d = h.dim();
    let m = v.dim;
    let dims = [d, m, d];
    HopfBimodule {
        algebra: alg.clone(),
        dim: d * m * d,
        left_action: diagonal_left_action(h, &[h.mu(), &v.left_action, h.mu()], &dims),
        right_action: diagonal_right_action(h, &[h.mu(), &v.right_action, h.mu()], &dims),
        left_coaction: kron_local(1, h.delta(), m * d),
        right_coaction: kron_local(d * m, h.delta(), 1),
    }
}

/// `ψ(m) = m(−1) ⊗ m(0) ⊗ m(1)`, the embedding of `M` into the sandwich on its underlying bimodule.
pub fn psi_embedding<F: Field>(m: &HopfBimodule<F>) -> HopfBimoduleMap<F> {
    let f = m.field();
    let d = m.algebra.dim();
    let matrix = kron_local(d, &m.right_coaction, 1).mul(f, &m.left_coaction);
    HopfBimoduleMap { source: m.clone(), target: sandwich(&m.underlying_bimodule()), matrix }
}

pub fn regular_bimodule<F: Field>(h: Arc<FiniteHopfAlgebra<F>>) -> HopfBimodule<F> {
    HopfBimodule::regular(h)
}

/// Direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum<F: Field> {
    pub module: HopfBimodule<F>,
    pub injections: [Mat<F>; 2],
    pub projections: [Mat<F>; 2],
}

pub fn direct_sum<F: Field>(a: &HopfBimodule<F>, b: &HopfBimodule<F>) -> Result<DirectSum<F>> {
    require_same_base(&a.algebra, &b.algebra)?;
    let f = a.field();
    let d = a.algebra.dim();
    let (m, n) = (a.dim, b.dim);
    let id_d = SparseMatrix::identity(f, d);
    let i1 = SparseMatrix::identity(f, m).vstack(&SparseMatrix::zeros(n, m));
    let i2 = SparseMatrix::zeros(m, n).vstack(&SparseMatrix::identity(f, n));
    let p1 = i1.transpose();
    let p2 = i2.transpose();
    let both = |ma: &Mat<F>, mb: &Mat<F>, out1: &Mat<F>, out2: &Mat<F>, in1: &Mat<F>, in2: &Mat<F>| {
        compose(f, &[out1, ma, in1]).add(f, &compose(f, &[out2, mb, in2]))
    };
    let module = HopfBimodule {
        algebra: a.algebra.clone(),
        dim: m + n,
        left_action: both(&a.left_action, &b.left_action, &i1, &i2, &id_d.kron(f, &p1), &id_d.kron(f, &p2)),
        right_action: both(&a.right_action, &b.right_action, &i1, &i2, &p1.kron(f, &id_d), &p2.kron(f, &id_d)),
        left_coaction: both(&a.left_coaction, &b.left_coaction, &id_d.kron(f, &i1), &id_d.kron(f, &i2), &p1, &p2),
        right_coaction: both(&a.right_coaction, &b.right_coaction, &i1.kron(f, &id_d), &i2.kron(f, &id_d), &p1, &p2),
    };
    Ok(DirectSum { module, injections: [i1, i2], projections: [p1, p2] })
}

// ---------------------------------------------------------------------------
// Morphisms

/// Constraint rows expressing that `G: M → N` intertwines the structure `s`.
fn intertwining_system<F: Field>(h: &FiniteHopfAlgebra<F>, m: usize, n: usize, src: &Mat<F>, tgt: &Mat<F>, s: Structure) -> Mat<F> {
    let f = h.field();
    let d = h.dim();
    let id = |k: usize| SparseMatrix::identity(f, k);
    match s {
        // G μ_M − μ_N (id⊗G)
        Structure::LeftAction => lift_operator(f, m, n, 1, 1, &id(n), src).sub(f, &lift_operator(f, m, n, d, 1, tgt, &id(d * m))),
        Structure::RightAction => lift_operator(f, m, n, 1, 1, &id(n), src).sub(f, &lift_operator(f, m, n, 1, d, tgt, &id(m * d))),
        // δ_N G − (id⊗G) δ_M
        Structure::LeftCoaction => lift_operator(f, m, n, 1, 1, tgt, &id(m)).sub(f, &lift_operator(f, m, n, d, 1, &id(d * n), src)),
        Structure::RightCoaction => lift_operator(f, m, n, 1, 1, tgt, &id(m)).sub(f, &lift_operator(f, m, n, 1, d, &id(n * d), src)),
    }
}

fn stacked_kernel<F: Field>(f: &F, unknowns: usize, systems: Vec<Mat<F>>) -> Subspace<F::Elem> {
    if systems.is_empty() {
        return Subspace::full(f, unknowns);
    }
    let stacked = systems.into_iter().reduce(|a, b| a.vstack(&b)).unwrap();
    linalg::kernel(f, &stacked)
}

/// Basis (row-major vectorized) of all `G: M → N` intertwining the selected structures.
pub fn hom_space<F: Field>(m: &HopfBimodule<F>, n: &HopfBimodule<F>, constraints: &[Structure]) -> Result<Subspace<F::Elem>> {
    require_same_base(&m.algebra, &n.algebra)?;
    let h = &*m.algebra;
    let systems = constraints.iter().map(|&s| intertwining_system(h, m.dim, n.dim, m.structure_map(s), n.structure_map(s), s)).collect();
    Ok(stacked_kernel(h.field(), m.dim * n.dim, systems))
}

/// The homogeneous linear system (on row-major `vec(G)`) saying `G: M → N` intertwines `s`.
pub fn hom_space_system<F: Field>(m: &HopfBimodule<F>, n: &HopfBimodule<F>, s: Structure) -> Mat<F> {
    intertwining_system(&m.algebra, m.dim, n.dim, m.structure_map(s), n.structure_map(s), s)
}

/// Bimodule maps `X → V` (both actions).
pub fn bimodule_hom_space<F: Field>(x: &Bimodule<F>, v: &Bimodule<F>) -> Result<Subspace<F::Elem>> {
    require_same_base(&x.algebra, &v.algebra)?;
    let h = &*x.algebra;
    let systems = vec![
        intertwining_system(h, x.dim, v.dim, &x.left_action, &v.left_action, Structure::LeftAction),
        intertwining_system(h, x.dim, v.dim, &x.right_action, &v.right_action, Structure::RightAction),
    ];
    Ok(stacked_kernel(h.field(), x.dim * v.dim, systems))
}

/// Per-structure intertwining report for a linear map `g: M → N`.
pub fn check_morphism<F: Field>(m: &HopfBimodule<F>, n: &HopfBimodule<F>, g: &Mat<F>) -> AxiomReport {
    check_morphism_for(m, n, g, &Structure::ALL)
}

pub fn check_morphism_for<F: Field>(m: &HopfBimodule<F>, n: &HopfBimodule<F>, g: &Mat<F>, which: &[Structure]) -> AxiomReport {
    let mut rep = AxiomReport::new();
    if g.shape() != (n.dim, m.dim) {
        rep.push("shape", false);
        return rep;
    }
    let f = m.field();
    let d = m.algebra.dim();
    for &s in which {
        let ok = match s {
            Structure::LeftAction => g.mul(f, &m.left_action) == n.left_action.mul(f, &kron_local(d, g, 1)),
            Structure::RightAction => g.mul(f, &m.right_action) == n.right_action.mul(f, &kron_local(1, g, d)),
            Structure::LeftCoaction => n.left_coaction.mul(f, g) == kron_local(d, g, 1).mul(f, &m.left_coaction),
            Structure::RightCoaction => n.right_coaction.mul(f, g) == kron_local(1, g, d).mul(f, &m.right_coaction),
        };
        rep.push(s.name(), ok);
    }
    rep
}

impl<F: Field> HopfBimoduleMap<F> {
    pub fn new(source: HopfBimodule<F>, target: HopfBimodule<F>, matrix: Mat<F>) -> Result<Self> {
        check_shape("morphism", &matrix, target.dim, source.dim)?;
        require_same_base(&source.algebra, &target.algebra)?;
        Ok(HopfBimoduleMap { source, target, matrix })
    }

    pub fn check(&self) -> AxiomReport {
        check_morphism(&self.source, &self.target, &self.matrix)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.source.field(), &self.matrix)
    }
}

/// Kernel of a morphism with its inclusion.
pub fn kernel_bimodule<F: Field>(g: &HopfBimoduleMap<F>) -> Result<(HopfBimodule<F>, Mat<F>)> {
    let k = linalg::kernel(g.source.field(), &g.matrix);
    g.source.sub_object(&k)
}

/// Image of a morphism as a sub-object of the target, with its inclusion.
pub fn image_bimodule<F: Field>(g: &HopfBimoduleMap<F>) -> Result<(HopfBimodule<F>, Mat<F>)> {
    let im = linalg::image(g.source.field(), &g.matrix);
    g.target.sub_object(&im)
}

/// Same dimension and identical structure maps.
pub fn same_object<F: Field>(a: &HopfBimodule<F>, b: &HopfBimodule<F>) -> bool {
    same_base(&a.algebra, &b.algebra) && a.dim == b.dim && Structure::ALL.iter().all(|&s| a.structure_map(s) == b.structure_map(s))
}

/// Cokernel of a morphism with its projection.
pub fn cokernel_bimodule<F: Field>(g: &HopfBimoduleMap<F>) -> Result<(HopfBimodule<F>, Mat<F>)> {
    let f = g.source.field();
    let im = linalg::image(f, &g.matrix);
    let q = linalg::quotient(f, g.target.dim, &im);
    let module = g.target.quotient_object(&q.projection, &q.section)?;
    Ok((module, q.projection))
}

/// Coordinates of a vectorized map as a matrix.
pub fn hom_element<F: Field>(f: &F, v: &SparseVector<F::Elem>, source_dim: usize, target_dim: usize) -> Mat<F> {
    crate::tensor::vec_to_matrix(f, v, target_dim, source_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::hopf::{cyclic_group_table, group_algebra, taft_algebra};

    fn kc2() -> Arc<FiniteHopfAlgebra<Rationals>> {
        Arc::new(group_algebra(&Rationals, &cyclic_group_table(2), None).unwrap())
    }

    fn h4() -> Arc<FiniteHopfAlgebra<Rationals>> {
        let f = Rationals;
        Arc::new(taft_algebra(&f, 2, &f.from_i64(-1)).unwrap())
    }

    #[test]
    fn regular_and_tensors_pass() {
        for h in [kc2(), h4()] {
            let r = HopfBimodule::regular(h.clone());
            assert!(r.is_valid());
            let u = r.under_tensor(&r).unwrap();
            assert!(u.is_valid(), "{}", u.check());
            let b = r.bar_tensor(&r).unwrap();
            assert!(b.is_valid(), "{}", b.check());
            let s = sandwich(&Bimodule::regular(h.clone()));
            assert!(s.is_valid());
            assert!(sandwich(&Bimodule::free_rank_one(h.clone())).is_valid());
        }
    }

    #[test]
    fn broken_left_action_fails_unit() {
        let h = kc2();
        let r = HopfBimodule::regular(h.clone());
        let broken =
            HopfBimodule::new(h, 2, SparseMatrix::zeros(2, 4), r.right_action.clone(), r.left_coaction.clone(), r.right_coaction.clone())
                .unwrap();
        assert!(broken.check().failures().contains(&"left action unital"));
    }

    #[test]
    fn under_tensor_group_coaction() {
        let f = Rationals;
        let h = kc2();
        let r = HopfBimodule::regular(h);
        let u = r.under_tensor(&r).unwrap();
        // δ_L(g⊗g) = 1 ⊗ g⊗g  (g·g = 1); δ_L(g⊗1) = g ⊗ g⊗1
        assert_eq!(u.left_coaction().column(3), &SparseVector::basis(&f, 8, 3));
        assert_eq!(u.left_coaction().column(2), &SparseVector::basis(&f, 8, 4 + 2));
    }

    #[test]
    fn tensor_associativity() {
        let r = HopfBimodule::regular(h4());
        let a = r.under_tensor(&r).unwrap().under_tensor(&r).unwrap();
        let b = r.under_tensor(&r.under_tensor(&r).unwrap()).unwrap();
        for s in Structure::ALL {
            assert_eq!(a.structure_map(s), b.structure_map(s));
        }
        let a = r.bar_tensor(&r).unwrap().bar_tensor(&r).unwrap();
        let b = r.bar_tensor(&r.bar_tensor(&r).unwrap()).unwrap();
        for s in Structure::ALL {
            assert_eq!(a.structure_map(s), b.structure_map(s));
        }
    }

    #[test]
    fn counit_slot_collapse_is_left_linear() {
        let h = h4();
        let f = Rationals;
        let r = HopfBimodule::regular(h.clone());
        let b = r.bar_tensor(&r).unwrap();
        let collapse = h.epsilon().kron(&f, &h.identity());
        let lhs = collapse.mul(&f, b.left_action());
        let rhs = h.mu().mul(&f, &kron_local(4, &collapse, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_over_h_of_regulars() {
        let f = Rationals;
        for h in [kc2(), h4()] {
            let r = HopfBimodule::regular(h.clone());
            let (t, p, _) = r.tensor_over_h(&r).unwrap();
            assert_eq!(t.dim(), h.dim());
            assert!(t.is_valid());
            // multiplication descends to an isomorphism onto the regular bimodule
            let section = linalg::quotient(&f, r.dim() * r.dim(), &linalg::kernel(&f, &p)).section;
            let iso = h.mu().mul(&f, &section);
            let ps = p.mul(&f, &section);
            assert_eq!(linalg::rank(&f, &ps), h.dim());
            assert_eq!(linalg::rank(&f, &iso), h.dim());
            assert!(check_morphism(&t, &r, &iso.mul(&f, &invert(&f, &ps))).all_pass());
        }
        let h = kc2();
        let r = HopfBimodule::regular(h);
        assert_eq!(r.under_tensor(&r).unwrap().dim(), 4);
    }

    fn invert(f: &Rationals, m: &SparseMatrix<crate::field::Rational>) -> SparseMatrix<crate::field::Rational> {
        let n = m.rows();
        let cols = (0..n).map(|i| linalg::solve(f, m, &SparseVector::basis(f, n, i)).unwrap().unwrap().particular).collect();
        SparseMatrix::from_columns(n, cols)
    }

    #[test]
    fn hom_space_examples() {
        for h in [kc2(), h4()] {
            let r = HopfBimodule::regular(h.clone());
            assert_eq!(hom_space(&r, &r, &Structure::ALL).unwrap().dim(), 1);
            assert_eq!(hom_space(&r, &r, &[]).unwrap().dim(), h.dim() * h.dim());
            let full = hom_space(&r, &r, &Structure::ALL).unwrap();
            let partial = hom_space(&r, &r, &Structure::ACTIONS).unwrap();
            assert!(partial.contains_subspace(h.field(), &full));
        }
        let gf2 = Arc::new(group_algebra(&PrimeField::new(2).unwrap(), &cyclic_group_table(2), None).unwrap());
        let r = HopfBimodule::regular(gf2);
        assert_eq!(hom_space(&r, &r, &Structure::ALL).unwrap().dim(), 1);
    }

    #[test]
    fn sandwich_adjunction_dimension() {
        let h = kc2();
        let r = HopfBimodule::regular(h.clone());
        let x = r.under_tensor(&r).unwrap();
        let v = Bimodule::regular(h.clone());
        let lhs = hom_space(&x, &sandwich(&v), &Structure::ALL).unwrap().dim();
        let rhs = bimodule_hom_space(&x.underlying_bimodule(), &v).unwrap().dim();
        assert_eq!(lhs, rhs);
        let triv = sandwich(&Bimodule::trivial(h.clone()));
        assert_eq!(triv.dim(), 4);
        assert!(triv.is_valid());
    }

    #[test]
    fn psi_is_an_embedding() {
        let f = Rationals;
        for h in [kc2(), h4()] {
            let r = HopfBimodule::regular(h.clone());
            for m in [r.clone(), r.under_tensor(&r).unwrap()] {
                let psi = psi_embedding(&m);
                assert!(psi.check().all_pass());
                assert_eq!(psi.rank(), m.dim());
                assert_eq!(sandwich_counit(&h, m.dim()).mul(&f, &psi.matrix), SparseMatrix::identity(&f, m.dim()));
            }
        }
        let psi = psi_embedding(&HopfBimodule::regular(kc2()));
        assert_eq!(psi.matrix.column(1), &SparseVector::basis(&f, 8, 7));
    }

    #[test]
    fn kernels_cokernels_sums() {
        let h = h4();
        let r = HopfBimodule::regular(h.clone());
        let id = HopfBimoduleMap::new(r.clone(), r.clone(), r.algebra().identity()).unwrap();
        assert_eq!(kernel_bimodule(&id).unwrap().0.dim(), 0);
        let zero = HopfBimoduleMap::new(r.clone(), r.clone(), SparseMatrix::zeros(4, 4)).unwrap();
        let (c, _) = cokernel_bimodule(&zero).unwrap();
        assert_eq!(c.dim(), 4);
        assert!(c.is_valid());
        let s = direct_sum(&r, &r).unwrap();
        assert!(s.module.is_valid());
        // multiplication H⊗̲H → H is a morphism; kernel + image = source
        let u = r.under_tensor(&r).unwrap();
        let mult = HopfBimoduleMap::new(u.clone(), r.clone(), h.mu().clone()).unwrap();
        assert!(mult.check().all_pass());
        let (k, _) = kernel_bimodule(&mult).unwrap();
        assert!(k.is_valid());
        assert_eq!(k.dim() + mult.rank(), u.dim());
        assert_eq!(k.dim() % h.dim(), 0);
    }
}
