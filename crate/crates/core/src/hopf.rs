//! Finite-dimensional Hopf algebras given by structure constants.
//!
//! Structure maps are stored as matrices acting on column vectors:
//! `μ: d × d²`, `η: d × 1`, `Δ: d² × d`, `ε: 1 × d`, `S: d × d`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{SparseMatrix, SparseVector};
use crate::tensor::{self, kron_local, permutation};

#[derive(Clone, Debug)]
pub struct FiniteHopfAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    mu: SparseMatrix<F::Elem>,
    eta: SparseMatrix<F::Elem>,
    delta: SparseMatrix<F::Elem>,
    eps: SparseMatrix<F::Elem>,
    antipode: SparseMatrix<F::Elem>,
}

/// Outcome of an axiom checker: one named line per identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<(String, bool)>,
}

impl AxiomReport {
    pub fn new() -> Self {
        AxiomReport { checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }

    /// Concatenates another report, prefixing its names.
    pub fn extend_prefixed(&mut self, prefix: &str, other: AxiomReport) {
        for (n, ok) in other.checks {
            self.checks.push((format!("{prefix}{n}"), ok));
        }
    }
}

impl Default for AxiomReport {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, ok) in &self.checks {
            writeln!(f, "{:<5} {n}", if *ok { "ok" } else { "FAIL" })?;
        }
        Ok(())
    }
}

fn expect_shape<E: Clone>(what: &str, m: &SparseMatrix<E>, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::Input(format!("{what} has shape {}x{}, expected {rows}x{cols}", m.rows(), m.cols())));
    }
    Ok(())
}

impl<F: Field> FiniteHopfAlgebra<F> {
    /// Builds the algebra after checking shapes and all Hopf axioms.
    pub fn new(
        field: &F,
        labels: Vec<String>,
        mu: SparseMatrix<F::Elem>,
        eta: SparseMatrix<F::Elem>,
        delta: SparseMatrix<F::Elem>,
        eps: SparseMatrix<F::Elem>,
        antipode: SparseMatrix<F::Elem>,
    ) -> Result<Self> {
        let h = Self::new_unchecked(field, labels, mu, eta, delta, eps, antipode)?;
        let report = h.check_axioms();
        if !report.all_pass() {
            return Err(Error::Input(format!("Hopf axioms fail: {}", report.failures().join(", "))));
        }
        Ok(h)
    }

    /// Checks shapes only. Used for negative controls and by the checker CLI.
    pub fn new_unchecked(
        field: &F,
        labels: Vec<String>,
        mu: SparseMatrix<F::Elem>,
        eta: SparseMatrix<F::Elem>,
        delta: SparseMatrix<F::Elem>,
        eps: SparseMatrix<F::Elem>,
        antipode: SparseMatrix<F::Elem>,
    ) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::Input("Hopf algebra of dimension 0".into()));
        }
        expect_shape("multiplication", &mu, d, d * d)?;
        expect_shape("unit", &eta, d, 1)?;
        expect_shape("comultiplication", &delta, d * d, d)?;
        expect_shape("counit", &eps, 1, d)?;
        expect_shape("antipode", &antipode, d, d)?;
        Ok(FiniteHopfAlgebra { field: field.clone(), labels, mu, eta, delta, eps, antipode })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mu(&self) -> &SparseMatrix<F::Elem> {
        &self.mu
    }

    pub fn eta(&self) -> &SparseMatrix<F::Elem> {
        &self.eta
    }

    pub fn delta(&self) -> &SparseMatrix<F::Elem> {
        &self.delta
    }

    pub fn epsilon(&self) -> &SparseMatrix<F::Elem> {
        &self.eps
    }

    pub fn antipode(&self) -> &SparseMatrix<F::Elem> {
        &self.antipode
    }

    pub fn identity(&self) -> SparseMatrix<F::Elem> {
        SparseMatrix::identity(&self.field, self.dim())
    }

    pub fn unit_vector(&self) -> SparseVector<F::Elem> {
        self.eta.column(0).clone()
    }

    pub fn basis_vector(&self, i: usize) -> SparseVector<F::Elem> {
        SparseVector::basis(&self.field, self.dim(), i)
    }

    /// Product of two elements of H.
    pub fn product(&self, a: &SparseVector<F::Elem>, b: &SparseVector<F::Elem>) -> SparseVector<F::Elem> {
        let d = self.dim();
        let f = &self.field;
        let terms =
            a.entries().iter().flat_map(|(i, x)| b.entries().iter().map(move |(j, y)| (f.mul(x, y), self.mu.column(i * d + j).clone())));
        tensor::linear_combination(f, d, terms)
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let f = &self.field;
        let d = self.dim();
        let id = self.identity();
        let one = SparseMatrix::identity(f, 1);
        let mut r = AxiomReport::new();

        let assoc_l = self.mu.mul(f, &kron_local(1, &self.mu, d));
        let assoc_r = self.mu.mul(f, &kron_local(d, &self.mu, 1));
        r.push("associativity", assoc_l == assoc_r);

        let unit_l = self.mu.mul(f, &self.eta.kron(f, &id));
        let unit_r = self.mu.mul(f, &id.kron(f, &self.eta));
        r.push("unit", unit_l == id && unit_r == id);

        let coassoc_l = kron_local(1, &self.delta, d).mul(f, &self.delta);
        let coassoc_r = kron_local(d, &self.delta, 1).mul(f, &self.delta);
        r.push("coassociativity", coassoc_l == coassoc_r);

        let counit_l = self.eps.kron(f, &id).mul(f, &self.delta);
        let counit_r = id.kron(f, &self.eps).mul(f, &self.delta);
        r.push("counit", counit_l == id && counit_r == id);

        let swap23 = permutation(f, &[d, d, d, d], &[0, 2, 1, 3]);
        let lhs = self.delta.mul(f, &self.mu);
        let rhs = self.mu.kron(f, &self.mu).mul(f, &swap23).mul(f, &self.delta.kron(f, &self.delta));
        let unit_ok = self.delta.mul(f, &self.eta) == self.eta.kron(f, &self.eta);
        r.push("comultiplication is an algebra map", lhs == rhs && unit_ok);

        let lhs = self.eps.mul(f, &self.mu);
        let rhs = self.eps.kron(f, &self.eps);
        let unit_ok = self.eps.mul(f, &self.eta) == one;
        r.push("counit is an algebra map", lhs == rhs && unit_ok);

        let ee = self.eta.mul(f, &self.eps);
        let s_l = self.mu.mul(f, &self.antipode.kron(f, &id)).mul(f, &self.delta);
        let s_r = self.mu.mul(f, &id.kron(f, &self.antipode)).mul(f, &self.delta);
        r.push("antipode", s_l == ee && s_r == ee);
        r
    }

    /// `Δ^{(n)}: H → H^⊗(n+1)`, with `Δ^{(-1)} = ε` and `Δ^{(0)} = id`.
    pub fn iterated_comultiplication(&self, n: isize) -> SparseMatrix<F::Elem> {
        assert!(n >= -1, "iterated comultiplication below -1");
        if n == -1 {
            return self.eps.clone();
        }
        let d = self.dim();
        let mut acc = self.identity();
        for k in 1..=n as usize {
            // apply Δ to the last leg
            acc = kron_local(d.pow(k as u32 - 1), &self.delta, 1).mul(&self.field, &acc);
        }
        acc
    }

    /// `μ^{(n)}: H^⊗n → H`, with `μ^{(0)} = η` and `μ^{(1)} = id`.
    pub fn iterated_multiplication(&self, n: usize) -> SparseMatrix<F::Elem> {
        if n == 0 {
            return self.eta.clone();
        }
        let mut acc = self.identity();
        for _ in 2..=n {
            acc = self.mu.mul(&self.field, &acc.kron(&self.field, &self.identity()));
        }
        acc
    }

    /// Slotwise multiplication `H^⊗p ⊗ H^⊗p → H^⊗p` as a `d^p × d^{2p}` matrix.
    pub fn componentwise_product_map(&self, p: usize) -> SparseMatrix<F::Elem> {
        let f = &self.field;
        let d = self.dim();
        if p == 0 {
            return SparseMatrix::identity(f, 1);
        }
        // (u_0..u_{p-1}, v_0..v_{p-1}) -> (u_0 v_0, ..., u_{p-1} v_{p-1})
        let mut perm = Vec::with_capacity(2 * p);
        for s in 0..p {
            perm.push(s);
            perm.push(p + s);
        }
        let shuffle = permutation(f, &vec![d; 2 * p], &perm);
        tensor_power(f, &self.mu, p).mul(f, &shuffle)
    }

    pub fn componentwise_product(&self, p: usize, u: &SparseVector<F::Elem>, v: &SparseVector<F::Elem>) -> Result<SparseVector<F::Elem>> {
        let n = self.dim().pow(p as u32);
        if u.dim() != n || v.dim() != n {
            return Err(Error::Input(format!(
                "componentwise product in H^⊗{p} needs vectors of length {n}, got {} and {}",
                u.dim(),
                v.dim()
            )));
        }
        let f = &self.field;
        let m = self.componentwise_product_map(p);
        let terms = u.entries().iter().flat_map(|(i, x)| {
            let m = &m;
            v.entries().iter().map(move |(j, y)| (f.mul(x, y), m.column(i * n + j).clone()))
        });
        Ok(tensor::linear_combination(f, n, terms))
    }

    /// `a_1⊗…⊗a_q ↦ (a_1^(1)⊗…⊗a_q^(1)) ⊗ (a_1^(2)⊗…⊗a_q^(2))`, a `d^{2q} × d^q` matrix.
    pub fn sweedler_split(&self, q: usize) -> SparseMatrix<F::Elem> {
        let f = &self.field;
        let d = self.dim();
        if q == 0 {
            return SparseMatrix::identity(f, 1);
        }
        let perm: Vec<usize> = (0..q).map(|s| 2 * s).chain((0..q).map(|s| 2 * s + 1)).collect();
        let gather = permutation(f, &vec![d; 2 * q], &perm);
        gather.mul(f, &tensor_power(f, &self.delta, q))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        let flip = permutation(&self.field, &[d, d], &[1, 0]);
        self.mu.mul(&self.field, &flip) == self.mu
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim();
        let flip = permutation(&self.field, &[d, d], &[1, 0]);
        flip.mul(&self.field, &self.delta) == self.delta
    }

    /// The dual Hopf algebra on the dual basis: all structure tensors transposed.
    pub fn dual(&self) -> FiniteHopfAlgebra<F> {
        FiniteHopfAlgebra {
            field: self.field.clone(),
            labels: self.labels.iter().map(|l| dual_label(l)).collect(),
            mu: self.delta.transpose(),
            eta: self.eps.transpose(),
            delta: self.mu.transpose(),
            eps: self.eta.transpose(),
            antipode: self.antipode.transpose(),
        }
    }

    /// Same structure tensors (labels ignored).
    pub fn same_structure(&self, other: &FiniteHopfAlgebra<F>) -> bool {
        self.mu == other.mu
            && self.eta == other.eta
            && self.delta == other.delta
            && self.eps == other.eps
            && self.antipode == other.antipode
    }
}

fn dual_label(l: &str) -> String {
    match l.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{l}*"),
    }
}

/// `m^⊗n`, with `m^⊗0` the 1×1 identity.
pub fn tensor_power<F: Field>(field: &F, m: &SparseMatrix<F::Elem>, n: usize) -> SparseMatrix<F::Elem> {
    let mut acc = SparseMatrix::identity(field, 1);
    for _ in 0..n {
        acc = acc.kron(field, m);
    }
    acc
}

pub fn dual_hopf_algebra<F: Field>(h: &FiniteHopfAlgebra<F>) -> FiniteHopfAlgebra<F> {
    h.dual()
}

/// The group algebra of a finite group given by its Cayley table
/// (`table[a][b]` is the index of `ab`).
pub fn group_algebra<F: Field>(field: &F, table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<FiniteHopfAlgebra<F>> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Input("empty group table".into()));
    }
    for row in table {
        if row.len() != n || row.iter().any(|&x| x >= n) {
            return Err(Error::Input("group table is not an n x n table of indices below n".into()));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::Input(format!("group table not associative at ({a},{b},{c})")));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        .ok_or_else(|| Error::Input("group table has no identity".into()))?;
    let mut inverse = vec![0; n];
    for a in 0..n {
        inverse[a] =
            (0..n).find(|&b| table[a][b] == e && table[b][a] == e).ok_or_else(|| Error::Input(format!("element {a} has no inverse")))?;
    }
    let labels = match labels {
        Some(l) if l.len() == n => l,
        Some(_) => return Err(Error::Input("label count does not match group order".into())),
        None => (0..n).map(|i| if i == e { "1".to_string() } else { format!("g{i}") }).collect(),
    };
    let one = field.one();
    let mu = SparseMatrix::from_triplets(
        field,
        n,
        n * n,
        (0..n).flat_map(|a| (0..n).map(move |b| (table[a][b], a * n + b))).map(|(r, c)| (r, c, one.clone())),
    )?;
    let eta = SparseMatrix::from_triplets(field, n, 1, vec![(e, 0, one.clone())])?;
    let delta = SparseMatrix::from_triplets(field, n * n, n, (0..n).map(|a| (a * n + a, a, one.clone())))?;
    let eps = SparseMatrix::from_triplets(field, 1, n, (0..n).map(|a| (0, a, one.clone())))?;
    let s = SparseMatrix::from_triplets(field, n, n, (0..n).map(|a| (inverse[a], a, one.clone())))?;
    FiniteHopfAlgebra::new(field, labels, mu, eta, delta, eps, s)
}

/// Cayley table of the cyclic group of order `n`.
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Cayley table of S₃, elements listed as permutations of {0,1,2} in
/// lexicographic order; composition `(στ)(i) = σ(τ(i))`.
pub fn symmetric_group_s3_table() -> (Vec<Vec<usize>>, Vec<String>) {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let table = perms.iter().map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect()).collect();
    let labels = perms.iter().map(|p| format!("[{}{}{}]", p[0], p[1], p[2])).collect();
    (table, labels)
}

/// The Taft algebra `T_n(q)`: basis `g^i x^j` (index `i·n + j`), `g^n = 1`,
/// `x^n = 0`, `xg = q·gx`, `Δ(g) = g⊗g`, `Δ(x) = x⊗1 + g⊗x`.
pub fn taft_algebra<F: Field>(field: &F, n: usize, q: &F::Elem) -> Result<FiniteHopfAlgebra<F>> {
    if n < 2 {
        return Err(Error::Input("Taft algebra needs n >= 2".into()));
    }
    let f = field;
    let mut powers = vec![f.one()];
    for k in 1..=n {
        powers.push(f.mul(&powers[k - 1], q));
    }
    if !f.is_one(&powers[n]) || (1..n).any(|k| f.is_one(&powers[k])) {
        return Err(Error::Input(format!("{} is not a primitive {n}-th root of unity", f.format(q))));
    }
    let d = n * n;
    let idx = |i: usize, j: usize| (i % n) * n + j;
    let qpow = |k: usize| powers[k % n].clone();

    // (g^i x^j)(g^k x^l) = q^{jk} g^{i+k} x^{j+l}
    let mut mu_t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j + l < n {
                        mu_t.push((idx(i + k, j + l), idx(i, j) * d + idx(k, l), qpow(j * k)));
                    }
                }
            }
        }
    }
    let mu = SparseMatrix::from_triplets(f, d, d * d, mu_t)?;
    let eta = SparseMatrix::from_triplets(f, d, 1, vec![(0, 0, f.one())])?;
    let eps = SparseMatrix::from_triplets(f, 1, d, (0..n).map(|i| (0, idx(i, 0), f.one())))?;

    // Δ and S are determined multiplicatively from the generators.
    let partial = FiniteHopfAlgebra {
        field: f.clone(),
        labels: vec![String::new(); d],
        mu: mu.clone(),
        eta: eta.clone(),
        delta: SparseMatrix::zeros(d * d, d),
        eps: eps.clone(),
        antipode: SparseMatrix::zeros(d, d),
    };
    let e = |i: usize, j: usize| SparseVector::basis(f, d, idx(i, j));
    let mul2 = partial.componentwise_product_map(2);
    let prod2 = |a: &SparseVector<F::Elem>, b: &SparseVector<F::Elem>| mul2.apply(f, &a.kron_vec(f, b));
    let dg = e(1, 0).kron_vec(f, &e(1, 0));
    let dx = e(0, 1).kron_vec(f, &e(0, 0)).add(f, &e(1, 0).kron_vec(f, &e(0, 1)));
    let sg = e(n - 1, 0);
    let sx = partial.product(&e(n - 1, 0), &e(0, 1)).neg(f);
    let mut delta_cols = Vec::with_capacity(d);
    let mut s_cols = Vec::with_capacity(d);
    for i in 0..n {
        for j in 0..n {
            let mut dv = e(0, 0).kron_vec(f, &e(0, 0));
            let mut sv = e(0, 0);
            for _ in 0..i {
                dv = prod2(&dv, &dg);
                sv = partial.product(&sg, &sv);
            }
            for _ in 0..j {
                dv = prod2(&dv, &dx);
                sv = partial.product(&sx, &sv);
            }
            delta_cols.push(dv);
            s_cols.push(sv);
        }
    }
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| taft_label(i, j))).collect();
    FiniteHopfAlgebra::new(f, labels, mu, eta, SparseMatrix::from_columns(d * d, delta_cols), eps, SparseMatrix::from_columns(d, s_cols))
}

fn taft_label(i: usize, j: usize) -> String {
    let g = match i {
        0 => String::new(),
        1 => "g".to_string(),
        _ => format!("g^{i}"),
    };
    let x = match j {
        0 => String::new(),
        1 => "x".to_string(),
        _ => format!("x^{j}"),
    };
    if g.is_empty() && x.is_empty() {
        "1".to_string()
    } else {
        format!("{g}{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn kc2<F: Field>(f: &F) -> FiniteHopfAlgebra<F> {
        group_algebra(f, &cyclic_group_table(2), None).unwrap()
    }

    #[test]
    fn group_algebras_pass() {
        assert!(kc2(&Rationals).check_axioms().all_pass());
        assert_eq!(kc2(&PrimeField::new(2).unwrap()).dim(), 2);
        let (t, l) = symmetric_group_s3_table();
        let s3 = group_algebra(&Rationals, &t, Some(l)).unwrap();
        assert_eq!(s3.dim(), 6);
        assert!(!s3.is_commutative());
        assert!(s3.is_cocommutative());
    }

    #[test]
    fn broken_comultiplication_is_reported() {
        let f = Rationals;
        let h = kc2(&f);
        // Δ(g) = g⊗1
        let mut cols: Vec<_> = h.delta().columns().to_vec();
        cols[1] = SparseVector::basis(&f, 4, 2);
        let broken = FiniteHopfAlgebra::new_unchecked(
            &f,
            h.labels().to_vec(),
            h.mu().clone(),
            h.eta().clone(),
            SparseMatrix::from_columns(4, cols),
            h.epsilon().clone(),
            h.antipode().clone(),
        )
        .unwrap();
        let fails = broken.check_axioms().failures().join(",");
        assert!(fails.contains("counit") || fails.contains("coassociativity"), "{fails}");
    }

    #[test]
    fn shape_errors_are_input_errors() {
        let f = Rationals;
        let h = kc2(&f);
        let r = FiniteHopfAlgebra::new_unchecked(
            &f,
            h.labels().to_vec(),
            h.mu().clone(),
            h.eta().clone(),
            h.delta().clone(),
            SparseMatrix::zeros(1, 3),
            h.antipode().clone(),
        );
        assert!(matches!(r, Err(Error::Input(_))));
    }

    #[test]
    fn non_group_table_rejected() {
        let t = vec![vec![0, 1], vec![0, 1]];
        assert!(group_algebra(&Rationals, &t, None).is_err());
    }

    #[test]
    fn taft_examples() {
        let q = Rationals;
        let h4 = taft_algebra(&q, 2, &q.from_i64(-1)).unwrap();
        assert_eq!(h4.dim(), 4);
        assert!(!h4.is_commutative() && !h4.is_cocommutative());
        let f7 = PrimeField::new(7).unwrap();
        let t3 = taft_algebra(&f7, 3, &2).unwrap();
        assert_eq!(t3.dim(), 9);
        assert!(taft_algebra(&q, 2, &q.one()).is_err());
        assert!(taft_algebra(&f7, 3, &1).is_err());
    }

    #[test]
    fn iterated_comultiplication_examples() {
        let f = Rationals;
        let h = kc2(&f);
        assert_eq!(h.iterated_comultiplication(0), h.identity());
        let d2 = h.iterated_comultiplication(2);
        assert_eq!(d2.shape(), (8, 2));
        assert_eq!(d2.column(1), &SparseVector::basis(&f, 8, 7));
        let h4 = taft_algebra(&f, 2, &f.from_i64(-1)).unwrap();
        // x has index 1, g index 2
        let dx = h4.iterated_comultiplication(1).column(1).clone();
        let expected = SparseVector::from_unsorted(&f, 16, vec![(4, f.one()), (2 * 4 + 1, f.one())]);
        assert_eq!(dx, expected);
        // left and right expansions agree
        for n in 1..4usize {
            let dn = h4.iterated_comultiplication(n as isize);
            let prev = h4.iterated_comultiplication(n as isize - 1);
            let left = kron_local(1, h4.delta(), 4usize.pow(n as u32 - 1)).mul(&f, &prev);
            assert_eq!(dn, left);
        }
    }

    #[test]
    fn componentwise_products() {
        let f = Rationals;
        let h = kc2(&f);
        let gg = SparseVector::basis(&f, 4, 3);
        let g1 = SparseVector::basis(&f, 4, 2);
        assert_eq!(h.componentwise_product(2, &gg, &g1).unwrap(), SparseVector::basis(&f, 4, 1));
        let a = SparseVector::from_dense(&f, &[f.from_i64(3)]);
        let b = SparseVector::from_dense(&f, &[f.from_i64(5)]);
        assert_eq!(h.componentwise_product(0, &a, &b).unwrap(), SparseVector::from_dense(&f, &[f.from_i64(15)]));
        assert!(h.componentwise_product(2, &gg, &a).is_err());
        let h4 = taft_algebra(&f, 2, &f.from_i64(-1)).unwrap();
        assert_eq!(h4.componentwise_product_map(1), *h4.mu());
        // associativity and unit for p <= 3
        for p in 0..=3 {
            let m = h4.componentwise_product_map(p);
            let n = 4usize.pow(p as u32);
            let l = m.mul(&f, &kron_local(1, &m, n));
            let r = m.mul(&f, &kron_local(n, &m, 1));
            assert_eq!(l, r);
            let unit = tensor_power(&f, h4.eta(), p);
            assert_eq!(m.mul(&f, &unit.kron(&f, &SparseMatrix::identity(&f, n))), SparseMatrix::identity(&f, n));
        }
    }

    #[test]
    fn duals() {
        let f = Rationals;
        let (t, l) = symmetric_group_s3_table();
        let s3 = group_algebra(&f, &t, Some(l)).unwrap();
        let dual = s3.dual();
        assert!(dual.check_axioms().all_pass());
        assert!(dual.is_commutative() && !dual.is_cocommutative());
        assert!(dual.dual().same_structure(&s3));
        assert_eq!(dual.dual().labels(), s3.labels());
        assert!(kc2(&f).dual().check_axioms().all_pass());
        let h4 = taft_algebra(&f, 2, &f.from_i64(-1)).unwrap();
        assert!(h4.dual().check_axioms().all_pass());
    }
}
