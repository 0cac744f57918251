//! Verification suites: every invariant the library promises, run on one
//! algebra and reported line by line. Degrees are scheduled from `dim H` so
//! each suite stays within the resource guard and a few minutes of runtime.
//!
//! Reports depend only on exact data, never on timing or thread layout.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bimodule::{
    bimodule_hom_space, check_morphism_for, cokernel_bimodule, hom_space, kernel_bimodule, psi_embedding, sandwich, sandwich_counit,
    Bimodule, HopfBimodule, Structure,
};
use crate::cohomology::{
    adjunction_phi_inverse_matrix, adjunction_phi_matrix, build_double_complex, full_cochain_map, full_horizontal, full_vertical,
    is_coboundary, reduced_b_complex, reduced_horizontal, reduced_to_parameter, reduced_vertical, total_cohomology, DoubleComplex, Limits,
    Theory,
};
use crate::cup::{check_leibniz, check_leibniz_h4, cup_b, cup_h4, graded_commutator_test};
use crate::error::{Error, Result};
use crate::extension::{
    baer_sum, check_chain_map, check_extension, extension_from_1cocycle, find_section, lambda_map, negate, rho_map, splice,
    split_extension, tensor_extensions, Extension,
};
use crate::field::Field;
use crate::hopf::FiniteHopfAlgebra;
use crate::linalg::{self, SparseMatrix, SparseVector};
use crate::resolution::{
    certify_exactness, check_exactness, find_relative_splitting, standard_homotopy, verify_splitting, Direction, ResolutionKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Axioms,
    Complexes,
    Cohomology,
    Cup,
    Extensions,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Axioms, Suite::Complexes, Suite::Cohomology, Suite::Cup, Suite::Extensions];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Complexes => "complexes",
            Suite::Cohomology => "cohomology",
            Suite::Cup => "cup",
            Suite::Extensions => "extensions",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH.iter().chain(&[Suite::All]).find(|x| x.name() == s).copied().ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub suite: Suite,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub field: String,
    pub dim: usize,
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.pass)
    }

    pub fn line(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra over {} of dimension {}", self.field, self.dim)?;
        for l in &self.lines {
            let mark = if l.pass { "PASS" } else { "FAIL" };
            write!(f, "{mark} [{}] {}", l.suite, l.name)?;
            if !l.detail.is_empty() {
                write!(f, ": {}", l.detail)?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.lines.len(), failed)
    }
}

/// Degree bounds used by the suites, chosen from `dim H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    /// Bar and Cob certified through this degree.
    pub one_sided_degree: usize,
    /// B and C certified through this degree.
    pub two_sided_degree: usize,
    /// Largest resolution term whose Hopf bimodule axioms are checked in the axiom suite.
    pub axiom_limit: usize,
    /// Largest term size materialized as a Hopf bimodule for rank and morphism checks.
    pub materialize_limit: usize,
    /// Largest `dim src · dim tgt` for a splitting solve.
    pub solve_limit: usize,
    pub reduced_degree: usize,
    pub full_degree: usize,
    pub gs_degree: Option<usize>,
    pub injective_degree: Option<usize>,
    /// Extra coefficient pairs such as `(H⊗̲H, H)` and the adjunction instances.
    pub small_instances: bool,
    pub random_pairs: usize,
}

impl Schedule {
    pub fn for_dim(d: usize) -> Schedule {
        Schedule {
            one_sided_degree: 4,
            two_sided_degree: 2,
            axiom_limit: 1_000,
            materialize_limit: 60_000,
            solve_limit: 100_000,
            reduced_degree: 3,
            full_degree: 2,
            gs_degree: match d {
                0..=4 => Some(2),
                5..=6 => Some(1),
                _ => None,
            },
            injective_degree: (d <= 4).then_some(2),
            small_instances: d <= 4,
            random_pairs: 100,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub limits: Limits,
    pub schedule: Option<Schedule>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { limits: Limits::default(), schedule: None, seed: 0x5eed }
    }
}

struct Recorder {
    suite: Suite,
    lines: Vec<CheckLine>,
}

impl Recorder {
    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine { suite: self.suite, name: name.into(), pass, detail: detail.into() });
    }

    /// Records a computation that may fail; errors become failing lines.
    fn try_push(&mut self, name: impl Into<String>, r: Result<(bool, String)>) {
        match r {
            Ok((pass, detail)) => self.push(name, pass, detail),
            Err(e) => self.push(name, false, e.to_string()),
        }
    }
}

/// Runs one suite (or all of them, in order).
pub fn run_suite<F: Field>(h: &Arc<FiniteHopfAlgebra<F>>, suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let schedule = opts.schedule.clone().unwrap_or_else(|| Schedule::for_dim(h.dim()));
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut lines = Vec::new();
    for s in suites {
        let mut rec = Recorder { suite: s, lines: Vec::new() };
        let ctx = Ctx { h, schedule: &schedule, opts };
        match s {
            Suite::Axioms => ctx.axioms(&mut rec),
            Suite::Complexes => ctx.complexes(&mut rec),
            Suite::Cohomology => ctx.cohomology(&mut rec),
            Suite::Cup => ctx.cup(&mut rec),
            Suite::Extensions => ctx.extensions(&mut rec),
            Suite::All => unreachable!(),
        }
        lines.extend(rec.lines);
    }
    VerifyReport { field: h.field().descriptor().to_string(), dim: h.dim(), lines }
}

/// [`run_suite`] on a dedicated pool with `threads` workers.
pub fn run_suite_with_threads<F: Field>(
    h: &Arc<FiniteHopfAlgebra<F>>,
    suite: Suite,
    opts: &VerifyOptions,
    threads: usize,
) -> Result<VerifyReport> {
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    Ok(pool.install(|| run_suite(h, suite, opts)))
}

struct Ctx<'a, F: Field> {
    h: &'a Arc<FiniteHopfAlgebra<F>>,
    schedule: &'a Schedule,
    opts: &'a VerifyOptions,
}

fn dims_string(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn random_vec<F: Field>(f: &F, dim: usize, rng: &mut ChaCha8Rng) -> SparseVector<F::Elem> {
    let entries = (0..dim).filter_map(|i| rng.gen_bool(0.6).then(|| (i, f.from_i64(rng.gen_range(-3..=3))))).collect();
    SparseVector::from_unsorted(f, dim, entries)
}

impl<F: Field> Ctx<'_, F> {
    fn regular(&self) -> HopfBimodule<F> {
        HopfBimodule::regular(self.h.clone())
    }

    fn axioms(&self, rec: &mut Recorder) {
        let h = self.h;
        let rep = h.check_axioms();
        rec.push("Hopf axioms", rep.all_pass(), rep.failures().join(", "));
        let r = self.regular();
        let d = h.dim();
        let mut objects: Vec<(String, Result<HopfBimodule<F>>)> = vec![
            ("regular H".into(), Ok(r.clone())),
            ("H ⊗̲ H".into(), r.under_tensor(&r)),
            ("H ⊗̄ H".into(), r.bar_tensor(&r)),
            ("sandwich of H".into(), Ok(sandwich(&Bimodule::regular(h.clone())))),
            ("H ⊗_H H".into(), r.tensor_over_h(&r).map(|t| t.0)),
        ];
        let psi = psi_embedding(&r);
        objects.push(("kernel of ψ".into(), kernel_bimodule(&psi).map(|k| k.0)));
        objects.push(("cokernel of ψ".into(), cokernel_bimodule(&psi).map(|k| k.0)));
        for kind in ResolutionKind::ALL {
            let top = (0..=2).rev().find(|&k| kind.term_dim(d, d, k as isize) <= self.schedule.axiom_limit);
            if let Some(top) = top {
                match kind.build(&r, top) {
                    Ok(c) => {
                        for (k, t) in c.terms.into_iter().enumerate() {
                            objects.push((format!("{}_{k}", kind.name()), Ok(t)));
                        }
                    }
                    Err(e) => objects.push((format!("{} terms", kind.name()), Err(e))),
                }
            }
        }
        for (name, obj) in objects {
            rec.try_push(
                format!("Hopf bimodule {name}"),
                obj.map(|o| {
                    let rep = o.check();
                    {
                        let failed = rep.failures();
                        let detail =
                            if failed.is_empty() { format!("dim {}", o.dim()) } else { format!("dim {}; {}", o.dim(), failed.join(", ")) };
                        (rep.all_pass(), detail)
                    }
                }),
            );
        }
        // ψ for H and H⊗̲H
        let mut instances = vec![("H", r.clone())];
        if let Ok(hh) = r.under_tensor(&r) {
            instances.push(("H ⊗̲ H", hh));
        }
        for (name, m) in instances {
            let psi = psi_embedding(&m);
            let f = h.field();
            let morph = psi.check().all_pass();
            let injective = psi.rank() == m.dim();
            let retract = sandwich_counit(h, m.dim()).mul(f, &psi.matrix) == SparseMatrix::identity(f, m.dim());
            rec.push(
                format!("ψ embedding of {name}"),
                morph && injective && retract,
                format!("morphism {morph}, injective {injective}, (ε⊗id⊗ε)∘ψ = id {retract}"),
            );
        }
        if self.schedule.small_instances {
            self.adjunction(rec);
        }
    }

    /// `Hom_H(X, sandwich(V)) ≅ Hom_{H−H}(X, V)`.
    fn adjunction(&self, rec: &mut Recorder) {
        let r = self.regular();
        let Ok(hh) = r.under_tensor(&r) else { return };
        let vs = [("H", Bimodule::regular(self.h.clone())), ("H ⊗̲ H", hh.underlying_bimodule())];
        let xs = [("H", r.clone()), ("H ⊗̲ H", hh.clone())];
        for (xn, x) in &xs {
            for (vn, v) in &vs {
                let res = hom_space(x, &sandwich(v), &Structure::ALL).and_then(|lhs| {
                    let rhs = bimodule_hom_space(&x.underlying_bimodule(), v)?;
                    Ok((lhs.dim() == rhs.dim(), format!("{} = {}", lhs.dim(), rhs.dim())))
                });
                rec.try_push(format!("adjunction X = {xn}, V = {vn}"), res);
            }
        }
    }

    fn complexes(&self, rec: &mut Recorder) {
        let r = self.regular();
        let d = self.h.dim();
        let sch = self.schedule;
        for kind in ResolutionKind::ALL {
            let deg = match kind {
                ResolutionKind::Bar | ResolutionKind::Cobar => sch.one_sided_degree,
                _ => sch.two_sided_degree,
            };
            let cert = certify_exactness(kind, &r, deg);
            let bad: Vec<String> = cert
                .square_zero
                .iter()
                .filter(|x| !x.1)
                .map(|x| format!("d² at {}", x.0))
                .chain(cert.homotopy.iter().filter(|x| !x.1).map(|x| format!("homotopy at {}", x.0)))
                .collect();
            rec.push(format!("{} exact through degree {deg}", kind.name()), cert.all_pass(), bad.join(", "));

            // materialized checks: morphisms, ranks, intertwining homotopies, solver splittings
            let top = (1..=deg + 1).rev().find(|&k| kind.term_dim(d, d, k as isize) <= sch.materialize_limit);
            let Some(top) = top else { continue };
            let c = match kind.build(&r, top) {
                Ok(c) => c,
                Err(e) => {
                    rec.push(format!("{} materialized", kind.name()), false, e.to_string());
                    continue;
                }
            };
            let rep = c.check_differentials();
            rec.push(format!("{} differentials are morphisms, d² = 0 (to {top})", kind.name()), rep.all_pass(), rep.failures().join(", "));
            let ex = check_exactness(&c, true);
            let nonzero: Vec<String> =
                ex.iter().filter_map(|e| e.dim.filter(|x| *x > 0).map(|x| format!("H_{} = {x}", e.degree))).collect();
            let through = ex.iter().filter(|e| e.dim.is_some()).map(|e| e.degree).max().unwrap_or(-1);
            rec.push(format!("{} rank homology vanishes through {through}", kind.name()), nonzero.is_empty(), nonzero.join(", "));
            let structures = kind.splitting_structures();
            let mut objects = vec![&r];
            objects.extend(c.terms.iter());
            let mut htpy_ok = true;
            let mut checked = 0;
            for i in 0..c.terms.len() - 1 {
                let (k, src, tgt) = match kind.direction() {
                    Direction::Chain => (i as isize - 1, objects[i], objects[i + 1]),
                    Direction::Cochain => (i as isize, objects[i + 1], objects[i]),
                };
                let s = standard_homotopy(kind, &r, k);
                htpy_ok &= check_morphism_for(src, tgt, &s, &structures).all_pass();
                checked += 1;
            }
            let sname = if kind.direction() == Direction::Chain { "bicomodule" } else { "bimodule" };
            rec.push(format!("{} standard homotopy is a {sname} map", kind.name()), htpy_ok, format!("{checked} components"));
            let mut solve_deg = None;
            for k in 0..c.terms.len() - 1 {
                if objects[k].dim() * objects[k + 1].dim() <= sch.solve_limit {
                    solve_deg = Some(k);
                } else {
                    break;
                }
            }
            if let Some(sd) = solve_deg {
                let res = find_relative_splitting(&c, &structures, sd).map(|s| match s {
                    Some(s) => {
                        let v = verify_splitting(&c, &s, &structures);
                        (v.all_pass(), format!("{} components", s.maps.len()))
                    }
                    None => (false, "no splitting".into()),
                });
                rec.try_push(format!("{} {sname} splitting found by solve", kind.name()), res);
            }
        }
    }

    fn h4(&self, m: &HopfBimodule<F>, n: &HopfBimodule<F>, n_max: usize) -> Result<DoubleComplex<F>> {
        build_double_complex(Theory::H4, m, n, n_max, &self.opts.limits)
    }

    fn cohomology(&self, rec: &mut Recorder) {
        let h = self.h;
        let f = h.field();
        let sch = self.schedule;
        let r = self.regular();
        let reduced = reduced_b_complex(h, sch.reduced_degree, &self.opts.limits);
        let reduced_dims = match &reduced {
            Ok(dc) => {
                let sq = dc.check_square_zero();
                rec.push("reduced b: D² = 0", sq.all_pass(), sq.failures().join(", "));
                let c = total_cohomology(dc, true);
                let reps_ok = c
                    .representatives
                    .iter()
                    .enumerate()
                    .all(|(n, reps)| reps.iter().all(|v| dc.apply_total(n, v).is_zero() && is_coboundary(dc, n, v).ok() == Some(None)));
                rec.push("reduced b dims", true, dims_string(&c.dims));
                rec.push("reduced b representatives are non-trivial cocycles", reps_ok, "");
                Some(c.dims)
            }
            Err(e) => {
                rec.push("reduced b complex", false, e.to_string());
                None
            }
        };
        let full = self.h4(&r, &r, sch.full_degree);
        match &full {
            Ok(dc) => {
                let sq = dc.check_square_zero();
                rec.push("H4(H, H): D² = 0", sq.all_pass(), sq.failures().join(", "));
                let c = total_cohomology(dc, false);
                let agree = reduced_dims.as_ref().map(|rd| rd[..c.dims.len()] == c.dims[..]).unwrap_or(false);
                rec.push(
                    "full b agrees with reduced b",
                    agree,
                    format!("full {} / reduced {}", dims_string(&c.dims), reduced_dims.as_deref().map(dims_string).unwrap_or_default()),
                );
                let h0 = hom_space(&r, &r, &Structure::ALL).map(|s| s.dim());
                rec.try_push("H⁰ law for (H, H)", h0.map(|x| (x == c.dims[0], format!("H⁰ {} vs Hom {x}", c.dims[0]))));
                if let Some(gs) = sch.gs_degree {
                    let res = build_double_complex(Theory::Gs, &r, &r, gs, &self.opts.limits).map(|g| {
                        let gd = total_cohomology(&g, false).dims;
                        (gd[..] == c.dims[..=gs], format!("GS {} / H4 {}", dims_string(&gd), dims_string(&c.dims[..=gs])))
                    });
                    rec.try_push("GS agrees with H4", res);
                }
            }
            Err(e) => rec.push("H4(H, H) complex", false, e.to_string()),
        }
        if sch.small_instances {
            let res = r.under_tensor(&r).and_then(|hh| {
                let dc = self.h4(&hh, &r, 0)?;
                let h0 = total_cohomology(&dc, false).dims[0];
                let hom = hom_space(&hh, &r, &Structure::ALL)?.dim();
                Ok((h0 == hom, format!("H⁰ {h0} vs Hom {hom}")))
            });
            rec.try_push("H⁰ law for (H ⊗̲ H, H)", res);
        }
        if let Some(n) = sch.injective_degree {
            let res = r.under_tensor(&r).and_then(|hh| {
                let inj = sandwich(&hh.underlying_bimodule());
                let dims = total_cohomology(&self.h4(&r, &inj, n)?, false).dims;
                Ok((dims[1..].iter().all(|x| *x == 0), dims_string(&dims)))
            });
            rec.try_push("H4 vanishes on the injective sandwich(H ⊗ H)", res);
        }
        // Φ on the full b complex of low degree
        let res = (|| -> Result<(bool, String)> {
            let dc = build_double_complex(Theory::B, &r, &r, 1, &self.opts.limits)?;
            let mut ok = true;
            for cell in dc.cells() {
                let (p, q) = (cell.p, cell.q);
                let phi = adjunction_phi_matrix(h, p, q);
                let inv = adjunction_phi_inverse_matrix(h, p, q)?;
                ok &= phi.mul(f, &inv) == SparseMatrix::identity(f, phi.rows());
                let full = full_cochain_map(&dc, p, q)?.mul(f, &cell.basis_matrix(f));
                ok &= linalg::rank(f, &phi.mul(f, &full)) == cell.dim();
                if p + q <= dc.n_max {
                    let lhs = adjunction_phi_matrix(h, p, q + 1).mul(f, &full_vertical(&r, &r, p, q)).mul(f, &full);
                    ok &= lhs == reduced_vertical(h, p, q).mul(f, &phi).mul(f, &full);
                    let lhs = adjunction_phi_matrix(h, p + 1, q).mul(f, &full_horizontal(&r, &r, p, q)).mul(f, &full);
                    ok &= lhs == reduced_horizontal(h, p, q).mul(f, &phi).mul(f, &full);
                }
            }
            Ok((ok, format!("{} cells", dc.cells().count())))
        })();
        rec.try_push("Φ is a chain isomorphism onto the reduced complex", res);
    }

    fn cup(&self, rec: &mut Recorder) {
        let h = self.h;
        let f = h.field();
        let dc = match reduced_b_complex(h, self.schedule.reduced_degree, &self.opts.limits) {
            Ok(dc) => dc,
            Err(e) => return rec.push("reduced b complex", false, e.to_string()),
        };
        let coh = total_cohomology(&dc, true);
        let reps = &coh.representatives;
        let unit = reps[0][0].clone();
        let mut unit_ok = true;
        for (n, rs) in reps.iter().enumerate() {
            for v in rs {
                unit_ok &= cup_b(&dc, 0, &unit, n, v).ok().as_ref() == Some(v) && cup_b(&dc, n, v, 0, &unit).ok().as_ref() == Some(v);
            }
        }
        rec.push("unit class is a two-sided unit", unit_ok, "");

        // Leibniz on basis pairs
        let mut pairs = 0usize;
        let mut bad = Vec::new();
        let top = if self.schedule.small_instances { 2 } else { 1 };
        for a in 0..=top {
            for b in 0..=top - a {
                for i in 0..dc.total_dim(a) {
                    for j in 0..dc.total_dim(b) {
                        let x = SparseVector::basis(f, dc.total_dim(a), i);
                        let y = SparseVector::basis(f, dc.total_dim(b), j);
                        pairs += 1;
                        if check_leibniz(&dc, a, &x, b, &y).ok() != Some(true) && bad.len() < 5 {
                            bad.push(format!("({a},{i})×({b},{j})"));
                        }
                    }
                }
            }
        }
        rec.push(
            format!("Leibniz rule on basis pairs of total degree ≤ {top}"),
            bad.is_empty(),
            format!("{pairs} pairs {}", bad.join(" ")).trim_end().to_string(),
        );

        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        let mut bad = 0;
        let mut assoc_bad = 0;
        for _ in 0..self.schedule.random_pairs {
            let a = rng.gen_range(0..=2usize);
            let b = rng.gen_range(0..=2 - a);
            let x = random_vec(f, dc.total_dim(a), &mut rng);
            let y = random_vec(f, dc.total_dim(b), &mut rng);
            if check_leibniz(&dc, a, &x, b, &y).ok() != Some(true) {
                bad += 1;
            }
            let c = rng.gen_range(0..=(3 - a - b).min(1));
            let z = random_vec(f, dc.total_dim(c), &mut rng);
            let left = cup_b(&dc, a, &x, b, &y).and_then(|xy| cup_b(&dc, a + b, &xy, c, &z));
            let right = cup_b(&dc, b, &y, c, &z).and_then(|yz| cup_b(&dc, a, &x, b + c, &yz));
            if left.ok() != right.ok() {
                assoc_bad += 1;
            }
        }
        let n = self.schedule.random_pairs;
        rec.push("Leibniz rule on random pairs", bad == 0, format!("{n} pairs, {bad} failures"));
        rec.push("associativity on random triples", assoc_bad == 0, format!("{n} triples, {assoc_bad} failures"));

        let mut tested = 0;
        let mut failed = Vec::new();
        for a in 0..reps.len() {
            for b in 0..reps.len() {
                if a + b > dc.n_max {
                    continue;
                }
                for (i, x) in reps[a].iter().enumerate() {
                    for (j, y) in reps[b].iter().enumerate() {
                        tested += 1;
                        match graded_commutator_test(&dc, a, x, b, y) {
                            Ok(v) if v.is_coboundary() => {}
                            Ok(_) => failed.push(format!("[{a}.{i}, {b}.{j}]")),
                            Err(e) => failed.push(e.to_string()),
                        }
                    }
                }
            }
        }
        rec.push(
            "graded commutators of representatives are coboundaries",
            failed.is_empty(),
            format!("{tested} pairs {}", failed.join(" ")),
        );

        if self.schedule.small_instances {
            let res = (|| -> Result<(bool, String)> {
                let r = self.regular();
                let full = self.h4(&r, &r, 2)?;
                let mut ok = true;
                for _ in 0..20 {
                    let a = rng.gen_range(0..=1usize);
                    let b = rng.gen_range(0..=1 - a);
                    let x = random_vec(f, full.total_dim(a), &mut rng);
                    let y = random_vec(f, full.total_dim(b), &mut rng);
                    ok &= check_leibniz_h4(&full, &full, &full, a, &x, b, &y)?;
                }
                // cup_h4 extends cup_b through the reduction map
                for (a, b) in [(0usize, 1usize), (1, 1), (1, 0)] {
                    let x = random_vec(f, dc.total_dim(a), &mut rng);
                    let y = random_vec(f, dc.total_dim(b), &mut rng);
                    let lift = |n: usize, v: &SparseVector<F::Elem>| -> Result<SparseVector<F::Elem>> {
                        let mut out = SparseVector::zero(full.total_dim(n));
                        for (p, _) in dc.blocks(n) {
                            let raw = reduced_to_parameter(h, p, n - p)?.apply(f, &dc.component(n, p, v));
                            let cell = full.cell(p, n - p).expect("cell");
                            let coords = cell.coordinates(f, &raw).ok_or_else(|| Error::Internal("lift".into()))?;
                            out = out.add(f, &full.embed(n, p, &coords));
                        }
                        Ok(out)
                    };
                    let lhs = cup_h4(&full, &full, &full, a, &lift(a, &x)?, b, &lift(b, &y)?)?;
                    ok &= lhs == lift(a + b, &cup_b(&dc, a, &x, b, &y)?)?;
                }
                Ok((ok, "20 random pairs".into()))
            })();
            rec.try_push("H4 cup product: Leibniz and agreement with the reduced product", res);
        }
    }

    fn extensions(&self, rec: &mut Recorder) {
        let r = self.regular();
        let d = self.h.dim();
        let f = self.h.field();
        let dc = match self.h4(&r, &r, 1) {
            Ok(dc) => dc,
            Err(e) => return rec.push("H4(H, H) complex", false, e.to_string()),
        };
        let reps = total_cohomology(&dc, true).representatives[1].clone();
        let split = match split_extension(&r, &r) {
            Ok(s) => s,
            Err(e) => return rec.push("split extension", false, e.to_string()),
        };
        let mut samples: Vec<(String, Extension<F>)> = vec![("split".into(), split.clone())];

        let mut ok = true;
        let mut detail = Vec::new();
        for (i, c) in reps.iter().enumerate() {
            match extension_from_1cocycle(&dc, c) {
                Ok(e) => {
                    let exact = check_extension(&e).all_pass();
                    let nonsplit = matches!(find_section(&e), Ok(None));
                    let not_cob = matches!(is_coboundary(&dc, 1, c), Ok(None));
                    ok &= exact && nonsplit && not_cob;
                    detail.push(format!("class {i}: exact {exact}, non-split {nonsplit}"));
                    samples.push((format!("class {i}"), e));
                }
                Err(e) => {
                    ok = false;
                    detail.push(e.to_string());
                }
            }
        }
        rec.push("cocycle extensions are exact and non-split", ok, format!("{} classes; {}", reps.len(), detail.join("; ")));

        let mut ok = true;
        let zero = SparseVector::zero(dc.total_dim(1));
        let mut boundaries = vec![zero];
        for i in 0..dc.total_dim(0).min(2) {
            boundaries.push(dc.apply_total(0, &SparseVector::basis(f, dc.total_dim(0), i)));
        }
        for (i, b) in boundaries.iter().enumerate() {
            match extension_from_1cocycle(&dc, b) {
                Ok(e) => {
                    ok &= check_extension(&e).all_pass() && matches!(find_section(&e), Ok(Some(_)));
                    if i == 1 {
                        samples.push(("coboundary".into(), e));
                    }
                }
                Err(_) => ok = false,
            }
        }
        rec.push("coboundary extensions split", ok, format!("{} coboundaries", boundaries.len()));

        let mut failures = Vec::new();
        let mut count = 0;
        let mut note = |name: String, e: &Extension<F>, failures: &mut Vec<String>| {
            count += 1;
            let rep = check_extension(e);
            let divisible = e.terms.iter().all(|t| t.dim() % d == 0);
            if !(rep.all_pass() && divisible) {
                failures.push(name);
            }
        };
        for (na, a) in &samples {
            let ne = negate(a);
            note(format!("−({na})"), &ne, &mut failures);
            match baer_sum(a, &ne) {
                Ok(b) => {
                    note(format!("({na}) + −({na})"), &b, &mut failures);
                    if !matches!(find_section(&b), Ok(Some(_))) {
                        failures.push(format!("({na}) + −({na}) does not split"));
                    }
                }
                Err(e) => failures.push(e.to_string()),
            }
            for (nb, b) in &samples {
                match splice(a, b) {
                    Ok(s) => {
                        let conn = &s.maps[1];
                        let im_ok = linalg::image(f, conn) == linalg::image(f, a.inclusion());
                        let ker_ok = linalg::kernel(f, conn) == linalg::kernel(f, b.projection());
                        if !(im_ok && ker_ok) {
                            failures.push(format!("({na})♯({nb}) connecting map"));
                        }
                        note(format!("({na})♯({nb})"), &s, &mut failures);
                    }
                    Err(e) => failures.push(e.to_string()),
                }
                match baer_sum(a, b) {
                    Ok(s) => note(format!("({na}) + ({nb})"), &s, &mut failures),
                    Err(e) => failures.push(e.to_string()),
                }
                match tensor_extensions(a, b) {
                    Ok(t) => note(format!("({na})⊗({nb})"), &t.extension, &mut failures),
                    Err(e) => failures.push(e.to_string()),
                }
            }
        }
        rec.push(
            "constructed extensions are exact morphism sequences",
            failures.is_empty(),
            format!("{count} extensions {}", failures.join(", ")),
        );

        let mut failures = Vec::new();
        let mut count = 0;
        let spliced: Vec<(String, Extension<F>)> =
            samples.iter().filter_map(|(n, e)| splice(e, &split).ok().map(|s| (format!("({n})♯split"), s))).collect();
        for (na, a) in &samples {
            for (nb, b) in samples.iter().chain(&spliced) {
                count += 1;
                let lam = lambda_map(a, b).map(|(t, tgt, m)| check_chain_map(&t.extension, &tgt, &m).all_pass());
                let rho = rho_map(a, b).map(|(t, tgt, m)| check_chain_map(&t.extension, &tgt, &m).all_pass());
                if !matches!(lam, Ok(true)) {
                    failures.push(format!("λ {na}, {nb}"));
                }
                if !matches!(rho, Ok(true)) {
                    failures.push(format!("ρ {na}, {nb}"));
                }
            }
        }
        rec.push("λ and ρ are chain maps", failures.is_empty(), format!("{count} pairs {}", failures.join(", ")));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::hopf::{cyclic_group_table, group_algebra};

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain(&[Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn kc2_mod2_passes_everything() {
        let h = Arc::new(group_algebra(&PrimeField::new(2).unwrap(), &cyclic_group_table(2), None).unwrap());
        let rep = run_suite(&h, Suite::All, &VerifyOptions::default());
        assert!(rep.all_pass(), "{rep}");
        assert_eq!(rep.line("reduced b dims").unwrap().detail, "1 1 1 1");
        let one = run_suite_with_threads(&h, Suite::Cohomology, &VerifyOptions::default(), 1).unwrap();
        let two = run_suite_with_threads(&h, Suite::Cohomology, &VerifyOptions::default(), 3).unwrap();
        assert_eq!(one, two);
    }
}
