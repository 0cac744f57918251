//! JSON spec files for Hopf algebras and Hopf bimodules.
//!
//! Coefficients are strings parsed in the declared field, so files stay exact.
//! Sparse entries are arrays: `mul` holds `[i, j, k, c]` for `e_i·e_j ⊇ c·e_k`,
//! `comul` holds `[i, j, k, c]` for `Δ(e_i) ⊇ c·e_j⊗e_k`, `antipode` holds
//! `[i, j, c]` for `S(e_i) ⊇ c·e_j`, and `unit` holds `[i, c]`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bimodule::HopfBimodule;
use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, PrimeField, Rationals};
use crate::hopf::FiniteHopfAlgebra;
use crate::linalg::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    /// Only `"Q"` is accepted.
    Named(String),
    Prime {
        p: u32,
    },
}

impl FieldSpec {
    pub fn descriptor(&self) -> Result<FieldDescriptor> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(FieldDescriptor::Rationals),
            FieldSpec::Named(s) => Err(Error::Parse(format!("unknown field {s:?}; use \"Q\" or {{\"p\": prime}}"))),
            FieldSpec::Prime { p } => {
                PrimeField::new(*p)?;
                Ok(FieldDescriptor::Prime(*p))
            }
        }
    }

    pub fn from_descriptor(d: FieldDescriptor) -> Self {
        match d {
            FieldDescriptor::Rationals => FieldSpec::Named("Q".into()),
            FieldDescriptor::Prime(p) => FieldSpec::Prime { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub mul: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<(usize, String)>,
    pub comul: Vec<(usize, usize, usize, String)>,
    pub counit: Vec<String>,
    pub antipode: Vec<(usize, usize, String)>,
}

/// An algebra loaded from a file, over whichever field the file declares.
#[derive(Clone, Debug)]
pub enum LoadedAlgebra {
    Rational(FiniteHopfAlgebra<Rationals>),
    Prime(FiniteHopfAlgebra<PrimeField>),
}

impl LoadedAlgebra {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            LoadedAlgebra::Rational(h) => h.field().descriptor(),
            LoadedAlgebra::Prime(h) => h.field().descriptor(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            LoadedAlgebra::Rational(h) => h.dim(),
            LoadedAlgebra::Prime(h) => h.dim(),
        }
    }
}

fn coeff<F: Field>(field: &F, s: &str, what: &str) -> Result<F::Elem> {
    field.parse(s).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn in_range(what: &str, idx: &[usize], bounds: &[usize]) -> Result<()> {
    for (i, b) in idx.iter().zip(bounds) {
        if i >= b {
            return Err(Error::Parse(format!("{what}: index {i} out of range (bound {b})")));
        }
    }
    Ok(())
}

fn triplets_to_matrix<F: Field>(
    field: &F,
    rows: usize,
    cols: usize,
    entries: impl IntoIterator<Item = Result<(usize, usize, F::Elem)>>,
) -> Result<SparseMatrix<F::Elem>> {
    let t = entries.into_iter().collect::<Result<Vec<_>>>()?;
    SparseMatrix::from_triplets(field, rows, cols, t)
}

/// One key per line, and one sparse entry per line inside arrays of arrays.
fn compact_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("spec serializes");
    let serde_json::Value::Object(map) = v else { unreachable!("specs are objects") };
    let fields: Vec<String> = map
        .iter()
        .map(|(k, v)| {
            let body = match v {
                serde_json::Value::Array(items) if items.iter().any(|x| x.is_array()) => {
                    let rows: Vec<String> = items.iter().map(|x| format!("    {x}")).collect();
                    format!("[\n{}\n  ]", rows.join(",\n"))
                }
                other => other.to_string(),
            };
            format!("  {}: {body}", serde_json::Value::String(k.clone()))
        })
        .collect();
    format!("{{\n{}\n}}", fields.join(",\n"))
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        compact_json(self)
    }

    /// Structure constants in `field`, checking shapes and indices but not the axioms.
    pub fn build_unchecked<F: Field>(&self, field: &F) -> Result<FiniteHopfAlgebra<F>> {
        let d = self.dim;
        if d == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let labels = match &self.labels {
            Some(l) if l.len() != d => return Err(Error::Parse(format!("{} labels for dimension {d}", l.len()))),
            Some(l) => l.clone(),
            None => (0..d).map(|i| format!("e{i}")).collect(),
        };
        if self.counit.len() != d {
            return Err(Error::Parse(format!("counit has {} entries for dimension {d}", self.counit.len())));
        }
        let mu = triplets_to_matrix(
            field,
            d,
            d * d,
            self.mul.iter().map(|(i, j, k, c)| {
                in_range("mul", &[*i, *j, *k], &[d, d, d])?;
                Ok((*k, i * d + j, coeff(field, c, "mul")?))
            }),
        )?;
        let eta = triplets_to_matrix(
            field,
            d,
            1,
            self.unit.iter().map(|(i, c)| {
                in_range("unit", &[*i], &[d])?;
                Ok((*i, 0, coeff(field, c, "unit")?))
            }),
        )?;
        let delta = triplets_to_matrix(
            field,
            d * d,
            d,
            self.comul.iter().map(|(i, j, k, c)| {
                in_range("comul", &[*i, *j, *k], &[d, d, d])?;
                Ok((j * d + k, *i, coeff(field, c, "comul")?))
            }),
        )?;
        let eps = triplets_to_matrix(field, 1, d, self.counit.iter().enumerate().map(|(i, c)| Ok((0, i, coeff(field, c, "counit")?))))?;
        let antipode = triplets_to_matrix(
            field,
            d,
            d,
            self.antipode.iter().map(|(i, j, c)| {
                in_range("antipode", &[*i, *j], &[d, d])?;
                Ok((*j, *i, coeff(field, c, "antipode")?))
            }),
        )?;
        FiniteHopfAlgebra::new_unchecked(field, labels, mu, eta, delta, eps, antipode)
    }

    pub fn load_unchecked(&self) -> Result<LoadedAlgebra> {
        Ok(match self.field.descriptor()? {
            FieldDescriptor::Rationals => LoadedAlgebra::Rational(self.build_unchecked(&Rationals)?),
            FieldDescriptor::Prime(p) => LoadedAlgebra::Prime(self.build_unchecked(&PrimeField::new(p)?)?),
        })
    }

    /// Loads and requires every Hopf axiom to hold.
    pub fn load(&self) -> Result<LoadedAlgebra> {
        let h = self.load_unchecked()?;
        let report = match &h {
            LoadedAlgebra::Rational(h) => h.check_axioms(),
            LoadedAlgebra::Prime(h) => h.check_axioms(),
        };
        if !report.all_pass() {
            return Err(Error::Input(format!("Hopf axioms fail: {}", report.failures().join(", "))));
        }
        Ok(h)
    }

    pub fn from_algebra<F: Field>(h: &FiniteHopfAlgebra<F>) -> Self {
        let f = h.field();
        let d = h.dim();
        let fmt = |x: &F::Elem| f.format(x);
        let mut mul: Vec<_> = h.mu().triplets().map(|(k, c, x)| (c / d, c % d, k, fmt(x))).collect();
        mul.sort();
        let unit = h.eta().triplets().map(|(i, _, x)| (i, fmt(x))).collect();
        let mut comul: Vec<_> = h.delta().triplets().map(|(r, i, x)| (i, r / d, r % d, fmt(x))).collect();
        comul.sort();
        let counit = (0..d).map(|i| h.epsilon().get(0, i).map(&fmt).unwrap_or_else(|| "0".into())).collect();
        let mut antipode: Vec<_> = h.antipode().triplets().map(|(j, i, x)| (i, j, fmt(x))).collect();
        antipode.sort();
        AlgebraSpec {
            field: FieldSpec::from_descriptor(f.descriptor()),
            dim: d,
            labels: Some(h.labels().to_vec()),
            mul,
            unit,
            comul,
            counit,
            antipode,
        }
    }
}

/// A Hopf bimodule over an algebra given by another file.
///
/// `left_action` holds `[h, m, k, c]` for `e_h·m_m ⊇ c·m_k`, `right_action`
/// holds `[m, h, k, c]` for `m_m·e_h ⊇ c·m_k`, `left_coaction` holds
/// `[m, h, k, c]` for `δ_L(m_m) ⊇ c·e_h⊗m_k`, and `right_coaction` holds
/// `[m, k, h, c]` for `δ_R(m_m) ⊇ c·m_k⊗e_h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    /// Path of the algebra file, relative to this file.
    pub algebra: String,
    pub dim: usize,
    pub left_action: Vec<(usize, usize, usize, String)>,
    pub right_action: Vec<(usize, usize, usize, String)>,
    pub left_coaction: Vec<(usize, usize, usize, String)>,
    pub right_coaction: Vec<(usize, usize, usize, String)>,
}

impl BimoduleSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn algebra_path(&self, own_path: &Path) -> PathBuf {
        own_path.parent().unwrap_or(Path::new(".")).join(&self.algebra)
    }

    pub fn to_json(&self) -> String {
        compact_json(self)
    }

    /// Shapes and indices only; call `check` on the result for the axioms.
    pub fn build_unchecked<F: Field>(&self, algebra: Arc<FiniteHopfAlgebra<F>>) -> Result<HopfBimodule<F>> {
        let f = algebra.field().clone();
        let d = algebra.dim();
        let n = self.dim;
        let b = [d, n, n];
        let la = triplets_to_matrix(
            &f,
            n,
            d * n,
            self.left_action.iter().map(|(h, m, k, c)| {
                in_range("left_action", &[*h, *m, *k], &b)?;
                Ok((*k, h * n + m, coeff(&f, c, "left_action")?))
            }),
        )?;
        let ra = triplets_to_matrix(
            &f,
            n,
            n * d,
            self.right_action.iter().map(|(m, h, k, c)| {
                in_range("right_action", &[*m, *h, *k], &[n, d, n])?;
                Ok((*k, m * d + h, coeff(&f, c, "right_action")?))
            }),
        )?;
        let lc = triplets_to_matrix(
            &f,
            d * n,
            n,
            self.left_coaction.iter().map(|(m, h, k, c)| {
                in_range("left_coaction", &[*m, *h, *k], &[n, d, n])?;
                Ok((h * n + k, *m, coeff(&f, c, "left_coaction")?))
            }),
        )?;
        let rc = triplets_to_matrix(
            &f,
            n * d,
            n,
            self.right_coaction.iter().map(|(m, k, h, c)| {
                in_range("right_coaction", &[*m, *k, *h], &[n, n, d])?;
                Ok((k * d + h, *m, coeff(&f, c, "right_coaction")?))
            }),
        )?;
        HopfBimodule::new(algebra, n, la, ra, lc, rc)
    }

    pub fn from_bimodule<F: Field>(m: &HopfBimodule<F>, algebra_path: &str) -> Self {
        let f = m.field();
        let d = m.algebra().dim();
        let n = m.dim();
        let fmt = |x: &F::Elem| f.format(x);
        let sorted = |mut v: Vec<(usize, usize, usize, String)>| {
            v.sort();
            v
        };
        BimoduleSpec {
            algebra: algebra_path.into(),
            dim: n,
            left_action: sorted(m.left_action().triplets().map(|(k, c, x)| (c / n, c % n, k, fmt(x))).collect()),
            right_action: sorted(m.right_action().triplets().map(|(k, c, x)| (c / d, c % d, k, fmt(x))).collect()),
            left_coaction: sorted(m.left_coaction().triplets().map(|(r, mm, x)| (mm, r / n, r % n, fmt(x))).collect()),
            right_coaction: sorted(m.right_coaction().triplets().map(|(r, mm, x)| (mm, r / d, r % d, fmt(x))).collect()),
        }
    }
}

/// The example algebras shipped in `data/`, by file stem.
pub const BUNDLED: &[(&str, &str)] = &[
    ("kc2_q", include_str!("../data/kc2_q.json")),
    ("kc2_gf2", include_str!("../data/kc2_gf2.json")),
    ("ks3_q", include_str!("../data/ks3_q.json")),
    ("ks3_dual_q", include_str!("../data/ks3_dual_q.json")),
    ("taft2_q", include_str!("../data/taft2_q.json")),
    ("taft3_gf7", include_str!("../data/taft3_gf7.json")),
];

pub fn bundled(name: &str) -> Option<LoadedAlgebra> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| AlgebraSpec::parse(text).and_then(|s| s.load()).expect("bundled files are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::direct_sum;
    use crate::hopf::{cyclic_group_table, dual_hopf_algebra, group_algebra, symmetric_group_s3_table, taft_algebra};

    fn expected(name: &str) -> AlgebraSpec {
        let q = Rationals;
        match name {
            "kc2_q" => AlgebraSpec::from_algebra(&group_algebra(&q, &cyclic_group_table(2), None).unwrap()),
            "kc2_gf2" => AlgebraSpec::from_algebra(&group_algebra(&PrimeField::new(2).unwrap(), &cyclic_group_table(2), None).unwrap()),
            "ks3_q" => {
                let (t, l) = symmetric_group_s3_table();
                AlgebraSpec::from_algebra(&group_algebra(&q, &t, Some(l)).unwrap())
            }
            "ks3_dual_q" => {
                let (t, l) = symmetric_group_s3_table();
                AlgebraSpec::from_algebra(&dual_hopf_algebra(&group_algebra(&q, &t, Some(l)).unwrap()))
            }
            "taft2_q" => AlgebraSpec::from_algebra(&taft_algebra(&q, 2, &q.from_i64(-1)).unwrap()),
            "taft3_gf7" => {
                let f = PrimeField::new(7).unwrap();
                AlgebraSpec::from_algebra(&taft_algebra(&f, 3, &f.from_i64(2)).unwrap())
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn bundled_files_match_builders() {
        for (name, text) in BUNDLED {
            let spec = AlgebraSpec::parse(text).unwrap();
            assert_eq!(spec, expected(name), "{name}");
            assert!(spec.load().is_ok(), "{name}");
        }
        assert_eq!(bundled("taft3_gf7").unwrap().dim(), 9);
        assert_eq!(bundled("ks3_dual_q").unwrap().descriptor(), FieldDescriptor::Rationals);
    }

    #[test]
    fn round_trip_and_errors() {
        let spec = AlgebraSpec::parse(BUNDLED[0].1).unwrap();
        assert_eq!(AlgebraSpec::parse(&spec.to_json()).unwrap(), spec);
        assert!(matches!(AlgebraSpec::parse("{"), Err(Error::Parse(_))));
        let mut bad = spec.clone();
        bad.field = FieldSpec::Named("R".into());
        assert!(matches!(bad.load(), Err(Error::Parse(_))));
        let mut bad = spec.clone();
        bad.mul.push((5, 0, 0, "1".into()));
        assert!(matches!(bad.load(), Err(Error::Parse(_))));
        let mut bad = spec.clone();
        bad.counit[1] = "0".into();
        let h = bad.load_unchecked().unwrap();
        let LoadedAlgebra::Rational(h) = h else { panic!() };
        assert!(h.check_axioms().failures().contains(&"counit"));
        assert!(matches!(bad.load(), Err(Error::Input(_))));
        let mut bad = spec;
        bad.field = FieldSpec::Prime { p: 4 };
        assert!(bad.load().is_err());
    }

    #[test]
    fn bimodule_round_trip() {
        let LoadedAlgebra::Prime(h) = bundled("kc2_gf2").unwrap() else { panic!() };
        let h = Arc::new(h);
        let r = HopfBimodule::regular(h.clone());
        let s = direct_sum(&r, &r.under_tensor(&r).unwrap()).unwrap().module;
        let spec = BimoduleSpec::from_bimodule(&s, "kc2_gf2.json");
        let back = BimoduleSpec::parse(&spec.to_json()).unwrap().build_unchecked(h).unwrap();
        assert!(back.check().all_pass());
        assert_eq!(back.left_coaction(), s.left_coaction());
        assert_eq!(back.right_action(), s.right_action());
        assert_eq!(spec.algebra_path(Path::new("/x/y/m.json")), PathBuf::from("/x/y/kc2_gf2.json"));
    }
}
