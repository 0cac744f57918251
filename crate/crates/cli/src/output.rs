//! JSON and text renderings of results. The JSON structs are the documented
//! schema and deserialize back from the printed output.

use std::fmt;
use std::path::Path;

use hopfcoh::cohomology::{CohomologyResult, Theory};
use hopfcoh::cup::CupTable;
use hopfcoh::linalg::SparseVector;
use hopfcoh::Field;
use serde::{Deserialize, Serialize};

pub const COBOUNDARY: &str = "coboundary";
pub const NOT_COBOUNDARY: &str = "not a coboundary";

pub fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// A sparse vector as `[index, "coefficient"]` pairs.
pub type SparseJson = Vec<(usize, String)>;

fn sparse<F: Field>(f: &F, v: &SparseVector<F::Elem>) -> SparseJson {
    v.entries().iter().map(|(i, c)| (*i, f.format(c))).collect()
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyJson {
    pub field: String,
    pub theory: String,
    pub max_degree: usize,
    /// Coefficient files, `null` for the regular bimodule H.
    pub module: Option<String>,
    pub comodule: Option<String>,
    pub dims: Vec<usize>,
    pub total_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    /// Cocycles of the total complex whose classes form a basis of `H^n`.
    pub representatives: Vec<Vec<SparseJson>>,
}

impl CohomologyJson {
    pub fn new<F: Field>(
        f: &F,
        theory: Theory,
        max_degree: usize,
        module: Option<&Path>,
        comodule: Option<&Path>,
        r: &CohomologyResult<F::Elem>,
    ) -> Self {
        CohomologyJson {
            field: f.descriptor().to_string(),
            theory: theory.name().into(),
            max_degree,
            module: module.map(|p| p.display().to_string()),
            comodule: comodule.map(|p| p.display().to_string()),
            dims: r.dims.clone(),
            total_dims: r.total_dims.clone(),
            ranks: r.ranks.clone(),
            representatives: r.representatives.iter().map(|vs| vs.iter().map(|v| sparse(f, v)).collect()).collect(),
        }
    }
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductJson {
    /// `[degree, index]` of each factor.
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub degree: usize,
    /// The product class in the degree-`degree` representative basis.
    pub coordinates: Vec<String>,
    /// `"coboundary"` or `"not a coboundary"` for `f⌣g − (−1)^{ab} g⌣f`.
    pub commutator: String,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupJson {
    pub field: String,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub products: Vec<ProductJson>,
}

impl CupJson {
    pub fn new<F: Field>(f: &F, max_degree: usize, t: &CupTable<F::Elem>) -> Self {
        let products = t
            .entries
            .iter()
            .map(|e| ProductJson {
                left: e.left,
                right: e.right,
                degree: e.left.0 + e.right.0,
                coordinates: e.coordinates.iter().map(|c| f.format(c)).collect(),
                commutator: if e.commutator_coboundary { COBOUNDARY } else { NOT_COBOUNDARY }.into(),
            })
            .collect();
        CupJson { field: f.descriptor().to_string(), max_degree, dims: t.dims.clone(), products }
    }
}

fn class(deg: usize, i: usize) -> String {
    format!("[{deg}.{i}]")
}

impl fmt::Display for CupJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cup products over {}; dim H^n = {}", self.field, join(&self.dims))?;
        for p in &self.products {
            let terms: Vec<String> = p
                .coordinates
                .iter()
                .enumerate()
                .filter(|(_, c)| c.as_str() != "0")
                .map(|(k, c)| if c == "1" { class(p.degree, k) } else { format!("{c}·{}", class(p.degree, k)) })
                .collect();
            let value = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            writeln!(f, "{} ⌣ {} = {value}    commutator: {}", class(p.left.0, p.left.1), class(p.right.0, p.right.1), p.commutator)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfcoh::cohomology::{reduced_b_complex, total_cohomology, Limits};
    use hopfcoh::cup::cup_table;
    use hopfcoh::hopf::{cyclic_group_table, group_algebra};
    use hopfcoh::PrimeField;
    use std::sync::Arc;

    #[test]
    fn schemas_round_trip() {
        let f = PrimeField::new(2).unwrap();
        let h = Arc::new(group_algebra(&f, &cyclic_group_table(2), None).unwrap());
        let dc = reduced_b_complex(&h, 2, &Limits::default()).unwrap();
        let r = total_cohomology(&dc, true);
        let c = CohomologyJson::new(&f, Theory::B, 2, None, None, &r);
        let back: CohomologyJson = serde_json::from_str(&serde_json::to_string_pretty(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        let t = CupJson::new(&f, 2, &cup_table(&dc, &r.representatives).unwrap());
        let back: CupJson = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.to_string().lines().count(), 1 + t.products.len());
    }
}
