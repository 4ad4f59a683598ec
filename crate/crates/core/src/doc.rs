//! JSON interchange documents for algebras and modules. Scalars are strings
//! parsed in the context of the declared field.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{validate_algebra, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Mat;
use crate::module::{cyclic_quotient, validate_module, ModuleRep};

/// `(i, j, [(k, c)])`: `e_i e_j = sum c e_k`.
pub type TableEntry = (usize, usize, Vec<(usize, String)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: usize,
    pub radical: Vec<usize>,
    pub table: Vec<TableEntry>,
}

impl AlgebraDoc {
    pub fn from_algebra(a: &AlgebraPresentation) -> Self {
        let table = a
            .table()
            .map(|(i, j, terms)| (i, j, terms.iter().map(|(k, c)| (*k, c.to_string())).collect()))
            .collect();
        AlgebraDoc {
            name: a.name().to_string(),
            field: a.field(),
            dim: a.dim(),
            basis: a.basis_names().to_vec(),
            unit: a.unit(),
            radical: a.radical().to_vec(),
            table,
        }
    }

    /// Parses scalars and runs the full axiom check.
    pub fn to_algebra(&self) -> Result<AlgebraPresentation> {
        self.field.check()?;
        if self.basis.len() != self.dim {
            return Err(Error::MalformedAlgebra(format!(
                "dim is {} but {} basis names are given",
                self.dim,
                self.basis.len()
            )));
        }
        let table = self
            .table
            .iter()
            .map(|(i, j, terms)| {
                let parsed = terms
                    .iter()
                    .map(|(k, c)| Ok((*k, self.field.parse(c)?)))
                    .collect::<Result<Vec<(usize, Scalar)>>>()?;
                Ok((*i, *j, parsed))
            })
            .collect::<Result<Vec<_>>>()?;
        let a = AlgebraPresentation::new(
            self.name.clone(),
            self.field,
            self.basis.clone(),
            self.unit,
            self.radical.clone(),
            table,
        )?;
        let report = validate_algebra(&a);
        if let Some(v) = report.violations.first() {
            return Err(Error::MalformedAlgebra(format!(
                "{} fails {:?} at {:?}",
                self.name, v.axiom, v.witness
            )));
        }
        Ok(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleBody {
    Action { dim: usize, action: Vec<Vec<Vec<String>>> },
    Cyclic { cyclic: Vec<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub name: String,
    pub algebra: String,
    #[serde(flatten)]
    pub body: ModuleBody,
}

impl ModuleDoc {
    pub fn from_module(name: impl Into<String>, algebra: impl Into<String>, m: &ModuleRep) -> Self {
        let action = m
            .actions()
            .iter()
            .map(|a| a.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect())
            .collect();
        ModuleDoc {
            name: name.into(),
            algebra: algebra.into(),
            body: ModuleBody::Action { dim: m.dim(), action },
        }
    }

    /// Builds over `a` (which must be the algebra named by `self.algebra`)
    /// and validates the module axioms.
    pub fn to_module(&self, a: &Arc<AlgebraPresentation>) -> Result<ModuleRep> {
        let field = a.field();
        let m = match &self.body {
            ModuleBody::Action { dim, action } => {
                let mats = action
                    .iter()
                    .enumerate()
                    .map(|(i, rows)| parse_matrix(field, *dim, rows).map_err(|e| context(&self.name, i, e)))
                    .collect::<Result<Vec<_>>>()?;
                ModuleRep::new(a.clone(), *dim, mats)?
            }
            ModuleBody::Cyclic { cyclic } => {
                let gens = cyclic
                    .iter()
                    .map(|g| {
                        if g.len() != a.dim() {
                            return Err(Error::MalformedModule(format!(
                                "{}: generator has {} coordinates, expected {}",
                                self.name,
                                g.len(),
                                a.dim()
                            )));
                        }
                        g.iter().map(|c| Ok(field.parse(c)?)).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                cyclic_quotient(a, &gens)?
            }
        };
        let report = validate_module(&m);
        if let Some(v) = report.violations.first() {
            return Err(Error::MalformedModule(format!(
                "{} fails {:?} at {:?}",
                self.name, v.axiom, v.witness
            )));
        }
        Ok(m)
    }
}

fn context(name: &str, index: usize, e: Error) -> Error {
    match e {
        Error::MalformedModule(msg) => Error::MalformedModule(format!("{name}: action {index}: {msg}")),
        other => other,
    }
}

fn parse_matrix(field: FieldSpec, dim: usize, rows: &[Vec<String>]) -> Result<Mat> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::MalformedModule(format!("expected a {dim}x{dim} matrix")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|c| Ok(field.parse(c)?)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_rows(field, parsed, dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_quantum_ci, build_truncated_polynomial};
    use crate::error::ScalarError;

    #[test]
    fn algebra_document_round_trip() {
        let a = build_quantum_ci(FieldSpec::Rational, &FieldSpec::Rational.from_i64(2)).unwrap();
        let doc = AlgebraDoc::from_algebra(&a);
        let text = serde_json::to_string(&doc).unwrap();
        let back: AlgebraDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let b = back.to_algebra().unwrap();
        assert!(b.same_structure(&a));
        assert_eq!(b.name(), a.name());
    }

    #[test]
    fn module_documents() {
        let a = Arc::new(build_truncated_polynomial(FieldSpec::Rational, &[2]).unwrap());
        let cyc: ModuleDoc = serde_json::from_str(r#"{"name":"k","algebra":"dual","cyclic":[["0","1"]]}"#).unwrap();
        let k = cyc.to_module(&a).unwrap();
        assert_eq!(k.dim(), 1);
        let explicit = ModuleDoc::from_module("k", "dual", &k);
        let text = serde_json::to_string(&explicit).unwrap();
        assert!(text.contains("\"action\""));
        let back: ModuleDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_module(&a).unwrap(), k);
    }

    #[test]
    fn bad_scalars_and_axioms_rejected() {
        let a = Arc::new(build_truncated_polynomial(FieldSpec::Prime { p: 2 }, &[2]).unwrap());
        let doc: ModuleDoc =
            serde_json::from_str(r#"{"name":"m","algebra":"a","dim":1,"action":[[["1"]],[["1/2"]]]}"#).unwrap();
        assert!(matches!(doc.to_module(&a), Err(Error::Scalar(ScalarError::WrongField { .. }))));
        // x acting invertibly contradicts x^2 = 0
        let doc: ModuleDoc =
            serde_json::from_str(r#"{"name":"m","algebra":"a","dim":1,"action":[[["1"]],[["1"]]]}"#).unwrap();
        assert!(matches!(doc.to_module(&a), Err(Error::MalformedModule(_))));
    }
}
