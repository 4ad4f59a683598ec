//! Exact computation of Ext groups, syzygies and extension degrees over
//! finite-dimensional algebras, with certificates separating proven
//! infinite-range conclusions from finite observations.

pub mod algebra;
pub mod audit;
pub mod doc;
pub mod error;
pub mod field;
pub mod linalg;
pub mod module;
pub mod ext;
pub mod resolution;

pub use algebra::{AlgebraPresentation, LocalityWitness, ValidationReport};
pub use error::{Error, LinalgError, Result, ScalarError};
pub use field::{FieldSpec, Scalar};
pub use linalg::Mat;
pub use module::{IsoCertificate, ModuleRep};
pub use ext::{Certificate, Degree, ExtDegreeReport, ExtProfile, ExtStatus};
pub use audit::{FamilyAuditReport, FamilyMember, PdReport, PdValue};
