//! Ext dimensions and certified extension-degree reports.
//!
//! `Hom_A(F_i, N)` is identified with `N^{b_i}` by evaluating on free
//! generators. If generator `j` of `F_{i+1}` maps to `sum_l a_jl g_l`, the
//! coboundary `Hom(F_i, N) -> Hom(F_{i+1}, N)` has block `(j, l)` equal to the
//! action of `a_jl` on `N`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, LinalgError, Result};
use crate::linalg::Mat;
use crate::module::{direct_sum, free_module, ModuleRep};
use crate::resolution::{detect_periodicity, detect_termination, PeriodicityCertificate, Resolution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtProfile {
    pub source: ModuleRep,
    pub target: ModuleRep,
    /// `dims[i] = dim Ext^i(source, target)` for `0 <= i <= cutoff`.
    pub dims: Vec<usize>,
}

impl ExtProfile {
    pub fn last_nonzero(&self) -> Option<usize> {
        last_nonzero(&self.dims)
    }
}

pub fn last_nonzero(dims: &[usize]) -> Option<usize> {
    dims.iter().rposition(|&d| d != 0)
}

/// Coboundary `Hom(F_i, n) -> Hom(F_{i+1}, n)`. The resolution must be
/// computed through step `i + 1` or have terminated.
pub fn hom_coboundary(r: &Resolution, n: &ModuleRep, i: usize) -> Mat {
    let field = n.algebra().field();
    let dn = n.dim();
    let src = r.rank_at(i).expect("resolution computed through step i");
    let entries = r.differential_entries(i + 1);
    let mut delta = Mat::zeros(field, entries.len() * dn, src * dn);
    for (j, gen) in entries.iter().enumerate() {
        for (l, a) in gen.iter().enumerate() {
            if a.iter().all(|c| c.is_zero()) {
                continue;
            }
            delta.write_block(j * dn, l * dn, &n.act(a));
        }
    }
    delta
}

/// `dim Ext^i(M, n)` for `0 <= i <= cutoff`, where `M` is the module `r` resolves.
pub fn ext_dims_from(r: &mut Resolution, n: &ModuleRep, cutoff: usize) -> Result<Vec<usize>> {
    if !r.module().same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    r.extend_to(cutoff + 1)?;
    let dn = n.dim();
    let mut dims = Vec::with_capacity(cutoff + 1);
    let mut prev: Option<(Mat, usize)> = None;
    for i in 0..=cutoff {
        let delta = hom_coboundary(r, n, i);
        if let Some((p, _)) = &prev {
            if !delta.mul(p).is_zero() {
                return Err(LinalgError::NotAComplex.into());
            }
        }
        let rank = delta.rank();
        let kernel = r.rank_at(i).expect("computed") * dn - rank;
        let image = prev.as_ref().map_or(0, |(_, r)| *r);
        dims.push(kernel - image);
        prev = Some((delta, rank));
    }
    Ok(dims)
}

/// Ext profile computed from a minimal resolution when the algebra is local.
pub fn ext_dims(m: &ModuleRep, n: &ModuleRep, cutoff: usize) -> Result<ExtProfile> {
    let mut r = Resolution::auto(m.clone());
    let dims = ext_dims_from(&mut r, n, cutoff)?;
    Ok(ExtProfile {
        source: m.clone(),
        target: n.clone(),
        dims,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtStatus {
    Exact(Degree),
    LowerBound(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    FinitePd { pd: usize },
    Periodicity { start: usize, period: usize },
    CutoffOnly,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Certificate::CutoffOnly)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtDegreeReport {
    pub module: ModuleRep,
    pub cutoff: usize,
    /// Through `cutoff`, or through `pd` when the resolution terminates later.
    pub dims: Vec<usize>,
    pub last_nonzero: Option<usize>,
    pub status: ExtStatus,
    pub certificate: Certificate,
    /// The sup over an empty set of degrees is reported as 0.
    pub zero_module: bool,
}

impl ExtDegreeReport {
    /// `Some(v)` only for certified finite values.
    pub fn certified_finite(&self) -> Option<usize> {
        match self.status {
            ExtStatus::Exact(Degree::Finite(v)) => Some(v),
            _ => None,
        }
    }

    pub fn certified_infinite(&self) -> bool {
        self.status == ExtStatus::Exact(Degree::Infinite)
    }
}

/// Termination and periodicity evidence for a resolution, gathered once and
/// shared across targets.
#[derive(Clone, Debug)]
pub struct Evidence {
    pub termination: Option<usize>,
    pub periodicity: Option<PeriodicityCertificate>,
    /// False for non-local algebras, where only cutoff observations are made.
    pub certifiable: bool,
}

/// Extends `r` past `cutoff` and looks for a termination step or a syzygy
/// repetition `Omega^s ~ Omega^{s+p}` with `s + p <= cutoff`.
pub fn gather_evidence(r: &mut Resolution, cutoff: usize, seed: u64) -> Result<Evidence> {
    r.extend_to(cutoff + 1)?;
    if !r.module().algebra().is_local() {
        return Ok(Evidence {
            termination: None,
            periodicity: None,
            certifiable: false,
        });
    }
    let termination = detect_termination(r);
    let periodicity = match termination {
        Some(_) => None,
        None => detect_periodicity(r, cutoff, seed),
    };
    Ok(Evidence {
        termination,
        periodicity,
        certifiable: true,
    })
}

/// Ext profile against `n` with the strongest available certificate.
pub fn ext_degree_against(
    r: &mut Resolution,
    evidence: &Evidence,
    n: &ModuleRep,
    cutoff: usize,
) -> Result<ExtDegreeReport> {
    let module = r.module().clone();
    let zero_module = module.is_zero();
    if !evidence.certifiable {
        let dims = ext_dims_from(r, n, cutoff)?;
        let last = last_nonzero(&dims);
        return Ok(ExtDegreeReport {
            module,
            cutoff,
            dims,
            last_nonzero: last,
            status: ExtStatus::LowerBound(last.unwrap_or(0)),
            certificate: Certificate::CutoffOnly,
            zero_module,
        });
    }
    if let Some(pd) = evidence.termination {
        let dims = ext_dims_from(r, n, cutoff.max(pd))?;
        let last = last_nonzero(&dims);
        return Ok(ExtDegreeReport {
            module,
            cutoff,
            dims,
            last_nonzero: last,
            status: ExtStatus::Exact(Degree::Finite(last.unwrap_or(0))),
            certificate: Certificate::FinitePd { pd },
            zero_module,
        });
    }
    let dims = ext_dims_from(r, n, cutoff)?;
    let last = last_nonzero(&dims);
    let (status, certificate) = match &evidence.periodicity {
        Some(c) => {
            let (s, p) = (c.start, c.period);
            let status = if dims[s + 1..=s + p].iter().any(|&d| d != 0) {
                ExtStatus::Exact(Degree::Infinite)
            } else {
                ExtStatus::Exact(Degree::Finite(last.unwrap_or(0)))
            };
            (status, Certificate::Periodicity { start: s, period: p })
        }
        None => (ExtStatus::LowerBound(last.unwrap_or(0)), Certificate::CutoffOnly),
    };
    Ok(ExtDegreeReport {
        module,
        cutoff,
        dims,
        last_nonzero: last,
        status,
        certificate,
        zero_module,
    })
}

/// Certified report on `sup { i : Ext^i(m, m) != 0 }`.
pub fn self_ext_degree(m: &ModuleRep, cutoff: usize, seed: u64) -> Result<ExtDegreeReport> {
    let mut r = Resolution::auto(m.clone());
    let evidence = gather_evidence(&mut r, cutoff, seed)?;
    ext_degree_against(&mut r, &evidence, m, cutoff)
}

/// [`self_ext_degree`] of `m + A`.
pub fn ext_with_ring_degree(m: &ModuleRep, cutoff: usize, seed: u64) -> Result<ExtDegreeReport> {
    let sum = direct_sum(m, &free_module(m.algebra(), 1))?;
    self_ext_degree(&sum, cutoff, seed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmReport {
    pub module: ModuleRep,
    pub cutoff: usize,
    /// `dim Ext^i(m, A)`.
    pub dims: Vec<usize>,
    /// Least `d` with `Ext^i(m, A) = 0` for all `d < i` in the certified or
    /// observed range; `None` when nonvanishing is certified to recur.
    pub vanishing_bound: Option<usize>,
    pub certificate: Certificate,
    pub certified: bool,
    pub in_cm: Option<bool>,
}

pub fn cm_status(m: &ModuleRep, cutoff: usize, seed: u64) -> Result<CmReport> {
    let mut r = Resolution::auto(m.clone());
    let evidence = gather_evidence(&mut r, cutoff, seed)?;
    let ring = free_module(m.algebra(), 1);
    let report = ext_degree_against(&mut r, &evidence, &ring, cutoff)?;
    cm_from_report(report)
}

fn cm_from_report(report: ExtDegreeReport) -> Result<CmReport> {
    let certified = report.certificate.is_certified();
    let vanishing_bound = match report.status {
        ExtStatus::Exact(Degree::Infinite) => None,
        _ => Some(report.last_nonzero.unwrap_or(0)),
    };
    let observed_higher = report.dims.iter().skip(1).any(|&d| d != 0);
    let in_cm = if observed_higher {
        Some(false)
    } else if certified {
        Some(true)
    } else {
        None
    };
    Ok(CmReport {
        module: report.module,
        cutoff: report.cutoff,
        dims: report.dims,
        vanishing_bound,
        certificate: report.certificate,
        certified,
        in_cm,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{base_field, build_quantum_ci, build_truncated_polynomial, AlgebraPresentation};
    use crate::field::{FieldSpec, Scalar};
    use crate::linalg::{cohomology_dim, Subspace};
    use crate::module::{cyclic_quotient, hom_basis};
    use crate::resolution::CoverStrategy;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn trunc(exps: &[usize]) -> Arc<AlgebraPresentation> {
        Arc::new(build_truncated_polynomial(q(), exps).unwrap())
    }

    fn quotient_by(a: &Arc<AlgebraPresentation>, g: &[i64]) -> ModuleRep {
        let v: Vec<Scalar> = g.iter().map(|&c| q().from_i64(c)).collect();
        cyclic_quotient(a, &[v]).unwrap()
    }

    fn schulz(qv: i64) -> ModuleRep {
        let a = Arc::new(build_quantum_ci(q(), &q().from_i64(qv)).unwrap());
        quotient_by(&a, &[0, 1, 1, 0])
    }

    /// Ext through explicit Hom spaces of the free terms and full free
    /// differentials, without the generator shortcut.
    fn oracle_dims(m: &ModuleRep, n: &ModuleRep, cutoff: usize) -> Vec<usize> {
        let a = m.algebra();
        let mut r = Resolution::auto(m.clone());
        r.extend_to(cutoff + 1).unwrap();
        let field = a.field();
        let spaces: Vec<(usize, Vec<Mat>)> = (0..=cutoff + 1)
            .map(|i| {
                let b = r.rank_at(i).unwrap();
                (b, hom_basis(&free_module(a, b), n).unwrap().basis)
            })
            .collect();
        let flat = |m: &Mat| m.to_rows().concat();
        let cochain = |i: usize| -> Mat {
            let (bi, hi) = &spaces[i];
            let (bj, hj) = &spaces[i + 1];
            let d = r.free_differential(i + 1);
            assert_eq!(d.rows(), bi * a.dim());
            let target = Subspace::new(field, n.dim() * bj * a.dim(), &hj.iter().map(flat).collect::<Vec<_>>());
            let cols: Vec<Vec<Scalar>> = hi.iter().map(|phi| target.coordinates(&flat(&phi.mul(&d)))).collect();
            Mat::from_columns(field, hj.len(), &cols)
        };
        let mut out = Vec::new();
        let mut prev = Mat::zeros(field, spaces[0].1.len(), 0);
        for i in 0..=cutoff {
            let next = cochain(i);
            out.push(cohomology_dim(&prev, &next).unwrap());
            prev = next;
        }
        out
    }

    #[test]
    fn free_module_has_no_higher_ext() {
        let a = trunc(&[2, 2]);
        let n = quotient_by(&a, &[0, 1, 0, 0]);
        let p = ext_dims(&free_module(&a, 1), &n, 4).unwrap();
        assert_eq!(p.dims, vec![n.dim(), 0, 0, 0, 0]);
    }

    #[test]
    fn simple_over_dual_numbers() {
        let a = trunc(&[2]);
        let k = quotient_by(&a, &[0, 1]);
        let p = ext_dims(&k, &k, 5).unwrap();
        assert_eq!(p.dims, oracle_dims(&k, &k, 5));
        assert_eq!(p.dims, vec![1; 6]);
    }

    #[test]
    fn degree_zero_is_hom() {
        let m = schulz(2);
        let p = ext_dims(&m, &m, 2).unwrap();
        assert_eq!(p.dims[0], hom_basis(&m, &m).unwrap().dim());
    }

    #[test]
    fn generator_shortcut_matches_full_hom_spaces() {
        let m = schulz(2);
        assert_eq!(ext_dims(&m, &m, 5).unwrap().dims, oracle_dims(&m, &m, 5));
        let a = trunc(&[2, 2]);
        let k = quotient_by(&a, &[0, 1, 1, 0]);
        let n = quotient_by(&a, &[0, 0, 0, 1]);
        assert_eq!(ext_dims(&k, &n, 4).unwrap().dims, oracle_dims(&k, &n, 4));
        let b = trunc(&[3]);
        let m3 = quotient_by(&b, &[0, 0, 1]);
        assert_eq!(ext_dims(&m3, &m3, 6).unwrap().dims, oracle_dims(&m3, &m3, 6));
    }

    #[test]
    fn schulz_module_has_extension_degree_one_to_cutoff() {
        let m = schulz(2);
        let p = ext_dims(&m, &m, 20).unwrap();
        assert!(p.dims[1] >= 1);
        assert!(p.dims[2..].iter().all(|&d| d == 0));
        let rep = self_ext_degree(&m, 20, 0).unwrap();
        assert_eq!(rep.status, ExtStatus::LowerBound(1));
        assert_eq!(rep.certificate, Certificate::CutoffOnly);
    }

    #[test]
    fn self_ext_degree_examples() {
        let a = trunc(&[2]);
        let free = self_ext_degree(&free_module(&a, 1), 10, 0).unwrap();
        assert_eq!(free.status, ExtStatus::Exact(Degree::Finite(0)));
        assert_eq!(free.certificate, Certificate::FinitePd { pd: 0 });

        let k = quotient_by(&a, &[0, 1]);
        let rep = self_ext_degree(&k, 10, 0).unwrap();
        assert_eq!(rep.status, ExtStatus::Exact(Degree::Infinite));
        assert_eq!(rep.certificate, Certificate::Periodicity { start: 0, period: 1 });
    }

    #[test]
    fn zero_module_is_exact_zero() {
        let a = trunc(&[2]);
        let rep = self_ext_degree(&ModuleRep::zero(a), 5, 0).unwrap();
        assert!(rep.zero_module);
        assert_eq!(rep.status, ExtStatus::Exact(Degree::Finite(0)));
        assert_eq!(rep.certificate, Certificate::FinitePd { pd: 0 });
    }

    #[test]
    fn ext_with_ring_examples() {
        let a = trunc(&[2]);
        let free = ext_with_ring_degree(&free_module(&a, 1), 6, 0).unwrap();
        assert_eq!(free.status, ExtStatus::Exact(Degree::Finite(0)));
        let k = quotient_by(&a, &[0, 1]);
        let rep = ext_with_ring_degree(&k, 6, 0).unwrap();
        assert_eq!(rep.status, ExtStatus::Exact(Degree::Infinite));
        assert!(rep.certificate.is_certified());
    }

    #[test]
    fn ext_with_ring_equals_pd_when_finite() {
        // k over k: pd 0; over the base field every module is free
        let f = Arc::new(base_field(q()));
        let m = free_module(&f, 2);
        assert_eq!(
            ext_with_ring_degree(&m, 4, 0).unwrap().status,
            ExtStatus::Exact(Degree::Finite(0))
        );
    }

    #[test]
    fn cm_status_examples() {
        let a = trunc(&[2]);
        for m in [free_module(&a, 1), quotient_by(&a, &[0, 1])] {
            let rep = cm_status(&m, 8, 0).unwrap();
            assert_eq!(rep.vanishing_bound, Some(0));
            assert!(rep.certified);
            assert_eq!(rep.in_cm, Some(true));
        }
        let free = cm_status(&free_module(&a, 1), 8, 0).unwrap();
        assert_eq!(free.certificate, Certificate::FinitePd { pd: 0 });

        let m = schulz(2);
        let rep = cm_status(&m, 20, 0).unwrap();
        assert_eq!(rep.vanishing_bound, Some(0));
        assert!(!rep.certified);
        assert_eq!(rep.in_cm, None);
    }

    #[test]
    fn non_local_reports_are_cutoff_only() {
        let a = AlgebraPresentation::new(
            "kxk",
            q(),
            vec!["e".into(), "f".into()],
            0,
            vec![],
            vec![
                (0, 0, vec![(0, q().one())]),
                (0, 1, vec![(1, q().one())]),
                (1, 0, vec![(1, q().one())]),
                (1, 1, vec![(1, q().one())]),
            ],
        )
        .unwrap();
        let a = Arc::new(a);
        let rep = self_ext_degree(&free_module(&a, 1), 4, 0).unwrap();
        assert_eq!(rep.certificate, Certificate::CutoffOnly);
        assert_eq!(rep.status, ExtStatus::LowerBound(0));
    }

    #[test]
    fn padded_resolution_gives_same_dims() {
        let a = trunc(&[2, 2]);
        let m = quotient_by(&a, &[0, 1, 1, 0]);
        let k = quotient_by(&a, &[0, 1, 0, 0]);
        let mut padded = Resolution::new(m.clone(), CoverStrategy::Padded { step: 2 }).unwrap();
        let lhs = ext_dims_from(&mut padded, &k, 6).unwrap();
        assert_eq!(lhs, ext_dims(&m, &k, 6).unwrap().dims);
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let m = free_module(&trunc(&[2]), 1);
        let n = free_module(&trunc(&[3]), 1);
        assert_eq!(ext_dims(&m, &n, 2).unwrap_err(), Error::AlgebraMismatch);
    }
}
