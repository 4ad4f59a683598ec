//! Ring-level checks assembled from module reports: projective and injective
//! dimension, the generalized Auslander-Reiten inequality, duality symmetry,
//! family-relative Auslander bounds and finitistic estimates over families of
//! cyclic modules.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{opposite, span_rows, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::ext::{
    cm_status, ext_degree_against, ext_dims, ext_dims_from, ext_with_ring_degree, gather_evidence, last_nonzero,
    self_ext_degree, CmReport, Degree, ExtDegreeReport, ExtStatus, Evidence,
};
use crate::field::Scalar;
use crate::module::{cyclic_quotient, dual, free_module, is_isomorphic, IsoCertificate, ModuleRep};
use crate::resolution::{CoverStrategy, Resolution, DEFAULT_ISO_TRIALS};

/// Default cap on the number of generator tuples visited by
/// [`enumerate_cyclic_family`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PdValue {
    Finite(usize),
    Infinite,
    UnknownBeyondCutoff,
}

impl PdValue {
    pub fn is_certified(&self) -> bool {
        !matches!(self, PdValue::UnknownBeyondCutoff)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PdMethod {
    /// A minimal resolution reached a zero kernel.
    Termination,
    /// Two isomorphic nonzero syzygies; the resolution never stops.
    Periodicity { start: usize, period: usize },
    /// A non-minimal resolution terminated; the value is read off `Ext^*(M, A)`.
    RingExt,
    Cutoff,
}

/// Comparison of the resolution length with `sup { i : Ext^i(M, A) != 0 }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingExtCheck {
    pub dims: Vec<usize>,
    pub sup_index: Option<usize>,
    /// `None` when the projective dimension is not certified finite.
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdReport {
    pub module: ModuleRep,
    pub cutoff: usize,
    pub value: PdValue,
    pub method: PdMethod,
    pub ring_ext: RingExtCheck,
    pub betti: Vec<usize>,
}

impl PdReport {
    pub fn certified_finite(&self) -> Option<usize> {
        match self.value {
            PdValue::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn internal_failure(&self) -> bool {
        self.ring_ext.agrees == Some(false)
    }
}

pub fn projective_dimension(m: &ModuleRep, cutoff: usize, seed: u64) -> Result<PdReport> {
    let mut r = Resolution::auto(m.clone());
    let evidence = gather_evidence(&mut r, cutoff, seed)?;
    pd_from_resolution(&mut r, &evidence, cutoff)
}

fn pd_from_resolution(r: &mut Resolution, evidence: &Evidence, cutoff: usize) -> Result<PdReport> {
    let module = r.module().clone();
    let ring = free_module(module.algebra(), 1);
    let against_ring = ext_degree_against(r, evidence, &ring, cutoff)?;
    let dims = against_ring.dims;
    let sup_index = last_nonzero(&dims);
    let (value, method, agrees) = if let Some(n) = evidence.termination {
        let ok = dims.get(n).is_some_and(|&d| d != 0) && dims.iter().skip(n + 1).all(|&d| d == 0);
        (PdValue::Finite(n), PdMethod::Termination, Some(ok))
    } else if let Some(c) = &evidence.periodicity {
        let method = PdMethod::Periodicity {
            start: c.start,
            period: c.period,
        };
        (PdValue::Infinite, method, None)
    } else if !evidence.certifiable && r.terminated() {
        // a finite non-minimal resolution bounds pd, and then Ext^*(M, A) detects it
        let len = r.steps().len();
        let dims = ext_dims_from(r, &ring, len)?;
        let n = last_nonzero(&dims).unwrap_or(0);
        (PdValue::Finite(n), PdMethod::RingExt, None)
    } else {
        (PdValue::UnknownBeyondCutoff, PdMethod::Cutoff, None)
    };
    Ok(PdReport {
        module,
        cutoff,
        value,
        method,
        ring_ext: RingExtCheck {
            dims,
            sup_index,
            agrees,
        },
        betti: r.betti(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Violation,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GarcVerdict {
    pub module: ModuleRep,
    pub n_star: ExtDegreeReport,
    pub pd: PdReport,
    pub verdict: Verdict,
    /// Ext against `M + A` observed to vanish past some `n` while no
    /// resolution length up to the cutoff was found.
    pub flagged_candidate: bool,
    /// `ext.deg(M + A) > pd(M)` with both certified, which cannot happen.
    pub chain_failure: bool,
}

pub fn garc_check(m: &ModuleRep, cutoff: usize, seed: u64) -> Result<GarcVerdict> {
    if !m.algebra().is_local() {
        return Err(Error::NotLocal);
    }
    let n_star = ext_with_ring_degree(m, cutoff, seed)?;
    let pd = projective_dimension(m, cutoff, seed)?;
    Ok(garc_from(n_star, pd))
}

pub fn garc_from(n_star: ExtDegreeReport, pd: PdReport) -> GarcVerdict {
    let mut chain_failure = false;
    let verdict = match (n_star.status, pd.value) {
        (ExtStatus::Exact(Degree::Infinite), _) => Verdict::Consistent,
        (ExtStatus::Exact(Degree::Finite(n)), PdValue::Finite(p)) => {
            if p > n {
                Verdict::Violation
            } else if p < n {
                chain_failure = true;
                Verdict::Inconclusive
            } else {
                Verdict::Consistent
            }
        }
        (ExtStatus::Exact(Degree::Finite(_)), PdValue::Infinite) => Verdict::Violation,
        _ => Verdict::Inconclusive,
    };
    let flagged_candidate = verdict == Verdict::Inconclusive
        && !chain_failure
        && pd.value == PdValue::UnknownBeyondCutoff
        && n_star.last_nonzero.unwrap_or(0) < n_star.cutoff;
    GarcVerdict {
        module: pd.module.clone(),
        n_star,
        pd,
        verdict,
        flagged_candidate,
        chain_failure,
    }
}

/// `D(M)` over the opposite of `M`'s opposite, re-attached to `a`.
fn dual_onto(m: &ModuleRep, a: &Arc<AlgebraPresentation>) -> ModuleRep {
    let d = dual(m);
    debug_assert!(d.algebra().same_structure(a));
    ModuleRep::new(a.clone(), d.dim(), d.actions().to_vec()).expect("dual keeps shapes")
}

/// `D(A)` for the left regular module: a left module over the opposite algebra.
pub fn dual_of_regular(a: &Arc<AlgebraPresentation>) -> ModuleRep {
    dual(&free_module(a, 1))
}

/// `D(A)` for the right regular module, as a left `A`-module.
pub fn dual_of_right_regular(a: &Arc<AlgebraPresentation>) -> ModuleRep {
    let op = Arc::new(opposite(a));
    dual_onto(&free_module(&op, 1), a)
}

/// Injective dimension of the left regular module, computed as the
/// projective dimension of its dual over the opposite algebra.
pub fn injective_dimension(a: &AlgebraPresentation, cutoff: usize, seed: u64) -> Result<PdReport> {
    if !a.is_local() {
        return Err(Error::NotLocal);
    }
    let a = Arc::new(a.clone());
    projective_dimension(&dual_of_regular(&a), cutoff, seed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectiveDimensions {
    /// Injective dimension of `A` as a left module.
    pub left: PdReport,
    /// Injective dimension of `A` as a right module.
    pub right: PdReport,
    /// `D(A) ~ A` over the opposite algebra, when found.
    pub left_regular_iso: Option<IsoCertificate>,
    pub right_regular_iso: Option<IsoCertificate>,
}

impl InjectiveDimensions {
    pub fn self_injective(&self) -> bool {
        self.left.value == PdValue::Finite(0) && self.right.value == PdValue::Finite(0)
    }

    /// The common certified value when both sides agree.
    pub fn certified(&self) -> Option<PdValue> {
        (self.left.value.is_certified() && self.left.value == self.right.value).then_some(self.left.value)
    }
}

pub fn injective_dimensions(a: &AlgebraPresentation, cutoff: usize, seed: u64) -> Result<InjectiveDimensions> {
    if !a.is_local() {
        return Err(Error::NotLocal);
    }
    let a = Arc::new(a.clone());
    let op = Arc::new(opposite(&a));
    let left_dual = dual_of_regular(&a);
    let right_dual = dual_of_right_regular(&a);
    let left = projective_dimension(&left_dual, cutoff, seed)?;
    let right = projective_dimension(&right_dual, cutoff, seed)?;
    let left_regular_iso = is_isomorphic(&left_dual, &free_module(left_dual.algebra(), 1), seed, DEFAULT_ISO_TRIALS);
    let right_regular_iso = is_isomorphic(&right_dual, &free_module(&a, 1), seed, DEFAULT_ISO_TRIALS);
    debug_assert!(left_dual.algebra().same_structure(&op));
    Ok(InjectiveDimensions {
        left,
        right,
        left_regular_iso,
        right_regular_iso,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinSymmetry {
    pub injective: InjectiveDimensions,
    /// `ext.deg(D(A_A) + A)` over `A`.
    pub dual_plus_ring: ExtDegreeReport,
    /// Right injective dimension equals `dual_plus_ring`; `None` if either is uncertified.
    pub equality: Option<bool>,
    /// Right injective dimension is at most the left one.
    pub inequality: Option<bool>,
}

fn degree_of_pd(v: PdValue) -> Option<Degree> {
    match v {
        PdValue::Finite(n) => Some(Degree::Finite(n)),
        PdValue::Infinite => Some(Degree::Infinite),
        PdValue::UnknownBeyondCutoff => None,
    }
}

fn degree_le(a: Degree, b: Degree) -> bool {
    match (a, b) {
        (_, Degree::Infinite) => true,
        (Degree::Infinite, Degree::Finite(_)) => false,
        (Degree::Finite(x), Degree::Finite(y)) => x <= y,
    }
}

pub fn gorenstein_symmetry_check(a: &AlgebraPresentation, cutoff: usize, seed: u64) -> Result<GorensteinSymmetry> {
    let injective = injective_dimensions(a, cutoff, seed)?;
    let arc = Arc::new(a.clone());
    let dual_plus_ring = ext_with_ring_degree(&dual_of_right_regular(&arc), cutoff, seed)?;
    let ext_value = match dual_plus_ring.status {
        ExtStatus::Exact(d) => Some(d),
        ExtStatus::LowerBound(_) => None,
    };
    let right = degree_of_pd(injective.right.value);
    let left = degree_of_pd(injective.left.value);
    let equality = right.zip(ext_value).map(|(r, e)| r == e);
    let inequality = right.zip(left).map(|(r, l)| degree_le(r, l));
    Ok(GorensteinSymmetry {
        injective,
        dual_plus_ring,
        equality,
        inequality,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualitySymmetry {
    pub module_dims: Vec<usize>,
    pub dual_dims: Vec<usize>,
    pub agrees: bool,
}

/// Self-Ext of `m` over `A` against self-Ext of `D(m)` over the opposite algebra.
pub fn duality_symmetry_check(m: &ModuleRep, cutoff: usize) -> Result<DualitySymmetry> {
    let module_dims = ext_dims(m, m, cutoff)?.dims;
    let d = dual(m);
    let dual_dims = ext_dims(&d, &d, cutoff)?.dims;
    let agrees = module_dims == dual_dims;
    Ok(DualitySymmetry {
        module_dims,
        dual_dims,
        agrees,
    })
}

/// Why `Ext^i(M, N)` is known to vanish for large `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VanishingBasis {
    /// Finite resolution of `M`, or a zero period against `N`.
    Resolution,
    /// `D(N)` is free over the opposite algebra, so `N` is injective.
    InjectiveTarget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeEntry {
    pub report: ExtDegreeReport,
    /// `Some` when eventual vanishing is certified.
    pub basis: Option<VanishingBasis>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuslanderBoundProbe {
    pub module: ModuleRep,
    pub cutoff: usize,
    pub entries: Vec<ProbeEntry>,
    /// Largest last-nonzero degree over members with certified eventual
    /// vanishing; a lower bound for the bound over all modules.
    pub b_relative: usize,
    pub eventually_vanishing: Vec<usize>,
    pub uncertified: Vec<usize>,
}

/// `n` is injective iff `D(n)` is projective, i.e. its minimal resolution stops at 0.
pub fn is_injective(n: &ModuleRep) -> Result<bool> {
    let d = dual(n);
    let mut r = Resolution::new(d, CoverStrategy::Minimal)?;
    r.extend_to(0)?;
    Ok(r.terminated())
}

pub fn auslander_bound_probe(
    m: &ModuleRep,
    family: &[ModuleRep],
    cutoff: usize,
    seed: u64,
) -> Result<AuslanderBoundProbe> {
    if family.iter().any(|n| !n.same_algebra(m)) {
        return Err(Error::AlgebraMismatch);
    }
    let mut r = Resolution::auto(m.clone());
    let evidence = gather_evidence(&mut r, cutoff, seed)?;
    let mut entries = Vec::with_capacity(family.len());
    let (mut vanishing, mut uncertified) = (Vec::new(), Vec::new());
    let mut b = 0;
    for (i, n) in family.iter().enumerate() {
        let report = ext_degree_against(&mut r, &evidence, n, cutoff)?;
        let basis = if report.certified_finite().is_some() {
            Some(VanishingBasis::Resolution)
        } else if m.algebra().is_local() && is_injective(n)? {
            Some(VanishingBasis::InjectiveTarget)
        } else {
            None
        };
        match basis {
            Some(VanishingBasis::Resolution) => {
                b = b.max(report.certified_finite().unwrap_or(0));
                vanishing.push(i);
            }
            Some(VanishingBasis::InjectiveTarget) => {
                debug_assert!(report.dims.iter().skip(1).all(|&d| d == 0));
                vanishing.push(i);
            }
            None => uncertified.push(i),
        }
        entries.push(ProbeEntry { report, basis });
    }
    Ok(AuslanderBoundProbe {
        module: m.clone(),
        cutoff,
        entries,
        b_relative: b,
        eventually_vanishing: vanishing,
        uncertified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub label: String,
    /// Ideal generators of the cyclic quotient, empty for `A` itself.
    pub generators: Vec<Vec<Scalar>>,
    pub module: ModuleRep,
}

impl FamilyMember {
    pub fn new(label: impl Into<String>, module: ModuleRep) -> Self {
        FamilyMember {
            label: label.into(),
            generators: Vec::new(),
            module,
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Radical elements whose radical coordinates range over `coefficients`, in
/// lexicographic order with the last radical index varying fastest.
fn radical_elements(a: &AlgebraPresentation, coefficients: &[Scalar]) -> Vec<Vec<Scalar>> {
    let field = a.field();
    let mut out = vec![a.zero_element()];
    for &r in a.radical() {
        let mut next = Vec::with_capacity(out.len() * coefficients.len());
        for v in &out {
            for c in coefficients {
                let mut w = v.clone();
                w[r] = c.clone();
                next.push(w);
            }
        }
        out = next;
    }
    out.retain(|v| v.iter().all(|c| c.field() == field));
    out
}

/// Multisets of size `0..=max` over `0..n`, shortest first, each sorted.
fn multisets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for t in &layer {
            let lo = t.last().copied().unwrap_or(0);
            for i in lo..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Cyclic quotients `A / (A g_1 + .. + A g_r)` for `r <= max_generators` with
/// each `g_i` a radical element with coordinates in `coefficients`, deduplicated
/// first by equal ideals and then by certified isomorphism.
pub fn enumerate_cyclic_family(
    a: &Arc<AlgebraPresentation>,
    coefficients: &[Scalar],
    max_generators: usize,
    limit: usize,
    seed: u64,
) -> Result<Vec<FamilyMember>> {
    if let Some(c) = coefficients.iter().find(|c| c.field() != a.field()) {
        return Err(Error::InvalidParameter(format!("coefficient {c} is not in {}", a.field())));
    }
    let mut coeffs: Vec<Scalar> = Vec::new();
    for c in coefficients {
        if !coeffs.contains(c) {
            coeffs.push(c.clone());
        }
    }
    if coeffs.is_empty() {
        coeffs.push(a.field().zero());
    }
    let elements = radical_elements(a, &coeffs);
    let count: usize = (0..=max_generators)
        .map(|g| binomial(elements.len() + g - 1, g))
        .fold(0usize, |acc, x| acc.saturating_add(x));
    if count > limit {
        return Err(Error::EnumerationLimit { count, limit });
    }
    let field = a.field();
    let dim = a.dim();
    let mut ideals: Vec<Vec<Vec<Scalar>>> = Vec::new();
    let mut members: Vec<FamilyMember> = Vec::new();
    for tuple in multisets(elements.len(), max_generators) {
        let gens: Vec<Vec<Scalar>> = tuple.iter().map(|&i| elements[i].clone()).collect();
        let spanning: Vec<Vec<Scalar>> = gens
            .iter()
            .flat_map(|g| (0..dim).map(move |k| a.mul(&a.basis_element(k), g)))
            .collect();
        let ideal = span_rows(field, dim, &spanning);
        if ideals.contains(&ideal) {
            continue;
        }
        ideals.push(ideal);
        let module = cyclic_quotient(a, &gens)?;
        let duplicate = members.iter().any(|k| {
            k.module.dim() == module.dim() && is_isomorphic(&k.module, &module, seed, DEFAULT_ISO_TRIALS).is_some()
        });
        if duplicate {
            continue;
        }
        let nonzero: Vec<Vec<Scalar>> = gens.into_iter().filter(|g| g.iter().any(|c| !c.is_zero())).collect();
        let label = if nonzero.is_empty() {
            "A".to_string()
        } else {
            let parts: Vec<String> = nonzero.iter().map(|g| a.display_element(g)).collect();
            format!("A/({})", parts.join(", "))
        };
        members.push(FamilyMember {
            label,
            generators: nonzero,
            module,
        });
    }
    Ok(members)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberAudit {
    pub label: String,
    pub self_ext: ExtDegreeReport,
    pub with_ring: ExtDegreeReport,
    pub pd: PdReport,
    pub cm: CmReport,
    pub garc: GarcVerdict,
    pub duality: DualitySymmetry,
}

impl MemberAudit {
    pub fn is_free(&self) -> bool {
        self.pd.value == PdValue::Finite(0)
    }

    /// Lemma-style chain `ext.deg(M) <= ext.deg(M + A) <= pd(M)` with
    /// equalities, checked when pd is certified finite.
    pub fn chain_holds(&self) -> Option<bool> {
        let pd = self.pd.certified_finite()?;
        let with_ring = self.with_ring.certified_finite()?;
        let own = self.self_ext.certified_finite()?;
        Some(own == with_ring && with_ring == pd)
    }
}

pub fn audit_module(label: impl Into<String>, m: &ModuleRep, cutoff: usize, seed: u64) -> Result<MemberAudit> {
    if !m.algebra().is_local() {
        return Err(Error::NotLocal);
    }
    let self_ext = self_ext_degree(m, cutoff, seed)?;
    let with_ring = ext_with_ring_degree(m, cutoff, seed)?;
    let pd = projective_dimension(m, cutoff, seed)?;
    let cm = cm_status(m, cutoff, seed)?;
    let garc = garc_from(with_ring.clone(), pd.clone());
    let duality = duality_symmetry_check(m, cutoff.min(10))?;
    Ok(MemberAudit {
        label: label.into(),
        self_ext,
        with_ring,
        pd,
        cm,
        garc,
        duality,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Finding {
    Holds,
    Fails,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionFinding {
    pub finding: Finding,
    /// Family indices contradicting the condition.
    pub witnesses: Vec<usize>,
}

impl ConditionFinding {
    fn from_witnesses(witnesses: Vec<usize>, decided: bool) -> Self {
        let finding = if !witnesses.is_empty() {
            Finding::Fails
        } else if decided {
            Finding::Holds
        } else {
            Finding::Undetermined
        };
        ConditionFinding { finding, witnesses }
    }
}

/// Family-scale evidence for the equivalent finiteness conditions on a ring
/// of finite injective dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteFedConditions {
    /// Certified-finite ext.deg exactly when certified-finite pd.
    pub ext_deg_iff_pd: ConditionFinding,
    /// CM members of certified-finite ext.deg are free, with ext.deg 0.
    pub cm_finite_are_free: ConditionFinding,
    /// `fed_lower_bound <= id(A)`.
    pub fed_below_id: ConditionFinding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UncertifiedEntry {
    pub index: usize,
    pub label: String,
    pub observed_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyAuditReport {
    pub algebra: Arc<AlgebraPresentation>,
    pub cutoff: usize,
    pub members: Vec<MemberAudit>,
    /// Max of certified-finite ext.deg over members and over `M + A`.
    pub fed_lower_bound: usize,
    /// Max certified-finite pd.
    pub fpd_estimate: usize,
    pub uncertified: Vec<UncertifiedEntry>,
    pub conditions: FiniteFedConditions,
    pub injective: InjectiveDimensions,
    pub garc_violations: Vec<usize>,
    pub garc_flagged: Vec<usize>,
    pub internal_failures: Vec<String>,
}

impl FamilyAuditReport {
    pub fn has_failure(&self) -> bool {
        !self.garc_violations.is_empty() || !self.internal_failures.is_empty()
    }
}

pub fn audit_family(
    a: &Arc<AlgebraPresentation>,
    family: &[FamilyMember],
    cutoff: usize,
    seed: u64,
) -> Result<FamilyAuditReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if !a.is_local() {
        return Err(Error::NotLocal);
    }
    if family.iter().any(|f| !f.module.algebra().same_structure(a)) {
        return Err(Error::AlgebraMismatch);
    }
    let injective = injective_dimensions(a, cutoff, seed)?;
    let members = family
        .iter()
        .map(|f| audit_module(f.label.clone(), &f.module, cutoff, seed))
        .collect::<Result<Vec<_>>>()?;

    let mut fed = 0;
    let mut fpd = 0;
    let mut uncertified = Vec::new();
    let mut internal_failures = Vec::new();
    let (mut violations, mut flagged) = (Vec::new(), Vec::new());
    let (mut iff_witnesses, mut cm_witnesses) = (Vec::new(), Vec::new());
    let mut iff_decided = false;
    for (i, m) in members.iter().enumerate() {
        if let Some(v) = m.self_ext.certified_finite() {
            fed = fed.max(v);
        }
        if let Some(v) = m.with_ring.certified_finite() {
            fed = fed.max(v);
        }
        if let Some(p) = m.pd.certified_finite() {
            fpd = fpd.max(p);
        }
        if !m.self_ext.certificate.is_certified() {
            uncertified.push(UncertifiedEntry {
                index: i,
                label: m.label.clone(),
                observed_bound: m.self_ext.last_nonzero.unwrap_or(0),
            });
        }
        if m.pd.internal_failure() {
            internal_failures.push(format!("{}: resolution length disagrees with Ext against the ring", m.label));
        }
        if m.garc.chain_failure || m.chain_holds() == Some(false) {
            internal_failures.push(format!("{}: ext.deg(M) <= ext.deg(M + A) <= pd(M) chain broken", m.label));
        }
        if !m.duality.agrees {
            internal_failures.push(format!("{}: duality changes the self-Ext profile", m.label));
        }
        match m.garc.verdict {
            Verdict::Violation => violations.push(i),
            _ if m.garc.flagged_candidate => flagged.push(i),
            _ => {}
        }
        if m.self_ext.certificate.is_certified() && m.pd.value.is_certified() {
            iff_decided = true;
            let ext_finite = m.self_ext.certified_finite().is_some();
            let pd_finite = m.pd.certified_finite().is_some();
            if ext_finite != pd_finite {
                iff_witnesses.push(i);
            }
        }
        if m.cm.in_cm == Some(true) {
            if let Some(v) = m.self_ext.certified_finite() {
                if !m.is_free() || v != 0 {
                    cm_witnesses.push(i);
                }
            }
        }
    }
    let cm_decided = members.iter().any(|m| m.cm.in_cm == Some(true));
    let fed_below_id = ConditionFinding {
        finding: match injective.left.value {
            PdValue::Finite(id) if fed > id => Finding::Fails,
            PdValue::Finite(_) => Finding::Holds,
            _ => Finding::Undetermined,
        },
        witnesses: Vec::new(),
    };
    let conditions = FiniteFedConditions {
        ext_deg_iff_pd: ConditionFinding::from_witnesses(iff_witnesses, iff_decided),
        cm_finite_are_free: ConditionFinding::from_witnesses(cm_witnesses, cm_decided),
        fed_below_id,
    };
    Ok(FamilyAuditReport {
        algebra: a.clone(),
        cutoff,
        members,
        fed_lower_bound: fed,
        fpd_estimate: fpd,
        uncertified,
        conditions,
        injective,
        garc_violations: violations,
        garc_flagged: flagged,
        internal_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{base_field, build_quantum_ci, build_truncated_polynomial};
    use crate::ext::Certificate;
    use crate::module::direct_sum;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn trunc(exps: &[usize]) -> Arc<AlgebraPresentation> {
        Arc::new(build_truncated_polynomial(q(), exps).unwrap())
    }

    fn qci(v: i64) -> Arc<AlgebraPresentation> {
        Arc::new(build_quantum_ci(q(), &q().from_i64(v)).unwrap())
    }

    fn quotient_by(a: &Arc<AlgebraPresentation>, g: &[i64]) -> ModuleRep {
        let v: Vec<Scalar> = g.iter().map(|&c| q().from_i64(c)).collect();
        cyclic_quotient(a, &[v]).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn pd_examples() {
        let a = trunc(&[2]);
        let free = projective_dimension(&free_module(&a, 2), 10, 0).unwrap();
        assert_eq!(free.value, PdValue::Finite(0));
        assert_eq!(free.ring_ext.agrees, Some(true));
        assert!(free.ring_ext.dims[0] != 0);

        let f = Arc::new(base_field(q()));
        assert_eq!(projective_dimension(&free_module(&f, 1), 5, 0).unwrap().value, PdValue::Finite(0));

        let k = quotient_by(&a, &[0, 1]);
        let rep = projective_dimension(&k, 10, 0).unwrap();
        assert_eq!(rep.value, PdValue::Infinite);
        assert_eq!(rep.method, PdMethod::Periodicity { start: 0, period: 1 });
        assert!(rep.ring_ext.dims[1..].iter().all(|&d| d == 0));
        assert_eq!(rep.ring_ext.agrees, None);
    }

    #[test]
    fn garc_examples() {
        let a = trunc(&[2]);
        let free = garc_check(&free_module(&a, 1), 10, 0).unwrap();
        assert_eq!(free.verdict, Verdict::Consistent);
        let k = quotient_by(&a, &[0, 1]);
        assert_eq!(garc_check(&k, 10, 0).unwrap().verdict, Verdict::Consistent);

        let b = qci(2);
        let m = quotient_by(&b, &[0, 1, 1, 0]);
        let g = garc_check(&m, 20, 0).unwrap();
        assert_eq!(g.verdict, Verdict::Inconclusive);
        assert!(g.flagged_candidate);
        assert_eq!(g.n_star.status, ExtStatus::LowerBound(1));
        assert_eq!(g.pd.value, PdValue::UnknownBeyondCutoff);
    }

    #[test]
    fn injective_dimension_examples() {
        for a in [trunc(&[2]), qci(2), Arc::new(base_field(q()))] {
            let inj = injective_dimensions(&a, 10, 0).unwrap();
            assert!(inj.self_injective(), "{}", a.name());
            assert!(inj.left_regular_iso.is_some());
            assert!(inj.right_regular_iso.is_some());
            assert_eq!(injective_dimension(&a, 10, 0).unwrap().value, PdValue::Finite(0));
        }
    }

    #[test]
    fn radical_square_zero_plane_is_not_self_injective() {
        // k[x,y]/(x,y)^2 has a two-dimensional socle
        let a = trunc(&[2, 2]);
        let table: Vec<_> = a
            .table()
            .map(|(i, j, terms)| {
                let kept = if i == 3 || j == 3 || (i != 0 && j != 0) {
                    vec![]
                } else {
                    terms.to_vec()
                };
                (i, j, kept)
            })
            .collect();
        let b = AlgebraPresentation::new(
            "plane",
            q(),
            vec!["1".into(), "x".into(), "y".into()],
            0,
            vec![1, 2],
            table
                .into_iter()
                .filter(|(i, j, _)| *i < 3 && *j < 3)
                .collect(),
        )
        .unwrap();
        let inj = injective_dimensions(&b, 6, 0).unwrap();
        assert!(!inj.self_injective());
        assert!(inj.left_regular_iso.is_none());
    }

    #[test]
    fn gorenstein_symmetry_on_self_injective_algebras() {
        for a in [trunc(&[2]), qci(2), Arc::new(base_field(q()))] {
            let g = gorenstein_symmetry_check(&a, 10, 0).unwrap();
            assert_eq!(g.dual_plus_ring.status, ExtStatus::Exact(Degree::Finite(0)));
            assert_eq!(g.equality, Some(true));
            assert_eq!(g.inequality, Some(true));
        }
    }

    #[test]
    fn duality_examples() {
        let b = qci(2);
        let m = quotient_by(&b, &[0, 1, 1, 0]);
        let d = duality_symmetry_check(&m, 10).unwrap();
        assert!(d.agrees);
        let a = trunc(&[2, 2]);
        let free = duality_symmetry_check(&free_module(&a, 1), 4).unwrap();
        assert_eq!(free.module_dims, vec![4, 0, 0, 0, 0]);
        assert!(free.agrees);
    }

    #[test]
    fn auslander_probe_examples() {
        let a = trunc(&[2]);
        let k = quotient_by(&a, &[0, 1]);
        let ring = free_module(&a, 1);
        let p = auslander_bound_probe(&k, &[k.clone(), ring.clone()], 10, 0).unwrap();
        assert_eq!(p.eventually_vanishing, vec![1]);
        assert_eq!(p.b_relative, 0);

        let free = auslander_bound_probe(&ring, &[k.clone(), ring.clone()], 10, 0).unwrap();
        assert_eq!(free.b_relative, 0);
        assert_eq!(free.eventually_vanishing, vec![0, 1]);

        let b = qci(2);
        let m = quotient_by(&b, &[0, 1, 1, 0]);
        let p = auslander_bound_probe(&m, &[m.clone(), free_module(&b, 1)], 20, 0).unwrap();
        assert_eq!(p.uncertified, vec![0]);
        assert_eq!(p.eventually_vanishing, vec![1]);
        assert_eq!(p.entries[1].basis, Some(VanishingBasis::InjectiveTarget));
        assert_eq!(p.b_relative, 0);
    }

    /// Brute-force ideal count: distinct spans of `A g` for single generators.
    fn distinct_ideals(a: &Arc<AlgebraPresentation>, coeffs: &[Scalar]) -> usize {
        let mut seen: Vec<Vec<Vec<Scalar>>> = Vec::new();
        for g in radical_elements(a, coeffs) {
            let rows: Vec<_> = (0..a.dim()).map(|k| a.mul(&a.basis_element(k), &g)).collect();
            let s = span_rows(a.field(), a.dim(), &rows);
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        seen.len()
    }

    #[test]
    fn cyclic_family_of_dual_numbers() {
        let a = trunc(&[2]);
        let fam = enumerate_cyclic_family(&a, &ints(&[0, 1]), 1, 100, 0).unwrap();
        let labels: Vec<_> = fam.iter().map(|f| f.label.as_str()).collect();
        assert_eq!(labels, vec!["A", "A/(x)"]);
        assert_eq!(fam[1].module.dim(), 1);
    }

    #[test]
    fn zero_coefficients_give_only_the_ring() {
        for a in [trunc(&[2, 2]), qci(2)] {
            let fam = enumerate_cyclic_family(&a, &ints(&[0]), 3, 100, 0).unwrap();
            assert_eq!(fam.len(), 1);
            assert_eq!(fam[0].label, "A");
        }
    }

    #[test]
    fn quantum_family_contains_the_named_quotients() {
        let a = qci(2);
        let fam = enumerate_cyclic_family(&a, &ints(&[-1, 0, 1, 2]), 1, 5000, 0).unwrap();
        assert!(fam.len() <= distinct_ideals(&a, &ints(&[-1, 0, 1, 2])));
        for g in [[0, 1, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]] {
            let target = quotient_by(&a, &g);
            assert!(
                fam.iter().any(|f| f.module.dim() == target.dim()
                    && is_isomorphic(&f.module, &target, 0, DEFAULT_ISO_TRIALS).is_some()),
                "missing quotient by {g:?}"
            );
        }
    }

    #[test]
    fn enumeration_limit_enforced() {
        let a = trunc(&[2, 2]);
        let err = enumerate_cyclic_family(&a, &ints(&[-1, 0, 1, 2]), 3, 100, 0).unwrap_err();
        assert!(matches!(err, Error::EnumerationLimit { limit: 100, .. }));
    }

    #[test]
    fn multiset_counts_match_binomials() {
        for n in 1..5 {
            for k in 0..4 {
                let total: usize = (0..=k).map(|g| binomial(n + g - 1, g)).sum();
                assert_eq!(multisets(n, k).len(), total);
            }
        }
    }

    #[test]
    fn dual_numbers_family_audit() {
        let a = trunc(&[2]);
        let fam = enumerate_cyclic_family(&a, &ints(&[0, 1]), 1, 100, 0).unwrap();
        let rep = audit_family(&a, &fam, 20, 0).unwrap();
        assert_eq!(rep.fed_lower_bound, 0);
        assert_eq!(rep.fpd_estimate, 0);
        assert!(rep.uncertified.is_empty());
        assert!(!rep.has_failure());
        assert_eq!(rep.injective.left.value, PdValue::Finite(0));
        assert_eq!(rep.conditions.ext_deg_iff_pd.finding, Finding::Holds);
        assert_eq!(rep.conditions.cm_finite_are_free.finding, Finding::Holds);
        assert_eq!(rep.conditions.fed_below_id.finding, Finding::Holds);
        assert!(rep.members[1].self_ext.certified_infinite());
    }

    #[test]
    fn cube_family_audit() {
        let a = trunc(&[3]);
        let fam = vec![
            FamilyMember::new("A", free_module(&a, 1)),
            FamilyMember::new("A/(x)", quotient_by(&a, &[0, 1, 0])),
            FamilyMember::new("A/(x^2)", quotient_by(&a, &[0, 0, 1])),
        ];
        let rep = audit_family(&a, &fam, 20, 0).unwrap();
        assert_eq!(rep.fed_lower_bound, 0);
        for m in &rep.members[1..] {
            assert!(m.self_ext.certified_infinite());
            assert_eq!(m.self_ext.certificate, Certificate::Periodicity { start: 0, period: 2 });
        }
    }

    #[test]
    fn empty_family_rejected() {
        let a = trunc(&[2]);
        assert_eq!(audit_family(&a, &[], 5, 0).unwrap_err(), Error::EmptyFamily);
    }

    #[test]
    fn sums_with_the_ring_stay_consistent() {
        let a = trunc(&[2]);
        let k = quotient_by(&a, &[0, 1]);
        let s = direct_sum(&k, &free_module(&a, 1)).unwrap();
        let audit = audit_module("k+A", &s, 8, 0).unwrap();
        assert!(audit.with_ring.certified_infinite());
        assert_eq!(audit.garc.verdict, Verdict::Consistent);
    }
}
