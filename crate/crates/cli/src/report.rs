//! Serializable report shapes and their text rendering. Every JSON report
//! re-parses into the same struct and re-serializes to identical bytes.

use std::fmt::Write;

use fed_core::audit::{
    ConditionFinding, DualitySymmetry, FamilyAuditReport, FiniteFedConditions, GarcVerdict, GorensteinSymmetry,
    MemberAudit, PdMethod, PdReport, PdValue, RingExtCheck, UncertifiedEntry, Verdict,
};
use fed_core::ext::{Certificate, CmReport, Degree, ExtDegreeReport, ExtStatus};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Infinite {
    #[serde(rename = "infinite")]
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeJson {
    Finite(usize),
    Infinite(Infinite),
}

impl From<Degree> for DegreeJson {
    fn from(d: Degree) -> Self {
        match d {
            Degree::Finite(n) => DegreeJson::Finite(n),
            Degree::Infinite => DegreeJson::Infinite(Infinite::Infinite),
        }
    }
}

impl std::fmt::Display for DegreeJson {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DegreeJson::Finite(n) => write!(f, "{n}"),
            DegreeJson::Infinite(_) => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateJson {
    FinitePd { pd: usize },
    Periodicity { start: usize, period: usize },
    CutoffOnly,
}

impl From<Certificate> for CertificateJson {
    fn from(c: Certificate) -> Self {
        match c {
            Certificate::FinitePd { pd } => CertificateJson::FinitePd { pd },
            Certificate::Periodicity { start, period } => CertificateJson::Periodicity { start, period },
            Certificate::CutoffOnly => CertificateJson::CutoffOnly,
        }
    }
}

impl std::fmt::Display for CertificateJson {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertificateJson::FinitePd { pd } => write!(f, "FinitePd({pd})"),
            CertificateJson::Periodicity { start, period } => write!(f, "Periodicity({start}, {period})"),
            CertificateJson::CutoffOnly => write!(f, "CutoffOnly"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDegreeJson {
    pub module: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<DegreeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub certificate: CertificateJson,
    pub cutoff: usize,
    pub last_nonzero: Option<usize>,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub zero_module: bool,
}

impl ExtDegreeJson {
    pub fn new(module: &str, r: &ExtDegreeReport) -> Self {
        let (value, bound) = match r.status {
            ExtStatus::Exact(d) => (Some(d.into()), None),
            ExtStatus::LowerBound(b) => (None, Some(b)),
        };
        ExtDegreeJson {
            module: module.to_string(),
            value,
            bound,
            certificate: r.certificate.into(),
            cutoff: r.cutoff,
            last_nonzero: r.last_nonzero,
            dims: r.dims.clone(),
            zero_module: r.zero_module,
        }
    }

    /// `= v` for exact values, `>= b` for lower bounds.
    pub fn value_text(&self) -> String {
        match (&self.value, self.bound) {
            (Some(v), _) => format!("= {v}"),
            (None, Some(b)) => format!("≥ {b}"),
            (None, None) => "?".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PdValueJson {
    #[serde(rename = "finite")]
    Finite(usize),
    #[serde(rename = "infinite")]
    Infinite,
    #[serde(rename = "unknown_beyond_cutoff")]
    Unknown,
}

impl From<PdValue> for PdValueJson {
    fn from(v: PdValue) -> Self {
        match v {
            PdValue::Finite(n) => PdValueJson::Finite(n),
            PdValue::Infinite => PdValueJson::Infinite,
            PdValue::UnknownBeyondCutoff => PdValueJson::Unknown,
        }
    }
}

impl std::fmt::Display for PdValueJson {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PdValueJson::Finite(n) => write!(f, "{n}"),
            PdValueJson::Infinite => write!(f, "infinite"),
            PdValueJson::Unknown => write!(f, "unknown beyond cutoff"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdJson {
    pub module: String,
    pub value: PdValueJson,
    pub method: PdMethod,
    pub cutoff: usize,
    pub betti: Vec<usize>,
    pub ext_against_ring: RingExtCheck,
}

impl PdJson {
    pub fn new(module: &str, r: &PdReport) -> Self {
        PdJson {
            module: module.to_string(),
            value: r.value.into(),
            method: r.method,
            cutoff: r.cutoff,
            betti: r.betti.clone(),
            ext_against_ring: r.ring_ext.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityJson {
    pub start: usize,
    pub period: usize,
    pub seed: u64,
    pub trial: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveJson {
    pub module: String,
    pub upto: usize,
    pub betti: Vec<usize>,
    pub syzygy_dims: Vec<usize>,
    pub minimal: bool,
    pub terminated_at: Option<usize>,
    pub periodicity: Option<PeriodicityJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtJson {
    pub source: String,
    pub target: String,
    pub cutoff: usize,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmJson {
    pub dims: Vec<usize>,
    pub vanishing_bound: Option<usize>,
    pub certificate: CertificateJson,
    pub in_cm: Option<bool>,
}

impl From<&CmReport> for CmJson {
    fn from(c: &CmReport) -> Self {
        CmJson {
            dims: c.dims.clone(),
            vanishing_bound: c.vanishing_bound,
            certificate: c.certificate.into(),
            in_cm: c.in_cm,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GarcJson {
    pub verdict: Verdict,
    pub n_star: ExtDegreeJson,
    pub pd: PdValueJson,
    pub flagged_candidate: bool,
    pub chain_failure: bool,
}

impl GarcJson {
    pub fn new(module: &str, g: &GarcVerdict) -> Self {
        GarcJson {
            verdict: g.verdict,
            n_star: ExtDegreeJson::new(&format!("{module} + A"), &g.n_star),
            pd: g.pd.value.into(),
            flagged_candidate: g.flagged_candidate,
            chain_failure: g.chain_failure,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleAuditJson {
    pub module: String,
    pub dim: usize,
    pub self_ext: ExtDegreeJson,
    pub with_ring: ExtDegreeJson,
    pub pd: PdJson,
    pub cm: CmJson,
    pub garc: GarcJson,
    pub duality: DualitySymmetry,
}

impl ModuleAuditJson {
    pub fn new(m: &MemberAudit) -> Self {
        ModuleAuditJson {
            module: m.label.clone(),
            dim: m.pd.module.dim(),
            self_ext: ExtDegreeJson::new(&m.label, &m.self_ext),
            with_ring: ExtDegreeJson::new(&format!("{} + A", m.label), &m.with_ring),
            pd: PdJson::new(&m.label, &m.pd),
            cm: (&m.cm).into(),
            garc: GarcJson::new(&m.label, &m.garc),
            duality: m.duality.clone(),
        }
    }

    pub fn has_failure(&self) -> bool {
        self.garc.verdict == Verdict::Violation
            || self.garc.chain_failure
            || self.pd.ext_against_ring.agrees == Some(false)
            || !self.duality.agrees
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjdimJson {
    pub algebra: String,
    pub left: PdValueJson,
    pub right: PdValueJson,
    pub self_injective: bool,
    pub left_dual_is_regular: bool,
    pub right_dual_is_regular: bool,
    pub dual_plus_ring: ExtDegreeJson,
    pub symmetry_equality: Option<bool>,
    pub symmetry_inequality: Option<bool>,
}

impl InjdimJson {
    pub fn new(algebra: &str, g: &GorensteinSymmetry) -> Self {
        InjdimJson {
            algebra: algebra.to_string(),
            left: g.injective.left.value.into(),
            right: g.injective.right.value.into(),
            self_injective: g.injective.self_injective(),
            left_dual_is_regular: g.injective.left_regular_iso.is_some(),
            right_dual_is_regular: g.injective.right_regular_iso.is_some(),
            dual_plus_ring: ExtDegreeJson::new("D(A) + A", &g.dual_plus_ring),
            symmetry_equality: g.equality,
            symmetry_inequality: g.inequality,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyAuditJson {
    pub algebra: String,
    pub cutoff: usize,
    pub seed: u64,
    pub members: Vec<ModuleAuditJson>,
    pub fed_lower_bound: usize,
    pub fpd_estimate: usize,
    pub uncertified: Vec<UncertifiedEntry>,
    pub conditions: FiniteFedConditions,
    pub injective_left: PdValueJson,
    pub injective_right: PdValueJson,
    pub garc_violations: Vec<usize>,
    pub garc_flagged: Vec<usize>,
    pub internal_failures: Vec<String>,
}

impl FamilyAuditJson {
    pub fn new(algebra: &str, seed: u64, r: &FamilyAuditReport) -> Self {
        FamilyAuditJson {
            algebra: algebra.to_string(),
            cutoff: r.cutoff,
            seed,
            members: r.members.iter().map(ModuleAuditJson::new).collect(),
            fed_lower_bound: r.fed_lower_bound,
            fpd_estimate: r.fpd_estimate,
            uncertified: r.uncertified.clone(),
            conditions: r.conditions.clone(),
            injective_left: r.injective.left.value.into(),
            injective_right: r.injective.right.value.into(),
            garc_violations: r.garc_violations.clone(),
            garc_flagged: r.garc_flagged.clone(),
            internal_failures: r.internal_failures.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionJson {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

fn dims_row(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn render_ext(r: &ExtJson) -> String {
    let mut s = format!("Ext^i({}, {}) through degree {}\n", r.source, r.target, r.cutoff);
    s.push_str("  i  dim\n");
    for (i, d) in r.dims.iter().enumerate() {
        let _ = writeln!(s, "{i:>3}  {d}");
    }
    s
}

pub fn render_extdeg(r: &ExtDegreeJson) -> String {
    let mut s = format!("ext.deg({}) {}  [{}; cutoff {}]\n", r.module, r.value_text(), r.certificate, r.cutoff);
    let _ = writeln!(s, "  dims: {}", dims_row(&r.dims));
    if r.zero_module {
        s.push_str("  zero module: the empty supremum is taken to be 0\n");
    }
    s
}

pub fn render_resolve(r: &ResolveJson) -> String {
    let mut s = format!("resolution of {} through step {}\n", r.module, r.upto);
    s.push_str("  i  betti  dim syzygy\n");
    for (i, b) in r.betti.iter().enumerate() {
        let _ = writeln!(s, "{i:>3}  {b:>5}  {:>10}", r.syzygy_dims[i + 1]);
    }
    match (r.terminated_at, &r.periodicity) {
        (Some(n), _) => {
            let _ = writeln!(s, "  terminates: projective dimension {n}");
        }
        (None, Some(p)) => {
            let _ = writeln!(
                s,
                "  periodic: syzygy {} is isomorphic to syzygy {} (trial {})",
                p.start,
                p.start + p.period,
                p.trial
            );
        }
        (None, None) => s.push_str("  no termination or repetition found\n"),
    }
    s
}

pub fn render_pd(r: &PdJson) -> String {
    let mut s = format!("pd({}) = {}  [{:?}; cutoff {}]\n", r.module, r.value, r.method, r.cutoff);
    let _ = writeln!(s, "  betti: {}", dims_row(&r.betti));
    let _ = writeln!(s, "  Ext^i(M, A): {}", dims_row(&r.ext_against_ring.dims));
    match r.ext_against_ring.agrees {
        Some(true) => s.push_str("  cross-check against Ext(M, A): agrees\n"),
        Some(false) => s.push_str("  cross-check against Ext(M, A): FAILED\n"),
        None => {}
    }
    s
}

pub fn render_injdim(r: &InjdimJson) -> String {
    let mut s = format!("injective dimension of {}\n", r.algebra);
    let _ = writeln!(s, "  as left module:  {}", r.left);
    let _ = writeln!(s, "  as right module: {}", r.right);
    let _ = writeln!(s, "  self-injective: {}", if r.self_injective { "yes" } else { "no" });
    let _ = writeln!(s, "  ext.deg(D(A) + A) {}  [{}]", r.dual_plus_ring.value_text(), r.dual_plus_ring.certificate);
    let tri = |v: Option<bool>| match v {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "uncertified",
    };
    let _ = writeln!(s, "  right id = ext.deg(D(A) + A): {}", tri(r.symmetry_equality));
    let _ = writeln!(s, "  right id <= left id: {}", tri(r.symmetry_inequality));
    s
}

pub fn render_module_audit(r: &ModuleAuditJson) -> String {
    let mut s = format!("{} (dim {})\n", r.module, r.dim);
    let _ = writeln!(s, "  ext.deg(M)     {}  [{}]", r.self_ext.value_text(), r.self_ext.certificate);
    let _ = writeln!(s, "  ext.deg(M + A) {}  [{}]", r.with_ring.value_text(), r.with_ring.certificate);
    let _ = writeln!(s, "  pd(M)          {}  [{:?}]", r.pd.value, r.pd.method);
    let cm = match r.cm.in_cm {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undetermined",
    };
    let _ = writeln!(s, "  in CM(A): {cm}");
    let flag = if r.garc.flagged_candidate { " (flagged candidate)" } else { "" };
    let _ = writeln!(s, "  GARC: {:?}{flag}", r.garc.verdict);
    let _ = writeln!(
        s,
        "  duality symmetry: {}",
        if r.duality.agrees { "agrees" } else { "DISAGREES" }
    );
    s
}

fn finding(c: &ConditionFinding) -> String {
    if c.witnesses.is_empty() {
        format!("{:?}", c.finding)
    } else {
        format!("{:?} (members {:?})", c.finding, c.witnesses)
    }
}

pub fn render_family(r: &FamilyAuditJson) -> String {
    let mut s = format!(
        "family audit of {} ({} members, cutoff {})\n",
        r.algebra,
        r.members.len(),
        r.cutoff
    );
    for m in &r.members {
        for line in render_module_audit(m).lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    let _ = writeln!(s, "fed lower bound (certified): {}", r.fed_lower_bound);
    let _ = writeln!(s, "fpd estimate (certified): {}", r.fpd_estimate);
    let _ = writeln!(s, "injective dimension: left {}, right {}", r.injective_left, r.injective_right);
    if !r.uncertified.is_empty() {
        s.push_str("uncertified members:\n");
        for u in &r.uncertified {
            let _ = writeln!(s, "  {} ext.deg ≥ {} (observed)", u.label, u.observed_bound);
        }
    }
    let _ = writeln!(s, "ext.deg finite iff pd finite: {}", finding(&r.conditions.ext_deg_iff_pd));
    let _ = writeln!(s, "CM members of finite ext.deg are free: {}", finding(&r.conditions.cm_finite_are_free));
    let _ = writeln!(s, "fed <= id: {}", finding(&r.conditions.fed_below_id));
    if !r.garc_flagged.is_empty() {
        let _ = writeln!(s, "GARC failure candidates (uncertified): {:?}", r.garc_flagged);
    }
    if !r.garc_violations.is_empty() {
        let _ = writeln!(s, "GARC VIOLATIONS: {:?}", r.garc_violations);
    }
    for f in &r.internal_failures {
        let _ = writeln!(s, "INTERNAL FAILURE: {f}");
    }
    s
}

pub fn render_criteria(rs: &[CriterionJson]) -> String {
    let mut s = String::new();
    for r in rs {
        let _ = writeln!(
            s,
            "[{}] {:>2}. {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.detail
        );
    }
    let passed = rs.iter().filter(|r| r.passed).count();
    let _ = writeln!(s, "{passed}/{} criteria passed", rs.len());
    s
}
