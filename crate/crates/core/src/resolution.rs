//! Free resolutions, syzygies, and termination/periodicity detection.
//!
//! Step `i` of a resolution covers its target `T_i` (the module itself for
//! `i = 0`, otherwise the previous kernel) by a free module `F_i = A^{b_i}` and
//! records the kernel `Omega^{i+1} M` with actions restricted to the canonical
//! nullspace basis. Over a local algebra the minimal strategy lifts a basis of
//! the top `T_i / rad T_i`, so `b_i` are the Betti numbers.

use std::sync::Arc;

use crate::algebra::{span_rows, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{nullspace_from_rref, rref, Mat};
use crate::module::{free_module, is_isomorphic, IsoCertificate, ModuleRep};

/// Default number of random trials per isomorphism test.
pub const DEFAULT_ISO_TRIALS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverStrategy {
    /// Projective covers; requires a local algebra.
    Minimal,
    /// Minimal except at the given step, where a redundant free summand is added.
    Padded { step: usize },
    /// Standard basis vectors of the target, each taken when not already in
    /// the submodule generated by the earlier ones; any algebra.
    Generic,
}

#[derive(Clone, Debug)]
pub struct ResolutionStep {
    rank: usize,
    /// Images of the free generators, in coordinates of the target.
    generators: Vec<Vec<Scalar>>,
    /// The same images in coordinates of the previous free module (or of the
    /// module itself at step 0).
    differential: Vec<Vec<Scalar>>,
    cover: Mat,
    kernel_basis: Vec<Vec<Scalar>>,
    kernel: ModuleRep,
}

impl ResolutionStep {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    /// Generator images in the ambient coordinates of the previous term.
    pub fn differential(&self) -> &[Vec<Scalar>] {
        &self.differential
    }

    /// `dim(target) x rank*dim(A)` matrix of the cover `F_i -> T_i`.
    pub fn cover(&self) -> &Mat {
        &self.cover
    }

    /// Kernel basis in coordinates of `F_i`.
    pub fn kernel_basis(&self) -> &[Vec<Scalar>] {
        &self.kernel_basis
    }

    pub fn kernel(&self) -> &ModuleRep {
        &self.kernel
    }
}

/// A free resolution, extended on demand and cached.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: ModuleRep,
    strategy: CoverStrategy,
    steps: Vec<ResolutionStep>,
}

impl Resolution {
    pub fn new(module: ModuleRep, strategy: CoverStrategy) -> Result<Self> {
        if strategy != CoverStrategy::Generic && !module.algebra().is_local() {
            return Err(Error::NotLocal);
        }
        Ok(Resolution {
            module,
            strategy,
            steps: Vec::new(),
        })
    }

    /// Minimal over local algebras, generic otherwise.
    pub fn auto(module: ModuleRep) -> Self {
        let strategy = if module.algebra().is_local() {
            CoverStrategy::Minimal
        } else {
            CoverStrategy::Generic
        };
        Resolution {
            module,
            strategy,
            steps: Vec::new(),
        }
    }

    pub fn module(&self) -> &ModuleRep {
        &self.module
    }

    pub fn strategy(&self) -> CoverStrategy {
        self.strategy
    }

    pub fn is_minimal(&self) -> bool {
        self.strategy == CoverStrategy::Minimal
    }

    pub fn steps(&self) -> &[ResolutionStep] {
        &self.steps
    }

    pub fn betti(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.rank).collect()
    }

    pub fn terminated(&self) -> bool {
        self.steps.last().is_some_and(|s| s.kernel.is_zero())
    }

    /// Computes steps `0..=upto`, stopping early once a kernel vanishes.
    /// Already computed steps are kept.
    pub fn extend_to(&mut self, upto: usize) -> Result<()> {
        while self.steps.len() <= upto && !self.terminated() {
            let i = self.steps.len();
            let target = match i {
                0 => self.module.clone(),
                _ => self.steps[i - 1].kernel.clone(),
            };
            let mut generators = match self.strategy {
                CoverStrategy::Generic => greedy_generators(&target),
                _ => top_generators(&target),
            };
            if self.strategy == (CoverStrategy::Padded { step: i }) {
                let extra = generators
                    .first()
                    .cloned()
                    .unwrap_or_else(|| vec![target.algebra().field().zero(); target.dim()]);
                generators.push(extra);
            }
            let step = cover_step(&target, generators, self.steps.last())?;
            self.steps.push(step);
        }
        Ok(())
    }

    /// Rank of `F_i`: `Some(0)` past termination, `None` if not yet computed.
    pub fn rank_at(&self, i: usize) -> Option<usize> {
        match self.steps.get(i) {
            Some(s) => Some(s.rank),
            None if self.terminated() => Some(0),
            None => None,
        }
    }

    /// `Omega^n M`; the zero module past termination, `None` if not yet computed.
    pub fn syzygy(&self, n: usize) -> Option<ModuleRep> {
        if n == 0 {
            return Some(self.module.clone());
        }
        match self.steps.get(n - 1) {
            Some(s) => Some(s.kernel.clone()),
            None if self.terminated() => Some(ModuleRep::zero(self.module.algebra().clone())),
            None => None,
        }
    }

    /// Generator images of `d_i: F_i -> F_{i-1}` for `i >= 1`, each split into
    /// `rank_{i-1}` algebra elements. Empty past termination.
    pub fn differential_entries(&self, i: usize) -> Vec<Vec<Vec<Scalar>>> {
        assert!(i >= 1, "differentials start at d_1");
        let n = self.module.algebra().dim();
        match self.steps.get(i) {
            Some(s) => s
                .differential
                .iter()
                .map(|v| v.chunks(n).map(|c| c.to_vec()).collect())
                .collect(),
            None if self.terminated() => Vec::new(),
            None => panic!("resolution not computed through step {i}"),
        }
    }

    /// Full matrix of `d_i: F_i -> F_{i-1}`, `i >= 1`.
    pub fn free_differential(&self, i: usize) -> Mat {
        let a = self.module.algebra();
        let n = a.dim();
        let field = a.field();
        let rows = self.rank_at(i - 1).expect("computed") * n;
        let cols = self.rank_at(i).expect("computed") * n;
        let mut m = Mat::zeros(field, rows, cols);
        for (j, gen) in self.differential_entries(i).iter().enumerate() {
            // column for basis element e_k * g_j is the image e_k * d(g_j)
            for k in 0..n {
                let e_k = a.basis_element(k);
                for (l, entry) in gen.iter().enumerate() {
                    let prod = a.mul(&e_k, entry);
                    for (t, c) in prod.into_iter().enumerate() {
                        m.set(l * n + t, j * n + k, c);
                    }
                }
            }
        }
        m
    }

    /// Every kernel lies in `rad * F_i`, i.e. has no coordinates outside the
    /// declared radical in any free summand.
    pub fn check_minimality(&self) -> bool {
        let a = self.module.algebra();
        let n = a.dim();
        self.steps.iter().all(|s| {
            s.kernel_basis.iter().all(|v| {
                v.iter()
                    .enumerate()
                    .all(|(idx, c)| c.is_zero() || a.is_radical_index(idx % n))
            })
        })
    }
}

fn standard_basis(m: &ModuleRep) -> Vec<Vec<Scalar>> {
    let field = m.algebra().field();
    (0..m.dim())
        .map(|i| {
            let mut v = vec![field.zero(); m.dim()];
            v[i] = field.one();
            v
        })
        .collect()
}

fn greedy_generators(m: &ModuleRep) -> Vec<Vec<Scalar>> {
    let field = m.algebra().field();
    let mut span: Vec<Vec<Scalar>> = Vec::new();
    let mut chosen = Vec::new();
    for v in standard_basis(m) {
        if span.len() == m.dim() {
            break;
        }
        let mut test = span.clone();
        test.push(v.clone());
        if span_rows(field, m.dim(), &test).len() == span.len() {
            continue;
        }
        test.extend(m.actions().iter().map(|a| a.mul_vec(&v)));
        span = span_rows(field, m.dim(), &test);
        chosen.push(v);
    }
    chosen
}

/// Standard basis vectors complementing `rad * m`: the non-pivot columns of
/// the row-reduced radical image.
pub fn top_generators(m: &ModuleRep) -> Vec<Vec<Scalar>> {
    let a = m.algebra();
    let field = a.field();
    let images: Vec<Vec<Scalar>> = a
        .radical()
        .iter()
        .flat_map(|&r| (0..m.dim()).map(move |c| m.action(r).column(c)))
        .collect();
    let rows = span_rows(field, m.dim(), &images);
    let free: Vec<usize> = if rows.is_empty() {
        (0..m.dim()).collect()
    } else {
        rref(&Mat::from_rows(field, rows, m.dim())).free_columns()
    };
    let basis = standard_basis(m);
    free.into_iter().map(|f| basis[f].clone()).collect()
}

fn cover_step(
    target: &ModuleRep,
    generators: Vec<Vec<Scalar>>,
    previous: Option<&ResolutionStep>,
) -> Result<ResolutionStep> {
    let a = target.algebra();
    let field = a.field();
    let n = a.dim();
    let rank = generators.len();
    let mut cover = Mat::zeros(field, target.dim(), rank * n);
    for (l, g) in generators.iter().enumerate() {
        for k in 0..n {
            let image = target.action(k).mul_vec(g);
            for (r, c) in image.into_iter().enumerate() {
                cover.set(r, l * n + k, c);
            }
        }
    }
    if cover.rank() != target.dim() {
        return Err(Error::InvalidParameter("free cover is not surjective".into()));
    }
    let red = rref(&cover);
    let free_cols = red.free_columns();
    let kernel_basis = nullspace_from_rref(&red);
    let kernel = restrict_free(a, rank, &kernel_basis, &free_cols)?;
    let differential = match previous {
        None => generators.clone(),
        Some(prev) => generators
            .iter()
            .map(|g| {
                let mut v = vec![field.zero(); prev.rank * n];
                for (c, basis) in g.iter().zip(&prev.kernel_basis) {
                    if c.is_zero() {
                        continue;
                    }
                    for (vi, bi) in v.iter_mut().zip(basis) {
                        *vi = &*vi + &(c * bi);
                    }
                }
                v
            })
            .collect(),
    };
    Ok(ResolutionStep {
        rank,
        generators,
        differential,
        cover,
        kernel_basis,
        kernel,
    })
}

/// Restriction of `A^rank` to the span of canonical nullspace vectors, whose
/// coordinates are read off the free columns.
fn restrict_free(
    a: &Arc<AlgebraPresentation>,
    rank: usize,
    basis: &[Vec<Scalar>],
    free_cols: &[usize],
) -> Result<ModuleRep> {
    let field = a.field();
    let n = a.dim();
    let action = (0..n)
        .map(|i| {
            let images: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|v| {
                    let mut w = vec![field.zero(); rank * n];
                    for l in 0..rank {
                        for j in 0..n {
                            let c = &v[l * n + j];
                            if c.is_zero() {
                                continue;
                            }
                            for (k, s) in a.product(i, j) {
                                let idx = l * n + k;
                                w[idx] = &w[idx] + &(c * s);
                            }
                        }
                    }
                    free_cols.iter().map(|&f| w[f].clone()).collect()
                })
                .collect();
            Mat::from_columns(field, basis.len(), &images)
        })
        .collect();
    ModuleRep::new(a.clone(), basis.len(), action)
}

/// Minimal free cover `A^b -> m` lifting a basis of the top of `m`.
pub fn minimal_cover(m: &ModuleRep) -> Result<(ModuleRep, Mat)> {
    if !m.algebra().is_local() {
        return Err(Error::NotLocal);
    }
    let step = cover_step(m, top_generators(m), None)?;
    Ok((free_module(m.algebra(), step.rank), step.cover))
}

/// A copy of `r` extended through step `upto`.
pub fn extend_resolution(r: &Resolution, upto: usize) -> Result<Resolution> {
    let mut out = r.clone();
    out.extend_to(upto)?;
    Ok(out)
}

/// `Omega^n m` from the minimal resolution.
pub fn syzygy(m: &ModuleRep, n: usize) -> Result<ModuleRep> {
    let mut r = Resolution::new(m.clone(), CoverStrategy::Minimal)?;
    if n > 0 {
        r.extend_to(n - 1)?;
    }
    Ok(r.syzygy(n).expect("extended far enough"))
}

/// The first step whose kernel vanishes. For a minimal resolution this is the
/// projective dimension.
pub fn detect_termination(r: &Resolution) -> Option<usize> {
    r.steps.iter().position(|s| s.kernel.is_zero())
}

/// `Omega^start M` is isomorphic to `Omega^{start+period} M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityCertificate {
    pub start: usize,
    pub period: usize,
    pub iso: IsoCertificate,
}

impl PeriodicityCertificate {
    pub fn verify(&self, r: &Resolution) -> bool {
        match (r.syzygy(self.start), r.syzygy(self.start + self.period)) {
            (Some(a), Some(b)) => !a.is_zero() && self.iso.verify(&a, &b),
            _ => false,
        }
    }
}

pub fn detect_periodicity(r: &Resolution, window: usize, seed: u64) -> Option<PeriodicityCertificate> {
    detect_periodicity_with_trials(r, window, seed, DEFAULT_ISO_TRIALS)
}

/// Scans pairs `s < s + p <= window` ordered by `(s + p, s)` among computed,
/// nonzero syzygies with equal dimension and Betti number, returning the
/// first certified isomorphism.
pub fn detect_periodicity_with_trials(
    r: &Resolution,
    window: usize,
    seed: u64,
    trials: usize,
) -> Option<PeriodicityCertificate> {
    let syzygies: Vec<Option<ModuleRep>> = (0..=window).map(|n| r.syzygy(n)).collect();
    for total in 1..=window {
        for start in 0..total {
            let (Some(a), Some(b)) = (&syzygies[start], &syzygies[total]) else {
                continue;
            };
            if a.is_zero() || a.dim() != b.dim() {
                continue;
            }
            match (r.rank_at(start), r.rank_at(total)) {
                (Some(x), Some(y)) if x == y => {}
                _ => continue,
            }
            if let Some(iso) = is_isomorphic(a, b, seed, trials) {
                return Some(PeriodicityCertificate {
                    start,
                    period: total - start,
                    iso,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{base_field, build_quantum_ci, build_truncated_polynomial};
    use crate::field::FieldSpec;
    use crate::module::{cyclic_quotient, direct_sum, validate_module};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn trunc(e: &[usize]) -> Arc<AlgebraPresentation> {
        Arc::new(build_truncated_polynomial(q(), e).unwrap())
    }

    fn quotient_by(a: &Arc<AlgebraPresentation>, coords: &[i64]) -> ModuleRep {
        let g: Vec<Scalar> = coords.iter().map(|&c| q().from_i64(c)).collect();
        cyclic_quotient(a, &[g]).unwrap()
    }

    #[test]
    fn minimal_cover_examples() {
        let a = trunc(&[2]);
        let (f, cover) = minimal_cover(&free_module(&a, 2)).unwrap();
        assert_eq!(f.dim(), 4);
        assert_eq!(cover, Mat::identity(q(), 4));

        let k = quotient_by(&a, &[0, 1]);
        let (f, cover) = minimal_cover(&k).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(cover.cols() - cover.rank(), 1);

        let b = Arc::new(build_quantum_ci(q(), &q().from_i64(2)).unwrap());
        let m = quotient_by(&b, &[0, 1, 1, 0]);
        let (f, cover) = minimal_cover(&m).unwrap();
        assert_eq!(f.dim(), 4);
        assert_eq!(cover.cols() - cover.rank(), 2);
    }

    #[test]
    fn non_local_rejected() {
        // k x k as a two-dimensional algebra with an empty radical
        let f = q();
        let a = AlgebraPresentation::new(
            "kxk",
            f,
            vec!["1".into(), "e".into()],
            0,
            vec![],
            vec![
                (0, 0, vec![(0, f.one())]),
                (0, 1, vec![(1, f.one())]),
                (1, 0, vec![(1, f.one())]),
                (1, 1, vec![(1, f.one())]),
            ],
        )
        .unwrap();
        let a = Arc::new(a);
        let m = free_module(&a, 1);
        assert_eq!(minimal_cover(&m).unwrap_err(), Error::NotLocal);
        assert!(Resolution::new(m.clone(), CoverStrategy::Minimal).is_err());
        let mut r = Resolution::auto(m);
        assert_eq!(r.strategy(), CoverStrategy::Generic);
        r.extend_to(3).unwrap();
        assert_eq!(r.betti(), vec![1]);
        assert_eq!(detect_termination(&r), Some(0));
    }

    #[test]
    fn simple_over_dual_numbers_is_periodic() {
        let a = trunc(&[2]);
        let k = quotient_by(&a, &[0, 1]);
        let mut r = Resolution::new(k.clone(), CoverStrategy::Minimal).unwrap();
        r.extend_to(5).unwrap();
        assert_eq!(r.betti(), vec![1; 6]);
        assert!(r.check_minimality());
        let omega = r.syzygy(1).unwrap();
        assert_eq!(omega.dim(), 1);
        assert!(omega.action(1).is_zero());
        let cert = detect_periodicity(&r, 4, 0).unwrap();
        assert_eq!((cert.start, cert.period), (0, 1));
        assert!(cert.verify(&r));

        let mut long = Resolution::new(k, CoverStrategy::Minimal).unwrap();
        long.extend_to(50).unwrap();
        assert_eq!(detect_termination(&long), None);
    }

    #[test]
    fn truncated_cubic_alternates() {
        let a = trunc(&[3]);
        let n = quotient_by(&a, &[0, 0, 1]);
        let mut r = Resolution::new(n.clone(), CoverStrategy::Minimal).unwrap();
        r.extend_to(4).unwrap();
        assert_eq!(r.betti(), vec![1; 5]);
        let dims: Vec<usize> = (0..=4).map(|i| r.syzygy(i).unwrap().dim()).collect();
        assert_eq!(dims, vec![2, 1, 2, 1, 2]);
        assert!(is_isomorphic(&r.syzygy(2).unwrap(), &n, 0, 16).is_some());
        let mut r6 = r.clone();
        r6.extend_to(6).unwrap();
        let cert = detect_periodicity(&r6, 6, 0).unwrap();
        assert_eq!((cert.start, cert.period), (0, 2));
    }

    #[test]
    fn free_and_field_terminate() {
        let a = trunc(&[2, 2]);
        let mut r = Resolution::new(free_module(&a, 3), CoverStrategy::Minimal).unwrap();
        r.extend_to(5).unwrap();
        assert_eq!(r.betti(), vec![3]);
        assert_eq!(detect_termination(&r), Some(0));
        let before = r.betti();
        r.extend_to(9).unwrap();
        assert_eq!(r.betti(), before);
        assert!(r.syzygy(4).unwrap().is_zero());

        let k = Arc::new(base_field(q()));
        let mut r = Resolution::new(free_module(&k, 1), CoverStrategy::Minimal).unwrap();
        r.extend_to(2).unwrap();
        assert_eq!(detect_termination(&r), Some(0));

        let mut r = Resolution::new(ModuleRep::zero(a), CoverStrategy::Minimal).unwrap();
        r.extend_to(3).unwrap();
        assert_eq!((r.betti(), detect_termination(&r)), (vec![0], Some(0)));
    }

    #[test]
    fn syzygy_examples() {
        let b = Arc::new(build_quantum_ci(q(), &q().from_i64(2)).unwrap());
        let m = quotient_by(&b, &[0, 1, 1, 0]);
        assert_eq!(syzygy(&m, 0).unwrap(), m);
        let s1 = syzygy(&m, 1).unwrap();
        assert_eq!(s1.dim(), 2);
        assert!(validate_module(&s1).is_ok());
    }

    #[test]
    fn free_complex_is_exact() {
        let a = trunc(&[2, 2]);
        let k = cyclic_quotient(&a, &[a.basis_element(1), a.basis_element(2)]).unwrap();
        let mut r = Resolution::new(k, CoverStrategy::Minimal).unwrap();
        r.extend_to(4).unwrap();
        assert_eq!(r.betti(), vec![1, 2, 3, 4, 5]);
        for i in 1..4 {
            let d_i = r.free_differential(i);
            let d_next = r.free_differential(i + 1);
            assert!(d_i.mul(&d_next).is_zero());
            assert_eq!(d_next.rank(), d_i.cols() - d_i.rank());
        }
    }

    #[test]
    fn padded_resolution_is_not_minimal() {
        let a = trunc(&[2]);
        let k = quotient_by(&a, &[0, 1]);
        let m = direct_sum(&k, &free_module(&a, 1)).unwrap();
        let mut r = Resolution::new(m, CoverStrategy::Padded { step: 1 }).unwrap();
        r.extend_to(4).unwrap();
        assert_eq!(r.betti()[..3], [2, 2, 2]);
        assert!(!r.check_minimality());
    }

    #[test]
    fn determinism() {
        let b = Arc::new(build_quantum_ci(q(), &q().from_i64(2)).unwrap());
        let m = quotient_by(&b, &[0, 1, 1, 0]);
        let mut r1 = Resolution::new(m.clone(), CoverStrategy::Minimal).unwrap();
        let mut r2 = Resolution::new(m, CoverStrategy::Minimal).unwrap();
        r1.extend_to(6).unwrap();
        r2.extend_to(6).unwrap();
        assert_eq!(r1.betti(), r2.betti());
        for n in 0..=6 {
            assert_eq!(r1.syzygy(n), r2.syzygy(n));
        }
    }
}
