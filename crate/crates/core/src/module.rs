//! Finitely generated left modules as matrix representations.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{opposite, span_rows, AlgebraPresentation, Axiom, ValidationReport};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{nullspace_basis, rref, Mat, Subspace};

/// A left module: a vector space with one action matrix per algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    algebra: Arc<AlgebraPresentation>,
    dim: usize,
    action: Vec<Mat>,
}

impl ModuleRep {
    /// Checks shapes only; the module axioms are checked by [`validate_module`].
    pub fn new(algebra: Arc<AlgebraPresentation>, dim: usize, action: Vec<Mat>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::MalformedModule(format!(
                "expected {} action matrices, found {}",
                algebra.dim(),
                action.len()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::MalformedModule(format!(
                    "action matrix {i} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::MalformedModule(format!("action matrix {i} is over the wrong field")));
            }
        }
        Ok(ModuleRep { algebra, dim, action })
    }

    pub fn zero(algebra: Arc<AlgebraPresentation>) -> Self {
        let field = algebra.field();
        let action = vec![Mat::zeros(field, 0, 0); algebra.dim()];
        ModuleRep {
            algebra,
            dim: 0,
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    /// Matrix by which an algebra element acts.
    pub fn act(&self, element: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.algebra.field(), self.dim, self.dim);
        for (k, c) in element.iter().enumerate() {
            m.add_scaled(c, &self.action[k]);
        }
        m
    }

    pub fn same_algebra(&self, other: &ModuleRep) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.same_structure(&other.algebra)
    }

    /// Restriction to the submodule spanned by independent `vectors`, which
    /// must be closed under the action. Coordinates follow the given basis.
    pub fn submodule(&self, vectors: &[Vec<Scalar>]) -> ModuleRep {
        if vectors.is_empty() {
            return ModuleRep::zero(self.algebra.clone());
        }
        let field = self.algebra.field();
        let sub = Subspace::new(field, self.dim, vectors);
        let action = self
            .action
            .iter()
            .map(|a| {
                let images: Vec<Vec<Scalar>> = vectors.iter().map(|v| sub.coordinates(&a.mul_vec(v))).collect();
                Mat::from_columns(field, vectors.len(), &images)
            })
            .collect();
        ModuleRep {
            algebra: self.algebra.clone(),
            dim: vectors.len(),
            action,
        }
    }

    /// Quotient by the submodule generated by `vectors`. The quotient basis is
    /// the images of the standard basis vectors at the non-pivot columns of the
    /// row-reduced submodule.
    pub fn quotient(&self, vectors: &[Vec<Scalar>]) -> ModuleRep {
        let field = self.algebra.field();
        let generated: Vec<Vec<Scalar>> = vectors
            .iter()
            .flat_map(|v| self.action.iter().map(move |a| a.mul_vec(v)))
            .collect();
        let rows = span_rows(field, self.dim, &generated);
        let (pivots, free) = if rows.is_empty() {
            (Vec::new(), (0..self.dim).collect::<Vec<_>>())
        } else {
            let red = rref(&Mat::from_rows(field, rows.clone(), self.dim));
            (red.pivots.clone(), red.free_columns())
        };
        let reduce = |mut w: Vec<Scalar>| -> Vec<Scalar> {
            for (row, &p) in rows.iter().zip(&pivots) {
                let c = w[p].clone();
                if c.is_zero() {
                    continue;
                }
                for (wk, rk) in w.iter_mut().zip(row) {
                    *wk = &*wk - &(&c * rk);
                }
            }
            free.iter().map(|&f| w[f].clone()).collect()
        };
        let n = free.len();
        let action = self
            .action
            .iter()
            .map(|a| {
                let images: Vec<Vec<Scalar>> = free.iter().map(|&f| reduce(a.column(f))).collect();
                Mat::from_columns(field, n, &images)
            })
            .collect();
        ModuleRep {
            algebra: self.algebra.clone(),
            dim: n,
            action,
        }
    }

    /// The module transported along an invertible change of basis `p`
    /// (new actions `p^{-1} a p`).
    pub fn change_basis(&self, p: &Mat) -> Option<ModuleRep> {
        let inv = p.inverse()?;
        let action = self.action.iter().map(|a| inv.mul(a).mul(p)).collect();
        Some(ModuleRep {
            algebra: self.algebra.clone(),
            dim: self.dim,
            action,
        })
    }
}

/// Checks that the unit acts as the identity and that the actions respect the
/// structure constants. Each failure names the offending basis pair.
pub fn validate_module(m: &ModuleRep) -> ValidationReport {
    let mut report = ValidationReport::default();
    let a = m.algebra();
    let field = a.field();
    if m.action(a.unit()) != &Mat::identity(field, m.dim()) {
        report.record(Axiom::ModuleUnit, vec![a.unit()]);
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = m.action(i).mul(m.action(j));
            let mut rhs = Mat::zeros(field, m.dim(), m.dim());
            for (k, c) in a.product(i, j) {
                rhs.add_scaled(c, m.action(*k));
            }
            if lhs != rhs {
                report.record(Axiom::ModuleStructure, vec![i, j]);
            }
        }
    }
    report
}

/// `A^rank` with block-diagonal copies of the left regular representation.
pub fn free_module(a: &Arc<AlgebraPresentation>, rank: usize) -> ModuleRep {
    let field = a.field();
    let n = a.dim();
    let action = (0..n)
        .map(|i| {
            let block = a.left_regular(i);
            let mut m = Mat::zeros(field, rank * n, rank * n);
            for r in 0..rank {
                m.write_block(r * n, r * n, &block);
            }
            m
        })
        .collect();
    ModuleRep {
        algebra: a.clone(),
        dim: rank * n,
        action,
    }
}

pub fn direct_sum(m: &ModuleRep, n: &ModuleRep) -> Result<ModuleRep> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let action = m.action.iter().zip(&n.action).map(|(a, b)| a.block_diag(b)).collect();
    Ok(ModuleRep {
        algebra: m.algebra.clone(),
        dim: m.dim + n.dim,
        action,
    })
}

/// `A / (A g_1 + .. + A g_r)` for algebra elements `g_i`.
pub fn cyclic_quotient(a: &Arc<AlgebraPresentation>, generators: &[Vec<Scalar>]) -> Result<ModuleRep> {
    for g in generators {
        if g.len() != a.dim() || g.iter().any(|c| c.field() != a.field()) {
            return Err(Error::InvalidParameter(format!(
                "generator is not an element of {}",
                a.name()
            )));
        }
    }
    Ok(free_module(a, 1).quotient(generators))
}

/// A basis of `Hom_A(source, target)`, each element a `dim(target) x dim(source)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasis {
    pub basis: Vec<Mat>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coefficients: &[Scalar], rows: usize, cols: usize) -> Mat {
        let field = coefficients
            .first()
            .map(|c| c.field())
            .or_else(|| self.basis.first().map(|b| b.field()))
            .expect("nonempty combination");
        let mut m = Mat::zeros(field, rows, cols);
        for (c, b) in coefficients.iter().zip(&self.basis) {
            m.add_scaled(c, b);
        }
        m
    }
}

/// Canonical basis of the A-linear maps `m -> n`: the kernel of the stacked
/// intertwining equations `phi a_m(e_i) = a_n(e_i) phi`, with unknowns in
/// row-major order.
pub fn hom_basis(m: &ModuleRep, n: &ModuleRep) -> Result<HomBasis> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let a = m.algebra();
    let field = a.field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(HomBasis { basis: Vec::new() });
    }
    let gens: Vec<usize> = (0..a.dim()).filter(|&i| i != a.unit()).collect();
    let mut eqs = Mat::zeros(field, gens.len() * unknowns, unknowns);
    for (g, &i) in gens.iter().enumerate() {
        let am = m.action(i);
        let an = n.action(i);
        for r in 0..dn {
            for c in 0..dm {
                let row = g * unknowns + r * dm + c;
                for t in 0..dm {
                    let v = am.get(t, c);
                    if !v.is_zero() {
                        let col = r * dm + t;
                        eqs.set(row, col, eqs.get(row, col) + v);
                    }
                }
                for t in 0..dn {
                    let v = an.get(r, t);
                    if !v.is_zero() {
                        let col = t * dm + c;
                        eqs.set(row, col, eqs.get(row, col) - v);
                    }
                }
            }
        }
    }
    let basis = nullspace_basis(&eqs)
        .into_iter()
        .map(|v| Mat::from_rows(field, v.chunks(dm).map(|c| c.to_vec()).collect(), dm))
        .collect();
    Ok(HomBasis { basis })
}

/// Vector-space dual with transposed actions, a module over the opposite algebra.
pub fn dual(m: &ModuleRep) -> ModuleRep {
    ModuleRep {
        algebra: Arc::new(opposite(m.algebra())),
        dim: m.dim,
        action: m.action.iter().map(Mat::transpose).collect(),
    }
}

/// An invertible A-linear map `source -> target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub map: Mat,
    pub seed_used: u64,
    /// 0 when the modules were literally equal.
    pub trial: usize,
}

impl IsoCertificate {
    /// Direct check of A-linearity and invertibility.
    pub fn verify(&self, source: &ModuleRep, target: &ModuleRep) -> bool {
        source.same_algebra(target)
            && self.map.rows() == target.dim()
            && self.map.cols() == source.dim()
            && self.map.is_invertible()
            && (0..source.algebra().dim())
                .all(|i| self.map.mul(source.action(i)) == target.action(i).mul(&self.map))
    }
}

/// Randomized one-sided isomorphism test. A returned certificate is always
/// verified; `None` is inconclusive. Trial `t` (from 1) draws integer
/// coefficients from `0..=t` for each Hom basis element.
pub fn is_isomorphic(m: &ModuleRep, n: &ModuleRep, seed: u64, trials: usize) -> Option<IsoCertificate> {
    if !m.same_algebra(n) || m.dim() != n.dim() {
        return None;
    }
    let field = m.algebra().field();
    if m.actions() == n.actions() {
        return Some(IsoCertificate {
            map: Mat::identity(field, m.dim()),
            seed_used: seed,
            trial: 0,
        });
    }
    let homs = hom_basis(m, n).ok()?;
    if homs.dim() == 0 || homs.dim() != hom_basis(n, n).ok()?.dim() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 1..=trials {
        let coefficients: Vec<Scalar> = (0..homs.dim())
            .map(|_| field.from_i64(rng.random_range(0..=t as i64)))
            .collect();
        let map = homs.combination(&coefficients, n.dim(), m.dim());
        if map.is_invertible() {
            let cert = IsoCertificate {
                map,
                seed_used: seed,
                trial: t,
            };
            debug_assert!(cert.verify(m, n));
            return Some(cert);
        }
    }
    None
}
