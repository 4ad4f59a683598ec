//! Dense exact linear algebra: row reduction, kernels, linear solves and
//! cohomology dimensions of cochain complexes.
//!
//! Vectors are plain `Vec<Scalar>` and are treated as column vectors.

use std::fmt;

use crate::error::LinalgError;
use crate::field::{FieldSpec, Scalar};

/// Row-major dense matrix over a fixed field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows. Panics if rows are ragged or entries are
    /// over another field.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for s in row {
                assert_eq!(s.field(), field, "entry outside matrix field");
                data.push(s);
            }
        }
        Mat {
            field,
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Mat::from_rows(field, rows, cols)
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length mismatch");
            for (r, s) in v.iter().enumerate() {
                m.set(r, c, s.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `self += s * other`, skipping work when `s` is zero.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = &*a + &(s * b);
            }
        }
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        out.write_block(0, 0, self);
        out.write_block(self.rows, self.cols, other);
        out
    }

    pub fn write_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(self.field, n, 2 * n);
        aug.write_block(0, 0, self);
        aug.write_block(0, n, &Mat::identity(self.field, n));
        let red = rref(&aug);
        if red.pivots.iter().take_while(|&&p| p < n).count() < n {
            return None;
        }
        let mut inv = Mat::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.reduced.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Rref {
    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivots = self.pivots.iter().peekable();
        (0..self.reduced.cols)
            .filter(|c| {
                if pivots.peek() == Some(&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }
}

pub fn rref(m: &Mat) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        if found != pr {
            for k in c..cols {
                a.data.swap(found * cols + k, pr * cols + k);
            }
        }
        let inv = a.get(pr, c).inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for k in c..cols {
                let idx = pr * cols + k;
                a.data[idx] = &a.data[idx] * &inv;
            }
        }
        let pivot_row: Vec<(usize, Scalar)> = (c..cols)
            .filter_map(|k| {
                let v = a.get(pr, k);
                (!v.is_zero()).then(|| (k, v.clone()))
            })
            .collect();
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = a.get(r, c).clone();
            if factor.is_zero() {
                continue;
            }
            for (k, v) in &pivot_row {
                let idx = r * cols + k;
                a.data[idx] = &a.data[idx] - &(&factor * v);
            }
        }
        pivots.push(c);
        pr += 1;
    }
    Rref {
        reduced: a,
        rank: pivots.len(),
        pivots,
    }
}

/// Canonical kernel basis read off the reduced form: one vector per free
/// column, with that free variable set to 1 and the other free variables 0.
pub fn nullspace_basis(m: &Mat) -> Vec<Vec<Scalar>> {
    nullspace_from_rref(&rref(m))
}

pub fn nullspace_from_rref(red: &Rref) -> Vec<Vec<Scalar>> {
    let field = red.reduced.field;
    let cols = red.reduced.cols;
    red.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &p) in red.pivots.iter().enumerate() {
                v[p] = -red.reduced.get(r, f);
            }
            v
        })
        .collect()
}

/// Particular solution of `m x = b` with all free variables zero.
pub fn solve(m: &Mat, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let mut aug = Mat::zeros(m.field, m.rows, m.cols + 1);
    aug.write_block(0, 0, m);
    for (r, s) in b.iter().enumerate() {
        aug.set(r, m.cols, s.clone());
    }
    let red = rref(&aug);
    if red.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![m.field.zero(); m.cols];
    for (r, &p) in red.pivots.iter().enumerate() {
        x[p] = red.reduced.get(r, m.cols).clone();
    }
    Ok(Some(x))
}

/// `dim ker(d_out) - rank(d_in)` at the middle term of `. --d_in--> C --d_out--> .`.
pub fn cohomology_dim(d_in: &Mat, d_out: &Mat) -> Result<usize, LinalgError> {
    if d_out.cols != d_in.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: d_out.cols,
            found: d_in.rows,
        });
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(LinalgError::NotAComplex);
    }
    let kernel = d_out.cols - d_out.rank();
    Ok(kernel - d_in.rank())
}

/// A subspace given by a full-column-rank basis, with a cached left inverse
/// for reading coordinates of vectors known to lie in the span.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Mat,
    rows: Vec<usize>,
    inverse: Mat,
}

impl Subspace {
    /// `vectors` must be linearly independent and of equal length `ambient`.
    pub fn new(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        let basis = Mat::from_columns(field, ambient, vectors);
        let rows = rref(&basis.transpose()).pivots;
        assert_eq!(rows.len(), vectors.len(), "subspace basis is not independent");
        let mut square = Mat::zeros(field, rows.len(), rows.len());
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..vectors.len() {
                square.set(i, c, basis.get(r, c).clone());
            }
        }
        let inverse = square.inverse().expect("selected rows are independent");
        Subspace {
            basis,
            rows,
            inverse,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Coordinates of `v` in the basis. Only meaningful when `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        let sub: Vec<Scalar> = self.rows.iter().map(|&r| v[r].clone()).collect();
        self.inverse.mul_vec(&sub)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Mat::identity(q(), 2);
        let r = rref(&id);
        assert_eq!((r.reduced.clone(), r.rank, r.pivots.clone()), (id, 2, vec![0, 1]));
        let z = Mat::zeros(q(), 3, 4);
        let r = rref(&z);
        assert_eq!((r.reduced.clone(), r.rank, r.pivots.clone()), (z, 0, vec![]));
    }

    #[test]
    fn rref_rank_one() {
        let m = Mat::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.reduced, Mat::from_i64(q(), &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn empty_matrices() {
        let m = Mat::zeros(q(), 0, 3);
        assert_eq!(rref(&m).rank, 0);
        assert_eq!(nullspace_basis(&m).len(), 3);
        let m = Mat::zeros(q(), 2, 0);
        assert!(nullspace_basis(&m).is_empty());
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_basis(&Mat::identity(q(), 3)).is_empty());
        let full = nullspace_basis(&Mat::zeros(q(), 2, 3));
        assert_eq!(full, Mat::identity(q(), 3).to_rows());
        let k = nullspace_basis(&Mat::from_i64(q(), &[&[1, 1]]));
        assert_eq!(k, vec![vec![q().from_i64(-1), q().from_i64(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q().from_i64(3), q().from_i64(-2)];
        assert_eq!(solve(&Mat::identity(q(), 2), &b).unwrap(), Some(b));
        let x = solve(&Mat::from_i64(q(), &[&[1, 1]]), &[q().one()]).unwrap();
        assert_eq!(x, Some(vec![q().one(), q().zero()]));
        let none = solve(&Mat::from_i64(q(), &[&[1], &[1]]), &[q().zero(), q().one()]).unwrap();
        assert_eq!(none, None);
        assert!(matches!(
            solve(&Mat::identity(q(), 2), &[q().one()]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn cohomology_examples() {
        // 0 -> k -> 0
        let d_in = Mat::zeros(q(), 1, 0);
        let d_out = Mat::zeros(q(), 0, 1);
        assert_eq!(cohomology_dim(&d_in, &d_out).unwrap(), 1);
        // exact: k --id--> k -> 0
        let d_in = Mat::identity(q(), 1);
        assert_eq!(cohomology_dim(&d_in, &d_out).unwrap(), 0);
        // Hom(F, k) for the period-one resolution of k over k[x]/(x^2): zero differentials
        let zero = Mat::zeros(q(), 1, 1);
        assert_eq!(cohomology_dim(&zero, &zero).unwrap(), 1);
        let id = Mat::identity(q(), 1);
        assert_eq!(cohomology_dim(&id, &id), Err(LinalgError::NotAComplex));
        assert!(matches!(
            cohomology_dim(&Mat::zeros(q(), 2, 1), &Mat::zeros(q(), 1, 1)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_and_subspace() {
        let m = Mat::from_i64(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(q(), 2));
        assert!(Mat::from_i64(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());

        let v1 = vec![q().from_i64(1), q().from_i64(1), q().from_i64(0)];
        let v2 = vec![q().from_i64(0), q().from_i64(1), q().from_i64(1)];
        let s = Subspace::new(q(), 3, &[v1.clone(), v2.clone()]);
        let w: Vec<Scalar> = v1
            .iter()
            .zip(&v2)
            .map(|(a, b)| &q().from_i64(3) * a - &q().from_i64(2) * b)
            .collect();
        assert_eq!(s.coordinates(&w), vec![q().from_i64(3), q().from_i64(-2)]);
    }

    #[test]
    fn prime_field_elimination() {
        let f3 = FieldSpec::prime(3).unwrap();
        // [[1,2],[2,1]] is singular mod 3
        let m = Mat::from_i64(f3, &[&[1, 2], &[2, 1]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(Mat::from_i64(q(), &[&[1, 2], &[2, 1]]).rank(), 2);
    }
}
