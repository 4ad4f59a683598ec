//! Finite-dimensional associative unital algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{rref, Mat};

/// Sparse structure constants: `e_i * e_j = sum c * e_k`.
pub type ProductTerms = Vec<(usize, Scalar)>;

/// An algebra with basis `e_0 .. e_{dim-1}`, a designated unit basis element and
/// a declared radical spanned by a subset of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    name: String,
    field: FieldSpec,
    basis_names: Vec<String>,
    unit: usize,
    radical: Vec<usize>,
    // products[i * dim + j], each sorted by k with zero coefficients dropped
    products: Vec<ProductTerms>,
}

impl AlgebraPresentation {
    /// Structural construction. Index and scalar-field errors are reported here;
    /// the algebra axioms are checked separately by [`validate_algebra`].
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        basis_names: Vec<String>,
        unit: usize,
        radical: Vec<usize>,
        table: Vec<(usize, usize, ProductTerms)>,
    ) -> Result<Self> {
        field.check()?;
        let dim = basis_names.len();
        let malformed = |msg: String| Err(Error::MalformedAlgebra(msg));
        if dim == 0 {
            return malformed("dimension must be at least 1".into());
        }
        if unit >= dim {
            return malformed(format!("unit index {unit} out of range for dimension {dim}"));
        }
        let mut seen = vec![false; dim];
        for &r in &radical {
            if r >= dim {
                return malformed(format!("radical index {r} out of range"));
            }
            if std::mem::replace(&mut seen[r], true) {
                return malformed(format!("radical index {r} repeated"));
            }
        }
        let mut products = vec![ProductTerms::new(); dim * dim];
        let mut defined = vec![false; dim * dim];
        for (i, j, terms) in table {
            if i >= dim || j >= dim {
                return malformed(format!("table entry ({i}, {j}) out of range"));
            }
            if std::mem::replace(&mut defined[i * dim + j], true) {
                return malformed(format!("table entry ({i}, {j}) given twice"));
            }
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, c) in terms {
                if k >= dim {
                    return malformed(format!("product index {k} out of range in ({i}, {j})"));
                }
                if c.field() != field {
                    return malformed(format!("coefficient {c} of ({i}, {j}) is over the wrong field"));
                }
                let e = acc.entry(k).or_insert_with(|| field.zero());
                *e = &*e + &c;
            }
            products[i * dim + j] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        let mut radical = radical;
        radical.sort_unstable();
        Ok(AlgebraPresentation {
            name: name.into(),
            field,
            basis_names,
            unit,
            radical,
            products,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// Declared radical basis indices, sorted.
    pub fn radical(&self) -> &[usize] {
        &self.radical
    }

    pub fn is_radical_index(&self, i: usize) -> bool {
        self.radical.binary_search(&i).is_ok()
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    /// Nonzero table entries in `(i, j)` order.
    pub fn table(&self) -> impl Iterator<Item = (usize, usize, &ProductTerms)> + '_ {
        let dim = self.dim();
        self.products
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(move |(idx, t)| (idx / dim, idx % dim, t))
    }

    /// Same field, basis size, unit, radical and structure constants; names are ignored.
    pub fn same_structure(&self, other: &AlgebraPresentation) -> bool {
        self.field == other.field
            && self.dim() == other.dim()
            && self.unit == other.unit
            && self.radical == other.radical
            && self.products == other.products
    }

    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_element();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in self.product(i, j) {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = self.zero_element();
        for (k, c) in self.product(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    /// Matrix of `v -> e_i v` on the algebra itself.
    pub fn left_regular(&self, i: usize) -> Mat {
        let dim = self.dim();
        let mut m = Mat::zeros(self.field, dim, dim);
        for j in 0..dim {
            for (k, c) in self.product(i, j) {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| (0..dim).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Dimension-1-plus-radical locality and the nilpotency index of the radical.
    pub fn locality(&self) -> LocalityWitness {
        LocalityWitness {
            is_local: self.is_local(),
            nilpotency_index: radical_nilpotency_index(self),
        }
    }

    /// Codimension-one declared radical not containing the unit.
    pub fn is_local(&self) -> bool {
        self.dim() == 1 + self.radical.len() && !self.is_radical_index(self.unit)
    }

    pub fn display_element(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let name = &self.basis_names[i];
                if c.is_one() {
                    name.clone()
                } else {
                    format!("{c}*{name}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {} over {})", self.name, self.dim(), self.field)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityWitness {
    pub is_local: bool,
    /// Least `t` with `rad^t = 0`, if the declared radical is nilpotent.
    pub nilpotency_index: Option<usize>,
}

/// Axioms checked for algebras and modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    Associativity,
    LeftUnit,
    RightUnit,
    UnitInRadical,
    RadicalLeftIdeal,
    RadicalRightIdeal,
    RadicalNilpotent,
    ModuleUnit,
    ModuleStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Basis indices witnessing the failure (a triple for associativity, a pair
    /// for products, a single index for unit failures).
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn record(&mut self, axiom: Axiom, witness: Vec<usize>) {
        if !self.violations.iter().any(|v| v.axiom == axiom) {
            self.violations.push(Violation { axiom, witness });
        }
    }

    pub fn violates(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

/// Checks associativity, the unit, and that the declared radical is a
/// nilpotent two-sided ideal not containing the unit. Reports the first
/// witness for each failed axiom.
pub fn validate_algebra(a: &AlgebraPresentation) -> ValidationReport {
    let mut report = ValidationReport::default();
    let dim = a.dim();
    let basis: Vec<Vec<Scalar>> = (0..dim).map(|i| a.basis_element(i)).collect();

    for (i, e) in basis.iter().enumerate() {
        if a.basis_product(a.unit, i) != *e {
            report.record(Axiom::LeftUnit, vec![i]);
        }
        if a.basis_product(i, a.unit) != *e {
            report.record(Axiom::RightUnit, vec![i]);
        }
    }

    'assoc: for i in 0..dim {
        for j in 0..dim {
            let ij = a.basis_product(i, j);
            for k in 0..dim {
                let left = a.mul(&ij, &basis[k]);
                let right = a.mul(&basis[i], &a.basis_product(j, k));
                if left != right {
                    report.record(Axiom::Associativity, vec![i, j, k]);
                    break 'assoc;
                }
            }
        }
    }

    if a.is_radical_index(a.unit) {
        report.record(Axiom::UnitInRadical, vec![a.unit]);
    }
    let outside_radical = |v: &[Scalar]| {
        v.iter()
            .enumerate()
            .any(|(k, c)| !c.is_zero() && !a.is_radical_index(k))
    };
    for i in 0..dim {
        for &r in a.radical() {
            if outside_radical(&a.basis_product(i, r)) {
                report.record(Axiom::RadicalLeftIdeal, vec![i, r]);
            }
            if outside_radical(&a.basis_product(r, i)) {
                report.record(Axiom::RadicalRightIdeal, vec![r, i]);
            }
        }
    }
    if radical_nilpotency_index(a).is_none() {
        report.record(Axiom::RadicalNilpotent, a.radical().to_vec());
    }
    report
}

/// Row-reduced spanning set of a list of vectors (the nonzero rows of the rref).
pub(crate) fn span_rows(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_rows(field, vectors.to_vec(), ambient);
    let red = rref(&m);
    (0..red.rank).map(|r| red.reduced.row(r).to_vec()).collect()
}

/// Powers of the declared radical: `rad^{t+1} = rad * rad^t`.
pub fn radical_powers(a: &AlgebraPresentation) -> Vec<Vec<Vec<Scalar>>> {
    let dim = a.dim();
    let rad: Vec<Vec<Scalar>> = a.radical().iter().map(|&r| a.basis_element(r)).collect();
    let mut powers = vec![span_rows(a.field(), dim, &rad)];
    while !powers.last().unwrap().is_empty() && powers.len() <= dim + 1 {
        let prev = powers.last().unwrap();
        let products: Vec<Vec<Scalar>> = rad
            .iter()
            .flat_map(|r| prev.iter().map(move |v| a.mul(r, v)))
            .collect();
        powers.push(span_rows(a.field(), dim, &products));
    }
    powers
}

fn radical_nilpotency_index(a: &AlgebraPresentation) -> Option<usize> {
    let powers = radical_powers(a);
    powers.iter().position(|p| p.is_empty()).map(|t| t + 1)
}

/// `k<x,y>/(x^2, y^2, xy - q yx)` on the basis `1, x, y, xy`.
pub fn build_quantum_ci(field: FieldSpec, q: &Scalar) -> Result<AlgebraPresentation> {
    if q.field() != field {
        return Err(Error::InvalidParameter(format!("q = {q} is not an element of {field}")));
    }
    let q_inv = q
        .inv()
        .ok_or_else(|| Error::InvalidParameter("q must be nonzero".into()))?;
    let one = field.one();
    let mut table = Vec::new();
    for i in 0..4 {
        table.push((0, i, vec![(i, one.clone())]));
        if i > 0 {
            table.push((i, 0, vec![(i, one.clone())]));
        }
    }
    table.push((1, 2, vec![(3, one.clone())]));
    table.push((2, 1, vec![(3, q_inv)]));
    AlgebraPresentation::new(
        format!("quantum_ci(q={q})"),
        field,
        ["1", "x", "y", "xy"].iter().map(|s| s.to_string()).collect(),
        0,
        vec![1, 2, 3],
        table,
    )
}

/// `k[x_1..x_n]/(x_1^{a_1}, .., x_n^{a_n})` on the monomial basis, first variable
/// varying fastest.
pub fn build_truncated_polynomial(field: FieldSpec, exponents: &[usize]) -> Result<AlgebraPresentation> {
    if exponents.is_empty() {
        return Err(Error::InvalidParameter("at least one exponent is required".into()));
    }
    if let Some(&e) = exponents.iter().find(|&&e| e < 2) {
        return Err(Error::InvalidParameter(format!("exponent {e} is below 2")));
    }
    let vars: Vec<String> = if exponents.len() <= 3 {
        ["x", "y", "z"][..exponents.len()].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=exponents.len()).map(|i| format!("x{i}")).collect()
    };
    let dim: usize = exponents.iter().product();
    let decode = |mut idx: usize| -> Vec<usize> {
        exponents
            .iter()
            .map(|&a| {
                let d = idx % a;
                idx /= a;
                d
            })
            .collect()
    };
    let encode = |mono: &[usize]| -> Option<usize> {
        let mut idx = 0;
        let mut stride = 1;
        for (d, &a) in mono.iter().zip(exponents) {
            if *d >= a {
                return None;
            }
            idx += d * stride;
            stride *= a;
        }
        Some(idx)
    };
    let names = (0..dim)
        .map(|idx| {
            let mono = decode(idx);
            let parts: Vec<String> = mono
                .iter()
                .zip(&vars)
                .filter(|(d, _)| **d > 0)
                .map(|(d, v)| if *d == 1 { v.clone() } else { format!("{v}^{d}") })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("")
            }
        })
        .collect();
    let mut table = Vec::new();
    for i in 0..dim {
        let a = decode(i);
        for j in 0..dim {
            let b = decode(j);
            let sum: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            if let Some(k) = encode(&sum) {
                table.push((i, j, vec![(k, field.one())]));
            }
        }
    }
    let exps: Vec<String> = exponents.iter().map(|e| e.to_string()).collect();
    AlgebraPresentation::new(
        format!("truncated[{}]", exps.join(",")),
        field,
        names,
        0,
        (1..dim).collect(),
        table,
    )
}

/// The opposite algebra: same basis and radical, `e_i *op e_j = e_j * e_i`.
/// The name toggles a trailing `^op`.
pub fn opposite(a: &AlgebraPresentation) -> AlgebraPresentation {
    let dim = a.dim();
    let mut products = vec![ProductTerms::new(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            products[i * dim + j] = a.product(j, i).to_vec();
        }
    }
    let name = match a.name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{}^op", a.name),
    };
    AlgebraPresentation {
        name,
        field: a.field,
        basis_names: a.basis_names.clone(),
        unit: a.unit,
        radical: a.radical.clone(),
        products,
    }
}

/// The base field as a one-dimensional algebra.
pub fn base_field(field: FieldSpec) -> AlgebraPresentation {
    AlgebraPresentation::new(
        format!("{field}"),
        field,
        vec!["1".into()],
        0,
        vec![],
        vec![(0, 0, vec![(0, field.one())])],
    )
    .expect("base field presentation is well formed")
}
