use std::sync::Arc;

use fed_core::algebra::{build_quantum_ci, build_truncated_polynomial, AlgebraPresentation};
use fed_core::ext::{ext_dims, ext_dims_from};
use fed_core::linalg::{nullspace_basis, rref, solve};
use fed_core::module::{cyclic_quotient, direct_sum, dual, hom_basis, ModuleRep};
use fed_core::resolution::{syzygy, CoverStrategy, Resolution};
use fed_core::{FieldSpec, Mat, Scalar};
use proptest::prelude::*;

fn q() -> FieldSpec {
    FieldSpec::Rational
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn to_mat(field: FieldSpec, rows: &[Vec<i64>], cols: usize) -> Mat {
    Mat::from_rows(
        field,
        rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        cols,
    )
}

fn algebras() -> Vec<Arc<AlgebraPresentation>> {
    vec![
        Arc::new(build_truncated_polynomial(q(), &[2]).unwrap()),
        Arc::new(build_truncated_polynomial(q(), &[3]).unwrap()),
        Arc::new(build_truncated_polynomial(q(), &[2, 2]).unwrap()),
        Arc::new(build_quantum_ci(q(), &q().from_i64(2)).unwrap()),
    ]
}

/// A cyclic quotient by one radical element with small coordinates.
fn cyclic(a: &Arc<AlgebraPresentation>, coords: &[i64]) -> ModuleRep {
    let mut g = a.zero_element();
    for (&r, &c) in a.radical().iter().zip(coords) {
        g[r] = q().from_i64(c);
    }
    cyclic_quotient(a, &[g]).unwrap()
}

fn fixture_pair() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (
        0..4usize,
        prop::collection::vec(-1i64..=2, 3),
        prop::collection::vec(-1i64..=2, 3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_plus_nullity(rows in 1usize..5, cols in 1usize..6, seed in any::<u64>()) {
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|r| (0..cols).map(|c| ((seed >> ((r * cols + c) % 60)) & 7) as i64 - 3).collect())
            .collect();
        let m = to_mat(q(), &data, cols);
        let kernel = nullspace_basis(&m);
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rref_is_idempotent(data in small_matrix(4, 5)) {
        let m = to_mat(q(), &data, 5);
        let once = rref(&m);
        let twice = rref(&once.reduced);
        prop_assert_eq!(&once.reduced, &twice.reduced);
        prop_assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn solve_reproduces_consistent_right_sides(data in small_matrix(4, 4), x in prop::collection::vec(-3i64..=3, 4)) {
        let m = to_mat(q(), &data, 4);
        let x: Vec<Scalar> = x.iter().map(|&v| q().from_i64(v)).collect();
        let b = m.mul_vec(&x);
        let sol = solve(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }

    #[test]
    fn reduction_mod_p_never_raises_rank(data in small_matrix(4, 5)) {
        let rational = to_mat(q(), &data, 5).rank();
        let prime = to_mat(FieldSpec::Prime { p: 7 }, &data, 5).rank();
        prop_assert!(prime <= rational);
    }

    #[test]
    fn hom_dimension_is_basis_independent((alg, c1, c2) in fixture_pair(), shear in -2i64..=2) {
        let a = &algebras()[alg];
        let m = cyclic(a, &c1);
        let n = cyclic(a, &c2);
        // unipotent change of basis on n
        let mut p = Mat::identity(q(), n.dim());
        if n.dim() > 1 {
            p.set(0, n.dim() - 1, q().from_i64(shear));
        }
        let n2 = n.change_basis(&p).unwrap();
        prop_assert_eq!(hom_basis(&m, &n).unwrap().dim(), hom_basis(&m, &n2).unwrap().dim());
    }

    #[test]
    fn duality_reverses_hom((alg, c1, c2) in fixture_pair()) {
        let a = &algebras()[alg];
        let m = cyclic(a, &c1);
        let n = cyclic(a, &c2);
        let forward = hom_basis(&m, &n).unwrap().dim();
        let backward = hom_basis(&dual(&n), &dual(&m)).unwrap().dim();
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn first_argument_dimension_shift((alg, c1, c2) in fixture_pair(), shift in 1usize..4) {
        let a = &algebras()[alg];
        let m = cyclic(a, &c1);
        let n = cyclic(a, &c2);
        let cutoff = 6;
        let full = ext_dims(&m, &n, cutoff).unwrap().dims;
        let omega = syzygy(&m, shift).unwrap();
        let shifted = ext_dims(&omega, &n, cutoff - shift).unwrap().dims;
        for j in shift + 1..=cutoff {
            prop_assert_eq!(full[j], shifted[j - shift], "degree {}", j);
        }
    }

    #[test]
    fn direct_sum_additivity((alg, c1, c2) in fixture_pair()) {
        let a = &algebras()[alg];
        let m = cyclic(a, &c1);
        let n = cyclic(a, &c2);
        let cutoff = 4;
        let s = direct_sum(&m, &n).unwrap();
        let total = ext_dims(&s, &s, cutoff).unwrap().dims;
        let parts = [(&m, &m), (&m, &n), (&n, &m), (&n, &n)]
            .map(|(x, y)| ext_dims(x, y, cutoff).unwrap().dims);
        for i in 0..=cutoff {
            prop_assert_eq!(total[i], parts.iter().map(|p| p[i]).sum::<usize>());
        }
    }

    #[test]
    fn padding_does_not_change_ext((alg, c1, c2) in fixture_pair(), step in 0usize..4) {
        let a = &algebras()[alg];
        let m = cyclic(a, &c1);
        let n = cyclic(a, &c2);
        let mut padded = Resolution::new(m.clone(), CoverStrategy::Padded { step }).unwrap();
        let lhs = ext_dims_from(&mut padded, &n, 5).unwrap();
        prop_assert_eq!(lhs, ext_dims(&m, &n, 5).unwrap().dims);
    }
}
