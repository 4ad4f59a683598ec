//! The shipped fixture set, generated from the algebra builders.

use std::sync::Arc;

use fed_core::algebra::{base_field, build_quantum_ci, build_truncated_polynomial};
use fed_core::doc::{AlgebraDoc, ModuleBody, ModuleDoc};
use fed_core::module::cyclic_quotient;
use fed_core::{AlgebraPresentation, FieldSpec, Scalar};

/// Self-injective local fixtures.
pub const SELF_INJECTIVE: [&str; 5] = ["base_field", "dual_numbers", "truncated_cube", "ci_2_2", "quantum_ci_q2"];

fn q() -> FieldSpec {
    FieldSpec::Rational
}

pub fn algebras() -> Vec<AlgebraPresentation> {
    let f = q();
    vec![
        base_field(f).with_name("base_field"),
        build_truncated_polynomial(f, &[2]).expect("valid").with_name("dual_numbers"),
        build_truncated_polynomial(f, &[3]).expect("valid").with_name("truncated_cube"),
        build_truncated_polynomial(f, &[2, 2]).expect("valid").with_name("ci_2_2"),
        build_quantum_ci(f, &f.from_i64(1)).expect("valid").with_name("quantum_ci_q1"),
        build_quantum_ci(f, &f.from_i64(2)).expect("valid").with_name("quantum_ci_q2"),
    ]
}

/// `(module name, algebra name, ideal generators)`; an empty list is the free module.
const CYCLIC: &[(&str, &str, &[&[i64]])] = &[
    ("field_k", "base_field", &[]),
    ("dual_free", "dual_numbers", &[]),
    ("cube_free", "truncated_cube", &[]),
    ("cube_k", "truncated_cube", &[&[0, 1, 0]]),
    ("cube_x2", "truncated_cube", &[&[0, 0, 1]]),
    ("ci_free", "ci_2_2", &[]),
    ("ci_k", "ci_2_2", &[&[0, 1, 0, 0], &[0, 0, 1, 0]]),
    ("ci_x", "ci_2_2", &[&[0, 1, 0, 0]]),
    ("ci_x_plus_y", "ci_2_2", &[&[0, 1, 1, 0]]),
    ("schulz_M_q1", "quantum_ci_q1", &[&[0, 1, 1, 0]]),
    ("qci_free", "quantum_ci_q2", &[]),
    ("qci_x", "quantum_ci_q2", &[&[0, 1, 0, 0]]),
    ("schulz_M", "quantum_ci_q2", &[&[0, 1, 1, 0]]),
];

fn strings(v: &[i64]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn modules() -> Vec<ModuleDoc> {
    let mut docs: Vec<ModuleDoc> = CYCLIC
        .iter()
        .map(|(name, algebra, gens)| ModuleDoc {
            name: name.to_string(),
            algebra: algebra.to_string(),
            body: ModuleBody::Cyclic {
                cyclic: gens.iter().map(|g| strings(g)).collect(),
            },
        })
        .collect();
    // one module in explicit action form
    let dual = Arc::new(build_truncated_polynomial(q(), &[2]).expect("valid").with_name("dual_numbers"));
    let x: Vec<Scalar> = vec![q().zero(), q().one()];
    let k = cyclic_quotient(&dual, &[x]).expect("valid");
    docs.push(ModuleDoc::from_module("dual_k", "dual_numbers", &k));
    docs.sort_by(|a, b| a.algebra.cmp(&b.algebra).then(a.name.cmp(&b.name)));
    docs
}

/// `(relative path, pretty JSON)` for every fixture file.
pub fn documents() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for a in algebras() {
        let doc = AlgebraDoc::from_algebra(&a);
        out.push((
            format!("{}.json", a.name()),
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        ));
    }
    let mods = modules();
    let mut by_algebra: Vec<(String, Vec<&ModuleDoc>)> = Vec::new();
    for m in &mods {
        match by_algebra.last_mut() {
            Some((a, list)) if *a == m.algebra => list.push(m),
            _ => by_algebra.push((m.algebra.clone(), vec![m])),
        }
    }
    for (a, list) in by_algebra {
        out.push((
            format!("modules/{a}.json"),
            serde_json::to_string_pretty(&list).expect("serializable") + "\n",
        ));
    }
    out
}
