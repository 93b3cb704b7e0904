mod common;

use galreal::catalog::{algebra, algebra_file_names, family_names, galilei_names};
use galreal::expr::{mat_exp_ad, nilpotent_series, Symbol};

#[test]
fn canonicalize_is_idempotent() {
    common::canonicalize_idempotent().unwrap();
}

#[test]
fn ring_laws_hold() {
    common::ring_laws().unwrap();
}

#[test]
fn derivative_obeys_the_product_rule() {
    common::product_rule().unwrap();
}

#[test]
fn quotients_cancel() {
    common::quotients().unwrap();
}

#[test]
fn vector_field_bracket_is_antisymmetric() {
    common::bracket_antisymmetry().unwrap();
}

#[test]
fn vector_field_bracket_satisfies_jacobi() {
    common::bracket_jacobi().unwrap();
}

#[test]
fn numeric_sampling_agrees() {
    common::numeric_sampling().unwrap();
}

#[test]
fn nilpotent_adjoint_exponentials() {
    let t = Symbol::new("t");
    let mut nilpotent = 0;
    for name in algebra_file_names().into_iter().chain(galilei_names(&[1, 2])).chain(family_names()) {
        let l = algebra(&name).unwrap();
        for i in 0..l.dim() {
            let a = l.adjoint(&l.unit(i));
            if !a.pow(l.dim() as u32).is_zero() {
                continue;
            }
            nilpotent += 1;
            let e = mat_exp_ad(&a, &t, 1).unwrap();
            assert_eq!(e, nilpotent_series(&a, &t), "{name} ad {}", l.basis[i]);
            let back = mat_exp_ad(&a, &t, -1).unwrap();
            assert!(e.mul(&back).is_identity(), "{name} ad {}", l.basis[i]);
        }
    }
    assert!(nilpotent > 50, "{nilpotent}");
}
