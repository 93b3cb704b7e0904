//! Randomized properties of the exact arithmetic and of vector-field
//! brackets, shared by the property and acceptance test targets.

#![allow(dead_code)]

use std::collections::HashMap;

use galreal::expr::{parse_expr, parse_poly, parse_rat, ExpPoly, RatExpr, Symbol};
use galreal::verify::vf_bracket;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

/// Random expression text over `x1, x2, alpha` with sums, products,
/// negation, small powers and exponentials of linear forms.
pub fn expr_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (-4i64..=4).prop_map(|n| if n < 0 { format!("({n})") } else { n.to_string() }),
        prop::sample::select(vec!["x1", "x2", "alpha"]).prop_map(str::to_string),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} - {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            inner.clone().prop_map(|a| format!("-({a})")),
            (inner.clone(), 0u32..3).prop_map(|(a, k)| format!("({a})^{k}")),
            (-2i64..=2, prop::sample::select(vec!["x1", "x2"])).prop_map(|(c, s)| format!("exp(({c})*{s})")),
        ]
    })
}

/// Random polynomial in `x1, x2` of degree at most two.
pub fn poly_text() -> impl Strategy<Value = String> {
    prop::collection::vec(-3i64..=3, 6).prop_map(|c| {
        format!("({})+({})*x1+({})*x2+({})*x1^2+({})*x1*x2+({})*x2^2", c[0], c[1], c[2], c[3], c[4], c[5])
    })
}

fn field() -> impl Strategy<Value = Vec<RatExpr>> {
    (poly_text(), poly_text()).prop_map(|(a, b)| vec![parse_rat(&a).unwrap(), parse_rat(&b).unwrap()])
}

fn point() -> impl Strategy<Value = HashMap<Symbol, f64>> {
    (-1.5f64..1.5, -1.5f64..1.5, -1.5f64..1.5).prop_map(|(a, b, c)| {
        HashMap::from([(Symbol::new("x1"), a), (Symbol::new("x2"), b), (Symbol::new("alpha"), c)])
    })
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn poly(s: &str) -> ExpPoly {
    parse_poly(s).expect("generated text parses")
}

pub fn canonicalize_idempotent() -> Result<(), String> {
    run(expr_text(), |s| {
        let p = poly(&s);
        let again = poly(&p.to_string());
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(poly(&again.to_string()), again);
        Ok(())
    })
}

pub fn ring_laws() -> Result<(), String> {
    run((expr_text(), expr_text(), expr_text()), |(a, b, c)| {
        let (a, b, c) = (poly(&a), poly(&b), poly(&c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        Ok(())
    })
}

pub fn product_rule() -> Result<(), String> {
    let x1 = Symbol::new("x1");
    run((expr_text(), expr_text()), move |(a, b)| {
        let (a, b) = (poly(&a), poly(&b));
        let lhs = (&a * &b).diff(&x1);
        let rhs = &(&a.diff(&x1) * &b) + &(&a * &b.diff(&x1));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn quotients() -> Result<(), String> {
    run((expr_text(), poly_text()), |(a, b)| {
        let (a, b) = (parse_rat(&a).unwrap(), parse_rat(&b).unwrap());
        if b.is_zero() {
            return Ok(());
        }
        prop_assert_eq!(&(&a / &b) * &b, a);
        Ok(())
    })
}

pub fn bracket_antisymmetry() -> Result<(), String> {
    run((field(), field()), |(x, y)| {
        let xy = vf_bracket(&x, &y);
        let yx = vf_bracket(&y, &x);
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()));
        Ok(())
    })
}

pub fn bracket_jacobi() -> Result<(), String> {
    run((field(), field(), field()), |(x, y, z)| {
        let a = vf_bracket(&x, &vf_bracket(&y, &z));
        let b = vf_bracket(&y, &vf_bracket(&z, &x));
        let c = vf_bracket(&z, &vf_bracket(&x, &y));
        prop_assert!((0..2).all(|k| (&(&a[k] + &b[k]) + &c[k]).is_zero()));
        Ok(())
    })
}

/// Canonical and raw evaluations agree to 1e-9 relative to the magnitude.
pub fn numeric_sampling() -> Result<(), String> {
    run((expr_text(), point()), |(s, at)| {
        let raw = parse_expr(&s).unwrap().eval_f64(&at).unwrap();
        let canon = poly(&s).eval_f64(&at).unwrap();
        let scale = raw.abs().max(canon.abs()).max(1.0);
        prop_assert!((raw - canon).abs() <= 1e-9 * scale, "{} vs {}", raw, canon);
        Ok(())
    })
}

pub type Property = fn() -> Result<(), String>;

/// Every randomized property, by name.
pub fn all() -> Vec<(&'static str, Property)> {
    vec![
        ("canonicalize-idempotent", canonicalize_idempotent),
        ("ring-laws", ring_laws),
        ("product-rule", product_rule),
        ("quotients", quotients),
        ("bracket-antisymmetry", bracket_antisymmetry),
        ("bracket-jacobi", bracket_jacobi),
        ("numeric-sampling", numeric_sampling),
    ]
}
