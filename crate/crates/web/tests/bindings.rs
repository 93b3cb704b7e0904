use galreal_web::{catalog, check, deform, realize};

#[test]
fn catalog_lists_galilei_algebras() {
    let names = catalog();
    assert!(names.lines().any(|n| n == "AG1(1)"));
    assert!(names.lines().any(|n| n == "AbarG2q(1)"));
}

#[test]
fn check_reports_jacobi() {
    let out = check("AG1(1)").unwrap();
    assert!(out.ends_with("jacobi: holds\n"), "{out}");
}

#[test]
fn check_accepts_algebra_text() {
    let text = "algebra: heis\nbasis: X, Y, Z\n[X, Y] = Z\n";
    let out = check(text).unwrap();
    assert!(out.contains("jacobi: holds"), "{out}");
}

#[test]
fn realize_generic_splitting() {
    let out = realize("AbarG1(1)", "generic", false).unwrap();
    assert!(out.contains("relations: hold"), "{out}");
}

#[test]
fn realize_rejects_bad_splitting() {
    assert!(realize("AbarG1(1)", "P ; Q", false).is_err());
}

#[test]
fn deform_limit_and_specialization() {
    let lim = deform("AbarG1q(1)", "limit").unwrap();
    assert!(lim.contains("jacobi: holds"), "{lim}");
    let at = deform("AbarG1q(1)", "q=1").unwrap();
    assert!(at.contains("jacobi: holds"), "{at}");
}
