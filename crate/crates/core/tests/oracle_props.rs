mod common;

use common::{classical, poly};
use ncps::oracle::{build_fock_rep, check_expr_identity, check_identity, FockRep, OpExpr, ParamAssignment, DEFAULT_TOL};
use ncps::verifier::{verify_paper, VerifyConfig};
use ncps::{Coefficient, NCPoly};
use proptest::prelude::*;

fn rep() -> FockRep {
    FockRep::with_defaults(64).unwrap()
}

#[test]
fn false_identity_is_caught() {
    let out = check_identity(&poly("x*p - p*x"), &NCPoly::zero(), &rep(), DEFAULT_TOL).unwrap();
    // the tree keeps the matrix products, the polynomial collapses them
    let tree = check_expr_identity(&OpExpr::comm(NCPoly::x(), NCPoly::p()), &NCPoly::zero().into(), &rep(), DEFAULT_TOL).unwrap();
    assert!(!out.pass && out.max_deviation >= 0.5);
    assert!(!tree.pass && tree.max_deviation >= 0.5);
}

#[test]
fn perturbed_axiom_fails() {
    let rep = rep();
    let lhs = OpExpr::comm(NCPoly::x(), NCPoly::p());
    let exact = check_expr_identity(&lhs, &NCPoly::i_hbar().into(), &rep, DEFAULT_TOL).unwrap();
    assert!(exact.pass);
    let nudged = &NCPoly::i_hbar() + &NCPoly::constant(Coefficient::from_ratio(1, 1_000_000));
    let out = check_expr_identity(&lhs, &nudged.into(), &rep, DEFAULT_TOL).unwrap();
    assert!(!out.pass);
    assert!((out.max_deviation - 1e-6).abs() < 1e-12, "{}", out.max_deviation);
}

#[test]
fn parameters_enter_numerically() {
    let params = ParamAssignment::default().with("m", 2.0).unwrap().with("omega", 0.5).unwrap();
    let rep = build_fock_rep(64, params).unwrap();
    let lhs = OpExpr::comm(NCPoly::x(), poly("p^2/(2*m)"));
    let out = check_expr_identity(&lhs, &poly("i*hbar*p/m").into(), &rep, DEFAULT_TOL).unwrap();
    assert!(out.pass, "{out}");
    let out = check_expr_identity(&lhs, &poly("i*hbar*p").into(), &rep, DEFAULT_TOL).unwrap();
    assert!(!out.pass);
}

#[test]
fn verifier_identities_pass_numerically() {
    let cfg = VerifyConfig { seed: 11, degree_cap: 5, cases: 5, with_oracle: true };
    let report = verify_paper(&cfg).unwrap();
    assert!(report.pass, "{}", report.to_text());
    for c in &report.checks {
        let o = c.oracle.as_ref().unwrap();
        assert!(o.pass && o.comparisons > 0 && o.min_trusted_block >= 40, "{}", c.id);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_representation_is_multiplicative(a in classical(3), b in classical(3)) {
        let rep = rep();
        let out = check_expr_identity(&OpExpr::prod(&a, &b), &a.mul(&b).into(), &rep, DEFAULT_TOL).unwrap();
        prop_assert_eq!(out.trusted_block, 58);
        prop_assert!(out.pass, "{}", out);
    }
}
