//! Numeric cross-check on truncated Fock-space matrices.
//!
//! Only the top-left block of size `D - g` is compared, where `g` is the
//! highest degree involved; truncation cannot reach it.

use ncps::oracle::{build_fock_rep, check_expr_identity, OpExpr, ParamAssignment, DEFAULT_TOL};
use ncps::{parse_poly, NCPoly};

fn main() {
    let params = ParamAssignment::default().with("m", 2.0).unwrap().with("k", 0.25).unwrap();
    let rep = build_fock_rep(64, params).unwrap();

    let x = NCPoly::x();
    let p = NCPoly::p();
    let h = parse_poly("p^2/(2*m) + k*x^4").unwrap();

    let checks = [
        ("[x, p] == i*hbar", OpExpr::comm(&x, &p), NCPoly::i_hbar()),
        ("[x, p] == 0", OpExpr::comm(&x, &p), NCPoly::zero()),
        ("[x, H] == i*hbar*dH/dp", OpExpr::comm(&x, &h), h.partial_p().scale(&ncps::Coefficient::i_hbar())),
        ("p*x*p == normal form", OpExpr::prod(OpExpr::prod(&p, &x), &p), parse_poly("p*x*p").unwrap()),
    ];
    for (label, lhs, rhs) in checks {
        let outcome = check_expr_identity(&lhs, &rhs.into(), &rep, DEFAULT_TOL).unwrap();
        println!("{label:<26} {outcome}");
    }
}
