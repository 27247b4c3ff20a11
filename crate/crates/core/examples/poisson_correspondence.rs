//! Commutators divided by `i*hbar` reduce to Poisson brackets once the
//! remaining powers of `hbar` are dropped.

use ncps::{parse_poly, Coefficient};

fn main() {
    let pairs = [("x", "p"), ("x^2", "p^2"), ("x^3*p", "x*p^2"), ("p^3 + 2*x", "x^4*p")];
    for (f, g) in pairs {
        let f = parse_poly(f).unwrap();
        let g = parse_poly(g).unwrap();
        let rate = f.commutator(&g).scalar_div(&Coefficient::i_hbar()).unwrap();
        let limit = rate.classical_limit().unwrap();
        let bracket = f.poisson_bracket(&g).unwrap();
        println!("F = {f}, G = {g}");
        println!("  [F, G]/(i*hbar) = {rate}");
        println!("  classical limit = {limit}");
        println!("  {{F, G}}          = {bracket}");
        assert_eq!(limit, bracket);
    }
}
