//! Extending `dx/dt = dH/dp`, `dp/dt = -dH/dx` to products with the product
//! rule gives the same time derivative as `[F, H]/(i*hbar)`, including the
//! `hbar` corrections that ordering produces.

use ncps::evolution::commutator_rate;
use ncps::random::PolyGen;
use ncps::{leibniz_derivative, parse_poly};

fn main() {
    let h = parse_poly("p^2/(2*m) + k*x^3").unwrap();
    for f in ["x", "p", "x*p", "x^2*p", "p^2*x^2"] {
        let f = parse_poly(f).unwrap();
        let by_rule = leibniz_derivative(&f, &h).unwrap();
        let by_bracket = commutator_rate(&f, &h).unwrap();
        assert_eq!(by_rule, by_bracket);
        println!("d({f})/dt = {by_rule}");
    }

    let mut gen = PolyGen::new(7);
    let mut checked = 0;
    for _ in 0..100 {
        let (f, h) = (gen.classical(5), gen.classical(4));
        assert_eq!(leibniz_derivative(&f, &h).unwrap(), commutator_rate(&f, &h).unwrap());
        checked += 1;
    }
    println!("\n{checked} random (F, H) pairs agree");
}
