mod common;

use common::{classical, poly};
use ncps::evolution::{commutator_rate, heisenberg_series, leibniz_derivative};
use ncps::random::PolyGen;
use ncps::{Coefficient, NCPoly};
use proptest::prelude::*;

#[test]
fn derivation_equals_commutator_on_small_monomials() {
    let mut gen = PolyGen::new(2024);
    for _ in 0..200 {
        let h = gen.classical(4);
        for total in 0..=8u32 {
            for a in 0..=total {
                let f = NCPoly::monomial(a, total - a);
                assert_eq!(
                    leibniz_derivative(&f, &h).unwrap(),
                    commutator_rate(&f, &h).unwrap(),
                    "F = x^{a} p^{}, H = {h}",
                    total - a
                );
            }
        }
    }
}

#[test]
fn oscillator_closed_form_to_order_twelve() {
    let h = poly("p^2/(2*m) + (m*omega^2/2)*x^2");
    let s = heisenberg_series(&NCPoly::x(), &h, 12).unwrap();
    let omega = Coefficient::param("omega").unwrap();
    let p_over_m = poly("p/m");
    for (k, term) in s.terms.iter().enumerate() {
        let j = (k / 2) as u32;
        let sign = Coefficient::from_integer(if j.is_multiple_of(2) { 1 } else { -1 });
        let c = &sign * &omega.pow(2 * j);
        let expected = if k % 2 == 0 { NCPoly::x().scale(&c) } else { p_over_m.scale(&c) };
        assert_eq!(*term, expected, "term {k}");
    }
}

proptest! {
    #[test]
    fn derivation_equals_commutator(f in classical(5), h in classical(4)) {
        prop_assert_eq!(leibniz_derivative(&f, &h).unwrap(), commutator_rate(&f, &h).unwrap());
    }

    #[test]
    fn energy_is_conserved(h in classical(5)) {
        let s = heisenberg_series(&h, &h, 4).unwrap();
        prop_assert!(s.terms[1..].iter().all(NCPoly::is_zero));
    }

    #[test]
    fn first_order_identities(h in classical(5)) {
        let i_hbar = Coefficient::i_hbar();
        let x = NCPoly::x();
        let p = NCPoly::p();
        let eq7 = &h.partial_p().commutator(&p) + &x.commutator(&-h.partial_x());
        prop_assert!(eq7.is_zero());
        let first = &p.commutator(&h) + &h.partial_x().scale(&i_hbar);
        let second = &h.commutator(&x) + &h.partial_p().scale(&i_hbar);
        let eq8 = &x.commutator(&first) + &p.commutator(&second);
        prop_assert!(eq8.is_zero());
    }

    #[test]
    fn free_particle_terminates(seed in any::<u64>()) {
        let f = PolyGen::new(seed).classical(4);
        let s = heisenberg_series(&f, &poly("p^2/(2*m)"), 6).unwrap();
        let g = f.x_degree() as usize;
        prop_assert!(s.terms[g + 1..].iter().all(NCPoly::is_zero));
    }
}
