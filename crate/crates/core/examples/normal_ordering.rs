//! Normal ordering and commutators.
//!
//! Run with `cargo run --example normal_ordering`.

use ncps::{normal_order, parse_poly, Coefficient, Generator, NCPoly};

fn main() {
    use Generator::{P, X};

    // words are multiplied left to right and reordered so x sits left of p
    for word in [vec![P, X], vec![P, P, X], vec![P, P, X, X], vec![X, P, X, P]] {
        let spelled: Vec<&str> = word.iter().map(|g| if *g == X { "x" } else { "p" }).collect();
        println!("{:<12} = {}", spelled.join(" "), normal_order(&word, &Coefficient::one()));
    }
    println!();

    let x = NCPoly::x();
    let p = NCPoly::p();
    println!("[x, p]       = {}", x.commutator(&p));
    println!("[p, x]       = {}", p.commutator(&x));
    println!("[x, x]       = {}", x.commutator(&x));

    let h = parse_poly("p^2/(2*m) + k*x^4").unwrap();
    println!("[x, H]       = {}", x.commutator(&h));
    println!("[p, H]       = {}", p.commutator(&h));
    println!("(x + p)^3    = {}", parse_poly("(x + p)^3").unwrap());
}
