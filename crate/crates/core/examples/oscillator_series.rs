//! Heisenberg-picture Taylor series for the harmonic oscillator and the free
//! particle.

use ncps::{heisenberg_series, parse_poly};

fn main() {
    let oscillator = parse_poly("p^2/(2*m) + (m*omega^2/2)*x^2").unwrap();
    let series = heisenberg_series(&parse_poly("x").unwrap(), &oscillator, 8).unwrap();
    println!("x(t) under H = {oscillator}");
    for (k, term) in series.terms.iter().enumerate() {
        println!("  t^{k}/{k}!: {term}");
    }

    let free = parse_poly("p^2/(2*m)").unwrap();
    let observable = parse_poly("x^2*p").unwrap();
    let series = heisenberg_series(&observable, &free, 6).unwrap();
    println!("\n({observable})(t) under H = {free}");
    for (k, term) in series.terms.iter().enumerate() {
        println!("  t^{k}/{k}!: {term}");
    }
    if let Some(k) = series.terminates_at() {
        println!("  series terminates at order {k}");
    }
}
