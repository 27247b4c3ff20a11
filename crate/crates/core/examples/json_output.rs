//! Text and JSON renderings, and reading JSON back.

use ncps::render::{from_json, render_json};
use ncps::{parse_poly, render, Format};

fn main() {
    let f = parse_poly("(3/2)*i*hbar^2/m + x*p - p*x/omega").unwrap();
    println!("text: {}", render(&f, Format::Text));
    let json = render_json(&f);
    println!("json: {json}");
    let back = from_json(&json).unwrap();
    assert_eq!(back, f);
    println!("read back: {back}");

    let bad = "x^2/(1 + x)";
    if let Err(e) = parse_poly(bad) {
        println!("\n{}", e.annotate(bad));
    }
}
