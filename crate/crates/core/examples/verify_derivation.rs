//! Replay every step from the canonical commutator to the general evolution
//! law and print the report. Pass a seed as the first argument to vary the
//! random instances.

use ncps::verifier::{verify_paper, VerifyConfig};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let cfg = VerifyConfig { seed, degree_cap: 4, cases: 20, with_oracle: true };
    let report = verify_paper(&cfg).expect("valid configuration");
    print!("{}", report.to_text());
    std::process::exit(if report.pass { 0 } else { 1 });
}
