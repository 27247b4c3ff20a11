//! Seeded random polynomials for property checks.
//!
//! Every draw is a pure function of the seed, so failing cases reproduce from
//! the `--seed` flag alone.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::NCPoly;
use crate::scalar::{Coefficient, GaussianRational, ParamMonomial};

/// Integer coefficients are drawn from `[-COEFF_BOUND, COEFF_BOUND]`.
pub const COEFF_BOUND: i64 = 16;

/// Parameters used when drawing coefficients with symbolic content.
const PARAM_POOL: [&str; 4] = ["hbar", "m", "omega", "k"];

pub struct PolyGen {
    rng: ChaCha8Rng,
}

impl PolyGen {
    pub fn new(seed: u64) -> Self {
        PolyGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Derive an independent stream for a named sub-check.
    pub fn for_stream(seed: u64, stream: &str) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tag = stream
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        rng.set_stream(tag);
        PolyGen { rng }
    }

    pub fn small_int(&mut self) -> i64 {
        self.rng.random_range(-COEFF_BOUND..=COEFF_BOUND)
    }

    fn nonzero_int(&mut self) -> i64 {
        loop {
            let n = self.small_int();
            if n != 0 {
                return n;
            }
        }
    }

    /// `hbar`-free polynomial of total degree at most `max_degree` with integer
    /// coefficients. Each monomial is present with probability one half; the
    /// top-degree part is never empty when `max_degree > 0`.
    pub fn classical(&mut self, max_degree: u32) -> NCPoly {
        let mut terms = Vec::new();
        for deg in 0..=max_degree {
            for a in 0..=deg {
                if self.rng.random_bool(0.5) {
                    terms.push((a, deg - a, Coefficient::from_integer(self.nonzero_int())));
                }
            }
        }
        if max_degree > 0 && !terms.iter().any(|(a, b, _)| a + b == max_degree) {
            let a = self.rng.random_range(0..=max_degree);
            terms.push((a, max_degree - a, Coefficient::from_integer(self.nonzero_int())));
        }
        NCPoly::from_terms(terms)
    }

    /// Polynomial potential `V(x)` of degree at most `max_degree`.
    pub fn potential(&mut self, max_degree: u32) -> NCPoly {
        let mut terms = Vec::new();
        for a in 0..=max_degree {
            if self.rng.random_bool(0.6) {
                terms.push((a, 0, Coefficient::from_integer(self.nonzero_int())));
            }
        }
        NCPoly::from_terms(terms)
    }

    fn rational(&mut self) -> BigRational {
        let num = self.small_int();
        let den = self.rng.random_range(1..=6i64);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// A coefficient with Gaussian-rational values and Laurent parameter
    /// monomials, including `hbar`.
    pub fn symbolic_coefficient(&mut self) -> Coefficient {
        let n_terms = self.rng.random_range(1..=3);
        let mut acc = Coefficient::zero();
        for _ in 0..n_terms {
            let mut mono = ParamMonomial::one();
            for name in PARAM_POOL {
                if self.rng.random_bool(0.3) {
                    let exp = self.rng.random_range(-2..=3i64);
                    mono = &mono * &ParamMonomial::var(name, exp).expect("pool names are valid");
                }
            }
            let re = if self.rng.random_bool(0.7) { self.rational() } else { BigRational::from_integer(0.into()) };
            let im = if self.rng.random_bool(0.4) { self.rational() } else { BigRational::from_integer(0.into()) };
            acc = &acc + &Coefficient::term(mono, GaussianRational::new(re, im));
        }
        acc
    }

    /// Polynomial with arbitrary symbolic coefficients; used for
    /// serialization round trips.
    pub fn symbolic(&mut self, max_degree: u32) -> NCPoly {
        let mut terms = Vec::new();
        for deg in 0..=max_degree {
            for a in 0..=deg {
                if self.rng.random_bool(0.35) {
                    terms.push((a, deg - a, self.symbolic_coefficient()));
                }
            }
        }
        NCPoly::from_terms(terms)
    }
}
