//! Time evolution of observables under a time-independent Hamiltonian.
//!
//! Two independent routes to `dF/dt`:
//!
//! * [`leibniz_derivative`]: the product-rule extension of the classical
//!   equations of motion `dx/dt = dH/dp`, `dp/dt = -dH/dx`;
//! * the commutator law `dF/dt = [F, H] / (i hbar)`, iterated by
//!   [`heisenberg_series`] into a Taylor series in `t`.

use thiserror::Error;

use crate::error::AlgebraError;
use crate::poly::NCPoly;
use crate::scalar::Coefficient;

pub const DEFAULT_ORDER: usize = 8;
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvolutionError {
    #[error("series order {0} exceeds the maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("the Hamiltonian must be hbar-free")]
    HamiltonianNotClassical,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Taylor coefficients of `F(t) = sum_k t^k / k! * terms[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionSeries {
    pub observable: NCPoly,
    pub hamiltonian: NCPoly,
    pub order: usize,
    pub terms: Vec<NCPoly>,
}

impl EvolutionSeries {
    /// Index of the first vanishing term, if the series terminates.
    pub fn terminates_at(&self) -> Option<usize> {
        self.terms.iter().position(NCPoly::is_zero)
    }
}

/// `[F, H] / (i hbar)`.
pub fn commutator_rate(f: &NCPoly, h: &NCPoly) -> Result<NCPoly, AlgebraError> {
    f.commutator(h).scalar_div(&Coefficient::i_hbar())
}

/// Iterate `F -> [F, H] / (i hbar)` up to `order`.
pub fn heisenberg_series(f: &NCPoly, h: &NCPoly, order: usize) -> Result<EvolutionSeries, EvolutionError> {
    if order > MAX_ORDER {
        return Err(EvolutionError::OrderTooLarge(order));
    }
    if !h.is_hbar_free() {
        return Err(EvolutionError::HamiltonianNotClassical);
    }
    let mut terms = Vec::with_capacity(order + 1);
    terms.push(f.clone());
    while terms.len() <= order {
        let last = terms.last().expect("nonempty");
        let next = if last.is_zero() {
            NCPoly::zero()
        } else {
            commutator_rate(last, h)?
        };
        terms.push(next);
    }
    Ok(EvolutionSeries {
        observable: f.clone(),
        hamiltonian: h.clone(),
        order,
        terms,
    })
}

/// The derivation `D` with `D(x) = dH/dp`, `D(p) = -dH/dx`, `D(scalar) = 0`,
/// applied to `F` through the non-commutative product rule.
pub fn leibniz_derivative(f: &NCPoly, h: &NCPoly) -> Result<NCPoly, EvolutionError> {
    if !h.is_hbar_free() {
        return Err(EvolutionError::HamiltonianNotClassical);
    }
    let x_dot = h.partial_p();
    let p_dot = -h.partial_x();
    let max_a = f.x_degree() as usize;
    let max_b = f.p_degree() as usize;
    let x_pows: Vec<NCPoly> = powers(&NCPoly::x(), max_a);
    let p_pows: Vec<NCPoly> = powers(&NCPoly::p(), max_b);

    let mut out = NCPoly::zero();
    for ((a, b), coeff) in f.iter() {
        let (a, b) = (a as usize, b as usize);
        let mut d = NCPoly::zero();
        // D(x^a) p^b
        for j in 0..a {
            let left = x_pows[j].mul(&x_dot);
            d = &d + &left.mul(&x_pows[a - 1 - j]).mul(&p_pows[b]);
        }
        // x^a D(p^b)
        for j in 0..b {
            let left = x_pows[a].mul(&p_pows[j]).mul(&p_dot);
            d = &d + &left.mul(&p_pows[b - 1 - j]);
        }
        out = &out + &d.scale(coeff);
    }
    Ok(out)
}

fn powers(base: &NCPoly, max: usize) -> Vec<NCPoly> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(NCPoly::one());
    for k in 1..=max {
        out.push(out[k - 1].mul(base));
    }
    out
}
