//! Polynomials in the Weyl algebra generated by `x` and `p` with
//! `xp - px = i*hbar`, kept in normal order (every `x` left of every `p`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::AlgebraError;
use crate::scalar::{Coefficient, GaussianRational, ParamMonomial};

/// One of the two phase-space generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    X,
    P,
}

/// Exponents `(a, b)` of the canonical monomial `x^a p^b`.
pub type Exponents = (u32, u32);

/// A normal-ordered polynomial `sum c_{a,b} x^a p^b`.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Exponents, Coefficient>,
}

/// `(-i)^k`, or `(+i)^k` in the deliberately broken mutant build.
fn minus_i_pow(k: u32) -> GaussianRational {
    let i = if cfg!(feature = "mutant-flip-product-sign") {
        GaussianRational::i()
    } else {
        -&GaussianRational::i()
    };
    i.pow(k)
}

/// Coefficient of `x^{a+c-k} p^{b+d-k}` in `(x^a p^b)(x^c p^d)`, for every
/// `k`, as the pair `(hbar^k, (-i)^k k! C(b,k) C(c,k))`.
fn reorder_factors(b: u32, c: u32) -> Vec<(ParamMonomial, GaussianRational)> {
    let mut count = BigInt::one();
    (0..=b.min(c))
        .map(|k| {
            if k > 0 {
                count *= BigInt::from(b - k + 1) * BigInt::from(c - k + 1);
                count /= BigInt::from(k);
            }
            (
                ParamMonomial::hbar(k.into()),
                &minus_i_pow(k) * &GaussianRational::from_bigint(count.clone()),
            )
        })
        .collect()
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::constant(Coefficient::one())
    }

    pub fn x() -> Self {
        NCPoly::monomial(1, 0)
    }

    pub fn p() -> Self {
        NCPoly::monomial(0, 1)
    }

    /// `x^a p^b` with unit coefficient.
    pub fn monomial(a: u32, b: u32) -> Self {
        NCPoly::term(a, b, Coefficient::one())
    }

    pub fn term(a: u32, b: u32, coeff: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((a, b), coeff);
        }
        NCPoly { terms }
    }

    pub fn constant(coeff: Coefficient) -> Self {
        NCPoly::term(0, 0, coeff)
    }

    pub fn from_integer(n: i64) -> Self {
        NCPoly::constant(Coefficient::from_integer(n))
    }

    /// The scalar `i*hbar`.
    pub fn i_hbar() -> Self {
        NCPoly::constant(Coefficient::i_hbar())
    }

    /// Build from arbitrary `(a, b, coeff)` triples, merging duplicates.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Coefficient)>,
    {
        let mut out = NCPoly::zero();
        for (a, b, c) in terms {
            out.add_term((a, b), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(a, b)` order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Exponents, &Coefficient)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, a: u32, b: u32) -> Coefficient {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// The scalar part if the polynomial has no `x` or `p` factors.
    pub fn as_scalar(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Highest `a + b` over all terms; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|(a, _)| *a).max().unwrap_or(0)
    }

    pub fn p_degree(&self) -> u32 {
        self.terms.keys().map(|(_, b)| *b).max().unwrap_or(0)
    }

    pub fn is_hbar_free(&self) -> bool {
        self.terms.values().all(Coefficient::is_hbar_free)
    }

    pub fn param_names(&self) -> impl Iterator<Item = &str> {
        self.terms.values().flat_map(Coefficient::param_names)
    }

    fn add_term(&mut self, key: Exponents, coeff: Coefficient) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, factor: &Coefficient) -> Self {
        let mut out = NCPoly::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c * factor);
        }
        out
    }

    /// Exact division by a one-term, nonzero scalar.
    pub fn scalar_div(&self, divisor: &Coefficient) -> Result<Self, AlgebraError> {
        let one = Coefficient::one().checked_div(divisor)?;
        Ok(self.scale(&one))
    }

    /// Weyl-algebra product in normal order.
    pub fn mul(&self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        let mut factors: BTreeMap<(u32, u32), Vec<(ParamMonomial, GaussianRational)>> = BTreeMap::new();
        for (&(a, b), ca) in &self.terms {
            for (&(c, d), cb) in &rhs.terms {
                let scalar = ca * cb;
                let fs = factors.entry((b, c)).or_insert_with(|| reorder_factors(b, c));
                for (k, (shift, f)) in fs.iter().enumerate() {
                    let k = k as u32;
                    out.add_term((a + c - k, b + d - k), scalar.scale_monomial(f, shift));
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> NCPoly {
        let mut acc = NCPoly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// `AB - BA`.
    pub fn commutator(&self, rhs: &NCPoly) -> NCPoly {
        &self.mul(rhs) - &rhs.mul(self)
    }

    /// Formal derivative in `x` on the canonical form.
    pub fn partial_x(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (&(a, b), c) in &self.terms {
            if a > 0 {
                out.add_term((a - 1, b), c.scale(&GaussianRational::from_integer(a.into())));
            }
        }
        out
    }

    /// Formal derivative in `p` on the canonical form.
    pub fn partial_p(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (&(a, b), c) in &self.terms {
            if b > 0 {
                out.add_term((a, b - 1), c.scale(&GaussianRational::from_integer(b.into())));
            }
        }
        out
    }

    /// Project to `hbar -> 0`: drop every term carrying a positive power of
    /// `hbar`.
    pub fn classical_limit(&self) -> Result<NCPoly, AlgebraError> {
        let mut out = NCPoly::zero();
        for (k, c) in &self.terms {
            if c.min_hbar_exponent().is_some_and(|e| e < 0) {
                return Err(AlgebraError::NegativeHbarPower);
            }
            out.add_term(*k, c.hbar_free_part());
        }
        Ok(out)
    }

    /// Product that treats `x` and `p` as commuting; only meaningful for
    /// classical polynomials.
    fn commutative_mul(&self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (&(a, b), ca) in &self.terms {
            for (&(c, d), cb) in &rhs.terms {
                out.add_term((a + c, b + d), ca * cb);
            }
        }
        out
    }

    /// `{F, G} = dF/dx dG/dp - dG/dx dF/dp` for classical inputs.
    pub fn poisson_bracket(&self, rhs: &NCPoly) -> Result<NCPoly, AlgebraError> {
        if !self.is_hbar_free() || !rhs.is_hbar_free() {
            return Err(AlgebraError::NotClassical);
        }
        let lhs = self.partial_x().commutative_mul(&rhs.partial_p());
        let sub = rhs.partial_x().commutative_mul(&self.partial_p());
        Ok(&lhs - &sub)
    }

    /// The raw term map, keyed by `(a, b)`.
    pub fn terms(&self) -> &BTreeMap<Exponents, Coefficient> {
        &self.terms
    }
}

/// Normal-order a word of generators scaled by `coeff`.
///
/// Equal to folding [`NCPoly::mul`] over the word.
pub fn normal_order(word: &[Generator], coeff: &Coefficient) -> NCPoly {
    word.iter()
        .fold(NCPoly::constant(coeff.clone()), |acc, g| {
            acc.mul(&NCPoly::from(*g))
        })
}

impl From<Generator> for NCPoly {
    fn from(g: Generator) -> Self {
        match g {
            Generator::X => NCPoly::x(),
            Generator::P => NCPoly::p(),
        }
    }
}

impl From<Coefficient> for NCPoly {
    fn from(c: Coefficient) -> Self {
        NCPoly::constant(c)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        NCPoly::mul(self, rhs)
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr for NCPoly {
            type Output = NCPoly;
            fn $method(self, rhs: NCPoly) -> NCPoly {
                $tr::$method(&self, &rhs)
            }
        }
    )*};
}

// `Mul` is only implemented on references so the inherent `mul` wins method
// resolution on owned values.
forward_owned_binop!(Add::add, Sub::sub);

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::render_text(self))
    }
}
