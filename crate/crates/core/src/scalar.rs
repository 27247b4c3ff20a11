//! Exact scalars: Gaussian rationals, Laurent monomials in commuting
//! parameters, and the coefficient ring built from them.
//!
//! Parameters (`hbar`, `m`, `omega`, any user symbol) commute with each other
//! and with the phase-space generators, so a [`Coefficient`] is an ordinary
//! commutative Laurent polynomial with Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;

/// Reserved name of the reduced Planck constant.
pub const HBAR: &str = "hbar";

/// Names that can never be used for a commuting parameter.
pub const FORBIDDEN_PARAMS: [&str; 4] = ["x", "p", "i", "t"];

/// Check that `name` may be used as a parameter. `hbar` itself is allowed.
pub fn validate_param_name(name: &str) -> Result<(), AlgebraError> {
    let mut chars = name.chars();
    let well_formed = match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        }
        _ => false,
    };
    if !well_formed {
        return Err(AlgebraError::InvalidParamName(name.to_string()));
    }
    if FORBIDDEN_PARAMS.contains(&name) || (name != HBAR && name.eq_ignore_ascii_case(HBAR)) {
        return Err(AlgebraError::ReservedName(name.to_string()));
    }
    Ok(())
}

/// A complex number with exact rational real and imaginary parts.
///
/// `BigRational` keeps denominators positive and reduced, so structural
/// equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn from_bigint(n: BigInt) -> Self {
        GaussianRational::new(BigRational::from_integer(n), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero() && !self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

// Integer and zero fast paths: the product formula mostly multiplies small
// integers, where general rational arithmetic spends its time on gcds.
fn mul_q(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        BigRational::zero()
    } else if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn add_assign_q(a: &mut BigRational, b: BigRational) {
    if b.is_zero() {
        return;
    }
    if a.is_zero() {
        *a = b;
    } else if a.is_integer() && b.is_integer() {
        *a = BigRational::from_integer(a.numer() + b.numer());
    } else {
        *a += b;
    }
}

impl std::ops::AddAssign for GaussianRational {
    fn add_assign(&mut self, rhs: GaussianRational) {
        add_assign_q(&mut self.re, rhs.re);
        add_assign_q(&mut self.im, rhs.im);
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        let mut out = self.clone();
        out += rhs.clone();
        out
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        let mut re = mul_q(&self.re, &rhs.re);
        add_assign_q(&mut re, -mul_q(&self.im, &rhs.im));
        let mut im = mul_q(&self.re, &rhs.im);
        add_assign_q(&mut im, mul_q(&self.im, &rhs.re));
        GaussianRational::new(re, im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{} {} {}*i",
                    fmt_rational(&self.re),
                    sign,
                    fmt_rational(&self.im.abs())
                )
            }
        }
    }
}

/// A Laurent monomial in the commuting parameters, e.g. `hbar^2*m^-1`.
///
/// Zero exponents are never stored; the empty map is the unit monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamMonomial {
    exponents: BTreeMap<String, i64>,
}

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial::default()
    }

    /// `name^exp` after validating the name.
    pub fn var(name: &str, exp: i64) -> Result<Self, AlgebraError> {
        validate_param_name(name)?;
        let mut exponents = BTreeMap::new();
        if exp != 0 {
            exponents.insert(name.to_string(), exp);
        }
        Ok(ParamMonomial { exponents })
    }

    pub fn hbar(exp: i64) -> Self {
        ParamMonomial::var(HBAR, exp).expect("hbar is a valid parameter")
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, name: &str) -> i64 {
        self.exponents.get(name).copied().unwrap_or(0)
    }

    pub fn hbar_exponent(&self) -> i64 {
        self.exponent(HBAR)
    }

    /// Parameters in rendering order: `hbar` first, the rest alphabetically.
    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        let hbar = self.exponents.get_key_value(HBAR);
        hbar.into_iter()
            .chain(self.exponents.iter().filter(|(k, _)| k.as_str() != HBAR))
            .map(|(k, v)| (k.as_str(), *v))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.exponents.keys().map(String::as_str)
    }

    pub fn inv(&self) -> Self {
        ParamMonomial {
            exponents: self.exponents.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return ParamMonomial::one();
        }
        ParamMonomial {
            exponents: self
                .exponents
                .iter()
                .map(|(k, v)| (k.clone(), v * exp))
                .collect(),
        }
    }

    /// Drop the `hbar` factor, keeping every other parameter.
    pub fn without_hbar(&self) -> Self {
        let mut exponents = self.exponents.clone();
        exponents.remove(HBAR);
        ParamMonomial { exponents }
    }

    /// Numeric value under an assignment; `None` if some parameter is missing.
    pub fn evaluate(&self, values: &BTreeMap<String, f64>) -> Result<f64, String> {
        let mut acc = 1.0;
        for (name, exp) in &self.exponents {
            let v = values.get(name).ok_or_else(|| name.clone())?;
            acc *= v.powi(*exp as i32);
        }
        Ok(acc)
    }
}

impl Mul for &ParamMonomial {
    type Output = ParamMonomial;
    fn mul(self, rhs: &ParamMonomial) -> ParamMonomial {
        let mut exponents = self.exponents.clone();
        for (name, exp) in &rhs.exponents {
            let e = exponents.entry(name.clone()).or_insert(0);
            *e += exp;
            if *e == 0 {
                exponents.remove(name);
            }
        }
        ParamMonomial { exponents }
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (n, (name, exp)) in self.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// Exact scalar: a finite sum of Gaussian rationals times parameter monomials.
///
/// No zero values are stored, so the empty map is the unique zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient {
    terms: BTreeMap<ParamMonomial, GaussianRational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::default()
    }

    pub fn one() -> Self {
        Coefficient::constant(GaussianRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Coefficient::constant(GaussianRational::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Coefficient::constant(GaussianRational::from_ratio(num, den))
    }

    pub fn constant(value: GaussianRational) -> Self {
        Coefficient::term(ParamMonomial::one(), value)
    }

    pub fn term(monomial: ParamMonomial, value: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(monomial, value);
        }
        Coefficient { terms }
    }

    /// `i*hbar`, the value of `[x, p]`.
    pub fn i_hbar() -> Self {
        Coefficient::term(ParamMonomial::hbar(1), GaussianRational::i())
    }

    /// A single parameter, e.g. `m`.
    pub fn param(name: &str) -> Result<Self, AlgebraError> {
        Ok(Coefficient::term(ParamMonomial::var(name, 1)?, GaussianRational::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_monomial()
            .is_some_and(|(m, v)| m.is_one() && v.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ParamMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    /// The single term of a one-term coefficient.
    pub fn as_monomial(&self) -> Option<(&ParamMonomial, &GaussianRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn insert_add(&mut self, monomial: ParamMonomial, value: GaussianRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(e) => {
                if !value.is_zero() {
                    e.insert(value);
                }
            }
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += value;
                if v.is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self * factor * shift`, without a general coefficient product.
    pub fn scale_monomial(&self, factor: &GaussianRational, shift: &ParamMonomial) -> Self {
        if shift.is_one() {
            return self.scale(factor);
        }
        let mut out = Coefficient::zero();
        for (m, v) in &self.terms {
            out.insert_add(m * shift, v * factor);
        }
        out
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        if factor.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Coefficient::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by a one-term coefficient.
    pub fn checked_div(&self, divisor: &Coefficient) -> Result<Self, AlgebraError> {
        let (mono, value) = match divisor.as_monomial() {
            Some(t) => t,
            None if divisor.is_zero() => return Err(AlgebraError::DivisionByZero),
            None => return Err(AlgebraError::NotMonomialDivisor(divisor.len())),
        };
        let inv = Coefficient::term(mono.inv(), value.inv()?);
        Ok(self * &inv)
    }

    /// Smallest `hbar` exponent over all terms; `None` for zero.
    pub fn min_hbar_exponent(&self) -> Option<i64> {
        self.terms.keys().map(ParamMonomial::hbar_exponent).min()
    }

    pub fn is_hbar_free(&self) -> bool {
        self.terms.keys().all(|m| m.hbar_exponent() == 0)
    }

    /// Keep only the terms whose `hbar` exponent is exactly zero.
    pub fn hbar_free_part(&self) -> Self {
        Coefficient {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.hbar_exponent() == 0)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn param_names(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().flat_map(ParamMonomial::names)
    }

    /// Numeric value under an assignment. The error carries the first
    /// unassigned parameter name.
    pub fn evaluate(&self, values: &BTreeMap<String, f64>) -> Result<Complex64, String> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, v) in &self.terms {
            acc += v.to_complex() * m.evaluate(values)?;
        }
        Ok(acc)
    }
}

impl From<GaussianRational> for Coefficient {
    fn from(value: GaussianRational) -> Self {
        Coefficient::constant(value)
    }
}

impl std::ops::AddAssign for Coefficient {
    fn add_assign(&mut self, rhs: Coefficient) {
        for (m, v) in rhs.terms {
            self.insert_add(m, v);
        }
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.insert_add(m.clone(), v.clone());
        }
        out
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.insert_add(m.clone(), -v);
        }
        out
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        for (ma, va) in &self.terms {
            for (mb, vb) in &rhs.terms {
                out.insert_add(ma * mb, va * vb);
            }
        }
        out
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_division_is_exact() {
        // (1 + 2i) / (3 - i) = (1 + 2i)(3 + i) / 10 = (1 + 7i) / 10
        let a = GaussianRational::new(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        let b = GaussianRational::new(BigRational::from_integer(3.into()), BigRational::from_integer((-1).into()));
        let q = a.checked_div(&b).unwrap();
        assert_eq!(q.re, BigRational::new(1.into(), 10.into()));
        assert_eq!(q.im, BigRational::new(7.into(), 10.into()));
        assert_eq!(&q * &b, a);
    }

    #[test]
    fn zero_is_unique() {
        let a = Coefficient::from_integer(3);
        assert_eq!(&a - &a, Coefficient::zero());
        assert!(GaussianRational::zero().inv().is_err());
    }

    #[test]
    fn laurent_exponents_cancel() {
        let m = ParamMonomial::var("m", 1).unwrap();
        assert!((&m * &m.inv()).is_one());
        assert_eq!((&m * &m).exponent("m"), 2);
    }

    #[test]
    fn reserved_names_are_rejected() {
        for bad in ["x", "p", "i", "t", "HBAR", "Hbar"] {
            assert!(matches!(
                validate_param_name(bad),
                Err(AlgebraError::ReservedName(_))
            ));
        }
        assert!(validate_param_name("1m").is_err());
        assert!(validate_param_name("").is_err());
        assert!(validate_param_name("omega").is_ok());
        assert!(validate_param_name("hbar").is_ok());
    }

    #[test]
    fn division_requires_monomial() {
        let sum = &Coefficient::one() + &Coefficient::param("m").unwrap();
        assert_eq!(
            Coefficient::one().checked_div(&sum),
            Err(AlgebraError::NotMonomialDivisor(2))
        );
        assert_eq!(
            Coefficient::one().checked_div(&Coefficient::zero()),
            Err(AlgebraError::DivisionByZero)
        );
        let q = Coefficient::one().checked_div(&Coefficient::i_hbar()).unwrap();
        // 1/(i hbar) = -i hbar^-1
        let expected = Coefficient::term(ParamMonomial::hbar(-1), -&GaussianRational::i());
        assert_eq!(q, expected);
    }

    #[test]
    fn rendering_order_puts_hbar_first() {
        let mono = &ParamMonomial::var("a", 1).unwrap() * &ParamMonomial::hbar(2);
        assert_eq!(mono.to_string(), "hbar^2*a");
    }
}
