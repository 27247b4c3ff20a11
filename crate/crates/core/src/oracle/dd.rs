//! Double-double arithmetic (about 106 bits of mantissa) and dense complex
//! matrices over it.
//!
//! Trusted-block entries of degree-6 expressions at `D = 64` reach `1e9`, and
//! degree-15 Jacobi trees reach `1e18`; plain `f64` rounding alone exceeds an
//! absolute tolerance of `1e-8` there.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn from_bigint(n: &BigInt) -> Dd {
        let hi = n.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Dd::from_f64(hi);
        }
        let rest = n - BigInt::from_f64_exact(hi);
        Dd::from_parts(hi, rest.to_f64().unwrap_or(0.0))
    }

    pub fn from_rational(r: &BigRational) -> Dd {
        if r.is_integer() {
            return Dd::from_bigint(r.numer());
        }
        let hi = r.to_f64().unwrap_or(f64::NAN);
        let Some(hi_exact) = BigRational::from_float(hi) else {
            return Dd::from_f64(hi);
        };
        let rest = r - hi_exact;
        Dd::from_parts(hi, rest.to_f64().unwrap_or(0.0))
    }

    fn from_parts(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let s = Dd::from_f64(self.hi.sqrt());
        // one Newton step doubles the correct bits
        s + (self - s * s).div(s * Dd::from_f64(2.0))
    }

    pub fn powi(self, exp: i64) -> Dd {
        let mut base = if exp < 0 { self.recip() } else { self };
        let mut e = exp.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

trait FromF64Exact {
    fn from_f64_exact(v: f64) -> Self;
}

impl FromF64Exact for BigInt {
    fn from_f64_exact(v: f64) -> BigInt {
        BigRational::from_float(v).map_or_else(BigInt::zero, |r| r.to_integer())
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex { re: Dd::ZERO, im: Dd::ZERO };

    pub fn new(re: Dd, im: Dd) -> Self {
        DdComplex { re, im }
    }

    pub fn real(re: Dd) -> Self {
        DdComplex { re, im: Dd::ZERO }
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `|z|` rounded to `f64`.
    pub fn norm(self) -> f64 {
        let (re, im) = (self.re.to_f64(), self.im.to_f64());
        re.hypot(im)
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn add(self, rhs: DdComplex) -> DdComplex {
        DdComplex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn sub(self, rhs: DdComplex) -> DdComplex {
        DdComplex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn mul(self, rhs: DdComplex) -> DdComplex {
        DdComplex::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

/// Square dense matrix with a tracked half-bandwidth: entries with
/// `|row - col| > band` are known to be zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DdMatrix {
    n: usize,
    band: usize,
    data: Vec<DdComplex>,
}

impl DdMatrix {
    pub fn zeros(n: usize) -> Self {
        DdMatrix { n, band: 0, data: vec![DdComplex::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        DdMatrix::scalar(n, DdComplex::real(Dd::ONE))
    }

    pub fn scalar(n: usize, value: DdComplex) -> Self {
        let mut m = DdMatrix::zeros(n);
        for k in 0..n {
            m.data[k * n + k] = value;
        }
        m
    }

    pub fn from_fn(n: usize, band: usize, f: impl Fn(usize, usize) -> DdComplex) -> Self {
        let mut m = DdMatrix::zeros(n);
        m.band = band.min(n.saturating_sub(1));
        for r in 0..n {
            for c in m.cols(r) {
                m.data[r * n + c] = f(r, c);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> DdComplex {
        self.data[r * self.n + c]
    }

    fn cols(&self, r: usize) -> std::ops::Range<usize> {
        r.saturating_sub(self.band)..(r + self.band + 1).min(self.n)
    }

    fn combine(&self, rhs: &DdMatrix, op: impl Fn(DdComplex, DdComplex) -> DdComplex) -> DdMatrix {
        let mut out = self.clone();
        out.band = self.band.max(rhs.band);
        for r in 0..self.n {
            for c in rhs.cols(r) {
                let idx = r * self.n + c;
                out.data[idx] = op(out.data[idx], rhs.data[idx]);
            }
        }
        out
    }

    pub fn add(&self, rhs: &DdMatrix) -> DdMatrix {
        self.combine(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &DdMatrix) -> DdMatrix {
        self.combine(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: DdComplex) -> DdMatrix {
        let mut out = self.clone();
        for r in 0..self.n {
            for c in self.cols(r) {
                let idx = r * self.n + c;
                out.data[idx] = out.data[idx] * s;
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &DdMatrix) -> DdMatrix {
        let n = self.n;
        let mut out = DdMatrix::zeros(n);
        out.band = (self.band + rhs.band).min(n.saturating_sub(1));
        for r in 0..n {
            for k in self.cols(r) {
                let a = self.data[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in rhs.cols(k) {
                    let b = rhs.data[k * n + c];
                    let idx = r * n + c;
                    out.data[idx] = out.data[idx] + a * b;
                }
            }
        }
        out
    }

    /// Max-abs entry of `self - rhs` on the top-left `block x block` corner.
    pub fn block_deviation(&self, rhs: &DdMatrix, block: usize) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..block.min(self.n) {
            for c in 0..block.min(self.n) {
                worst = worst.max((self.get(r, c) - rhs.get(r, c)).norm());
            }
        }
        worst
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |r, c| self.get(r, c).to_c64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catches_what_f64_drops() {
        let big = Dd::from_f64(1e17);
        let sum = big + Dd::ONE - big;
        assert_eq!(sum.to_f64(), 1.0);
    }

    #[test]
    fn rational_conversion_keeps_low_bits() {
        let third = Dd::from_rational(&BigRational::new(1.into(), 3.into()));
        let back = third * Dd::from_f64(3.0) - Dd::ONE;
        assert!(back.to_f64().abs() < 1e-30);
        let n = BigInt::from(10u64).pow(20) + BigInt::from(7);
        let d = Dd::from_bigint(&n) - Dd::from_bigint(&BigInt::from(10u64).pow(20));
        assert_eq!(d.to_f64(), 7.0);
    }

    #[test]
    fn sqrt_and_division() {
        let two = Dd::from_f64(2.0);
        let r = two.sqrt();
        assert!((r * r - two).to_f64().abs() < 1e-30);
        let q = Dd::ONE.div(Dd::from_f64(7.0));
        assert!((q * Dd::from_f64(7.0) - Dd::ONE).to_f64().abs() < 1e-30);
        assert!((Dd::from_f64(3.0).powi(-2) * Dd::from_f64(9.0) - Dd::ONE).to_f64().abs() < 1e-30);
    }

    #[test]
    fn banded_matmul_matches_dense_definition() {
        let a = DdMatrix::from_fn(5, 1, |r, c| DdComplex::real(Dd::from_f64((r + 2 * c) as f64)));
        let b = DdMatrix::from_fn(5, 2, |r, c| DdComplex::new(Dd::from_f64(r as f64), Dd::from_f64(c as f64)));
        let prod = a.matmul(&b);
        for r in 0..5 {
            for c in 0..5 {
                let mut acc = DdComplex::ZERO;
                for k in 0..5 {
                    acc = acc + a.get(r, k) * b.get(k, c);
                }
                assert_eq!(acc.to_c64(), prod.get(r, c).to_c64());
            }
        }
    }
}
