//! Deterministic text and JSON output for [`NCPoly`].
//!
//! Text terms are ordered by `(total degree, a, b)` descending. The text form
//! parses back to the same polynomial.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::NCPoly;
use crate::scalar::{Coefficient, GaussianRational, ParamMonomial};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn render(poly: &NCPoly, format: Format) -> String {
    match format {
        Format::Text => render_text(poly),
        Format::Json => render_json(poly),
    }
}

/// `(a, b)` keys in rendering order.
fn ordered_keys(poly: &NCPoly) -> Vec<(u32, u32)> {
    let mut keys: Vec<_> = poly.iter().map(|(k, _)| k).collect();
    keys.sort_by_key(|&(a, b)| Reverse((a + b, a, b)));
    keys
}

/// One signed scalar summand: `±|value| * [i] * params`.
struct Atom<'a> {
    negative: bool,
    magnitude: BigRational,
    imaginary: bool,
    monomial: &'a ParamMonomial,
}

fn atoms(coeff: &Coefficient) -> Vec<Atom<'_>> {
    let mut out = Vec::new();
    for (monomial, value) in coeff.iter() {
        for (part, imaginary) in [(&value.re, false), (&value.im, true)] {
            if !part.is_zero() {
                out.push(Atom {
                    negative: part.is_negative(),
                    magnitude: part.abs(),
                    imaginary,
                    monomial,
                });
            }
        }
    }
    out
}

fn fmt_magnitude(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

/// Unsigned factors of an atom followed by `trailing` generator factors.
fn atom_body(atom: &Atom<'_>, trailing: &[String]) -> String {
    let mut factors = Vec::new();
    let unit = atom.magnitude.is_one();
    let has_more = atom.imaginary || !atom.monomial.is_one() || !trailing.is_empty();
    if !unit || !has_more {
        factors.push(fmt_magnitude(&atom.magnitude));
    }
    if atom.imaginary {
        factors.push("i".to_string());
    }
    for (name, exp) in atom.monomial.iter() {
        factors.push(if exp == 1 { name.to_string() } else { format!("{name}^{exp}") });
    }
    factors.extend(trailing.iter().cloned());
    factors.join("*")
}

fn join_signed(parts: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (n, (negative, body)) in parts.into_iter().enumerate() {
        match (n, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn generator_factors(a: u32, b: u32) -> Vec<String> {
    let power = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    };
    power("x", a).into_iter().chain(power("p", b)).collect()
}

/// Render a scalar on its own, e.g. `(3/2)*i*hbar^2*m^-1`.
pub fn render_coefficient(coeff: &Coefficient) -> String {
    if coeff.is_zero() {
        return "0".to_string();
    }
    join_signed(atoms(coeff).iter().map(|a| (a.negative, atom_body(a, &[]))))
}

pub fn render_text(poly: &NCPoly) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let parts = ordered_keys(poly).into_iter().map(|(a, b)| {
        let coeff = poly.coefficient(a, b);
        let gens = generator_factors(a, b);
        let atoms = atoms(&coeff);
        if let [single] = atoms.as_slice() {
            (single.negative, atom_body(single, &gens))
        } else {
            let inner = render_coefficient(&coeff);
            let mut body = format!("({inner})");
            for g in gens {
                body.push('*');
                body.push_str(&g);
            }
            (false, body)
        }
    });
    join_signed(parts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub a: u32,
    pub b: u32,
    pub coeff: Vec<CoeffTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTermJson {
    /// Rational written as `"n/d"`.
    pub re: String,
    pub im: String,
    pub params: BTreeMap<String, i64>,
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad rational `{0}`; expected \"n/d\"")]
    BadRational(String),
    #[error(transparent)]
    Algebra(#[from] crate::error::AlgebraError),
}

fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<BigRational, JsonError> {
    let bad = || JsonError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn to_json_value(poly: &NCPoly) -> PolyJson {
    let terms = ordered_keys(poly)
        .into_iter()
        .map(|(a, b)| TermJson {
            a,
            b,
            coeff: poly
                .coefficient(a, b)
                .iter()
                .map(|(mono, value)| CoeffTermJson {
                    re: rational_string(&value.re),
                    im: rational_string(&value.im),
                    params: mono.iter().map(|(k, v)| (k.to_string(), v)).collect(),
                })
                .collect(),
        })
        .collect();
    PolyJson { terms }
}

pub fn render_json(poly: &NCPoly) -> String {
    serde_json::to_string(&to_json_value(poly)).expect("plain data serializes")
}

pub fn from_json_value(json: &PolyJson) -> Result<NCPoly, JsonError> {
    let mut terms = Vec::new();
    for term in &json.terms {
        let mut coeff = Coefficient::zero();
        for ct in &term.coeff {
            let mut mono = ParamMonomial::one();
            for (name, exp) in &ct.params {
                mono = &mono * &ParamMonomial::var(name, *exp)?;
            }
            let value = GaussianRational::new(parse_rational(&ct.re)?, parse_rational(&ct.im)?);
            coeff = &coeff + &Coefficient::term(mono, value);
        }
        terms.push((term.a, term.b, coeff));
    }
    Ok(NCPoly::from_terms(terms))
}

pub fn from_json(text: &str) -> Result<NCPoly, JsonError> {
    from_json_value(&serde_json::from_str(text)?)
}
