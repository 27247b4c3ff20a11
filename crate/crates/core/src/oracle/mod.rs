//! Numeric cross-check of symbolic identities on a truncated Fock basis.
//!
//! `x` and `p` become `D x D` complex matrices built from the lowering
//! operator. Truncation breaks `[X, P] = i*hbar` only near the bottom-right
//! corner: an expression of degree `g` couples level `n` to at most `n +- g`,
//! so the top-left `(D - g) x (D - g)` block is exact up to rounding. All
//! comparisons are restricted to that trusted block.
//!
//! [`OpExpr`] carries unevaluated sums, products and commutators so that the
//! matrix side can evaluate them with matrix arithmetic instead of trusting
//! the symbolic product formula.
//!
//! Internally every matrix is held in double-double precision; the public
//! surface rounds to `Complex64`.

mod dd;

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::parser::{ExprAst, ExprError, ExprErrorKind, ExprKind, ProductOp, SumOp};
use crate::poly::NCPoly;
use crate::scalar::{validate_param_name, Coefficient, HBAR};

use dd::{Dd, DdComplex, DdMatrix};

pub type CMatrix = DMatrix<Complex64>;

pub const DEFAULT_DIM: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const MAX_DIM: usize = 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("dimension {0} is outside the supported range 2..={MAX_DIM}")]
    BadDimension(usize),
    #[error("no numeric value assigned to parameter `{0}`")]
    MissingParam(String),
    #[error("parameter `{name}` must be a positive finite number, got {value}")]
    BadParamValue { name: String, value: f64 },
    #[error("invalid parameter name: {0}")]
    BadParamName(String),
    #[error("degree {degree} leaves no trusted block of size >= 2 at dimension {dim}")]
    DegreeTooHigh { degree: u32, dim: usize },
}

/// Numeric values of the commuting parameters. `hbar`, `m` and `omega`
/// default to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamAssignment {
    values: BTreeMap<String, f64>,
}

impl Default for ParamAssignment {
    fn default() -> Self {
        let values = [HBAR, "m", "omega"]
            .into_iter()
            .map(|k| (k.to_string(), 1.0))
            .collect();
        ParamAssignment { values }
    }
}

impl ParamAssignment {
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), OracleError> {
        validate_param_name(name).map_err(|e| OracleError::BadParamName(e.to_string()))?;
        if !(value.is_finite() && value > 0.0) {
            return Err(OracleError::BadParamValue { name: name.to_string(), value });
        }
        self.values.insert(name.to_string(), value);
        Ok(())
    }

    pub fn with(mut self, name: &str, value: f64) -> Result<Self, OracleError> {
        self.set(name, value)?;
        Ok(self)
    }

    /// Parse `k=v,k=v` on top of the defaults.
    pub fn parse_list(list: &str) -> Result<Self, String> {
        let mut out = ParamAssignment::default();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("expected name=value, got `{item}`"))?;
            let v: f64 = v.trim().parse().map_err(|_| format!("bad number in `{item}`"))?;
            out.set(k.trim(), v).map_err(|e| e.to_string())?;
        }
        Ok(out)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    fn require(&self, name: &str) -> Result<f64, OracleError> {
        self.get(name).ok_or_else(|| OracleError::MissingParam(name.to_string()))
    }

    pub fn eval(&self, coeff: &Coefficient) -> Result<Complex64, OracleError> {
        Ok(self.eval_dd(coeff)?.to_c64())
    }

    fn eval_dd(&self, coeff: &Coefficient) -> Result<DdComplex, OracleError> {
        let mut acc = DdComplex::ZERO;
        for (mono, value) in coeff.iter() {
            let mut scale = Dd::ONE;
            for (name, exp) in mono.iter() {
                scale = scale * Dd::from_f64(self.require(name)?).powi(exp);
            }
            let v = DdComplex::new(Dd::from_rational(&value.re), Dd::from_rational(&value.im));
            acc = acc + v * DdComplex::real(scale);
        }
        Ok(acc)
    }
}

/// Truncated matrix model of `x` and `p`.
///
/// `x` and `p` are the rounded `Complex64` views; evaluation uses the
/// double-double copies.
#[derive(Clone, Debug)]
pub struct FockRep {
    pub dim: usize,
    pub x: CMatrix,
    pub p: CMatrix,
    pub params: ParamAssignment,
    x_pows: Vec<DdMatrix>,
    p_pows: Vec<DdMatrix>,
}

/// Powers of `X` and `P` precomputed at construction.
const CACHED_POWERS: u32 = 16;

/// `X = sqrt(hbar/(2 m omega)) (a + a^dag)`, `P = i sqrt(m omega hbar / 2) (a^dag - a)`.
pub fn build_fock_rep(dim: usize, params: ParamAssignment) -> Result<FockRep, OracleError> {
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(OracleError::BadDimension(dim));
    }
    let hbar = Dd::from_f64(params.require(HBAR)?);
    let m = Dd::from_f64(params.require("m")?);
    let omega = Dd::from_f64(params.require("omega")?);
    let two = Dd::from_f64(2.0);
    let x_scale = hbar.div(two * m * omega).sqrt();
    let p_scale = (m * omega * hbar).div(two).sqrt();
    // <r| a |r+1> = sqrt(r+1), <r+1| a^dag |r> = sqrt(r+1)
    let ladder = |r: usize, c: usize| Dd::from_f64(r.max(c) as f64).sqrt();
    let x_dd = DdMatrix::from_fn(dim, 1, |r, c| {
        if r.abs_diff(c) == 1 {
            DdComplex::real(ladder(r, c) * x_scale)
        } else {
            DdComplex::ZERO
        }
    });
    let p_dd = DdMatrix::from_fn(dim, 1, |r, c| {
        let v = ladder(r, c) * p_scale;
        match r.cmp(&c) {
            // raising part: +i, lowering part: -i
            std::cmp::Ordering::Greater => DdComplex::new(Dd::ZERO, v),
            std::cmp::Ordering::Less => DdComplex::new(Dd::ZERO, -v),
            std::cmp::Ordering::Equal => DdComplex::ZERO,
        }
    });
    Ok(FockRep {
        dim,
        x: x_dd.to_nalgebra(),
        p: p_dd.to_nalgebra(),
        params,
        x_pows: powers(&x_dd, CACHED_POWERS),
        p_pows: powers(&p_dd, CACHED_POWERS),
    })
}

fn powers(base: &DdMatrix, max: u32) -> Vec<DdMatrix> {
    let mut out = vec![DdMatrix::identity(base.dim())];
    for k in 1..=max as usize {
        out.push(out[k - 1].matmul(base));
    }
    out
}

impl FockRep {
    pub fn with_defaults(dim: usize) -> Result<FockRep, OracleError> {
        build_fock_rep(dim, ParamAssignment::default())
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim, self.dim)
    }

    pub fn zeros(&self) -> CMatrix {
        CMatrix::zeros(self.dim, self.dim)
    }

    fn power<'a>(cache: &'a [DdMatrix], exp: u32, scratch: &'a mut Option<DdMatrix>) -> &'a DdMatrix {
        let top = cache.len() - 1;
        if (exp as usize) <= top {
            return &cache[exp as usize];
        }
        let mut acc = cache[top].clone();
        for _ in top..exp as usize {
            acc = acc.matmul(&cache[1]);
        }
        scratch.insert(acc)
    }

    fn poly_dd(&self, poly: &NCPoly) -> Result<DdMatrix, OracleError> {
        // sum_a X^a (sum_b c_ab P^b): one product per distinct x power
        let mut rows: Vec<Option<DdMatrix>> = vec![None; poly.x_degree() as usize + 1];
        for ((a, b), coeff) in poly.iter() {
            let mut scratch = None;
            let p_pow = Self::power(&self.p_pows, b, &mut scratch);
            let term = p_pow.scale(self.params.eval_dd(coeff)?);
            let slot = &mut rows[a as usize];
            *slot = Some(match slot.take() {
                Some(acc) => acc.add(&term),
                None => term,
            });
        }
        let mut acc = DdMatrix::zeros(self.dim);
        for (a, row) in rows.into_iter().enumerate() {
            if let Some(row) = row {
                let mut scratch = None;
                let x_pow = Self::power(&self.x_pows, a as u32, &mut scratch);
                acc = acc.add(&x_pow.matmul(&row));
            }
        }
        Ok(acc)
    }

    fn eval_dd(&self, expr: &OpExpr) -> Result<DdMatrix, OracleError> {
        Ok(match expr {
            OpExpr::Poly(p) => self.poly_dd(p)?,
            OpExpr::Sum(items) => {
                let mut acc = DdMatrix::zeros(self.dim);
                for item in items {
                    acc = acc.add(&self.eval_dd(item)?);
                }
                acc
            }
            OpExpr::Product(a, b) => self.eval_dd(a)?.matmul(&self.eval_dd(b)?),
            OpExpr::Commutator(a, b) => {
                let (a, b) = (self.eval_dd(a)?, self.eval_dd(b)?);
                a.matmul(&b).sub(&b.matmul(&a))
            }
            OpExpr::Scaled(c, a) => self.eval_dd(a)?.scale(self.params.eval_dd(c)?),
        })
    }

    /// Evaluate a normal-ordered polynomial: `c x^a p^b -> c X^a P^b`.
    pub fn to_matrix(&self, poly: &NCPoly) -> Result<CMatrix, OracleError> {
        Ok(self.poly_dd(poly)?.to_nalgebra())
    }

    /// Evaluate an expression tree with matrix arithmetic.
    pub fn eval(&self, expr: &OpExpr) -> Result<CMatrix, OracleError> {
        Ok(self.eval_dd(expr)?.to_nalgebra())
    }
}

/// Max-abs entry of `a - b` on the top-left `block x block` corner.
pub fn block_deviation(a: &CMatrix, b: &CMatrix, block: usize) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..block {
        for c in 0..block {
            worst = worst.max((a[(r, c)] - b[(r, c)]).norm());
        }
    }
    worst
}

/// An unevaluated operator expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpExpr {
    Poly(NCPoly),
    Sum(Vec<OpExpr>),
    Product(Box<OpExpr>, Box<OpExpr>),
    Commutator(Box<OpExpr>, Box<OpExpr>),
    Scaled(Coefficient, Box<OpExpr>),
}

impl From<NCPoly> for OpExpr {
    fn from(p: NCPoly) -> Self {
        OpExpr::Poly(p)
    }
}

impl From<&NCPoly> for OpExpr {
    fn from(p: &NCPoly) -> Self {
        OpExpr::Poly(p.clone())
    }
}

impl OpExpr {
    pub fn comm(a: impl Into<OpExpr>, b: impl Into<OpExpr>) -> OpExpr {
        OpExpr::Commutator(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn prod(a: impl Into<OpExpr>, b: impl Into<OpExpr>) -> OpExpr {
        OpExpr::Product(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn scaled(c: Coefficient, a: impl Into<OpExpr>) -> OpExpr {
        OpExpr::Scaled(c, Box::new(a.into()))
    }

    pub fn sum(items: impl IntoIterator<Item = OpExpr>) -> OpExpr {
        OpExpr::Sum(items.into_iter().collect())
    }

    /// Upper bound on the degree after expansion.
    pub fn degree_bound(&self) -> u32 {
        match self {
            OpExpr::Poly(p) => p.total_degree(),
            OpExpr::Sum(items) => items.iter().map(OpExpr::degree_bound).max().unwrap_or(0),
            OpExpr::Product(a, b) | OpExpr::Commutator(a, b) => a.degree_bound() + b.degree_bound(),
            OpExpr::Scaled(_, a) => a.degree_bound(),
        }
    }

    /// Symbolic value in the Weyl algebra.
    pub fn lower(&self) -> NCPoly {
        match self {
            OpExpr::Poly(p) => p.clone(),
            OpExpr::Sum(items) => items.iter().fold(NCPoly::zero(), |acc, e| &acc + &e.lower()),
            OpExpr::Product(a, b) => a.lower().mul(&b.lower()),
            OpExpr::Commutator(a, b) => a.lower().commutator(&b.lower()),
            OpExpr::Scaled(c, a) => a.lower().scale(c),
        }
    }

    /// Build from a parsed expression. Scalar subexpressions (divisors,
    /// negative powers) are folded symbolically; everything touching `x` or
    /// `p` stays a tree.
    pub fn from_ast(ast: &ExprAst, src: &str) -> Result<OpExpr, ExprError> {
        let err = |kind, node: &ExprAst| ExprError::new(kind, node.span, src);
        Ok(match &ast.kind {
            ExprKind::Sum(op, a, b) => {
                let b = OpExpr::from_ast(b, src)?;
                let b = match op {
                    SumOp::Add => b,
                    SumOp::Sub => OpExpr::scaled(Coefficient::from_integer(-1), b),
                };
                OpExpr::sum([OpExpr::from_ast(a, src)?, b])
            }
            ExprKind::Product(ProductOp::Mul, a, b) => {
                OpExpr::prod(OpExpr::from_ast(a, src)?, OpExpr::from_ast(b, src)?)
            }
            ExprKind::Product(ProductOp::Div, a, b) => {
                let den = crate::parser::lower(b, src)?;
                let Some(den) = den.as_scalar() else {
                    return Err(err(ExprErrorKind::OperatorDivisor, b));
                };
                let inv = Coefficient::one()
                    .checked_div(&den)
                    .map_err(|e| err(ExprErrorKind::Algebra(e), b))?;
                OpExpr::scaled(inv, OpExpr::from_ast(a, src)?)
            }
            ExprKind::Power(base, exp) if *exp > 0 => {
                let base = OpExpr::from_ast(base, src)?;
                (1..*exp).fold(base.clone(), |acc, _| OpExpr::prod(acc, base.clone()))
            }
            ExprKind::Neg(a) => OpExpr::scaled(Coefficient::from_integer(-1), OpExpr::from_ast(a, src)?),
            ExprKind::Commutator(a, b) => {
                OpExpr::comm(OpExpr::from_ast(a, src)?, OpExpr::from_ast(b, src)?)
            }
            ExprKind::Paren(a) => OpExpr::from_ast(a, src)?,
            // leaves, zero powers and negative scalar powers
            _ => OpExpr::Poly(crate::parser::lower(ast, src)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub pass: bool,
    pub max_deviation: f64,
    pub trusted_block: usize,
    pub dim: usize,
    pub tol: f64,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (max deviation {:.3e} on {}x{} trusted block of D={}, tol {:.1e})",
            if self.pass { "pass" } else { "fail" },
            self.max_deviation,
            self.trusted_block,
            self.trusted_block,
            self.dim,
            self.tol
        )
    }
}

fn trusted_block(degree: u32, dim: usize) -> Result<usize, OracleError> {
    let block = dim.saturating_sub(degree as usize);
    if block < 2 {
        return Err(OracleError::DegreeTooHigh { degree, dim });
    }
    Ok(block)
}

/// Compare two expressions on the trusted block.
pub fn check_expr_identity(lhs: &OpExpr, rhs: &OpExpr, rep: &FockRep, tol: f64) -> Result<CheckOutcome, OracleError> {
    let degree = lhs.degree_bound().max(rhs.degree_bound());
    let block = trusted_block(degree, rep.dim)?;
    let dev = rep.eval_dd(lhs)?.block_deviation(&rep.eval_dd(rhs)?, block);
    Ok(CheckOutcome {
        pass: dev <= tol,
        max_deviation: dev,
        trusted_block: block,
        dim: rep.dim,
        tol,
    })
}

/// Compare two polynomials on the trusted block.
pub fn check_identity(lhs: &NCPoly, rhs: &NCPoly, rep: &FockRep, tol: f64) -> Result<CheckOutcome, OracleError> {
    check_expr_identity(&lhs.into(), &rhs.into(), rep, tol)
}
