use crate::poly::NCPoly;
use crate::scalar::{Coefficient, GaussianRational, ParamMonomial};

use super::ast::{ExprAst, ExprKind, ProductOp, SumOp};
use super::{ExprError, ExprErrorKind};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: i64 = 256;

/// Evaluate an AST in the Weyl algebra. `src` is only used to place error
/// positions.
pub fn lower(ast: &ExprAst, src: &str) -> Result<NCPoly, ExprError> {
    let err = |kind: ExprErrorKind, node: &ExprAst| ExprError::new(kind, node.span, src);
    Ok(match &ast.kind {
        ExprKind::Sum(op, a, b) => {
            let (a, b) = (lower(a, src)?, lower(b, src)?);
            match op {
                SumOp::Add => &a + &b,
                SumOp::Sub => &a - &b,
            }
        }
        ExprKind::Product(ProductOp::Mul, a, b) => lower(a, src)?.mul(&lower(b, src)?),
        ExprKind::Product(ProductOp::Div, a, b) => {
            let num = lower(a, src)?;
            let den = lower(b, src)?;
            let Some(den) = den.as_scalar() else {
                return Err(err(ExprErrorKind::OperatorDivisor, b));
            };
            num.scalar_div(&den)
                .map_err(|e| err(ExprErrorKind::Algebra(e), b))?
        }
        ExprKind::Power(base, exp) => {
            let value = lower(base, src)?;
            if *exp >= 0 {
                value.pow(*exp as u32)
            } else {
                let Some(scalar) = value.as_scalar() else {
                    return Err(err(ExprErrorKind::NegativePowerOfOperator, ast));
                };
                let inv = Coefficient::one()
                    .checked_div(&scalar)
                    .map_err(|e| err(ExprErrorKind::Algebra(e), base))?;
                NCPoly::constant(inv.pow(exp.unsigned_abs() as u32))
            }
        }
        ExprKind::Neg(a) => -lower(a, src)?,
        ExprKind::Commutator(a, b) => lower(a, src)?.commutator(&lower(b, src)?),
        ExprKind::GenX => NCPoly::x(),
        ExprKind::GenP => NCPoly::p(),
        ExprKind::ImagUnit => NCPoly::constant(GaussianRational::i().into()),
        ExprKind::Param(name) => {
            let mono = ParamMonomial::var(name, 1).map_err(|e| err(ExprErrorKind::Algebra(e), ast))?;
            NCPoly::constant(Coefficient::term(mono, GaussianRational::one()))
        }
        ExprKind::RationalLit(r) => NCPoly::constant(
            GaussianRational::new(r.clone(), num_rational::BigRational::from_integer(0.into())).into(),
        ),
        ExprKind::Paren(a) => lower(a, src)?,
    })
}
