//! Text front end: tokenizer, recursive-descent parser and lowering to
//! [`NCPoly`](crate::poly::NCPoly).
//!
//! Grammar:
//!
//! ```text
//! expr    := term (("+" | "-") term)* ;
//! term    := unary ("*" unary | "/" unary)* ;
//! unary   := "-" unary | power ;
//! power   := atom ("^" "-"? UINT)? ;
//! atom    := "x" | "p" | "i" | "hbar" | IDENT | NUMBER | "(" expr ")" | "[" expr "," expr "]" ;
//! ```
//!
//! A negative exponent is only accepted on a scalar monomial such as `m^-1`;
//! that is what the renderer emits for Laurent parameters.

pub mod ast;
mod lexer;
mod lower;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::error::AlgebraError;
use crate::poly::NCPoly;

pub use ast::{ExprAst, ExprKind, ProductOp, Span, SumOp};
pub use lexer::Token;
pub use lower::{lower, MAX_EXPONENT};

use lexer::Spanned;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprErrorKind {
    #[error("expected {}, found {found}", expected.join(" or "))]
    UnexpectedToken { expected: Vec<String>, found: String },
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("{0}")]
    Algebra(AlgebraError),
    #[error("divisor contains x or p; only scalar monomials can divide")]
    OperatorDivisor,
    #[error("negative exponent on an expression containing x or p")]
    NegativePowerOfOperator,
    #[error("exponent {0} exceeds the supported maximum")]
    ExponentTooLarge(BigInt),
}

/// A parse or lowering failure anchored at a source span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub kind: ExprErrorKind,
    pub span: Span,
    /// 1-based line of `span.start`.
    pub line: usize,
    /// 1-based column (in characters) of `span.start`.
    pub column: usize,
}

impl ExprError {
    pub fn new(kind: ExprErrorKind, span: Span, src: &str) -> Self {
        let before = &src[..span.start.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        ExprError { kind, span, line, column }
    }

    /// Multi-line diagnostic with the offending line and a caret marker.
    pub fn annotate(&self, src: &str) -> String {
        let text = src.lines().nth(self.line - 1).unwrap_or("");
        let width = src
            .get(self.span.start..self.span.end)
            .map_or(1, |s| s.chars().count().max(1));
        format!(
            "error: {}\n --> line {}, column {}\n  | {}\n  | {}{}",
            self.kind,
            self.line,
            self.column,
            text,
            " ".repeat(self.column - 1),
            "^".repeat(width)
        )
    }
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

impl std::error::Error for ExprError {}

const ATOM_START: [&str; 8] = ["`x`", "`p`", "`i`", "`hbar`", "identifier", "number", "`(`", "`[`"];

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Spanned>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn unexpected(&self, expected: &[&str]) -> ExprError {
        let tok = self.peek();
        ExprError::new(
            ExprErrorKind::UnexpectedToken {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: tok.token.describe(),
            },
            tok.span,
            self.src,
        )
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().token {
                Token::Plus => SumOp::Add,
                Token::Minus => SumOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = ExprAst::new(ExprKind::Sum(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().token {
                Token::Star => ProductOp::Mul,
                Token::Slash => ProductOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            lhs = ExprAst::new(ExprKind::Product(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn unary(&mut self) -> Result<ExprAst, ExprError> {
        if self.peek().token == Token::Minus {
            let minus = self.bump();
            let inner = self.unary()?;
            let span = minus.span.join(inner.span);
            return Ok(ExprAst::new(ExprKind::Neg(Box::new(inner)), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst, ExprError> {
        let base = self.atom()?;
        if self.peek().token != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek().token == Token::Minus {
            self.bump();
            true
        } else {
            false
        };
        let tok = self.peek().clone();
        let Token::Int(n) = tok.token else {
            return Err(self.unexpected(&["unsigned integer exponent"]));
        };
        self.bump();
        let exp = n
            .to_i64()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| ExprError::new(ExprErrorKind::ExponentTooLarge(n.clone()), tok.span, self.src))?;
        let exp = if negative { -exp } else { exp };
        let span = base.span.join(tok.span);
        Ok(ExprAst::new(ExprKind::Power(Box::new(base), exp), span))
    }

    fn atom(&mut self) -> Result<ExprAst, ExprError> {
        let tok = self.peek().clone();
        let kind = match tok.token {
            Token::X => ExprKind::GenX,
            Token::P => ExprKind::GenP,
            Token::I => ExprKind::ImagUnit,
            Token::Hbar => ExprKind::Param(crate::scalar::HBAR.to_string()),
            Token::Ident(name) => ExprKind::Param(name),
            Token::Int(n) => ExprKind::RationalLit(BigRational::from_integer(n)),
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                let close = self.expect_closing(Token::RParen)?;
                return Ok(ExprAst::new(ExprKind::Paren(Box::new(inner)), tok.span.join(close.span)));
            }
            Token::LBracket => {
                self.bump();
                let a = self.expr()?;
                if self.peek().token != Token::Comma {
                    return Err(self.unexpected(&["`,`", "`+`", "`-`", "`*`", "`/`", "`^`"]));
                }
                self.bump();
                let b = self.expr()?;
                let close = self.expect_closing(Token::RBracket)?;
                return Ok(ExprAst::new(
                    ExprKind::Commutator(Box::new(a), Box::new(b)),
                    tok.span.join(close.span),
                ));
            }
            _ => return Err(self.unexpected(&ATOM_START)),
        };
        self.bump();
        Ok(ExprAst::new(kind, tok.span))
    }

    fn expect_closing(&mut self, token: Token) -> Result<Spanned, ExprError> {
        if self.peek().token == token {
            return Ok(self.bump());
        }
        let closer = token.describe();
        Err(self.unexpected(&[&closer, "`+`", "`-`", "`*`", "`/`", "`^`"]))
    }
}

/// Parse one expression.
pub fn parse(src: &str) -> Result<ExprAst, ExprError> {
    let tokens = lexer::tokenize(src)?;
    let mut parser = Parser { src, tokens, pos: 0 };
    let ast = parser.expr()?;
    if parser.peek().token != Token::Eof {
        return Err(parser.unexpected(&["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"]));
    }
    Ok(ast)
}

/// Parse and lower in one step.
pub fn parse_poly(src: &str) -> Result<NCPoly, ExprError> {
    let ast = parse(src)?;
    lower(&ast, src)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(src: &str) -> ExprAst {
        parse(src).unwrap()
    }

    #[test]
    fn commutator_node() {
        let ast = shape("[x,p]");
        let ExprKind::Commutator(a, b) = &ast.kind else {
            panic!("expected commutator, got {ast:?}");
        };
        assert_eq!(a.kind, ExprKind::GenX);
        assert_eq!(b.kind, ExprKind::GenP);
        assert_eq!(ast.span, Span::new(0, 5));
    }

    #[test]
    fn oscillator_hamiltonian() {
        let ast = shape("p^2/(2*m) + (m*omega^2/2)*x^2");
        let ExprKind::Sum(SumOp::Add, kinetic, potential) = &ast.kind else {
            panic!("top level should be a sum");
        };
        assert!(matches!(kinetic.kind, ExprKind::Product(ProductOp::Div, _, _)));
        let ExprKind::Product(ProductOp::Mul, coeff, x2) = &potential.kind else {
            panic!("potential should be a product");
        };
        assert!(matches!(coeff.kind, ExprKind::Paren(_)));
        assert!(matches!(x2.kind, ExprKind::Power(_, 2)));
    }

    #[test]
    fn precedence() {
        // -x^2 is -(x^2); a*b^2 is a*(b^2); a - b - c is (a - b) - c
        let ast = shape("-x^2");
        let ExprKind::Neg(inner) = &ast.kind else { panic!() };
        assert!(matches!(inner.kind, ExprKind::Power(_, 2)));
        let ast = shape("x - p - 1");
        let ExprKind::Sum(SumOp::Sub, lhs, _) = &ast.kind else { panic!() };
        assert!(matches!(lhs.kind, ExprKind::Sum(SumOp::Sub, _, _)));
        assert!(shape("2*x^3").same_shape(&shape("2 * (x^3)").strip_parens()));
    }

    #[test]
    fn dangling_operator() {
        let err = parse("x*").unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
        let ExprErrorKind::UnexpectedToken { expected, found } = &err.kind else { panic!() };
        assert_eq!(found, "end of input");
        assert!(expected.contains(&"`x`".to_string()));
    }

    #[test]
    fn positions_are_inside_source() {
        for src in ["x*", "[x p]", "(x", "x^y", "x p", "3 ^ -", "\n  x + * p", "x @"] {
            let err = parse(src).unwrap_err();
            assert!(err.span.start <= src.len(), "{src}: {err}");
            assert!(err.span.end <= src.len(), "{src}: {err}");
        }
        let err = parse("\n  x + * p").unwrap_err();
        assert_eq!((err.line, err.column), (2, 7));
    }

    #[test]
    fn reserved_name() {
        let err = parse("t*x").unwrap_err();
        assert_eq!(
            err.kind,
            ExprErrorKind::Algebra(AlgebraError::ReservedName("t".into()))
        );
    }

    #[test]
    fn negative_parameter_exponent() {
        assert!(matches!(shape("m^-1").kind, ExprKind::Power(_, -1)));
    }

    #[test]
    fn annotated_diagnostic() {
        let err = parse("x*").unwrap_err();
        let text = err.annotate("x*");
        assert!(text.contains("line 1, column 3"), "{text}");
        assert!(text.ends_with("  | x*\n  |   ^"), "{text}");
    }

    impl ExprAst {
        fn strip_parens(&self) -> ExprAst {
            match &self.kind {
                ExprKind::Paren(inner) => inner.strip_parens(),
                ExprKind::Product(op, a, b) => ExprAst::new(
                    ExprKind::Product(*op, Box::new(a.strip_parens()), Box::new(b.strip_parens())),
                    self.span,
                ),
                _ => self.clone(),
            }
        }
    }
}
