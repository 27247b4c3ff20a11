use num_bigint::BigInt;

use super::ast::Span;
use super::{ExprError, ExprErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    X,
    P,
    I,
    Hbar,
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::X => "`x`".into(),
            Token::P => "`p`".into(),
            Token::I => "`i`".into(),
            Token::Hbar => "`hbar`".into(),
            Token::Ident(name) => format!("identifier `{name}`"),
            Token::Int(n) => format!("number `{n}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::LBracket => "`[`".into(),
            Token::RBracket => "`]`".into(),
            Token::Comma => "`,`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub token: Token,
    pub span: Span,
}

pub fn tokenize(src: &str) -> Result<Vec<Spanned>, ExprError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut pos = 0;
    while pos < src.len() {
        let c = src[pos..].chars().next().expect("pos is on a char boundary");
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        let start = pos;
        let token = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '[' => Token::LBracket,
            ']' => Token::RBracket,
            ',' => Token::Comma,
            '0'..='9' => {
                while pos < src.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let n: BigInt = src[start..pos].parse().expect("ascii digits");
                out.push(Spanned {
                    token: Token::Int(n),
                    span: Span::new(start, pos),
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while pos < src.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                let word = &src[start..pos];
                let span = Span::new(start, pos);
                let token = match word {
                    "x" => Token::X,
                    "p" => Token::P,
                    "i" => Token::I,
                    "hbar" => Token::Hbar,
                    other => {
                        if let Err(e) = crate::scalar::validate_param_name(other) {
                            return Err(ExprError::new(ExprErrorKind::Algebra(e), span, src));
                        }
                        Token::Ident(other.to_string())
                    }
                };
                out.push(Spanned { token, span });
                continue;
            }
            other => {
                let span = Span::new(start, start + other.len_utf8());
                return Err(ExprError::new(
                    ExprErrorKind::UnexpectedChar(other),
                    span,
                    src,
                ));
            }
        };
        pos += c.len_utf8();
        out.push(Spanned {
            token,
            span: Span::new(start, pos),
        });
    }
    out.push(Spanned {
        token: Token::Eof,
        span: Span::new(src.len(), src.len()),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keywords_and_identifiers() {
        let toks: Vec<_> = tokenize("x*hbar + omega_2").unwrap().into_iter().map(|t| t.token).collect();
        assert_eq!(
            toks,
            vec![
                Token::X,
                Token::Star,
                Token::Hbar,
                Token::Plus,
                Token::Ident("omega_2".into()),
                Token::Eof
            ]
        );
    }

    #[test]
    fn reserved_identifiers_fail() {
        for src in ["t", "2*Hbar", "HBAR"] {
            let err = tokenize(src).unwrap_err();
            assert!(matches!(
                err.kind,
                ExprErrorKind::Algebra(crate::error::AlgebraError::ReservedName(_))
            ));
        }
    }

    #[test]
    fn stray_character() {
        let err = tokenize("x $ p").unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
    }
}
