use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{DslError, Span};
use crate::algebra::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    /// `INT` or `INT/INT`; the slash form is folded here so `2/3` is a single
    /// rational literal.
    Number(Rational),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    Assign,
    Semi,
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("identifier '{s}'"),
            TokenKind::Number(q) => format!("number {q}"),
            TokenKind::Eof => "end of input".into(),
            other => format!("'{other}'"),
        }
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => f.write_str(s),
            TokenKind::Number(q) => write!(f, "{q}"),
            TokenKind::Plus => f.write_str("+"),
            TokenKind::Minus => f.write_str("-"),
            TokenKind::Star => f.write_str("*"),
            TokenKind::Slash => f.write_str("/"),
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::Comma => f.write_str(","),
            TokenKind::Assign => f.write_str(":="),
            TokenKind::Semi => f.write_str(";"),
            TokenKind::Eof => f.write_str("<eof>"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

/// Splits source text into tokens, skipping whitespace and `#` comments.
/// The returned list always ends with [`TokenKind::Eof`].
pub fn tokenize(src: &str) -> Result<Vec<Token>, DslError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = |kind| Token {
            kind,
            span: Span::new(start, start + 1),
        };
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'+' => {
                out.push(single(TokenKind::Plus));
                i += 1;
            }
            b'-' => {
                out.push(single(TokenKind::Minus));
                i += 1;
            }
            b'*' => {
                out.push(single(TokenKind::Star));
                i += 1;
            }
            b'/' => {
                out.push(single(TokenKind::Slash));
                i += 1;
            }
            b'(' => {
                out.push(single(TokenKind::LParen));
                i += 1;
            }
            b')' => {
                out.push(single(TokenKind::RParen));
                i += 1;
            }
            b',' => {
                out.push(single(TokenKind::Comma));
                i += 1;
            }
            b';' => {
                out.push(single(TokenKind::Semi));
                i += 1;
            }
            b':' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    out.push(Token {
                        kind: TokenKind::Assign,
                        span: Span::new(i, i + 2),
                    });
                    i += 2;
                } else {
                    return Err(DslError::lex(
                        "expected ':=' after ':'",
                        Span::new(i, i + 1),
                    ));
                }
            }
            b'0'..=b'9' => {
                let num_end = scan_digits(bytes, i);
                let num = parse_int(&src[i..num_end]);
                // INT '/' INT with no spaces is a rational literal
                let folded = (bytes.get(num_end) == Some(&b'/')
                    && bytes.get(num_end + 1).is_some_and(u8::is_ascii_digit))
                .then(|| scan_digits(bytes, num_end + 1));
                match folded {
                    Some(den_end) => {
                        let den = parse_int(&src[num_end + 1..den_end]);
                        if den.is_zero() {
                            return Err(DslError::lex(
                                "zero denominator in rational literal",
                                Span::new(i, den_end),
                            ));
                        }
                        out.push(Token {
                            kind: TokenKind::Number(Rational::new(num, den)),
                            span: Span::new(i, den_end),
                        });
                        i = den_end;
                    }
                    None => {
                        out.push(Token {
                            kind: TokenKind::Number(Rational::from_integer(num)),
                            span: Span::new(i, num_end),
                        });
                        i = num_end;
                    }
                }
            }
            c if c == b'_' || c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i] == b'_' || bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                out.push(Token {
                    kind: TokenKind::Ident(src[start..i].to_string()),
                    span: Span::new(start, i),
                });
            }
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                let end = i + ch.len_utf8();
                return Err(DslError::lex(
                    format!("illegal character '{ch}'"),
                    Span::new(i, end),
                ));
            }
        }
    }
    out.push(Token {
        kind: TokenKind::Eof,
        span: Span::new(src.len(), src.len()),
    });
    Ok(out)
}

fn scan_digits(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    i
}

fn parse_int(s: &str) -> BigInt {
    s.parse().expect("ascii digits")
}
