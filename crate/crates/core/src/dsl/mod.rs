//! A small expression language over the Chow ring and bundle calculus.
//!
//! ```text
//! program := stmt* expr? ;?
//! stmt    := IDENT ":=" expr ";"
//! expr    := term (("+" | "-") term)*
//! term    := unary ("*" unary)*
//! unary   := "-" unary | atom
//! atom    := NUMBER | IDENT | IDENT "(" args ")" | "(" expr ")"
//! ```

pub mod ast;
pub mod eval;
pub mod lexer;
pub mod parser;

use std::fmt;

use thiserror::Error;

pub use ast::{BinOp, Expr, ExprKind, Program, Stmt};
pub use eval::{eval_expr, eval_source, run_program, run_source, Env, ProgramOutput, Value};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse_expr, parse_program};

/// Half-open byte range into the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Lex,
    Parse,
    Eval,
}

impl ErrorKind {
    pub fn label(self) -> &'static str {
        match self {
            ErrorKind::Lex => "lex error",
            ErrorKind::Parse => "parse error",
            ErrorKind::Eval => "eval error",
        }
    }

    /// Process exit code: 1 for syntax errors, 2 for evaluation errors.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Lex | ErrorKind::Parse => 1,
            ErrorKind::Eval => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{} at {span}: {message}", kind.label())]
pub struct DslError {
    pub kind: ErrorKind,
    pub message: String,
    pub span: Span,
}

impl DslError {
    pub fn lex(message: impl Into<String>, span: Span) -> Self {
        DslError {
            kind: ErrorKind::Lex,
            message: message.into(),
            span,
        }
    }

    pub fn parse(message: impl Into<String>, span: Span) -> Self {
        DslError {
            kind: ErrorKind::Parse,
            message: message.into(),
            span,
        }
    }

    pub fn eval(message: impl Into<String>, span: Span) -> Self {
        DslError {
            kind: ErrorKind::Eval,
            message: message.into(),
            span,
        }
    }

    /// Renders the error with the offending source line and a caret marker.
    pub fn render(&self, src: &str) -> String {
        let start = self.span.start.min(src.len());
        let line_start = src[..start].rfind('\n').map_or(0, |i| i + 1);
        let line_end = src[start..].find('\n').map_or(src.len(), |i| start + i);
        let line_no = src[..line_start].matches('\n').count() + 1;
        let col = src[line_start..start].chars().count();
        let width = src
            .get(start..self.span.end.min(line_end))
            .map_or(1, |s| s.chars().count().max(1));
        format!(
            "{self}\n{line_no:>4} | {}\n     | {}{}",
            &src[line_start..line_end],
            " ".repeat(col),
            "^".repeat(width)
        )
    }
}
