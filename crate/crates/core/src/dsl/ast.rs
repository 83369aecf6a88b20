use std::fmt;

use super::Span;
use crate::algebra::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Number(Rational),
    Ident(String),
    Call {
        name: String,
        name_span: Span,
        args: Vec<Expr>,
    },
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Neg(Box<Expr>),
}

/// An expression node. Equality compares structure only, never spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (
                ExprKind::Call {
                    name: a, args: x, ..
                },
                ExprKind::Call {
                    name: b, args: y, ..
                },
            ) => a == b && x == y,
            (a, b) => a == b,
        }
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary {
                op: BinOp::Add | BinOp::Sub,
                ..
            } => 1,
            ExprKind::Binary { op: BinOp::Mul, .. } => 2,
            ExprKind::Neg(_) => 3,
            _ => 4,
        }
    }
}

/// Canonical printer: minimal parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match &self.kind {
            ExprKind::Number(q) => write!(f, "{q}"),
            ExprKind::Ident(s) => f.write_str(s),
            ExprKind::Call { name, args, .. } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let p = self.precedence();
                wrap(f, lhs, p)?;
                write!(f, " {} ", op.symbol())?;
                // left-associative: a right operand at the same level needs parens
                wrap(f, rhs, p + 1)
            }
            ExprKind::Neg(inner) => {
                f.write_str("-")?;
                wrap(f, inner, 3)
            }
        }
    }
}

/// `name := value;`. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Stmt {
    pub name: String,
    pub name_span: Span,
    pub value: Expr,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.value == other.value
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Program {
    pub stmts: Vec<Stmt>,
    pub result: Option<Expr>,
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{} := {};", s.name, s.value)?;
        }
        if let Some(e) = &self.result {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}
