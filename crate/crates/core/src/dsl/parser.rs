use super::ast::{BinOp, Expr, ExprKind, Program, Stmt};
use super::lexer::{tokenize, Token, TokenKind};
use super::{DslError, Span};

const EXPR_START: &str = "number, identifier, '(' or '-'";

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, n: usize) -> &TokenKind {
        &self.tokens[(self.pos + n).min(self.tokens.len() - 1)].kind
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> DslError {
        let t = self.peek();
        DslError::parse(
            format!("expected {wanted}, found {}", t.kind.describe()),
            t.span,
        )
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, DslError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&format!("'{kind}'")))
        }
    }

    fn program(&mut self) -> Result<Program, DslError> {
        let mut prog = Program::default();
        loop {
            if self.peek().kind == TokenKind::Eof {
                return Ok(prog);
            }
            if let (TokenKind::Ident(name), TokenKind::Assign) =
                (&self.peek().kind, self.peek_at(1))
            {
                let name = name.clone();
                let name_span = self.bump().span;
                self.bump();
                let value = self.expr()?;
                self.expect(TokenKind::Semi)?;
                prog.stmts.push(Stmt {
                    name,
                    name_span,
                    value,
                });
                continue;
            }
            let e = self.expr()?;
            if self.peek().kind == TokenKind::Semi {
                self.bump();
            }
            if self.peek().kind != TokenKind::Eof {
                return Err(self.unexpected("end of input after the final expression"));
            }
            prog.result = Some(e);
            return Ok(prog);
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => BinOp::Add,
                TokenKind::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(
                ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span,
            );
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.bump();
                }
                TokenKind::Slash => {
                    return Err(DslError::parse(
                        "division is only allowed inside a rational literal such as 1/2",
                        self.peek().span,
                    ))
                }
                _ => return Ok(lhs),
            }
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(
                ExprKind::Binary {
                    op: BinOp::Mul,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span,
            );
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if self.peek().kind == TokenKind::Minus {
            let start = self.bump().span;
            let inner = self.unary()?;
            let span = start.join(inner.span);
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Number(q) => {
                self.bump();
                Ok(Expr::new(ExprKind::Number(q), t.span))
            }
            TokenKind::Ident(name) => {
                self.bump();
                if self.peek().kind != TokenKind::LParen {
                    return Ok(Expr::new(ExprKind::Ident(name), t.span));
                }
                self.bump();
                let mut args = Vec::new();
                if self.peek().kind != TokenKind::RParen {
                    loop {
                        args.push(self.expr()?);
                        match self.peek().kind {
                            TokenKind::Comma => {
                                self.bump();
                            }
                            TokenKind::RParen => break,
                            _ => return Err(self.unexpected("',' or ')'")),
                        }
                    }
                }
                let close = self.expect(TokenKind::RParen)?;
                Ok(Expr::new(
                    ExprKind::Call {
                        name,
                        name_span: t.span,
                        args,
                    },
                    t.span.join(close.span),
                ))
            }
            TokenKind::LParen => {
                self.bump();
                let mut inner = self.expr()?;
                let close = self.expect(TokenKind::RParen)?;
                inner.span = t.span.join(close.span);
                Ok(inner)
            }
            _ => Err(self.unexpected(EXPR_START)),
        }
    }
}

/// Parses a whole script: assignments followed by an optional final expression.
pub fn parse_program(src: &str) -> Result<Program, DslError> {
    Parser {
        tokens: tokenize(src)?,
        pos: 0,
    }
    .program()
}

/// Parses exactly one expression.
pub fn parse_expr(src: &str) -> Result<Expr, DslError> {
    let mut p = Parser {
        tokens: tokenize(src)?,
        pos: 0,
    };
    if p.peek().kind == TokenKind::Eof {
        return Err(DslError::parse("empty expression", Span::new(0, src.len())));
    }
    let e = p.expr()?;
    if p.peek().kind != TokenKind::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(e)
}
