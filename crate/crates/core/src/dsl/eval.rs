use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;

use super::ast::{BinOp, Expr, ExprKind, Program};
use super::parser::{parse_expr, parse_program};
use super::{DslError, Span};
use crate::algebra::RingElement;
use crate::bundle::{self, BundleClass};
use crate::chow::ChowContext;

/// Upper bound on integer arguments of `Symm`, `jet`, `chern` and `segre`.
pub const MAX_INDEX: u32 = 64;

const CONSTANTS: [&str; 5] = ["omega", "h", "d", "c1", "c2"];
const FUNCTIONS: [&str; 12] = [
    "o", "dual", "Symm", "wedge2", "jet", "chern", "ctotal", "segre", "stotal", "rank", "integral",
    "twist",
];

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    /// Weight-0 element: a number or a polynomial in `d` and Chern numbers.
    Scalar(RingElement),
    /// Element of positive weight in the Chow ring.
    Class(RingElement),
    Bundle(BundleClass),
}

impl Value {
    pub fn ring(x: RingElement) -> Self {
        if x.is_scalar() {
            Value::Scalar(x)
        } else {
            Value::Class(x)
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Class(_) => "class",
            Value::Bundle(_) => "bundle",
        }
    }

    pub fn as_ring(&self) -> Option<&RingElement> {
        match self {
            Value::Scalar(x) | Value::Class(x) => Some(x),
            Value::Bundle(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(x) | Value::Class(x) => write!(f, "{x}"),
            Value::Bundle(b) => write!(f, "{b}"),
        }
    }
}

/// Bindings in assignment order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Env {
    values: BTreeMap<String, Value>,
    order: Vec<String>,
}

impl Env {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn bind(&mut self, name: &str, v: Value) {
        if self.values.insert(name.to_string(), v).is_none() {
            self.order.push(name.to_string());
        }
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProgramOutput {
    pub env: Env,
    pub result: Option<Value>,
    pub last_binding: Option<String>,
}

impl ProgramOutput {
    /// The final expression, or the most recently assigned binding.
    pub fn shown(&self) -> Option<&Value> {
        self.result
            .as_ref()
            .or_else(|| self.last_binding.as_ref().and_then(|n| self.env.get(n)))
    }
}

struct Evaluator<'a> {
    ctx: &'a ChowContext,
    env: &'a Env,
}

fn eval_err(e: impl fmt::Display, span: Span) -> DslError {
    DslError::eval(e.to_string(), span)
}

impl Evaluator<'_> {
    fn eval(&self, e: &Expr) -> Result<Value, DslError> {
        match &e.kind {
            ExprKind::Number(q) => Ok(Value::Scalar(RingElement::constant(q.clone()))),
            ExprKind::Ident(name) => self.ident(name, e.span),
            ExprKind::Neg(inner) => match self.eval(inner)? {
                Value::Bundle(_) => Err(DslError::eval("cannot negate a bundle", e.span)),
                v => Ok(Value::ring(-v.as_ring().expect("ring value"))),
            },
            ExprKind::Binary { op, lhs, rhs } => {
                let (l, r) = (self.eval(lhs)?, self.eval(rhs)?);
                self.binary(*op, l, r, e.span)
            }
            ExprKind::Call {
                name,
                name_span,
                args,
            } => self.call(name, *name_span, args, e.span),
        }
    }

    fn ident(&self, name: &str, span: Span) -> Result<Value, DslError> {
        if let Some(v) = self.env.get(name) {
            return Ok(v.clone());
        }
        match name {
            "omega" => Ok(Value::Bundle(bundle::cotangent(self.ctx))),
            "h" | "d" | "c1" | "c2" => match self.ctx.lookup(name) {
                Some(x) => Ok(Value::ring(x)),
                None => Err(DslError::eval(
                    format!("'{name}' is only defined on a general surface"),
                    span,
                )),
            },
            _ if FUNCTIONS.contains(&name) => Err(DslError::eval(
                format!("'{name}' is a function and needs arguments"),
                span,
            )),
            _ => Err(DslError::eval(format!("unknown identifier '{name}'"), span)),
        }
    }

    fn binary(&self, op: BinOp, l: Value, r: Value, span: Span) -> Result<Value, DslError> {
        match (&l, &r) {
            (Value::Bundle(a), Value::Bundle(b)) => match op {
                BinOp::Add => bundle::whitney(a, b)
                    .map(Value::Bundle)
                    .map_err(|e| eval_err(e, span)),
                BinOp::Mul => bundle::tensor(a, b, self.ctx)
                    .map(Value::Bundle)
                    .map_err(|e| eval_err(e, span)),
                BinOp::Sub => Err(DslError::eval("cannot subtract bundles", span)),
            },
            (Value::Bundle(_), _) | (_, Value::Bundle(_)) => Err(DslError::eval(
                format!(
                    "cannot apply '{}' to {} and {}",
                    op.symbol(),
                    l.type_name(),
                    r.type_name()
                ),
                span,
            )),
            _ => {
                let (a, b) = (l.as_ring().expect("ring"), r.as_ring().expect("ring"));
                let out = match op {
                    BinOp::Add => a.try_add(b),
                    BinOp::Sub => a.try_sub(b),
                    BinOp::Mul => a.try_mul(b),
                };
                out.map(Value::ring).map_err(|e| eval_err(e, span))
            }
        }
    }

    fn call(
        &self,
        name: &str,
        name_span: Span,
        args: &[Expr],
        span: Span,
    ) -> Result<Value, DslError> {
        let arity = match name {
            "Symm" | "jet" | "chern" | "segre" | "twist" => 2,
            _ if FUNCTIONS.contains(&name) => 1,
            _ => {
                return Err(DslError::eval(
                    format!("unknown function '{name}'"),
                    name_span,
                ))
            }
        };
        if args.len() != arity {
            return Err(DslError::eval(
                format!(
                    "'{name}' takes {arity} argument{}, got {}",
                    if arity == 1 { "" } else { "s" },
                    args.len()
                ),
                span,
            ));
        }
        let vals = args
            .iter()
            .map(|a| self.eval(a))
            .collect::<Result<Vec<_>, _>>()?;
        let err = |e: bundle::BundleError| eval_err(e, span);
        let ctx = self.ctx;
        Ok(match name {
            "o" => Value::Bundle(bundle::line(self.ring_arg(&vals[0], &args[0])?).map_err(err)?),
            "dual" => Value::Bundle(bundle::dual(self.bundle_arg(&vals[0], &args[0])?)),
            "wedge2" => {
                Value::Bundle(bundle::wedge2(self.bundle_arg(&vals[0], &args[0])?).map_err(err)?)
            }
            "ctotal" => Value::ring(self.bundle_arg(&vals[0], &args[0])?.chern().clone()),
            "stotal" => {
                Value::ring(bundle::segre(self.bundle_arg(&vals[0], &args[0])?).map_err(err)?)
            }
            "rank" => Value::Scalar(RingElement::from_i64(
                self.bundle_arg(&vals[0], &args[0])?.rank() as i64,
            )),
            "integral" => {
                let x = self.ring_arg(&vals[0], &args[0])?;
                Value::ring(ctx.integrate(x).map_err(|e| eval_err(e, span))?)
            }
            "Symm" => {
                let n = self.index_arg(&vals[0], &args[0])?;
                Value::Bundle(
                    bundle::sym(n as usize, self.bundle_arg(&vals[1], &args[1])?, ctx)
                        .map_err(err)?,
                )
            }
            "jet" => {
                let n = self.index_arg(&vals[0], &args[0])?;
                Value::Bundle(
                    bundle::jet(n as usize, self.bundle_arg(&vals[1], &args[1])?, ctx)
                        .map_err(err)?,
                )
            }
            "chern" => {
                let i = self.index_arg(&vals[0], &args[0])?;
                Value::ring(self.bundle_arg(&vals[1], &args[1])?.chern_class(i))
            }
            "segre" => {
                let i = self.index_arg(&vals[0], &args[0])?;
                Value::ring(
                    bundle::segre(self.bundle_arg(&vals[1], &args[1])?)
                        .map_err(err)?
                        .part(i),
                )
            }
            "twist" => {
                let b = self.bundle_arg(&vals[0], &args[0])?;
                let l = bundle::line(self.ring_arg(&vals[1], &args[1])?).map_err(err)?;
                Value::Bundle(bundle::twist(b, &l).map_err(err)?)
            }
            _ => unreachable!("arity table covers every function"),
        })
    }

    fn ring_arg<'v>(&self, v: &'v Value, e: &Expr) -> Result<&'v RingElement, DslError> {
        v.as_ring().ok_or_else(|| {
            DslError::eval(
                format!("expected a scalar or class, got {}", v.type_name()),
                e.span,
            )
        })
    }

    fn bundle_arg<'v>(&self, v: &'v Value, e: &Expr) -> Result<&'v BundleClass, DslError> {
        match v {
            Value::Bundle(b) => Ok(b),
            other => Err(DslError::eval(
                format!("expected a bundle, got {}", other.type_name()),
                e.span,
            )),
        }
    }

    fn index_arg(&self, v: &Value, e: &Expr) -> Result<u32, DslError> {
        let n = match v {
            Value::Scalar(x) => x
                .as_rational()
                .filter(|q| q.is_integer())
                .and_then(|q| q.to_integer().to_i64()),
            _ => None,
        };
        match n {
            Some(n) if (0..=MAX_INDEX as i64).contains(&n) => Ok(n as u32),
            _ => Err(DslError::eval(
                format!("expected an integer between 0 and {MAX_INDEX}, got {v}"),
                e.span,
            )),
        }
    }
}

/// Evaluates one expression against the builtins and `env`.
pub fn eval_expr(e: &Expr, env: &Env, ctx: &ChowContext) -> Result<Value, DslError> {
    Evaluator { ctx, env }.eval(e)
}

/// Runs every statement in order, then the final expression if present.
pub fn run_program(p: &Program, ctx: &ChowContext) -> Result<ProgramOutput, DslError> {
    let mut env = Env::default();
    let mut last_binding = None;
    for s in &p.stmts {
        if CONSTANTS.contains(&s.name.as_str()) || FUNCTIONS.contains(&s.name.as_str()) {
            return Err(DslError::eval(
                format!("cannot rebind builtin '{}'", s.name),
                s.name_span,
            ));
        }
        let v = eval_expr(&s.value, &env, ctx)?;
        env.bind(&s.name, v);
        last_binding = Some(s.name.clone());
    }
    let result = p
        .result
        .as_ref()
        .map(|e| eval_expr(e, &env, ctx))
        .transpose()?;
    Ok(ProgramOutput {
        env,
        result,
        last_binding,
    })
}

pub fn run_source(src: &str, ctx: &ChowContext) -> Result<ProgramOutput, DslError> {
    run_program(&parse_program(src)?, ctx)
}

pub fn eval_source(src: &str, ctx: &ChowContext) -> Result<Value, DslError> {
    eval_expr(&parse_expr(src)?, &Env::default(), ctx)
}
