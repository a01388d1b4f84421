//! Free trace-algebra expressions and their evaluation on matrix tuples.
//!
//! Expressions are trees over variables x1..xm, scalars, products, sums,
//! and trace nodes whose values are scalar factors. The s-expression
//! syntax is `(mul (tr (mul x1 x2)) x1)`, with `(add ...)`, `(sub a b)`,
//! `(neg a)` and rational literals like `3` or `-1/2`.

use crate::arith::{Scalar, ScalarTag};
use crate::error::{Error, Result};
use crate::linalg::ScalarMatrix;

/// Node of a free trace expression.
#[derive(Clone, Debug)]
pub enum TraceExpr {
    /// 1-based variable index.
    Var(usize),
    Const(Scalar),
    Product(Vec<TraceExpr>),
    Sum(Vec<TraceExpr>),
    Neg(Box<TraceExpr>),
    Trace(Box<TraceExpr>),
    /// A fixed matrix injected verbatim; not expressible in the trace
    /// language and deliberately non-equivariant (negative testing).
    ConstMatrix(ScalarMatrix),
}

/// Tuple of m square matrices of uniform size and scalar tag.
#[derive(Clone, Debug)]
pub struct MatrixTuple {
    pub matrices: Vec<ScalarMatrix>,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<ScalarMatrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::InvalidInput("tuple must contain a matrix".into()));
        }
        let n = matrices[0].n;
        if matrices.iter().any(|m| m.n != n) {
            return Err(Error::InvalidInput(
                "tuple matrices must share a size".into(),
            ));
        }
        let mut tag = ScalarTag::Rat;
        for m in &matrices {
            for e in &m.entries {
                tag = Scalar::join_tag(tag, e.tag())?;
            }
        }
        Ok(MatrixTuple { matrices })
    }

    pub fn size(&self) -> usize {
        self.matrices[0].n
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

/// Result of evaluating an expression: a scalar (from trace nodes and
/// constants) or a matrix.
#[derive(Clone, Debug)]
pub enum Value {
    Scalar(Scalar),
    Matrix(ScalarMatrix),
}

impl Value {
    pub fn into_matrix(self, n: usize) -> ScalarMatrix {
        match self {
            Value::Matrix(m) => m,
            Value::Scalar(s) => ScalarMatrix::identity(n).scale(&s),
        }
    }

    fn mul(self, other: Value) -> Value {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a * &b),
            (Value::Scalar(a), Value::Matrix(m)) | (Value::Matrix(m), Value::Scalar(a)) => {
                Value::Matrix(m.scale(&a))
            }
            (Value::Matrix(a), Value::Matrix(b)) => Value::Matrix(a.matmul(&b)),
        }
    }

    fn add(self, other: Value, n: usize) -> Value {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a + &b),
            (a, b) => Value::Matrix(a.into_matrix(n).add(&b.into_matrix(n))),
        }
    }
}

/// Evaluate an expression on a tuple; trace nodes use the ordinary
/// matrix trace (a scalar s counts as s·I, so tr(s) = s·n).
pub fn eval(expr: &TraceExpr, tuple: &MatrixTuple) -> Result<Value> {
    let n = tuple.size();
    match expr {
        TraceExpr::Var(i) => {
            if *i == 0 || *i > tuple.len() {
                return Err(Error::invalid_parameter(format!(
                    "variable x{i} out of range 1..{}",
                    tuple.len()
                )));
            }
            Ok(Value::Matrix(tuple.matrices[i - 1].clone()))
        }
        TraceExpr::Const(s) => Ok(Value::Scalar(s.clone())),
        TraceExpr::ConstMatrix(m) => {
            if m.n != n {
                return Err(Error::invalid_parameter(
                    "constant matrix size differs from tuple size",
                ));
            }
            Ok(Value::Matrix(m.clone()))
        }
        TraceExpr::Product(children) => {
            let mut acc = Value::Scalar(Scalar::one());
            for c in children {
                acc = acc.mul(eval(c, tuple)?);
            }
            Ok(acc)
        }
        TraceExpr::Sum(children) => {
            let mut acc = Value::Scalar(Scalar::zero());
            for c in children {
                acc = acc.add(eval(c, tuple)?, n);
            }
            Ok(acc)
        }
        TraceExpr::Neg(c) => Ok(match eval(c, tuple)? {
            Value::Scalar(s) => Value::Scalar(s.neg()),
            Value::Matrix(m) => Value::Matrix(m.neg()),
        }),
        TraceExpr::Trace(c) => {
            let v = eval(c, tuple)?;
            Ok(Value::Scalar(match v {
                Value::Matrix(m) => m.trace(),
                Value::Scalar(s) => &s * &Scalar::from_i64(n as i64),
            }))
        }
    }
}

// ---- s-expression parser ----

fn tokenize(input: &str) -> Vec<String> {
    input
        .replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(String::from)
        .collect()
}

fn parse_tokens(tokens: &[String], pos: &mut usize) -> Result<TraceExpr> {
    if *pos >= tokens.len() {
        return Err(Error::Parse("unexpected end of expression".into()));
    }
    let tok = &tokens[*pos];
    *pos += 1;
    if tok == "(" {
        let head = tokens
            .get(*pos)
            .ok_or_else(|| Error::Parse("empty list".into()))?
            .clone();
        *pos += 1;
        let mut children = Vec::new();
        while *pos < tokens.len() && tokens[*pos] != ")" {
            children.push(parse_tokens(tokens, pos)?);
        }
        if *pos >= tokens.len() {
            return Err(Error::Parse("missing closing parenthesis".into()));
        }
        *pos += 1; // consume ")"
        match head.as_str() {
            "mul" => Ok(TraceExpr::Product(children)),
            "add" => Ok(TraceExpr::Sum(children)),
            "sub" => {
                if children.len() != 2 {
                    return Err(Error::Parse("(sub a b) takes two arguments".into()));
                }
                let mut it = children.into_iter();
                let a = it.next().unwrap();
                let b = it.next().unwrap();
                Ok(TraceExpr::Sum(vec![a, TraceExpr::Neg(Box::new(b))]))
            }
            "neg" => {
                if children.len() != 1 {
                    return Err(Error::Parse("(neg a) takes one argument".into()));
                }
                Ok(TraceExpr::Neg(Box::new(
                    children.into_iter().next().unwrap(),
                )))
            }
            "tr" => {
                if children.len() != 1 {
                    return Err(Error::Parse("(tr a) takes one argument".into()));
                }
                Ok(TraceExpr::Trace(Box::new(
                    children.into_iter().next().unwrap(),
                )))
            }
            other => Err(Error::Parse(format!("unknown operator {other:?}"))),
        }
    } else if tok == ")" {
        Err(Error::Parse("unexpected closing parenthesis".into()))
    } else if let Some(idx) = tok.strip_prefix('x') {
        let i: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable {tok:?}")))?;
        Ok(TraceExpr::Var(i))
    } else {
        // rational literal p or p/q
        let s = if let Some((p, q)) = tok.split_once('/') {
            let p: i64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad literal {tok:?}")))?;
            let q: i64 = q
                .parse()
                .map_err(|_| Error::Parse(format!("bad literal {tok:?}")))?;
            Scalar::from_rat(p, q)
        } else {
            let p: i64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad literal {tok:?}")))?;
            Scalar::from_i64(p)
        };
        Ok(TraceExpr::Const(s))
    }
}

/// Parse the s-expression syntax, e.g. `(mul (tr (mul x1 x2)) x1)`.
pub fn parse_expr(input: &str) -> Result<TraceExpr> {
    let tokens = tokenize(input);
    let mut pos = 0;
    let expr = parse_tokens(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse("trailing tokens after expression".into()));
    }
    Ok(expr)
}
