//! Scalar expressions over the four chart coordinates.
//!
//! Grammar (precedence low to high):
//!
//! ```text
//! expr    := term { ("+" | "-") term }
//! term    := unary { ("*" | "/") unary }
//! unary   := "-" unary | power
//! power   := primary [ "^" unary ]          (right associative)
//! primary := NUMBER | "pi" | IDENT | IDENT "(" expr ")" | "(" expr ")"
//! ```
//!
//! so `-t^2` is `-(t^2)` and `2^-1` is `2^(-1)`. There is no implicit
//! multiplication: `2x` is a syntax error.

use std::fmt;
use std::sync::Arc;

use crate::error::{MathError, ParseError};
use crate::jet::Jet2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Atan,
}

impl Func {
    const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Num(f64),
    Pi,
    Coord(usize),
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

/// Ordered coordinate names of a chart.
pub type CoordNames = Arc<[String; 4]>;

/// A parsed expression together with the coordinate names it was parsed
/// against.
#[derive(Clone, Debug)]
pub struct ScalarExpr {
    root: Node,
    names: CoordNames,
}

impl PartialEq for ScalarExpr {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
    }
}

/// `true` for names the grammar claims for itself (`pi` and functions).
pub fn is_reserved(name: &str) -> bool {
    name == "pi" || Func::from_name(name).is_some()
}

pub fn default_names() -> CoordNames {
    Arc::new(["t", "x", "y", "z"].map(String::from))
}

impl ScalarExpr {
    pub fn parse(src: &str, names: &CoordNames) -> Result<ScalarExpr, ParseError> {
        let root = Parser::new(src, names).parse()?;
        Ok(ScalarExpr {
            root,
            names: names.clone(),
        })
    }

    pub fn constant(v: f64, names: &CoordNames) -> ScalarExpr {
        let root = if v < 0.0 {
            Node::Neg(Box::new(Node::Num(-v)))
        } else {
            Node::Num(v)
        };
        ScalarExpr {
            root,
            names: names.clone(),
        }
    }

    pub fn zero(names: &CoordNames) -> ScalarExpr {
        Self::constant(0.0, names)
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn names(&self) -> &CoordNames {
        &self.names
    }

    /// `true` for a literal zero (possibly negated).
    pub fn is_zero_literal(&self) -> bool {
        match &self.root {
            Node::Num(v) => *v == 0.0,
            Node::Neg(inner) => matches!(**inner, Node::Num(v) if v == 0.0),
            _ => false,
        }
    }

    fn combine(op: BinOp, a: &ScalarExpr, b: &ScalarExpr) -> ScalarExpr {
        ScalarExpr {
            root: Node::Bin(op, Box::new(a.root.clone()), Box::new(b.root.clone())),
            names: a.names.clone(),
        }
    }

    pub fn add(&self, other: &ScalarExpr) -> ScalarExpr {
        Self::combine(BinOp::Add, self, other)
    }

    pub fn mul(&self, other: &ScalarExpr) -> ScalarExpr {
        Self::combine(BinOp::Mul, self, other)
    }

    /// `c * self`, dropping the product when `c == 1`.
    pub fn scaled(&self, c: f64) -> ScalarExpr {
        if c == 1.0 {
            return self.clone();
        }
        Self::constant(c, &self.names).mul(self)
    }

    /// `Σ c_i e_i`, skipping zero coefficients; an empty sum is `0`.
    pub fn linear_combination(terms: &[(f64, &ScalarExpr)], names: &CoordNames) -> ScalarExpr {
        let mut acc: Option<ScalarExpr> = None;
        for &(c, e) in terms {
            if c == 0.0 || e.is_zero_literal() {
                continue;
            }
            let term = e.scaled(c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.unwrap_or_else(|| Self::zero(names))
    }

    /// Value, gradient and Hessian at `p`.
    pub fn eval_jet(&self, p: &[f64; 4]) -> Result<Jet2, MathError> {
        let vars = [0, 1, 2, 3].map(|i| Jet2::variable(i, p[i]));
        eval_node(&self.root, &vars, &self.names)
    }

    /// Plain value at `p`.
    pub fn eval(&self, p: &[f64; 4]) -> Result<f64, MathError> {
        self.eval_jet(p).map(|j| j.value)
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, &self.root, &self.names)
    }
}

fn write_node(f: &mut fmt::Formatter<'_>, n: &Node, names: &[String; 4]) -> fmt::Result {
    match n {
        Node::Num(v) => write!(f, "{v:?}"),
        Node::Pi => f.write_str("pi"),
        Node::Coord(i) => f.write_str(&names[*i]),
        Node::Neg(a) => {
            f.write_str("(-")?;
            write_node(f, a, names)?;
            f.write_str(")")
        }
        Node::Bin(op, a, b) => {
            f.write_str("(")?;
            write_node(f, a, names)?;
            write!(f, " {} ", op.symbol())?;
            write_node(f, b, names)?;
            f.write_str(")")
        }
        Node::Call(func, a) => {
            write!(f, "{}(", func.name())?;
            write_node(f, a, names)?;
            f.write_str(")")
        }
    }
}

struct NodeDisplay<'a>(&'a Node, &'a [String; 4]);

impl fmt::Display for NodeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, self.0, self.1)
    }
}

fn domain(node: &Node, names: &[String; 4], message: impl Into<String>) -> MathError {
    MathError::Eval {
        node: NodeDisplay(node, names).to_string(),
        message: message.into(),
    }
}

fn eval_node(n: &Node, vars: &[Jet2; 4], names: &[String; 4]) -> Result<Jet2, MathError> {
    let out = match n {
        Node::Num(v) => Jet2::constant(*v),
        Node::Pi => Jet2::constant(std::f64::consts::PI),
        Node::Coord(i) => vars[*i],
        Node::Neg(a) => -eval_node(a, vars, names)?,
        Node::Bin(op, a, b) => {
            let x = eval_node(a, vars, names)?;
            let y = eval_node(b, vars, names)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y.value == 0.0 {
                        return Err(domain(n, names, "division by zero"));
                    }
                    x / y
                }
                BinOp::Pow => power(n, x, y, names)?,
            }
        }
        Node::Call(func, a) => {
            let x = eval_node(a, vars, names)?;
            match func {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => x.tan(),
                Func::Sinh => x.sinh(),
                Func::Cosh => x.cosh(),
                Func::Tanh => x.tanh(),
                Func::Exp => x.exp(),
                Func::Atan => x.atan(),
                Func::Log => {
                    if x.value <= 0.0 {
                        return Err(domain(n, names, format!("log of {}", x.value)));
                    }
                    x.ln()
                }
                Func::Sqrt => {
                    if x.value <= 0.0 {
                        return Err(domain(n, names, format!("sqrt of {}", x.value)));
                    }
                    x.sqrt()
                }
            }
        }
    };
    if !out.is_finite() {
        return Err(domain(n, names, "non-finite result"));
    }
    Ok(out)
}

fn power(n: &Node, base: Jet2, exponent: Jet2, names: &[String; 4]) -> Result<Jet2, MathError> {
    let e = exponent.value;
    if exponent.is_constant() && e.fract() == 0.0 && e.abs() <= 1024.0 {
        if e < 0.0 && base.value == 0.0 {
            return Err(domain(n, names, "zero raised to a negative power"));
        }
        return Ok(base.powi(e as i64));
    }
    if base.value <= 0.0 {
        return Err(domain(
            n,
            names,
            format!("non-integer power of non-positive base {}", base.value),
        ));
    }
    Ok((exponent * base.ln()).exp())
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

struct Parser<'a> {
    src: &'a str,
    names: &'a [String; 4],
    pos: usize,
    tok: Tok,
    tok_start: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, names: &'a [String; 4]) -> Self {
        Parser {
            src,
            names,
            pos: 0,
            tok: Tok::End,
            tok_start: 0,
        }
    }

    fn err(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            offset,
            message: message.into(),
        }
    }

    fn advance(&mut self) -> Result<(), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_start = self.pos;
        if self.pos >= bytes.len() {
            self.tok = Tok::End;
            return Ok(());
        }
        let c = bytes[self.pos];
        if c.is_ascii_digit() || c == b'.' {
            let start = self.pos;
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_digit() || bytes[self.pos] == b'.') {
                self.pos += 1;
            }
            if self.pos < bytes.len() && (bytes[self.pos] == b'e' || bytes[self.pos] == b'E') {
                let save = self.pos;
                self.pos += 1;
                if self.pos < bytes.len() && (bytes[self.pos] == b'+' || bytes[self.pos] == b'-') {
                    self.pos += 1;
                }
                if self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                    while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                } else {
                    // `2e` followed by no digits: leave the `e` for the next token
                    self.pos = save;
                }
            }
            let text = &self.src[start..self.pos];
            let v: f64 = text
                .parse()
                .map_err(|_| self.err(start, format!("malformed number `{text}`")))?;
            self.tok = Tok::Num(v);
            return Ok(());
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            self.tok = Tok::Ident(self.src[start..self.pos].to_string());
            return Ok(());
        }
        self.pos += 1;
        self.tok = match c {
            b'+' | b'-' | b'*' | b'/' | b'^' => Tok::Op(c as char),
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = self.src[self.tok_start..].chars().next().unwrap_or('?');
                return Err(self.err(self.tok_start, format!("unexpected character `{ch}`")));
            }
        };
        Ok(())
    }

    fn parse(mut self) -> Result<Node, ParseError> {
        if self.src.trim().is_empty() {
            return Err(self.err(0, "empty expression"));
        }
        self.advance()?;
        let n = self.expr()?;
        if self.tok != Tok::End {
            return Err(self.err(self.tok_start, format!("unexpected {}", self.describe())));
        }
        Ok(n)
    }

    fn describe(&self) -> String {
        match &self.tok {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = self.tok {
            self.advance()?;
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = self.tok {
            self.advance()?;
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.tok == Tok::Op('-') {
            self.advance()?;
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        if self.tok == Tok::Op('^') {
            self.advance()?;
            let exp = self.unary()?;
            return Ok(Node::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if self.tok != Tok::RParen {
            return Err(self.err(self.tok_start, format!("expected `)`, found {}", self.describe())));
        }
        self.advance()
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        match self.tok.clone() {
            Tok::Num(v) => {
                self.advance()?;
                Ok(Node::Num(v))
            }
            Tok::LParen => {
                self.advance()?;
                let n = self.expr()?;
                self.expect_rparen()?;
                Ok(n)
            }
            Tok::Ident(name) => {
                let start = self.tok_start;
                self.advance()?;
                if self.tok == Tok::LParen {
                    let func = Func::from_name(&name).ok_or_else(|| {
                        ParseError::UnknownIdentifier {
                            name: name.clone(),
                            offset: start,
                        }
                    })?;
                    self.advance()?;
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(Node::Call(func, Box::new(arg)));
                }
                if name == "pi" {
                    return Ok(Node::Pi);
                }
                if let Some(i) = self.names.iter().position(|n| *n == name) {
                    return Ok(Node::Coord(i));
                }
                if Func::from_name(&name).is_some() {
                    return Err(self.err(self.tok_start, format!("expected `(` after `{name}`")));
                }
                Err(ParseError::UnknownIdentifier { name, offset: start })
            }
            _ => Err(self.err(self.tok_start, format!("unexpected {}", self.describe()))),
        }
    }
}
