//! Text DSL for polynomials and operators.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*' factor) | ('/' number))*
//! factor := atom ['^' int]
//! atom   := number | 'x'<int> | 'D[' slot ('|' slot)* ']' | '(' expr ')'
//! slot   := int (',' int)*
//! ```
//!
//! A product may contain at most one operator factor; everything else multiplies its
//! coefficient. `x1 * D[1,0|0,2]` with `m = 2` is `x1 · ∂₁ ⊗ ∂₂²`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, ParseError, Result};
use crate::multiop::{MultiDiffOp, SlotTuple};
use crate::poly::{MultiIndex, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    DOpen,
    RBracket,
    Comma,
    Bar,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Var(i) => format!("variable x{i}"),
            Tok::DOpen => "'D['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Bar => "'|'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, message: impl Into<String>, expected: &[&str]) -> Error {
    Error::Parse(ParseError {
        line: pos.line,
        column: pos.column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    })
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            column += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i),
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                column += i - start;
                out.push((Tok::Int(text.parse().unwrap()), pos));
            }
            'x' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(err(pos, "variable name needs an index", &["x<index>"]));
                }
                let text: String = chars[start..j].iter().collect();
                let idx: usize = text
                    .parse()
                    .map_err(|_| err(pos, "variable index too large", &[]))?;
                column += j - i;
                i = j;
                out.push((Tok::Var(idx), pos));
            }
            'D' => {
                let mut j = i + 1;
                while j < chars.len() && chars[j] == ' ' {
                    j += 1;
                }
                if j < chars.len() && chars[j] == '[' {
                    column += j + 1 - i;
                    i = j + 1;
                    out.push((Tok::DOpen, pos));
                } else {
                    return Err(err(pos, "'D' must be followed by '['", &["'D['"]));
                }
            }
            _ => {
                let t = match c {
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    '|' => Tok::Bar,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(err(
                            pos,
                            format!("unexpected character {other:?}"),
                            &["number", "variable", "'D['", "'('"],
                        ))
                    }
                };
                advance(1, &mut i);
                out.push((t, pos));
            }
        }
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Value {
    Poly(Polynomial),
    Op(MultiDiffOp),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    vars: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        err(
            self.pos(),
            format!("unexpected {}", self.peek().describe()),
            expected,
        )
    }

    fn expect(&mut self, t: Tok, name: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                u32::try_from(&n).map_err(|_| err(pos, format!("{what} out of range"), &[]))
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut negate = false;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = neg(acc);
        }
        loop {
            let pos = self.pos();
            let minus = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            let mut rhs = self.term()?;
            if minus {
                rhs = neg(rhs);
            }
            acc = add(acc, rhs, pos)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = mul(acc, rhs, pos)?;
                }
                Tok::Slash => {
                    self.bump();
                    let dpos = self.pos();
                    let d = match self.peek().clone() {
                        Tok::Int(n) => {
                            self.bump();
                            n
                        }
                        _ => return Err(self.unexpected(&["integer"])),
                    };
                    if d.is_zero() {
                        return Err(err(dpos, "division by zero", &[]));
                    }
                    let inv = Rational::new(BigInt::one(), d);
                    acc = match acc {
                        Value::Poly(p) => Value::Poly(p.scale(&inv)),
                        Value::Op(o) => Value::Op(o.scale(&inv)),
                    };
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let k = self.small_int("exponent")?;
        match base {
            Value::Poly(p) => {
                let mut acc = Polynomial::one(self.vars);
                for _ in 0..k {
                    acc = &acc * &p;
                }
                Ok(Value::Poly(acc))
            }
            Value::Op(_) => Err(err(pos, "operators cannot be raised to a power", &[])),
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let pos = self.pos();
        let tok = self.peek().clone();
        if !matches!(tok, Tok::Int(_) | Tok::Var(_) | Tok::DOpen | Tok::LParen) {
            return Err(self.unexpected(&["number", "variable", "'D['", "'('"]));
        }
        self.bump();
        match tok {
            Tok::Int(n) => Ok(Value::Poly(Polynomial::constant(
                self.vars,
                Rational::from_integer(n),
            ))),
            Tok::Var(i) => {
                if i == 0 || i > self.vars {
                    return Err(err(
                        pos,
                        format!("variable x{i} out of range for {} variables", self.vars),
                        &[],
                    ));
                }
                Ok(Value::Poly(Polynomial::variable(self.vars, i - 1)?))
            }
            Tok::DOpen => {
                let mut slots: SlotTuple = Vec::new();
                loop {
                    let spos = self.pos();
                    let mut exps = vec![self.small_int("derivative order")?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        exps.push(self.small_int("derivative order")?);
                    }
                    if exps.len() != self.vars {
                        return Err(err(
                            spos,
                            format!(
                                "slot has {} entries but there are {} variables",
                                exps.len(),
                                self.vars
                            ),
                            &[],
                        ));
                    }
                    slots.push(MultiIndex::new(exps));
                    match self.peek() {
                        Tok::Bar => {
                            self.bump();
                        }
                        Tok::RBracket => {
                            self.bump();
                            break;
                        }
                        _ => return Err(self.unexpected(&["','", "'|'", "']'"])),
                    }
                }
                Ok(Value::Op(MultiDiffOp::from_term(
                    Polynomial::one(self.vars),
                    slots,
                )?))
            }
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            _ => unreachable!(),
        }
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Poly(p) => Value::Poly(-&p),
        Value::Op(o) => Value::Op(-&o),
    }
}

fn add(a: Value, b: Value, pos: Pos) -> Result<Value> {
    match (a, b) {
        (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p + &q)),
        (Value::Op(d), Value::Op(e)) => {
            if d.arity() != e.arity() {
                return Err(err(
                    pos,
                    format!(
                        "arity mismatch between summands: {} vs {}",
                        d.arity(),
                        e.arity()
                    ),
                    &[],
                ));
            }
            Ok(Value::Op(&d + &e))
        }
        _ => Err(err(pos, "cannot add a polynomial and an operator", &[])),
    }
}

fn mul(a: Value, b: Value, pos: Pos) -> Result<Value> {
    match (a, b) {
        (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p * &q)),
        (Value::Poly(p), Value::Op(d)) | (Value::Op(d), Value::Poly(p)) => {
            Ok(Value::Op(d.mul_coeff(&p)?))
        }
        (Value::Op(_), Value::Op(_)) => Err(err(
            pos,
            "a product may contain only one operator factor",
            &[],
        )),
    }
}

fn parse_value(src: &str, vars: usize) -> Result<(Value, Pos)> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, vars };
    let start = p.pos();
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["'+'", "'-'", "'*'", "'/'", "end of input"]));
    }
    Ok((v, start))
}

/// Parses a polynomial such as `3/2*x1^2*x2 - 1` in `vars` variables.
pub fn parse_polynomial(src: &str, vars: usize) -> Result<Polynomial> {
    match parse_value(src, vars)? {
        (Value::Poly(p), _) => Ok(p),
        (Value::Op(_), pos) => Err(err(pos, "expected a polynomial, found an operator", &[])),
    }
}

/// Parses an operator such as `x1*D[2,0|0,1] - D[1,0|1,0]` in `vars` variables.
pub fn parse_operator(src: &str, vars: usize) -> Result<MultiDiffOp> {
    match parse_value(src, vars)? {
        (Value::Op(d), _) => Ok(d),
        (Value::Poly(_), pos) => Err(err(
            pos,
            "expected an operator (a sum of terms containing D[...])",
            &["'D['"],
        )),
    }
}
