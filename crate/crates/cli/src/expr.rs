//! Class expressions over `h`, `x`, `E0..En` and integer literals.

use std::fmt;

use milnor_core::gkm::{class_h, class_of_ei, class_x, EqClass};
use milnor_core::Error;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassExpr {
    Int(BigInt),
    H,
    X,
    E(usize),
    Add(Box<ClassExpr>, Box<ClassExpr>),
    Sub(Box<ClassExpr>, Box<ClassExpr>),
    Mul(Box<ClassExpr>, Box<ClassExpr>),
    Neg(Box<ClassExpr>),
    Pow(Box<ClassExpr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at position {position}: expected {}", expected.join(" or "))]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<&'static str>,
}

pub fn parse_class_expr(text: &str) -> Result<ClassExpr, SyntaxError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.fail(&["operator", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn fail(&self, expected: &[&'static str]) -> SyntaxError {
        SyntaxError {
            position: self.pos,
            expected: expected.to_vec(),
        }
    }

    fn expr(&mut self) -> Result<ClassExpr, SyntaxError> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == b'+' {
                ClassExpr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ClassExpr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ClassExpr, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = ClassExpr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ClassExpr, SyntaxError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(ClassExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ClassExpr, SyntaxError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let exp = std::str::from_utf8(digits)
                .ok()
                .and_then(|s| s.parse::<u32>().ok())
                .ok_or(SyntaxError {
                    position: start,
                    expected: vec!["nonnegative integer exponent"],
                })?;
            return Ok(ClassExpr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &[u8] {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<ClassExpr, SyntaxError> {
        const ATOMS: &[&str] = &["integer", "h", "x", "E<index>", "("];
        match self.peek() {
            Some(b'h') => {
                self.pos += 1;
                Ok(ClassExpr::H)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(ClassExpr::X)
            }
            Some(b'E') => {
                self.pos += 1;
                let start = self.pos;
                let digits = self.digits();
                std::str::from_utf8(digits)
                    .ok()
                    .and_then(|s| s.parse::<usize>().ok())
                    .map(ClassExpr::E)
                    .ok_or(SyntaxError {
                        position: start,
                        expected: vec!["E-index"],
                    })
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.fail(&[")"]));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let v: BigInt = std::str::from_utf8(digits)
                    .expect("ascii")
                    .parse()
                    .expect("digits");
                Ok(ClassExpr::Int(v))
            }
            _ => Err(self.fail(ATOMS)),
        }
    }
}

impl ClassExpr {
    fn precedence(&self) -> u8 {
        match self {
            ClassExpr::Add(..) | ClassExpr::Sub(..) => 1,
            ClassExpr::Mul(..) => 2,
            ClassExpr::Neg(_) => 3,
            ClassExpr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            ClassExpr::Int(v) => write!(f, "{v}"),
            ClassExpr::H => f.write_str("h"),
            ClassExpr::X => f.write_str("x"),
            ClassExpr::E(i) => write!(f, "E{i}"),
            ClassExpr::Add(a, b) | ClassExpr::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(if matches!(self, ClassExpr::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                b.write_at(f, 2)
            }
            ClassExpr::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            ClassExpr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 3)
            }
            ClassExpr::Pow(a, e) => {
                a.write_at(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }

    /// Summands of the top-level sum.
    pub fn terms(&self) -> Vec<&ClassExpr> {
        match self {
            ClassExpr::Add(a, b) | ClassExpr::Sub(a, b) => {
                let mut t = a.terms();
                t.push(b);
                t
            }
            _ => vec![self],
        }
    }

    pub fn eval(&self, n: usize) -> Result<EqClass, Error> {
        Ok(match self {
            ClassExpr::Int(v) => EqClass::one(n).scale(v),
            ClassExpr::H => class_h(n)?,
            ClassExpr::X => class_x(n)?,
            ClassExpr::E(i) => class_of_ei(n, *i)?,
            ClassExpr::Add(a, b) => &a.eval(n)? + &b.eval(n)?,
            ClassExpr::Sub(a, b) => &a.eval(n)? - &b.eval(n)?,
            ClassExpr::Mul(a, b) => &a.eval(n)? * &b.eval(n)?,
            ClassExpr::Neg(a) => -&a.eval(n)?,
            ClassExpr::Pow(a, e) => a.eval(n)?.pow(*e),
        })
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
