//! Text syntax for multilinear graded Lie polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff '*'] elem
//! coeff  := digits ['/' digits]
//! elem   := var | '[' elem (',' elem)+ ']'      three or more children: left-normed
//! var    := 'x' digits ':' degree
//! degree := int | '(' int ',' int ')'
//! ```
//!
//! Whitespace between tokens is ignored. All degrees in one polynomial are of
//! the same kind, and no term repeats a variable index.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use gradid_core::degree::RawDegree;
use gradid_core::field::{FieldSpec, Scalar};
use gradid_core::freelie::BracketExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Var { index: u32, degree: RawDegree },
    Bracket(Vec<Elem>),
}

/// A parsed polynomial, before a field and grading are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySource {
    pub terms: Vec<(BigRational, Elem)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DegreeKind {
    Int,
    Pair,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    kind: Option<(DegreeKind, usize)>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: at + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.err(self.pos, format!("expected '{}', found '{}'", c as char, d as char)),
            None => self.err(self.pos, format!("expected '{}', found end of input", c as char)),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("nonempty digit string"))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let start = self.pos;
        let n = self.digits()?;
        let n = if negative { -n } else { n };
        i64::try_from(n).or_else(|_| self.err(start, "integer out of range"))
    }

    fn degree(&mut self) -> Result<RawDegree, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let (d, kind) = if self.peek() == Some(b'(') {
            self.pos += 1;
            let i = self.int()?;
            self.expect(b',')?;
            let j = self.int()?;
            self.expect(b')')?;
            (RawDegree::Pair(i, j), DegreeKind::Pair)
        } else {
            (RawDegree::Int(self.int()?), DegreeKind::Int)
        };
        match self.kind {
            None => self.kind = Some((kind, start)),
            Some((k, first)) if k != kind => {
                let what = |k| if k == DegreeKind::Int { "integer" } else { "pair" };
                return self.err(
                    start,
                    format!("mixed degree kinds: {} degree after {} degree at column {}", what(kind), what(k), first + 1),
                );
            }
            _ => {}
        }
        Ok(d)
    }

    fn elem(&mut self, seen: &mut Vec<u32>) -> Result<Elem, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let at = self.pos;
                let index = u32::try_from(self.digits()?).or_else(|_| self.err(at, "variable index out of range"))?;
                if seen.contains(&index) {
                    return self.err(at - 1, format!("x{index} repeated in one term; polynomials must be multilinear"));
                }
                seen.push(index);
                self.expect(b':')?;
                Ok(Elem::Var { index, degree: self.degree()? })
            }
            Some(b'[') => {
                let open = self.pos;
                self.pos += 1;
                let mut children = vec![self.elem(seen)?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    children.push(self.elem(seen)?);
                }
                if children.len() < 2 {
                    return self.err(open, "a bracket needs at least two entries");
                }
                self.expect(b']')?;
                Ok(Elem::Bracket(children))
            }
            Some(c) => self.err(self.pos, format!("expected 'x' or '[', found '{}'", c as char)),
            None => self.err(self.pos, "expected 'x' or '[', found end of input"),
        }
    }

    fn term(&mut self) -> Result<(BigRational, Elem), ParseError> {
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.digits()?;
            let den = if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.digits()?;
                if d.is_zero() {
                    return self.err(at, "zero denominator");
                }
                d
            } else {
                BigInt::one()
            };
            self.expect(b'*')?;
            BigRational::new(num, den)
        } else {
            BigRational::one()
        };
        Ok((coeff, self.elem(&mut Vec::new())?))
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn poly(&mut self) -> Result<PolySource, ParseError> {
        let mut terms = Vec::new();
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let (c, e) = self.term()?;
            terms.push((if negative { -c } else { c }, e));
            match self.sign() {
                Some(n) => negative = n,
                None => break,
            }
        }
        if let Some(c) = self.peek() {
            return self.err(self.pos, format!("unexpected '{}'", c as char));
        }
        Ok(PolySource { terms })
    }
}

pub fn parse_poly(text: &str) -> Result<PolySource, ParseError> {
    Parser { src: text.as_bytes(), pos: 0, kind: None }.poly()
}

impl Elem {
    /// The expression with pair degrees read in `Z_q × Z_q`.
    pub fn resolve(&self, pauli_q: Option<u64>) -> Result<BracketExpr, String> {
        match self {
            Elem::Var { index, degree } => Ok(BracketExpr::var(
                *index,
                degree.into_degree(pauli_q).map_err(|e| e.to_string())?,
            )),
            Elem::Bracket(children) => Ok(BracketExpr::Node(
                children.iter().map(|c| c.resolve(pauli_q)).collect::<Result<_, _>>()?,
            )),
        }
    }
}

impl PolySource {
    pub fn resolve(&self, field: FieldSpec, pauli_q: Option<u64>) -> Result<Vec<(Scalar, BracketExpr)>, String> {
        self.terms
            .iter()
            .map(|(c, e)| Ok((field.from_rational(c).map_err(|e| e.to_string())?, e.resolve(pauli_q)?)))
            .collect()
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Var { index, degree: RawDegree::Int(d) } => write!(f, "x{index}:{d}"),
            Elem::Var { index, degree: RawDegree::Pair(i, j) } => write!(f, "x{index}:({i},{j})"),
            Elem::Bracket(children) => {
                write!(f, "[")?;
                for (k, c) in children.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for PolySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (c, e)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match k {
                0 if c.is_negative() => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let m = c.abs();
            if !m.is_one() {
                write!(f, "{m}*")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
