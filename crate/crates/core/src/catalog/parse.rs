//! Tokenizer and recursive-descent parser for algebra expressions.
//!
//! Precedence: `(x)` binds tighter than `(*)` and `(*C)`, which share a
//! level; all three are left-associative. Positions in errors count
//! characters from 0.

use super::{AlgebraExpr, Atom};
use crate::error::{Error, Result};
use crate::kinv::invariant_from_json;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Atom(Atom),
    Literal(Box<AlgebraExpr>),
    Tensor,
    Free,
    Unital,
    LParen,
    RParen,
}

struct Lexer {
    chars: Vec<char>,
    i: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn range(pos: usize, msg: impl Into<String>) -> Error {
    Error::ParamOutOfRange {
        pos,
        msg: msg.into(),
    }
}

impl Lexer {
    fn skip_ws(&mut self) {
        while self.chars.get(self.i).is_some_and(|c| c.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    /// Consumes `pat` (whitespace allowed between its characters) or nothing.
    fn eat(&mut self, pat: &str) -> bool {
        let start = self.i;
        for p in pat.chars() {
            self.skip_ws();
            if self.peek() != Some(p) {
                self.i = start;
                return false;
            }
            self.i += 1;
        }
        true
    }

    fn number(&mut self) -> Result<Option<(u64, usize)>> {
        self.skip_ws();
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Ok(None);
        }
        let s: String = self.chars[start..self.i].iter().collect();
        s.parse()
            .map(|n| Some((n, start)))
            .map_err(|_| range(start, format!("{s} is too large")))
    }

    fn required_number(&mut self, what: &str) -> Result<(u64, usize)> {
        let pos = self.i;
        self.number()?
            .ok_or_else(|| syntax(pos, format!("expected a number after {what}")))
    }

    fn literal(&mut self) -> Result<Tok> {
        let start = self.i;
        let mut depth = 0usize;
        let mut in_string = false;
        let mut escaped = false;
        while let Some(c) = self.peek() {
            self.i += 1;
            if in_string {
                match c {
                    _ if escaped => escaped = false,
                    '\\' => escaped = true,
                    '"' => in_string = false,
                    _ => {}
                }
                continue;
            }
            match c {
                '"' => in_string = true,
                '{' => depth += 1,
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        let text: String = self.chars[start..self.i].iter().collect();
                        let k =
                            invariant_from_json(&text).map_err(|e| syntax(start, e.to_string()))?;
                        return Ok(Tok::Literal(Box::new(AlgebraExpr::Literal(k))));
                    }
                }
                _ => {}
            }
        }
        Err(syntax(start, "unterminated literal"))
    }

    fn cuntz(&mut self) -> Result<Atom> {
        self.eat("_");
        if self.eat("inf") || self.eat("∞") {
            return Ok(Atom::CuntzInf);
        }
        let (n, pos) = self.required_number("O")?;
        if n < 2 {
            return Err(range(pos, format!("O_n needs n >= 2, got {n}")));
        }
        Ok(Atom::Cuntz(n))
    }

    fn matrix(&mut self) -> Result<Atom> {
        self.eat("_");
        let (n, pos) = self.required_number("M")?;
        if n < 1 {
            return Err(range(pos, "M_n needs n >= 1"));
        }
        if self.eat("(Oinf)") || self.eat("(O_inf)") || self.eat("(O∞)") {
            return Ok(Atom::MatrixOinf(n));
        }
        if self.eat("^inf") || self.eat("^∞") {
            if n < 2 {
                return Err(range(pos, "M_n^inf needs n >= 2"));
            }
            return Ok(Atom::Uhf(n));
        }
        Ok(Atom::Matrix(n))
    }

    fn complex(&mut self, ascii: bool) -> Result<Atom> {
        if ascii && self.eat("AR") {
            return Ok(Atom::Car);
        }
        if self.eat("(T)") || self.eat("T") || self.eat("(𝕋)") {
            return Ok(Atom::CircleFunctions);
        }
        if self.eat("01") || self.eat("[0,1]") {
            return Ok(Atom::Interval);
        }
        if self.eat("^") {
            let (k, pos) = self.required_number("C^")?;
            if k < 1 {
                return Err(range(pos, "C^k needs k >= 1"));
            }
            return Ok(Atom::ComplexPower(k));
        }
        Ok(Atom::Complex)
    }

    fn next(&mut self) -> Result<Option<(Tok, usize)>> {
        self.skip_ws();
        let pos = self.i;
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let tok = if c == '{' {
            self.literal()?
        } else if self.eat("(x)") || self.eat("⊗") {
            Tok::Tensor
        } else if self.eat("(*C)") || self.eat("(*_C)") || self.eat("*_C") {
            Tok::Unital
        } else if self.eat("(*)") || self.eat("*") {
            Tok::Free
        } else {
            self.i += 1;
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                'O' => Tok::Atom(self.cuntz()?),
                'M' => Tok::Atom(self.matrix()?),
                'C' => Tok::Atom(self.complex(true)?),
                'ℂ' => Tok::Atom(self.complex(false)?),
                _ => return Err(syntax(pos, format!("unexpected character {c:?}"))),
            }
        };
        Ok(Some((tok, pos)))
    }
}

fn tokenize(text: &str) -> Result<(Vec<(Tok, usize)>, usize)> {
    let mut lx = Lexer {
        chars: text.chars().collect(),
        i: 0,
    };
    let mut out = Vec::new();
    while let Some(t) = lx.next()? {
        out.push(t);
    }
    Ok((out, lx.chars.len()))
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }

    fn expr(&mut self) -> Result<AlgebraExpr> {
        let mut left = self.term()?;
        loop {
            let make: fn(AlgebraExpr, AlgebraExpr) -> AlgebraExpr = match self.peek() {
                Some(Tok::Free) => AlgebraExpr::free,
                Some(Tok::Unital) => AlgebraExpr::unital_free,
                _ => return Ok(left),
            };
            self.i += 1;
            let right = self.term()?;
            left = make(left, right);
        }
    }

    fn term(&mut self) -> Result<AlgebraExpr> {
        let mut left = self.factor()?;
        while self.peek() == Some(&Tok::Tensor) {
            self.i += 1;
            let right = self.factor()?;
            left = AlgebraExpr::tensor(left, right);
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<AlgebraExpr> {
        let pos = self.pos();
        let Some((tok, _)) = self.toks.get(self.i).cloned() else {
            return Err(syntax(pos, "unexpected end of input"));
        };
        self.i += 1;
        match tok {
            Tok::Atom(a) => Ok(AlgebraExpr::Atom(a)),
            Tok::Literal(e) => Ok(*e),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.pos(), "expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            _ => Err(syntax(pos, "expected an algebra")),
        }
    }
}

pub fn parse(text: &str) -> Result<AlgebraExpr> {
    let (toks, end) = tokenize(text)?;
    let mut p = Parser { toks, i: 0, end };
    let e = p.expr()?;
    if p.i < p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}
