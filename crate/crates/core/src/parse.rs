//! Expression parsing for the three interchange formats.
//!
//! The text grammar: variables `a[i,j]`, `x1|x2|x3`, `u1|u2|u3`; integer and
//! `p/q` rational literals; operators `+ - * ^` with `^` binding tightest;
//! parentheses; whitespace insignificant; implicit multiplication is a
//! syntax error.  The LaTeX reader accepts what [`crate::render`] emits
//! (juxtaposed factors, `a_{i,j}`, `x_1`, `^{k}`, `\frac{p}{q}`), and the
//! JSON reader accepts the term-array schema.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::ring::{rational_from_str, Polynomial, Rational, RingConfig, VariableId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// 1-based byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Int(BigInt),
    Var(VariableId),
    End,
}

struct Lexer<'a> {
    input: &'a [u8],
    pos: usize,
    ring: RingConfig,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str, ring: RingConfig) -> Self {
        Lexer {
            input: input.as_bytes(),
            pos: 0,
            ring,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_byte(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn here(&self) -> usize {
        self.pos + 1
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::new(self.here(), "expected a number"));
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        Ok(text.parse::<BigInt>().unwrap())
    }

    fn index_u32(&mut self) -> Result<u32, ParseError> {
        let at = self.here();
        let n = self.integer()?;
        n.to_u32()
            .ok_or_else(|| ParseError::new(at, "index too large"))
    }

    fn xu_index(&mut self, kind: u8) -> Result<Token, ParseError> {
        let at = self.here();
        match self.peek_byte() {
            Some(d @ b'1'..=b'3') => {
                self.pos += 1;
                let idx = d - b'0';
                Ok(match kind {
                    b'x' => Token::Var(VariableId::x(idx)),
                    _ => Token::Var(VariableId::u(idx)),
                })
            }
            _ => Err(ParseError::new(
                at,
                format!("expected index 1, 2 or 3 after '{}'", kind as char),
            )),
        }
    }

    fn a_variable(&mut self, at: usize) -> Result<Token, ParseError> {
        self.skip_ws();
        if self.peek_byte() != Some(b'[') {
            return Err(ParseError::new(self.here(), "expected '[' after 'a'"));
        }
        self.pos += 1;
        self.skip_ws();
        let i = self.index_u32()?;
        self.skip_ws();
        if self.peek_byte() != Some(b',') {
            return Err(ParseError::new(self.here(), "expected ',' in a[i,j]"));
        }
        self.pos += 1;
        self.skip_ws();
        let j = self.index_u32()?;
        self.skip_ws();
        if self.peek_byte() != Some(b']') {
            return Err(ParseError::new(self.here(), "expected ']' in a[i,j]"));
        }
        self.pos += 1;
        let n = self.ring.degree();
        if i.checked_add(j).is_none_or(|s| s > n) {
            return Err(ParseError::new(
                at,
                format!("index out of range: a[{i},{j}] requires i+j <= {n}"),
            ));
        }
        Ok(Token::Var(VariableId::a(i, j)))
    }

    fn next(&mut self) -> Result<(Token, usize), ParseError> {
        self.skip_ws();
        let at = self.here();
        let Some(b) = self.peek_byte() else {
            return Ok((Token::End, at));
        };
        let tok = match b {
            b'+' => {
                self.pos += 1;
                Token::Plus
            }
            b'-' => {
                self.pos += 1;
                Token::Minus
            }
            b'*' => {
                self.pos += 1;
                Token::Star
            }
            b'^' => {
                self.pos += 1;
                Token::Caret
            }
            b'/' => {
                self.pos += 1;
                Token::Slash
            }
            b'(' => {
                self.pos += 1;
                Token::LParen
            }
            b')' => {
                self.pos += 1;
                Token::RParen
            }
            b'0'..=b'9' => Token::Int(self.integer()?),
            b'a' => {
                self.pos += 1;
                self.a_variable(at)?
            }
            b'x' => {
                self.pos += 1;
                self.xu_index(b'x')?
            }
            b'u' => {
                self.pos += 1;
                self.xu_index(b'u')?
            }
            other => {
                return Err(ParseError::new(
                    at,
                    format!("unexpected character '{}'", other as char),
                ))
            }
        };
        Ok((tok, at))
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    index: usize,
}

impl Parser {
    fn peek(&self) -> &(Token, usize) {
        &self.tokens[self.index]
    }

    fn advance(&mut self) -> (Token, usize) {
        let t = self.tokens[self.index].clone();
        if self.index + 1 < self.tokens.len() {
            self.index += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek().0 {
            Token::Plus => {
                self.advance();
            }
            Token::Minus => {
                self.advance();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek().0 {
                Token::Plus => {
                    self.advance();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Token::Minus => {
                    self.advance();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        while self.peek().0 == Token::Star {
            self.advance();
            let f = self.power()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let mut base = self.primary()?;
        while self.peek().0 == Token::Caret {
            self.advance();
            let (tok, at) = self.advance();
            let Token::Int(e) = tok else {
                return Err(ParseError::new(
                    at,
                    "expected a nonnegative integer exponent",
                ));
            };
            let e = e
                .to_u32()
                .ok_or_else(|| ParseError::new(at, "exponent too large"))?;
            base = base.pow(e);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Polynomial, ParseError> {
        let (tok, at) = self.advance();
        match tok {
            Token::Int(p) => {
                // A '/' directly after an integer continues a rational literal.
                if self.peek().0 == Token::Slash {
                    self.advance();
                    let (tok, at_q) = self.advance();
                    let Token::Int(q) = tok else {
                        return Err(ParseError::new(at_q, "expected a denominator"));
                    };
                    if q.is_zero() {
                        return Err(ParseError::new(at_q, "zero denominator"));
                    }
                    Ok(Polynomial::constant(Rational::new(p, q)))
                } else {
                    Ok(Polynomial::constant(Rational::from(p)))
                }
            }
            Token::Var(v) => Ok(Polynomial::variable(v)),
            Token::LParen => {
                let inner = self.expr()?;
                let (tok, at) = self.advance();
                if tok != Token::RParen {
                    return Err(ParseError::new(at, "expected ')'"));
                }
                Ok(inner)
            }
            Token::End => Err(ParseError::new(at, "unexpected end of input")),
            _ => Err(ParseError::new(at, "expected a variable, number or '('")),
        }
    }
}

/// Parses the text expression grammar into a normalized polynomial.
pub fn parse_polynomial(text: &str, ring: &RingConfig) -> Result<Polynomial, ParseError> {
    let mut lexer = Lexer::new(text, *ring);
    let mut tokens = Vec::new();
    loop {
        let (tok, at) = lexer.next()?;
        let end = tok == Token::End;
        tokens.push((tok, at));
        if end {
            break;
        }
    }
    let mut parser = Parser { tokens, index: 0 };
    let poly = parser.expr()?;
    let (tok, at) = parser.peek().clone();
    if tok != Token::End {
        return Err(ParseError::new(at, "expected an operator or end of input"));
    }
    Ok(poly)
}

/// Reads the JSON term-array schema
/// `[{"coeff":"p/q","monomial":{"a[0,0]":2,"x1":1}}, ...]`.
pub fn polynomial_from_json(value: &Value, ring: &RingConfig) -> Result<Polynomial, ParseError> {
    let arr = value
        .as_array()
        .ok_or_else(|| ParseError::new(1, "expected a JSON array of terms"))?;
    let mut poly = Polynomial::zero();
    for item in arr {
        let obj = item
            .as_object()
            .ok_or_else(|| ParseError::new(1, "expected a term object"))?;
        let coeff = obj
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| ParseError::new(1, "term is missing a \"coeff\" string"))?;
        let coeff = rational_from_str(coeff)
            .ok_or_else(|| ParseError::new(1, format!("bad rational literal '{coeff}'")))?;
        let mono = obj
            .get("monomial")
            .and_then(Value::as_object)
            .ok_or_else(|| ParseError::new(1, "term is missing a \"monomial\" object"))?;
        let mut exps = Vec::new();
        for (name, e) in mono {
            let v = parse_variable_name(name, ring)?;
            let e = e
                .as_u64()
                .ok_or_else(|| ParseError::new(1, format!("bad exponent for '{name}'")))?;
            exps.push((v, e));
        }
        poly.add_term(crate::ring::Monomial::from_exponents(exps), coeff);
    }
    Ok(poly)
}

/// Parses a bare variable name (`a[1,2]`, `x3`, `u1`).
pub fn parse_variable_name(name: &str, ring: &RingConfig) -> Result<VariableId, ParseError> {
    let mut lexer = Lexer::new(name, *ring);
    let (tok, at) = lexer.next()?;
    let Token::Var(v) = tok else {
        return Err(ParseError::new(at, format!("'{name}' is not a variable")));
    };
    let (end, at) = lexer.next()?;
    if end != Token::End {
        return Err(ParseError::new(
            at,
            format!("trailing input in variable '{name}'"),
        ));
    }
    Ok(v)
}

/// Parses the LaTeX rendering produced by [`crate::render::render_latex`].
pub fn parse_latex(text: &str, ring: &RingConfig) -> Result<Polynomial, ParseError> {
    LatexParser {
        input: text.as_bytes(),
        pos: 0,
        ring: *ring,
    }
    .parse()
}

struct LatexParser<'a> {
    input: &'a [u8],
    pos: usize,
    ring: RingConfig,
}

impl<'a> LatexParser<'a> {
    fn here(&self) -> usize {
        self.pos + 1
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_space();
        self.input.get(self.pos).copied()
    }

    fn skip_space(&mut self) {
        loop {
            while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            // Thin-space and spacing macros emitted by typesetters.
            if self.input[self.pos..].starts_with(b"\\,")
                || self.input[self.pos..].starts_with(b"\\;")
                || self.input[self.pos..].starts_with(b"\\!")
                || self.input[self.pos..].starts_with(b"\\ ")
            {
                self.pos += 2;
                continue;
            }
            break;
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::new(
                self.here(),
                format!("expected '{}'", b as char),
            ))
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_space();
        let mut negative = false;
        if self.input.get(self.pos) == Some(&b'-') {
            negative = true;
            self.pos += 1;
            self.skip_space();
        }
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(self.here(), "expected a number"));
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        let n = text.parse::<BigInt>().unwrap();
        Ok(if negative { -n } else { n })
    }

    fn braced_integer(&mut self) -> Result<BigInt, ParseError> {
        self.expect(b'{')?;
        let n = self.integer()?;
        self.expect(b'}')?;
        Ok(n)
    }

    fn subscript_index(&mut self) -> Result<u8, ParseError> {
        self.expect(b'_')?;
        let at = self.here();
        let n = if self.peek() == Some(b'{') {
            self.braced_integer()?
        } else {
            self.integer()?
        };
        n.to_u8()
            .filter(|k| (1..=3).contains(k))
            .ok_or_else(|| ParseError::new(at, "expected index 1, 2 or 3"))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let at = self.here();
        let n = if self.peek() == Some(b'{') {
            self.braced_integer()?
        } else {
            self.integer()?
        };
        n.to_u32()
            .ok_or_else(|| ParseError::new(at, "exponent too large"))
    }

    fn variable(&mut self) -> Result<VariableId, ParseError> {
        let at = self.here();
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                self.expect(b'_')?;
                self.expect(b'{')?;
                let i = self
                    .integer()?
                    .to_u32()
                    .ok_or_else(|| ParseError::new(at, "index too large"))?;
                self.expect(b',')?;
                let j = self
                    .integer()?
                    .to_u32()
                    .ok_or_else(|| ParseError::new(at, "index too large"))?;
                self.expect(b'}')?;
                let n = self.ring.degree();
                if i.checked_add(j).is_none_or(|s| s > n) {
                    return Err(ParseError::new(
                        at,
                        format!("index out of range: a_{{{i},{j}}} requires i+j <= {n}"),
                    ));
                }
                Ok(VariableId::a(i, j))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(VariableId::x(self.subscript_index()?))
            }
            Some(b'u') => {
                self.pos += 1;
                Ok(VariableId::u(self.subscript_index()?))
            }
            _ => Err(ParseError::new(at, "expected a variable")),
        }
    }

    // One product of factors: optional numeric part then juxtaposed variables.
    fn product(&mut self) -> Result<Polynomial, ParseError> {
        let mut coeff = Rational::one();
        let mut saw_number = false;
        match self.peek() {
            Some(b'\\') if self.input[self.pos..].starts_with(b"\\frac") => {
                self.pos += 5;
                let p = self.braced_integer()?;
                let at = self.here();
                let q = self.braced_integer()?;
                if q.is_zero() {
                    return Err(ParseError::new(at, "zero denominator"));
                }
                coeff = Rational::new(p, q);
                saw_number = true;
            }
            Some(b'0'..=b'9') => {
                coeff = Rational::from(self.integer()?);
                saw_number = true;
            }
            _ => {}
        }
        let mut mono = crate::ring::Monomial::one();
        let mut saw_var = false;
        while matches!(self.peek(), Some(b'a') | Some(b'x') | Some(b'u')) {
            let v = self.variable()?;
            let mut e = 1u64;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                e = u64::from(self.exponent()?);
            }
            mono = mono.with_exponent(v, mono.exponent(v) + e);
            saw_var = true;
        }
        if !saw_number && !saw_var {
            return Err(ParseError::new(self.here(), "expected a term"));
        }
        Ok(Polynomial::term(mono, coeff))
    }

    fn parse(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = Polynomial::zero();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let term = self.product()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                None => return Ok(acc),
                Some(other) => {
                    return Err(ParseError::new(
                        self.here(),
                        format!("unexpected character '{}'", other as char),
                    ))
                }
            }
        }
    }
}
