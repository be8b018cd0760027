//! Recursive-descent parser for the polynomial text grammar, plus the
//! canonical renderer.
//!
//! ```text
//! expr     := '-'? term (('+'|'-') term)*
//! term     := factor ('*'? factor)*
//! factor   := base ('^' nat)?
//! base     := rational | var | '(' expr ')'
//! var      := letter (letter|digit)*
//! rational := nat ('/' nat)?
//! ```
//!
//! Whitespace is insignificant and juxtaposition multiplies, so `x1*x2` and
//! `x1 x2` parse the same way. Variables are resolved against a declared
//! name list; anything else is an error carrying line and column.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::rational::{rat_to_str, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Nat(BigInt),
    Ident(String),
    End,
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<Spanned, ParseError> {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        let tok = match self.peek() {
            None => Tok::End,
            Some(c) => match c {
                b'+' => {
                    self.bump();
                    Tok::Plus
                }
                b'-' => {
                    self.bump();
                    Tok::Minus
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'^' => {
                    self.bump();
                    Tok::Caret
                }
                b'/' => {
                    self.bump();
                    Tok::Slash
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'0'..=b'9' => {
                    let mut digits = String::new();
                    while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                        digits.push(self.bump().unwrap() as char);
                    }
                    Tok::Nat(digits.parse().unwrap())
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut name = String::new();
                    while matches!(self.peek(), Some(d) if d.is_ascii_alphanumeric() || d == b'_')
                    {
                        name.push(self.bump().unwrap() as char);
                    }
                    Tok::Ident(name)
                }
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("unexpected character `{}`", other as char),
                    })
                }
            },
        };
        Ok(Spanned { tok, line, col })
    }
}

pub struct PolyParser<'a> {
    lexer: Lexer<'a>,
    current: Spanned,
    vars: &'a [String],
}

impl<'a> PolyParser<'a> {
    pub fn parse(src: &'a str, vars: &'a [String]) -> Result<Poly, ParseError> {
        let mut lexer = Lexer::new(src);
        let current = lexer.next_token()?;
        let mut p = PolyParser {
            lexer,
            current,
            vars,
        };
        let poly = p.expr()?;
        if p.current.tok != Tok::End {
            return Err(p.unexpected("end of input"));
        }
        Ok(poly)
    }

    fn advance(&mut self) -> Result<(), ParseError> {
        self.current = self.lexer.next_token()?;
        Ok(())
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError {
            line: self.current.line,
            col: self.current.col,
            message: format!("expected {wanted}, found {:?}", self.current.tok),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut negate = false;
        if self.current.tok == Tok::Minus {
            negate = true;
            self.advance()?;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.current.tok {
                Tok::Plus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.try_add(&t).expect("parser arity fixed");
                }
                Tok::Minus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.try_sub(&t).expect("parser arity fixed");
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match &self.current.tok {
                Tok::Star => {
                    self.advance()?;
                    let f = self.factor()?;
                    acc = acc.try_mul(&f).expect("parser arity fixed");
                }
                // Juxtaposition: a factor can start right away.
                Tok::Nat(_) | Tok::Ident(_) | Tok::LParen => {
                    let f = self.factor()?;
                    acc = acc.try_mul(&f).expect("parser arity fixed");
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if self.current.tok == Tok::Caret {
            self.advance()?;
            match std::mem::replace(&mut self.current.tok, Tok::End) {
                Tok::Nat(n) => {
                    self.advance()?;
                    let e: u32 = n.try_into().map_err(|_| ParseError {
                        line: self.current.line,
                        col: self.current.col,
                        message: "exponent too large".to_string(),
                    })?;
                    return Ok(base.pow(e));
                }
                other => {
                    self.current.tok = other;
                    return Err(self.unexpected("a natural-number exponent"));
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        let nvars = self.vars.len();
        match std::mem::replace(&mut self.current.tok, Tok::End) {
            Tok::Nat(n) => {
                self.advance()?;
                // Optional '/ nat' completes a rational literal.
                if self.current.tok == Tok::Slash {
                    self.advance()?;
                    match std::mem::replace(&mut self.current.tok, Tok::End) {
                        Tok::Nat(d) => {
                            self.advance()?;
                            if d.is_zero() {
                                return Err(ParseError {
                                    line: self.current.line,
                                    col: self.current.col,
                                    message: "zero denominator".to_string(),
                                });
                            }
                            Ok(Poly::constant(nvars, Rat::new(n, d)))
                        }
                        other => {
                            self.current.tok = other;
                            Err(self.unexpected("a denominator"))
                        }
                    }
                } else {
                    Ok(Poly::constant(nvars, Rat::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                let (line, col) = (self.current.line, self.current.col);
                self.advance()?;
                match self.vars.iter().position(|v| v == &name) {
                    Some(idx) => Ok(Poly::var(nvars, idx)),
                    None => Err(ParseError {
                        line,
                        col,
                        message: format!("unknown variable `{name}`"),
                    }),
                }
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                if self.current.tok != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.advance()?;
                Ok(inner)
            }
            other => {
                self.current.tok = other;
                Err(self.unexpected("a number, variable, or `(`"))
            }
        }
    }
}

pub fn parse_poly(src: &str, vars: &[String]) -> Result<Poly, ParseError> {
    PolyParser::parse(src, vars)
}

/// Canonical text form: terms in descending graded-lex order, explicit `*`,
/// `^` powers, rationals as `p/q`. Parsing the output reproduces the
/// polynomial exactly.
pub fn render_poly(p: &Poly, vars: &[String]) -> String {
    assert_eq!(p.nvars(), vars.len());
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut pieces: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_unit() {
            pieces.push(rat_to_str(&abs));
        }
        for (v, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => pieces.push(vars[v].clone()),
                _ => pieces.push(format!("{}^{}", vars[v], e)),
            }
        }
        out.push_str(&pieces.join("*"));
    }
    out
}

/// Default variable names `x1..xn` used when a context does not declare any.
pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_frac, rat_i64};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_spec_grammar_forms() {
        let vs = vars(&["x1", "x2"]);
        let a = parse_poly("x1*x2", &vs).unwrap();
        let b = parse_poly("x1 x2", &vs).unwrap();
        assert_eq!(a, b);

        let p = parse_poly("2/3 x1^2 - x2 + 1", &vs).unwrap();
        let x1 = Poly::var(2, 0);
        let x2 = Poly::var(2, 1);
        let expect = &(&x1.pow(2).scale(&rat_frac(2, 3)) - &x2) + &Poly::one(2);
        assert_eq!(p, expect);
    }

    #[test]
    fn leading_minus_and_parens() {
        let vs = vars(&["x", "y"]);
        let p = parse_poly("-(x - y)^2", &vs).unwrap();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        assert_eq!(p, (&x - &y).pow(2).neg());
    }

    #[test]
    fn unknown_variable_has_position() {
        let vs = vars(&["x"]);
        let err = parse_poly("x + qq", &vs).unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));
        assert!(err.message.contains("qq"));
    }

    #[test]
    fn rejects_trailing_garbage() {
        let vs = vars(&["x"]);
        assert!(parse_poly("x )", &vs).is_err());
        assert!(parse_poly("", &vs).is_err());
        assert!(parse_poly("1/0", &vs).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let vs = vars(&["x", "y", "z"]);
        let p = parse_poly("3 x^2 y - 1/2 z^3 + y z - 7", &vs).unwrap();
        let s = render_poly(&p, &vs);
        let q = parse_poly(&s, &vs).unwrap();
        assert_eq!(p, q);
        assert_eq!(render_poly(&q, &vs), s);
    }

    #[test]
    fn renders_constants_and_signs() {
        let vs = vars(&["x"]);
        let p = parse_poly("-x - 1", &vs).unwrap();
        assert_eq!(render_poly(&p, &vs), "-x - 1");
        assert_eq!(render_poly(&Poly::zero(1), &vs), "0");
        assert_eq!(
            render_poly(&Poly::constant(1, rat_i64(-5)), &vs),
            "-5"
        );
    }
}
