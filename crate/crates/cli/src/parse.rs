//! Recursive-descent reader for polynomials and symmetric forms.
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | var | '(' expr ')'
//! ```
//!
//! Rationals are integers, decimals (`0.25`) or fractions (`3/4`), which is
//! how canonical output prints them, so printed polynomials read back to
//! the same value.

use dweb::symweb::SymForm;
use dweb::{QPoly, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {column}: {kind}")]
pub struct ParseError {
    /// One-based character column.
    pub column: usize,
    pub kind: ErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ErrorKind {
    #[error("unexpected character '{0}'")]
    Lexical(char),
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("exponent must be an integer literal between 0 and {MAX_EXPONENT}")]
    BadExponent,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("form is not homogeneous in dx, dy")]
    NotHomogeneous,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational, bool),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

/// Names the parser accepts: the plane, the fiber differentials, indexed
/// product coordinates, Riccati slopes and the auxiliary chart `u, w`.
pub fn is_known_variable(name: &str) -> bool {
    const FIXED: [&str; 9] = ["x", "y", "u", "w", "t", "dx", "dy", "du", "dw"];
    if FIXED.contains(&name) {
        return true;
    }
    ["x", "y", "t"].iter().any(|p| {
        name.strip_prefix(p).is_some_and(|rest| {
            !rest.is_empty() && rest.len() < 10 && rest.bytes().all(|b| b.is_ascii_digit())
        })
    })
}

fn err(column: usize, kind: ErrorKind) -> ParseError {
    ParseError { column, kind }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((col, Tok::Plus)),
            '-' => out.push((col, Tok::Minus)),
            '*' | '·' => out.push((col, Tok::Star)),
            '^' => out.push((col, Tok::Caret)),
            '(' => out.push((col, Tok::Open)),
            ')' => out.push((col, Tok::Close)),
            '0'..='9' => {
                let (value, integer, next) = number(&chars, i)?;
                out.push((col, Tok::Num(value, integer)));
                i = next;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                if !is_known_variable(&name) {
                    return Err(err(col, ErrorKind::UnknownVariable(name)));
                }
                out.push((col, Tok::Var(name)));
                continue;
            }
            other => return Err(err(col, ErrorKind::Lexical(other))),
        }
        i += 1;
    }
    Ok(out)
}

fn digits(chars: &[char], mut i: usize) -> (String, usize) {
    let start = i;
    while i < chars.len() && chars[i].is_ascii_digit() {
        i += 1;
    }
    (chars[start..i].iter().collect(), i)
}

/// Reads `123`, `1.25` or `3/4` starting at `i`.
fn number(chars: &[char], i: usize) -> Result<(Rational, bool, usize), ParseError> {
    let (whole, mut i) = digits(chars, i);
    let mut value = Rational::from(whole.parse::<BigInt>().expect("digits"));
    let mut integer = true;
    if i < chars.len() && chars[i] == '.' {
        let (frac, next) = digits(chars, i + 1);
        if frac.is_empty() {
            return Err(err(i + 1, ErrorKind::Lexical('.')));
        }
        let scale = BigInt::from(10).pow(frac.len() as u32);
        value += Rational::new(frac.parse::<BigInt>().expect("digits"), scale);
        integer = false;
        i = next;
    } else if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
        let (den, next) = digits(chars, i + 1);
        let den = den.parse::<BigInt>().expect("digits");
        if den.is_zero() {
            return Err(err(i + 2, ErrorKind::ZeroDenominator));
        }
        value /= Rational::from(den);
        integer = false;
        i = next;
    }
    Ok((value, integer, i))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<QPoly, ParseError> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QPoly, ParseError> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let col = self.column();
        match self.bump() {
            Some(Tok::Num(n, true)) if n <= Rational::from(BigInt::from(MAX_EXPONENT)) => {
                let k: u32 = n.to_integer().try_into().expect("bounded exponent");
                Ok(base.pow(k))
            }
            _ => Err(err(col, ErrorKind::BadExponent)),
        }
    }

    fn base(&mut self) -> Result<QPoly, ParseError> {
        let col = self.column();
        match self.bump() {
            Some(Tok::Num(n, _)) => Ok(QPoly::constant(n)),
            Some(Tok::Var(v)) => Ok(QPoly::var(&v)),
            Some(Tok::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::Close) => Ok(inner),
                    None => Err(err(col, ErrorKind::Unbalanced)),
                    Some(_) => {
                        self.pos -= 1;
                        Err(err(self.column(), ErrorKind::Expected("')'")))
                    }
                }
            }
            Some(Tok::Close) => Err(err(col, ErrorKind::Unbalanced)),
            Some(_) | None => Err(err(col, ErrorKind::Expected("a number, variable or '('"))),
        }
    }
}

/// Parses a polynomial.
pub fn parse_poly(src: &str) -> Result<QPoly, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.chars().count() + 1,
    };
    let value = p.expr()?;
    match p.peek() {
        None => Ok(value),
        Some(Tok::Close) => Err(err(p.column(), ErrorKind::Unbalanced)),
        Some(_) => Err(err(p.column(), ErrorKind::Expected("an operator"))),
    }
}

/// Parses a symmetric form: a polynomial homogeneous in `dx, dy`.
pub fn parse_form(src: &str) -> Result<SymForm, ParseError> {
    let p = parse_poly(src)?;
    SymForm::from_poly(&p, ("dx", "dy")).map_err(|_| err(1, ErrorKind::NotHomogeneous))
}
