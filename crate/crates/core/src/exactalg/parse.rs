//! Text syntax for scalars and polynomials.
//!
//! Polynomials are sums of terms such as `3/2 x1^2 x3` or `-y2`, joined by
//! `+`/`-`. Factors inside a term are separated by whitespace or `*`.
//! Gaussian rationals look like `1/2 - 3/4 i`, `i`, or `-2`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{GaussianRational, Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} (at column {column})")]
pub struct ParseError {
    /// Zero-based byte offset into the parsed string.
    pub offset: usize,
    /// One-based column, for humans.
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, column: offset + 1, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Ident(String),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Token::Int(value)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
            }
            other => return Err(ParseError::new(i, format!("unexpected character `{}`", other))),
        }
    }
    Ok(out)
}

struct Cursor {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    /// `int [ '/' int ]`
    fn rational(&mut self) -> Result<Rational, ParseError> {
        let at = self.offset();
        let numer = match self.bump() {
            Some(Token::Int(n)) => n,
            _ => return Err(ParseError::new(at, "expected a number")),
        };
        if self.peek() == Some(&Token::Slash) {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Some(Token::Int(d)) if !d.is_zero() => Ok(Rational::new(numer, d)),
                Some(Token::Int(_)) => Err(ParseError::new(at, "zero denominator")),
                _ => Err(ParseError::new(at, "expected a denominator")),
            }
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(Token::Plus) => {
                self.bump();
                Some(false)
            }
            Some(Token::Minus) => {
                self.bump();
                Some(true)
            }
            _ => None,
        }
    }
}

fn cursor(src: &str) -> Result<Cursor, ParseError> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    Ok(Cursor { tokens, pos: 0, end: src.len() })
}

pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let mut c = cursor(src)?;
    let negative = c.sign() == Some(true);
    let value = c.rational()?;
    if !c.at_end() {
        return Err(ParseError::new(c.offset(), "trailing input"));
    }
    Ok(if negative { -value } else { value })
}

/// Parses a polynomial over the declared variable `names`.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial, ParseError> {
    let nvars = names.len();
    let mut c = cursor(src)?;
    let mut out = Polynomial::zero(nvars);
    let mut first = true;
    while !c.at_end() {
        let negative = match c.sign() {
            Some(neg) => neg,
            None if first => false,
            None => return Err(ParseError::new(c.offset(), "expected `+` or `-` between terms")),
        };
        first = false;
        let term_at = c.offset();
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; nvars];
        let mut factors = 0;
        loop {
            match c.peek() {
                Some(Token::Int(_)) => {
                    coeff *= c.rational()?;
                }
                Some(Token::Ident(_)) => {
                    let at = c.offset();
                    let Some(Token::Ident(name)) = c.bump() else { unreachable!() };
                    let index = names
                        .iter()
                        .position(|n| *n == name)
                        .ok_or_else(|| ParseError::new(at, format!("undeclared variable `{}`", name)))?;
                    let mut power = 1u32;
                    if c.peek() == Some(&Token::Caret) {
                        c.bump();
                        let at = c.offset();
                        match c.bump() {
                            Some(Token::Int(e)) => {
                                power = u32::try_from(e)
                                    .map_err(|_| ParseError::new(at, "exponent too large"))?;
                            }
                            _ => return Err(ParseError::new(at, "expected an integer exponent")),
                        }
                    }
                    exps[index] += power;
                }
                _ => break,
            }
            factors += 1;
            if c.peek() == Some(&Token::Star) {
                c.bump();
                if !matches!(c.peek(), Some(Token::Int(_)) | Some(Token::Ident(_))) {
                    return Err(ParseError::new(c.offset(), "expected a factor after `*`"));
                }
            }
        }
        if factors == 0 {
            return Err(ParseError::new(term_at, "expected a term"));
        }
        if negative {
            coeff = -coeff;
        }
        out = out + Polynomial::term(Monomial::new(exps), coeff);
    }
    Ok(out)
}

/// Parses `re + im i` style Gaussian rationals; either part may be omitted.
pub fn parse_gaussian(src: &str) -> Result<GaussianRational, ParseError> {
    let mut c = cursor(src)?;
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    let mut first = true;
    while !c.at_end() {
        let negative = match c.sign() {
            Some(neg) => neg,
            None if first => false,
            None => return Err(ParseError::new(c.offset(), "expected `+` or `-` between parts")),
        };
        first = false;
        let at = c.offset();
        let mut value = Rational::one();
        let mut saw_number = false;
        if matches!(c.peek(), Some(Token::Int(_))) {
            value = c.rational()?;
            saw_number = true;
        }
        if c.peek() == Some(&Token::Star) {
            c.bump();
        }
        let imaginary = match c.peek() {
            Some(Token::Ident(name)) if name == "i" => {
                c.bump();
                true
            }
            Some(Token::Ident(name)) => {
                return Err(ParseError::new(c.offset(), format!("unexpected `{}` in complex number", name)))
            }
            _ => false,
        };
        if !saw_number && !imaginary {
            return Err(ParseError::new(at, "expected a number or `i`"));
        }
        if negative {
            value = -value;
        }
        if imaginary {
            im += value;
        } else {
            re += value;
        }
    }
    Ok(GaussianRational::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{fmt_gaussian, int, rat};

    fn names() -> Vec<String> {
        vec!["x1".into(), "y2".into()]
    }

    #[test]
    fn polynomial_syntax() {
        let f = parse_polynomial("3/2 x1^2 y2 - 1 y2 + 2*x1*x1", &names()).unwrap();
        let g = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![2, 1]), rat(3, 2)),
                (Monomial::new(vec![0, 1]), int(-1)),
                (Monomial::new(vec![2, 0]), int(2)),
            ],
        );
        assert_eq!(f, g);
        assert_eq!(parse_polynomial("-x1", &names()).unwrap(), -Polynomial::var(2, 0));
        assert!(parse_polynomial("0", &names()).unwrap().is_zero());
    }

    #[test]
    fn undeclared_variable_is_named() {
        let err = parse_polynomial("x1 + z", &names()).unwrap_err();
        assert!(err.message.contains("`z`"));
        assert_eq!(err.offset, 5);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_polynomial("", &names()).is_err());
        assert!(parse_polynomial("x1 +", &names()).is_err());
        assert!(parse_polynomial("x1 x1^", &names()).is_err());
        assert!(parse_polynomial("1/0 x1", &names()).is_err());
        assert!(parse_polynomial("x1 (y2)", &names()).is_err());
    }

    #[test]
    fn gaussian_syntax() {
        let z = parse_gaussian("1/2 - 3/4 i").unwrap();
        assert_eq!(z, GaussianRational::new(rat(1, 2), rat(-3, 4)));
        assert_eq!(parse_gaussian("-i").unwrap(), GaussianRational::new(int(0), int(-1)));
        assert_eq!(parse_gaussian("2").unwrap(), GaussianRational::new(int(2), int(0)));
        assert_eq!(parse_gaussian(&fmt_gaussian(&z)).unwrap(), z);
        assert!(parse_gaussian("2 j").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-7/14").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/2 x").is_err());
    }
}
