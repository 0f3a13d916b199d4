//! Recursive-descent parser for polynomials, rational functions and planar
//! 1-forms.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := ('-'|'+') factor | atom ('^' uint)?
//! atom   := number ['/' number] | variable | '(' expr ')'
//! form   := ['+'|'-'] fterm (('+'|'-') fterm)*
//! fterm  := ['(' expr ')' | number ['/' number]] ['*'] ('dx'|'dy')
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{Elem, Tower};
use crate::poly::{MultiPoly, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {}", expected.join(" or "))]
    SyntaxError { position: usize, expected: Vec<String> },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a Vars,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(text[start..i].parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError::SyntaxError {
                position: text[..i].chars().count(),
                expected: vec!["number".into(), "variable".into(), "operator".into()],
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &'a Vars) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0, vars })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn position(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            position: self.position(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("'{c}'")])
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }

    fn constant(&self, q: BigRational) -> MultiPoly {
        MultiPoly::constant(self.vars, &Tower::rationals(), Elem::Rat(q))
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = if self.is_sym('-') {
            self.bump();
            self.term()?.neg()
        } else {
            if self.is_sym('+') {
                self.bump();
            }
            self.term()?
        };
        loop {
            if self.is_sym('+') {
                self.bump();
                acc = acc.add(&self.term()?);
            } else if self.is_sym('-') {
                self.bump();
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.is_sym('*') {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        if self.is_sym('-') {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        if self.is_sym('+') {
            self.bump();
            return self.factor();
        }
        let base = self.atom()?;
        if self.is_sym('^') {
            self.bump();
            match self.bump() {
                Tok::Num(n) => match u32::try_from(n) {
                    Ok(k) => Ok(base.pow(k)),
                    Err(_) => {
                        self.pos -= 1;
                        self.fail(&["small exponent"])
                    }
                },
                Tok::End => self.fail(&["exponent"]),
                _ => {
                    self.pos -= 1;
                    self.fail(&["exponent"])
                }
            }
        } else {
            Ok(base)
        }
    }

    fn rational(&mut self, n: BigInt) -> Result<BigRational, ParseError> {
        if self.is_sym('/') && matches!(self.toks[self.pos + 1].0, Tok::Num(_)) {
            self.bump();
            let Tok::Num(d) = self.bump() else { unreachable!() };
            if d.is_zero() {
                self.pos -= 1;
                return self.fail(&["nonzero denominator"]);
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let at = self.position();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                let q = self.rational(n)?;
                Ok(self.constant(q))
            }
            Tok::Ident(name) => {
                self.bump();
                match self.vars.index_of(&name) {
                    Some(i) => Ok(MultiPoly::var(self.vars, &Tower::rationals(), i)),
                    None => Err(ParseError::UnknownVariable { name, position: at }),
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            _ => self.fail(&["number", "variable", "'('"]),
        }
    }

    fn is_differential(&self) -> Option<usize> {
        match self.peek() {
            Tok::Ident(s) if s == "dx" => Some(0),
            Tok::Ident(s) if s == "dy" => Some(1),
            _ => None,
        }
    }

    /// One `coefficient * d<var>` summand.
    fn form_term(&mut self) -> Result<(usize, MultiPoly), ParseError> {
        let coeff = match self.peek().clone() {
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                e
            }
            Tok::Num(n) => {
                self.bump();
                let q = self.rational(n)?;
                self.constant(q)
            }
            _ if self.is_differential().is_some() => self.constant(BigRational::from_integer(1.into())),
            _ => return self.fail(&["'('", "number", "'dx'", "'dy'"]),
        };
        if self.is_sym('*') {
            self.bump();
        }
        match self.is_differential() {
            Some(i) => {
                self.bump();
                Ok((i, coeff))
            }
            None => self.fail(&["'dx'", "'dy'"]),
        }
    }

    fn form(&mut self) -> Result<(MultiPoly, MultiPoly), ParseError> {
        let zero = MultiPoly::zero(self.vars, &Tower::rationals());
        let mut parts = [zero.clone(), zero];
        let mut negative = false;
        if self.is_sym('-') {
            self.bump();
            negative = true;
        } else if self.is_sym('+') {
            self.bump();
        }
        loop {
            let (i, c) = self.form_term()?;
            parts[i] = if negative { parts[i].sub(&c) } else { parts[i].add(&c) };
            if self.is_sym('+') {
                negative = false;
            } else if self.is_sym('-') {
                negative = true;
            } else {
                self.expect_end()?;
                let [a, b] = parts;
                return Ok((a, b));
            }
            self.bump();
        }
    }
}

/// Parses a polynomial in the given variables.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly, ParseError> {
    let mut p = Parser::new(text, vars)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses `f1/f2`, or a bare polynomial `f1` (then `f2 = 1`).
pub fn parse_rational_function(
    text: &str,
    vars: &Vars,
) -> Result<(MultiPoly, MultiPoly), ParseError> {
    let mut p = Parser::new(text, vars)?;
    let num = p.expr()?;
    let den = if p.is_sym('/') {
        p.bump();
        let at = p.position();
        let den = p.expr()?;
        if den.is_zero() {
            return Err(ParseError::SyntaxError { position: at, expected: vec!["nonzero denominator".into()] });
        }
        den
    } else {
        MultiPoly::from_int(vars, 1)
    };
    p.expect_end()?;
    Ok((num, den))
}

/// Parses the coefficient pair `(A, B)` of `A dx + B dy` without validation.
pub fn parse_form_coefficients(text: &str) -> Result<(MultiPoly, MultiPoly), ParseError> {
    let vars = Vars::xy();
    let mut p = Parser::new(text, &vars)?;
    p.form()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(s: &str) -> MultiPoly {
        parse_poly(s, &Vars::xy()).unwrap()
    }

    #[test]
    fn basic_polynomials() {
        assert_eq!(xy("x*y + y^2 + 5*x^3*y").to_string(), "5*x^3*y + x*y + y^2");
        assert!(xy("0").is_zero());
        assert!(xy("-(x - x)").is_zero());
        assert_eq!(xy("(x+1)^2"), xy("x^2 + 2*x + 1"));
        assert_eq!(xy("x*-y"), xy("-x*y"));
        assert_eq!(xy("3/6*x"), xy("1/2*x"));
    }

    #[test]
    fn errors_carry_positions() {
        let v = Vars::xy();
        assert_eq!(
            parse_poly("x + z", &v),
            Err(ParseError::UnknownVariable { name: "z".into(), position: 4 })
        );
        match parse_poly("x + ", &v) {
            Err(ParseError::SyntaxError { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("2x", &v), Err(ParseError::SyntaxError { position: 1, .. })));
        assert!(matches!(parse_poly("x/y", &v), Err(ParseError::SyntaxError { position: 1, .. })));
        assert!(matches!(parse_poly("1/0", &v), Err(ParseError::SyntaxError { position: 2, .. })));
        assert!(matches!(parse_poly("x^y", &v), Err(ParseError::SyntaxError { position: 2, .. })));
    }

    #[test]
    fn rational_functions() {
        let (n, d) = parse_rational_function("y/x", &Vars::xy()).unwrap();
        assert_eq!((n, d), (xy("y"), xy("x")));
        let (n, d) = parse_rational_function("(x+1)/(x^2)", &Vars::xy()).unwrap();
        assert_eq!((n, d), (xy("x+1"), xy("x^2")));
        let (n, d) = parse_rational_function("1/2*x", &Vars::xy()).unwrap();
        assert_eq!((n, d), (xy("1/2*x"), xy("1")));
        assert!(matches!(
            parse_rational_function("y/(x-x)", &Vars::xy()),
            Err(ParseError::SyntaxError { position: 2, .. })
        ));
    }

    #[test]
    fn form_shapes() {
        let f = |s: &str| parse_form_coefficients(s).unwrap();
        assert_eq!(f("(y) dx - (x) dy"), (xy("y"), xy("-x")));
        assert_eq!(f("dx"), (xy("1"), xy("0")));
        assert_eq!(f("-(x) dy"), (xy("0"), xy("-x")));
        assert_eq!(f("dx + dy"), (xy("1"), xy("1")));
        assert_eq!(f("2*dx + (x)*dy"), (xy("2"), xy("x")));
        assert!(parse_form_coefficients("(x) dz").is_err());
        assert!(parse_form_coefficients("(x) dx +").is_err());
    }
}
