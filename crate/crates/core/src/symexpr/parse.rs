//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := rational | ident | '(' expr ')'
//! ```
//!
//! A leading `-` is accepted before any factor. `3/4` parses as the
//! division of two integer literals, which yields the same exact value as
//! reading it as one rational literal.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::Polynomial;
use super::rational::RationalFunction;
use super::vars::VarSet;
use super::SymError;

const MAX_EXPONENT: u32 = 512;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, SymError> {
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
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(SymError::Syntax {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, SymError> {
        Err(SymError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<RationalFunction, SymError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, SymError> {
        let mut acc = self.signed_factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.signed_factor()?;
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.signed_factor()?;
                acc = acc.checked_div(&d).map_err(|_| SymError::Syntax {
                    pos,
                    msg: "division by the zero polynomial".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed_factor(&mut self) -> Result<RationalFunction, SymError> {
        if self.eat('-') {
            return Ok(-self.signed_factor()?);
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<RationalFunction, SymError> {
        let base = self.base()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e: u32 = match u32::try_from(&n) {
                        Ok(e) if e <= MAX_EXPONENT => e,
                        _ => return self.syntax(format!("exponent {n} too large")),
                    };
                    self.at += 1;
                    Ok(base.pow(e))
                }
                _ => self.syntax("expected non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<RationalFunction, SymError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(RationalFunction::constant(self.vars, BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match self.vars.index_of(&name) {
                    Some(i) => Ok(RationalFunction::var(self.vars, i)),
                    None => Err(SymError::UnknownVariable { name, pos }),
                }
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.syntax("expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => self.syntax(format!("unexpected '{c}'")),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` over `vars` into a normalized rational function.
pub fn parse_expr(text: &str, vars: &VarSet) -> Result<RationalFunction, SymError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        vars,
    };
    let f = p.expr()?;
    if p.at != p.toks.len() {
        return p.syntax("trailing input");
    }
    Ok(f)
}

pub fn parse_polynomial(text: &str, vars: &VarSet) -> Result<Polynomial, SymError> {
    let f = parse_expr(text, vars)?;
    match f.as_polynomial() {
        Some(p) => Ok(p.clone()),
        None => Err(SymError::NotPolynomial),
    }
}

/// Parses a bare rational constant such as `-3/4` or `5`.
pub fn parse_rational(text: &str) -> Result<BigRational, SymError> {
    let empty = VarSet::new(Vec::<String>::new());
    parse_expr(text, &empty)?
        .constant_value()
        .ok_or(SymError::NotPolynomial)
}
