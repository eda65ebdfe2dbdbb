//! Recursive-descent parser for polynomial expressions over declared variables.
//!
//! ```text
//! expr   := [+|-] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := int ['/' int] | var ['^' nat] | '(' expr ')' ['^' nat]
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::monomial::MonomialIdeal;
use crate::poly::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Spanned {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Parse {
            line: l0,
            column: c0,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    names: &'a [String],
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|s| (s.line, s.column)).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Parse {
            line,
            column,
            message: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
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

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('('))
        )
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') || self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if !self.eat('^') {
            return Ok(1);
        }
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                let k: u32 = match u32::try_from(k) {
                    Ok(k) => k,
                    Err(_) => return self.err("exponent too large"),
                };
                self.pos += 1;
                Ok(k)
            }
            _ => self.err("expected a natural number exponent"),
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Int(p)) => {
                self.pos += 1;
                let mut q = BigInt::one();
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            q = d;
                        }
                        Some(Tok::Int(_)) => return self.err("zero denominator"),
                        _ => return self.err("expected an integer denominator"),
                    }
                }
                Ok(Polynomial::constant(self.n(), Rational::new(p, q)))
            }
            Some(Tok::Ident(name)) => {
                let Some(i) = self.names.iter().position(|v| *v == name) else {
                    return Err(Error::UnknownVariable(name));
                };
                self.pos += 1;
                let k = self.exponent()?;
                let mut e = vec![0; self.n()];
                e[i] = k;
                Ok(Polynomial::monomial(self.n(), e, Rational::one()))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                let k = self.exponent()?;
                Ok(inner.pow(k))
            }
            Some(t) => self.err(format!("unexpected token {}", describe(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(k) => format!("`{k}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

/// Parse an expression over the variables `names`.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial> {
    let toks = lex(src)?;
    let lines: Vec<&str> = src.split('\n').collect();
    let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        let t = p.toks[p.pos].tok.clone();
        return p.err(format!("unexpected token {}", describe(&t)));
    }
    Ok(out)
}

/// Parse a comma-separated list of monomials such as `x^2, y^2*z`.
pub fn parse_monomial_list(src: &str, names: &[String]) -> Result<MonomialIdeal> {
    let mut gens: Vec<LatticeVector> = Vec::new();
    for part in src.split(',') {
        let p = parse_polynomial(part, names)?;
        if p.len() != 1 {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("`{}` is not a monomial", part.trim()),
            });
        }
        let (e, _) = p.terms().next().expect("one term");
        gens.push(e.iter().map(|&x| x as i64).collect());
    }
    Ok(MonomialIdeal::new(names.len(), &gens))
}
