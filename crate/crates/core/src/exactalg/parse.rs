//! A small reader for polynomial expressions written the way they are
//! typeset by hand: `14 b_1^4 - 21 b_1^2 b_2 + (x_1^2 - x_2)(2 b_1^2 - b_2)`.
//!
//! Juxtaposition multiplies, `*` is optional, `^` takes a non-negative
//! integer (optionally braced), `p/q` is a rational literal and a
//! subscript may be braced (`x_{10}`, `a_{1,2}`).

use std::sync::Arc;

use num_bigint::BigInt;

use super::gens::GenTable;
use super::poly::GradedPoly;
use super::{Error, Q};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn lex(s: &str) -> Result<Vec<Tok>, Error> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let bad = |msg: String| Error::Parse(msg);
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '\u{00b7}' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '{' => {
                out.push(Tok::LBrace);
                i += 1
            }
            '}' => {
                out.push(Tok::RBrace);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().map_err(|_| bad(format!("bad number {text}")))?));
            }
            a if a.is_ascii_alphabetic() || a == '\\' => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '\'') {
                    i += 1;
                }
                let mut name: String = chars[start..i].iter().collect();
                if i < chars.len() && chars[i] == '_' {
                    i += 1;
                    if i < chars.len() && chars[i] == '{' {
                        let close = chars[i..]
                            .iter()
                            .position(|&c| c == '}')
                            .ok_or_else(|| bad(format!("unclosed subscript after {name}")))?;
                        let sub: String = chars[i + 1..i + close].iter().filter(|c| !c.is_whitespace()).collect();
                        i += close + 1;
                        if sub.chars().all(|c| c.is_ascii_digit()) {
                            name = format!("{name}_{sub}");
                        } else {
                            name = format!("{name}_{{{sub}}}");
                        }
                    } else {
                        let s2 = i;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                        if s2 == i {
                            return Err(bad(format!("empty subscript after {name}")));
                        }
                        let sub: String = chars[s2..i].iter().collect();
                        name = format!("{name}_{sub}");
                    }
                }
                out.push(Tok::Ident(name.trim_start_matches('\\').to_string()));
            }
            other => return Err(bad(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    table: &'a Arc<GenTable>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), Error> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<GradedPoly, Error> {
        let mut acc = GradedPoly::zero(self.table);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            let t = if sign < 0 { t.neg() } else { t };
            acc = add_unchecked(&acc, &t);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GradedPoly, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<GradedPoly, Error> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let braced = self.peek() == Some(&Tok::LBrace);
            if braced {
                self.pos += 1;
            }
            let e = match self.next() {
                Some(Tok::Num(n)) => u32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?,
                t => return Err(Error::Parse(format!("expected exponent, found {t:?}"))),
            };
            if braced {
                self.expect(Tok::RBrace)?;
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GradedPoly, Error> {
        match self.next() {
            Some(Tok::Num(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            Ok(GradedPoly::constant(self.table, Q::new(n, d)))
                        }
                        t => Err(Error::Parse(format!("expected denominator, found {t:?}"))),
                    }
                } else {
                    Ok(GradedPoly::constant(self.table, Q::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                let v = self.table.lookup(&name).ok_or(Error::UnknownGenerator(name))?;
                Ok(GradedPoly::var(self.table, v))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

fn add_unchecked(a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
    GradedPoly::from_terms(a.table(), a.terms().chain(b.terms()).map(|(m, c)| (m.clone(), c.clone())))
}

/// Parses an expression over `table`. The result is flagged homogeneous
/// when every term has the same weight.
pub fn parse_poly(table: &Arc<GenTable>, src: &str) -> Result<GradedPoly, Error> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, table };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(GradedPoly::from_terms(table, out.terms().map(|(m, c)| (m.clone(), c.clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::gens::{plain_table, table_of, B, X};
    use crate::exactalg::poly::q;

    #[test]
    fn reads_typeset_expressions() {
        let t = table_of(&[(X, 4, &|n| n as u32), (B, 4, &|n| n as u32)]);
        let p = parse_poly(&t, "(x_1^2 + x_1 b_1 - x_2) (2 b_1^2 - b_2)").unwrap();
        let x1 = GradedPoly::gen(&t, "x_1");
        let x2 = GradedPoly::gen(&t, "x_2");
        let b1 = GradedPoly::gen(&t, "b_1");
        let b2 = GradedPoly::gen(&t, "b_2");
        let want = (x1.pow(2) + &x1 * &b1 - x2) * (b1.pow(2).scale_int(2) - b2);
        assert_eq!(p, want);
        assert_eq!(p.declared_weight(), Some(4));
    }

    #[test]
    fn rationals_braces_and_unary_minus() {
        let t = plain_table(X, 12);
        let p = parse_poly(&t, "-1/2 x_1 + x_{10}^{2} - x_1").unwrap();
        assert_eq!(p.coeff(&crate::exactalg::Monomial::var(&t, 0, 1)), Q::new(BigInt::from(-3), BigInt::from(2)));
        assert_eq!(p.declared_weight(), None);
        assert_eq!(parse_poly(&t, "3*x_2*x_1").unwrap(), parse_poly(&t, "3 x_1 x_2").unwrap());
        assert_eq!(parse_poly(&t, "0").unwrap(), GradedPoly::zero(&t));
        assert_eq!(parse_poly(&t, "2").unwrap().constant_term(), q(2));
    }

    #[test]
    fn rejects_garbage() {
        let t = plain_table(X, 2);
        assert!(parse_poly(&t, "x_3").is_err());
        assert!(parse_poly(&t, "x_1 +").is_err());
        assert!(parse_poly(&t, "(x_1").is_err());
        assert!(parse_poly(&t, "x_1 $").is_err());
    }
}
