//! Input grammar for ℓ-weights given as tuples of polynomials over
//! `F_p[g][u]`. See `docs/grammar.ebnf`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::galois::{FieldElem, FieldTower};

pub const GRAMMAR: &str = "\
lweight = \"[\" expr { \",\" expr } \"]\" ;
expr    = [ \"+\" | \"-\" ] term { ( \"+\" | \"-\" ) term } ;
term    = factor { [ \"*\" ] factor } ;
factor  = primary [ \"^\" integer ] ;
primary = integer | \"g\" | \"u\" | \"(\" expr \")\" ;";

/// A polynomial in `g` and `u` with coefficients reduced mod `p`, keyed by
/// `(u exponent, g exponent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    p: u32,
    terms: BTreeMap<(u32, u32), u32>,
}

impl BiPoly {
    fn constant(p: u32, c: i64) -> Self {
        let mut out = BiPoly {
            p,
            terms: BTreeMap::new(),
        };
        out.add_term((0, 0), c);
        out
    }

    fn var(p: u32, key: (u32, u32)) -> Self {
        let mut out = BiPoly {
            p,
            terms: BTreeMap::new(),
        };
        out.add_term(key, 1);
        out
    }

    fn add_term(&mut self, key: (u32, u32), c: i64) {
        let c = c.rem_euclid(self.p as i64) as u32;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(key).or_insert(0);
        *entry = (*entry + c) % self.p;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    fn add(mut self, other: &BiPoly, sign: i64) -> Self {
        for (k, c) in &other.terms {
            self.add_term(*k, sign * *c as i64);
        }
        self
    }

    fn mul(&self, other: &BiPoly) -> Self {
        let mut out = BiPoly::constant(self.p, 0);
        for ((u1, g1), c1) in &self.terms {
            for ((u2, g2), c2) in &other.terms {
                out.add_term((u1 + u2, g1 + g2), *c1 as i64 * *c2 as i64);
            }
        }
        out
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::constant(self.p, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn uses_generator(&self) -> bool {
        self.terms.keys().any(|(_, g)| *g > 0)
    }

    /// Coefficients in `u`, low to high, when no `g` occurs.
    pub fn prime_field_coeffs(&self) -> Vec<u32> {
        let deg = self.terms.keys().map(|(u, _)| *u).max().unwrap_or(0);
        let mut out = vec![0; deg as usize + 1];
        for ((u, _), c) in &self.terms {
            out[*u as usize] = *c;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Coefficients in `u` evaluated in the tower, low to high.
    pub fn to_field(&self, tower: &FieldTower) -> Vec<FieldElem> {
        let deg = self.terms.keys().map(|(u, _)| *u).max().unwrap_or(0);
        let mut out = vec![FieldElem::ZERO; deg as usize + 1];
        let g = tower.generator();
        for ((u, ge), c) in &self.terms {
            let term = tower.mul(tower.from_int(*c as i64), tower.pow(g, *ge as u64));
            out[*u as usize] = tower.add(out[*u as usize], term);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    G,
    U,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("integer too large at {start}")))?;
                out.push((start, Tok::Int(n)));
                continue;
            }
            'g' => Tok::G,
            'u' => Tok::U,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            _ => return Err(Error::Parse(format!("unexpected character '{c}' at {i}"))),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    p: u32,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(i, _)| *i).unwrap_or(self.len)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {t:?} at {}", self.offset())))
        }
    }

    fn lweight(&mut self) -> Result<Vec<BiPoly>> {
        self.expect(Tok::LBracket)?;
        let mut coords = vec![self.expr()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            coords.push(self.expr()?);
        }
        self.expect(Tok::RBracket)?;
        if self.pos != self.toks.len() {
            return Err(Error::Parse(format!("trailing input at {}", self.offset())));
        }
        Ok(coords)
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = -1;
            }
            _ => {}
        }
        let mut acc = BiPoly::constant(self.p, 0).add(&self.term()?, sign);
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => break,
            };
            self.pos += 1;
            acc = acc.add(&self.term()?, sign);
        }
        Ok(acc)
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_) | Tok::G | Tok::U | Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else if !self.starts_primary() {
                break;
            }
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) if e <= 4096 => {
                    self.pos += 1;
                    return Ok(base.pow(e as u32));
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "expected exponent (at most 4096) at {}",
                        self.offset()
                    )))
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<BiPoly> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(BiPoly::constant(self.p, (n % self.p as u64) as i64))
            }
            Some(Tok::G) => {
                self.pos += 1;
                Ok(BiPoly::var(self.p, (0, 1)))
            }
            Some(Tok::U) => {
                self.pos += 1;
                Ok(BiPoly::var(self.p, (1, 0)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(Error::Parse(format!("expected a term at {}", self.offset()))),
        }
    }
}

/// Parses `[(1+g*u), (1+u^2)]` into one polynomial per coordinate.
pub fn parse_lweight_polys(s: &str, p: u32) -> Result<Vec<BiPoly>> {
    let toks = tokenize(s)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        p,
        len: s.len(),
    };
    parser.lweight()
}

/// Parses a field element written as a polynomial in `g`.
pub fn parse_field_elem(s: &str, tower: &FieldTower) -> Result<FieldElem> {
    let toks = tokenize(s)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        p: tower.p(),
        len: s.len(),
    };
    let e = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::Parse(format!("trailing input at {}", parser.offset())));
    }
    if e.terms.keys().any(|(u, _)| *u > 0) {
        return Err(Error::Parse("field elements cannot contain u".into()));
    }
    Ok(e.to_field(tower)[0])
}

/// Parses a field spec `p^k` (or a bare prime).
pub fn parse_field_spec(s: &str) -> Result<(u32, u32)> {
    let (p, k) = match s.split_once('^') {
        Some((p, k)) => (p.trim(), k.trim()),
        None => (s.trim(), "1"),
    };
    let p = p
        .parse()
        .map_err(|_| Error::Parse(format!("bad field spec '{s}', expected p^k")))?;
    let k = k
        .parse()
        .map_err(|_| Error::Parse(format!("bad field spec '{s}', expected p^k")))?;
    Ok((p, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let t = FieldTower::new(2, 1, 2).unwrap();
        let polys = parse_lweight_polys("[(1+g*u)]", 2).unwrap();
        assert_eq!(polys.len(), 1);
        assert_eq!(polys[0].to_field(&t), vec![t.one(), t.generator()]);
        let polys = parse_lweight_polys("[1 + g^2 u, (1+u)^2]", 2).unwrap();
        assert_eq!(
            polys[0].to_field(&t),
            vec![t.one(), t.mul(t.generator(), t.generator())]
        );
        assert_eq!(polys[1].prime_field_coeffs(), vec![1, 0, 1]);
        assert!(!polys[1].uses_generator());
        let polys = parse_lweight_polys("[1-2u+u^2]", 3).unwrap();
        assert_eq!(polys[0].prime_field_coeffs(), vec![1, 1, 1]);
        let polys = parse_lweight_polys("[-(u-1)]", 5).unwrap();
        assert_eq!(polys[0].prime_field_coeffs(), vec![1, 4]);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "[", "[1+]", "(1+u)", "[1+u", "[1+u]]", "[1+x]", "[u^]", "[1,,u]"] {
            assert!(parse_lweight_polys(bad, 2).is_err(), "{bad}");
        }
    }

    #[test]
    fn elements_and_specs() {
        let t = FieldTower::new(2, 1, 2).unwrap();
        assert_eq!(parse_field_elem("g+1", &t).unwrap(), t.add(t.generator(), t.one()));
        assert!(parse_field_elem("u", &t).is_err());
        assert_eq!(parse_field_spec("2^3").unwrap(), (2, 3));
        assert_eq!(parse_field_spec("5").unwrap(), (5, 1));
        assert!(parse_field_spec("x").is_err());
    }
}
