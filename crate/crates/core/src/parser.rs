//! Parser for inequalities written as sums of entropies.
//!
//! ```text
//! inequality := sum (">=" | "≥") sum
//! sum        := ["+" | "-"] term { ("+" | "-") term }
//! term       := [number ["*"]] atom | number
//! atom       := "S(" parties ")" | "I(" parties ":" parties ["|" parties] ")"
//! ```
//!
//! `I(X:Y)` expands to `S(X) + S(Y) - S(XY)` and `I(X:Y|Z)` to
//! `S(XZ) + S(YZ) - S(XYZ) - S(Z)`. A subsystem containing the purifier `O`
//! is replaced by its complement.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::inequality::Inequality;
use crate::rational::{parse_rational, Rational};
use crate::subsystem::{check_party_count, full_mask, Subsystem};

pub fn parse_inequality(text: &str, n: usize) -> Result<Inequality> {
    check_party_count(n)?;
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, text, n };
    let mut coeffs = BTreeMap::new();
    p.sum(&mut coeffs, Rational::from_integer(1.into()))?;
    p.relation()?;
    p.sum(&mut coeffs, Rational::from_integer((-1).into()))?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    coeffs.retain(|_, c: &mut Rational| !c.is_zero());
    if coeffs.is_empty() {
        return Err(Error::input("trivial inequality: all terms cancel"));
    }
    Inequality::from_coefficients(n, &coeffs)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
    n: usize,
}

type Coeffs = BTreeMap<Subsystem, Rational>;

impl Parser<'_> {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |c| c.0)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.offset(), msg: msg.into() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn relation(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some('≥') => {
                self.pos += 1;
                Ok(())
            }
            Some('>') => {
                if self.chars.get(self.pos + 1).map(|c| c.1) == Some('=') {
                    self.pos += 2;
                    Ok(())
                } else {
                    Err(self.error("strict inequalities are not supported; use `>=`"))
                }
            }
            Some('<') | Some('≤') => Err(self.error("only `>=` inequalities are supported")),
            Some('=') => Err(self.error("equalities are not supported; use `>=`")),
            _ => Err(self.error("expected `>=`")),
        }
    }

    fn sum(&mut self, coeffs: &mut Coeffs, side: Rational) -> Result<()> {
        let mut sign = Rational::from_integer(1.into());
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        loop {
            self.term(coeffs, &(&side * &sign))?;
            if self.eat('+') {
                sign = Rational::from_integer(1.into());
            } else if self.eat('-') {
                sign = Rational::from_integer((-1).into());
            } else {
                return Ok(());
            }
        }
    }

    fn number(&mut self) -> Result<Option<Rational>> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.' || c == '/') {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        parse_rational(&s).map(Some).map_err(|_| Error::Syntax {
            pos: self.chars[start].0,
            msg: format!("invalid number `{s}`"),
        })
    }

    fn term(&mut self, coeffs: &mut Coeffs, scale: &Rational) -> Result<()> {
        let c = match self.number()? {
            Some(c) => {
                self.skip_ws();
                let star = self.eat('*');
                if !star && !matches!(self.peek(), Some('S') | Some('I')) {
                    // a bare constant; only zero is meaningful
                    if !c.is_zero() {
                        return Err(self.error("constant terms other than 0 are not allowed"));
                    }
                    return Ok(());
                }
                c
            }
            None => Rational::from_integer(1.into()),
        };
        let scale = scale * c;
        self.skip_ws();
        match self.peek() {
            Some('S') => {
                self.pos += 1;
                self.expect('(')?;
                let s = self.parties()?;
                self.expect(')')?;
                self.add(coeffs, s, &scale);
            }
            Some('I') => {
                self.pos += 1;
                self.expect('(')?;
                let x = self.parties()?;
                self.expect(':')?;
                let y = self.parties()?;
                let z = if self.eat('|') { self.parties()? } else { 0 };
                self.expect(')')?;
                self.add(coeffs, x | z, &scale);
                self.add(coeffs, y | z, &scale);
                self.add(coeffs, x | y | z, &-&scale);
                self.add(coeffs, z, &-&scale);
            }
            _ => return Err(self.error("expected `S(` or `I(`")),
        }
        Ok(())
    }

    /// Parties as a mask over `0..=n`, bit `n` being the purifier.
    fn parties(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == ' ') {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        if s.trim().is_empty() {
            return Err(self.error("expected party labels"));
        }
        let (sub, purifier) = Subsystem::parse_with_purifier(&s, self.n).map_err(|e| Error::Syntax {
            pos: self.chars[start].0,
            msg: e.to_string().trim_start_matches("invalid input: ").to_string(),
        })?;
        Ok(sub.0 | (purifier as u32) << self.n)
    }

    /// Adds `c * S(mask)`, replacing subsystems that contain the purifier by
    /// their complements and dropping empty or complete ones.
    fn add(&self, coeffs: &mut Coeffs, mask: u32, c: &Rational) {
        let n = self.n;
        let s = if mask >> n & 1 == 1 { full_mask(n) & !mask } else { mask };
        if s != 0 {
            *coeffs.entry(Subsystem(s)).or_insert_with(Rational::zero) += c;
        }
    }
}
