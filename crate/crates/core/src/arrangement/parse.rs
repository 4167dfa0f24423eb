//! JSON input documents and the factored-polynomial shorthand.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Arrangement;
use crate::error::{Error, Result};
use crate::exactalg::{parse_rational, NumRepr, Rational};

/// The on-disk form of an arrangement. Exactly one of `lines` and `factored`
/// must be present; `expected` is carried through untouched for fixtures.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ArrangementDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<Vec<NumRepr>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factored: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<serde_json::Value>,
}

impl ArrangementDocument {
    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let rows = match (&self.lines, &self.factored) {
            (Some(lines), None) => lines
                .iter()
                .map(|row| {
                    if row.len() != 3 {
                        return Err(Error::Parse(format!("a line needs 3 coefficients, got {}", row.len())));
                    }
                    Ok([row[0].to_rational()?, row[1].to_rational()?, row[2].to_rational()?])
                })
                .collect::<Result<Vec<_>>>()?,
            (None, Some(f)) => parse_factored(f)?,
            (Some(_), Some(_)) => return Err(Error::Parse("give either \"lines\" or \"factored\", not both".into())),
            (None, None) => return Err(Error::Parse("missing \"lines\" or \"factored\"".into())),
        };
        Arrangement::new(self.name.clone(), rows)
    }
}

/// Parses a JSON document into a validated arrangement.
pub fn parse_arrangement(json: &str) -> Result<Arrangement> {
    crate::coverage::hit(crate::coverage::Op::ParseArrangement);
    let doc: ArrangementDocument =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("invalid arrangement document: {e}")))?;
    doc.to_arrangement()
}

/// Splits a product such as `-2xyz(x+4y)^2(y - z/3)` into its linear factors,
/// one row per factor occurrence. Scalars are dropped.
pub fn parse_factored(text: &str) -> Result<Vec<[Rational; 3]>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Cursor { chars: &chars, pos: 0 };
    let mut rows = Vec::new();
    if matches!(p.peek(), Some('+' | '-')) {
        p.pos += 1;
    }
    if p.peek().is_some_and(|c| c.is_ascii_digit()) {
        let c = p.number()?;
        if c.is_zero() {
            return Err(Error::Parse("zero scalar in factored polynomial".into()));
        }
    }
    while let Some(c) = p.peek() {
        let form = match c {
            '*' => {
                p.pos += 1;
                continue;
            }
            '(' => {
                p.pos += 1;
                let f = p.linear_form()?;
                p.expect(')')?;
                f
            }
            'x' | 'y' | 'z' => {
                p.pos += 1;
                unit(var_index(c))
            }
            other => return Err(Error::Parse(format!("unexpected {other:?} in factored polynomial"))),
        };
        let mut power = 1;
        if p.peek() == Some('^') {
            p.pos += 1;
            power = p.integer()?;
        }
        for _ in 0..power {
            rows.push(form.clone());
        }
    }
    if rows.is_empty() {
        return Err(Error::Parse("factored polynomial has no linear factors".into()));
    }
    Ok(rows)
}

fn var_index(c: char) -> usize {
    match c {
        'x' => 0,
        'y' => 1,
        _ => 2,
    }
}

fn unit(i: usize) -> [Rational; 3] {
    let mut r = [Rational::zero(), Rational::zero(), Rational::zero()];
    r[i] = Rational::one();
    r
}

struct Cursor<'a> {
    chars: &'a [char],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?} at position {}", self.pos)))
        }
    }

    fn integer(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("expected an exponent at position {start}")))
    }

    /// An integer or `p/q`.
    fn number(&mut self) -> Result<Rational> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '/') {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        parse_rational(&s)
    }

    /// `[+-] [coef] [*] var` terms up to the closing parenthesis.
    fn linear_form(&mut self) -> Result<[Rational; 3]> {
        let mut row = [Rational::zero(), Rational::zero(), Rational::zero()];
        let mut first = true;
        loop {
            let mut sign = Rational::one();
            match self.peek() {
                Some(')') | None if !first => return Ok(row),
                Some('+') => self.pos += 1,
                Some('-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                _ if first => {}
                Some(c) => return Err(Error::Parse(format!("unexpected {c:?} in linear form"))),
                None => unreachable!(),
            }
            first = false;
            let coef = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let c = self.number()?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                }
                c
            } else {
                Rational::one()
            };
            match self.peek() {
                Some(v @ ('x' | 'y' | 'z')) => {
                    self.pos += 1;
                    row[var_index(v)] += sign * coef;
                }
                _ => return Err(Error::Parse("factors must be linear forms without constant term".into())),
            }
        }
    }
}
