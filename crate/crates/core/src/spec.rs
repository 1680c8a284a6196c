//! Textual group specs (`D8`, `C2xC4`, `E3^2`) and subgroup generator words
//! (`a^2,a*b`).
//!
//! ```text
//! spec := term { "x" term }
//! term := "C" int | "D" int | "Q" int | "S" int | "A" int | "E" int "^" int
//! ```
//!
//! Whitespace is ignored everywhere.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::families::{build_named, direct_product, Family};
use crate::group::{FiniteGroup, GroupWord};

/// A parsed group spec: a direct product of one or more named families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    source: String,
    factors: Vec<Family>,
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Cursor::new(s);
        let mut factors = vec![p.term()?];
        while p.peek().is_some() {
            p.expect('x')?;
            factors.push(p.term()?);
        }
        Ok(GroupSpec {
            source: s.to_string(),
            factors,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn factors(&self) -> &[Family] {
        &self.factors
    }

    /// Canonical text, e.g. `C2xC4`.
    pub fn render(&self) -> String {
        self.factors
            .iter()
            .map(Family::to_string)
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn order(&self) -> Result<usize> {
        self.factors.iter().try_fold(1usize, |acc, f| {
            acc.checked_mul(f.order()?)
                .ok_or_else(|| Error::Limit(format!("{} is too large", self.render())))
        })
    }

    /// Constructs the group, refusing orders above `max_order`.
    pub fn build(&self, max_order: usize) -> Result<FiniteGroup> {
        let order = self.order()?;
        if order > max_order {
            return Err(Error::Limit(format!(
                "{} has order {order}, above the configured maximum {max_order}",
                self.render()
            )));
        }
        let mut iter = self.factors.iter();
        let first = build_named(iter.next().expect("at least one factor"), max_order)?;
        iter.try_fold(first, |acc, f| {
            direct_product(&acc, &build_named(f, max_order)?, max_order)
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

/// Parses comma-separated words such as `a^2, a*b, b^-1`. The word `1`
/// denotes the identity.
pub fn parse_words(s: &str) -> Result<Vec<GroupWord>> {
    let mut p = Cursor::new(s);
    let mut words = Vec::new();
    if p.peek().is_none() {
        return Ok(words);
    }
    loop {
        words.push(p.word()?);
        match p.peek() {
            None => break,
            Some(_) => p.expect(',')?,
        }
    }
    Ok(words)
}

/// Character cursor that skips whitespace and tracks byte positions.
struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.error(format!("expected {want:?}, found {c:?}")),
            None => self.error(format!("expected {want:?}, found end of input")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let negative = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        let mut value: i64 = 0;
        while let Some(d) = self.src[self.pos..]
            .chars()
            .next()
            .and_then(|c| c.to_digit(10))
        {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as i64))
                .ok_or(Error::Syntax {
                    position: start,
                    message: "integer too large".into(),
                })?;
            self.pos += 1;
            self.skip_ws();
        }
        if self.pos == start {
            return self.error("expected an integer");
        }
        Ok(if negative { -value } else { value })
    }

    fn unsigned(&mut self) -> Result<usize> {
        let at = self.pos;
        let v = self.int()?;
        usize::try_from(v).map_err(|_| Error::Syntax {
            position: at,
            message: "expected a nonnegative integer".into(),
        })
    }

    fn term(&mut self) -> Result<Family> {
        self.skip_ws();
        let at = self.pos;
        let family = match self.bump() {
            Some('C') => Family::Cyclic(self.unsigned()?),
            Some('D') => Family::Dihedral(self.unsigned()?),
            Some('Q') => Family::Quaternion(self.unsigned()?),
            Some('S') => Family::Symmetric(self.unsigned()?),
            Some('A') => Family::Alternating(self.unsigned()?),
            Some('E') => {
                let p = self.unsigned()?;
                self.expect('^')?;
                Family::ElementaryAbelian {
                    p,
                    k: self.unsigned()?,
                }
            }
            Some(c) => {
                self.pos = at;
                return self.error(format!("unknown group family {c:?}"));
            }
            None => return self.error("expected a group family"),
        };
        family.order()?;
        Ok(family)
    }

    fn word(&mut self) -> Result<GroupWord> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            match self.peek() {
                Some('1') => {
                    self.bump();
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let mut label = String::new();
                    while let Some(c) = self.src[self.pos..].chars().next() {
                        if !c.is_ascii_alphanumeric() {
                            break;
                        }
                        label.push(c);
                        self.pos += 1;
                    }
                    let exp = if self.peek() == Some('^') {
                        self.bump();
                        self.int()?
                    } else {
                        1
                    };
                    factors.push((label, exp));
                }
                _ => {
                    self.pos = at;
                    return self.error("expected a generator label");
                }
            }
            if self.peek() == Some('*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok(GroupWord(factors))
    }
}
