//! Text syntax for generator words.
//!
//! ```text
//! word    := item*
//! item    := primary ('^' integer)?
//! primary := "rot" | "rot'" | "p:" cycles | "p@" symbol ":" cycles
//!          | '[' word ',' word ']' | '{' word '}'
//! ```
//!
//! `[u, v]` expands to `u⁻¹ v⁻¹ u v`; `{w}^-1` to the inverse of `w`.
//! Cycle notation is 1-based, e.g. `p:(1 2 3)(4 5)`. Permutations must be even.

use thiserror::Error;

use super::word::{BroomToken, Letter, Word, XToken};
use crate::perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("word syntax error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

trait FromAtom: Letter {
    fn rot() -> Self;
    fn perm(p: Perm, at: Option<u8>, pos: usize) -> Result<Self, ParseError>;
}

impl FromAtom for BroomToken {
    fn rot() -> Self {
        BroomToken::Rot
    }

    fn perm(p: Perm, at: Option<u8>, pos: usize) -> Result<Self, ParseError> {
        match at {
            None => Ok(BroomToken::Perm(p)),
            Some(_) => Err(ParseError {
                pos,
                msg: "located generator p@j is not allowed in a broom word".into(),
            }),
        }
    }
}

impl FromAtom for XToken {
    fn rot() -> Self {
        XToken::Rot
    }

    fn perm(p: Perm, at: Option<u8>, pos: usize) -> Result<Self, ParseError> {
        match at {
            Some(j) => Ok(XToken::PermAt(p, j)),
            None => Err(ParseError {
                pos,
                msg: "generator needs a control symbol: p@j:(..)".into(),
            }),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    control: Option<u8>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn word<T: FromAtom>(&mut self) -> Result<Word<T>, ParseError> {
        let mut out = Word::empty();
        loop {
            self.skip_ws();
            match self.rest().chars().next() {
                None | Some(',') | Some(']') | Some('}') => return Ok(out),
                _ => out = out * self.item()?,
            }
        }
    }

    fn item<T: FromAtom>(&mut self) -> Result<Word<T>, ParseError> {
        let base = self.primary()?;
        if self.eat("^") {
            let start = self.pos;
            let neg = self.eat("-");
            let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
            if digits == 0 {
                self.pos = start;
                return self.err("expected an integer exponent");
            }
            let n: i64 = self.rest()[..digits].parse().map_err(|_| ParseError {
                pos: start,
                msg: "exponent out of range".into(),
            })?;
            self.pos += digits;
            return Ok(base.pow(if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn primary<T: FromAtom>(&mut self) -> Result<Word<T>, ParseError> {
        if self.eat("[") {
            let a = self.word()?;
            self.skip_ws();
            if !self.eat(",") {
                return self.err("expected ',' in commutator");
            }
            let b = self.word()?;
            self.skip_ws();
            if !self.eat("]") {
                return self.err("expected ']'");
            }
            return Ok(Word::commutator(&a, &b));
        }
        if self.eat("{") {
            let w = self.word()?;
            self.skip_ws();
            if !self.eat("}") {
                return self.err("expected '}'");
            }
            return Ok(w);
        }
        if self.eat("rot'") {
            return Ok(Word::letter(T::rot().inverse()));
        }
        if self.eat("rot") {
            return Ok(Word::letter(T::rot()));
        }
        let start = self.pos;
        if self.eat("p") {
            let at = if self.eat("@") {
                let len = self
                    .rest()
                    .chars()
                    .take_while(char::is_ascii_alphanumeric)
                    .count();
                if len == 0 {
                    return self.err("expected a control symbol after '@'");
                }
                let sym: u8 = match self.rest()[..len].parse() {
                    Ok(v) => v,
                    Err(_) => return self.err("control symbols are numbered 0, 1, 2, .."),
                };
                if let Some(size) = self.control {
                    if sym >= size {
                        return self.err(format!("control symbol {sym} outside 0..{size}"));
                    }
                }
                self.pos += len;
                Some(sym)
            } else {
                None
            };
            if !self.eat(":") {
                return self.err("expected ':' before cycle notation");
            }
            let perm = self.cycles()?;
            return Ok(Word::letter(T::perm(perm, at, start)?));
        }
        self.err("unexpected input")
    }

    fn cycles(&mut self) -> Result<Perm, ParseError> {
        let start = self.pos;
        let mut end = self.pos;
        loop {
            let rest = &self.src[end..];
            let trimmed = rest.trim_start();
            if !trimmed.starts_with('(') {
                break;
            }
            let open = end + (rest.len() - trimmed.len());
            match self.src[open..].find(')') {
                Some(close) => end = open + close + 1,
                None => return self.err("unbalanced parenthesis"),
            }
        }
        if end == start {
            return self.err("expected cycle notation");
        }
        let perm = Perm::parse_cycles(&self.src[start..end], 5).map_err(|e| ParseError {
            pos: start,
            msg: e.to_string(),
        })?;
        if !perm.is_even() {
            return Err(ParseError {
                pos: start,
                msg: format!("{perm} is odd; generators must lie in A5"),
            });
        }
        self.pos = end;
        Ok(perm)
    }
}

fn parse<T: FromAtom>(text: &str, control: Option<u8>) -> Result<Word<T>, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        control,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("trailing input");
    }
    Ok(w)
}

pub fn parse_broom(text: &str) -> Result<Word<BroomToken>, ParseError> {
    parse(text, None)
}

/// Parses a word over `PermAt`/`Rot` generators; symbols must be below `control_size`.
pub fn parse_xbroom(text: &str, control_size: u8) -> Result<Word<XToken>, ParseError> {
    parse(text, Some(control_size))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Perm {
        Perm::parse_cycles(s, 5).unwrap()
    }

    #[test]
    fn basic_tokens() {
        let w = parse_broom("rot p:(1 2 3) rot'").unwrap();
        assert_eq!(
            w.letters(),
            &[
                BroomToken::Rot,
                BroomToken::Perm(perm("(1 2 3)")),
                BroomToken::RotInv
            ]
        );
        assert!(parse_broom("").unwrap().is_empty());
        assert_eq!(parse_broom("p:(1 2)(3 4)").unwrap().len(), 1);
        assert_eq!(parse_broom("p: (1 2) (3 4) rot").unwrap().len(), 2);
    }

    #[test]
    fn commutators_and_powers() {
        let w = parse_broom("[rot, p:(1 2 3)]").unwrap();
        assert_eq!(
            w.letters(),
            &[
                BroomToken::RotInv,
                BroomToken::Perm(perm("(1 3 2)")),
                BroomToken::Rot,
                BroomToken::Perm(perm("(1 2 3)")),
            ]
        );
        assert_eq!(parse_broom("[rot, p:(1 2 3)]^30").unwrap().len(), 120);
        assert_eq!(
            parse_broom("{rot p:(1 2 3)}^-1").unwrap().letters(),
            &[BroomToken::Perm(perm("(1 3 2)")), BroomToken::RotInv]
        );
        assert_eq!(parse_broom("[{rot rot}, [rot, rot']]").unwrap().len(), 12);
    }

    #[test]
    fn located_tokens() {
        let w = parse_xbroom("p@2:(1 2 3) rot", 3).unwrap();
        assert_eq!(
            w.letters(),
            &[XToken::PermAt(perm("(1 2 3)"), 2), XToken::Rot]
        );
        assert!(parse_xbroom("p@3:(1 2 3)", 3).is_err());
        assert!(parse_xbroom("p:(1 2 3)", 3).is_err());
        assert!(parse_broom("p@0:(1 2 3)").is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_broom("p:(1 2)").is_err(), "odd permutation");
        assert!(parse_broom("rot x").is_err());
        assert!(parse_broom("[rot rot]").is_err());
        assert!(parse_broom("rot^").is_err());
        assert!(parse_broom("p:(1 2 3").is_err());
        assert!(parse_broom("{rot").is_err());
    }
}
