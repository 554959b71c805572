//! Recursive-descent parser for the MITL surface syntax.
//!
//! Grammar, loosest binding first:
//!   formula  := implied ((U | S) interval formula)?      right-associative
//!   implied  := orexp (('->' | '<->') implied)?          right-associative
//!   orexp    := andexp ('|' andexp)*                     left-associative
//!   andexp   := unary ('&' unary)*                       left-associative
//!   unary    := '!' unary | (F | G | P) interval unary | primary
//!   primary  := ident | '(' formula ')'
//!   interval := ('(' | '[') nat ',' (nat | 'inf') (')' | ']')
//!
//! The letters U, F, G, S, P are reserved operator names and cannot be atoms.
//! `|`, `->`, and `<->` are desugared into negation and conjunction.

use crate::formula::MitlFormula;
use crate::interval::{IntervalError, TimeInterval};
use thiserror::Error;

/// A syntax or interval error with the byte position where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    /// Human-readable description.
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(u64),
    LPar,
    RPar,
    LBrk,
    RBrk,
    Comma,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Iff,
    OpU,
    OpF,
    OpG,
    OpS,
    OpP,
    Eof,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '(' => {
                toks.push((Tok::LPar, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RPar, i));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBrk, i));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBrk, i));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            '!' => {
                toks.push((Tok::Bang, i));
                i += 1;
            }
            '&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            '|' => {
                toks.push((Tok::Pipe, i));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(ParseError::new(i, "expected '->' after '-'"));
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    toks.push((Tok::Iff, i));
                    i += 3;
                } else {
                    return Err(ParseError::new(i, "expected '<->' after '<'"));
                }
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                let n: u64 = text
                    .parse()
                    .map_err(|_| ParseError::new(start, format!("number too large: {}", text)))?;
                toks.push((Tok::Nat(n), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let text = &input[start..i];
                let tok = match text {
                    "U" => Tok::OpU,
                    "F" => Tok::OpF,
                    "G" => Tok::OpG,
                    "S" => Tok::OpS,
                    "P" => Tok::OpP,
                    _ => Tok::Ident(text.to_string()),
                };
                toks.push((tok, start));
            }
            _ => return Err(ParseError::new(i, format!("unexpected character '{}'", c))),
        }
    }
    toks.push((Tok::Eof, input.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::new(self.here(), format!("expected {}", what)))
        }
    }

    fn interval(&mut self) -> Result<TimeInterval, ParseError> {
        let open_pos = self.here();
        let lower_open = match self.bump() {
            Tok::LPar => true,
            Tok::LBrk => false,
            _ => return Err(ParseError::new(open_pos, "expected '(' or '[' to open an interval")),
        };
        let lower = match self.bump() {
            Tok::Nat(n) => n,
            _ => {
                return Err(ParseError::new(
                    open_pos,
                    "expected a natural number as the interval lower bound",
                ))
            }
        };
        self.expect(Tok::Comma, "',' between interval bounds")?;
        let upper_pos = self.here();
        let upper = match self.bump() {
            Tok::Nat(n) => Some(n),
            Tok::Ident(ref s) if s == "inf" => None,
            _ => {
                return Err(ParseError::new(
                    upper_pos,
                    "expected a natural number or 'inf' as the interval upper bound",
                ))
            }
        };
        let close_pos = self.here();
        let upper_open = match self.bump() {
            Tok::RPar => true,
            Tok::RBrk => false,
            _ => {
                return Err(ParseError::new(
                    close_pos,
                    "expected ')' or ']' to close the interval",
                ))
            }
        };
        TimeInterval::new(lower, upper, lower_open, upper_open).map_err(|e| match e {
            IntervalError::Empty { lower, upper } => ParseError::new(
                open_pos,
                format!("empty interval: lower bound {} must be below upper bound {}", lower, upper),
            ),
            IntervalError::ClosedAtInfinity => {
                ParseError::new(close_pos, "an interval cannot be closed at infinity")
            }
        })
    }

    fn primary(&mut self) -> Result<MitlFormula, ParseError> {
        let at = self.here();
        match self.bump() {
            Tok::Ident(name) => Ok(MitlFormula::Prop(name)),
            Tok::LPar => {
                let f = self.formula()?;
                self.expect(Tok::RPar, "')'")?;
                Ok(f)
            }
            t => Err(ParseError::new(
                at,
                format!("expected an atom or '(', found {:?}", t),
            )),
        }
    }

    fn unary(&mut self) -> Result<MitlFormula, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(MitlFormula::not(self.unary()?))
            }
            Tok::OpF => {
                self.bump();
                let i = self.interval()?;
                Ok(MitlFormula::eventually(i, self.unary()?))
            }
            Tok::OpG => {
                self.bump();
                let i = self.interval()?;
                Ok(MitlFormula::globally(i, self.unary()?))
            }
            Tok::OpP => {
                self.bump();
                let i = self.interval()?;
                Ok(MitlFormula::past_eventually(i, self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn andexp(&mut self) -> Result<MitlFormula, ParseError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = MitlFormula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn orexp(&mut self) -> Result<MitlFormula, ParseError> {
        let mut f = self.andexp()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            f = MitlFormula::or(f, self.andexp()?);
        }
        Ok(f)
    }

    fn implied(&mut self) -> Result<MitlFormula, ParseError> {
        let f = self.orexp()?;
        match self.peek() {
            Tok::Arrow => {
                self.bump();
                Ok(MitlFormula::implies(f, self.implied()?))
            }
            Tok::Iff => {
                self.bump();
                Ok(MitlFormula::iff(f, self.implied()?))
            }
            _ => Ok(f),
        }
    }

    fn formula(&mut self) -> Result<MitlFormula, ParseError> {
        let f = self.implied()?;
        match self.peek() {
            Tok::OpU => {
                self.bump();
                let i = self.interval()?;
                Ok(MitlFormula::until(i, f, self.formula()?))
            }
            Tok::OpS => {
                self.bump();
                let i = self.interval()?;
                Ok(MitlFormula::since(i, f, self.formula()?))
            }
            _ => Ok(f),
        }
    }
}

/// Parses an MITL formula from its surface syntax.
pub fn parse_mitl(input: &str) -> Result<MitlFormula, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(ParseError::new(p.here(), "unexpected trailing input"));
    }
    Ok(f)
}
