//! Text forms for terms, bracket literals, and canonical records.
//!
//! The term grammar has two right-associative operators: `.` for
//! composition (right operand applies first) and `x` for the monoidal
//! product, with `x` binding tighter. Atoms are the five generator names,
//! `id(n)`, `P(c,d)`, and parenthesized terms. The derived forms `perm`,
//! `mui`, `deltai`, `conv`, `vee`, and `y` expand into core terms while
//! parsing, so printing a parsed term always yields core syntax.

use std::str::FromStr;

use thiserror::Error;

use crate::canonical::{CanonError, CanonicalForm};
use crate::fcat::{bracket, CatError, FMorphism, GenKind};
use crate::hterm::{conv, iterated_delta, iterated_mu, perm_term, vee, y_gen, HTerm, TermError};
use crate::perm::{PermError, Permutation};
use crate::words::{reduce, Letter, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {pos}")]
    UnexpectedChar { pos: usize, found: char },
    #[error("unexpected {found} at byte {pos}, expected {expected}")]
    UnexpectedToken {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("number too large at byte {pos}")]
    NumberRange { pos: usize },
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Canon(#[from] CanonError),
}

impl ParseError {
    /// True when the input text itself is malformed; false when it is
    /// well-formed text denoting an invalid object.
    pub fn is_syntax(&self) -> bool {
        matches!(
            self,
            ParseError::UnexpectedChar { .. }
                | ParseError::UnexpectedToken { .. }
                | ParseError::UnexpectedEnd { .. }
                | ParseError::NumberRange { .. }
        )
    }
}

pub type ParseResult<T> = Result<T, ParseError>;

struct Cursor {
    chars: Vec<(usize, char)>,
    len: usize,
    i: usize,
}

impl Cursor {
    fn new(src: &str) -> Cursor {
        Cursor {
            chars: src.char_indices().collect(),
            len: src.len(),
            i: 0,
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.len, |&(p, _)| p)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.i += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.i += 1;
        }
    }

    fn expect_char(&mut self, want: char) -> ParseResult<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.i += 1;
                Ok(())
            }
            Some(c) => Err(ParseError::UnexpectedChar {
                pos: self.pos(),
                found: c,
            }),
            None => Err(ParseError::UnexpectedEnd {
                expected: "more input",
            }),
        }
    }

    fn nat(&mut self) -> ParseResult<usize> {
        let start = self.pos();
        let mut seen = false;
        let mut value: usize = 0;
        while let Some(c) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            seen = true;
            self.i += 1;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as usize))
                .ok_or(ParseError::NumberRange { pos: start })?;
        }
        if !seen {
            return match self.peek() {
                Some(c) => Err(ParseError::UnexpectedChar {
                    pos: start,
                    found: c,
                }),
                None => Err(ParseError::UnexpectedEnd {
                    expected: "a number",
                }),
            };
        }
        Ok(value)
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() {
                s.push(c);
                self.i += 1;
            } else {
                break;
            }
        }
        s
    }

    fn expect_end(&mut self) -> ParseResult<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(ParseError::UnexpectedChar {
                pos: self.pos(),
                found: c,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(usize),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Tensor,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Num(n) => format!("number {n}"),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::LBracket => "`[`".to_string(),
            Tok::RBracket => "`]`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Dot => "`.`".to_string(),
            Tok::Tensor => "`x`".to_string(),
        }
    }
}

fn lex_term(input: &str) -> ParseResult<Vec<(Tok, usize)>> {
    let mut cur = Cursor::new(input);
    let mut out = Vec::new();
    loop {
        cur.skip_ws();
        let pos = cur.pos();
        let Some(c) = cur.peek() else { break };
        let tok = match c {
            '(' => {
                cur.bump();
                Tok::LParen
            }
            ')' => {
                cur.bump();
                Tok::RParen
            }
            '[' => {
                cur.bump();
                Tok::LBracket
            }
            ']' => {
                cur.bump();
                Tok::RBracket
            }
            ',' => {
                cur.bump();
                Tok::Comma
            }
            '.' => {
                cur.bump();
                Tok::Dot
            }
            '0'..='9' => Tok::Num(cur.nat()?),
            c if c.is_ascii_alphabetic() => {
                let w = cur.ident();
                if w == "x" {
                    Tok::Tensor
                } else {
                    Tok::Word(w)
                }
            }
            other => {
                return Err(ParseError::UnexpectedChar {
                    pos,
                    found: other,
                })
            }
        };
        out.push((tok, pos));
    }
    Ok(out)
}

struct TermParser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl TermParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.i).cloned();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> ParseResult<()> {
        match self.bump() {
            Some((t, _)) if t == want => Ok(()),
            Some((t, pos)) => Err(ParseError::UnexpectedToken {
                pos,
                found: t.describe(),
                expected,
            }),
            None => Err(ParseError::UnexpectedEnd { expected }),
        }
    }

    fn nat(&mut self) -> ParseResult<usize> {
        match self.bump() {
            Some((Tok::Num(n), _)) => Ok(n),
            Some((t, pos)) => Err(ParseError::UnexpectedToken {
                pos,
                found: t.describe(),
                expected: "a number",
            }),
            None => Err(ParseError::UnexpectedEnd {
                expected: "a number",
            }),
        }
    }

    fn nat_list(&mut self) -> ParseResult<Vec<usize>> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(out);
        }
        loop {
            out.push(self.nat()?);
            if self.eat(&Tok::RBracket) {
                return Ok(out);
            }
            self.expect(Tok::Comma, "`,` or `]`")?;
        }
    }

    fn compose_level(&mut self) -> ParseResult<HTerm> {
        let t = self.tensor_level()?;
        if self.eat(&Tok::Dot) {
            let u = self.compose_level()?;
            Ok(HTerm::compose(t, u))
        } else {
            Ok(t)
        }
    }

    fn tensor_level(&mut self) -> ParseResult<HTerm> {
        let t = self.atom_level()?;
        if self.eat(&Tok::Tensor) {
            let u = self.tensor_level()?;
            Ok(HTerm::tensor(t, u))
        } else {
            Ok(t)
        }
    }

    fn atom_level(&mut self) -> ParseResult<HTerm> {
        match self.bump() {
            Some((Tok::LParen, _)) => {
                let t = self.compose_level()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some((Tok::Word(w), pos)) => self.keyword(&w, pos),
            Some((t, pos)) => Err(ParseError::UnexpectedToken {
                pos,
                found: t.describe(),
                expected: "a term",
            }),
            None => Err(ParseError::UnexpectedEnd { expected: "a term" }),
        }
    }

    fn keyword(&mut self, word: &str, pos: usize) -> ParseResult<HTerm> {
        match word {
            "mu" => Ok(HTerm::Gen(GenKind::Mu)),
            "eta" => Ok(HTerm::Gen(GenKind::Eta)),
            "delta" => Ok(HTerm::Gen(GenKind::Delta)),
            "eps" => Ok(HTerm::Gen(GenKind::Eps)),
            "S" => Ok(HTerm::Gen(GenKind::Antipode)),
            "id" => {
                self.expect(Tok::LParen, "`(`")?;
                let n = self.nat()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(HTerm::Id(n))
            }
            "P" => {
                self.expect(Tok::LParen, "`(`")?;
                let c = self.nat()?;
                self.expect(Tok::Comma, "`,`")?;
                let d = self.nat()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(HTerm::Sym(c, d))
            }
            "perm" => {
                let line = self.nat_list()?;
                let sigma = Permutation::from_one_line(line)?;
                Ok(perm_term(&sigma))
            }
            "mui" => Ok(iterated_mu(&self.nat_list()?)),
            "deltai" => Ok(iterated_delta(&self.nat_list()?)),
            "conv" => {
                let (t, u) = self.pair()?;
                Ok(conv(t, u)?)
            }
            "vee" => {
                let (t, u) = self.pair()?;
                Ok(vee(t, u)?)
            }
            "y" => {
                self.expect(Tok::LParen, "`(`")?;
                let i = self.nat()?;
                self.expect(Tok::Comma, "`,`")?;
                let j = self.nat()?;
                self.expect(Tok::Comma, "`,`")?;
                let e = self.nat()?;
                self.expect(Tok::Comma, "`,`")?;
                let m = self.nat()?;
                self.expect(Tok::Comma, "`,`")?;
                let n = self.nat()?;
                self.expect(Tok::RParen, "`)`")?;
                if e > 1 {
                    return Err(TermError::Index {
                        name: "e",
                        got: e,
                        max: 1,
                    }
                    .into());
                }
                Ok(y_gen(i, j, e as u8, m, n)?)
            }
            other => Err(ParseError::UnexpectedToken {
                pos,
                found: format!("`{other}`"),
                expected: "a term",
            }),
        }
    }

    fn pair(&mut self) -> ParseResult<(HTerm, HTerm)> {
        self.expect(Tok::LParen, "`(`")?;
        let t = self.compose_level()?;
        self.expect(Tok::Comma, "`,`")?;
        let u = self.compose_level()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok((t, u))
    }
}

pub fn parse_term(input: &str) -> ParseResult<HTerm> {
    let toks = lex_term(input)?;
    let mut p = TermParser { toks, i: 0 };
    let t = p.compose_level()?;
    match p.bump() {
        None => Ok(t),
        Some((tok, pos)) => Err(ParseError::UnexpectedToken {
            pos,
            found: tok.describe(),
            expected: "end of input",
        }),
    }
}

/// Raw letters of one word inside a bracket literal; the rank is unknown
/// until the boundary is read, so reduction happens afterwards.
fn bracket_word(cur: &mut Cursor) -> ParseResult<Vec<Letter>> {
    cur.skip_ws();
    if cur.peek() == Some('1') {
        cur.bump();
        if cur.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            return Err(ParseError::UnexpectedChar {
                pos: cur.pos(),
                found: cur.peek().unwrap(),
            });
        }
        return Ok(Vec::new());
    }
    let mut letters = Vec::new();
    loop {
        cur.expect_char('x')?;
        let index = cur.nat()?;
        let mut inv = false;
        if cur.peek() == Some('^') {
            cur.bump();
            cur.expect_char('-')?;
            cur.expect_char('1')?;
            inv = true;
        }
        letters.push(Letter { index, inv });
        cur.skip_ws();
        if cur.peek() != Some('x') {
            return Ok(letters);
        }
    }
}

pub fn parse_bracket(input: &str) -> ParseResult<FMorphism> {
    let mut cur = Cursor::new(input);
    cur.skip_ws();
    cur.expect_char('[')?;
    let mut raw: Vec<Vec<Letter>> = Vec::new();
    cur.skip_ws();
    if cur.peek() != Some('|') {
        loop {
            raw.push(bracket_word(&mut cur)?);
            cur.skip_ws();
            match cur.peek() {
                Some(',') => {
                    cur.bump();
                }
                Some('|') => break,
                Some(c) => {
                    return Err(ParseError::UnexpectedChar {
                        pos: cur.pos(),
                        found: c,
                    })
                }
                None => {
                    return Err(ParseError::UnexpectedEnd {
                        expected: "`,` or `|`",
                    })
                }
            }
        }
    }
    cur.expect_char('|')?;
    cur.skip_ws();
    let m = cur.nat()?;
    cur.skip_ws();
    cur.expect_char('-')?;
    cur.expect_char('>')?;
    cur.skip_ws();
    let n = cur.nat()?;
    cur.skip_ws();
    cur.expect_char(']')?;
    cur.expect_end()?;
    let words = raw
        .into_iter()
        .map(|letters| reduce(n, letters))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(bracket(m, n, words)?)
}

fn record_key(cur: &mut Cursor, key: &'static str) -> ParseResult<()> {
    cur.skip_ws();
    let pos = cur.pos();
    let word = cur.ident();
    if word != key {
        return Err(ParseError::UnexpectedToken {
            pos,
            found: format!("`{word}`"),
            expected: key,
        });
    }
    cur.skip_ws();
    cur.expect_char(':')?;
    cur.skip_ws();
    Ok(())
}

fn record_nat_list(cur: &mut Cursor) -> ParseResult<Vec<usize>> {
    cur.expect_char('[')?;
    cur.skip_ws();
    let mut out = Vec::new();
    if cur.peek() == Some(']') {
        cur.bump();
        return Ok(out);
    }
    loop {
        out.push(cur.nat()?);
        cur.skip_ws();
        match cur.bump() {
            Some(']') => return Ok(out),
            Some(',') => cur.skip_ws(),
            Some(c) => {
                return Err(ParseError::UnexpectedChar {
                    pos: cur.pos().saturating_sub(1),
                    found: c,
                })
            }
            None => {
                return Err(ParseError::UnexpectedEnd {
                    expected: "`,` or `]`",
                })
            }
        }
    }
}

pub fn parse_canonical(input: &str) -> ParseResult<CanonicalForm> {
    let mut cur = Cursor::new(input);
    cur.skip_ws();
    cur.expect_char('{')?;
    record_key(&mut cur, "m")?;
    let m = cur.nat()?;
    cur.skip_ws();
    cur.expect_char(',')?;
    record_key(&mut cur, "n")?;
    let n = cur.nat()?;
    cur.skip_ws();
    cur.expect_char(',')?;
    record_key(&mut cur, "p")?;
    let p = record_nat_list(&mut cur)?;
    cur.skip_ws();
    cur.expect_char(',')?;
    record_key(&mut cur, "q")?;
    let q = record_nat_list(&mut cur)?;
    cur.skip_ws();
    cur.expect_char(',')?;
    record_key(&mut cur, "e")?;
    let e_raw = record_nat_list(&mut cur)?;
    cur.skip_ws();
    cur.expect_char(',')?;
    record_key(&mut cur, "sigma")?;
    let sigma_line = record_nat_list(&mut cur)?;
    cur.skip_ws();
    cur.expect_char('}')?;
    cur.expect_end()?;
    let mut e = Vec::with_capacity(e_raw.len());
    for v in e_raw {
        if v > 1 {
            return Err(CanonError::Invalid {
                reason: format!("exponent entry {v} is not 0 or 1"),
            }
            .into());
        }
        e.push(v as u8);
    }
    let sigma = Permutation::from_one_line(sigma_line)?;
    Ok(CanonicalForm::new(m, n, p, q, e, sigma)?)
}

impl FromStr for HTerm {
    type Err = ParseError;

    fn from_str(s: &str) -> ParseResult<HTerm> {
        parse_term(s)
    }
}

impl FromStr for FMorphism {
    type Err = ParseError;

    fn from_str(s: &str) -> ParseResult<FMorphism> {
        parse_bracket(s)
    }
}

impl FromStr for CanonicalForm {
    type Err = ParseError;

    fn from_str(s: &str) -> ParseResult<CanonicalForm> {
        parse_canonical(s)
    }
}
