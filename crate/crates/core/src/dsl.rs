//! Surface syntax for statements and mood names.
//!
//! ```text
//! stmt := [mod "("] term rel term [")"]
//! mod  := "N" | "Kamp" | "K" | "Ma2" | "Mo2" | "Mo3"
//! rel  := "a" | "e" | "i" | "o"
//! term := ["~"] letter
//! ```
//!
//! Whitespace between tokens is ignored and `¬` is accepted for `~`.

use std::fmt;

use thiserror::Error;

use crate::catalog::{ConclusionSlot, ModalLetter, ModalPattern, Mood};
use crate::model::ConceptName;
use crate::statement::{Modality, Relation, Statement, Term};

/// Byte offsets `begin..end` into the parsed text.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub begin: usize,
    pub end: usize,
}

impl SourceSpan {
    fn at(begin: usize, end: usize) -> Self {
        Self { begin, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.begin, self.end)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("modality {} cannot be combined with relation `{}`", .0.prefix(), .1.letter())]
    Unsupported(Modality, Relation),
    #[error("unknown mood `{0}`")]
    UnknownMood(String),
    #[error("malformed modal pattern `{0}`")]
    MalformedPattern(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    /// Error spanning the next character, or an empty span at end of input.
    fn unexpected(&mut self, expected: &'static str) -> ParseError {
        let (found, len) = match self.peek() {
            Some(c) => (format!("`{c}`"), c.len_utf8()),
            None => ("end of input".to_string(), 0),
        };
        ParseError {
            kind: ParseErrorKind::Unexpected { expected, found },
            span: SourceSpan::at(self.pos, self.pos + len),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    /// A modal prefix is only a prefix when an opening parenthesis follows,
    /// so `NaA` still parses as an assertoric statement about concept `N`.
    fn modality(&mut self) -> Modality {
        self.skip_ws();
        for m in [
            Modality::AmpliatedContingent,
            Modality::PossiblyIs,
            Modality::PossiblyIsNot,
            Modality::PossiblyIsNotWeak,
            Modality::Necessary,
            Modality::Contingent,
        ] {
            if let Some(after) = self.rest().strip_prefix(m.prefix()) {
                if after.trim_start().starts_with('(') {
                    self.pos += m.prefix().len();
                    return m;
                }
            }
        }
        Modality::Assertoric
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let complemented = self.eat('~') || self.eat('¬');
        match self.peek().and_then(ConceptName::new) {
            Some(name) => {
                self.pos += 1;
                Ok(Term { base: name, complemented })
            }
            None => Err(self.unexpected("a concept letter A-Z")),
        }
    }

    fn relation(&mut self) -> Result<Relation, ParseError> {
        match self.peek().and_then(Relation::from_letter) {
            Some(r) => {
                self.pos += 1;
                Ok(r)
            }
            None => Err(self.unexpected("a relation letter a, e, i or o")),
        }
    }
}

/// Parses one statement such as `N(BeA)`, `BaA`, `K(Ce~A)`.
pub fn parse_statement(text: &str) -> Result<Statement, ParseError> {
    let mut c = Cursor { text, pos: 0 };
    let start = {
        c.skip_ws();
        c.pos
    };
    let modality = c.modality();
    let wrapped = modality != Modality::Assertoric;
    if wrapped && !c.eat('(') {
        return Err(c.unexpected("`(`"));
    }
    let subject = c.term()?;
    let relation = c.relation()?;
    let predicate = c.term()?;
    if wrapped && !c.eat(')') {
        return Err(c.unexpected("`)`"));
    }
    if c.peek().is_some() {
        return Err(c.unexpected("end of input"));
    }
    Statement::new(modality, subject, relation, predicate).map_err(|e| ParseError {
        kind: ParseErrorKind::Unsupported(e.modality, e.relation),
        span: SourceSpan::at(start, c.pos),
    })
}

/// Parses `"<mood> <pattern>"`, e.g. `Barbara NXN`, `baroco nx?`, `Celarent NKX`.
/// Two letters with no conclusion slot are read as `?`.
pub fn parse_mood(text: &str) -> Result<(Mood, ModalPattern), ParseError> {
    let begin = text.len() - text.trim_start().len();
    let trimmed = text.trim();
    let (name, pattern) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
    let name_span = SourceSpan::at(begin, begin + name.len());
    let mood = Mood::from_name(name)
        .ok_or_else(|| ParseError { kind: ParseErrorKind::UnknownMood(name.to_string()), span: name_span })?;

    let pattern = pattern.trim();
    let pattern_begin = if pattern.is_empty() { name_span.end } else { text.find(pattern).unwrap_or(name_span.end) };
    let malformed = || ParseError {
        kind: ParseErrorKind::MalformedPattern(pattern.to_string()),
        span: SourceSpan::at(pattern_begin, pattern_begin + pattern.len()),
    };
    let letters: Vec<char> = pattern.chars().collect();
    let premise = |c: char| ModalLetter::from_char(c).filter(|&l| l != ModalLetter::M);
    let (major, minor, conclusion) = match letters.as_slice() {
        [a, b] => (premise(*a), premise(*b), Some(ConclusionSlot::Refute)),
        [a, b, '?'] => (premise(*a), premise(*b), Some(ConclusionSlot::Refute)),
        [a, b, c] => (premise(*a), premise(*b), ModalLetter::from_char(*c).map(ConclusionSlot::Claim)),
        _ => return Err(malformed()),
    };
    match (major, minor, conclusion) {
        (Some(major), Some(minor), Some(conclusion)) => Ok((mood, ModalPattern { major, minor, conclusion })),
        _ => Err(malformed()),
    }
}
