//! Words, inclusions and inclusion systems.
//!
//! Surface syntax:
//!
//! ```text
//! system    := inclusion (";" inclusion)*
//! inclusion := wordset ("<=" | "=") wordset
//! wordset   := word | "{" word ("," word)* "}"
//! word      := letter+            letter := "a".."z"
//! ```
//!
//! `u = v` is read as the single inclusion `{u} <= {v}`, which for
//! singletons already forces `u* = v*` under every substitution.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::FiniteSemigroup;

/// Longest word accepted by the parser and the random generators.
pub const MAX_WORD_LEN: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("parse error at byte {position}: expected {expected}")]
    Parse { position: usize, expected: String },
    #[error("variable `{0}` has no value in the substitution")]
    UnboundVariable(Variable),
}

/// One of the 26 lowercase letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u8);

impl Variable {
    pub fn new(symbol: char) -> Option<Self> {
        symbol
            .is_ascii_lowercase()
            .then(|| Variable(symbol as u8 - b'a'))
    }

    pub fn symbol(self) -> char {
        (b'a' + self.0) as char
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A nonempty word over the variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Variable>);

impl Word {
    pub fn new(letters: Vec<Variable>) -> Option<Self> {
        (!letters.is_empty() && letters.len() <= MAX_WORD_LEN).then_some(Word(letters))
    }

    pub fn letters(&self) -> &[Variable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Distinct variables, sorted.
    pub fn content(&self) -> Vec<Variable> {
        let mut c = self.0.clone();
        c.sort();
        c.dedup();
        c
    }

    /// The single variable of a one-letter word.
    pub fn as_variable(&self) -> Option<Variable> {
        match self.0[..] {
            [v] => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        p.skip_ws();
        let w = p.word()?;
        p.skip_ws();
        p.expect_end()?;
        Ok(w)
    }
}

/// True iff `u` and `v` consist of the same variables.
pub fn content_equal(u: &Word, v: &Word) -> bool {
    u.content() == v.content()
}

/// `lhs ⊆ rhs` between finite word sets. Both sides are nonempty and
/// duplicate-free; insertion order is kept for printing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Inclusion {
    lhs: Vec<Word>,
    rhs: Vec<Word>,
}

fn dedup_words(words: Vec<Word>) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::with_capacity(words.len());
    for w in words {
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

impl Inclusion {
    /// Returns `None` if either side is empty.
    pub fn new(lhs: Vec<Word>, rhs: Vec<Word>) -> Option<Self> {
        (!lhs.is_empty() && !rhs.is_empty()).then(|| Inclusion {
            lhs: dedup_words(lhs),
            rhs: dedup_words(rhs),
        })
    }

    pub fn identity(u: Word, v: Word) -> Self {
        Inclusion {
            lhs: vec![u],
            rhs: vec![v],
        }
    }

    pub fn lhs(&self) -> &[Word] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[Word] {
        &self.rhs
    }

    pub fn is_identity(&self) -> bool {
        self.lhs.len() == 1 && self.rhs.len() == 1
    }

    /// Distinct variables in first-occurrence order, scanning `lhs` first.
    pub fn variables(&self) -> Vec<Variable> {
        let mut seen = [false; 26];
        let mut out = Vec::new();
        for w in self.lhs.iter().chain(&self.rhs) {
            for &v in w.letters() {
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn dual(&self) -> Inclusion {
        Inclusion {
            lhs: self.lhs.iter().map(Word::reversed).collect(),
            rhs: self.rhs.iter().map(Word::reversed).collect(),
        }
    }

    /// Adds words to the right-hand side (never shrinks the class).
    pub fn with_extra_rhs(&self, extra: impl IntoIterator<Item = Word>) -> Inclusion {
        let mut rhs = self.rhs.clone();
        rhs.extend(extra);
        Inclusion {
            lhs: self.lhs.clone(),
            rhs: dedup_words(rhs),
        }
    }
}

pub fn variables_of(inclusion: &Inclusion) -> Vec<Variable> {
    inclusion.variables()
}

fn write_set(f: &mut fmt::Formatter<'_>, words: &[Word], braces: bool) -> fmt::Result {
    if braces {
        write!(f, "{{")?;
    }
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{w}")?;
    }
    if braces {
        write!(f, "}}")?;
    }
    Ok(())
}

impl fmt::Display for Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "{} = {}", self.lhs[0], self.rhs[0]);
        }
        write_set(f, &self.lhs, self.lhs.len() > 1)?;
        write!(f, " <= ")?;
        write_set(f, &self.rhs, true)
    }
}

/// A nonempty list of inclusions, all of which must hold.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InclusionSystem {
    inclusions: Vec<Inclusion>,
}

impl InclusionSystem {
    pub fn new(inclusions: Vec<Inclusion>) -> Option<Self> {
        (!inclusions.is_empty()).then_some(InclusionSystem { inclusions })
    }

    pub fn inclusions(&self) -> &[Inclusion] {
        &self.inclusions
    }

    pub fn dual(&self) -> InclusionSystem {
        InclusionSystem {
            inclusions: self.inclusions.iter().map(Inclusion::dual).collect(),
        }
    }

    /// Largest per-inclusion variable count.
    pub fn max_variables(&self) -> usize {
        self.inclusions
            .iter()
            .map(|i| i.variables().len())
            .max()
            .unwrap_or(0)
    }
}

pub fn dual_system(system: &InclusionSystem) -> InclusionSystem {
    system.dual()
}

pub fn parse_system(text: &str) -> Result<InclusionSystem, TermError> {
    text.parse()
}

impl fmt::Display for InclusionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, inc) in self.inclusions.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{inc}")?;
        }
        Ok(())
    }
}

impl FromStr for InclusionSystem {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let mut inclusions = vec![p.inclusion()?];
        loop {
            p.skip_ws();
            if p.eat(b';') {
                inclusions.push(p.inclusion()?);
            } else {
                p.expect_end()?;
                break;
            }
        }
        Ok(InclusionSystem { inclusions })
    }
}

impl FromStr for Inclusion {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let inc = p.inclusion()?;
        p.skip_ws();
        p.expect_end()?;
        Ok(inc)
    }
}

impl Serialize for InclusionSystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InclusionSystem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! display_serialize {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }
    )*};
}

display_serialize!(Variable, Word, Inclusion);

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, expected: impl Into<String>) -> Result<T, TermError> {
        Err(TermError::Parse {
            position: self.pos,
            expected: expected.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_end(&self) -> Result<(), TermError> {
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.error("`;` or end of input")
        }
    }

    fn word(&mut self) -> Result<Word, TermError> {
        let start = self.pos;
        let mut letters = Vec::new();
        while let Some(c) = self.peek().and_then(|b| Variable::new(b as char)) {
            letters.push(c);
            self.pos += 1;
        }
        if letters.is_empty() {
            return self.error("a word (letters a-z)");
        }
        if letters.len() > MAX_WORD_LEN {
            self.pos = start;
            return self.error(format!("a word of at most {MAX_WORD_LEN} letters"));
        }
        Ok(Word(letters))
    }

    fn wordset(&mut self) -> Result<Vec<Word>, TermError> {
        self.skip_ws();
        if !self.eat(b'{') {
            return Ok(vec![self.word()?]);
        }
        self.skip_ws();
        let mut words = vec![self.word()?];
        loop {
            self.skip_ws();
            if self.eat(b',') {
                self.skip_ws();
                words.push(self.word()?);
            } else if self.eat(b'}') {
                return Ok(words);
            } else {
                return self.error("`,` or `}`");
            }
        }
    }

    fn inclusion(&mut self) -> Result<Inclusion, TermError> {
        let lhs = self.wordset()?;
        self.skip_ws();
        let equality = if self.src[self.pos..].starts_with(b"<=") {
            self.pos += 2;
            false
        } else if self.eat(b'=') {
            true
        } else {
            return self.error("`<=` or `=`");
        };
        let rhs_start = {
            self.skip_ws();
            self.pos
        };
        let rhs = self.wordset()?;
        if equality && (dedup_words(lhs.clone()).len() != 1 || dedup_words(rhs.clone()).len() != 1)
        {
            self.pos = rhs_start;
            return self.error("singleton word sets on both sides of `=`");
        }
        Ok(Inclusion::new(lhs, rhs).expect("word sets are nonempty"))
    }
}

/// Values for a finite set of variables, kept in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    assignment: Vec<(Variable, usize)>,
}

impl Substitution {
    pub fn new(assignment: Vec<(Variable, usize)>) -> Self {
        Substitution { assignment }
    }

    /// `*^a`: every listed variable goes to `a`.
    pub fn constant(vars: &[Variable], a: usize) -> Self {
        Substitution {
            assignment: vars.iter().map(|&v| (v, a)).collect(),
        }
    }

    pub fn get(&self, v: Variable) -> Option<usize> {
        self.assignment
            .iter()
            .find(|(w, _)| *w == v)
            .map(|&(_, a)| a)
    }

    pub fn pairs(&self) -> &[(Variable, usize)] {
        &self.assignment
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (v, a)) in self.assignment.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}→{a}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Substitution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.assignment.len()))?;
        for (v, a) in &self.assignment {
            map.serialize_entry(&v.symbol().to_string(), a)?;
        }
        map.end()
    }
}

/// Left-to-right product of the substituted letters.
pub fn evaluate(word: &Word, sub: &Substitution, s: &FiniteSemigroup) -> Result<usize, TermError> {
    let mut letters = word.letters().iter();
    let first = *letters.next().expect("words are nonempty");
    let mut acc = sub.get(first).ok_or(TermError::UnboundVariable(first))?;
    for &v in letters {
        let b = sub.get(v).ok_or(TermError::UnboundVariable(v))?;
        acc = s.mul(acc, b);
    }
    Ok(acc)
}
