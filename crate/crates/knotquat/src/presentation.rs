//! Two-generator words and presentations.
//!
//! Words are freely reduced sequences over `a`, `b` and their inverses. Input
//! accepts both `A`/`B` and `a^-1`/`b^-1` for inverses; output always uses the
//! caret form.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    B,
}

/// A generator raised to ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter { gen: Gen::A, inverse: false };
    pub const A_INV: Letter = Letter { gen: Gen::A, inverse: true };
    pub const B: Letter = Letter { gen: Gen::B, inverse: false };
    pub const B_INV: Letter = Letter { gen: Gen::B, inverse: true };

    pub const ALL: [Letter; 4] = [Letter::A, Letter::A_INV, Letter::B, Letter::B_INV];

    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.gen {
            Gen::A => 'a',
            Gen::B => 'b',
        };
        if self.inverse {
            write!(f, "{c}^-1")
        } else {
            write!(f, "{c}")
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    /// Builds a word from letters, freely reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    /// Rotates the word left by `k` letters and reduces the result.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::identity();
        }
        let k = k % self.0.len();
        Word::from_letters(self.0[k..].iter().chain(&self.0[..k]).copied())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}

/// Parses `a`, `b`, `A`, `B`, `a^-1`, `b^-1`, `a^1` tokens; `1` is the identity.
pub fn parse_word(text: &str) -> Result<Word> {
    parse_word_at(text, 0)
}

fn parse_word_at(text: &str, offset: usize) -> Result<Word> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut w = Word::identity();
    let mut i = 0;
    let syntax = |pos: usize, msg: &str| Error::Syntax { pos: offset + pos, msg: msg.to_string() };
    while i < chars.len() {
        let (pos, c) = chars[i];
        i += 1;
        let mut letter = match c {
            c if c.is_whitespace() || c == '*' || c == '.' => continue,
            '1' => continue,
            'a' => Letter::A,
            'b' => Letter::B,
            'A' => Letter::A_INV,
            'B' => Letter::B_INV,
            _ => return Err(syntax(pos, &format!("unexpected character '{c}'"))),
        };
        if i < chars.len() && chars[i].1 == '^' {
            let caret = chars[i].0;
            i += 1;
            let mut exp = String::new();
            while i < chars.len() && (chars[i].1 == '-' || chars[i].1 == '+' || chars[i].1.is_ascii_digit()) {
                exp.push(chars[i].1);
                i += 1;
            }
            match exp.as_str() {
                "1" | "+1" => {}
                "-1" => letter = letter.inv(),
                _ => return Err(syntax(caret, "exponent must be 1 or -1")),
            }
        }
        w.push(letter);
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form {
    /// `w = 1`.
    Relator(Word),
    /// `w1 = w2`.
    Balanced(Word, Word),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub form: Form,
    pub label: Option<String>,
}

impl Presentation {
    pub fn relator_form(w: Word) -> Presentation {
        Presentation { form: Form::Relator(w), label: None }
    }

    pub fn balanced(w1: Word, w2: Word) -> Presentation {
        Presentation { form: Form::Balanced(w1, w2), label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Presentation {
        self.label = Some(label.into());
        self
    }

    /// The single relator `w1·w2⁻¹` (or `w`) equal to the identity.
    pub fn relator(&self) -> Word {
        match &self.form {
            Form::Relator(w) => w.clone(),
            Form::Balanced(w1, w2) => w1.concat(&w2.inverse()),
        }
    }

    /// Both sides as a pair, with the identity on the right for a relator.
    pub fn sides(&self) -> (Word, Word) {
        match &self.form {
            Form::Relator(w) => (w.clone(), Word::identity()),
            Form::Balanced(w1, w2) => (w1.clone(), w2.clone()),
        }
    }

    /// True for `a·v = v·b`, the shape produced by [`two_bridge`].
    pub fn is_conjugating(&self) -> bool {
        match &self.form {
            Form::Balanced(w1, w2) => {
                let (l, r) = (w1.letters(), w2.letters());
                l.len() == r.len()
                    && !l.is_empty()
                    && l[0] == Letter::A
                    && r[r.len() - 1] == Letter::B
                    && l[1..] == r[..r.len() - 1]
            }
            Form::Relator(_) => false,
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            Form::Relator(w) => write!(f, "{w}"),
            Form::Balanced(w1, w2) => write!(f, "{w1} = {w2}"),
        }
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Presentation> {
        parse_presentation(s)
    }
}

/// Parses `w` (a relator) or `w1 = w2` (balanced).
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    match text.find('=') {
        None => Ok(Presentation::relator_form(parse_word(text)?)),
        Some(eq) => {
            let rhs_text = &text[eq + 1..];
            if let Some(second) = rhs_text.find('=') {
                return Err(Error::Syntax { pos: eq + 1 + second, msg: "more than one '='".into() });
            }
            let lhs = parse_word_at(&text[..eq], 0)?;
            let rhs = parse_word_at(rhs_text, eq + 1)?;
            if lhs.is_empty() && rhs.is_empty() {
                return Err(Error::EmptyWord);
            }
            Ok(Presentation::balanced(lhs, rhs))
        }
    }
}

/// Standard presentation `a·v = v·b` of the 2-bridge knot group `(p, q)`.
///
/// `v = b^{ε₁} a^{ε₂} b^{ε₃} ⋯` has `p − 1` letters with `εᵢ = (−1)^⌊iq/p⌋`.
pub fn two_bridge(p: u64, q: u64) -> Result<Presentation> {
    if p < 3 {
        return Err(Error::Argument(format!("p must be an odd integer > 1, got {p}")));
    }
    if p % 2 == 0 {
        return Err(Error::Argument(format!("p = {p} is even (a link); only knots are supported")));
    }
    if q == 0 || q >= p {
        return Err(Error::Argument(format!("q must satisfy 0 < q < p, got q = {q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Argument(format!("gcd({p}, {q}) != 1")));
    }
    let mut v = Word::identity();
    for i in 1..p {
        let gen = if i % 2 == 1 { Gen::B } else { Gen::A };
        let inverse = (i * q / p) % 2 == 1;
        v.push(Letter { gen, inverse });
    }
    let lhs = Word::from_letters(std::iter::once(Letter::A)).concat(&v);
    let rhs = v.concat(&Word::from_letters(std::iter::once(Letter::B)));
    Ok(Presentation::balanced(lhs, rhs).with_label(format!("two-bridge({p},{q})")))
}

pub fn trefoil() -> Presentation {
    two_bridge(3, 1).expect("valid parameters").with_label("trefoil")
}

pub fn figure_eight() -> Presentation {
    two_bridge(5, 3).expect("valid parameters").with_label("figure-eight")
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    #[serde(skip_serializing_if = "Option::is_none")]
    relator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match &self.form {
            Form::Relator(w) => PresentationRepr {
                relator: Some(w.to_string()),
                lhs: None,
                rhs: None,
                label: self.label.clone(),
            },
            Form::Balanced(l, r) => PresentationRepr {
                relator: None,
                lhs: Some(l.to_string()),
                rhs: Some(r.to_string()),
                label: self.label.clone(),
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PresentationRepr::deserialize(d)?;
        let word = |s: &str| parse_word(s).map_err(D::Error::custom);
        let form = match (repr.relator, repr.lhs, repr.rhs) {
            (Some(r), None, None) => Form::Relator(word(&r)?),
            (None, Some(l), Some(r)) => Form::Balanced(word(&l)?, word(&r)?),
            _ => return Err(D::Error::custom("expected {\"relator\"} or {\"lhs\", \"rhs\"}")),
        };
        Ok(Presentation { form, label: repr.label })
    }
}
