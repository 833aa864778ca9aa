//! Letters over `{a, b, c, d, s}` and the signed generator labels carried by
//! edges of the Cayley complexes.
//!
//! Text encoding: a lower-case letter is the generator, the upper-case letter
//! its inverse (`"A"` is `a⁻¹`). E-generators are written `e<i>` / `E<i>` with a
//! 1-based index, so `"e1E6s"` is `e₁ e₆⁻¹ s`.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Base {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
    S = 4,
}

impl Base {
    pub const ALL: [Base; 5] = [Base::A, Base::B, Base::C, Base::D, Base::S];
    pub const ABCD: [Base; 4] = [Base::A, Base::B, Base::C, Base::D];

    pub fn to_char(self) -> char {
        match self {
            Base::A => 'a',
            Base::B => 'b',
            Base::C => 'c',
            Base::D => 'd',
            Base::S => 's',
        }
    }

    pub fn from_char(c: char) -> Option<Base> {
        match c.to_ascii_lowercase() {
            'a' => Some(Base::A),
            'b' => Some(Base::B),
            'c' => Some(Base::C),
            'd' => Some(Base::D),
            's' => Some(Base::S),
            _ => None,
        }
    }

    /// Which free factor of `F(a,b) x F(c,d)` the base belongs to; `None` for `s`.
    pub fn factor(self) -> Option<Factor> {
        match self {
            Base::A | Base::B => Some(Factor::Ab),
            Base::C | Base::D => Some(Factor::Cd),
            Base::S => None,
        }
    }
}

/// One of the two free factors of `G = F(a,b) x F(c,d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    Ab,
    Cd,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::Ab => Factor::Cd,
            Factor::Cd => Factor::Ab,
        }
    }

    pub fn bases(self) -> [Base; 2] {
        match self {
            Factor::Ab => [Base::A, Base::B],
            Factor::Cd => [Base::C, Base::D],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn of(value: i64) -> Sign {
        if value < 0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A generator of `{a,b,c,d,s}` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub base: Base,
    pub sign: Sign,
}

impl Letter {
    pub const fn new(base: Base, sign: Sign) -> Letter {
        Letter { base, sign }
    }

    pub const fn pos(base: Base) -> Letter {
        Letter::new(base, Sign::Pos)
    }

    pub const fn neg(base: Base) -> Letter {
        Letter::new(base, Sign::Neg)
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.base, -self.sign)
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.base == other.base && self.sign != other.sign
    }

    pub fn exponent(self) -> i64 {
        self.sign.value()
    }

    pub fn to_char(self) -> char {
        let c = self.base.to_char();
        match self.sign {
            Sign::Pos => c,
            Sign::Neg => c.to_ascii_uppercase(),
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        let base = Base::from_char(c)?;
        let sign = if c.is_ascii_uppercase() { Sign::Neg } else { Sign::Pos };
        Some(Letter::new(base, sign))
    }

    /// Parses a plain letter string such as `"abAB"`; whitespace is ignored.
    pub fn parse_all(s: &str) -> Result<Vec<Letter>> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::parse("letter", s)))
            .collect()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

pub fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.to_char()).collect()
}

/// Index into the fixed table of 24 e-generators (stored 0-based, printed 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EGen(pub(crate) u8);

/// A generator of the presentation of Stallings' group used for the complex `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Base(Base),
    E(EGen),
}

/// Signed generator: the label of a directed edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub gen: Generator,
    pub sign: Sign,
}

impl Label {
    pub const fn new(gen: Generator, sign: Sign) -> Label {
        Label { gen, sign }
    }

    pub fn e(e: EGen, sign: Sign) -> Label {
        Label::new(Generator::E(e), sign)
    }

    pub fn inverse(self) -> Label {
        Label::new(self.gen, -self.sign)
    }

    pub fn is_inverse_of(self, other: Label) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }

    pub fn as_letter(self) -> Option<Letter> {
        match self.gen {
            Generator::Base(b) => Some(Letter::new(b, self.sign)),
            Generator::E(_) => None,
        }
    }

    pub fn as_e(self) -> Option<(EGen, Sign)> {
        match self.gen {
            Generator::E(e) => Some((e, self.sign)),
            Generator::Base(_) => None,
        }
    }

    pub fn is_s(self) -> bool {
        self.gen == Generator::Base(Base::S)
    }

    /// Parses a label string, e.g. `"ab e3 E12 s"`.
    pub fn parse_all(s: &str) -> Result<Vec<Label>> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Vec::with_capacity(chars.len());
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == 'e' || c == 'E' {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let digits: String = chars[start..end].iter().collect();
                let index: usize = digits.parse().map_err(|_| Error::parse("e-generator", s))?;
                let e = EGen::new(index).ok_or_else(|| Error::parse("e-generator index", s))?;
                let sign = if c == 'E' { Sign::Neg } else { Sign::Pos };
                out.push(Label::e(e, sign));
                i = end;
            } else {
                let l = Letter::from_char(c).ok_or_else(|| Error::parse("label", s))?;
                out.push(Label::from(l));
                i += 1;
            }
        }
        Ok(out)
    }
}

impl From<Letter> for Label {
    fn from(l: Letter) -> Label {
        Label::new(Generator::Base(l.base), l.sign)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gen {
            Generator::Base(b) => write!(f, "{}", Letter::new(b, self.sign)),
            Generator::E(e) => {
                let c = if self.sign == Sign::Pos { 'e' } else { 'E' };
                write!(f, "{}{}", c, e.index())
            }
        }
    }
}

pub fn labels_to_string(labels: &[Label]) -> String {
    labels.iter().map(|l| l.to_string()).collect()
}

pub fn inverse_labels(labels: &[Label]) -> Vec<Label> {
    labels.iter().rev().map(|l| l.inverse()).collect()
}

/// Serde adapter: a label sequence as its compact string.
pub mod label_string {
    use super::*;

    pub fn serialize<S: Serializer>(labels: &[Label], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&labels_to_string(labels))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Label>, D::Error> {
        let s = String::deserialize(d)?;
        Label::parse_all(&s).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Label, D::Error> {
        let s = String::deserialize(d)?;
        let v = Label::parse_all(&s).map_err(serde::de::Error::custom)?;
        match v.as_slice() {
            [l] => Ok(*l),
            _ => Err(serde::de::Error::custom(format!("expected one label, got {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_is_an_involution() {
        for b in Base::ALL {
            for sign in [Sign::Pos, Sign::Neg] {
                let l = Letter::new(b, sign);
                assert_eq!(l.inverse().inverse(), l);
                assert!(l.is_inverse_of(l.inverse()));
            }
        }
    }

    #[test]
    fn label_text_round_trip() {
        let labels = Label::parse_all("aB e1 E24 s S e12c").unwrap();
        assert_eq!(labels.len(), 8);
        assert_eq!(labels_to_string(&labels), "aBe1E24sSe12c");
        assert_eq!(Label::parse_all(&labels_to_string(&labels)).unwrap(), labels);
    }

    #[test]
    fn bad_labels_are_rejected() {
        assert!(Label::parse_all("e0").is_err());
        assert!(Label::parse_all("e25").is_err());
        assert!(Label::parse_all("x").is_err());
        assert!(Label::parse_all("e").is_err());
    }
}
