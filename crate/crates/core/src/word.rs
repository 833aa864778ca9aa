//! Freely reduced words over a declared sub-alphabet of `{a,b,c,d,s}`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::letter::{letters_to_string, Base, Letter, Sign};

/// A set of bases, used to declare which letters a word may contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(u8);

impl Alphabet {
    pub const AB: Alphabet = Alphabet::of(&[Base::A, Base::B]);
    pub const CD: Alphabet = Alphabet::of(&[Base::C, Base::D]);
    pub const AS: Alphabet = Alphabet::of(&[Base::A, Base::S]);
    pub const ABCD: Alphabet = Alphabet::of(&[Base::A, Base::B, Base::C, Base::D]);
    pub const ALL: Alphabet = Alphabet::of(&Base::ALL);

    pub const fn of(bases: &[Base]) -> Alphabet {
        let mut bits = 0u8;
        let mut i = 0;
        while i < bases.len() {
            bits |= 1 << bases[i] as u8;
            i += 1;
        }
        Alphabet(bits)
    }

    pub fn contains(self, base: Base) -> bool {
        self.0 & (1 << base as u8) != 0
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = Base::ALL
            .iter()
            .filter(|b| self.contains(**b))
            .map(|b| b.to_char().to_string())
            .collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

pub(crate) type Letters = SmallVec<[Letter; 16]>;

/// A reduced word: no letter is adjacent to its inverse. The empty word is the identity.
#[derive(Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Letters,
}

impl Clone for FreeWord {
    // the derived clone goes letter by letter; this is a memcpy
    #[inline]
    fn clone(&self) -> FreeWord {
        FreeWord {
            letters: Letters::from_slice(&self.letters),
        }
    }
}

/// Free reduction of a letter sequence drawn from `alphabet`.
pub fn reduce(letters: &[Letter], alphabet: Alphabet) -> Result<FreeWord> {
    FreeWord::reduce(letters.iter().copied(), alphabet)
}

impl FreeWord {
    pub fn new() -> FreeWord {
        FreeWord::default()
    }

    pub fn reduce(letters: impl IntoIterator<Item = Letter>, alphabet: Alphabet) -> Result<FreeWord> {
        let mut w = FreeWord::new();
        for l in letters {
            if !alphabet.contains(l.base) {
                return Err(Error::Alphabet {
                    letter: l.to_string(),
                    alphabet: alphabet.to_string(),
                });
            }
            w.push(l);
        }
        Ok(w)
    }

    /// `letter^n`, with negative `n` meaning the inverse letter.
    pub fn power(base: Base, n: i64) -> FreeWord {
        let l = Letter::new(base, Sign::of(n));
        FreeWord {
            letters: std::iter::repeat(l).take(n.unsigned_abs() as usize).collect(),
        }
    }

    pub fn parse(s: &str, alphabet: Alphabet) -> Result<FreeWord> {
        FreeWord::reduce(Letter::parse_all(s)?, alphabet)
    }

    /// Right multiplication by one letter, cancelling if needed.
    #[inline]
    pub fn push(&mut self, l: Letter) {
        match self.letters.last() {
            Some(last) if last.is_inverse_of(l) => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    #[inline]
    pub(crate) fn push_power(&mut self, base: Base, n: i64) {
        let l = Letter::new(base, Sign::of(n));
        for _ in 0..n.unsigned_abs() {
            self.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    pub fn mul_assign(&mut self, other: &FreeWord) {
        for &l in other.letters.iter() {
            self.push(l);
        }
    }

    /// Sum of all exponents; the stable letter `s` has no image in ℤ here.
    pub fn exponent_sum(&self) -> Result<i64> {
        let mut sum = 0;
        for l in self.letters.iter() {
            if l.base == Base::S {
                return Err(Error::StableLetter);
            }
            sum += l.exponent();
        }
        Ok(sum)
    }

    /// Exponent sum of one base only.
    pub fn exponent_of(&self, base: Base) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.base == base)
            .map(|l| l.exponent())
            .sum()
    }

    pub fn is_reduced_over(&self, alphabet: Alphabet) -> bool {
        self.letters.iter().all(|l| alphabet.contains(l.base))
            && self.letters.windows(2).all(|p| !p[0].is_inverse_of(p[1]))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", letters_to_string(&self.letters))
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<FreeWord, D::Error> {
        let s = String::deserialize(d)?;
        FreeWord::parse(&s, Alphabet::ALL).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<Letter> {
        Letter::parse_all(s).unwrap()
    }

    #[test]
    fn identity_case() {
        assert!(reduce(&w("aA"), Alphabet::AB).unwrap().is_empty());
    }

    #[test]
    fn single_cancellation() {
        assert_eq!(reduce(&w("bAaA"), Alphabet::AB).unwrap().to_string(), "bA");
    }

    #[test]
    fn mixed_alphabet_rejected() {
        let err = reduce(&w("ac"), Alphabet::AB).unwrap_err();
        assert!(matches!(err, Error::Alphabet { .. }));
    }

    #[test]
    fn exponent_sum_rejects_s() {
        let word = FreeWord::parse("as", Alphabet::AS).unwrap();
        assert!(matches!(word.exponent_sum(), Err(Error::StableLetter)));
    }

    #[test]
    fn powers() {
        assert_eq!(FreeWord::power(Base::A, -3).to_string(), "AAA");
        assert!(FreeWord::power(Base::B, 0).is_empty());
    }
}
