//! Normal form and word problem for Stallings' group `S`.
//!
//! `K` is normal in `S` with free quotient on the images of `a` and `s`, and
//! `s` centralises `K`. Every element is therefore uniquely `k · t` with
//! `k ∈ K` and `t` a reduced word over `{a, s}`. The tail acts on `K` through
//! its total `a`-exponent `n`: `t k t⁻¹ = aⁿ k a⁻ⁿ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gelement::GElement;
use crate::letter::{letters_to_string, Base, Generator, Label, Letter, Sign};
use crate::word::{Alphabet, FreeWord};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SElement {
    k: GElement,
    tail: FreeWord,
}

#[derive(Deserialize)]
struct RawS {
    k: GElement,
    tail: FreeWord,
}

impl<'de> Deserialize<'de> for SElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawS::deserialize(d)?;
        SElement::new(raw.k, raw.tail).map_err(serde::de::Error::custom)
    }
}

/// An unreduced word over `{a,b,c,d,s}^{±1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SWord(pub Vec<Letter>);

impl SWord {
    pub fn parse(s: &str) -> Result<SWord> {
        Letter::parse_all(s).map(SWord)
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

    pub fn concat(&self, other: &SWord) -> SWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SWord(v)
    }

    pub fn inverse(&self) -> SWord {
        SWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

impl fmt::Display for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", letters_to_string(&self.0))
    }
}

impl SElement {
    pub fn identity() -> SElement {
        SElement::default()
    }

    pub fn new(k: GElement, tail: FreeWord) -> Result<SElement> {
        if !k.in_kernel() {
            return Err(Error::Precondition(format!("K-part {k} has nonzero exponent sum")));
        }
        let tail = FreeWord::reduce(tail.letters().iter().copied(), Alphabet::AS)?;
        Ok(SElement { k, tail })
    }

    pub fn k(&self) -> &GElement {
        &self.k
    }

    pub fn tail(&self) -> &FreeWord {
        &self.tail
    }

    /// Total `a`-exponent of the tail; equals the `{a,b,c,d}` exponent sum of any word for `self`.
    pub fn a_exponent(&self) -> i64 {
        self.tail.exponent_of(Base::A)
    }

    /// Total `s`-exponent of the tail: the level in the product structure of `Γ̄(H)`.
    pub fn s_level(&self) -> i64 {
        self.tail.exponent_of(Base::S)
    }

    /// Embeds `g ∈ G` as `(g·a^{-es(g)}, a^{es(g)})`.
    pub fn from_gelement(g: &GElement) -> SElement {
        let n = g.exponent_sum();
        let mut k = g.clone();
        let inv = Letter::new(Base::A, Sign::of(-n));
        for _ in 0..n.unsigned_abs() {
            k.push(inv);
        }
        SElement {
            k,
            tail: FreeWord::power(Base::A, n),
        }
    }

    /// Inverse of [`SElement::from_gelement`] on elements whose tail is a power of `a`.
    pub fn to_gelement(&self) -> Option<GElement> {
        if self.tail.letters().iter().any(|l| l.base == Base::S) {
            return None;
        }
        let n = self.a_exponent();
        let mut g = self.k.clone();
        let a = Letter::new(Base::A, Sign::of(n));
        for _ in 0..n.unsigned_abs() {
            g.push(a);
        }
        Some(g)
    }

    pub fn in_g(&self) -> bool {
        self.tail.letters().iter().all(|l| l.base == Base::A)
    }

    /// Right multiplication by `x ∈ K`.
    pub fn mul_kernel(&mut self, x: &GElement) {
        let n = self.a_exponent();
        self.k.mul_conjugated(n, x.ab().letters(), x.cd().letters());
    }

    /// Right multiplication by one letter.
    #[inline]
    pub fn push(&mut self, l: Letter) {
        match l.base {
            Base::S => self.tail.push(l),
            Base::A => self.tail.push(l),
            base => {
                // l = (l·a^{-ε}) a^{ε} with l·a^{-ε} ∈ K
                let n = self.a_exponent();
                let shift = Letter::new(Base::A, -l.sign);
                if base == Base::B {
                    self.k.mul_conjugated(n, &[l, shift], &[]);
                } else {
                    self.k.mul_conjugated(n, &[shift], &[l]);
                }
                self.tail.push(Letter::new(Base::A, l.sign));
            }
        }
    }

    /// Right multiplication by a generator label of the presentation of `S`.
    #[inline]
    pub fn act(&self, label: Label) -> SElement {
        let mut out = self.clone();
        out.push_label(label);
        out
    }

    #[inline]
    pub fn push_label(&mut self, label: Label) {
        match label.gen {
            Generator::Base(b) => self.push(Letter::new(b, label.sign)),
            Generator::E(e) => {
                let w = e.word();
                let w = match label.sign {
                    Sign::Pos => w,
                    Sign::Neg => [w[1].inverse(), w[0].inverse()],
                };
                let n = self.a_exponent();
                push_kernel_letters(&mut self.k, n, &w);
            }
        }
    }

    pub fn mul(&self, other: &SElement) -> SElement {
        let n = self.a_exponent();
        let mut k = self.k.clone();
        k.mul_conjugated(n, other.k.ab().letters(), other.k.cd().letters());
        SElement {
            k,
            tail: self.tail.mul(&other.tail),
        }
    }

    pub fn inverse(&self) -> SElement {
        let n = self.a_exponent();
        SElement {
            k: self.k.inverse().conjugate_by_a(-n),
            tail: self.tail.inverse(),
        }
    }

    /// Value of a word over `{a,b,c,d,s}`.
    pub fn normalize(letters: &[Letter]) -> SElement {
        let mut out = SElement::identity();
        for &l in letters {
            out.push(l);
        }
        out
    }

    pub fn of_labels(labels: &[Label]) -> SElement {
        let mut out = SElement::identity();
        for &l in labels {
            out.push_label(l);
        }
        out
    }

    pub fn parse(s: &str) -> Result<SElement> {
        Ok(SElement::of_labels(&Label::parse_all(s)?))
    }

    /// A word over `{a,b,c,d,s}` evaluating to `self`.
    pub fn to_word(&self) -> SWord {
        let mut v: Vec<Letter> = self.k.ab().letters().to_vec();
        v.extend_from_slice(self.k.cd().letters());
        v.extend_from_slice(self.tail.letters());
        SWord(v)
    }
}

/// Pushes a kernel word `w` (two letters from the e-table) conjugated by `aⁿ`.
#[inline]
fn push_kernel_letters(k: &mut GElement, n: i64, w: &[Letter; 2]) {
    let mut ab = [Letter::pos(Base::A); 2];
    let mut cd = [Letter::pos(Base::C); 2];
    let (mut na, mut nc) = (0, 0);
    for &l in w {
        if matches!(l.base, Base::A | Base::B) {
            ab[na] = l;
            na += 1;
        } else {
            cd[nc] = l;
            nc += 1;
        }
    }
    k.mul_conjugated(n, &ab[..na], &cd[..nc]);
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[k={}, t={:?}]", self.k, self.tail)
    }
}

impl fmt::Debug for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn s_normalize(w: &SWord) -> SElement {
    SElement::normalize(&w.0)
}

pub fn s_multiply(x: &SElement, y: &SElement) -> SElement {
    x.mul(y)
}

pub fn s_invert(x: &SElement) -> SElement {
    x.inverse()
}

pub fn s_equal(u: &SWord, v: &SWord) -> bool {
    s_normalize(u) == s_normalize(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::EGen;

    fn sw(s: &str) -> SWord {
        SWord::parse(s).unwrap()
    }

    #[test]
    fn s_commutes_with_ba_inverse() {
        assert_eq!(s_normalize(&sw("SbAs")), s_normalize(&sw("bA")));
    }

    #[test]
    fn abs_normal_form() {
        let x = s_normalize(&sw("abs"));
        assert_eq!(x.k(), &GElement::parse("abAA").unwrap());
        assert_eq!(x.tail().to_string(), "aas");
        // k · a² · s re-evaluates to a·b·s
        let mut back = SElement::from_gelement(x.k());
        back.push(Letter::pos(Base::A));
        back.push(Letter::pos(Base::A));
        back.push(Letter::pos(Base::S));
        assert_eq!(back, x);
    }

    #[test]
    fn empty_word_is_identity() {
        assert_eq!(s_normalize(&SWord::default()), SElement::identity());
    }

    #[test]
    fn sa_and_as_differ() {
        assert!(!s_equal(&sw("sa"), &sw("as")));
    }

    #[test]
    fn ba_inverse_commutes_with_s() {
        assert!(s_equal(&sw("bAs"), &sw("sbA")));
    }

    #[test]
    fn s_centralises_every_e_generator() {
        let s = SElement::parse("s").unwrap();
        for e in EGen::all() {
            let x = SElement::of_labels(&[Label::e(e, Sign::Pos)]);
            assert_eq!(s.mul(&x).mul(&s.inverse()), x, "e{}", e.index());
        }
    }

    #[test]
    fn conjugating_ba_inverse_by_a() {
        let x = SElement::parse("a bA A").unwrap();
        assert_eq!(x.k(), &GElement::parse("aC bC cA cA").unwrap());
        assert!(x.tail().is_empty());
    }

    #[test]
    fn gelement_embedding_round_trips() {
        for s in ["", "a", "abAc", "dddBc", "CCa"] {
            let g = GElement::parse(s).unwrap();
            let x = SElement::from_gelement(&g);
            assert_eq!(x.to_gelement().unwrap(), g);
            assert_eq!(x, SElement::parse(s).unwrap());
        }
        assert!(SElement::parse("as").unwrap().to_gelement().is_none());
    }
}
