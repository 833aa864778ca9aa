//! A `Copy` encoding of short elements of `G`. The verifier and the rewriter use
//! it first and fall back to [`GElement`] when a word outgrows it.

use crate::complex::Vertex;
use crate::gelement::GElement;
use crate::letter::{Base, Factor, Generator, Label, Letter, Sign};
use crate::region::ForbiddenRegion;
use crate::selement::SElement;

/// A reduced word in one free factor, two bits per letter, last letter lowest.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PackedWord {
    bits: u64,
    len: u8,
}

impl PackedWord {
    const CAPACITY: usize = 32;

    /// `code = 2·(second base) + (negative)`; inverse letters differ in the low bit.
    #[inline]
    fn push(&mut self, code: u8) -> bool {
        if self.len > 0 && (self.bits & 3) as u8 == code ^ 1 {
            self.bits >>= 2;
            self.len -= 1;
            return true;
        }
        if self.len as usize == Self::CAPACITY {
            return false;
        }
        self.bits = (self.bits << 2) | code as u64;
        self.len += 1;
        true
    }

    fn codes(self) -> impl Iterator<Item = u8> {
        (0..self.len).rev().map(move |i| ((self.bits >> (2 * i as u32)) & 3) as u8)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct PackedG {
    ab: PackedWord,
    cd: PackedWord,
}

impl PackedG {
    /// Letters per factor.
    pub(crate) const CAPACITY: usize = PackedWord::CAPACITY;

    #[inline]
    pub(crate) fn push_letter(&mut self, l: Letter) -> bool {
        let neg = u8::from(l.sign == Sign::Neg);
        match l.base {
            Base::A => self.ab.push(neg),
            Base::B => self.ab.push(2 | neg),
            Base::C => self.cd.push(neg),
            Base::D => self.cd.push(2 | neg),
            Base::S => false,
        }
    }

    pub(crate) fn from_g(g: &GElement) -> Option<PackedG> {
        let mut p = PackedG::default();
        for &l in g.ab().letters().iter().chain(g.cd().letters()) {
            if !p.push_letter(l) {
                return None;
            }
        }
        Some(p)
    }

    fn to_g(self) -> GElement {
        let letter = |first: Base, second: Base, c: u8| {
            Letter::new(if c & 2 == 0 { first } else { second }, if c & 1 == 0 { Sign::Pos } else { Sign::Neg })
        };
        let mut g = GElement::identity();
        for c in self.ab.codes() {
            g.push(letter(Base::A, Base::B, c));
        }
        for c in self.cd.codes() {
            g.push(letter(Base::C, Base::D, c));
        }
        g
    }

    #[inline]
    pub(crate) fn length(self) -> usize {
        self.ab.len as usize + self.cd.len as usize
    }

    /// Last letter of the projection to `factor`.
    #[inline]
    pub(crate) fn last(self, factor: Factor) -> Option<Letter> {
        let (w, [first, second]) = match factor {
            Factor::Ab => (self.ab, [Base::A, Base::B]),
            Factor::Cd => (self.cd, [Base::C, Base::D]),
        };
        (w.len > 0).then(|| {
            let c = (w.bits & 3) as u8;
            Letter::new(if c & 2 == 0 { first } else { second }, if c & 1 == 0 { Sign::Pos } else { Sign::Neg })
        })
    }
}

impl Vertex for PackedG {
    fn identity() -> Self {
        PackedG::default()
    }

    #[inline]
    fn try_push(&mut self, l: Label) -> bool {
        match l.gen {
            Generator::Base(b) => self.push_letter(Letter::new(b, l.sign)),
            Generator::E(e) => {
                let w = e.word();
                match l.sign {
                    Sign::Pos => self.push_letter(w[0]) && self.push_letter(w[1]),
                    Sign::Neg => self.push_letter(w[1].inverse()) && self.push_letter(w[0].inverse()),
                }
            }
        }
    }

    fn to_selement(&self) -> SElement {
        SElement::from_gelement(&self.to_g())
    }

    fn from_selement(x: &SElement) -> Option<Self> {
        PackedG::from_g(&x.to_gelement()?)
    }

    #[inline]
    fn in_region(&self, region: &ForbiddenRegion) -> bool {
        match region.pure_ball() {
            Some(r) => self.length() <= r,
            None => region.contains_g(&self.to_g()),
        }
    }
}
