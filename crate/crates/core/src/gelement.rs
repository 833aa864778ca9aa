//! Elements of `G = F(a,b) x F(c,d)` as pairs of reduced words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::letter::{Base, Factor, Letter};
use crate::word::{Alphabet, FreeWord};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GElement {
    ab: FreeWord,
    cd: FreeWord,
}

#[derive(Deserialize)]
struct RawG {
    ab: FreeWord,
    cd: FreeWord,
}

impl<'de> Deserialize<'de> for GElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawG::deserialize(d)?;
        GElement::new(raw.ab, raw.cd).map_err(serde::de::Error::custom)
    }
}

impl GElement {
    pub fn identity() -> GElement {
        GElement::default()
    }

    pub fn new(ab: FreeWord, cd: FreeWord) -> Result<GElement> {
        let ab = FreeWord::reduce(ab.letters().iter().copied(), Alphabet::AB)?;
        let cd = FreeWord::reduce(cd.letters().iter().copied(), Alphabet::CD)?;
        Ok(GElement { ab, cd })
    }

    /// Value of a word over `{a,b,c,d}`; the two factors commute.
    pub fn from_letters(letters: &[Letter]) -> Result<GElement> {
        let mut g = GElement::identity();
        for &l in letters {
            if l.base == Base::S {
                return Err(Error::Alphabet {
                    letter: l.to_string(),
                    alphabet: Alphabet::ABCD.to_string(),
                });
            }
            g.push(l);
        }
        Ok(g)
    }

    pub fn parse(s: &str) -> Result<GElement> {
        GElement::from_letters(&Letter::parse_all(s)?)
    }

    pub fn ab(&self) -> &FreeWord {
        &self.ab
    }

    pub fn cd(&self) -> &FreeWord {
        &self.cd
    }

    pub fn projection(&self, factor: Factor) -> &FreeWord {
        match factor {
            Factor::Ab => &self.ab,
            Factor::Cd => &self.cd,
        }
    }

    /// Right multiplication by a letter of `{a,b,c,d}`.
    ///
    /// Panics on `s`; callers outside this crate go through [`GElement::from_letters`].
    #[inline]
    pub fn push(&mut self, l: Letter) {
        match l.base {
            Base::A | Base::B => self.ab.push(l),
            Base::C | Base::D => self.cd.push(l),
            Base::S => panic!("s is not an element of F(a,b) x F(c,d)"),
        }
    }

    pub fn mul(&self, other: &GElement) -> GElement {
        GElement {
            ab: self.ab.mul(&other.ab),
            cd: self.cd.mul(&other.cd),
        }
    }

    pub fn inverse(&self) -> GElement {
        GElement {
            ab: self.ab.inverse(),
            cd: self.cd.inverse(),
        }
    }

    pub fn exponent_sum(&self) -> i64 {
        // Both projections are over {a,b,c,d}, so this cannot fail.
        self.ab.exponent_sum().unwrap_or(0) + self.cd.exponent_sum().unwrap_or(0)
    }

    /// Membership in the kernel `K` of the exponent-sum map.
    pub fn in_kernel(&self) -> bool {
        self.exponent_sum() == 0
    }

    /// Word length in `{a,b,c,d}`, i.e. distance from the identity in Γ₁.
    pub fn length(&self) -> usize {
        self.ab.len() + self.cd.len()
    }

    pub fn is_identity(&self) -> bool {
        self.ab.is_empty() && self.cd.is_empty()
    }

    /// `aⁿ · self · a⁻ⁿ`. Only the `F(a,b)` projection changes.
    pub fn conjugate_by_a(&self, n: i64) -> GElement {
        if n == 0 {
            return self.clone();
        }
        let mut ab = FreeWord::power(Base::A, n);
        ab.mul_assign(&self.ab);
        ab.push_power(Base::A, -n);
        GElement {
            ab,
            cd: self.cd.clone(),
        }
    }

    /// Right multiplication by `aⁿ x a⁻ⁿ` where `x` is given by its projections.
    #[inline]
    pub(crate) fn mul_conjugated(&mut self, n: i64, x_ab: &[Letter], x_cd: &[Letter]) {
        if !x_ab.is_empty() {
            self.ab.push_power(Base::A, n);
            for &l in x_ab {
                self.ab.push(l);
            }
            self.ab.push_power(Base::A, -n);
        }
        for &l in x_cd {
            self.cd.push(l);
        }
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.ab, self.cd)
    }
}

impl fmt::Debug for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The exponent-sum homomorphism onto ℤ.
pub trait ExponentSum {
    fn exponent_sum(&self) -> Result<i64>;
}

impl ExponentSum for FreeWord {
    fn exponent_sum(&self) -> Result<i64> {
        FreeWord::exponent_sum(self)
    }
}

impl ExponentSum for GElement {
    fn exponent_sum(&self) -> Result<i64> {
        Ok(GElement::exponent_sum(self))
    }
}

pub fn exponent_sum<T: ExponentSum>(x: &T) -> Result<i64> {
    x.exponent_sum()
}

pub fn in_kernel(x: &GElement) -> bool {
    x.in_kernel()
}
