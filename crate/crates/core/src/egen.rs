//! The 24 e-generators of the kernel `K`: every two-letter word `uv⁻¹` or
//! `u⁻¹v` with `u ≠ v` in `{a,b,c,d}`.
//!
//! Order (indices are 1-based):
//!
//! | index | words |
//! |-------|-------|
//! | 1–6   | `ba⁻¹ ca⁻¹ da⁻¹ cb⁻¹ db⁻¹ dc⁻¹` (the distinguished set `T`) |
//! | 7–12  | `ab⁻¹ ac⁻¹ ad⁻¹ bc⁻¹ bd⁻¹ cd⁻¹` |
//! | 13–24 | `u⁻¹v` for `(u,v)` in lexicographic order: `a⁻¹b a⁻¹c a⁻¹d b⁻¹a b⁻¹c b⁻¹d c⁻¹a c⁻¹b c⁻¹d d⁻¹a d⁻¹b d⁻¹c` |
//!
//! Several entries are equal as group elements (`ca⁻¹ = a⁻¹c`, and `ab⁻¹` is the
//! inverse of `ba⁻¹`); they stay distinct generators of the presentation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gelement::GElement;
use crate::letter::{Base, EGen, Label, Letter, Sign};

pub const Q: usize = 24;

const fn uv_inv(u: Base, v: Base) -> [Letter; 2] {
    [Letter::pos(u), Letter::neg(v)]
}

const fn u_inv_v(u: Base, v: Base) -> [Letter; 2] {
    [Letter::neg(u), Letter::pos(v)]
}

use Base::{A, B, C, D};

static TABLE: [[Letter; 2]; Q] = [
    uv_inv(B, A),
    uv_inv(C, A),
    uv_inv(D, A),
    uv_inv(C, B),
    uv_inv(D, B),
    uv_inv(D, C),
    uv_inv(A, B),
    uv_inv(A, C),
    uv_inv(A, D),
    uv_inv(B, C),
    uv_inv(B, D),
    uv_inv(C, D),
    u_inv_v(A, B),
    u_inv_v(A, C),
    u_inv_v(A, D),
    u_inv_v(B, A),
    u_inv_v(B, C),
    u_inv_v(B, D),
    u_inv_v(C, A),
    u_inv_v(C, B),
    u_inv_v(C, D),
    u_inv_v(D, A),
    u_inv_v(D, B),
    u_inv_v(D, C),
];

impl EGen {
    /// From a 1-based index.
    pub fn new(index: usize) -> Option<EGen> {
        (1..=Q).contains(&index).then(|| EGen((index - 1) as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize + 1
    }

    pub fn word(self) -> [Letter; 2] {
        TABLE[self.0 as usize]
    }

    pub fn value(self) -> GElement {
        GElement::from_letters(&self.word()).expect("table words avoid s")
    }

    pub fn all() -> impl Iterator<Item = EGen> {
        (0..Q as u8).map(EGen)
    }

    /// `T = {e₁,…,e₆}`.
    pub fn t_set() -> [EGen; 6] {
        [EGen(0), EGen(1), EGen(2), EGen(3), EGen(4), EGen(5)]
    }

    /// The generator whose word is exactly `(first, second)`.
    pub fn from_pair(first: Letter, second: Letter) -> Option<EGen> {
        TABLE
            .iter()
            .position(|w| w[0] == first && w[1] == second)
            .map(|i| EGen(i as u8))
    }
}

/// Substitutes `wᵢ` for every `eᵢ^{±1}`.
pub fn e_expand(labels: &[Label]) -> Result<Vec<Letter>> {
    let mut out = Vec::with_capacity(2 * labels.len());
    for &l in labels {
        let (e, sign) = l
            .as_e()
            .ok_or_else(|| Error::Path(format!("e_expand: {l} is not an e-generator")))?;
        let w = e.word();
        match sign {
            Sign::Pos => out.extend_from_slice(&w),
            Sign::Neg => out.extend([w[1].inverse(), w[0].inverse()]),
        }
    }
    Ok(out)
}

/// Even length over `{a,b,c,d}`, each aligned pair with opposite exponents and
/// distinct bases, so that every pair is one of the table words.
pub fn is_k_path(letters: &[Letter]) -> bool {
    letters.len() % 2 == 0
        && letters.chunks(2).all(|p| {
            p[0].base != Base::S && p[1].base != Base::S && p[0].sign != p[1].sign && p[0].base != p[1].base
        })
}

/// Groups a K-path two letters at a time into e-generators.
pub fn k_pair(letters: &[Letter]) -> Result<Vec<Label>> {
    if letters.len() % 2 != 0 {
        return Err(Error::NotKPath(format!("odd length {}", letters.len())));
    }
    letters
        .chunks(2)
        .enumerate()
        .map(|(i, p)| {
            EGen::from_pair(p[0], p[1])
                .map(|e| Label::e(e, Sign::Pos))
                .ok_or_else(|| Error::NotKPath(format!("pair {} = {}{} is not an e-generator", i, p[0], p[1])))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EGenEntry {
    pub index: usize,
    pub name: String,
    pub word: String,
    pub in_t: bool,
}

pub fn egen_table() -> Vec<EGenEntry> {
    EGen::all()
        .map(|e| EGenEntry {
            index: e.index(),
            name: format!("e{}", e.index()),
            word: e.word().iter().map(|l| l.to_char()).collect(),
            in_t: e.index() <= 6,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::letters_to_string;
    use std::collections::HashSet;

    fn letters(s: &str) -> Vec<Letter> {
        Letter::parse_all(s).unwrap()
    }

    #[test]
    fn table_words_are_distinct_and_balanced() {
        let words: HashSet<_> = TABLE.iter().collect();
        assert_eq!(words.len(), Q);
        for e in EGen::all() {
            let w = e.word();
            assert_ne!(w[0].base, w[1].base);
            assert_eq!(w[0].exponent() + w[1].exponent(), 0);
            assert!(e.value().in_kernel());
        }
    }

    #[test]
    fn t_matches_the_six_kernel_generators() {
        let names: Vec<String> = EGen::t_set().iter().map(|e| letters_to_string(&e.word())).collect();
        assert_eq!(names, ["bA", "cA", "dA", "cB", "dB", "dC"]);
    }

    #[test]
    fn k_pair_examples() {
        assert_eq!(k_pair(&letters("bA")).unwrap(), vec![Label::e(EGen::new(1).unwrap(), Sign::Pos)]);
        let paired = k_pair(&letters("aDbD")).unwrap();
        assert_eq!(e_expand(&paired).unwrap(), letters("aDbD"));
        assert_eq!(paired[0].as_e().unwrap().0.word(), [Letter::pos(A), Letter::neg(D)]);
    }

    #[test]
    fn k_pair_rejects_non_k_paths() {
        assert!(k_pair(&letters("aDb")).is_err());
        assert!(k_pair(&letters("ab")).is_err());
        assert!(k_pair(&letters("aA")).is_err());
    }

    #[test]
    fn round_trip_exhaustive_up_to_length_8() {
        let abcd: Vec<Letter> = Base::ABCD
            .iter()
            .flat_map(|&b| [Letter::pos(b), Letter::neg(b)])
            .collect();
        let pairs: Vec<[Letter; 2]> = abcd
            .iter()
            .flat_map(|&x| abcd.iter().map(move |&y| [x, y]))
            .filter(|p| p[0].sign != p[1].sign && p[0].base != p[1].base)
            .collect();
        assert_eq!(pairs.len(), Q);
        let mut paths: Vec<Vec<Letter>> = vec![vec![]];
        let mut checked = 0;
        for _ in 0..4 {
            paths = paths
                .iter()
                .flat_map(|p| {
                    pairs.iter().map(move |q| {
                        let mut v = p.clone();
                        v.extend_from_slice(q);
                        v
                    })
                })
                .collect();
            for p in &paths {
                assert!(is_k_path(p));
                assert_eq!(&e_expand(&k_pair(p).unwrap()).unwrap(), p);
                checked += 1;
            }
        }
        assert_eq!(checked, 24 + 24usize.pow(2) + 24usize.pow(3) + 24usize.pow(4));
    }

    #[test]
    fn negative_e_letters_expand_to_inverse_words() {
        let e1 = EGen::new(1).unwrap();
        assert_eq!(e_expand(&[Label::e(e1, Sign::Neg)]).unwrap(), letters("aB"));
    }
}
