//! Named homotopies built from elementary moves: product homotopies,
//! alternation into K-paths, triangle conversion, s-bands and s-translation,
//! and combing in the product of two trees.
//!
//! The `*_at` forms act on a segment of a live [`Homotopy`]; the others wrap
//! them into stand-alone certificates.

use crate::certificate::{Certificate, Homotopy};
use crate::complex::ComplexKind;
use crate::egen::is_k_path;
use crate::error::{Error, Result};
use crate::letter::{Base, EGen, Factor, Generator, Label, Letter, Sign};
use crate::path::EdgePath;
use crate::selement::SElement;

fn letters_of(labels: &[Label]) -> Option<Vec<Letter>> {
    labels.iter().map(|l| l.as_letter()).collect()
}

fn factor_of(l: Label) -> Option<Factor> {
    l.as_letter().and_then(|x| x.base.factor())
}

/// `(τ, γ) → (γ', τ')` for the segment `labels[pos..pos+n+m]`, `|τ| = n`, `|γ| = m`.
///
/// Pushes each letter of `γ` left past all of `τ`: `n·m` commutation squares.
pub fn product_at(h: &mut Homotopy, pos: usize, n: usize, m: usize) -> Result<()> {
    for j in 0..m {
        for i in (pos + j..pos + n + j).rev() {
            h.commute(i)?;
        }
    }
    Ok(())
}

/// `(τ, γ) → τ₁γ₁τ₂γ₂…` for two segments of length `n` at `pos`: `n(n−1)/2` squares.
pub fn alternation_at(h: &mut Homotopy, pos: usize, n: usize) -> Result<()> {
    // γ_j sits at pos + n + j and moves to pos + 2j + 1
    for j in 0..n {
        for i in (pos + 2 * j + 1..pos + n + j).rev() {
            h.commute(i)?;
        }
    }
    Ok(())
}

/// Replaces each aligned pair of the K-path segment by its e-generator.
pub fn triangle_at(h: &mut Homotopy, pos: usize, pairs: usize) -> Result<()> {
    for i in 0..pairs {
        let p = pos + i;
        let (x, y) = (h.labels()[p], h.labels()[p + 1]);
        let e = x
            .as_letter()
            .zip(y.as_letter())
            .and_then(|(x, y)| EGen::from_pair(x, y))
            .ok_or_else(|| Error::NotKPath(format!("{x}{y} is not an e-generator")))?;
        h.swap(p, 2, &[Label::e(e, Sign::Pos)])?;
    }
    Ok(())
}

/// Replaces every e-letter of the segment by its two-letter word; returns the new length.
pub fn expand_at(h: &mut Homotopy, pos: usize, len: usize) -> Result<usize> {
    let mut i = pos;
    let mut end = pos + len;
    while i < end {
        let l = h.labels()[i];
        if let Some((e, sign)) = l.as_e() {
            let w = e.word();
            let repl: [Label; 2] = match sign {
                Sign::Pos => [w[0].into(), w[1].into()],
                Sign::Neg => [w[1].inverse().into(), w[0].inverse().into()],
            };
            h.swap(i, 1, &repl)?;
            i += 2;
            end += 1;
        } else {
            i += 1;
        }
    }
    Ok(end - pos)
}

/// `δ → (s^ε, δ', s^{−ε})` for the e-segment at `pos`: one backtrack, `|δ|` squares.
pub fn band_at(h: &mut Homotopy, pos: usize, len: usize, sign: Sign) -> Result<()> {
    let s = Label::from(Letter::new(Base::S, sign));
    h.insert_backtrack(pos, s);
    for k in 0..len {
        h.commute(pos + 1 + k)?;
    }
    Ok(())
}

/// Inverse of [`band_at`]: `(s^ε, δ', s^{−ε}) → δ` for `len = |δ|` e-letters between the s-letters at `pos`.
pub fn band_collapse_at(h: &mut Homotopy, pos: usize, len: usize, sign: Sign) -> Result<()> {
    let s = Label::from(Letter::new(Base::S, sign));
    if h.labels().get(pos) != Some(&s) || h.labels().get(pos + len + 1) != Some(&s.inverse()) {
        return Err(Error::Precondition(format!("no s-band of length {len} at {pos}")));
    }
    for k in 0..len {
        h.commute(pos + k)?;
    }
    h.delete_backtrack(pos + len)
}

/// `p` stacked bands: `γ → (s^p, γ'', s^{−p})`; negative `p` uses `s⁻¹`.
pub fn s_translation_at(h: &mut Homotopy, pos: usize, len: usize, p: i64) -> Result<()> {
    let sign = Sign::of(p);
    for layer in 0..p.unsigned_abs() as usize {
        band_at(h, pos + layer, len, sign)?;
    }
    Ok(())
}

/// Contracts the `{a,b,c,d}`-loop segment at `pos` to nothing: push `{c,d}`-letters
/// left, then cancel within each factor.
pub fn comb_at(h: &mut Homotopy, pos: usize, len: usize) -> Result<()> {
    let mut cd_end = pos;
    for i in pos..pos + len {
        match factor_of(h.labels()[i]) {
            Some(Factor::Cd) => {
                for j in (cd_end..i).rev() {
                    h.commute(j)?;
                }
                cd_end += 1;
            }
            Some(Factor::Ab) => {}
            None => return Err(Error::Path(format!("comb: {} is not in {{a,b,c,d}}", h.labels()[i]))),
        }
    }
    let left = h.reduce_segment(pos, len);
    if left != 0 {
        return Err(Error::Precondition("comb: segment is not a loop".into()));
    }
    Ok(())
}

fn check_factor(letters: &[Letter], what: &str) -> Result<Option<Factor>> {
    let mut f = None;
    for l in letters {
        let lf = l.base.factor().ok_or_else(|| Error::Precondition(format!("{what}: s is not allowed")))?;
        if f.is_some_and(|f| f != lf) {
            return Err(Error::Precondition(format!("{what} mixes the two free factors")));
        }
        f = Some(lf);
    }
    Ok(f)
}

fn path_of(base: &SElement, parts: &[&[Letter]]) -> EdgePath {
    EdgePath::new(
        base.clone(),
        parts.iter().flat_map(|p| p.iter().map(|&l| Label::from(l))).collect(),
    )
}

/// Product homotopy from `(τ, γ)` at `base` to `(γ', τ')`.
pub fn product_homotopy(base: &SElement, tau: &[Letter], gamma: &[Letter]) -> Result<Certificate> {
    let ft = check_factor(tau, "tau")?;
    let fg = check_factor(gamma, "gamma")?;
    if ft.is_some() && ft == fg {
        return Err(Error::Precondition("tau and gamma lie in the same factor".into()));
    }
    let mut h = Homotopy::new(ComplexKind::Gamma1, path_of(base, &[tau, gamma]));
    product_at(&mut h, 0, tau.len(), gamma.len())?;
    Ok(h.finish())
}

/// Alternation homotopy from `(τ, γ)` to the K-path `τ₁γ₁τ₂γ₂…`.
pub fn alternation_homotopy(base: &SElement, tau: &[Letter], gamma: &[Letter]) -> Result<Certificate> {
    if tau.len() != gamma.len() {
        return Err(Error::Precondition(format!("lengths {} and {} differ", tau.len(), gamma.len())));
    }
    let ft = check_factor(tau, "tau")?;
    let fg = check_factor(gamma, "gamma")?;
    if ft.is_some() && ft == fg {
        return Err(Error::Precondition("tau and gamma lie in the same factor".into()));
    }
    if tau.iter().zip(gamma).any(|(x, y)| x.sign == y.sign) {
        return Err(Error::Precondition("exponents of tau and gamma must be opposite".into()));
    }
    let mut h = Homotopy::new(ComplexKind::Gamma1, path_of(base, &[tau, gamma]));
    alternation_at(&mut h, 0, tau.len())?;
    Ok(h.finish())
}

/// Triangle-cell homotopy from a K-path to the e-path pairing its letters.
pub fn triangle_convert(path: &EdgePath) -> Result<Certificate> {
    let letters = letters_of(&path.labels).ok_or_else(|| Error::NotKPath("contains e-letters".into()))?;
    if !is_k_path(&letters) {
        return Err(Error::NotKPath(path.label_string()));
    }
    let mut h = Homotopy::new(ComplexKind::Gamma2, path.clone());
    triangle_at(&mut h, 0, letters.len() / 2)?;
    Ok(h.finish())
}

fn check_e_path(path: &EdgePath) -> Result<()> {
    match path.labels.iter().find(|l| !matches!(l.gen, Generator::E(_))) {
        Some(l) => Err(Error::Path(format!("{l} is not an e-generator"))),
        None => Ok(()),
    }
}

/// Band homotopy from the e-path `δ₁` to `(s^ε, δ₂, s^{−ε})`.
pub fn band_homotopy(path: &EdgePath, sign: Sign) -> Result<Certificate> {
    check_e_path(path)?;
    let mut h = Homotopy::new(ComplexKind::GammaHbar, path.clone());
    band_at(&mut h, 0, path.len(), sign)?;
    Ok(h.finish())
}

/// Translates an e-loop at `g` to the loop with the same labels at `g·s^p`.
pub fn s_translation_homotopy(path: &EdgePath, p: i64) -> Result<Certificate> {
    check_e_path(path)?;
    if !path.is_loop() {
        return Err(Error::Precondition("s-translation needs a loop".into()));
    }
    let mut h = Homotopy::new(ComplexKind::GammaHbar, path.clone());
    s_translation_at(&mut h, 0, path.len(), p)?;
    Ok(h.finish())
}

/// Null-homotopy of a `Γ₁`-loop by combing in `Γ(𝒬₁)`.
pub fn comb_null_homotopy(path: &EdgePath) -> Result<Certificate> {
    if letters_of(&path.labels).is_none_or(|l| l.iter().any(|x| x.base == Base::S)) {
        return Err(Error::Path("comb: labels must lie in {a,b,c,d}".into()));
    }
    if !path.is_loop() {
        return Err(Error::Precondition("comb: not a loop".into()));
    }
    let mut h = Homotopy::new(ComplexKind::Gamma1, path.clone());
    comb_at(&mut h, 0, path.len())?;
    let n = path.len();
    debug_assert!(h.moves().len() <= n * n);
    Ok(h.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::labels_to_string;
    use crate::region::ForbiddenRegion;
    use std::collections::BTreeSet;

    fn letters(s: &str) -> Vec<Letter> {
        Letter::parse_all(s).unwrap()
    }

    #[test]
    fn unit_square() {
        let c = product_homotopy(&SElement::identity(), &letters("a"), &letters("c")).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.claimed_end.label_string(), "ca");
        assert!(c.verify(&ForbiddenRegion::empty()).ok);
    }

    #[test]
    fn product_grid() {
        let base = SElement::parse("aab").unwrap();
        let c = product_homotopy(&base, &letters("ab"), &letters("DD")).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.claimed_end.label_string(), "DDab");
        let sweep: BTreeSet<SElement> = c.swept_vertices().unwrap().into_iter().collect();
        let mut grid = BTreeSet::new();
        for i in 0..=2 {
            for j in 0..=2 {
                let mut w: Vec<Letter> = letters("ab")[..i].to_vec();
                w.extend(&letters("DD")[..j]);
                grid.insert(base.mul(&SElement::normalize(&w)));
            }
        }
        assert_eq!(sweep, grid);
    }

    #[test]
    fn alternation_examples() {
        let c = alternation_homotopy(&SElement::identity(), &letters("ab"), &letters("DD")).unwrap();
        assert_eq!(c.claimed_end.label_string(), "aDbD");
        assert!(c.verify(&ForbiddenRegion::empty()).ok);
        let c = alternation_homotopy(&SElement::identity(), &letters("c"), &letters("A")).unwrap();
        assert_eq!(c.claimed_end.label_string(), "cA");
        assert!(c.moves.is_empty());
        assert!(alternation_homotopy(&SElement::identity(), &letters("ab"), &letters("dd")).is_err());
        assert!(alternation_homotopy(&SElement::identity(), &letters("ab"), &letters("D")).is_err());
    }

    #[test]
    fn triangles() {
        let c = triangle_convert(&EdgePath::parse("", "bA").unwrap()).unwrap();
        assert_eq!(c.claimed_end.label_string(), "e1");
        assert!(c.verify(&ForbiddenRegion::empty()).ok);
        let c = triangle_convert(&EdgePath::parse("", "").unwrap()).unwrap();
        assert!(c.moves.is_empty());
        assert!(triangle_convert(&EdgePath::parse("", "ab").unwrap()).is_err());
    }

    #[test]
    fn bands() {
        let p = EdgePath::parse("ab", "e1E6").unwrap();
        let c = band_homotopy(&p, Sign::Pos).unwrap();
        assert_eq!(c.claimed_end.label_string(), "se1E6S");
        assert_eq!(c.moves.len(), 3);
        assert!(c.verify(&ForbiddenRegion::empty()).ok);
        let sweep: BTreeSet<SElement> = c.swept_vertices().unwrap().into_iter().collect();
        let mut expected = BTreeSet::new();
        let s = SElement::parse("s").unwrap();
        for v in p.vertices() {
            expected.insert(v.clone());
        }
        for v in EdgePath::new(p.base.mul(&s), p.labels.clone()).vertices() {
            expected.insert(v);
        }
        assert_eq!(sweep, expected);
    }

    #[test]
    fn band_collapse_undoes_a_band() {
        let delta = EdgePath::parse("ab", "e1e6E3").unwrap();
        let cert = band_homotopy(&delta, Sign::Neg).unwrap();
        let mut h = Homotopy::new(ComplexKind::GammaHbar, cert.claimed_end.clone());
        band_collapse_at(&mut h, 0, 3, Sign::Neg).unwrap();
        let back = h.finish();
        assert_eq!(back.claimed_end, delta);
        assert!(back.verify(&ForbiddenRegion::empty()).ok);
        let mut h = Homotopy::new(ComplexKind::GammaHbar, delta);
        assert!(band_collapse_at(&mut h, 0, 1, Sign::Pos).is_err());
    }

    #[test]
    fn s_translation() {
        let p = EdgePath::parse("abc", "e1E1").unwrap();
        let c = s_translation_homotopy(&p, 1).unwrap();
        assert!(c.verify(&ForbiddenRegion::empty()).ok);
        assert_eq!(c.claimed_end.label_string(), "se1E1S");
        assert!(s_translation_homotopy(&p, 0).unwrap().moves.is_empty());
        let c = s_translation_homotopy(&EdgePath::parse("", "e1e6E1E6").unwrap(), -3).unwrap();
        assert_eq!(labels_to_string(&c.claimed_end.labels), "SSSe1e6E1E6sss");
        for v in c.swept_vertices().unwrap() {
            assert!((-3..=0).contains(&v.s_level()));
        }
        assert!(s_translation_homotopy(&EdgePath::parse("", "e1").unwrap(), 1).is_err());
    }

    #[test]
    fn combing() {
        for w in ["acAC", "aCAc", "acbdBDAC", "abBA"] {
            let p = EdgePath::parse("bb", w).unwrap();
            let c = comb_null_homotopy(&p).unwrap();
            assert!(c.claimed_end.is_empty(), "{w}");
            assert!(c.verify(&ForbiddenRegion::empty()).ok, "{w}");
        }
        let c = comb_null_homotopy(&EdgePath::parse("", "acAC").unwrap()).unwrap();
        // three squares and two backtracks
        assert_eq!(c.moves.len(), 5);
        assert!(comb_null_homotopy(&EdgePath::parse("", "ac").unwrap()).is_err());
    }
}
