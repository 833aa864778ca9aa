//! Geodesics in `Γ₁` and the rewriter that turns a zero-sum path outside
//! `N(*, m)` into a K-path, recording a certificate that never enters the ball.
//!
//! The rewriter works on one live path. The prefix before `pos` is already a
//! K-path; each step consumes the first syllable of the rest. Steps are written
//! for a first syllable over `{a,b}` with positive exponents; the other three
//! kinds are handled by relabeling the letter slots through a [`Frame`].

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Homotopy};
use crate::complex::ComplexKind;
use crate::error::{Error, Result};
use crate::gelement::GElement;
use crate::homotopy::alternation_at;
use crate::packed::PackedG;
use crate::letter::{letters_to_string, Factor, Label, Letter, Sign};
use crate::path::EdgePath;
use crate::word::FreeWord;

/// The `F(a,b)-F(c,d)` geodesic `(α, β)` from `*` to a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicPair {
    pub alpha: FreeWord,
    pub beta: FreeWord,
}

impl GeodesicPair {
    pub fn len(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn fab_fcd_geodesic(v: &GElement) -> GeodesicPair {
    GeodesicPair {
        alpha: v.ab().clone(),
        beta: v.cd().clone(),
    }
}

/// Whether every power of `t` at `v` increases the distance from `*`.
pub fn moves_geodesically_away(v: &GElement, t: Letter) -> bool {
    match t.base.factor() {
        Some(f) => v.projection(f).last() != Some(t.inverse()),
        None => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SyllableKind {
    pub factor: Factor,
    pub sign: Sign,
}

impl SyllableKind {
    pub const AB_POS: SyllableKind = SyllableKind::new(Factor::Ab, Sign::Pos);
    pub const AB_NEG: SyllableKind = SyllableKind::new(Factor::Ab, Sign::Neg);
    pub const CD_POS: SyllableKind = SyllableKind::new(Factor::Cd, Sign::Pos);
    pub const CD_NEG: SyllableKind = SyllableKind::new(Factor::Cd, Sign::Neg);

    pub const fn new(factor: Factor, sign: Sign) -> SyllableKind {
        SyllableKind { factor, sign }
    }

    pub fn of(l: Letter) -> Option<SyllableKind> {
        Some(SyllableKind::new(l.base.factor()?, l.sign))
    }
}

impl std::fmt::Display for SyllableKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.factor {
            Factor::Ab => "ab",
            Factor::Cd => "cd",
        };
        let sign = if self.sign == Sign::Pos { '+' } else { '-' };
        write!(f, "{name}{sign}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Syllable {
    pub kind: SyllableKind,
    /// Index of the first letter in the parent path.
    pub start: usize,
    #[serde(serialize_with = "letters_as_string")]
    pub letters: Vec<Letter>,
}

fn letters_as_string<S: serde::Serializer>(letters: &[Letter], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&letters_to_string(letters))
}

/// Maximal runs of one factor and one sign.
pub fn syllables(path: &EdgePath) -> Result<Vec<Syllable>> {
    let letters = abcd_letters(&path.labels)?;
    let mut out: Vec<Syllable> = Vec::new();
    for (i, &l) in letters.iter().enumerate() {
        let kind = SyllableKind::of(l).expect("checked above");
        match out.last_mut() {
            Some(s) if s.kind == kind => s.letters.push(l),
            _ => out.push(Syllable {
                kind,
                start: i,
                letters: vec![l],
            }),
        }
    }
    Ok(out)
}

fn abcd_letters(labels: &[Label]) -> Result<Vec<Letter>> {
    labels
        .iter()
        .map(|l| {
            l.as_letter()
                .filter(|x| x.base.factor().is_some())
                .ok_or_else(|| Error::Path(format!("{l} is not in {{a,b,c,d}}")))
        })
        .collect()
}

/// Relabels letter slots so that the first syllable reads as `{a,b}`, positive.
///
/// Both maps are automorphisms of `G` that preserve word length and K-paths,
/// and each is its own inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frame {
    swap: bool,
    invert: bool,
}

impl Frame {
    fn of(first: SyllableKind) -> Frame {
        Frame {
            swap: first.factor == Factor::Cd,
            invert: first.sign == Sign::Neg,
        }
    }

    fn map(self, k: SyllableKind) -> SyllableKind {
        SyllableKind {
            factor: if self.swap { k.factor.other() } else { k.factor },
            sign: if self.invert { -k.sign } else { k.sign },
        }
    }
}

/// A letter of slot `kind` whose powers at `v` move geodesically away from `*`:
/// its base differs from the last base of `v`'s projection on that factor.
/// The second flag is set when the projection is empty and the choice is arbitrary.
fn away_letter(last: Option<Letter>, kind: SyllableKind) -> (Letter, bool) {
    let [first, second] = kind.factor.bases();
    match last {
        Some(l) if l.base == second => (Letter::new(first, kind.sign), false),
        Some(_) => (Letter::new(second, kind.sign), false),
        None => (Letter::new(second, kind.sign), true),
    }
}

/// The partner letter for a syllable of `kind` anchored at `v`: opposite factor,
/// opposite sign, chosen against the last letter of the other projection.
pub fn choose_partner(v: &GElement, kind: SyllableKind) -> Result<Letter> {
    let slot = SyllableKind::new(kind.factor.other(), -kind.sign);
    match away_letter(v.projection(slot.factor).last(), slot) {
        (_, true) if v.is_identity() => Err(Error::Precondition("no partner letter is determined at *".into())),
        (l, _) => Ok(l),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "1")]
    Merge,
    #[serde(rename = "2")]
    Split,
    #[serde(rename = "3")]
    Extend,
    #[serde(rename = "4.1")]
    Cancel,
    #[serde(rename = "4.2")]
    CancelSplit,
    #[serde(rename = "4.3")]
    CancelExtend,
}

impl Case {
    pub const ALL: [Case; 6] = [
        Case::Merge,
        Case::Split,
        Case::Extend,
        Case::Cancel,
        Case::CancelSplit,
        Case::CancelExtend,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Case::Merge => "1",
            Case::Split => "2",
            Case::Extend => "3",
            Case::Cancel => "4.1",
            Case::CancelSplit => "4.2",
            Case::CancelExtend => "4.3",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct F2pResult {
    pub kpath: EdgePath,
    pub certificate: Certificate,
    pub trace: Vec<Case>,
    /// Steps whose auxiliary letter was picked with an empty projection to steer by.
    pub fallbacks: Vec<usize>,
}

/// What the rewriter needs from a vertex of `G`.
trait Track: Clone {
    /// False when the letter does not fit.
    fn push(&mut self, l: Letter) -> bool;
    fn last(&self, factor: Factor) -> Option<Letter>;
    fn length(&self) -> usize;
}

impl Track for PackedG {
    #[inline]
    fn push(&mut self, l: Letter) -> bool {
        self.push_letter(l)
    }

    #[inline]
    fn last(&self, factor: Factor) -> Option<Letter> {
        PackedG::last(*self, factor)
    }

    #[inline]
    fn length(&self) -> usize {
        PackedG::length(*self)
    }
}

impl Track for GElement {
    fn push(&mut self, l: Letter) -> bool {
        GElement::push(self, l);
        true
    }

    fn last(&self, factor: Factor) -> Option<Letter> {
        match factor {
            Factor::Ab => self.ab().last(),
            Factor::Cd => self.cd().last(),
        }
    }

    fn length(&self) -> usize {
        GElement::length(self)
    }
}

// raised when a packed vertex overflows; the caller retries with `GElement`
struct Overflow;

enum StepError {
    Overflow,
    Other(Error),
}

impl From<Error> for StepError {
    fn from(e: Error) -> Self {
        StepError::Other(e)
    }
}

impl From<Overflow> for StepError {
    fn from(_: Overflow) -> Self {
        StepError::Overflow
    }
}

struct Rewriter<V> {
    h: Homotopy,
    base: V,
    m: usize,
    trace: Vec<Case>,
    fallbacks: Vec<usize>,
}

impl<V: Track> Rewriter<V> {
    fn letter(&self, i: usize) -> Letter {
        self.h.labels()[i].as_letter().expect("rewriter paths stay in {a,b,c,d}")
    }

    fn vertex(&self, i: usize) -> std::result::Result<V, Overflow> {
        let mut v = self.base.clone();
        for j in 0..i {
            if !v.push(self.letter(j)) {
                return Err(Overflow);
            }
        }
        Ok(v)
    }

    /// Kind and length of the syllable starting at `i`.
    fn syllable_at(&self, i: usize) -> Option<(SyllableKind, usize)> {
        let labels = self.h.labels();
        let kind = SyllableKind::of(labels.get(i)?.as_letter()?)?;
        let len = labels[i..]
            .iter()
            .take_while(|l| l.as_letter().and_then(SyllableKind::of) == Some(kind))
            .count();
        Some((kind, len))
    }

    fn syllable_count(&self, from: usize) -> usize {
        let mut n = 0;
        let mut prev = None;
        for l in &self.h.labels()[from..] {
            let k = l.as_letter().and_then(SyllableKind::of);
            if k != prev {
                n += 1;
                prev = k;
            }
        }
        n
    }

    fn residual_is_k_path(&self, from: usize) -> bool {
        let labels = &self.h.labels()[from..];
        labels.len() % 2 == 0
            && labels.chunks_exact(2).all(|p| {
                let (x, y) = (p[0].as_letter().unwrap(), p[1].as_letter().unwrap());
                x.sign != y.sign && x.base != y.base
            })
    }

    /// Inserts `t^n t^{-n}` before `pos`, with `t` chosen in `slot` at that vertex.
    fn extend(&mut self, pos: usize, slot: SyllableKind, n: usize) -> std::result::Result<(), StepError> {
        let mut v = self.vertex(pos)?;
        let (t, fallback) = away_letter(v.last(slot.factor), slot);
        if fallback {
            self.fallbacks.push(self.trace.len());
        }
        for _ in 0..n {
            if !v.push(t) {
                return Err(StepError::Overflow);
            }
            if v.length() <= self.m {
                return Err(Error::Internal(format!("auxiliary {t}-path enters N(*, {})", self.m)).into());
            }
        }
        self.h.insert_power_backtrack(pos, Label::from(t), n);
        Ok(())
    }

    fn step(&mut self, pos: usize) -> std::result::Result<usize, StepError> {
        let (first, k1) = self.syllable_at(pos).expect("residual is nonempty");
        let frame = Frame::of(first);
        let slot = |k: SyllableKind| frame.map(k);
        let mut pos = pos;

        // (τ₁, γ₁) becomes a K-path; the rest starts with γ₁⁻¹
        self.extend(pos + k1, slot(SyllableKind::CD_NEG), k1)?;
        alternation_at(&mut self.h, pos, k1)?;
        pos += 2 * k1;

        let (second, k2) = self
            .syllable_at(pos + k1)
            .ok_or_else(|| Error::Internal("a single syllable cannot have zero exponent sum".into()))?;
        let case = match frame.map(second) {
            SyllableKind::CD_POS => Case::Merge,
            SyllableKind::AB_NEG if k2 >= k1 => {
                alternation_at(&mut self.h, pos, k1)?;
                pos += 2 * k1;
                Case::Split
            }
            SyllableKind::AB_NEG => {
                self.extend(pos + k1 + k2, slot(SyllableKind::AB_NEG), k1 - k2)?;
                alternation_at(&mut self.h, pos, k1)?;
                pos += 2 * k1;
                Case::Extend
            }
            SyllableKind::CD_NEG => {
                let left = self.h.reduce_segment(pos, k1 + k2);
                let cancelled = (k1 + k2 - left) / 2;
                let (k, k_bar) = (k1 - cancelled, k2 - cancelled);
                if k == 0 || k_bar == 0 {
                    Case::Cancel
                } else {
                    self.extend(pos + k, slot(SyllableKind::AB_NEG), k)?;
                    alternation_at(&mut self.h, pos, k)?;
                    pos += 2 * k;
                    if k > k_bar {
                        self.extend(pos + k + k_bar, slot(SyllableKind::CD_NEG), k - k_bar)?;
                    }
                    alternation_at(&mut self.h, pos, k)?;
                    pos += 2 * k;
                    if k <= k_bar {
                        Case::CancelSplit
                    } else {
                        Case::CancelExtend
                    }
                }
            }
            SyllableKind::AB_POS => {
                return Err(Error::Internal("first syllable was not maximal".into()).into());
            }
        };
        self.trace.push(case);
        Ok(pos)
    }
}

/// Rewrites a zero-sum `{a,b,c,d}`-path with every vertex outside `N(*, m)` into a
/// K-path with the same endpoints, by a homotopy in `Γ₁ − N(*, m)`.
pub fn f2p_rewrite(tau: &EdgePath, m: usize) -> Result<F2pResult> {
    let base = tau
        .base
        .to_gelement()
        .ok_or_else(|| Error::Precondition("the base must lie in F(a,b) x F(c,d)".into()))?;
    let mut v = base.clone();
    if v.length() <= m {
        return Err(Error::Precondition(format!("vertex 0 lies in N(*, {m})")));
    }
    let mut sum = 0;
    for (i, l) in tau.labels.iter().enumerate() {
        let t = l
            .as_letter()
            .filter(|x| x.base.factor().is_some())
            .ok_or_else(|| Error::Path(format!("{l} is not in {{a,b,c,d}}")))?;
        sum += t.exponent();
        v.push(t);
        if v.length() <= m {
            return Err(Error::Precondition(format!("vertex {} lies in N(*, {m})", i + 1)));
        }
    }
    if sum != 0 {
        return Err(Error::Precondition(format!("exponent sum is {sum}, not 0")));
    }

    let run = match PackedG::from_g(&base) {
        Some(p) => rewrite_with(tau, p, m),
        None => Err(StepError::Overflow),
    };
    match run {
        Ok(r) => Ok(r),
        Err(StepError::Other(e)) => Err(e),
        Err(StepError::Overflow) => match rewrite_with(tau, base, m) {
            Ok(r) => Ok(r),
            Err(StepError::Other(e)) => Err(e),
            Err(StepError::Overflow) => Err(Error::Internal("unbounded vertex overflowed".into())),
        },
    }
}

fn rewrite_with<V: Track>(tau: &EdgePath, base: V, m: usize) -> std::result::Result<F2pResult, StepError> {
    let mut r = Rewriter {
        h: Homotopy::new(ComplexKind::Gamma1, tau.clone()),
        base,
        m,
        trace: Vec::new(),
        fallbacks: Vec::new(),
    };
    let mut pos = 0;
    while pos < r.h.len() && !r.residual_is_k_path(pos) {
        let before = r.syllable_count(pos);
        if before < 2 {
            return Err(Error::Internal("a single syllable cannot have zero exponent sum".into()).into());
        }
        pos = r.step(pos)?;
        let after = r.syllable_count(pos);
        if after >= before {
            return Err(Error::Internal(format!("syllable count went from {before} to {after}")).into());
        }
    }
    if !r.residual_is_k_path(0) {
        return Err(Error::Internal(format!("output {} is not a K-path", r.h.current().label_string())).into());
    }
    let certificate = r.h.finish();
    Ok(F2pResult {
        kpath: certificate.claimed_end.clone(),
        certificate,
        trace: r.trace,
        fallbacks: r.fallbacks,
    })
}

/// Outcome of running the rewriter on every admissible short path.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ExhaustiveReport {
    pub m: usize,
    pub min_base_length: usize,
    pub max_base_length: usize,
    pub max_path_length: usize,
    pub bases: usize,
    pub paths: usize,
    pub verified: usize,
    pub case_counts: std::collections::BTreeMap<String, usize>,
    pub fallback_runs: usize,
    /// First few failures, as `base word: reason`.
    pub failures: Vec<String>,
}

impl ExhaustiveReport {
    pub fn all_verified(&self) -> bool {
        self.verified == self.paths
    }

    pub fn all_cases_fired(&self) -> bool {
        Case::ALL.iter().all(|c| self.case_counts.get(c.name()).is_some_and(|&n| n > 0))
    }
}

const SIGNED: [Letter; 8] = [
    Letter::pos(crate::letter::Base::A),
    Letter::neg(crate::letter::Base::A),
    Letter::pos(crate::letter::Base::B),
    Letter::neg(crate::letter::Base::B),
    Letter::pos(crate::letter::Base::C),
    Letter::neg(crate::letter::Base::C),
    Letter::pos(crate::letter::Base::D),
    Letter::neg(crate::letter::Base::D),
];

/// Every zero-sum path of length at most `max_len` whose vertices avoid `N(*, m)`,
/// at every base `v` with `min_base <= |v| <= max_base`. Each result is verified.
pub fn f2p_exhaustive(min_base: usize, max_base: usize, max_len: usize, m: usize) -> Result<ExhaustiveReport> {
    let ball = crate::ball::Ball::build(GElement::identity(), max_base, ComplexKind::Gamma1, usize::MAX)?;
    let bases: Vec<GElement> = ball
        .vertices()
        .iter()
        .filter(|v| (min_base..=max_base).contains(&v.length()))
        .cloned()
        .collect();
    let mut report = f2p_exhaustive_at(&bases, max_len, m);
    report.min_base_length = min_base;
    report.max_base_length = max_base;
    Ok(report)
}

/// [`f2p_exhaustive`] over an explicit list of bases; bases inside `N(*, m)` are skipped.
pub fn f2p_exhaustive_at(bases: &[GElement], max_len: usize, m: usize) -> ExhaustiveReport {
    let forbidden = crate::region::ForbiddenRegion::gamma1_ball(m);
    let mut report = ExhaustiveReport {
        m,
        min_base_length: bases.iter().map(|b| b.length()).min().unwrap_or(0),
        max_base_length: bases.iter().map(|b| b.length()).max().unwrap_or(0),
        max_path_length: max_len,
        ..Default::default()
    };
    let mut counts = [0usize; 6];
    let mut word = Vec::with_capacity(max_len);
    for base in bases {
        if base.length() <= m {
            continue;
        }
        report.bases += 1;
        let base_s = crate::selement::SElement::from_gelement(base);
        let mut visit = |w: &[Letter]| {
            report.paths += 1;
            let tau = EdgePath::new(base_s.clone(), w.iter().map(|&l| Label::from(l)).collect());
            let outcome = f2p_rewrite(&tau, m).and_then(|r| {
                // moves never shift endpoints, so verification covers them
                match r.certificate.verify(&forbidden).failure {
                    None => Ok(r),
                    Some(f) => Err(Error::Internal(f.reason)),
                }
            });
            match outcome {
                Ok(r) => {
                    report.verified += 1;
                    for c in r.trace {
                        counts[c as usize] += 1;
                    }
                    report.fallback_runs += usize::from(!r.fallbacks.is_empty());
                }
                Err(e) if report.failures.len() < 20 => {
                    report.failures.push(format!("{base} {}: {e}", letters_to_string(w)));
                }
                Err(_) => {}
            }
        };
        match PackedG::from_g(base) {
            // a path of length `max_len` adds at most that many letters per factor
            Some(p) if base.length() + max_len <= PackedG::CAPACITY => {
                enumerate(p, 0, max_len, m, &mut word, &mut visit)
            }
            _ => enumerate(base.clone(), 0, max_len, m, &mut word, &mut visit),
        }
    }
    for c in Case::ALL {
        report.case_counts.insert(c.name().to_string(), counts[c as usize]);
    }
    report
}

fn enumerate<V: Track>(v: V, sum: i64, left: usize, m: usize, word: &mut Vec<Letter>, visit: &mut impl FnMut(&[Letter])) {
    if sum == 0 {
        visit(word);
    }
    if left == 0 {
        return;
    }
    for t in SIGNED {
        let s = sum + t.exponent();
        // the remaining letters must be able to bring the sum back to zero
        if s.unsigned_abs() as usize > left - 1 {
            continue;
        }
        let mut w = v.clone();
        Track::push(&mut w, t);
        if w.length() <= m {
            continue;
        }
        word.push(t);
        enumerate(w, s, left - 1, m, word, visit);
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{distance_gamma1, Ball, DEFAULT_BUDGET};
    use crate::region::ForbiddenRegion;
    use crate::selement::SElement;

    fn g(s: &str) -> GElement {
        GElement::parse(s).unwrap()
    }

    fn l(s: &str) -> Letter {
        Letter::parse_all(s).unwrap()[0]
    }

    #[test]
    fn geodesic_pair_is_the_projection() {
        let p = fab_fcd_geodesic(&g("abc"));
        assert_eq!(p.alpha.to_string(), "ab");
        assert_eq!(p.beta.to_string(), "c");
        assert!(fab_fcd_geodesic(&GElement::identity()).is_empty());
        let ball = Ball::build(GElement::identity(), 4, ComplexKind::Gamma1, DEFAULT_BUDGET).unwrap();
        for v in ball.vertices() {
            assert_eq!(fab_fcd_geodesic(v).len(), ball.distance(v).unwrap());
        }
    }

    #[test]
    fn geodesically_away_matches_distances() {
        assert!(moves_geodesically_away(&g("a"), l("b")));
        assert!(!moves_geodesically_away(&g("a"), l("A")));
        let ball = Ball::build(GElement::identity(), 3, ComplexKind::Gamma1, DEFAULT_BUDGET).unwrap();
        for v in ball.vertices() {
            for t in Letter::parse_all("aAbBcCdD").unwrap() {
                let mut w = v.clone();
                w.push(t);
                let grows = distance_gamma1(&GElement::identity(), &w) == v.length() + 1;
                assert_eq!(moves_geodesically_away(v, t), grows, "{v} {t}");
            }
        }
    }

    #[test]
    fn partner_letters() {
        assert_eq!(choose_partner(&g("ac"), SyllableKind::AB_POS).unwrap(), l("D"));
        assert_eq!(choose_partner(&g("aD"), SyllableKind::AB_POS).unwrap(), l("C"));
        assert!(choose_partner(&GElement::identity(), SyllableKind::AB_POS).is_err());
        let ball = Ball::build(GElement::identity(), 3, ComplexKind::Gamma1, DEFAULT_BUDGET).unwrap();
        for v in ball.vertices().iter().skip(1) {
            for kind in [SyllableKind::AB_POS, SyllableKind::AB_NEG, SyllableKind::CD_POS, SyllableKind::CD_NEG] {
                let t = choose_partner(v, kind).unwrap();
                let mut w = v.clone();
                for _ in 0..4 {
                    assert!(moves_geodesically_away(&w, t));
                    w.push(t);
                }
            }
        }
    }

    #[test]
    fn syllable_split() {
        let p = EdgePath::parse("", "abcA").unwrap();
        let s = syllables(&p).unwrap();
        let kinds: Vec<String> = s.iter().map(|x| x.kind.to_string()).collect();
        assert_eq!(kinds, ["ab+", "cd+", "ab-"]);
        assert_eq!(s[2].start, 3);
        assert!(syllables(&EdgePath::parse("", "").unwrap()).unwrap().is_empty());
    }

    fn check(base: &str, word: &str, m: usize) -> F2pResult {
        let tau = EdgePath::parse(base, word).unwrap();
        let r = f2p_rewrite(&tau, m).unwrap();
        let v = r.certificate.verify(&ForbiddenRegion::gamma1_ball(m));
        assert!(v.ok, "{base} {word}: {:?}", v.failure);
        assert_eq!(r.kpath.end(), tau.end());
        r
    }

    #[test]
    fn k_path_is_left_alone() {
        let r = check("ab", "aC", 1);
        assert!(r.certificate.moves.is_empty());
        assert!(r.trace.is_empty());
    }

    #[test]
    fn small_commutator() {
        let r = check("abcd", "acAC", 1);
        assert!(r.kpath.len() % 2 == 0);
        let r = check("abcd", "acAC", 3);
        assert!(!r.trace.is_empty());
    }

    #[test]
    fn each_first_syllable_kind() {
        for w in ["abAB", "BAba", "cdCD", "DCdc", "aaBB", "ccAD"] {
            check("ababcdcd", w, 3);
        }
    }

    #[test]
    fn preconditions() {
        assert!(f2p_rewrite(&EdgePath::parse("abc", "ab").unwrap(), 1).is_err());
        assert!(f2p_rewrite(&EdgePath::parse("a", "aA").unwrap(), 1).is_err());
        let s = EdgePath::new(SElement::parse("s").unwrap(), vec![]);
        assert!(f2p_rewrite(&s, 0).is_err());
    }
}
