//! End-to-end null-homotopies far from a forbidden region.
//!
//! [`run_main_pipeline`] contracts a `Γ₁`-loop: rewrite it into a K-path, turn
//! the K-path into an e-loop, push the e-loop up `p` levels in `s`, and comb it
//! away there. [`run_reduce_demo`] contracts an s-loop read off a van Kampen
//! diagram: every band is replaced by a band homotopy along a side that avoids
//! the region, and the s-free remainders are combed.

use std::collections::VecDeque;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::ball::sphere_complement_components;
use crate::certificate::{Certificate, Homotopy, Verification};
use crate::complex::{ComplexKind, Relator};
use crate::egen::Q;
use crate::error::{Error, Result};
use crate::f2p::{f2p_rewrite, Case};
use crate::gelement::GElement;
use crate::homotopy::{band_collapse_at, comb_at, comb_null_homotopy, expand_at, s_translation_homotopy, triangle_convert};
use crate::letter::{inverse_labels, Base, EGen, Label, Letter, Sign};
use crate::path::EdgePath;
use crate::region::ForbiddenRegion;
use crate::selement::SElement;
use crate::vankampen::{build_diagram, extract_bands, ConjugateExpression, ConjugateFactor};
use crate::ComponentReport;

/// Largest translation power tried before giving up.
pub const MAX_TRANSLATION: i64 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub certificate: Certificate,
    pub verification: Verification,
}

fn stage(name: &str, certificate: Certificate, forbidden: &ForbiddenRegion) -> Stage {
    let verification = certificate.verify(forbidden);
    Stage {
        name: name.to_string(),
        certificate,
        verification,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub input: EdgePath,
    /// `N(*, k)` contains every vertex of the forbidden region that lies in `G`.
    pub k: usize,
    pub kpath: EdgePath,
    pub epath: EdgePath,
    pub trace: Vec<Case>,
    pub fallbacks: usize,
    /// Translation power: the combing happens at level `s^p`.
    pub p: i64,
    /// Radius in `Γ₁` of the comb sweep of the expanded e-loop about its base.
    pub j: usize,
    pub stages: Vec<Stage>,
    pub certificate: Certificate,
    pub verification: Verification,
    pub verified: bool,
    pub elapsed_ms: f64,
}

fn sweep_radius(cert: &Certificate) -> Result<usize> {
    let base = cert
        .start
        .base
        .to_gelement()
        .ok_or_else(|| Error::Precondition("the comb sweep must lie in G".into()))?
        .inverse();
    Ok(cert
        .swept_vertices()?
        .iter()
        .filter_map(|v| v.to_gelement())
        .map(|v| base.mul(&v).length())
        .max()
        .unwrap_or(0))
}

/// `s^p γ s^{−p}` to the constant path: expand and comb `γ`, then cancel the s-letters.
fn collapse_at_level(path: &EdgePath, p: usize, len: usize) -> Result<Certificate> {
    let mut h = Homotopy::new(ComplexKind::X, path.clone());
    let n = expand_at(&mut h, p, len)?;
    comb_at(&mut h, p, n)?;
    let left = h.reduce_segment(0, 2 * p);
    if left != 0 {
        return Err(Error::Internal("s-letters do not cancel after combing".into()));
    }
    Ok(h.finish())
}

/// `γ → s^p γ s^{−p} → (constant)` for an e-loop `γ`.
pub fn lifted_contraction(epath: &EdgePath, p: i64) -> Result<(Certificate, Certificate)> {
    let up = s_translation_homotopy(epath, p)?;
    let down = collapse_at_level(&up.claimed_end, p.unsigned_abs() as usize, epath.len())?;
    Ok((up, down))
}

/// Null-homotopy in `X` of an s-free loop, avoiding `forbidden` if it can: comb
/// in place, or for an e-loop lift it `p` levels up or down and comb there.
/// Returns the certificate and the level used; the certificate may fail to verify.
pub fn contract_loop(path: &EdgePath, forbidden: &ForbiddenRegion) -> Result<(Certificate, i64)> {
    let mut h = Homotopy::new(ComplexKind::X, path.clone());
    let n = expand_at(&mut h, 0, path.len())?;
    comb_at(&mut h, 0, n)?;
    let direct = h.finish();
    if direct.verify(forbidden).ok || !path.labels.iter().all(|l| l.as_e().is_some()) {
        return Ok((direct, 0));
    }
    for p in (1..=MAX_TRANSLATION).flat_map(|p| [p, -p]) {
        let (up, down) = lifted_contraction(path, p)?;
        let total = up.compose(&down)?;
        if total.verify(forbidden).ok {
            return Ok((total, p));
        }
    }
    Ok((direct, 0))
}

/// Contracts a `Γ₁`-loop `tau` by a homotopy in `X` that avoids `forbidden`.
pub fn run_main_pipeline(tau: &EdgePath, forbidden: &ForbiddenRegion) -> Result<PipelineReport> {
    let clock = Instant::now();
    if !tau.is_loop() {
        return Err(Error::Precondition("the input must be a loop".into()));
    }
    tau.check_in(ComplexKind::Gamma1)?;
    let k = forbidden.gamma1_radius().unwrap_or(0);
    let f2p = f2p_rewrite(tau, k)?;
    let ball = ForbiddenRegion::gamma1_ball(k);
    let mut stages = vec![stage("f2p", f2p.certificate.clone(), &ball)];
    let tri = triangle_convert(&f2p.kpath)?;
    let epath = tri.claimed_end.clone();
    stages.push(stage("triangles", tri, forbidden));

    let expanded = EdgePath::new(
        epath.base.clone(),
        crate::egen::e_expand(&epath.labels)?.into_iter().map(Label::from).collect(),
    );
    let j = sweep_radius(&comb_null_homotopy(&expanded)?)?;

    let head = stages[0].certificate.compose(&stages[1].certificate)?;
    let mut last = None;
    for p in 0..=MAX_TRANSLATION {
        let (up, down) = lifted_contraction(&epath, p)?;
        let total = head.compose(&up)?.compose(&down)?;
        let verification = total.verify(forbidden);
        let done = verification.ok;
        last = Some((p, up, down, total, verification));
        if done {
            break;
        }
    }
    let (p, up, down, certificate, verification) = last.expect("at least one power is tried");
    stages.push(stage("s-translation", up, forbidden));
    stages.push(stage("comb", down, forbidden));
    let verified = verification.ok && stages.iter().all(|s| s.verification.ok);
    Ok(PipelineReport {
        input: tau.clone(),
        k,
        kpath: f2p.kpath,
        epath,
        trace: f2p.trace,
        fallbacks: f2p.fallbacks.len(),
        p,
        j,
        stages,
        certificate,
        verification,
        verified,
        elapsed_ms: clock.elapsed().as_secs_f64() * 1e3,
    })
}

/// One s-pair of the boundary and the e-path that replaced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandStep {
    pub top: usize,
    pub bottom: usize,
    /// `false` for an s-edge crossed twice.
    pub band: bool,
    #[serde(with = "crate::letter::label_string")]
    pub side: Vec<Label>,
    /// Whether the side is a detour rather than the band's own side.
    pub detour: bool,
    /// Level at which the s-free loop inside the pair was combed.
    pub lift: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub expression: String,
    pub loop_path: EdgePath,
    pub bands: usize,
    pub self_paired: usize,
    pub detours: usize,
    pub steps: Vec<BandStep>,
    pub certificate: Certificate,
    pub verification: Verification,
    pub verified: bool,
    pub elapsed_ms: f64,
}

fn interior_avoids(start: &SElement, labels: &[Label], avoid: &ForbiddenRegion) -> bool {
    let mut v = start.clone();
    for &l in labels.iter().take(labels.len().saturating_sub(1)) {
        v.push_label(l);
        if avoid.contains(&v) {
            return false;
        }
    }
    true
}

/// An e-path from `x` to `y` whose interior vertices avoid `avoid`: bidirectional
/// breadth-first search in the coset `x·Γ(K)`, at most `max_len` edges.
pub fn find_detour(x: &SElement, y: &SElement, avoid: &ForbiddenRegion, max_len: usize, budget: usize) -> Result<Vec<Label>> {
    if x == y {
        return Ok(Vec::new());
    }
    let gens: Vec<Label> = EGen::all().flat_map(|e| [Label::e(e, Sign::Pos), Label::e(e, Sign::Neg)]).collect();
    // parent maps: vertex → label of the edge that reached it, from that side
    let mut seen: [FxHashMap<SElement, Option<Label>>; 2] = [FxHashMap::default(), FxHashMap::default()];
    seen[0].insert(x.clone(), None);
    seen[1].insert(y.clone(), None);
    let mut frontier = [vec![x.clone()], vec![y.clone()]];
    let mut depth = [0usize; 2];
    let walk_back = |seen: &FxHashMap<SElement, Option<Label>>, mut v: SElement| {
        let mut out = Vec::new();
        while let Some(Some(l)) = seen.get(&v) {
            out.push(*l);
            v = v.act(l.inverse());
        }
        out.reverse();
        out
    };
    while depth[0] + depth[1] < max_len {
        let side = usize::from(frontier[1].len() < frontier[0].len());
        if frontier[side].is_empty() {
            break;
        }
        let mut next = Vec::new();
        for v in std::mem::take(&mut frontier[side]) {
            for &g in &gens {
                let w = v.act(g);
                if seen[side].contains_key(&w) {
                    continue;
                }
                if seen[1 - side].contains_key(&w) {
                    // the meeting point may be an endpoint, which need not avoid anything
                    let (from_x, from_y) = if side == 0 {
                        let mut a = walk_back(&seen[0], v.clone());
                        a.push(g);
                        (a, walk_back(&seen[1], w.clone()))
                    } else {
                        let mut b = walk_back(&seen[1], v.clone());
                        b.push(g);
                        (walk_back(&seen[0], w.clone()), b)
                    };
                    let mut path = from_x;
                    path.extend(inverse_labels(&from_y));
                    return Ok(path);
                }
                if avoid.contains(&w) {
                    continue;
                }
                seen[side].insert(w.clone(), Some(g));
                next.push(w);
                if seen[0].len() + seen[1].len() > budget {
                    return Err(Error::Budget { budget });
                }
            }
        }
        frontier[side] = next;
        depth[side] += 1;
    }
    Err(Error::Detour(format!("no e-path of length at most {max_len} from {x} to {y} avoids the region")))
}

/// Contracts the boundary loop of the diagram of `expr`, based at `base`, by a
/// homotopy in `X` that avoids `forbidden`.
pub fn run_reduce_demo(expr: &ConjugateExpression, base: &SElement, forbidden: &ForbiddenRegion, budget: usize) -> Result<ReduceReport> {
    let clock = Instant::now();
    let d = build_diagram(expr)?;
    let decomposition = extract_bands(&d)?;
    decomposition.check(&d)?;
    let alpha = EdgePath::new(base.clone(), d.boundary_word());
    let avoid = forbidden.dilate(1, ComplexKind::X, budget)?;

    let mut pairs: Vec<(usize, usize, Option<(Vec<Label>, Vec<Label>)>)> = decomposition
        .bands
        .iter()
        .map(|b| (b.top, b.bottom, Some((b.left.clone(), b.right.clone()))))
        .chain(decomposition.self_paired.iter().map(|&(i, j)| (i, j, None)))
        .collect();
    // inner pairs first; pairs never cross, so a pair's span contains only finished pairs
    pairs.sort_by_key(|&(i, j, _)| j - i);

    let mut h = Homotopy::new(ComplexKind::X, alpha.clone());
    let mut done: Vec<(usize, usize, usize)> = Vec::new();
    let mut steps = Vec::new();
    for (i, j, side) in pairs {
        let shift = |x: usize| -> usize {
            let mut p = x as i64;
            for &(a, b, len) in &done {
                if b < x {
                    p += len as i64 - (b - a + 1) as i64;
                }
            }
            p as usize
        };
        let (ci, cj) = (shift(i), shift(j));
        let sign = h.labels()[ci].sign;
        // the inner side runs from the end of the first s-edge to the start of the second
        let x = h.vertex(ci + 1);
        let y = h.vertex(cj);
        let inner_side = side.as_ref().map(|(left, right)| if sign == Sign::Pos { right } else { left });
        let (delta, detour) = match inner_side {
            None => (Vec::new(), false),
            Some(s) if interior_avoids(&x, s, &avoid) => (s.clone(), false),
            Some(s) => (find_detour(&x, &y, &avoid, s.len() + 6, budget)?, true),
        };
        let inner = cj - ci - 1;
        // s M s⁻¹ → s M δ⁻¹ δ s⁻¹ → s δ s⁻¹ → δ', the outer side
        h.insert_word_backtrack(cj, &inverse_labels(&delta));
        let piece = EdgePath::new(x.clone(), h.labels()[ci + 1..ci + 1 + inner + delta.len()].to_vec());
        let (cert, lift) = contract_loop(&piece, forbidden)?;
        h.absorb_at(ci + 1, &cert)?;
        band_collapse_at(&mut h, ci, delta.len(), sign)?;
        done.push((i, j, delta.len()));
        steps.push(BandStep {
            top: i,
            bottom: j,
            band: side.is_some(),
            side: delta,
            detour,
            lift,
        });
    }
    let (rest, _) = contract_loop(&h.current(), forbidden)?;
    h.absorb_at(0, &rest)?;
    let certificate = h.finish();
    let verification = certificate.verify(forbidden);
    Ok(ReduceReport {
        expression: expr.to_string(),
        loop_path: alpha,
        bands: decomposition.bands.len(),
        self_paired: decomposition.self_paired.len(),
        detours: steps.iter().filter(|s| s.detour).count(),
        steps,
        verified: verification.ok,
        certificate,
        verification,
        elapsed_ms: clock.elapsed().as_secs_f64() * 1e3,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndsRow {
    pub label: String,
    pub report: ComponentReport,
}

/// Essential components of `ball(*, outer) − N(*, inner)` for `K`, `Γ₁`, `H`
/// and the free control `F(a,b)`.
pub fn run_ends_experiment(inner: usize, outer: usize, budget: usize) -> Result<Vec<EndsRow>> {
    let rows = [
        ("K", ComplexKind::GammaK),
        ("Gamma1", ComplexKind::Gamma1),
        ("H", ComplexKind::GammaH),
        ("F(a,b)", ComplexKind::FreeAB),
    ];
    rows.iter()
        .map(|&(label, kind)| {
            Ok(EndsRow {
                label: label.to_string(),
                report: sphere_complement_components(kind, inner, outer, budget)?,
            })
        })
        .collect()
}

/// `N(*, radius)` in the 1-skeleton of `X`.
pub fn x_ball(radius: usize, budget: usize) -> Result<ForbiddenRegion> {
    ForbiddenRegion::from_vertices([SElement::identity()]).dilate(radius, ComplexKind::X, budget)
}

const ABCD: [Letter; 8] = [
    Letter::pos(Base::A),
    Letter::neg(Base::A),
    Letter::pos(Base::B),
    Letter::neg(Base::B),
    Letter::pos(Base::C),
    Letter::neg(Base::C),
    Letter::pos(Base::D),
    Letter::neg(Base::D),
];

fn random_reduced<R: Rng>(rng: &mut R, len: usize) -> Vec<Letter> {
    let mut w: Vec<Letter> = Vec::with_capacity(len);
    while w.len() < len {
        let l = *ABCD.choose(rng).expect("nonempty");
        if w.last().is_some_and(|x| x.is_inverse_of(l)) {
            continue;
        }
        w.push(l);
    }
    w
}

/// A base point for the reduce demo far enough from `N(*, radius)` that combing
/// the boundary loop of `expr` there cannot reach it.
pub fn far_base<R: Rng>(rng: &mut R, expr: &ConjugateExpression, radius: usize) -> SElement {
    let len: usize = expr.reduced_word().iter().map(|l| if l.as_e().is_some() { 2 } else { 1 }).sum();
    SElement::from_gelement(&random_gelement(rng, len + 2 * radius + 1))
}

/// A random element of `G` of length exactly `len`.
pub fn random_gelement<R: Rng>(rng: &mut R, len: usize) -> GElement {
    loop {
        let mut g = GElement::identity();
        for l in random_reduced(rng, len) {
            g.push(l);
        }
        if g.length() == len {
            return g;
        }
    }
}

/// A random `Γ₁`-loop of length at most `max_len` at a vertex of length `base_len`,
/// all of whose vertices lie outside `N(*, outside)`: a word `w` followed by a
/// shuffle of `w⁻¹` that keeps the order within each free factor.
pub fn random_gamma1_loop<R: Rng>(rng: &mut R, max_len: usize, base_len: usize, outside: usize) -> EdgePath {
    loop {
        let base = random_gelement(rng, base_len);
        let half = rng.gen_range(1..=max_len / 2);
        let w = random_reduced(rng, half);
        let inv: Vec<Letter> = w.iter().rev().map(|l| l.inverse()).collect();
        let (mut ab, mut cd): (VecDeque<Letter>, VecDeque<Letter>) = (VecDeque::new(), VecDeque::new());
        for &l in &inv {
            if l.base.factor() == Some(crate::letter::Factor::Ab) {
                ab.push_back(l);
            } else {
                cd.push_back(l);
            }
        }
        let mut back = Vec::with_capacity(half);
        while !ab.is_empty() || !cd.is_empty() {
            let take_ab = !ab.is_empty() && (cd.is_empty() || rng.gen_bool(0.5));
            back.push(if take_ab { ab.pop_front() } else { cd.pop_front() }.expect("nonempty"));
        }
        let labels: Vec<Label> = w.iter().chain(&back).map(|&l| Label::from(l)).collect();
        let path = EdgePath::new(SElement::from_gelement(&base), labels);
        let far = path.vertices().iter().all(|v| v.to_gelement().is_some_and(|g| g.length() > outside));
        if far && path.is_loop() {
            return path;
        }
    }
}

fn random_label<R: Rng>(rng: &mut R, with_s: bool) -> Label {
    let n = if with_s { 10 } else { 8 };
    let k = rng.gen_range(0..n + 2 * Q);
    if k < 8 {
        Label::from(ABCD[k])
    } else if k < n {
        Label::from(Letter::new(Base::S, if k == 8 { Sign::Pos } else { Sign::Neg }))
    } else {
        let e = EGen::new((k - n) / 2 + 1).expect("in range");
        Label::e(e, if (k - n) % 2 == 0 { Sign::Pos } else { Sign::Neg })
    }
}

fn random_relator<R: Rng>(rng: &mut R, s_bias: f64) -> Relator {
    let e = EGen::new(rng.gen_range(1..=Q)).expect("in range");
    if rng.gen_bool(s_bias) {
        Relator::SCommutator(e)
    } else if rng.gen_bool(0.5) {
        Relator::Triangle(e)
    } else {
        let x = if rng.gen_bool(0.5) { Base::A } else { Base::B };
        let y = if rng.gen_bool(0.5) { Base::C } else { Base::D };
        Relator::Commutator(x, y)
    }
}

/// A random product of `1..=max_factors` conjugates, conjugators of length at most `max_conj`.
pub fn random_expression<R: Rng>(rng: &mut R, max_factors: usize, max_conj: usize, s_bias: f64) -> ConjugateExpression {
    let n = rng.gen_range(1..=max_factors);
    let factors = (0..n)
        .map(|_| {
            let len = rng.gen_range(0..=max_conj);
            let u = (0..len).map(|_| random_label(rng, true)).collect();
            let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
            ConjugateFactor::new(u, random_relator(rng, s_bias), sign)
        })
        .collect();
    ConjugateExpression::new(factors).expect("at least one factor")
}

/// A random expression whose diagram has exactly `bands` s-bands and no
/// self-paired s-edges: s-free conjugators, `bands` or more `[s,e]` factors.
pub fn random_band_expression<R: Rng>(rng: &mut R, bands: usize) -> ConjugateExpression {
    loop {
        let extra = rng.gen_range(0..=2);
        let mut factors = Vec::new();
        for i in 0..bands + extra {
            let len = rng.gen_range(0..=3);
            let u = (0..len).map(|_| random_label(rng, false)).collect();
            let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
            let r = if i < bands { Relator::SCommutator(EGen::new(rng.gen_range(1..=Q)).expect("in range")) } else { random_relator(rng, 0.3) };
            factors.push(ConjugateFactor::new(u, r, sign));
        }
        factors.shuffle(rng);
        let e = ConjugateExpression::new(factors).expect("nonempty");
        let Ok(d) = build_diagram(&e) else { continue };
        match extract_bands(&d) {
            Ok(b) if b.bands.len() == bands && b.self_paired.is_empty() => return e,
            _ => continue,
        }
    }
}
