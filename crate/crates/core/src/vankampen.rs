//! Planar van Kampen diagrams over the presentation of `X`.
//!
//! A diagram is built from a product of conjugates of relators: draw the wedge
//! of lollipops, one per factor, then fold adjacent inverse boundary edges
//! until the boundary word is freely reduced. The map is stored as a
//! doubly-connected edge list; face 0 is the outer face, and every other face
//! reads a relator.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::{lookup_cell, CellRef, Relator};
use crate::error::{Error, Result};
use crate::letter::{label_string, labels_to_string, Base, Label, Letter, Sign};
use crate::selement::SElement;

/// `u⁻¹ r^ε u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateFactor {
    #[serde(with = "label_string")]
    pub conjugator: Vec<Label>,
    pub relator: Relator,
    pub sign: Sign,
}

impl ConjugateFactor {
    pub fn new(conjugator: Vec<Label>, relator: Relator, sign: Sign) -> ConjugateFactor {
        ConjugateFactor {
            conjugator,
            relator,
            sign,
        }
    }

    fn relator_word(&self) -> Vec<Label> {
        let w = self.relator.word();
        match self.sign {
            Sign::Pos => w.to_vec(),
            Sign::Neg => w.iter().rev().map(|l| l.inverse()).collect(),
        }
    }
}

/// A product of conjugates of relators, the input of [`build_diagram`].
///
/// Text form: factors separated by `;`, each `u:relator` with an optional
/// `^-1`, e.g. `"S:[s,e1]; ab:[a,c]^-1"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateExpression {
    pub factors: Vec<ConjugateFactor>,
}

impl ConjugateExpression {
    pub fn new(factors: Vec<ConjugateFactor>) -> Result<ConjugateExpression> {
        if factors.is_empty() {
            return Err(Error::Precondition("an expression needs at least one factor".into()));
        }
        Ok(ConjugateExpression { factors })
    }

    /// The unreduced word `u₁⁻¹r₁u₁ ⋯ uₙ⁻¹rₙuₙ`.
    pub fn word(&self) -> Vec<Label> {
        let mut w = Vec::new();
        for f in &self.factors {
            w.extend(f.conjugator.iter().rev().map(|l| l.inverse()));
            w.extend(f.relator_word());
            w.extend_from_slice(&f.conjugator);
        }
        w
    }

    /// The freely reduced value.
    pub fn reduced_word(&self) -> Vec<Label> {
        free_reduce(&self.word())
    }
}

impl fmt::Display for ConjugateExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}:{}", labels_to_string(&x.conjugator), x.relator)?;
            if x.sign == Sign::Neg {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ConjugateExpression {
    type Err = Error;
    fn from_str(s: &str) -> Result<ConjugateExpression> {
        let mut factors = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (u, r) = part.split_once(':').ok_or_else(|| Error::parse("conjugate factor", part))?;
            let (r, sign) = match r.trim().strip_suffix("^-1") {
                Some(r) => (r, Sign::Neg),
                None => (r.trim(), Sign::Pos),
            };
            factors.push(ConjugateFactor::new(Label::parse_all(u)?, r.parse()?, sign));
        }
        ConjugateExpression::new(factors)
    }
}

/// Free reduction of a label sequence.
pub fn free_reduce(labels: &[Label]) -> Vec<Label> {
    let mut out: Vec<Label> = Vec::with_capacity(labels.len());
    for &l in labels {
        if out.last().is_some_and(|&x| x.is_inverse_of(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// One directed side of an edge; the face lies on its left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEdge {
    pub origin: usize,
    pub label: Label,
    pub twin: usize,
    pub next: usize,
    pub face: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// `None` for the outer face.
    pub cell: Option<CellRef>,
    /// Some half-edge of the face, where its boundary is read from.
    pub half_edge: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub vertex_count: usize,
    pub half_edges: Vec<HalfEdge>,
    /// Face 0 is the outer face.
    pub faces: Vec<Face>,
    pub base: usize,
    /// First half-edge of the boundary cycle, read from `base`; `None` for an empty boundary.
    pub start: Option<usize>,
    /// Relator faces removed as spheres during folding.
    pub cancelled_faces: usize,
    /// For each prefix of the unfolded expression word, the vertex it ended at (if it survived).
    pub walk: Vec<Option<usize>>,
}

const OUTER: usize = 0;

#[derive(Clone, Copy, Debug)]
struct Half {
    origin: usize,
    label: Label,
    twin: usize,
    next: usize,
    prev: usize,
    face: usize,
    alive: bool,
}

struct Builder {
    parent: Vec<usize>,
    half: Vec<Half>,
    faces: Vec<(Option<CellRef>, bool)>,
    start: Option<usize>,
    cancelled: usize,
}

impl Builder {
    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn new_vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn new_edge(&mut self, from: usize, to: usize, label: Label) -> usize {
        let h = self.half.len();
        let blank = Half {
            origin: from,
            label,
            twin: h + 1,
            next: usize::MAX,
            prev: usize::MAX,
            face: OUTER,
            alive: true,
        };
        self.half.push(blank);
        self.half.push(Half {
            origin: to,
            label: label.inverse(),
            twin: h,
            ..blank
        });
        h
    }

    fn link(&mut self, a: usize, b: usize) {
        self.half[a].next = b;
        self.half[b].prev = a;
    }

    fn target(&mut self, h: usize) -> usize {
        let t = self.half[h].twin;
        self.find(self.half[t].origin)
    }

    fn cycle(&self, h: usize) -> Vec<usize> {
        let mut out = vec![h];
        let mut x = self.half[h].next;
        while x != h {
            out.push(x);
            x = self.half[x].next;
        }
        out
    }

    /// An outer half-edge followed by its inverse, not wrapping around the base.
    fn find_fold(&self) -> Option<usize> {
        let start = self.start?;
        let mut h = start;
        loop {
            let n = self.half[h].next;
            if n == start {
                return None;
            }
            if self.half[n].label.is_inverse_of(self.half[h].label) {
                return Some(h);
            }
            h = n;
        }
    }

    fn kill_component(&mut self, seed_face: usize) -> Result<()> {
        let mut seen = vec![false; self.faces.len()];
        let mut queue = VecDeque::from([seed_face]);
        seen[seed_face] = true;
        let mut dead_faces = Vec::new();
        while let Some(f) = queue.pop_front() {
            if f == OUTER {
                return Err(Error::Internal("a folded bigon does not enclose a sphere".into()));
            }
            dead_faces.push(f);
            let rep = (0..self.half.len()).find(|&h| self.half[h].alive && self.half[h].face == f);
            let Some(rep) = rep else { continue };
            for h in self.cycle(rep) {
                let g = self.half[self.half[h].twin].face;
                if !seen[g] {
                    seen[g] = true;
                    queue.push_back(g);
                }
            }
        }
        for &f in &dead_faces {
            self.faces[f].1 = false;
            self.cancelled += 1;
        }
        for h in &mut self.half {
            if h.alive && dead_faces.contains(&h.face) {
                h.alive = false;
            }
        }
        Ok(())
    }

    fn fold(&mut self, h: usize) -> Result<()> {
        let h2 = self.half[h].next;
        let th = self.half[h].twin;
        if h2 == th {
            // a spur
            let nh = self.half[th].next;
            if nh == h {
                self.start = None;
            } else {
                let ph = self.half[h].prev;
                self.link(ph, nh);
                if self.start == Some(h) {
                    self.start = Some(nh);
                }
            }
            self.half[h].alive = false;
            self.half[th].alive = false;
            return Ok(());
        }
        let th2 = self.half[h2].twin;
        let u = self.find(self.half[h].origin);
        let w = self.target(h2);
        if self.half[h2].next == h {
            // the whole boundary is x x⁻¹: everything inside is a sphere
            if u != w {
                return Err(Error::Internal("boundary x x⁻¹ is not closed".into()));
            }
            self.half[th].twin = th2;
            self.half[th2].twin = th;
            self.half[h].alive = false;
            self.half[h2].alive = false;
            self.start = None;
            return self.kill_component(self.half[th].face);
        }
        let ph = self.half[h].prev;
        let nh = self.half[h2].next;
        self.half[th].twin = th2;
        self.half[th2].twin = th;
        self.link(ph, nh);
        if self.start == Some(h) {
            self.start = Some(nh);
        }
        self.half[h].alive = false;
        self.half[h2].alive = false;
        if u != w {
            self.parent[w] = u;
            Ok(())
        } else {
            self.kill_component(self.half[th].face)
        }
    }
}

/// Wedge of lollipops for `expr`, folded until the boundary is reduced.
pub fn build_diagram(expr: &ConjugateExpression) -> Result<Diagram> {
    let mut b = Builder {
        parent: vec![0],
        half: Vec::new(),
        faces: vec![(None, true)],
        start: None,
        cancelled: 0,
    };
    let base = 0;
    let mut outer = Vec::new();
    let mut walk = vec![base];
    for f in &expr.factors {
        let mut cur = base;
        let mut stem = Vec::new();
        for l in f.conjugator.iter().rev().map(|l| l.inverse()) {
            let nv = b.new_vertex();
            let h = b.new_edge(cur, nv, l);
            outer.push(h);
            stem.push(h + 1);
            cur = nv;
            walk.push(cur);
        }
        let r = f.relator_word();
        let anchor = cur;
        let mut lolly = Vec::new();
        for (i, &l) in r.iter().enumerate() {
            let to = if i + 1 == r.len() { anchor } else { b.new_vertex() };
            let h = b.new_edge(cur, to, l);
            outer.push(h);
            lolly.push(h);
            cur = to;
            walk.push(cur);
        }
        let face = b.faces.len();
        let inner: Vec<usize> = lolly.iter().rev().map(|&h| h + 1).collect();
        for (i, &h) in inner.iter().enumerate() {
            b.link(h, inner[(i + 1) % inner.len()]);
            b.half[h].face = face;
        }
        let word: Vec<Label> = inner.iter().map(|&h| b.half[h].label).collect();
        let cell = lookup_cell(&word).ok_or_else(|| Error::Internal(format!("no cell reads {}", labels_to_string(&word))))?;
        b.faces.push((Some(cell), true));
        for &h in stem.iter().rev() {
            outer.push(h);
            cur = b.half[b.half[h].twin].origin;
            walk.push(cur);
        }
    }
    for (i, &h) in outer.iter().enumerate() {
        b.link(h, outer[(i + 1) % outer.len()]);
    }
    b.start = outer.first().copied();

    while let Some(h) = b.find_fold() {
        b.fold(h)?;
    }
    compact(b, base, walk)
}

fn compact(mut b: Builder, base: usize, walk: Vec<usize>) -> Result<Diagram> {
    let mut vmap: BTreeMap<usize, usize> = BTreeMap::new();
    let root = b.find(base);
    vmap.insert(root, 0);
    let mut hmap = vec![usize::MAX; b.half.len()];
    let mut order = Vec::new();
    // boundary first, so that reading the boundary follows the numbering
    if let Some(s) = b.start {
        order.extend(b.cycle(s));
    }
    for h in 0..b.half.len() {
        if b.half[h].alive && !order.contains(&h) {
            order.push(h);
        }
    }
    for (i, &h) in order.iter().enumerate() {
        hmap[h] = i;
    }
    let mut fmap = vec![usize::MAX; b.faces.len()];
    let mut faces = Vec::new();
    for (f, &(cell, alive)) in b.faces.iter().enumerate() {
        if alive {
            fmap[f] = faces.len();
            faces.push(Face { cell, half_edge: None });
        }
    }
    let mut half_edges = Vec::with_capacity(order.len());
    for &h in &order {
        let origin = b.find(b.half[h].origin);
        let n = vmap.len();
        let origin = *vmap.entry(origin).or_insert(n);
        let x = b.half[h];
        let face = fmap[x.face];
        if faces[face].half_edge.is_none() {
            faces[face].half_edge = Some(half_edges.len());
        }
        half_edges.push(HalfEdge {
            origin,
            label: x.label,
            twin: hmap[x.twin],
            next: hmap[x.next],
            face,
        });
    }
    let walk = walk
        .into_iter()
        .map(|v| {
            let r = b.find(v);
            vmap.get(&r).copied()
        })
        .collect();
    // the stored half-edge may start the relator at another rotation
    for f in 1..faces.len() {
        let h = faces[f].half_edge.ok_or_else(|| Error::Internal(format!("face {f} lost its boundary")))?;
        let mut word = vec![half_edges[h].label];
        let mut x = half_edges[h].next;
        while x != h {
            word.push(half_edges[x].label);
            x = half_edges[x].next;
        }
        let cell = lookup_cell(&word).filter(|c| Some(c.relator) == faces[f].cell.map(|c| c.relator));
        faces[f].cell = Some(cell.ok_or_else(|| Error::Internal(format!("face {f} no longer reads its relator")))?);
    }
    let d = Diagram {
        vertex_count: vmap.len(),
        half_edges,
        faces,
        base: 0,
        start: b.start.map(|s| hmap[s]),
        cancelled_faces: b.cancelled,
        walk,
    };
    d.check()?;
    Ok(d)
}

impl Diagram {
    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    /// Relator faces, not counting the outer face.
    pub fn relator_faces(&self) -> usize {
        self.faces.len() - 1
    }

    fn target(&self, h: usize) -> usize {
        self.half_edges[self.half_edges[h].twin].origin
    }

    /// Half-edges of the cycle through `h`.
    pub fn cycle(&self, h: usize) -> Vec<usize> {
        let mut out = vec![h];
        let mut x = self.half_edges[h].next;
        while x != h && out.len() <= self.half_edges.len() {
            out.push(x);
            x = self.half_edges[x].next;
        }
        out
    }

    /// Boundary half-edges in reading order from the base.
    pub fn boundary(&self) -> Vec<usize> {
        self.start.map(|s| self.cycle(s)).unwrap_or_default()
    }

    pub fn boundary_word(&self) -> Vec<Label> {
        self.boundary().iter().map(|&h| self.half_edges[h].label).collect()
    }

    /// The word read around face `f` from its stored half-edge.
    pub fn face_word(&self, f: usize) -> Vec<Label> {
        match self.faces[f].half_edge {
            Some(h) => self.cycle(h).iter().map(|&x| self.half_edges[x].label).collect(),
            None => Vec::new(),
        }
    }

    /// Checks the combinatorial map: twins, cycles, relator faces, the boundary,
    /// connectivity and the Euler characteristic of a disk.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Diagram(m));
        let n = self.half_edges.len();
        if n % 2 != 0 {
            return bad("odd number of half-edges".into());
        }
        if self.base >= self.vertex_count.max(1) || self.faces.is_empty() || self.faces[OUTER].cell.is_some() {
            return bad("bad base vertex or outer face".into());
        }
        let mut prev_count = vec![0usize; n];
        for (i, h) in self.half_edges.iter().enumerate() {
            if h.twin >= n || h.next >= n || h.face >= self.faces.len() || h.origin >= self.vertex_count {
                return bad(format!("half-edge {i} points out of range"));
            }
            let t = &self.half_edges[h.twin];
            if h.twin == i || t.twin != i || t.label != h.label.inverse() {
                return bad(format!("half-edge {i} has a bad twin"));
            }
            if t.origin == h.origin {
                return bad(format!("half-edge {i} is a loop"));
            }
            if self.half_edges[h.next].origin != t.origin {
                return bad(format!("half-edge {i} is not followed at its target"));
            }
            if self.half_edges[h.next].face != h.face {
                return bad(format!("half-edge {i} changes face"));
            }
            prev_count[h.next] += 1;
        }
        if prev_count.iter().any(|&c| c != 1) {
            return bad("next is not a permutation".into());
        }
        let mut in_cycle = vec![false; n];
        for (f, face) in self.faces.iter().enumerate() {
            let Some(h) = face.half_edge else {
                if f != OUTER {
                    return bad(format!("face {f} has no boundary"));
                }
                continue;
            };
            for x in self.cycle(h) {
                in_cycle[x] = true;
            }
            if let Some(cell) = face.cell {
                if lookup_cell(&self.face_word(f)) != Some(cell) {
                    return bad(format!("face {f} does not read {}", cell.relator));
                }
            }
        }
        if in_cycle.iter().any(|&c| !c) {
            return bad("a face is not a single cycle".into());
        }
        match self.start {
            Some(s) => {
                if self.half_edges[s].face != OUTER || self.half_edges[s].origin != self.base {
                    return bad("boundary does not start at the base on the outer face".into());
                }
                if self.faces[OUTER].half_edge.map(|h| self.cycle(h).contains(&s)) != Some(true) {
                    return bad("outer face is not the boundary cycle".into());
                }
            }
            None => {
                if n != 0 || self.vertex_count != 1 {
                    return bad("empty boundary with a nonempty diagram".into());
                }
            }
        }
        // connected and planar disk: V − E + F = 2 counting the outer face
        let mut seen = vec![false; self.vertex_count];
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for (i, h) in self.half_edges.iter().enumerate() {
            out_edges[h.origin].push(i);
        }
        let mut stack = vec![self.base];
        seen[self.base] = true;
        while let Some(v) = stack.pop() {
            for &h in &out_edges[v] {
                let w = self.target(h);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return bad("diagram is not connected".into());
        }
        let euler = self.vertex_count as i64 - (n / 2) as i64 + self.faces.len() as i64;
        if euler != 2 {
            return bad(format!("Euler characteristic {euler}, expected 2"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Diagram> {
        let d: Diagram = serde_json::from_str(s)?;
        d.check()?;
        Ok(d)
    }
}

/// An s-band: a chain of `[s,e]` squares between two boundary s-edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Band {
    /// Boundary positions of the two s-edges, `top < bottom`.
    pub top: usize,
    pub bottom: usize,
    pub squares: Vec<usize>,
    /// Side through the initial vertices of the s-edges, read from top to bottom.
    #[serde(with = "label_string")]
    pub left: Vec<Label>,
    /// Side through their terminal vertices.
    #[serde(with = "label_string")]
    pub right: Vec<Label>,
}

impl Band {
    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandDecomposition {
    pub bands: Vec<Band>,
    /// Boundary s-edges crossed twice, as pairs of boundary positions.
    pub self_paired: Vec<(usize, usize)>,
}

impl BandDecomposition {
    /// All pairs of boundary s-positions, bands and self-paired edges alike, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut p: Vec<(usize, usize)> = self.bands.iter().map(|b| (b.top, b.bottom)).chain(self.self_paired.iter().copied()).collect();
        p.sort();
        p
    }

    /// Perfect matching of boundary s-edges, equal sides, opposite orientations,
    /// simple and pairwise face-disjoint bands, and no crossings.
    pub fn check(&self, d: &Diagram) -> Result<()> {
        let bad = |m: String| Err(Error::Diagram(m));
        let word = d.boundary_word();
        let boundary = d.boundary();
        let mut hit = vec![0usize; word.len()];
        for &(i, j) in &self.pairs() {
            if i >= j || j >= word.len() {
                return bad(format!("bad pair ({i}, {j})"));
            }
            hit[i] += 1;
            hit[j] += 1;
            if !word[i].is_s() || word[j] != word[i].inverse() {
                return bad(format!("positions {i} and {j} are not opposite s-edges"));
            }
        }
        for (i, l) in word.iter().enumerate() {
            if hit[i] != usize::from(l.is_s()) {
                return bad(format!("boundary position {i} is matched {} times", hit[i]));
            }
        }
        for &(i, j) in &self.self_paired {
            if d.half_edges[boundary[i]].twin != boundary[j] {
                return bad(format!("positions {i} and {j} are not one edge"));
            }
        }
        let mut used = vec![false; d.faces.len()];
        for b in &self.bands {
            if b.left != b.right {
                return bad(format!("band at {} has sides {} and {}", b.top, labels_to_string(&b.left), labels_to_string(&b.right)));
            }
            if b.squares.len() != b.left.len() || b.squares.is_empty() {
                return bad(format!("band at {} has {} squares", b.top, b.squares.len()));
            }
            for &f in &b.squares {
                if used[f] {
                    return bad(format!("face {f} lies in two bands or twice in one"));
                }
                used[f] = true;
                if !matches!(d.faces[f].cell.map(|c| c.relator), Some(Relator::SCommutator(_))) {
                    return bad(format!("band face {f} is not an [s,e] square"));
                }
            }
        }
        let pairs = self.pairs();
        for (x, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[x + 1..] {
                if i < k && k < j && j < l {
                    return bad(format!("pairs ({i}, {j}) and ({k}, {l}) cross"));
                }
            }
        }
        Ok(())
    }
}

fn is_s_square(d: &Diagram, f: usize) -> bool {
    matches!(d.faces[f].cell.map(|c| c.relator), Some(Relator::SCommutator(_)))
}

/// Pairs every boundary s-edge with its partner by following bands of `[s,e]` squares.
pub fn extract_bands(d: &Diagram) -> Result<BandDecomposition> {
    let boundary = d.boundary();
    let mut position = vec![usize::MAX; d.half_edges.len()];
    for (i, &h) in boundary.iter().enumerate() {
        position[h] = i;
    }
    let mut done = vec![false; boundary.len()];
    let mut out = BandDecomposition::default();
    for (i, &h) in boundary.iter().enumerate() {
        if done[i] || !d.half_edges[h].label.is_s() {
            continue;
        }
        done[i] = true;
        let mut x = d.half_edges[h].twin;
        if d.half_edges[x].face == OUTER {
            let j = position[x];
            done[j] = true;
            out.self_paired.push((i.min(j), i.max(j)));
            continue;
        }
        let mut band = Band {
            top: i,
            bottom: 0,
            squares: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
        };
        loop {
            let f = d.half_edges[x].face;
            if !is_s_square(d, f) {
                return Err(Error::Diagram(format!("an s-edge lies on face {f}, which is not an [s,e] square")));
            }
            if band.squares.contains(&f) {
                return Err(Error::Diagram(format!("band through face {f} crosses itself")));
            }
            band.squares.push(f);
            let y1 = d.half_edges[x].next;
            let x2 = d.half_edges[y1].next;
            let y2 = d.half_edges[x2].next;
            let (down, up) = (d.half_edges[y1].label, d.half_edges[y2].label.inverse());
            if d.half_edges[x].label == Label::from(Letter::pos(Base::S)) {
                band.right.push(down);
                band.left.push(up);
            } else {
                band.left.push(down);
                band.right.push(up);
            }
            let g = d.half_edges[x2].twin;
            if d.half_edges[g].face == OUTER {
                let j = position[g];
                if done[j] {
                    return Err(Error::Diagram(format!("band from {i} ends at matched position {j}")));
                }
                done[j] = true;
                band.bottom = j;
                break;
            }
            x = g;
        }
        out.bands.push(band);
    }
    Ok(out)
}

/// Images of the diagram vertices in `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub vertices: Vec<SElement>,
}

impl Realization {
    /// Every edge `x → y` labelled `g` satisfies `image(x)·g = image(y)`.
    pub fn respects_labels(&self, d: &Diagram) -> bool {
        d.half_edges
            .iter()
            .all(|h| self.vertices[h.origin].act(h.label) == self.vertices[d.half_edges[h.twin].origin])
    }
}

/// Label-preserving map of `d` into `X` sending the base to `v`.
pub fn realize(d: &Diagram, v: &SElement) -> Result<Realization> {
    let mut image: Vec<Option<SElement>> = vec![None; d.vertex_count];
    image[d.base] = Some(v.clone());
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); d.vertex_count];
    for (i, h) in d.half_edges.iter().enumerate() {
        out_edges[h.origin].push(i);
    }
    let mut queue = VecDeque::from([d.base]);
    while let Some(x) = queue.pop_front() {
        let gx = image[x].clone().expect("queued vertices have images");
        for &h in &out_edges[x] {
            let y = d.target(h);
            let gy = gx.act(d.half_edges[h].label);
            match &image[y] {
                Some(old) if *old != gy => {
                    return Err(Error::Internal(format!("vertex {y} realizes as both {old} and {gy}")));
                }
                Some(_) => {}
                None => {
                    image[y] = Some(gy);
                    queue.push_back(y);
                }
            }
        }
    }
    let vertices = image
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Diagram("diagram is not connected".into()))?;
    Ok(Realization { vertices })
}

/// DOT export: one edge per diagram edge, s-edges in red, band squares listed as clusters of edges.
pub fn to_dot(d: &Diagram, realization: Option<&Realization>) -> String {
    let mut s = String::from("digraph diagram {\n  node [shape=circle, fontsize=9];\n");
    for v in 0..d.vertex_count {
        let name = match realization {
            Some(r) => format!("{v}: {}", r.vertices[v]),
            None => v.to_string(),
        };
        let shape = if v == d.base { ", shape=doublecircle" } else { "" };
        let _ = writeln!(s, "  v{v} [label=\"{name}\"{shape}];");
    }
    for (i, h) in d.half_edges.iter().enumerate() {
        if h.label.sign == Sign::Neg {
            continue;
        }
        let color = if h.label.is_s() { ", color=red" } else { "" };
        let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"{color}, id=\"h{i}\"];", h.origin, d.target(i), h.label);
    }
    s.push_str("}\n");
    s
}

/// Planar drawing: boundary vertices on a circle, interior vertices at the
/// barycentre of their neighbours.
pub fn to_svg(d: &Diagram) -> String {
    const SIZE: f64 = 480.0;
    let c = SIZE / 2.0;
    let radius = SIZE / 2.0 - 30.0;
    let mut pos = vec![(c, c); d.vertex_count];
    let mut fixed = vec![false; d.vertex_count];
    let boundary = d.boundary();
    let n = boundary.len().max(1) as f64;
    for (i, &h) in boundary.iter().enumerate() {
        let v = d.half_edges[h].origin;
        if !fixed[v] {
            let t = std::f64::consts::TAU * i as f64 / n;
            pos[v] = (c + radius * t.cos(), c - radius * t.sin());
            fixed[v] = true;
        }
    }
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); d.vertex_count];
    for (i, h) in d.half_edges.iter().enumerate() {
        nbrs[h.origin].push(d.target(i));
    }
    for _ in 0..200 {
        for v in 0..d.vertex_count {
            if fixed[v] || nbrs[v].is_empty() {
                continue;
            }
            let k = nbrs[v].len() as f64;
            let (x, y) = nbrs[v].iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            pos[v] = (x / k, y / k);
        }
    }
    let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n");
    for (f, face) in d.faces.iter().enumerate().skip(1) {
        let Some(h) = face.half_edge else { continue };
        let pts: Vec<String> = d
            .cycle(h)
            .iter()
            .map(|&x| {
                let p = pos[d.half_edges[x].origin];
                format!("{:.1},{:.1}", p.0, p.1)
            })
            .collect();
        let fill = if is_s_square(d, f) { "#f6d5d5" } else { "#dde6f4" };
        let _ = writeln!(s, "  <polygon points=\"{}\" fill=\"{fill}\" stroke=\"none\"/>", pts.join(" "));
    }
    for (i, h) in d.half_edges.iter().enumerate() {
        if h.label.sign == Sign::Neg {
            continue;
        }
        let (a, b) = (pos[h.origin], pos[d.target(i)]);
        let color = if h.label.is_s() { "#c0392b" } else { "#333333" };
        let _ = writeln!(
            s,
            "  <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            a.0, a.1, b.0, b.1
        );
        let _ = writeln!(
            s,
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" fill=\"{color}\">{}</text>",
            (a.0 + b.0) / 2.0 + 3.0,
            (a.1 + b.1) / 2.0 - 3.0,
            h.label
        );
    }
    for (v, p) in pos.iter().enumerate() {
        let fill = if v == d.base { "#000000" } else { "#ffffff" };
        let _ = writeln!(s, "  <circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3\" fill=\"{fill}\" stroke=\"#000000\"/>", p.0, p.1);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr(s: &str) -> ConjugateExpression {
        s.parse().unwrap()
    }

    fn labels(s: &str) -> Vec<Label> {
        Label::parse_all(s).unwrap()
    }

    #[test]
    fn expression_text_round_trip() {
        let e = expr("S:[s,e1]; ab:[a,c]^-1; :e3=w3");
        assert_eq!(e.to_string(), "S:[s,e1]; ab:[a,c]^-1; :e3=w3");
        assert_eq!(e.to_string().parse::<ConjugateExpression>().unwrap(), e);
        assert!("".parse::<ConjugateExpression>().is_err());
        assert!("a:[a,b]".parse::<ConjugateExpression>().is_err());
    }

    #[test]
    fn single_square() {
        let d = build_diagram(&expr(":[s,e1]")).unwrap();
        assert_eq!(d.boundary_word(), labels("se1SE1"));
        assert_eq!((d.vertex_count, d.edge_count(), d.relator_faces()), (4, 4, 1));
        let bands = extract_bands(&d).unwrap();
        assert_eq!(bands.bands.len(), 1);
        assert_eq!(bands.bands[0].left, labels("e1"));
        assert_eq!((bands.bands[0].top, bands.bands[0].bottom), (0, 2));
        bands.check(&d).unwrap();
    }

    #[test]
    fn conjugation_folds_the_stem() {
        let d = build_diagram(&expr("db:[a,c]")).unwrap();
        assert_eq!(d.boundary_word(), labels("BDacACdb"));
        // the stem is a tree hanging off the square
        assert_eq!((d.vertex_count, d.edge_count()), (6, 6));
        let e = expr("ab:[a,c]");
        let d = build_diagram(&e).unwrap();
        assert_eq!(d.boundary_word(), labels("BcACab"));
        assert_eq!(d.boundary_word(), e.reduced_word());
        assert_eq!((d.vertex_count, d.edge_count()), (5, 5));
    }

    #[test]
    fn two_stacked_squares() {
        // s e1 e6 S E6 E1 = (s e1 S E1)(e1 s e6 S E6 E1)
        let d = build_diagram(&expr(":[s,e1]; E1:[s,e6]")).unwrap();
        assert_eq!(d.boundary_word(), labels("se1e6SE6E1"));
        let bands = extract_bands(&d).unwrap();
        bands.check(&d).unwrap();
        assert_eq!(bands.bands.len(), 1);
        assert_eq!(bands.bands[0].left, labels("e1e6"));
        assert_eq!(bands.bands[0].squares.len(), 2);
    }

    #[test]
    fn mirror_faces_cancel() {
        let d = build_diagram(&expr("ab:[s,e2]; ab:[s,e2]^-1")).unwrap();
        assert!(d.boundary_word().is_empty());
        assert_eq!((d.vertex_count, d.edge_count(), d.relator_faces()), (1, 0, 0));
        assert_eq!(d.cancelled_faces, 2);
        let d = build_diagram(&expr(":[a,c]; :[s,e1]; :[s,e1]^-1")).unwrap();
        assert_eq!(d.boundary_word(), labels("acAC"));
        assert_eq!(d.relator_faces(), 1);
    }

    #[test]
    fn self_paired_s_edge() {
        // s (loop at s) S with the loop a square
        let d = build_diagram(&expr("S:[a,c]")).unwrap();
        assert_eq!(d.boundary_word(), labels("sacACS"));
        let bands = extract_bands(&d).unwrap();
        assert!(bands.bands.is_empty());
        assert_eq!(bands.self_paired, vec![(0, 5)]);
        bands.check(&d).unwrap();
    }

    #[test]
    fn realization_respects_labels_and_translates() {
        let e = expr("ab:[s,e1]; E1:[s,e6]; s:[a,d]^-1; :e4=w4");
        let d = build_diagram(&e).unwrap();
        assert_eq!(d.boundary_word(), e.reduced_word());
        let v = SElement::parse("abs").unwrap();
        let r = realize(&d, &SElement::identity()).unwrap();
        let rv = realize(&d, &v).unwrap();
        assert!(r.respects_labels(&d) && rv.respects_labels(&d));
        for (x, y) in r.vertices.iter().zip(&rv.vertices) {
            assert_eq!(v.mul(x), *y);
        }
        // folded vertices are identified consistently with the unfolded walk
        let word = e.word();
        let mut g = SElement::identity();
        for (t, slot) in d.walk.iter().enumerate() {
            if t > 0 {
                g.push_label(word[t - 1]);
            }
            if let Some(x) = slot {
                assert_eq!(r.vertices[*x], g);
            }
        }
    }

    #[test]
    fn json_round_trip_and_corruption() {
        let d = build_diagram(&expr(":[s,e1]; E1:[s,e6]")).unwrap();
        let back = Diagram::from_json(&d.to_json().unwrap()).unwrap();
        assert_eq!(back, d);
        let mut broken = d.clone();
        broken.half_edges[0].label = Label::from(Letter::pos(Base::A));
        assert!(broken.check().is_err());
    }

    #[test]
    fn exports() {
        let d = build_diagram(&expr(":[s,e1]")).unwrap();
        let dot = to_dot(&d, Some(&realize(&d, &SElement::identity()).unwrap()));
        assert!(dot.starts_with("digraph") && dot.contains("color=red"));
        let svg = to_svg(&d);
        assert!(svg.contains("<polygon") && svg.ends_with("</svg>\n"));
    }
}
