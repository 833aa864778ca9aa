//! Homotopy certificates: a start path, a list of elementary moves, and the
//! claimed end path. The verifier replays the moves, checks each one against
//! the ambient complex, and rejects any intermediate vertex in the forbidden
//! region. The endpoints of the path never move.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use smallvec::SmallVec;

use crate::complex::{commutation_cell, lookup_cell, CellRef, CellWord, ComplexKind, Vertex};
use crate::error::{Error, Result};
use crate::letter::{inverse_labels, labels_to_string, Label};
use crate::packed::PackedG;
use crate::path::EdgePath;
use crate::region::ForbiddenRegion;
use crate::selement::SElement;

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// Insert `label, label⁻¹` before index `pos`.
    InsertBacktrack { pos: usize, label: Label },
    /// Remove the inverse pair at `pos, pos + 1`.
    DeleteBacktrack { pos: usize },
    /// With `p·q` the boundary of `cell`, `|p| = split`: replace `p` at `pos` by `q⁻¹`.
    CellSwap { pos: usize, cell: CellRef, split: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub complex: ComplexKind,
    pub start: EdgePath,
    pub moves: Vec<Move>,
    pub claimed_end: EdgePath,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// `None` for problems with the start or end path rather than a move.
    pub move_index: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    pub moves_checked: usize,
    pub failure: Option<Failure>,
}

impl Verification {
    fn pass(moves: usize) -> Verification {
        Verification {
            ok: true,
            moves_checked: moves,
            failure: None,
        }
    }

    fn fail(move_index: Option<usize>, moves: usize, reason: String) -> Verification {
        Verification {
            ok: false,
            moves_checked: moves,
            failure: Some(Failure { move_index, reason }),
        }
    }
}

struct Replay<'a, V> {
    kind: ComplexKind,
    forbidden: &'a ForbiddenRegion,
    labels: Vec<Label>,
    verts: Vec<V>,
    // set when `V` cannot represent a vertex; the caller retries with a wider type
    unfollowable: bool,
}

impl<'a, V: Vertex> Replay<'a, V> {
    /// `Err(None)` when `V` cannot represent the start path.
    fn start(
        kind: ComplexKind,
        path: &EdgePath,
        base: V,
        forbidden: &'a ForbiddenRegion,
    ) -> std::result::Result<Self, Option<String>> {
        if let Err(e) = path.check_in(kind) {
            return Err(Some(format!("start path: {e}")));
        }
        let mut verts = Vec::with_capacity(path.labels.len() + 32);
        let mut v = base;
        verts.push(v.clone());
        for &l in &path.labels {
            if !v.try_push(l) {
                return Err(None);
            }
            verts.push(v.clone());
        }
        if let Some(i) = verts.iter().position(|v| v.in_region(forbidden)) {
            return Err(Some(format!("start path vertex {i} is forbidden")));
        }
        Ok(Replay {
            kind,
            forbidden,
            labels: {
                let mut l = Vec::with_capacity(path.labels.len() + 32);
                l.extend_from_slice(&path.labels);
                l
            },
            verts,
            unfollowable: false,
        })
    }

    fn check_vertex(&self, v: &V) -> std::result::Result<(), String> {
        if v.in_region(self.forbidden) {
            Err(format!("vertex {:?} is forbidden", v.to_selement()))
        } else {
            Ok(())
        }
    }

    fn apply(&mut self, m: &Move) -> std::result::Result<(), String> {
        let n = self.labels.len();
        match *m {
            Move::InsertBacktrack { pos, label } => {
                if pos > n {
                    return Err(format!("insert position {pos} beyond length {n}"));
                }
                if !self.kind.contains(label) {
                    return Err(format!("label {label} is not a generator of {}", self.kind));
                }
                let mut w = self.verts[pos].clone();
                if !w.try_push(label) {
                    self.unfollowable = true;
                    return Err(String::new());
                }
                self.check_vertex(&w)?;
                let back = self.verts[pos].clone();
                self.labels.insert(pos, label.inverse());
                self.labels.insert(pos, label);
                self.verts.insert(pos + 1, back);
                self.verts.insert(pos + 1, w);
            }
            Move::DeleteBacktrack { pos } => {
                if pos + 1 >= n {
                    return Err(format!("delete position {pos} needs two letters, length {n}"));
                }
                if !self.labels[pos].is_inverse_of(self.labels[pos + 1]) {
                    return Err(format!(
                        "{}{} at {pos} is not a backtrack",
                        self.labels[pos],
                        self.labels[pos + 1]
                    ));
                }
                self.labels.drain(pos..pos + 2);
                self.verts.drain(pos + 1..pos + 3);
            }
            Move::CellSwap { pos, cell, split } => {
                if !self.kind.allows(cell.relator) {
                    return Err(format!("relator {} is not a 2-cell of {}", cell.relator, self.kind));
                }
                let boundary = cell.boundary_ref();
                if split > boundary.len() || pos + split > n {
                    return Err(format!("split {split} at {pos} out of range"));
                }
                let (p, q) = boundary.split_at(split);
                if self.labels[pos..pos + split] != *p {
                    return Err(format!(
                        "path reads {} at {pos}, cell {} expects {}",
                        labels_to_string(&self.labels[pos..pos + split]),
                        cell.relator,
                        labels_to_string(p)
                    ));
                }
                let repl: CellWord = q.iter().rev().map(|l| l.inverse()).collect();
                let mut v = self.verts[pos].clone();
                let mut new_verts: SmallVec<[V; 4]> = SmallVec::new();
                for &l in &repl {
                    if !v.try_push(l) {
                        self.unfollowable = true;
                    return Err(String::new());
                    }
                    new_verts.push(v.clone());
                }
                // the vertex after the last new label is the old endpoint of p
                if v != self.verts[pos + split] {
                    return Err("cell boundary does not close up".into());
                }
                if let Some((_, interior)) = new_verts.split_last() {
                    for w in interior {
                        self.check_vertex(w)?;
                    }
                }
                if repl.len() == split {
                    self.labels[pos..pos + split].copy_from_slice(&repl);
                    for (i, w) in new_verts.into_iter().enumerate() {
                        self.verts[pos + 1 + i] = w;
                    }
                } else {
                    self.labels.splice(pos..pos + split, repl);
                    self.verts.splice(pos + 1..pos + 1 + split, new_verts);
                }
            }
        }
        Ok(())
    }
}

/// `None` when some vertex does not fit in `V`.
fn run<V: Vertex>(cert: &Certificate, kind: ComplexKind, base: V, forbidden: &ForbiddenRegion) -> Option<Verification> {
    let mut replay = match Replay::<V>::start(kind, &cert.start, base, forbidden) {
        Ok(r) => r,
        Err(e) => return e.map(|e| Verification::fail(None, 0, e)),
    };
    for (i, m) in cert.moves.iter().enumerate() {
        if let Err(e) = replay.apply(m) {
            return (!replay.unfollowable).then(|| Verification::fail(Some(i), i, e));
        }
    }
    let n = cert.moves.len();
    if cert.claimed_end.base != cert.start.base {
        return Some(Verification::fail(None, n, "claimed end has a different base".into()));
    }
    if replay.labels != cert.claimed_end.labels {
        return Some(Verification::fail(
            None,
            n,
            format!(
                "replay ends at {}, claimed {}",
                labels_to_string(&replay.labels),
                cert.claimed_end.label_string()
            ),
        ));
    }
    Some(Verification::pass(n))
}

/// Replays `cert` in `kind`, rejecting any move that creates a vertex of `forbidden`.
pub fn verify(cert: &Certificate, kind: ComplexKind, forbidden: &ForbiddenRegion) -> Verification {
    match cert.start.base.to_gelement() {
        Some(g) if !kind.has_s() => {
            // s-free kinds have no s-labels, so a refused push can only be a full packed word
            if let Some(v) = PackedG::from_g(&g).and_then(|p| run(cert, kind, p, forbidden)) {
                return v;
            }
            run(cert, kind, g, forbidden).unwrap_or_else(unfollowable)
        }
        _ => run(cert, kind, cert.start.base.clone(), forbidden).unwrap_or_else(unfollowable),
    }
}

fn unfollowable() -> Verification {
    Verification::fail(None, 0, "a label cannot be followed on this vertex type".into())
}

/// Reference verifier: recomputes every intermediate path from scratch and checks all of its vertices.
pub fn verify_by_replay(cert: &Certificate, kind: ComplexKind, forbidden: &ForbiddenRegion) -> bool {
    let check = |labels: &[Label]| {
        let p = EdgePath::new(cert.start.base.clone(), labels.to_vec());
        p.check_in(kind).is_ok() && p.vertices().iter().all(|v| !forbidden.contains(v))
    };
    let mut labels = cert.start.labels.clone();
    if !check(&labels) {
        return false;
    }
    let start_end = cert.start.end();
    for m in &cert.moves {
        match apply_plain(&mut labels, m, kind) {
            Ok(()) => {}
            Err(_) => return false,
        }
        if !check(&labels) || EdgePath::new(cert.start.base.clone(), labels.clone()).end() != start_end {
            return false;
        }
    }
    cert.claimed_end.base == cert.start.base && labels == cert.claimed_end.labels
}

/// Applies a move to a bare label sequence, checking only its combinatorics.
pub fn apply_plain(labels: &mut Vec<Label>, m: &Move, kind: ComplexKind) -> Result<()> {
    let n = labels.len();
    match *m {
        Move::InsertBacktrack { pos, label } => {
            if pos > n || !kind.contains(label) {
                return Err(Error::Path(format!("bad insert at {pos}")));
            }
            labels.insert(pos, label.inverse());
            labels.insert(pos, label);
        }
        Move::DeleteBacktrack { pos } => {
            if pos + 1 >= n || !labels[pos].is_inverse_of(labels[pos + 1]) {
                return Err(Error::Path(format!("no backtrack at {pos}")));
            }
            labels.drain(pos..pos + 2);
        }
        Move::CellSwap { pos, cell, split } => {
            let boundary = cell.boundary_ref();
            if !kind.allows(cell.relator) || split > boundary.len() || pos + split > n {
                return Err(Error::Path(format!("bad cell swap at {pos}")));
            }
            let (p, q) = boundary.split_at(split);
            if labels[pos..pos + split] != *p {
                return Err(Error::Path(format!("cell swap at {pos} does not match")));
            }
            labels.splice(pos..pos + split, q.iter().rev().map(|l| l.inverse()));
        }
    }
    Ok(())
}

impl Certificate {
    pub fn identity(kind: ComplexKind, path: EdgePath) -> Certificate {
        Certificate {
            version: CERTIFICATE_VERSION,
            complex: kind,
            start: path.clone(),
            moves: Vec::new(),
            claimed_end: path,
        }
    }

    pub fn verify(&self, forbidden: &ForbiddenRegion) -> Verification {
        verify(self, self.complex, forbidden)
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Concatenation; the ambient complex becomes `X` if the two differ.
    pub fn compose(&self, next: &Certificate) -> Result<Certificate> {
        if self.claimed_end != next.start {
            return Err(Error::Path(format!(
                "cannot compose: {} then {}",
                self.claimed_end.label_string(),
                next.start.label_string()
            )));
        }
        let complex = if self.complex == next.complex {
            self.complex
        } else {
            ComplexKind::X
        };
        let mut moves = self.moves.clone();
        moves.extend_from_slice(&next.moves);
        Ok(Certificate {
            version: CERTIFICATE_VERSION,
            complex,
            start: self.start.clone(),
            moves,
            claimed_end: next.claimed_end.clone(),
        })
    }

    /// Every vertex of every intermediate path, sorted.
    pub fn swept_vertices(&self) -> Result<Vec<SElement>> {
        let mut labels = self.start.labels.clone();
        let mut seen: BTreeSet<SElement> = self.start.vertices().into_iter().collect();
        for m in &self.moves {
            apply_plain(&mut labels, m, self.complex)?;
            // only the moved part is new, but a full pass keeps this independent of the verifier
            let mut v = self.start.base.clone();
            for &l in &labels {
                v.push_label(l);
                seen.insert(v.clone());
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        let c: Certificate = serde_json::from_str(s)?;
        if c.version != CERTIFICATE_VERSION {
            return Err(Error::parse("certificate version", &c.version.to_string()));
        }
        Ok(c)
    }
}

/// Records moves while transforming a live path.
#[derive(Clone, Debug)]
pub struct Homotopy {
    kind: ComplexKind,
    start: EdgePath,
    labels: Vec<Label>,
    moves: Vec<Move>,
}

impl Homotopy {
    pub fn new(kind: ComplexKind, start: EdgePath) -> Homotopy {
        let mut labels = Vec::with_capacity(start.labels.len() + 32);
        labels.extend_from_slice(&start.labels);
        Homotopy {
            kind,
            start,
            labels,
            moves: Vec::with_capacity(64),
        }
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn current(&self) -> EdgePath {
        EdgePath::new(self.start.base.clone(), self.labels.clone())
    }

    /// Vertex at index `i` of the current path.
    pub fn vertex(&self, i: usize) -> SElement {
        let mut v = self.start.base.clone();
        for &l in &self.labels[..i] {
            v.push_label(l);
        }
        v
    }

    fn record(&mut self, m: Move) {
        apply_plain(&mut self.labels, &m, self.kind).expect("recorded moves are checked by their constructors");
        self.moves.push(m);
    }

    pub fn insert_backtrack(&mut self, pos: usize, label: Label) {
        self.record(Move::InsertBacktrack { pos, label });
    }

    /// Inserts `w w⁻¹` before `pos` as nested backtracks.
    pub fn insert_word_backtrack(&mut self, pos: usize, w: &[Label]) {
        for (i, &l) in w.iter().enumerate() {
            self.insert_backtrack(pos + i, l);
        }
    }

    /// Inserts `tⁿ t⁻ⁿ` before `pos`.
    pub fn insert_power_backtrack(&mut self, pos: usize, t: Label, n: usize) {
        for i in 0..n {
            self.insert_backtrack(pos + i, t);
        }
    }

    pub fn delete_backtrack(&mut self, pos: usize) -> Result<()> {
        if pos + 1 >= self.labels.len() || !self.labels[pos].is_inverse_of(self.labels[pos + 1]) {
            return Err(Error::Internal(format!("no backtrack at {pos} in {}", labels_to_string(&self.labels))));
        }
        self.record(Move::DeleteBacktrack { pos });
        Ok(())
    }

    /// Replaces the `p_len` labels at `pos` by `replacement` across a single 2-cell.
    pub fn swap(&mut self, pos: usize, p_len: usize, replacement: &[Label]) -> Result<()> {
        if pos + p_len > self.labels.len() {
            return Err(Error::Internal(format!("swap at {pos}+{p_len} beyond path")));
        }
        let mut key = self.labels[pos..pos + p_len].to_vec();
        key.extend(inverse_labels(replacement));
        let cell = lookup_cell(&key)
            .filter(|c| self.kind.allows(c.relator))
            .ok_or_else(|| Error::Internal(format!("no 2-cell of {} reads {}", self.kind, labels_to_string(&key))))?;
        self.record(Move::CellSwap {
            pos,
            cell,
            split: p_len,
        });
        Ok(())
    }

    /// Swaps the letters at `i` and `i + 1` across a commutation square.
    pub fn commute(&mut self, i: usize) -> Result<()> {
        let (x, y) = (self.labels[i], self.labels[i + 1]);
        let cell = commutation_cell(x, y)
            .filter(|c| self.kind.allows(c.relator))
            .ok_or_else(|| Error::Internal(format!("{x} and {y} do not commute in {}", self.kind)))?;
        // the cell reads x y x⁻¹ y⁻¹ up to rotation, so the swap is the whole effect
        self.labels.swap(i, i + 1);
        self.moves.push(Move::CellSwap { pos: i, cell, split: 2 });
        Ok(())
    }

    /// Freely reduces `labels[pos..pos+len]`, returning the new length of the segment.
    pub fn reduce_segment(&mut self, pos: usize, len: usize) -> usize {
        let mut end = pos + len;
        let mut i = pos;
        while i + 1 < end {
            if self.labels[i].is_inverse_of(self.labels[i + 1]) {
                self.record(Move::DeleteBacktrack { pos: i });
                end -= 2;
                i = i.saturating_sub(1).max(pos);
            } else {
                i += 1;
            }
        }
        end - pos
    }

    pub fn absorb(&mut self, cert: &Certificate) -> Result<()> {
        if cert.start.labels != self.labels || cert.start.base != self.start.base {
            return Err(Error::Internal("absorbed certificate starts elsewhere".into()));
        }
        for m in &cert.moves {
            self.record(*m);
        }
        Ok(())
    }

    /// Replays `cert`, a homotopy of the subpath at `pos`, inside the whole path.
    pub fn absorb_at(&mut self, pos: usize, cert: &Certificate) -> Result<()> {
        let n = cert.start.labels.len();
        if self.labels.get(pos..pos + n) != Some(&cert.start.labels[..]) || self.vertex(pos) != cert.start.base {
            return Err(Error::Internal(format!("absorbed certificate does not start at {pos}")));
        }
        for m in &cert.moves {
            let shifted = match *m {
                Move::InsertBacktrack { pos: p, label } => Move::InsertBacktrack { pos: p + pos, label },
                Move::DeleteBacktrack { pos: p } => Move::DeleteBacktrack { pos: p + pos },
                Move::CellSwap { pos: p, cell, split } => Move::CellSwap { pos: p + pos, cell, split },
            };
            apply_plain(&mut self.labels, &shifted, self.kind)?;
            self.moves.push(shifted);
        }
        Ok(())
    }

    pub fn finish(self) -> Certificate {
        Certificate {
            version: CERTIFICATE_VERSION,
            complex: self.kind,
            claimed_end: EdgePath::new(self.start.base.clone(), self.labels),
            start: self.start,
            moves: self.moves,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(base: &str, labels: &str) -> EdgePath {
        EdgePath::parse(base, labels).unwrap()
    }

    #[test]
    fn empty_certificate_verifies() {
        let c = Certificate::identity(ComplexKind::X, path("ab", "cd"));
        assert!(c.verify(&ForbiddenRegion::empty()).ok);
    }

    #[test]
    fn one_square_contracts() {
        let mut h = Homotopy::new(ComplexKind::X, path("aab", "e1sE1S"));
        h.swap(0, 4, &[]).unwrap();
        assert!(h.is_empty());
        let c = h.finish();
        assert!(c.verify(&ForbiddenRegion::empty()).ok);
        assert!(verify_by_replay(&c, ComplexKind::X, &ForbiddenRegion::empty()));

        let mut h = Homotopy::new(ComplexKind::X, path("aab", "e1sE1S"));
        h.swap(0, 3, &Label::parse_all("s").unwrap()).unwrap();
        h.delete_backtrack(0).unwrap();
        let c = h.finish();
        assert!(c.claimed_end.is_empty());
        assert!(c.verify(&ForbiddenRegion::empty()).ok);
    }

    #[test]
    fn wrong_complex_is_rejected() {
        let mut h = Homotopy::new(ComplexKind::X, path("", "acAC"));
        h.swap(0, 4, &[]).unwrap();
        let c = h.finish();
        assert!(verify(&c, ComplexKind::Gamma1, &ForbiddenRegion::empty()).ok);
        let v = verify(&c, ComplexKind::GammaHbar, &ForbiddenRegion::empty());
        assert!(!v.ok);
    }

    #[test]
    fn forbidden_sweep_vertex_fails() {
        let mut h = Homotopy::new(ComplexKind::Gamma1, path("aaa", "ac"));
        h.swap(0, 2, &Label::parse_all("ca").unwrap()).unwrap();
        let c = h.finish();
        let sweep = c.swept_vertices().unwrap();
        assert_eq!(sweep.len(), 4);
        assert!(c.verify(&ForbiddenRegion::empty()).ok);
        for v in sweep {
            let f = ForbiddenRegion::from_vertices([v]);
            assert!(!c.verify(&f).ok);
            assert!(!verify_by_replay(&c, ComplexKind::Gamma1, &f));
        }
    }

    #[test]
    fn tampered_end_is_caught() {
        let mut c = Certificate::identity(ComplexKind::Gamma1, path("", "ab"));
        c.claimed_end = path("", "ba");
        let v = c.verify(&ForbiddenRegion::empty());
        assert!(!v.ok);
        assert_eq!(v.failure.unwrap().move_index, None);
    }

    #[test]
    fn json_round_trip() {
        let mut h = Homotopy::new(ComplexKind::X, path("ab", "e3sE3S"));
        h.swap(0, 4, &[]).unwrap();
        h.insert_backtrack(0, Label::parse_all("e5").unwrap()[0]);
        let c = h.finish();
        let back = Certificate::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn compose_checks_junction() {
        let a = Certificate::identity(ComplexKind::Gamma1, path("", "ab"));
        let b = Certificate::identity(ComplexKind::Gamma1, path("", "ba"));
        assert!(a.compose(&b).is_err());
        assert!(a.compose(&a).unwrap().verify(&ForbiddenRegion::empty()).ok);
    }
}
