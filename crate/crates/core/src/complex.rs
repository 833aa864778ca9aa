//! Cayley complexes of the presentations of `G` and `S`, described by their
//! generating sets and relator descriptors. A face exists at every vertex for
//! every relator of the presentation, so 2-cells are never stored explicitly.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::gelement::GElement;
use crate::letter::{Base, EGen, Generator, Label, Letter, Sign};
use crate::region::ForbiddenRegion;
use crate::selement::SElement;

/// A relator or cell boundary; none is longer than four letters.
pub type CellWord = SmallVec<[Label; 4]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComplexKind {
    /// Cayley graph of `K` on the 24 e-generators.
    GammaK,
    /// Cayley 2-complex of `⟨a,b,c,d | [a,b;c,d]⟩`.
    Gamma1,
    /// Cayley 2-complex of `G` on `{a,b,c,d} ∪ E` with commutator and triangle cells.
    Gamma2,
    /// Cayley graph of `H = K × ⟨s⟩` on `{s} ∪ E`.
    GammaH,
    /// `Γ(H)` with the `[s,eᵢ]` squares attached.
    GammaHbar,
    /// The Cayley 2-complex of the full presentation of `S`.
    X,
    /// Control case: the Cayley graph of the free group on `a, b`.
    FreeAB,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 7] = [
        ComplexKind::GammaK,
        ComplexKind::Gamma1,
        ComplexKind::Gamma2,
        ComplexKind::GammaH,
        ComplexKind::GammaHbar,
        ComplexKind::X,
        ComplexKind::FreeAB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ComplexKind::GammaK => "GammaK",
            ComplexKind::Gamma1 => "Gamma1",
            ComplexKind::Gamma2 => "Gamma2",
            ComplexKind::GammaH => "GammaH",
            ComplexKind::GammaHbar => "GammaHbar",
            ComplexKind::X => "X",
            ComplexKind::FreeAB => "FreeAB",
        }
    }

    /// Whether the stable letter is a generator; otherwise every vertex lies in `G`.
    pub fn has_s(self) -> bool {
        matches!(self, ComplexKind::GammaH | ComplexKind::GammaHbar | ComplexKind::X)
    }

    #[inline]
    pub fn contains(self, l: Label) -> bool {
        match (self, l.gen) {
            (ComplexKind::GammaK, Generator::E(_)) => true,
            (ComplexKind::Gamma1, Generator::Base(b)) => b != Base::S,
            (ComplexKind::Gamma2, Generator::Base(b)) => b != Base::S,
            (ComplexKind::Gamma2, Generator::E(_)) => true,
            (ComplexKind::GammaH | ComplexKind::GammaHbar, Generator::Base(b)) => b == Base::S,
            (ComplexKind::GammaH | ComplexKind::GammaHbar, Generator::E(_)) => true,
            (ComplexKind::X, _) => true,
            (ComplexKind::FreeAB, Generator::Base(b)) => matches!(b, Base::A | Base::B),
            _ => false,
        }
    }

    pub fn allows(self, r: Relator) -> bool {
        match (self, r) {
            (ComplexKind::Gamma1, Relator::Commutator(..)) => true,
            (ComplexKind::Gamma2, Relator::Commutator(..) | Relator::Triangle(_)) => true,
            (ComplexKind::GammaHbar, Relator::SCommutator(_)) => true,
            (ComplexKind::X, _) => true,
            _ => false,
        }
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComplexKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<ComplexKind> {
        ComplexKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::parse("complex name", s))
    }
}

/// A defining relator of one of the presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relator {
    /// `x y x⁻¹ y⁻¹` with `x ∈ {a,b}`, `y ∈ {c,d}`.
    Commutator(Base, Base),
    /// `eᵢ⁻¹ wᵢ`.
    Triangle(EGen),
    /// `s eᵢ s⁻¹ eᵢ⁻¹`.
    SCommutator(EGen),
}

impl Relator {
    pub fn all() -> impl Iterator<Item = Relator> {
        let comms = [Base::A, Base::B]
            .into_iter()
            .flat_map(|x| [Base::C, Base::D].map(move |y| Relator::Commutator(x, y)));
        comms
            .chain(EGen::all().map(Relator::Triangle))
            .chain(EGen::all().map(Relator::SCommutator))
    }

    /// Position in [`Relator::all`].
    fn code(self) -> usize {
        match self {
            Relator::Commutator(x, y) => 2 * usize::from(x == Base::B) + usize::from(y == Base::D),
            Relator::Triangle(e) => 4 + e.0 as usize,
            Relator::SCommutator(e) => 4 + crate::egen::Q + e.0 as usize,
        }
    }

    pub fn word(self) -> CellWord {
        match self {
            Relator::Commutator(x, y) => smallvec![
                Letter::pos(x).into(),
                Letter::pos(y).into(),
                Letter::neg(x).into(),
                Letter::neg(y).into(),
            ],
            Relator::Triangle(e) => {
                let w = e.word();
                smallvec![Label::e(e, Sign::Neg), w[0].into(), w[1].into()]
            }
            Relator::SCommutator(e) => smallvec![
                Letter::pos(Base::S).into(),
                Label::e(e, Sign::Pos),
                Letter::neg(Base::S).into(),
                Label::e(e, Sign::Neg),
            ],
        }
    }

    pub fn len(self) -> usize {
        match self {
            Relator::Triangle(_) => 3,
            _ => 4,
        }
    }

    /// The cyclic word read from `rotation`, of `r` or `r⁻¹`.
    pub fn cyclic_word(self, inverted: bool, rotation: usize) -> CellWord {
        let mut w = self.word();
        if inverted {
            w = w.iter().rev().map(|l| l.inverse()).collect();
        }
        let n = w.len();
        w.rotate_left(rotation % n);
        w
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relator::Commutator(x, y) => write!(f, "[{},{}]", x.to_char(), y.to_char()),
            Relator::Triangle(e) => write!(f, "e{0}=w{0}", e.index()),
            Relator::SCommutator(e) => write!(f, "[s,e{}]", e.index()),
        }
    }
}

impl FromStr for Relator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Relator> {
        let t = s.trim();
        let bad = || Error::parse("relator", s);
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (x, y) = inner.split_once(',').ok_or_else(bad)?;
            let (x, y) = (x.trim(), y.trim());
            if x == "s" {
                let e = y.strip_prefix('e').and_then(|d| d.parse().ok()).and_then(EGen::new).ok_or_else(bad)?;
                return Ok(Relator::SCommutator(e));
            }
            let mut xs = x.chars();
            let mut ys = y.chars();
            let (xb, yb) = match (xs.next(), xs.next(), ys.next(), ys.next()) {
                (Some(a), None, Some(c), None) => (Base::from_char(a), Base::from_char(c)),
                _ => return Err(bad()),
            };
            match (xb, yb) {
                (Some(xb @ (Base::A | Base::B)), Some(yb @ (Base::C | Base::D))) if x.chars().all(|c| c.is_lowercase()) && y.chars().all(|c| c.is_lowercase()) => {
                    Ok(Relator::Commutator(xb, yb))
                }
                _ => Err(bad()),
            }
        } else if let Some((l, r)) = t.split_once('=') {
            let i: usize = l.trim().strip_prefix('e').and_then(|d| d.parse().ok()).ok_or_else(bad)?;
            let j: usize = r.trim().strip_prefix('w').and_then(|d| d.parse().ok()).ok_or_else(bad)?;
            if i != j {
                return Err(bad());
            }
            EGen::new(i).map(Relator::Triangle).ok_or_else(bad)
        } else {
            Err(bad())
        }
    }
}

impl Serialize for Relator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Relator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Relator, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A 2-cell boundary read from a vertex: relator, orientation and starting rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellRef {
    pub relator: Relator,
    #[serde(default)]
    pub inverted: bool,
    #[serde(default)]
    pub rotation: usize,
}

impl CellRef {
    pub fn boundary(&self) -> CellWord {
        self.relator.cyclic_word(self.inverted, self.rotation)
    }

    /// [`CellRef::boundary`] from a table built once.
    #[inline]
    pub fn boundary_ref(&self) -> &'static [Label] {
        static TABLE: OnceLock<Vec<CellWord>> = OnceLock::new();
        let t = TABLE.get_or_init(|| {
            let mut t = Vec::new();
            for r in Relator::all() {
                for inverted in [false, true] {
                    for rotation in 0..4 {
                        t.push(r.cyclic_word(inverted, rotation));
                    }
                }
            }
            t
        });
        &t[self.relator.code() * 8 + usize::from(self.inverted) * 4 + self.rotation % self.relator.len()]
    }
}

fn cell_table() -> &'static FxHashMap<Vec<Label>, CellRef> {
    static TABLE: OnceLock<FxHashMap<Vec<Label>, CellRef>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut m = FxHashMap::default();
        for relator in Relator::all() {
            for inverted in [false, true] {
                for rotation in 0..relator.len() {
                    let c = CellRef {
                        relator,
                        inverted,
                        rotation,
                    };
                    m.entry(c.boundary().to_vec()).or_insert(c);
                }
            }
        }
        m
    })
}

/// The 2-cell whose boundary, read from the current vertex, is exactly `word`.
pub fn lookup_cell(word: &[Label]) -> Option<CellRef> {
    cell_table().get(word).copied()
}

/// Dense index of a signed generator, `0..58`.
#[inline]
pub fn label_code(l: Label) -> usize {
    let sign = (l.sign == Sign::Neg) as usize;
    match l.gen {
        Generator::Base(b) => 2 * b as usize + sign,
        Generator::E(e) => 10 + 2 * (e.index() - 1) + sign,
    }
}

const CODES: usize = 58;

/// The square whose boundary reads `x y x⁻¹ y⁻¹`, i.e. the cell that swaps `x y` to `y x`.
#[inline]
pub fn commutation_cell(x: Label, y: Label) -> Option<CellRef> {
    static TABLE: OnceLock<Vec<Option<CellRef>>> = OnceLock::new();
    let t = TABLE.get_or_init(|| {
        let mut labels: Vec<Label> = Base::ALL.iter().map(|&b| Label::from(Letter::pos(b))).collect();
        labels.extend(EGen::all().map(|e| Label::e(e, Sign::Pos)));
        let signed: Vec<Label> = labels.iter().flat_map(|&l| [l, l.inverse()]).collect();
        let mut t = vec![None; CODES * CODES];
        for &x in &signed {
            for &y in &signed {
                t[label_code(x) * CODES + label_code(y)] = lookup_cell(&[x, y, x.inverse(), y.inverse()]);
            }
        }
        t
    });
    t[label_code(x) * CODES + label_code(y)]
}

/// The ambient complex of a path or certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub kind: ComplexKind,
    pub generators: Vec<Label>,
    pub relators: Vec<Relator>,
}

impl ComplexSpec {
    pub fn new(kind: ComplexKind) -> ComplexSpec {
        let mut generators: Vec<Label> = Base::ALL.iter().map(|&b| Label::from(Letter::pos(b))).collect();
        generators.extend(EGen::all().map(|e| Label::e(e, Sign::Pos)));
        generators.retain(|&l| kind.contains(l));
        let relators = Relator::all().filter(|&r| kind.allows(r)).collect();
        ComplexSpec {
            kind,
            generators,
            relators,
        }
    }

    pub fn signed_generators(&self) -> Vec<Label> {
        self.generators.iter().flat_map(|&g| [g, g.inverse()]).collect()
    }
}

impl From<ComplexKind> for ComplexSpec {
    fn from(kind: ComplexKind) -> ComplexSpec {
        ComplexSpec::new(kind)
    }
}

/// A vertex type for Cayley complexes: `G` for the s-free complexes, `S` otherwise.
pub trait Vertex: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync {
    fn identity() -> Self;
    /// Right multiplication by a generator; `false` if the label is not available on this type.
    fn try_push(&mut self, l: Label) -> bool;
    fn to_selement(&self) -> SElement;
    fn from_selement(x: &SElement) -> Option<Self>;
    fn in_region(&self, region: &ForbiddenRegion) -> bool;
}

impl Vertex for GElement {
    fn identity() -> Self {
        GElement::identity()
    }

    #[inline]
    fn try_push(&mut self, l: Label) -> bool {
        match l.gen {
            Generator::Base(Base::S) => false,
            Generator::Base(b) => {
                self.push(Letter::new(b, l.sign));
                true
            }
            Generator::E(e) => {
                let w = e.word();
                match l.sign {
                    Sign::Pos => {
                        self.push(w[0]);
                        self.push(w[1]);
                    }
                    Sign::Neg => {
                        self.push(w[1].inverse());
                        self.push(w[0].inverse());
                    }
                }
                true
            }
        }
    }

    fn to_selement(&self) -> SElement {
        SElement::from_gelement(self)
    }

    fn from_selement(x: &SElement) -> Option<Self> {
        x.to_gelement()
    }

    #[inline]
    fn in_region(&self, region: &ForbiddenRegion) -> bool {
        region.contains_g(self)
    }
}

impl Vertex for SElement {
    fn identity() -> Self {
        SElement::identity()
    }

    #[inline]
    fn try_push(&mut self, l: Label) -> bool {
        self.push_label(l);
        true
    }

    fn to_selement(&self) -> SElement {
        self.clone()
    }

    fn from_selement(x: &SElement) -> Option<Self> {
        Some(x.clone())
    }

    #[inline]
    fn in_region(&self, region: &ForbiddenRegion) -> bool {
        region.contains(self)
    }
}

/// One entry per signed generator of the complex; coinciding endpoints are kept.
pub fn neighbors(v: &SElement, kind: ComplexKind) -> Vec<(Label, SElement)> {
    ComplexSpec::new(kind)
        .signed_generators()
        .into_iter()
        .map(|l| (l, v.act(l)))
        .collect()
}

/// Generic form of [`neighbors`] for either vertex type; `None` if a label is unsupported.
pub fn neighbors_of<V: Vertex>(v: &V, labels: &[Label]) -> Option<Vec<(Label, V)>> {
    labels
        .iter()
        .map(|&l| {
            let mut w = v.clone();
            w.try_push(l).then_some((l, w))
        })
        .collect()
}
