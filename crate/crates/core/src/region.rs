//! Finite forbidden vertex sets and their dilations.

use rustc_hash::FxHashSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{neighbors, ComplexKind};
use crate::error::{Error, Result};
use crate::gelement::GElement;
use crate::selement::SElement;

#[derive(Clone, Debug, Default)]
pub struct ForbiddenRegion {
    vertices: FxHashSet<SElement>,
    // cached G-projection, for verifying s-free paths without leaving G
    g_vertices: FxHashSet<GElement>,
    // `Some(r)` when every g with |g| <= r is present; `only_ball` if nothing else is
    ball: Option<usize>,
    only_ball: bool,
}

impl ForbiddenRegion {
    pub fn empty() -> ForbiddenRegion {
        ForbiddenRegion::default()
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = SElement>) -> ForbiddenRegion {
        let mut r = ForbiddenRegion::default();
        for v in vs {
            r.insert(v);
        }
        r
    }

    pub fn from_g(vs: impl IntoIterator<Item = GElement>) -> ForbiddenRegion {
        ForbiddenRegion::from_vertices(vs.into_iter().map(|g| SElement::from_gelement(&g)))
    }

    /// `N(*, radius)` in `Γ₁`: every `g ∈ G` of word length at most `radius`.
    pub fn gamma1_ball(radius: usize) -> ForbiddenRegion {
        let ball = crate::ball::Ball::<GElement>::build(GElement::identity(), radius, ComplexKind::Gamma1, usize::MAX)
            .expect("no budget");
        let mut r = ForbiddenRegion::from_g(ball.vertices().iter().cloned());
        r.ball = Some(radius);
        r.only_ball = true;
        r
    }

    pub fn insert(&mut self, v: SElement) -> bool {
        match v.to_gelement() {
            Some(g) => {
                if self.ball.is_none_or(|r| g.length() > r) {
                    self.only_ball = false;
                }
                self.g_vertices.insert(g);
            }
            None => self.only_ball = false,
        }
        self.vertices.insert(v)
    }

    #[inline]
    pub fn contains(&self, v: &SElement) -> bool {
        if self.only_ball && !v.in_g() {
            return false;
        }
        self.vertices.contains(v)
    }

    #[inline]
    pub fn contains_g(&self, g: &GElement) -> bool {
        if let Some(r) = self.ball {
            if g.length() <= r {
                return true;
            }
            if self.only_ball {
                return false;
            }
        }
        self.g_vertices.contains(g)
    }

    /// The radius when the region is exactly a `Γ₁` ball about `*`.
    #[inline]
    pub(crate) fn pure_ball(&self) -> Option<usize> {
        self.ball.filter(|_| self.only_ball)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SElement> {
        self.vertices.iter()
    }

    /// Sorted, for deterministic output.
    pub fn sorted(&self) -> Vec<SElement> {
        let mut v: Vec<SElement> = self.vertices.iter().cloned().collect();
        v.sort();
        v
    }

    /// Largest `Γ₁` length of a vertex in `G`; the `k` with `C ∩ G ⊆ N(*, k)`.
    pub fn gamma1_radius(&self) -> Option<usize> {
        self.g_vertices.iter().map(|g| g.length()).max()
    }

    /// `j`-fold dilation in the 1-skeleton of `kind`: add every vertex one edge away, `j` times.
    pub fn dilate(&self, j: usize, kind: ComplexKind, budget: usize) -> Result<ForbiddenRegion> {
        let mut out = self.clone();
        let mut frontier: Vec<SElement> = self.sorted();
        for _ in 0..j {
            let mut next = Vec::new();
            for v in &frontier {
                for (_, w) in neighbors(v, kind) {
                    if !out.contains(&w) {
                        out.insert(w.clone());
                        next.push(w);
                        if out.len() > budget {
                            return Err(Error::Budget { budget });
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }
}

impl PartialEq for ForbiddenRegion {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Serialize for ForbiddenRegion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.sorted().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ForbiddenRegion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(ForbiddenRegion::from_vertices(Vec::<SElement>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_cache_tracks_inserts() {
        let r = ForbiddenRegion::from_vertices([SElement::parse("ab").unwrap(), SElement::parse("s").unwrap()]);
        assert!(r.contains_g(&GElement::parse("ab").unwrap()));
        assert_eq!(r.len(), 2);
        assert_eq!(r.gamma1_radius(), Some(2));
    }

    #[test]
    fn dilation_of_a_point() {
        let r = ForbiddenRegion::from_vertices([SElement::identity()]);
        let n1 = r.dilate(1, ComplexKind::Gamma1, 1000).unwrap();
        assert_eq!(n1.len(), 9);
        assert!(r.dilate(2, ComplexKind::X, 10).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = ForbiddenRegion::gamma1_ball(1);
        let s = serde_json::to_string(&r).unwrap();
        let back: ForbiddenRegion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(back.contains_g(&GElement::parse("C").unwrap()));
    }

    #[test]
    fn ball_fast_path_agrees_with_the_set() {
        let mut r = ForbiddenRegion::gamma1_ball(2);
        assert_eq!(r.len(), 49);
        for g in ["", "a", "aC", "ab", "abc", "aaa"] {
            let g = GElement::parse(g).unwrap();
            assert_eq!(r.contains_g(&g), g.length() <= 2);
            assert_eq!(r.contains(&SElement::from_gelement(&g)), g.length() <= 2);
        }
        assert!(!r.contains(&SElement::parse("s").unwrap()));
        r.insert(SElement::parse("abc").unwrap());
        assert!(r.contains_g(&GElement::parse("abc").unwrap()));
        assert!(!r.contains_g(&GElement::parse("abd").unwrap()));
    }
}
