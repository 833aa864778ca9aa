//! Breadth-first balls in Cayley graphs, the `Γ₁` metric, and the
//! sphere-complement probe used to count ends experimentally.

use std::fmt::Write as _;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::complex::{ComplexKind, ComplexSpec, Vertex};
use crate::error::{Error, Result};
use crate::gelement::GElement;
use crate::letter::Label;
use crate::selement::SElement;

pub const DEFAULT_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug)]
pub struct Ball<V> {
    center: V,
    radius: usize,
    kind: ComplexKind,
    labels: Vec<Label>,
    vertices: Vec<V>,
    dist: Vec<u32>,
    index: FxHashMap<V, u32>,
}

impl<V: Vertex> Ball<V> {
    pub fn build(center: V, radius: usize, kind: ComplexKind, budget: usize) -> Result<Ball<V>> {
        let labels = ComplexSpec::new(kind).signed_generators();
        let mut ball = Ball {
            center: center.clone(),
            radius,
            kind,
            labels,
            vertices: vec![center.clone()],
            dist: vec![0],
            index: FxHashMap::default(),
        };
        ball.index.insert(center, 0);
        let mut lo = 0;
        for d in 1..=radius as u32 {
            let hi = ball.vertices.len();
            for i in lo..hi {
                for li in 0..ball.labels.len() {
                    let mut w = ball.vertices[i].clone();
                    if !w.try_push(ball.labels[li]) {
                        return Err(Error::Path(format!("{} needs S-vertices", kind)));
                    }
                    if !ball.index.contains_key(&w) {
                        if ball.vertices.len() >= budget {
                            return Err(Error::Budget { budget });
                        }
                        ball.index.insert(w.clone(), ball.vertices.len() as u32);
                        ball.vertices.push(w);
                        ball.dist.push(d);
                    }
                }
            }
            lo = hi;
        }
        Ok(ball)
    }

    pub fn center(&self) -> &V {
        &self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// In BFS order: non-decreasing distance.
    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn contains(&self, v: &V) -> bool {
        self.index.contains_key(v)
    }

    pub fn distance(&self, v: &V) -> Option<usize> {
        self.index.get(v).map(|&i| self.dist[i as usize] as usize)
    }

    pub fn distance_at(&self, i: usize) -> usize {
        self.dist[i] as usize
    }

    pub fn index_of(&self, v: &V) -> Option<usize> {
        self.index.get(v).map(|&i| i as usize)
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.radius + 1];
        for &d in &self.dist {
            out[d as usize] += 1;
        }
        out
    }

    /// Neighbor indices of vertex `i` that lie in the ball, one per signed generator.
    pub fn neighbor_indices(&self, i: usize) -> impl Iterator<Item = (Label, usize)> + '_ {
        self.labels.iter().filter_map(move |&l| {
            let mut w = self.vertices[i].clone();
            w.try_push(l);
            self.index.get(&w).map(|&j| (l, j as usize))
        })
    }

    /// Edges `(from, positive label, to)` with both ends in the ball.
    pub fn edges(&self) -> Vec<(usize, Label, usize)> {
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for (l, j) in self.neighbor_indices(i) {
                if l.sign == crate::letter::Sign::Pos {
                    out.push((i, l, j));
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 6] = ["#08306b", "#2171b5", "#6baed6", "#c6dbef", "#fdd0a2", "#f16913"];
        let mut s = String::new();
        let _ = writeln!(s, "digraph ball {{");
        let _ = writeln!(s, "  graph [label=\"{} radius {}\"];", self.kind, self.radius);
        let _ = writeln!(s, "  node [shape=circle, style=filled, fontsize=8];");
        for (i, v) in self.vertices.iter().enumerate() {
            let d = self.dist[i] as usize;
            let label = format!("{:?}", v.to_selement()).replace('"', "'");
            let _ = writeln!(
                s,
                "  v{i} [label=\"{}\", tooltip=\"d={d}\", fillcolor=\"{}\"];",
                label,
                PALETTE[d.min(PALETTE.len() - 1)]
            );
        }
        for (i, l, j) in self.edges() {
            let _ = writeln!(s, "  v{i} -> v{j} [label=\"{l}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Word metric of `Γ₁`: the sum of the two free-factor distances.
pub fn distance_gamma1(x: &GElement, y: &GElement) -> usize {
    x.inverse().mul(y).length()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub complex: ComplexKind,
    pub inner: usize,
    pub outer: usize,
    pub ball_vertices: usize,
    pub remaining_vertices: usize,
    pub components: usize,
    /// Components that reach the outer sphere.
    pub essential: usize,
    pub essential_sizes: Vec<usize>,
}

struct Dsu(Vec<u32>);

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu((0..n as u32).collect())
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let p = self.0[self.0[x as usize] as usize];
            self.0[x as usize] = p;
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b) as usize] = a.min(b);
        }
    }
}

fn components_in<V: Vertex>(kind: ComplexKind, inner: usize, outer: usize, budget: usize) -> Result<ComponentReport> {
    if inner >= outer {
        return Err(Error::Precondition(format!("inner radius {inner} must be below outer {outer}")));
    }
    let ball = Ball::<V>::build(V::identity(), outer, kind, budget)?;
    let n = ball.len();
    let mut dsu = Dsu::new(n);
    let keep = |i: usize| ball.distance_at(i) > inner;
    for i in 0..n {
        if !keep(i) {
            continue;
        }
        for (_, j) in ball.neighbor_indices(i) {
            if keep(j) {
                dsu.union(i as u32, j as u32);
            }
        }
    }
    let mut sizes: FxHashMap<u32, (usize, bool)> = FxHashMap::default();
    for i in (0..n).filter(|&i| keep(i)) {
        let root = dsu.find(i as u32);
        let e = sizes.entry(root).or_insert((0, false));
        e.0 += 1;
        e.1 |= ball.distance_at(i) == outer;
    }
    let mut essential_sizes: Vec<usize> = sizes.values().filter(|(_, touches)| *touches).map(|(s, _)| *s).collect();
    essential_sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(ComponentReport {
        complex: kind,
        inner,
        outer,
        ball_vertices: n,
        remaining_vertices: (0..n).filter(|&i| keep(i)).count(),
        components: sizes.len(),
        essential: essential_sizes.len(),
        essential_sizes,
    })
}

/// Components of `ball(*, outer) − N(*, inner)` and how many of them reach the outer sphere.
pub fn sphere_complement_components(kind: ComplexKind, inner: usize, outer: usize, budget: usize) -> Result<ComponentReport> {
    if kind.has_s() {
        components_in::<SElement>(kind, inner, outer, budget)
    } else {
        components_in::<GElement>(kind, inner, outer, budget)
    }
}
