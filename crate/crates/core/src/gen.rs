//! Seeded random instances.
//!
//! Everything is driven by a `ChaCha8Rng` seeded from a `u64`, so a seed
//! reproduces the same instance on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codecomp::CoDecomposition;
use crate::cset::{CSet, CSetCoDecomposition, FinCat};
use crate::finset::{FinFn, FinSetObj};
use crate::graph::SimpleGraph;
use crate::homfront::BagDecomposition;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeKind {
    /// Vertex `i > 0` hangs off a uniform earlier vertex.
    Tree,
    Path,
    /// A path for `n < 3`.
    Cycle,
    /// Each pair is an edge with the given probability.
    Random(f64),
}

impl ShapeKind {
    pub fn name(&self) -> &'static str {
        match self {
            ShapeKind::Tree => "tree",
            ShapeKind::Path => "path",
            ShapeKind::Cycle => "cycle",
            ShapeKind::Random(_) => "random",
        }
    }
}

pub fn random_shape<R: Rng>(kind: ShapeKind, n: usize, rng: &mut R) -> SimpleGraph {
    match kind {
        ShapeKind::Tree => {
            let edges = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
            SimpleGraph::new(n, edges).expect("tree edges are simple")
        }
        ShapeKind::Path => SimpleGraph::path(n),
        ShapeKind::Cycle if n >= 3 => SimpleGraph::cycle(n),
        ShapeKind::Cycle => SimpleGraph::path(n),
        ShapeKind::Random(p) => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            SimpleGraph::new(n, edges).expect("pairs are distinct")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetSizes {
    pub w: usize,
    /// Every set has exactly `w` elements instead of a uniform size in `1..=w`.
    pub exact: bool,
    /// Force one global matching family so the limit is nonempty.
    pub planted: bool,
}

impl SetSizes {
    pub fn upto(w: usize) -> Self {
        SetSizes {
            w,
            exact: false,
            planted: false,
        }
    }

    pub fn exact(w: usize) -> Self {
        SetSizes {
            w,
            exact: true,
            planted: false,
        }
    }

    pub fn planted(self) -> Self {
        SetSizes {
            planted: true,
            ..self
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> usize {
        if self.exact {
            self.w
        } else {
            rng.random_range(1..=self.w.max(1))
        }
    }
}

/// Random sets on `shape` with uniform leg tables.
pub fn random_diagram<R: Rng>(shape: SimpleGraph, sizes: SetSizes, rng: &mut R) -> CoDecomposition {
    let vertex_sizes: Vec<usize> = (0..shape.vertex_count()).map(|_| sizes.draw(rng)).collect();
    let edge_sizes: Vec<usize> = (0..shape.edge_count()).map(|_| sizes.draw(rng)).collect();
    let planted: Vec<usize> = vertex_sizes
        .iter()
        .map(|&s| rng.random_range(0..s))
        .collect();
    let mut legs = Vec::with_capacity(shape.edge_count());
    for (e, &(x, y)) in shape.edges().iter().enumerate() {
        let t = edge_sizes[e];
        let mut table = |v: usize| -> Vec<usize> {
            (0..vertex_sizes[v])
                .map(|_| rng.random_range(0..t))
                .collect()
        };
        let (mut lx, mut ly) = (table(x), table(y));
        if sizes.planted {
            let meet = rng.random_range(0..t);
            lx[planted[x]] = meet;
            ly[planted[y]] = meet;
        }
        legs.push([FinFn::new_unchecked(lx, t), FinFn::new_unchecked(ly, t)]);
    }
    CoDecomposition::new(
        shape,
        vertex_sizes.into_iter().map(FinSetObj::new).collect(),
        edge_sizes.into_iter().map(FinSetObj::new).collect(),
        legs,
    )
    .expect("generated tables are in range")
}

/// `random_diagram` on a fresh shape, from a seed.
pub fn generate(kind: ShapeKind, n: usize, sizes: SetSizes, seed: u64) -> CoDecomposition {
    let mut r = rng(seed);
    let shape = random_shape(kind, n, &mut r);
    random_diagram(shape, sizes, &mut r)
}

/// A random graph `X` with a tree decomposition over `bags` bags.
///
/// Each vertex of `X` occupies a connected subtree of the shape grown by up
/// to `span` random steps; every pair sharing a bag becomes an edge with
/// probability `p`. Adhesions default to bag intersections.
pub fn random_decomposition<R: Rng>(
    nx: usize,
    bags: usize,
    span: usize,
    p: f64,
    rng: &mut R,
) -> BagDecomposition {
    let bags = bags.max(1);
    let shape = random_shape(ShapeKind::Tree, bags, rng);
    let mut contents: Vec<Vec<usize>> = vec![Vec::new(); bags];
    for v in 0..nx {
        let mut held = vec![rng.random_range(0..bags)];
        for _ in 0..rng.random_range(0..=span) {
            let from = held[rng.random_range(0..held.len())];
            let nbrs = shape.neighbors(from);
            if nbrs.is_empty() {
                break;
            }
            let (next, _) = nbrs[rng.random_range(0..nbrs.len())];
            if !held.contains(&next) {
                held.push(next);
            }
        }
        for b in held {
            contents[b].push(v);
        }
    }
    let mut edges = Vec::new();
    for u in 0..nx {
        for v in u + 1..nx {
            if contents.iter().any(|c| c.contains(&u) && c.contains(&v)) && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let x = SimpleGraph::new(nx, edges).expect("pairs are distinct");
    BagDecomposition::new(x, shape, contents, None)
}

fn random_table<R: Rng>(n: usize, t: usize, rng: &mut R) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(0..t)).collect()
}

/// A random diagram of walking-arrow C-sets (pairs of sets with a function
/// `X(0) → X(1)`) on `shape`, with natural legs.
///
/// Edge C-sets have a surjective action so that a natural leg exists for
/// any choice of its component at object 1.
pub fn random_arrow_diagram<R: Rng>(
    shape: SimpleGraph,
    w: usize,
    rng: &mut R,
) -> CSetCoDecomposition {
    let cat = FinCat::walking_arrow();
    let w = w.max(1);
    let arrow = |sets: &[usize; 2], table: Vec<usize>| CSet {
        sets: vec![FinSetObj::new(sets[0]), FinSetObj::new(sets[1])],
        actions: vec![
            FinFn::identity(sets[0]),
            FinFn::identity(sets[1]),
            FinFn::new_unchecked(table, sets[1]),
        ],
    };
    let vertex: Vec<CSet> = (0..shape.vertex_count())
        .map(|_| {
            let s = [rng.random_range(1..=w), rng.random_range(1..=w)];
            let f = random_table(s[0], s[1], rng);
            arrow(&s, f)
        })
        .collect();
    let mut edge = Vec::new();
    let mut legs = Vec::new();
    for &(a, b) in shape.edges() {
        let y1 = rng.random_range(1..=w);
        let y0 = rng.random_range(y1..=w.max(y1));
        let mut fy: Vec<usize> = (0..y1).chain(random_table(y0 - y1, y1, rng)).collect();
        fy.shuffle(rng);
        let mut fibers = vec![Vec::new(); y1];
        for (i, &t) in fy.iter().enumerate() {
            fibers[t].push(i);
        }
        let mut leg = |x: &CSet| -> Vec<FinFn> {
            let l1 = random_table(x.sets[1].size(), y1, rng);
            let l0 = x.actions[2]
                .table()
                .iter()
                .map(|&fa| {
                    let fiber = &fibers[l1[fa]];
                    fiber[rng.random_range(0..fiber.len())]
                })
                .collect();
            vec![FinFn::new_unchecked(l0, y0), FinFn::new_unchecked(l1, y1)]
        };
        legs.push([leg(&vertex[a]), leg(&vertex[b])]);
        edge.push(arrow(&[y0, y1], fy));
    }
    CSetCoDecomposition::new(cat, shape, vertex, edge, legs).expect("generated legs are natural")
}
