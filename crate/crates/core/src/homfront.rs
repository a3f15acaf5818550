//! Graph homomorphism existence through decompositions.
//!
//! Given a graph `X` covered by bags arranged along a shape graph, the sets
//! of homomorphisms from each bag (and each adhesion) into a template `H`
//! form a co-decomposition whose limit is `Hom(X, H)`. A homomorphism exists
//! exactly when that limit is nonempty.

use std::collections::HashMap;
use std::fmt;

use crate::codecomp::CoDecomposition;
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSetObj};
use crate::graph::{SimpleGraph, VertexSet};
use crate::solver::{inlim, Solution, SolveOptions};

/// A graph `X` covered by bags indexed by the vertices of `shape`, with one
/// adhesion per shape edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagDecomposition {
    x: SimpleGraph,
    shape: SimpleGraph,
    bags: Vec<Vec<usize>>,
    adhesions: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompViolation {
    BagCount {
        expected: usize,
        found: usize,
    },
    AdhesionCount {
        expected: usize,
        found: usize,
    },
    VertexOutOfRange {
        vertex: usize,
    },
    UncoveredVertex {
        vertex: usize,
    },
    UncoveredEdge {
        u: usize,
        v: usize,
    },
    AdhesionOutsideBags {
        edge: usize,
        vertex: usize,
    },
    /// The bags containing `vertex` do not induce a connected subgraph.
    Disconnected {
        vertex: usize,
    },
    /// Both ends of shape edge `edge` contain `vertex`, but its adhesion does not.
    MissingFromAdhesion {
        edge: usize,
        vertex: usize,
    },
}

impl fmt::Display for DecompViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DecompViolation::*;
        match self {
            BagCount { expected, found } => write!(f, "expected {expected} bags, found {found}"),
            AdhesionCount { expected, found } => {
                write!(f, "expected {expected} adhesions, found {found}")
            }
            VertexOutOfRange { vertex } => write!(f, "vertex {vertex} is not a vertex of X"),
            UncoveredVertex { vertex } => write!(f, "vertex {vertex} of X is in no bag"),
            UncoveredEdge { u, v } => write!(f, "edge ({u}, {v}) of X is inside no bag"),
            AdhesionOutsideBags { edge, vertex } => {
                write!(
                    f,
                    "adhesion of shape edge {edge} contains {vertex}, which is not in both bags"
                )
            }
            Disconnected { vertex } => write!(
                f,
                "bags containing vertex {vertex} are not connected in the shape"
            ),
            MissingFromAdhesion { edge, vertex } => write!(
                f,
                "both bags of shape edge {edge} contain vertex {vertex} but the adhesion does not"
            ),
        }
    }
}

fn normalize(mut set: Vec<usize>) -> Vec<usize> {
    set.sort_unstable();
    set.dedup();
    set
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|v| b.binary_search(v).is_ok())
        .collect()
}

impl BagDecomposition {
    /// Bags and adhesions are sorted and deduplicated. Missing adhesions
    /// default to the intersection of the two bags. Call
    /// [`Self::validate`] before solving.
    pub fn new(
        x: SimpleGraph,
        shape: SimpleGraph,
        bags: Vec<Vec<usize>>,
        adhesions: Option<Vec<Vec<usize>>>,
    ) -> Self {
        let bags: Vec<Vec<usize>> = bags.into_iter().map(normalize).collect();
        let adhesions = match adhesions {
            Some(a) => a.into_iter().map(normalize).collect(),
            None => shape
                .edges()
                .iter()
                .map(|&(p, q)| match (bags.get(p), bags.get(q)) {
                    (Some(a), Some(b)) => intersect(a, b),
                    _ => Vec::new(),
                })
                .collect(),
        };
        BagDecomposition {
            x,
            shape,
            bags,
            adhesions,
        }
    }

    /// Checks coverage, adhesion containment and that every vertex of `X`
    /// lives on a connected part of the shape glued through the adhesions.
    /// Together these make `X` the colimit of the bag diagram.
    pub fn validate(&self) -> Result<(), Vec<DecompViolation>> {
        validate_decomposition(self)
    }

    pub fn x(&self) -> &SimpleGraph {
        &self.x
    }

    pub fn shape(&self) -> &SimpleGraph {
        &self.shape
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn adhesions(&self) -> &[Vec<usize>] {
        &self.adhesions
    }

    pub fn max_bag(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn validate_decomposition(b: &BagDecomposition) -> Result<(), Vec<DecompViolation>> {
    let mut out = Vec::new();
    let nx = b.x.vertex_count();
    if b.bags.len() != b.shape.vertex_count() {
        out.push(DecompViolation::BagCount {
            expected: b.shape.vertex_count(),
            found: b.bags.len(),
        });
    }
    if b.adhesions.len() != b.shape.edge_count() {
        out.push(DecompViolation::AdhesionCount {
            expected: b.shape.edge_count(),
            found: b.adhesions.len(),
        });
    }
    for &v in b.bags.iter().chain(&b.adhesions).flatten() {
        if v >= nx && !out.contains(&DecompViolation::VertexOutOfRange { vertex: v }) {
            out.push(DecompViolation::VertexOutOfRange { vertex: v });
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    // holders[v] = bags containing v
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); nx];
    for (i, bag) in b.bags.iter().enumerate() {
        for &v in bag {
            holders[v].push(i);
        }
    }
    for (v, hs) in holders.iter().enumerate() {
        if hs.is_empty() {
            out.push(DecompViolation::UncoveredVertex { vertex: v });
        }
    }
    for &(u, v) in b.x.edges() {
        if !b
            .bags
            .iter()
            .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok())
        {
            out.push(DecompViolation::UncoveredEdge { u, v });
        }
    }
    for (e, adhesion) in b.adhesions.iter().enumerate() {
        let (p, q) = b.shape.endpoints(e);
        for &v in adhesion {
            if b.bags[p].binary_search(&v).is_err() || b.bags[q].binary_search(&v).is_err() {
                out.push(DecompViolation::AdhesionOutsideBags { edge: e, vertex: v });
            }
        }
    }
    for (v, hs) in holders.iter().enumerate() {
        if hs.len() > 1 {
            let keep = VertexSet::from_indices(b.shape.vertex_count(), hs);
            if b.shape.induced(&keep).graph.components().len() != 1 {
                out.push(DecompViolation::Disconnected { vertex: v });
            }
        }
        for (e, &(p, q)) in b.shape.edges().iter().enumerate() {
            if hs.binary_search(&p).is_ok()
                && hs.binary_search(&q).is_ok()
                && b.adhesions[e].binary_search(&v).is_err()
            {
                out.push(DecompViolation::MissingFromAdhesion { edge: e, vertex: v });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// All homomorphisms from the subgraph of `X` induced on `vertices` into `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSet {
    /// Vertices of `X`, ascending.
    pub vertices: Vec<usize>,
    /// `maps[i][j]` is the image of `vertices[j]`; maps are in lexicographic order.
    pub maps: Vec<Vec<usize>>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

/// Enumerates homomorphisms by backtracking over `vertices` in ascending
/// order, checking edges back to already-assigned vertices.
pub fn hom_set(x: &SimpleGraph, vertices: &[usize], h: &SimpleGraph) -> HomSet {
    let vertices = normalize(vertices.to_vec());
    // earlier[j] = positions i < j adjacent to vertices[j] in X
    let earlier: Vec<Vec<usize>> = (0..vertices.len())
        .map(|j| {
            (0..j)
                .filter(|&i| x.has_edge(vertices[i], vertices[j]))
                .collect()
        })
        .collect();
    let mut maps = Vec::new();
    let mut current = vec![0; vertices.len()];
    extend_hom(h, &earlier, 0, &mut current, &mut maps);
    HomSet { vertices, maps }
}

fn extend_hom(
    h: &SimpleGraph,
    earlier: &[Vec<usize>],
    j: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if j == current.len() {
        out.push(current.clone());
        return;
    }
    for c in 0..h.vertex_count() {
        if earlier[j].iter().all(|&i| h.has_edge(current[i], c)) {
            current[j] = c;
            extend_hom(h, earlier, j + 1, current, out);
        }
    }
}

/// The co-decomposition of hom-sets together with the hom-sets themselves.
#[derive(Debug, Clone)]
pub struct HomDiagram {
    pub diagram: CoDecomposition,
    pub bag_homs: Vec<HomSet>,
    pub adhesion_homs: Vec<HomSet>,
}

/// Bag `x` becomes `Hom(X[bag x], H)`, adhesion `e` becomes
/// `Hom(X[adhesion e], H)`, and each leg restricts a bag map to the adhesion.
pub fn build_hom_codecomp(b: &BagDecomposition, h: &SimpleGraph) -> Result<HomDiagram> {
    b.validate().map_err(Error::Decomposition)?;
    let bag_homs: Vec<HomSet> = b.bags.iter().map(|bag| hom_set(&b.x, bag, h)).collect();
    let adhesion_homs: Vec<HomSet> = b.adhesions.iter().map(|a| hom_set(&b.x, a, h)).collect();
    let mut legs = Vec::with_capacity(b.shape.edge_count());
    for (e, adh) in adhesion_homs.iter().enumerate() {
        let index: HashMap<&[usize], usize> = adh
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| (m.as_slice(), i))
            .collect();
        let (p, q) = b.shape.endpoints(e);
        let restrict = |bag: &HomSet| -> FinFn {
            let positions: Vec<usize> = adh
                .vertices
                .iter()
                .map(|v| {
                    bag.vertices
                        .binary_search(v)
                        .expect("adhesion lies inside the bag")
                })
                .collect();
            let table = bag
                .maps
                .iter()
                .map(|m| {
                    let restricted: Vec<usize> = positions.iter().map(|&i| m[i]).collect();
                    index[restricted.as_slice()]
                })
                .collect();
            FinFn::new_unchecked(table, adh.len())
        };
        legs.push([restrict(&bag_homs[p]), restrict(&bag_homs[q])]);
    }
    let diagram = CoDecomposition::new(
        b.shape.clone(),
        bag_homs.iter().map(|s| FinSetObj::new(s.len())).collect(),
        adhesion_homs
            .iter()
            .map(|s| FinSetObj::new(s.len()))
            .collect(),
        legs,
    )?;
    Ok(HomDiagram {
        diagram,
        bag_homs,
        adhesion_homs,
    })
}

/// Result of [`hom_exists`].
#[derive(Debug, Clone)]
pub struct HomResult {
    pub exists: bool,
    /// A homomorphism `V(X) → V(H)`, when one exists and a witness was requested.
    pub map: Option<Vec<usize>>,
    pub solution: Solution,
}

/// Decides whether `X → H` exists: true iff the hom-set diagram has a
/// nonempty limit. With `opts.witness`, the per-bag maps of the witness are
/// stitched into one map on `V(X)` and checked.
pub fn hom_exists(b: &BagDecomposition, h: &SimpleGraph, opts: &SolveOptions) -> Result<HomResult> {
    let hd = build_hom_codecomp(b, h)?;
    let solution = inlim(&hd.diagram, opts)?;
    let exists = !solution.verdict.empty_limit;
    let map = match &solution.witness {
        Some(w) if exists => {
            let mut map = vec![usize::MAX; b.x.vertex_count()];
            for (bag, &i) in hd.bag_homs.iter().zip(&w.vertex) {
                for (&v, &c) in bag.vertices.iter().zip(&bag.maps[i]) {
                    debug_assert!(map[v] == usize::MAX || map[v] == c);
                    map[v] = c;
                }
            }
            if !is_homomorphism(&b.x, h, &map) {
                return Err(Error::BadStitch);
            }
            Some(map)
        }
        _ => None,
    };
    Ok(HomResult {
        exists,
        map,
        solution,
    })
}

pub fn is_homomorphism(x: &SimpleGraph, h: &SimpleGraph, map: &[usize]) -> bool {
    map.len() == x.vertex_count()
        && map.iter().all(|&c| c < h.vertex_count())
        && x.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]))
}

/// Direct backtracking search for a homomorphism `X → H`, ignoring any
/// decomposition. Returns the lexicographically first one.
pub fn find_homomorphism(x: &SimpleGraph, h: &SimpleGraph) -> Option<Vec<usize>> {
    let n = x.vertex_count();
    let mut map = vec![0; n];
    fn go(x: &SimpleGraph, h: &SimpleGraph, v: usize, map: &mut Vec<usize>) -> bool {
        if v == map.len() {
            return true;
        }
        for c in 0..h.vertex_count() {
            if x.neighbors(v)
                .iter()
                .all(|&(u, _)| u >= v || h.has_edge(map[u], c))
            {
                map[v] = c;
                if go(x, h, v + 1, map) {
                    return true;
                }
            }
        }
        false
    }
    go(x, h, 0, &mut map).then_some(map)
}

/// The Petersen graph: outer 5-cycle 0..4, spokes `i - (i+5)`, inner
/// pentagram on 5..9.
pub fn petersen() -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    SimpleGraph::new(10, edges).expect("Petersen graph is simple")
}

/// A decomposition of the Petersen graph over a 5-cycle of bags of size 5:
/// bag `i` holds `i, i+1, i+5, (i+1)+5, (i+2)+5` (indices mod 5 within each ring).
pub fn petersen_decomposition() -> BagDecomposition {
    let bags = (0..5)
        .map(|i| vec![i, (i + 1) % 5, 5 + i, 5 + (i + 1) % 5, 5 + (i + 2) % 5])
        .collect();
    BagDecomposition::new(petersen(), SimpleGraph::cycle(5), bags, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codecomp::Verdict;

    fn k3() -> SimpleGraph {
        SimpleGraph::complete(3)
    }

    #[test]
    fn hom_set_sizes() {
        assert_eq!(hom_set(&SimpleGraph::empty(1), &[0], &k3()).len(), 3);
        assert_eq!(hom_set(&SimpleGraph::path(2), &[0, 1], &k3()).len(), 6);
        let tri = SimpleGraph::complete(3);
        // brute force over all 27 assignments
        let mut count = 0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if is_homomorphism(&tri, &k3(), &[a, b, c]) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 6);
        let hs = hom_set(&tri, &[0, 1, 2], &k3());
        assert_eq!(hs.len(), count);
        let mut sorted = hs.maps.clone();
        sorted.sort();
        assert_eq!(sorted, hs.maps);
    }

    #[test]
    fn path_decomposition_validates() {
        let x = SimpleGraph::path(4);
        let b = BagDecomposition::new(
            x,
            SimpleGraph::path(3),
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            None,
        );
        assert_eq!(b.validate(), Ok(()));
        assert_eq!(b.adhesions(), &[vec![1], vec![2]]);
    }

    #[test]
    fn missing_edge_is_reported() {
        let x = SimpleGraph::path(4);
        let b = BagDecomposition::new(
            x,
            SimpleGraph::path(3),
            vec![vec![0, 1], vec![1], vec![2, 3]],
            None,
        );
        assert_eq!(
            b.validate(),
            Err(vec![DecompViolation::UncoveredEdge { u: 1, v: 2 }])
        );
    }

    #[test]
    fn disconnected_occurrence_is_reported() {
        let x = SimpleGraph::empty(2);
        let b = BagDecomposition::new(
            x,
            SimpleGraph::path(3),
            vec![vec![0], vec![1], vec![0]],
            None,
        );
        assert_eq!(
            b.validate(),
            Err(vec![DecompViolation::Disconnected { vertex: 0 }])
        );
    }

    #[test]
    fn narrow_adhesion_is_reported() {
        let x = SimpleGraph::path(3);
        let b = BagDecomposition::new(
            x,
            SimpleGraph::path(2),
            vec![vec![0, 1], vec![1, 2]],
            Some(vec![vec![]]),
        );
        assert_eq!(
            b.validate(),
            Err(vec![DecompViolation::MissingFromAdhesion {
                edge: 0,
                vertex: 1
            }])
        );
    }

    #[test]
    fn single_edge_single_bag() {
        let b = BagDecomposition::new(
            SimpleGraph::path(2),
            SimpleGraph::empty(1),
            vec![vec![0, 1]],
            None,
        );
        let hd = build_hom_codecomp(&b, &k3()).unwrap();
        assert_eq!(hd.diagram.vertex_count(), 1);
        assert_eq!(hd.diagram.edge_count(), 0);
        assert_eq!(hd.diagram.vertex_set(0).size(), 6);
    }

    #[test]
    fn triangle_split_in_two_bags() {
        // X = triangle plus a pendant vertex so the second bag is distinct
        let x = SimpleGraph::new(4, vec![(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let b = BagDecomposition::new(
            x,
            SimpleGraph::path(2),
            vec![vec![0, 1, 2], vec![1, 2, 3]],
            None,
        );
        let hd = build_hom_codecomp(&b, &k3()).unwrap();
        assert_eq!(hd.bag_homs[0].len(), 6);
        assert_eq!(hd.adhesion_homs[0].vertices, vec![1, 2]);
        assert_eq!(hd.adhesion_homs[0].len(), 6);
        // restriction tables agree with direct restriction of the stored maps
        let leg = &hd.diagram.legs(0)[0];
        for (i, m) in hd.bag_homs[0].maps.iter().enumerate() {
            assert_eq!(hd.adhesion_homs[0].maps[leg.apply(i)], vec![m[1], m[2]]);
        }
        // the bijection 6 -> 6
        let mut hit = leg.image();
        hit.dedup();
        assert_eq!(hit, vec![true]);
    }

    #[test]
    fn k4_is_not_3_colorable() {
        let b = BagDecomposition::new(
            SimpleGraph::complete(4),
            SimpleGraph::empty(1),
            vec![vec![0, 1, 2, 3]],
            None,
        );
        let r = hom_exists(&b, &k3(), &SolveOptions::default()).unwrap();
        assert!(!r.exists);
        assert_eq!(r.solution.verdict, Verdict::EMPTY);
        assert_eq!(find_homomorphism(&SimpleGraph::complete(4), &k3()), None);
    }

    #[test]
    fn c5_is_3_colorable() {
        let b = BagDecomposition::new(
            SimpleGraph::cycle(5),
            SimpleGraph::path(3),
            vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4]],
            None,
        );
        assert_eq!(b.validate(), Ok(()));
        let opts = SolveOptions {
            witness: true,
            ..Default::default()
        };
        let r = hom_exists(&b, &k3(), &opts).unwrap();
        assert!(r.exists);
        assert!(is_homomorphism(
            &SimpleGraph::cycle(5),
            &k3(),
            &r.map.unwrap()
        ));
        // but not 2-colorable
        let r = hom_exists(&b, &SimpleGraph::complete(2), &opts).unwrap();
        assert!(!r.exists);
    }

    #[test]
    fn petersen_is_3_colorable() {
        let b = petersen_decomposition();
        assert_eq!(b.validate(), Ok(()));
        assert_eq!(b.max_bag(), 5);
        let opts = SolveOptions {
            witness: true,
            ..Default::default()
        };
        let r = hom_exists(&b, &k3(), &opts).unwrap();
        assert!(r.exists);
        assert_eq!(r.solution.fvs.size(), 1);
        assert!(is_homomorphism(&petersen(), &k3(), &r.map.unwrap()));
    }

    #[test]
    fn bag_hom_sets_respect_the_size_bound() {
        let b = petersen_decomposition();
        let hd = build_hom_codecomp(&b, &k3()).unwrap();
        for (bag, homs) in b.bags().iter().zip(&hd.bag_homs) {
            assert!(homs.len() <= 3usize.pow(bag.len() as u32));
        }
    }
}
