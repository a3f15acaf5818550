//! Graph-shaped diagrams of finite sets and their masked subdiagrams.
//!
//! A [`CoDecomposition`] assigns a finite set to every vertex and every edge
//! of its shape, plus one leg function from each endpoint's set into the
//! edge's set. Subdiagrams are never copied: a [`SubMask`] selects a subset
//! of every object, and the narrowing operations ([`filter_in_place`] in
//! particular) only ever clear mask bits.

use std::fmt;

use crate::error::{Error, GraphError, Result};
use crate::finset::{masked_image, FinFn, FinSetObj};
use crate::graph::{InducedSubgraph, SimpleGraph, VertexSet};

/// A diagram of finite sets over the barycentric subdivision of a simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoDecomposition {
    shape: SimpleGraph,
    vertex_sets: Vec<FinSetObj>,
    edge_sets: Vec<FinSetObj>,
    // legs[e] = [leg from first endpoint, leg from second endpoint]
    legs: Vec<[FinFn; 2]>,
}

/// One broken invariant of a diagram, mask or decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape(GraphError),
    VertexSetCount {
        expected: usize,
        found: usize,
    },
    EdgeSetCount {
        expected: usize,
        found: usize,
    },
    LegCount {
        expected: usize,
        found: usize,
    },
    MissingLeg {
        edge: usize,
        endpoint: usize,
    },
    DuplicateLeg {
        edge: usize,
        endpoint: usize,
    },
    LegNotIncident {
        edge: usize,
        endpoint: usize,
    },
    LegSource {
        edge: usize,
        endpoint: usize,
        expected: usize,
        found: usize,
    },
    LegTarget {
        edge: usize,
        endpoint: usize,
        expected: usize,
        found: usize,
    },
    LegEntry {
        edge: usize,
        endpoint: usize,
        index: usize,
        value: usize,
        target_size: usize,
    },
    MaskLength {
        object: ObjectRef,
        expected: usize,
        found: usize,
    },
    LegClosure {
        edge: usize,
        endpoint: usize,
        element: usize,
    },
    Other(String),
}

/// A vertex or edge of the shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectRef {
    Vertex(usize),
    Edge(usize),
}

impl fmt::Display for ObjectRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectRef::Vertex(v) => write!(f, "vertex {v}"),
            ObjectRef::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            Shape(e) => write!(f, "shape: {e}"),
            VertexSetCount { expected, found } => {
                write!(f, "expected {expected} vertex sets, found {found}")
            }
            EdgeSetCount { expected, found } => write!(f, "expected {expected} edge sets, found {found}"),
            LegCount { expected, found } => write!(f, "expected {expected} legs, found {found}"),
            MissingLeg { edge, endpoint } => write!(f, "edge {edge}: missing leg from vertex {endpoint}"),
            DuplicateLeg { edge, endpoint } => write!(f, "edge {edge}: duplicate leg from vertex {endpoint}"),
            LegNotIncident { edge, endpoint } => {
                write!(f, "edge {edge}: vertex {endpoint} is not an endpoint")
            }
            LegSource { edge, endpoint, expected, found } => write!(
                f,
                "edge {edge}, leg from vertex {endpoint}: source size {found}, vertex set has {expected}"
            ),
            LegTarget { edge, endpoint, expected, found } => write!(
                f,
                "edge {edge}, leg from vertex {endpoint}: target size {found}, edge set has {expected}"
            ),
            LegEntry { edge, endpoint, index, value, target_size } => write!(
                f,
                "edge {edge}, leg from vertex {endpoint}: element {index} maps to {value}, outside 0..{target_size}"
            ),
            MaskLength { object, expected, found } => {
                write!(f, "{object}: mask length {found}, object has {expected} elements")
            }
            LegClosure { edge, endpoint, element } => write!(
                f,
                "edge {edge}: element {element} of vertex {endpoint} is kept but its leg value is masked out"
            ),
            Other(msg) => f.write_str(msg),
        }
    }
}

impl CoDecomposition {
    /// Builds and validates a diagram. `legs[e]` holds the legs from
    /// `shape.endpoints(e).0` and `.1`, in that order.
    pub fn new(
        shape: SimpleGraph,
        vertex_sets: Vec<FinSetObj>,
        edge_sets: Vec<FinSetObj>,
        legs: Vec<[FinFn; 2]>,
    ) -> Result<Self> {
        let d = Self::new_unchecked(shape, vertex_sets, edge_sets, legs);
        d.validate().map_err(Error::Invalid)?;
        Ok(d)
    }

    pub fn new_unchecked(
        shape: SimpleGraph,
        vertex_sets: Vec<FinSetObj>,
        edge_sets: Vec<FinSetObj>,
        legs: Vec<[FinFn; 2]>,
    ) -> Self {
        CoDecomposition {
            shape,
            vertex_sets,
            edge_sets,
            legs,
        }
    }

    /// Diagram on an edgeless shape with the given vertex sets.
    pub fn discrete(vertex_sets: Vec<FinSetObj>) -> Self {
        CoDecomposition {
            shape: SimpleGraph::empty(vertex_sets.len()),
            vertex_sets,
            edge_sets: Vec::new(),
            legs: Vec::new(),
        }
    }

    /// Checks set counts, leg sizes and leg totality; reports every violation.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        let n = self.shape.vertex_count();
        let m = self.shape.edge_count();
        if self.vertex_sets.len() != n {
            out.push(Violation::VertexSetCount {
                expected: n,
                found: self.vertex_sets.len(),
            });
        }
        if self.edge_sets.len() != m {
            out.push(Violation::EdgeSetCount {
                expected: m,
                found: self.edge_sets.len(),
            });
        }
        if self.legs.len() != m {
            out.push(Violation::LegCount {
                expected: m,
                found: self.legs.len(),
            });
        }
        if !out.is_empty() {
            return Err(out);
        }
        for (e, pair) in self.legs.iter().enumerate() {
            let (x, y) = self.shape.endpoints(e);
            let target = self.edge_sets[e].size();
            for (endpoint, leg) in [(x, &pair[0]), (y, &pair[1])] {
                let source = self.vertex_sets[endpoint].size();
                if leg.source_size() != source {
                    out.push(Violation::LegSource {
                        edge: e,
                        endpoint,
                        expected: source,
                        found: leg.source_size(),
                    });
                }
                if leg.target_size() != target {
                    out.push(Violation::LegTarget {
                        edge: e,
                        endpoint,
                        expected: target,
                        found: leg.target_size(),
                    });
                }
                for (index, &value) in leg.table().iter().enumerate() {
                    if value >= target {
                        out.push(Violation::LegEntry {
                            edge: e,
                            endpoint,
                            index,
                            value,
                            target_size: target,
                        });
                    }
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn shape(&self) -> &SimpleGraph {
        &self.shape
    }

    pub fn vertex_count(&self) -> usize {
        self.shape.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.shape.edge_count()
    }

    pub fn vertex_set(&self, v: usize) -> &FinSetObj {
        &self.vertex_sets[v]
    }

    pub fn edge_set(&self, e: usize) -> &FinSetObj {
        &self.edge_sets[e]
    }

    pub fn vertex_sets(&self) -> &[FinSetObj] {
        &self.vertex_sets
    }

    pub fn edge_sets(&self) -> &[FinSetObj] {
        &self.edge_sets
    }

    /// Both legs of edge `e`, first endpoint first.
    pub fn legs(&self, e: usize) -> &[FinFn; 2] {
        &self.legs[e]
    }

    /// The leg `d(e) <- d(x)`. Panics if `x` is not an endpoint of `e`.
    pub fn leg(&self, e: usize, x: usize) -> &FinFn {
        let (a, b) = self.shape.endpoints(e);
        if x == a {
            &self.legs[e][0]
        } else if x == b {
            &self.legs[e][1]
        } else {
            panic!("vertex {x} is not an endpoint of edge {e}")
        }
    }

    /// Largest vertex set size (the `w` of the running-time bounds).
    pub fn width(&self) -> usize {
        self.vertex_sets
            .iter()
            .map(FinSetObj::size)
            .max()
            .unwrap_or(0)
    }

    pub fn full_mask(&self) -> SubMask {
        SubMask::full(self)
    }
}

/// Per-object membership vectors selecting a subdiagram.
///
/// All vertex masks share one buffer (likewise edge masks), so cloning a
/// mask is two allocations regardless of the diagram size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubMask {
    vertex: FlatMasks,
    edge: FlatMasks,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct FlatMasks {
    bits: Vec<bool>,
    offsets: Vec<usize>,
}

impl FlatMasks {
    fn filled(sizes: impl Iterator<Item = usize>, value: bool) -> Self {
        let mut offsets = vec![0];
        for s in sizes {
            offsets.push(offsets.last().unwrap() + s);
        }
        FlatMasks {
            bits: vec![value; *offsets.last().unwrap()],
            offsets,
        }
    }

    fn from_nested(nested: &[Vec<bool>]) -> Self {
        let mut offsets = Vec::with_capacity(nested.len() + 1);
        offsets.push(0);
        let mut bits = Vec::new();
        for m in nested {
            bits.extend_from_slice(m);
            offsets.push(bits.len());
        }
        FlatMasks { bits, offsets }
    }

    fn count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    fn get(&self, i: usize) -> &[bool] {
        &self.bits[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    fn get_mut(&mut self, i: usize) -> &mut [bool] {
        &mut self.bits[self.offsets[i]..self.offsets[i + 1]]
    }

    fn select(&self, indices: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(indices.len() + 1);
        offsets.push(0);
        let mut bits = Vec::new();
        for &i in indices {
            bits.extend_from_slice(self.get(i));
            offsets.push(bits.len());
        }
        FlatMasks { bits, offsets }
    }

    fn to_nested(&self) -> Vec<Vec<bool>> {
        (0..self.count()).map(|i| self.get(i).to_vec()).collect()
    }

    fn clear(&mut self) {
        self.bits.iter_mut().for_each(|b| *b = false);
    }

    fn append(&mut self, other: &FlatMasks) {
        let base = self.bits.len();
        self.bits.extend_from_slice(&other.bits);
        self.offsets
            .extend(other.offsets[1..].iter().map(|o| o + base));
    }

    fn push(&mut self, mask: &[bool]) {
        self.bits.extend_from_slice(mask);
        self.offsets.push(self.bits.len());
    }
}

impl SubMask {
    pub fn full(d: &CoDecomposition) -> Self {
        SubMask {
            vertex: FlatMasks::filled(d.vertex_sets.iter().map(FinSetObj::size), true),
            edge: FlatMasks::filled(d.edge_sets.iter().map(FinSetObj::size), true),
        }
    }

    pub fn empty(d: &CoDecomposition) -> Self {
        SubMask {
            vertex: FlatMasks::filled(d.vertex_sets.iter().map(FinSetObj::size), false),
            edge: FlatMasks::filled(d.edge_sets.iter().map(FinSetObj::size), false),
        }
    }

    pub fn from_parts(vertex: Vec<Vec<bool>>, edge: Vec<Vec<bool>>) -> Self {
        SubMask {
            vertex: FlatMasks::from_nested(&vertex),
            edge: FlatMasks::from_nested(&edge),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex.count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge.count()
    }

    #[inline]
    pub fn vertex(&self, v: usize) -> &[bool] {
        self.vertex.get(v)
    }

    #[inline]
    pub fn edge(&self, e: usize) -> &[bool] {
        self.edge.get(e)
    }

    #[inline]
    pub fn vertex_mut(&mut self, v: usize) -> &mut [bool] {
        self.vertex.get_mut(v)
    }

    #[inline]
    pub fn edge_mut(&mut self, e: usize) -> &mut [bool] {
        self.edge.get_mut(e)
    }

    pub fn vertex_masks(&self) -> Vec<Vec<bool>> {
        self.vertex.to_nested()
    }

    pub fn edge_masks(&self) -> Vec<Vec<bool>> {
        self.edge.to_nested()
    }

    /// Indices kept at vertex `v`.
    pub fn vertex_members(&self, v: usize) -> Vec<usize> {
        members(self.vertex(v))
    }

    pub fn edge_members(&self, e: usize) -> Vec<usize> {
        members(self.edge(e))
    }

    pub fn vertex_is_empty(&self, v: usize) -> bool {
        !self.vertex(v).iter().any(|&b| b)
    }

    /// First vertex whose mask is all-false.
    pub fn first_empty_vertex(&self) -> Option<usize> {
        (0..self.vertex_count()).find(|&v| self.vertex_is_empty(v))
    }

    /// Clears every mask.
    pub fn clear(&mut self) {
        self.vertex.clear();
        self.edge.clear();
    }

    /// Pins vertex `v` to the single element `a` (or to nothing, if `a` was
    /// not kept).
    pub fn pin(&mut self, v: usize, a: usize) {
        for (i, bit) in self.vertex_mut(v).iter_mut().enumerate() {
            *bit = *bit && i == a;
        }
    }

    /// Pointwise `self ⊆ other`.
    pub fn is_subset_of(&self, other: &SubMask) -> bool {
        fn sub(a: &FlatMasks, b: &FlatMasks) -> bool {
            a.offsets == b.offsets && a.bits.iter().zip(&b.bits).all(|(&p, &q)| !p || q)
        }
        sub(&self.vertex, &other.vertex) && sub(&self.edge, &other.edge)
    }

    /// Checks mask lengths and that every kept element's leg value is kept.
    pub fn check(&self, d: &CoDecomposition) -> Result<(), Vec<Violation>> {
        if self.vertex_count() != d.vertex_count() || self.edge_count() != d.edge_count() {
            return Err(vec![Violation::Other(format!(
                "mask covers {} vertices and {} edges, diagram has {} and {}",
                self.vertex_count(),
                self.edge_count(),
                d.vertex_count(),
                d.edge_count()
            ))]);
        }
        let mut out = Vec::new();
        for (v, set) in d.vertex_sets.iter().enumerate() {
            let found = self.vertex(v).len();
            if found != set.size() {
                out.push(Violation::MaskLength {
                    object: ObjectRef::Vertex(v),
                    expected: set.size(),
                    found,
                });
            }
        }
        for (e, set) in d.edge_sets.iter().enumerate() {
            let found = self.edge(e).len();
            if found != set.size() {
                out.push(Violation::MaskLength {
                    object: ObjectRef::Edge(e),
                    expected: set.size(),
                    found,
                });
            }
        }
        if !out.is_empty() {
            return Err(out);
        }
        for e in 0..d.edge_count() {
            let (x, y) = d.shape.endpoints(e);
            let edge_mask = self.edge(e);
            for (endpoint, leg) in [(x, &d.legs[e][0]), (y, &d.legs[e][1])] {
                for (a, &keep) in self.vertex(endpoint).iter().enumerate() {
                    if keep && !edge_mask[leg.apply(a)] {
                        out.push(Violation::LegClosure {
                            edge: e,
                            endpoint,
                            element: a,
                        });
                    }
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Carries the mask over to an induced subdiagram.
    pub fn restrict(&self, map: &InducedSubgraph) -> SubMask {
        SubMask {
            vertex: self.vertex.select(&map.vertices),
            edge: self.edge.select(&map.edges),
        }
    }
}

fn members(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}

/// Answer to the emptiness question: `empty_limit` is true when no global
/// matching family exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub empty_limit: bool,
}

impl Verdict {
    pub const EMPTY: Verdict = Verdict { empty_limit: true };
    pub const NONEMPTY: Verdict = Verdict { empty_limit: false };

    pub fn is_empty(self) -> bool {
        self.empty_limit
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.empty_limit {
            "EMPTY"
        } else {
            "NONEMPTY"
        })
    }
}

/// What a filter step did to the masks it touched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterStatus {
    Unchanged,
    Narrowed,
    /// An endpoint mask (and hence the edge mask) became all-false.
    Emptied,
}

/// Filter along edge `e` on a fresh copy of `m`.
pub fn filter(d: &CoDecomposition, m: &SubMask, e: usize) -> Result<SubMask> {
    let mut out = m.clone();
    filter_in_place(d, &mut out, e)?;
    Ok(out)
}

/// Narrows both endpoint masks of `e = xy` to the elements having a partner
/// across `e`, and the edge mask to the common image. Runs in
/// `O(|d(x)| + |d(y)| + |d(e)|)`.
pub fn filter_in_place(d: &CoDecomposition, m: &mut SubMask, e: usize) -> Result<FilterStatus> {
    if e >= d.edge_count() {
        return Err(Error::InvalidEdge(e));
    }
    let (x, y) = d.shape.endpoints(e);
    let [leg_x, leg_y] = &d.legs[e];
    let hit_x = masked_image(leg_x, m.vertex(x));
    let hit_y = masked_image(leg_y, m.vertex(y));

    let mut changed = false;
    let mut nonempty_x = false;
    for (a, bit) in m.vertex_mut(x).iter_mut().enumerate() {
        if *bit {
            if hit_y[leg_x.apply(a)] {
                nonempty_x = true;
            } else {
                *bit = false;
                changed = true;
            }
        }
    }
    let mut nonempty_y = false;
    for (b, bit) in m.vertex_mut(y).iter_mut().enumerate() {
        if *bit {
            if hit_x[leg_y.apply(b)] {
                nonempty_y = true;
            } else {
                *bit = false;
                changed = true;
            }
        }
    }
    for (t, bit) in m.edge_mut(e).iter_mut().enumerate() {
        let keep = hit_x[t] && hit_y[t];
        if *bit != keep {
            changed = true;
        }
        *bit = keep;
    }
    Ok(if !(nonempty_x && nonempty_y) {
        FilterStatus::Emptied
    } else if changed {
        FilterStatus::Narrowed
    } else {
        FilterStatus::Unchanged
    })
}

/// Filters every edge in `edges` repeatedly until no mask changes.
pub fn filter_to_fixpoint(d: &CoDecomposition, m: &mut SubMask, edges: &[usize]) -> Result<()> {
    // `Emptied` repeats on an already-empty endpoint, so compare masks instead
    loop {
        let before = m.clone();
        for &e in edges {
            filter_in_place(d, m, e)?;
        }
        if *m == before {
            return Ok(());
        }
    }
}

/// One half of a [`glue`]: a masked diagram, the vertex the new edge attaches
/// to, and the boundary map from that vertex's set into the new edge set.
#[derive(Debug, Clone, Copy)]
pub struct GlueSide<'a> {
    pub diagram: &'a CoDecomposition,
    pub mask: &'a SubMask,
    pub vertex: usize,
    pub boundary: &'a FinFn,
}

/// Disjoint union of two masked diagrams joined by one fresh edge carrying
/// `edge_set`. Left vertices and edges keep their indices, right ones are
/// shifted past the left ones, and the new edge comes last.
pub fn glue(
    left: GlueSide<'_>,
    right: GlueSide<'_>,
    edge_set: FinSetObj,
) -> Result<(CoDecomposition, SubMask)> {
    for side in [&left, &right] {
        if side.vertex >= side.diagram.vertex_count() {
            return Err(Error::Parse(format!(
                "glue vertex {} is out of range",
                side.vertex
            )));
        }
        let source = side.diagram.vertex_set(side.vertex).size();
        if side.boundary.source_size() != source {
            return Err(Error::SizeMismatch {
                expected: source,
                found: side.boundary.source_size(),
            });
        }
        if side.boundary.target_size() != edge_set.size() {
            return Err(Error::SizeMismatch {
                expected: edge_set.size(),
                found: side.boundary.target_size(),
            });
        }
    }
    let (l, r) = (left.diagram, right.diagram);
    let shift = l.vertex_count();
    let mut edges: Vec<(usize, usize)> = l.shape.edges().to_vec();
    edges.extend(r.shape.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    edges.push((left.vertex, right.vertex + shift));
    let shape = SimpleGraph::new(shift + r.vertex_count(), edges)?;

    let vertex_sets = l
        .vertex_sets
        .iter()
        .chain(&r.vertex_sets)
        .cloned()
        .collect();
    let mut edge_sets: Vec<FinSetObj> = l.edge_sets.iter().chain(&r.edge_sets).cloned().collect();
    let full_edge = vec![true; edge_set.size()];
    edge_sets.push(edge_set);
    let mut legs: Vec<[FinFn; 2]> = l.legs.iter().chain(&r.legs).cloned().collect();
    legs.push([left.boundary.clone(), right.boundary.clone()]);

    let mut mask = left.mask.clone();
    mask.vertex.append(&right.mask.vertex);
    mask.edge.append(&right.mask.edge);
    mask.edge.push(&full_edge);

    let d = CoDecomposition::new(shape, vertex_sets, edge_sets, legs)?;
    Ok((d, mask))
}

/// A masked diagram restricted to an induced subgraph of its shape, with
/// the index maps back to the original.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub diagram: CoDecomposition,
    pub mask: SubMask,
    pub map: InducedSubgraph,
}

/// Keeps the vertices in `keep` and the edges with both endpoints kept.
pub fn restrict_to_subgraph(d: &CoDecomposition, m: &SubMask, keep: &VertexSet) -> Restriction {
    let map = d.shape.induced(keep);
    let diagram = restrict_diagram(d, &map);
    let mask = m.restrict(&map);
    Restriction { diagram, mask, map }
}

/// The diagram carried over to an induced subgraph described by `map`.
pub fn restrict_diagram(d: &CoDecomposition, map: &InducedSubgraph) -> CoDecomposition {
    CoDecomposition {
        shape: map.graph.clone(),
        vertex_sets: map
            .vertices
            .iter()
            .map(|&v| d.vertex_sets[v].clone())
            .collect(),
        edge_sets: map.edges.iter().map(|&e| d.edge_sets[e].clone()).collect(),
        legs: map.edges.iter().map(|&e| d.legs[e].clone()).collect(),
    }
}

/// Element inclusion of a materialized subdiagram into its base:
/// `vertex[v][i]` is the base index of new element `i` at vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inclusion {
    pub vertex: Vec<Vec<usize>>,
    pub edge: Vec<Vec<usize>>,
}

/// Materializes the masked subdiagram as a standalone diagram, re-indexing
/// elements densely in ascending base order. Labels of kept elements survive.
pub fn as_subdiagram(d: &CoDecomposition, m: &SubMask) -> Result<(CoDecomposition, Inclusion)> {
    m.check(d).map_err(Error::Invalid)?;
    let vertex_incl: Vec<Vec<usize>> = (0..d.vertex_count()).map(|v| m.vertex_members(v)).collect();
    let edge_incl: Vec<Vec<usize>> = (0..d.edge_count()).map(|e| m.edge_members(e)).collect();
    // base edge element -> new index
    let edge_index: Vec<Vec<usize>> = (0..d.edge_count())
        .map(|e| {
            let mut next = 0;
            m.edge(e)
                .iter()
                .map(|&keep| {
                    let i = next;
                    if keep {
                        next += 1;
                    }
                    i
                })
                .collect()
        })
        .collect();
    let vertex_sets = d
        .vertex_sets
        .iter()
        .enumerate()
        .map(|(v, s)| s.restrict(m.vertex(v)))
        .collect();
    let edge_sets: Vec<FinSetObj> = d
        .edge_sets
        .iter()
        .enumerate()
        .map(|(e, s)| s.restrict(m.edge(e)))
        .collect();
    let legs = (0..d.edge_count())
        .map(|e| {
            let (x, y) = d.shape.endpoints(e);
            let target = edge_sets[e].size();
            let sub_leg = |endpoint: usize, leg: &FinFn| {
                let table = vertex_incl[endpoint]
                    .iter()
                    .map(|&a| edge_index[e][leg.apply(a)])
                    .collect();
                FinFn::new_unchecked(table, target)
            };
            [sub_leg(x, &d.legs[e][0]), sub_leg(y, &d.legs[e][1])]
        })
        .collect();
    let sub = CoDecomposition::new(d.shape.clone(), vertex_sets, edge_sets, legs)?;
    Ok((
        sub,
        Inclusion {
            vertex: vertex_incl,
            edge: edge_incl,
        },
    ))
}
