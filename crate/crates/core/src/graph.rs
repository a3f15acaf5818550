//! Simple undirected graphs: the shapes that co-decompositions are indexed by.
//!
//! Besides connectivity and forest recognition this module carries the
//! bounded feedback-vertex-set search used to reduce arbitrary shapes to
//! forests.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::error::GraphError;

/// An irreflexive, symmetric finite graph with stable edge identifiers.
///
/// Edge `i` is `edges()[i]`; endpoints are stored in the order they were given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // adjacency[v] = (neighbour, edge id), sorted by neighbour
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: i,
                        vertex: w,
                        n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::Loop { edge: i, vertex: u });
            }
            let key = (u.min(v), u.max(v));
            if let Some(&first) = seen.get(&key) {
                return Err(GraphError::Duplicate {
                    edge: i,
                    first,
                    u,
                    v,
                });
            }
            seen.insert(key, i);
            adjacency[u].push((v, i));
            adjacency[v].push((u, i));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(SimpleGraph {
            n,
            edges,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, edges).expect("path edges are simple")
    }

    /// The cycle 0-1-...-(n-1)-0. Needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::new(n, edges).expect("cycle edges are simple")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(n, edges).expect("complete graph edges are simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    /// `(neighbour, edge id)` pairs, ascending by neighbour.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    /// Connected components, each listed in ascending vertex order; components
    /// are ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let labels = self.component_labels();
        let count = labels.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); count];
        for (v, &c) in labels.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Component index per vertex, numbered in order of smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_forest(&self) -> bool {
        // acyclic iff |E| = |V| - (#components)
        let components = self
            .component_labels()
            .into_iter()
            .max()
            .map_or(0, |c| c + 1);
        self.edges.len() + components == self.n
    }

    /// Some simple cycle, found by depth-first search from the lowest-index vertex.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        find_cycle_among(self, &vec![true; self.n])
    }

    /// Induced subgraph on the complement of `removed`.
    pub fn remove_vertices(&self, removed: &VertexSet) -> InducedSubgraph {
        let keep = removed.complement();
        self.induced(&keep)
    }

    /// Induced subgraph on the vertices in `keep`, preserving relative vertex
    /// and edge order.
    pub fn induced(&self, keep: &VertexSet) -> InducedSubgraph {
        assert_eq!(keep.len(), self.n, "vertex set length must match the graph");
        let mut vertex_map = vec![None; self.n];
        let mut vertices = Vec::new();
        for v in keep.iter() {
            vertex_map[v] = Some(vertices.len());
            vertices.push(v);
        }
        let mut edge_map = vec![None; self.edges.len()];
        let mut new_edges = Vec::new();
        let mut edges = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(nu), Some(nv)) = (vertex_map[u], vertex_map[v]) {
                edge_map[i] = Some(new_edges.len());
                new_edges.push((nu, nv));
                edges.push(i);
            }
        }
        let graph = SimpleGraph::new(vertices.len(), new_edges)
            .expect("induced subgraph of a simple graph is simple");
        InducedSubgraph {
            graph,
            vertex_map,
            edge_map,
            vertices,
            edges,
        }
    }
}

/// Result of taking an induced subgraph, with index maps in both directions.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: SimpleGraph,
    /// old vertex -> new vertex
    pub vertex_map: Vec<Option<usize>>,
    /// old edge -> new edge
    pub edge_map: Vec<Option<usize>>,
    /// new vertex -> old vertex
    pub vertices: Vec<usize>,
    /// new edge -> old edge
    pub edges: Vec<usize>,
}

/// A subset of the vertices of some graph, as a membership vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<bool>);

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet(vec![false; n])
    }

    pub fn full(n: usize) -> Self {
        VertexSet(vec![true; n])
    }

    /// Panics if an index is out of range.
    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut members = vec![false; n];
        for &i in indices {
            members[i] = true;
        }
        VertexSet(members)
    }

    pub fn from_mask(members: Vec<bool>) -> Self {
        VertexSet(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0[v]
    }

    pub fn insert(&mut self, v: usize) {
        self.0[v] = true;
    }

    pub fn remove(&mut self, v: usize) {
        self.0[v] = false;
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        VertexSet(self.0.iter().map(|b| !b).collect())
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

/// True when `s` is a feedback vertex set of `g`.
pub fn is_feedback_vertex_set(g: &SimpleGraph, s: &VertexSet) -> bool {
    s.len() == g.vertex_count() && g.remove_vertices(s).graph.is_forest()
}

/// A feedback vertex set of size at most `k_max`, if one exists.
///
/// Degree-0 and degree-1 vertices are peeled off first; the search then
/// branches on the vertices of one cycle in ascending order. The first
/// solution found is returned, so the output is deterministic but not
/// necessarily minimum.
pub fn fvs_exact(g: &SimpleGraph, k_max: usize) -> Option<VertexSet> {
    let mut alive = vec![true; g.vertex_count()];
    let mut chosen = Vec::new();
    if branch(g, &mut alive, k_max, &mut chosen) {
        Some(VertexSet::from_indices(g.vertex_count(), &chosen))
    } else {
        None
    }
}

/// Smallest-size feedback vertex set within the budget, by trying
/// `fvs_exact` with budgets 0, 1, ..., `k_max`.
pub fn fvs_minimum(g: &SimpleGraph, k_max: usize) -> Option<VertexSet> {
    (0..=k_max).find_map(|k| fvs_exact(g, k))
}

fn branch(g: &SimpleGraph, alive: &mut [bool], budget: usize, chosen: &mut Vec<usize>) -> bool {
    let peeled = peel_low_degree(g, alive);
    let found = match find_cycle_among(g, alive) {
        None => true,
        Some(_) if budget == 0 => false,
        Some(mut cycle) => {
            cycle.sort_unstable();
            let mut ok = false;
            for v in cycle {
                alive[v] = false;
                chosen.push(v);
                if branch(g, alive, budget - 1, chosen) {
                    ok = true;
                    break;
                }
                chosen.pop();
                alive[v] = true;
            }
            ok
        }
    };
    for v in peeled {
        alive[v] = true;
    }
    found
}

/// Removes (marks dead) alive vertices of alive-degree at most one until none
/// remain. Returns the removed vertices.
fn peel_low_degree(g: &SimpleGraph, alive: &mut [bool]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut degree = vec![0usize; n];
    for v in 0..n {
        if alive[v] {
            degree[v] = g.neighbors(v).iter().filter(|&&(w, _)| alive[w]).count();
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] <= 1).collect();
    let mut removed = Vec::new();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        removed.push(v);
        for &(w, _) in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    removed
}

/// Iterative DFS over the alive vertices; the first back edge closes a cycle.
fn find_cycle_among(g: &SimpleGraph, alive: &[bool]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut depth = vec![usize::MAX; n];
    let mut path: Vec<usize> = Vec::new();
    // (vertex, parent, next neighbour cursor)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if !alive[root] || depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        path.push(root);
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, cursor) = *top;
            let neighbors = g.neighbors(v);
            if cursor == neighbors.len() {
                stack.pop();
                path.pop();
                continue;
            }
            top.2 += 1;
            let w = neighbors[cursor].0;
            if !alive[w] || w == parent {
                continue;
            }
            if depth[w] == usize::MAX {
                depth[w] = path.len();
                path.push(w);
                stack.push((w, v, 0));
            } else if depth[w] < depth[v] {
                return Some(path[depth[w]..].to_vec());
            }
        }
    }
    None
}
