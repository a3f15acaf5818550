//! Brute-force reference answers for small diagrams.
//!
//! Nothing here uses filtering or image sweeps; these are the independent
//! checks the fast paths are tested against.

use std::collections::VecDeque;

use crate::codecomp::{CoDecomposition, SubMask};
use crate::error::{Error, Result};
use crate::solver::Witness;

/// Default bound on the number of candidate tuples.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// `∏_t |d(t)|`, saturating.
pub fn tuple_count(d: &CoDecomposition) -> u64 {
    d.vertex_sets()
        .iter()
        .fold(1u64, |acc, s| acc.saturating_mul(s.size() as u64))
}

/// Every global matching family, in lexicographic order of the vertex tuple.
///
/// Candidates are enumerated vertex by vertex; an edge constraint is checked
/// as soon as both of its endpoints are assigned.
pub fn enumerate_limit(d: &CoDecomposition, cap: u64) -> Result<Vec<Witness>> {
    let total = tuple_count(d);
    if total > cap {
        return Err(Error::CapExceeded(cap));
    }
    let n = d.vertex_count();
    let shape = d.shape();
    // edges checkable once vertex v is assigned: those whose later endpoint is v
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(x, y)) in shape.edges().iter().enumerate() {
        closing[x.max(y)].push(e);
    }
    let mut out = Vec::new();
    if total == 0 {
        return Ok(out);
    }
    let mut tuple = vec![0usize; n];
    extend(d, &closing, 0, &mut tuple, &mut out);
    Ok(out)
}

fn extend(
    d: &CoDecomposition,
    closing: &[Vec<usize>],
    v: usize,
    tuple: &mut Vec<usize>,
    out: &mut Vec<Witness>,
) {
    if v == tuple.len() {
        out.push(Witness::from_vertices(d, tuple.clone()));
        return;
    }
    'choices: for a in 0..d.vertex_set(v).size() {
        tuple[v] = a;
        for &e in &closing[v] {
            let (x, y) = d.shape().endpoints(e);
            let [lx, ly] = d.legs(e);
            if lx.apply(tuple[x]) != ly.apply(tuple[y]) {
                continue 'choices;
            }
        }
        extend(d, closing, v + 1, tuple, out);
    }
}

/// The image diagram by projecting every matching family onto each object.
pub fn brute_image(d: &CoDecomposition, cap: u64) -> Result<SubMask> {
    let families = enumerate_limit(d, cap)?;
    let mut m = SubMask::empty(d);
    for w in &families {
        for (v, &a) in w.vertex.iter().enumerate() {
            m.vertex_mut(v)[a] = true;
        }
        for (e, &a) in w.edge.iter().enumerate() {
            m.edge_mut(e)[a] = true;
        }
    }
    Ok(m)
}

/// Cardinality of the limit of a tree-shaped diagram, by folding pullbacks
/// outward from vertex 0. Each step pairs every partial family with every
/// element of the next bag, so intermediate relations may grow
/// multiplicatively; `cap` bounds them.
pub fn pullback_limit(d: &CoDecomposition, cap: u64) -> Result<u64> {
    let shape = d.shape();
    let n = shape.vertex_count();
    if n == 0 {
        return Ok(1);
    }
    if !shape.is_forest() || shape.edge_count() + 1 != n {
        return Err(Error::NotATree);
    }
    // breadth-first attachment order: (vertex, parent, edge)
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut steps = Vec::with_capacity(n - 1);
    let mut queue = VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        for &(c, e) in shape.neighbors(p) {
            if !seen[c] {
                seen[c] = true;
                steps.push((c, p, e));
                queue.push_back(c);
            }
        }
    }
    // partial families as full-length tuples; unassigned slots unused
    let mut relation: Vec<Vec<usize>> = (0..d.vertex_set(0).size())
        .map(|a| {
            let mut t = vec![0; n];
            t[0] = a;
            t
        })
        .collect();
    if relation.len() as u64 > cap {
        return Err(Error::CapExceeded(cap));
    }
    for (c, p, e) in steps {
        let leg_p = d.leg(e, p);
        let leg_c = d.leg(e, c);
        let mut next = Vec::new();
        for t in &relation {
            for b in 0..d.vertex_set(c).size() {
                if leg_p.apply(t[p]) == leg_c.apply(b) {
                    let mut u = t.clone();
                    u[c] = b;
                    next.push(u);
                }
            }
        }
        if next.len() as u64 > cap {
            return Err(Error::CapExceeded(cap));
        }
        relation = next;
    }
    Ok(relation.len() as u64)
}
