//! JSON instance formats.
//!
//! Graphs are `{"n": 3, "edges": [[0, 1], [1, 2]]}`; edge ids are list
//! positions. Sets are `{"size": n}` or `{"elements": ["a", ...]}`.
//! Functions are `{"map": [t0, t1, ..]}` or, between labeled sets,
//! `{"map": {"a": "x", ..}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::codecomp::{CoDecomposition, Violation};
use crate::cset::{CSet, CSetCoDecomposition, FinCat, Morphism};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSetObj};
use crate::graph::SimpleGraph;
use crate::homfront::BagDecomposition;
use crate::solver::Witness;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetJson {
    Size { size: usize },
    Elements { elements: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapJson {
    Index(Vec<usize>),
    Labels(BTreeMap<String, String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FnJson {
    pub map: MapJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegJson {
    pub edge: usize,
    pub endpoint: usize,
    pub map: MapJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub shape: GraphJson,
    pub vertex_sets: Vec<SetJson>,
    pub edge_sets: Vec<SetJson>,
    pub legs: Vec<LegJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub id: usize,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinCatJson {
    pub objects: usize,
    pub morphisms: Vec<MorphismJson>,
    pub identities: Vec<usize>,
    /// `comp[g][f]`, `-1` when undefined.
    pub comp: Vec<Vec<i64>>,
}

/// The sets and legs of one C-object slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceJson {
    pub vertex_sets: Vec<SetJson>,
    pub edge_sets: Vec<SetJson>,
    pub legs: Vec<LegJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CSetDiagramJson {
    pub shape: GraphJson,
    /// One slice per C-object.
    pub objects: Vec<SliceJson>,
    /// `vertex_actions[v][f]` is the action of morphism `f` on vertex `v`'s C-set.
    pub vertex_actions: Vec<Vec<FnJson>>,
    pub edge_actions: Vec<Vec<FnJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    #[serde(rename = "X")]
    pub x: GraphJson,
    pub shape: GraphJson,
    pub bags: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adhesions: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub vertex: Vec<String>,
    pub edge: Vec<String>,
}

pub fn graph_from_json(g: &GraphJson) -> Result<SimpleGraph> {
    Ok(SimpleGraph::new(
        g.n,
        g.edges.iter().map(|&[u, v]| (u, v)).collect(),
    )?)
}

pub fn graph_to_json(g: &SimpleGraph) -> GraphJson {
    GraphJson {
        n: g.vertex_count(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    }
}

pub fn set_from_json(s: &SetJson) -> Result<FinSetObj> {
    match s {
        SetJson::Size { size } => Ok(FinSetObj::new(*size)),
        SetJson::Elements { elements } => FinSetObj::labeled(elements.iter().cloned()),
    }
}

pub fn set_to_json(s: &FinSetObj) -> SetJson {
    match s.labels() {
        Some(ls) => SetJson::Elements {
            elements: ls.to_vec(),
        },
        None => SetJson::Size { size: s.size() },
    }
}

/// Index tables are taken as given so that size errors surface as diagram
/// violations; label maps must be total on `source` and name elements of
/// `target`.
pub fn fn_from_json(m: &MapJson, source: &FinSetObj, target: &FinSetObj) -> Result<FinFn> {
    match m {
        MapJson::Index(table) => Ok(FinFn::new_unchecked(table.clone(), target.size())),
        MapJson::Labels(pairs) => {
            if source.labels().is_none() || target.labels().is_none() {
                return Err(Error::Parse("label-form map between unlabeled sets".into()));
            }
            let mut table = vec![usize::MAX; source.size()];
            for (a, b) in pairs {
                let i = source
                    .index_of(a)
                    .ok_or_else(|| Error::Parse(format!("unknown source element {a:?}")))?;
                let j = target
                    .index_of(b)
                    .ok_or_else(|| Error::Parse(format!("unknown target element {b:?}")))?;
                table[i] = j;
            }
            if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
                return Err(Error::Parse(format!(
                    "map is undefined on {:?}",
                    source.label(i)
                )));
            }
            Ok(FinFn::new_unchecked(table, target.size()))
        }
    }
}

/// Label form when both sets are labeled, index form otherwise.
pub fn fn_to_json(f: &FinFn, source: &FinSetObj, target: &FinSetObj) -> MapJson {
    match (source.labels(), target.labels()) {
        (Some(_), Some(_)) => MapJson::Labels(
            f.table()
                .iter()
                .enumerate()
                .map(|(i, &j)| (source.label(i), target.label(j)))
                .collect(),
        ),
        _ => MapJson::Index(f.table().to_vec()),
    }
}

/// Places each leg record into its `[first endpoint, second endpoint]` slot,
/// reporting missing, duplicate and non-incident legs.
fn arrange_legs<'a>(shape: &SimpleGraph, legs: &'a [LegJson]) -> Result<Vec<[&'a LegJson; 2]>> {
    let m = shape.edge_count();
    let mut slots: Vec<[Option<&LegJson>; 2]> = vec![[None, None]; m];
    let mut out = Vec::new();
    for leg in legs {
        if leg.edge >= m {
            out.push(Violation::Other(format!(
                "leg names edge {}, shape has {m} edges",
                leg.edge
            )));
            continue;
        }
        let (x, y) = shape.endpoints(leg.edge);
        let side = if leg.endpoint == x {
            0
        } else if leg.endpoint == y {
            1
        } else {
            out.push(Violation::LegNotIncident {
                edge: leg.edge,
                endpoint: leg.endpoint,
            });
            continue;
        };
        if slots[leg.edge][side].is_some() {
            out.push(Violation::DuplicateLeg {
                edge: leg.edge,
                endpoint: leg.endpoint,
            });
        } else {
            slots[leg.edge][side] = Some(leg);
        }
    }
    for (e, pair) in slots.iter().enumerate() {
        let (x, y) = shape.endpoints(e);
        for (slot, endpoint) in pair.iter().zip([x, y]) {
            if slot.is_none() {
                out.push(Violation::MissingLeg { edge: e, endpoint });
            }
        }
    }
    if !out.is_empty() {
        return Err(Error::Invalid(out));
    }
    Ok(slots
        .into_iter()
        .map(|[a, b]| [a.unwrap(), b.unwrap()])
        .collect())
}

type SliceParts = (Vec<FinSetObj>, Vec<FinSetObj>, Vec<[FinFn; 2]>);

fn slice_parts(
    shape: &SimpleGraph,
    vertex_sets: &[SetJson],
    edge_sets: &[SetJson],
    legs: &[LegJson],
) -> Result<SliceParts> {
    let vs: Vec<FinSetObj> = vertex_sets
        .iter()
        .map(set_from_json)
        .collect::<Result<_>>()?;
    let es: Vec<FinSetObj> = edge_sets.iter().map(set_from_json).collect::<Result<_>>()?;
    let mut counts = Vec::new();
    if vs.len() != shape.vertex_count() {
        counts.push(Violation::VertexSetCount {
            expected: shape.vertex_count(),
            found: vs.len(),
        });
    }
    if es.len() != shape.edge_count() {
        counts.push(Violation::EdgeSetCount {
            expected: shape.edge_count(),
            found: es.len(),
        });
    }
    if !counts.is_empty() {
        return Err(Error::Invalid(counts));
    }
    let arranged = arrange_legs(shape, legs)?;
    let legs = arranged
        .iter()
        .enumerate()
        .map(|(e, [l0, l1])| {
            let (x, y) = shape.endpoints(e);
            Ok([
                fn_from_json(&l0.map, &vs[x], &es[e])?,
                fn_from_json(&l1.map, &vs[y], &es[e])?,
            ])
        })
        .collect::<Result<_>>()?;
    Ok((vs, es, legs))
}

pub fn diagram_from_json(j: &DiagramJson) -> Result<CoDecomposition> {
    let shape = graph_from_json(&j.shape)?;
    let (vs, es, legs) = slice_parts(&shape, &j.vertex_sets, &j.edge_sets, &j.legs)?;
    CoDecomposition::new(shape, vs, es, legs)
}

pub fn diagram_to_json(d: &CoDecomposition) -> DiagramJson {
    let shape = d.shape();
    let mut legs = Vec::with_capacity(2 * d.edge_count());
    for e in 0..d.edge_count() {
        let (x, y) = shape.endpoints(e);
        for (endpoint, leg) in [x, y].into_iter().zip(d.legs(e)) {
            legs.push(LegJson {
                edge: e,
                endpoint,
                map: fn_to_json(leg, d.vertex_set(endpoint), d.edge_set(e)),
            });
        }
    }
    DiagramJson {
        shape: graph_to_json(shape),
        vertex_sets: d.vertex_sets().iter().map(set_to_json).collect(),
        edge_sets: d.edge_sets().iter().map(set_to_json).collect(),
        legs,
    }
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    graph_from_json(&serde_json::from_str(text)?)
}

pub fn parse_diagram(text: &str) -> Result<CoDecomposition> {
    diagram_from_json(&serde_json::from_str(text)?)
}

pub fn write_diagram(d: &CoDecomposition) -> String {
    serde_json::to_string_pretty(&diagram_to_json(d)).expect("diagram JSON serializes")
}

pub fn fincat_from_json(j: &FinCatJson) -> Result<FinCat> {
    let mut morphisms = vec![None; j.morphisms.len()];
    for m in &j.morphisms {
        match morphisms.get_mut(m.id) {
            Some(slot @ None) => {
                *slot = Some(Morphism {
                    src: m.src,
                    tgt: m.tgt,
                })
            }
            Some(Some(_)) => {
                return Err(Error::Parse(format!("morphism id {} appears twice", m.id)))
            }
            None => {
                return Err(Error::Parse(format!(
                    "morphism id {} is out of range",
                    m.id
                )))
            }
        }
    }
    let morphisms = morphisms.into_iter().map(Option::unwrap).collect();
    let comp = j
        .comp
        .iter()
        .map(|row| {
            row.iter()
                .map(|&c| match c {
                    -1 => Ok(None),
                    c if c >= 0 => Ok(Some(c as usize)),
                    c => Err(Error::Parse(format!(
                        "composition entry {c} is neither -1 nor a morphism id"
                    ))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    FinCat::new(j.objects, morphisms, j.identities.clone(), comp)
}

pub fn fincat_to_json(c: &FinCat) -> FinCatJson {
    FinCatJson {
        objects: c.object_count(),
        morphisms: c
            .morphisms()
            .iter()
            .enumerate()
            .map(|(id, m)| MorphismJson {
                id,
                src: m.src,
                tgt: m.tgt,
            })
            .collect(),
        identities: c.identities().to_vec(),
        comp: c
            .comp_table()
            .iter()
            .map(|row| row.iter().map(|c| c.map_or(-1, |x| x as i64)).collect())
            .collect(),
    }
}

pub fn parse_fincat(text: &str) -> Result<FinCat> {
    fincat_from_json(&serde_json::from_str(text)?)
}

pub fn cset_diagram_from_json(cat: FinCat, j: &CSetDiagramJson) -> Result<CSetCoDecomposition> {
    let shape = graph_from_json(&j.shape)?;
    if j.objects.len() != cat.object_count() {
        return Err(Error::Parse(format!(
            "{} object slices for a category with {} objects",
            j.objects.len(),
            cat.object_count()
        )));
    }
    if j.vertex_actions.len() != shape.vertex_count() || j.edge_actions.len() != shape.edge_count()
    {
        return Err(Error::Parse("action lists do not match the shape".into()));
    }
    let slices = j
        .objects
        .iter()
        .map(|s| slice_parts(&shape, &s.vertex_sets, &s.edge_sets, &s.legs))
        .collect::<Result<Vec<_>>>()?;
    let cset = |sets: Vec<FinSetObj>, actions: &[FnJson]| -> Result<CSet> {
        if actions.len() != cat.morphism_count() {
            return Err(Error::Parse(format!(
                "{} actions for {} morphisms",
                actions.len(),
                cat.morphism_count()
            )));
        }
        let actions = actions
            .iter()
            .zip(cat.morphisms())
            .map(|(a, m)| fn_from_json(&a.map, &sets[m.src], &sets[m.tgt]))
            .collect::<Result<_>>()?;
        Ok(CSet { sets, actions })
    };
    let vertex = (0..shape.vertex_count())
        .map(|v| {
            cset(
                slices.iter().map(|s| s.0[v].clone()).collect(),
                &j.vertex_actions[v],
            )
        })
        .collect::<Result<_>>()?;
    let edge = (0..shape.edge_count())
        .map(|e| {
            cset(
                slices.iter().map(|s| s.1[e].clone()).collect(),
                &j.edge_actions[e],
            )
        })
        .collect::<Result<_>>()?;
    let legs = (0..shape.edge_count())
        .map(|e| {
            [
                slices.iter().map(|s| s.2[e][0].clone()).collect(),
                slices.iter().map(|s| s.2[e][1].clone()).collect(),
            ]
        })
        .collect();
    CSetCoDecomposition::new(cat, shape, vertex, edge, legs)
}

pub fn cset_diagram_to_json(d: &CSetCoDecomposition) -> CSetDiagramJson {
    let cat = d.category();
    let shape = d.shape();
    let objects = (0..cat.object_count())
        .map(|c| {
            let slice = diagram_to_json(&d.pointwise_slice(c));
            SliceJson {
                vertex_sets: slice.vertex_sets,
                edge_sets: slice.edge_sets,
                legs: slice.legs,
            }
        })
        .collect();
    let actions = |x: &CSet| -> Vec<FnJson> {
        x.actions
            .iter()
            .zip(cat.morphisms())
            .map(|(f, m)| FnJson {
                map: fn_to_json(f, &x.sets[m.src], &x.sets[m.tgt]),
            })
            .collect()
    };
    CSetDiagramJson {
        shape: graph_to_json(shape),
        objects,
        vertex_actions: (0..shape.vertex_count())
            .map(|v| actions(d.vertex_cset(v)))
            .collect(),
        edge_actions: (0..shape.edge_count())
            .map(|e| actions(d.edge_cset(e)))
            .collect(),
    }
}

pub fn parse_cset_diagram(cat: FinCat, text: &str) -> Result<CSetCoDecomposition> {
    cset_diagram_from_json(cat, &serde_json::from_str(text)?)
}

pub fn decomposition_from_json(j: &DecompositionJson) -> Result<BagDecomposition> {
    let b = BagDecomposition::new(
        graph_from_json(&j.x)?,
        graph_from_json(&j.shape)?,
        j.bags.clone(),
        j.adhesions.clone(),
    );
    b.validate().map_err(Error::Decomposition)?;
    Ok(b)
}

pub fn decomposition_to_json(b: &BagDecomposition) -> DecompositionJson {
    DecompositionJson {
        x: graph_to_json(b.x()),
        shape: graph_to_json(b.shape()),
        bags: b.bags().to_vec(),
        adhesions: Some(b.adhesions().to_vec()),
    }
}

pub fn parse_decomposition(text: &str) -> Result<BagDecomposition> {
    decomposition_from_json(&serde_json::from_str(text)?)
}

pub fn witness_to_json(d: &CoDecomposition, w: &Witness) -> WitnessJson {
    let (vertex, edge) = w.labels(d);
    WitnessJson { vertex, edge }
}
