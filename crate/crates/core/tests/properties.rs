use proptest::prelude::*;

use inlim::codecomp::{filter_to_fixpoint, glue, restrict_to_subgraph, GlueSide};
use inlim::gen::{generate, SetSizes, ShapeKind};
use inlim::graph::is_feedback_vertex_set;
use inlim::oracle::{brute_image, enumerate_limit, DEFAULT_CAP};
use inlim::{fvs_exact, image_tree, inlim as solve, SimpleGraph, SolveOptions, VertexSet};

fn graph() -> impl Strategy<Value = SimpleGraph> {
    (1usize..=9).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.35), n * (n - 1) / 2).prop_map(
            move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let edges = pairs
                    .zip(bits)
                    .filter(|&(_, b)| b)
                    .map(|(p, _)| p)
                    .collect();
                SimpleGraph::new(n, edges).unwrap()
            },
        )
    })
}

fn smallest_fvs_by_subsets(g: &SimpleGraph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|bits| {
            let idx: Vec<usize> = (0..n).filter(|&v| bits >> v & 1 == 1).collect();
            is_feedback_vertex_set(g, &VertexSet::from_indices(n, &idx))
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

fn reachability(g: &SimpleGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut r = vec![vec![false; n]; n];
    for (v, row) in r.iter_mut().enumerate() {
        row[v] = true;
    }
    for &(u, v) in g.edges() {
        r[u][v] = true;
        r[v][u] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fvs_is_minimum(g in graph()) {
        let best = smallest_fvs_by_subsets(&g);
        let s = (0..=g.vertex_count()).find_map(|k| fvs_exact(&g, k)).unwrap();
        prop_assert_eq!(s.size(), best);
        prop_assert!(is_feedback_vertex_set(&g, &s));
        if best > 0 {
            prop_assert!(fvs_exact(&g, best - 1).is_none());
        }
    }

    #[test]
    fn cycles_exist_off_forests(g in graph()) {
        match g.find_cycle() {
            None => prop_assert!(g.is_forest()),
            Some(c) => {
                prop_assert!(!g.is_forest());
                prop_assert!(c.len() >= 3);
                for i in 0..c.len() {
                    prop_assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
        }
    }

    #[test]
    fn components_match_reachability(g in graph()) {
        let r = reachability(&g);
        let labels = g.component_labels();
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                prop_assert_eq!(labels[u] == labels[v], r[u][v]);
            }
        }
    }

    #[test]
    fn split_then_glue_rebuilds_the_tree(n in 2usize..9, w in 1usize..4, seed in any::<u64>(), pick in any::<usize>()) {
        let d = generate(ShapeKind::Tree, n, SetSizes::upto(w), seed);
        let e = pick % d.edge_count();
        let (x, y) = d.shape().endpoints(e);
        let mut cut = d.shape().edges().to_vec();
        cut.remove(e);
        let labels = SimpleGraph::new(n, cut).unwrap().component_labels();
        let side = |v: usize| VertexSet::from_mask((0..n).map(|u| labels[u] == labels[v]).collect());
        let m = d.full_mask();
        let l = restrict_to_subgraph(&d, &m, &side(x));
        let r = restrict_to_subgraph(&d, &m, &side(y));
        let (g, gm) = glue(
            GlueSide { diagram: &l.diagram, mask: &l.mask, vertex: l.map.vertex_map[x].unwrap(), boundary: d.leg(e, x) },
            GlueSide { diagram: &r.diagram, mask: &r.mask, vertex: r.map.vertex_map[y].unwrap(), boundary: d.leg(e, y) },
            d.edge_set(e).clone(),
        )
        .unwrap();
        prop_assert_eq!(gm, g.full_mask());
        let shift = l.diagram.vertex_count();
        let new_of: Vec<usize> = (0..n)
            .map(|v| l.map.vertex_map[v].unwrap_or_else(|| r.map.vertex_map[v].unwrap() + shift))
            .collect();
        for (v, &nv) in new_of.iter().enumerate() {
            prop_assert_eq!(g.vertex_set(nv), d.vertex_set(v));
        }
        prop_assert_eq!(g.edge_count(), d.edge_count());
        for f in 0..d.edge_count() {
            let (a, b) = d.shape().endpoints(f);
            let nf = g.shape().edge_between(new_of[a], new_of[b]).unwrap();
            prop_assert_eq!(g.edge_set(nf), d.edge_set(f));
            prop_assert_eq!(g.leg(nf, new_of[a]), d.leg(f, a));
            prop_assert_eq!(g.leg(nf, new_of[b]), d.leg(f, b));
        }
    }

    #[test]
    fn restriction_keeps_legs(n in 2usize..9, seed in any::<u64>(), keep in proptest::collection::vec(any::<bool>(), 9)) {
        let d = generate(ShapeKind::Random(0.4), n, SetSizes::upto(3), seed);
        let keep = VertexSet::from_mask(keep[..n].to_vec());
        let r = restrict_to_subgraph(&d, &d.full_mask(), &keep);
        prop_assert_eq!(r.diagram.vertex_count(), keep.size());
        for (nf, &f) in r.map.edges.iter().enumerate() {
            let (a, b) = d.shape().endpoints(f);
            prop_assert!(keep.contains(a) && keep.contains(b));
            prop_assert_eq!(r.diagram.legs(nf), d.legs(f));
            prop_assert_eq!(r.diagram.edge_set(nf), d.edge_set(f));
        }
        let expected = d.shape().edges().iter().filter(|&&(a, b)| keep.contains(a) && keep.contains(b)).count();
        prop_assert_eq!(r.diagram.edge_count(), expected);
    }

    #[test]
    fn tree_fixpoint_is_the_image(n in 1usize..8, w in 1usize..4, seed in any::<u64>()) {
        let d = generate(ShapeKind::Tree, n, SetSizes::upto(w), seed);
        let brute = brute_image(&d, DEFAULT_CAP).unwrap();
        prop_assert_eq!(&image_tree(&d, &d.full_mask()).unwrap(), &brute);
        let mut m = d.full_mask();
        let edges: Vec<usize> = (0..d.edge_count()).collect();
        filter_to_fixpoint(&d, &mut m, &edges).unwrap();
        let nonempty = (0..n).all(|v| !m.vertex_is_empty(v));
        if nonempty {
            prop_assert_eq!(&m, &brute);
        } else {
            prop_assert!((0..n).all(|v| brute.vertex_is_empty(v)));
        }
    }

    #[test]
    fn solver_agrees_with_enumeration(n in 1usize..8, w in 1usize..4, seed in any::<u64>()) {
        let d = generate(ShapeKind::Random(0.45), n, SetSizes::upto(w), seed);
        let sol = solve(&d, &SolveOptions::default()).unwrap();
        let families = enumerate_limit(&d, DEFAULT_CAP).unwrap();
        prop_assert_eq!(sol.verdict.empty_limit, families.is_empty());
    }
}
