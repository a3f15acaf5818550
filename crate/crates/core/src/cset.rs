//! Diagrams valued in C-sets (functors from a finite category to finite sets).
//!
//! Limits of C-sets are computed objectwise, so emptiness of the limit
//! reduces to one plain [`CoDecomposition`] per object of `C`.

use std::fmt;

use crate::codecomp::{CoDecomposition, Verdict};
use crate::error::{Error, Result};
use crate::finset::{compose, FinFn, FinSetObj};
use crate::graph::{fvs_minimum, SimpleGraph};
use crate::solver::{inlim, Solution, SolveOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub src: usize,
    pub tgt: usize,
}

/// A finite category given by its full morphism list and composition table.
///
/// `comp[g][f]` is `g ∘ f` when `tgt(f) = src(g)` and `None` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: usize,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    comp: Vec<Vec<Option<usize>>>,
}

/// A failed category, functor or naturality law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatViolation {
    TableShape(String),
    MorphismRange {
        morphism: usize,
    },
    IdentityEndpoints {
        object: usize,
        morphism: usize,
    },
    /// `comp[g][f]` is defined exactly when the pair is composable.
    Definedness {
        g: usize,
        f: usize,
    },
    CompositeEndpoints {
        g: usize,
        f: usize,
        composite: usize,
    },
    LeftIdentity {
        f: usize,
    },
    RightIdentity {
        f: usize,
    },
    /// `(h ∘ g) ∘ f ≠ h ∘ (g ∘ f)`.
    Associativity {
        h: usize,
        g: usize,
        f: usize,
    },
    ActionShape {
        object: String,
        morphism: usize,
        detail: String,
    },
    IdentityAction {
        object: String,
        morphism: usize,
    },
    Functoriality {
        object: String,
        g: usize,
        f: usize,
    },
    LegShape {
        edge: usize,
        endpoint: usize,
        c: usize,
        detail: String,
    },
    /// `leg_{tgt f} ∘ X(f) ≠ Y(f) ∘ leg_{src f}`.
    Naturality {
        edge: usize,
        endpoint: usize,
        morphism: usize,
    },
}

impl fmt::Display for CatViolation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CatViolation::*;
        match self {
            TableShape(s) => write!(fm, "table shape: {s}"),
            MorphismRange { morphism } => write!(fm, "morphism {morphism} has an endpoint out of range"),
            IdentityEndpoints { object, morphism } => {
                write!(fm, "identity {morphism} of object {object} is not an endomorphism of it")
            }
            Definedness { g, f } => write!(fm, "comp[{g}][{f}] definedness disagrees with composability"),
            CompositeEndpoints { g, f, composite } => {
                write!(fm, "comp[{g}][{f}] = {composite} has the wrong source or target")
            }
            LeftIdentity { f } => write!(fm, "id ∘ {f} ≠ {f}"),
            RightIdentity { f } => write!(fm, "{f} ∘ id ≠ {f}"),
            Associativity { h, g, f } => write!(fm, "associativity fails on ({h}, {g}, {f})"),
            ActionShape { object, morphism, detail } => {
                write!(fm, "{object}: action of morphism {morphism}: {detail}")
            }
            IdentityAction { object, morphism } => {
                write!(fm, "{object}: identity {morphism} does not act as the identity")
            }
            Functoriality { object, g, f } => write!(fm, "{object}: action of {g} ∘ {f} is not the composite action"),
            LegShape { edge, endpoint, c, detail } => {
                write!(fm, "edge {edge}, leg from vertex {endpoint}, object {c}: {detail}")
            }
            Naturality { edge, endpoint, morphism } => write!(
                fm,
                "edge {edge}, leg from vertex {endpoint}: naturality square of morphism {morphism} does not commute"
            ),
        }
    }
}

impl FinCat {
    pub fn new(
        objects: usize,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        comp: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(objects, morphisms, identities, comp);
        c.validate().map_err(Error::Category)?;
        Ok(c)
    }

    pub fn new_unchecked(
        objects: usize,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        comp: Vec<Vec<Option<usize>>>,
    ) -> Self {
        FinCat {
            objects,
            morphisms,
            identities,
            comp,
        }
    }

    /// One object, one morphism.
    pub fn terminal() -> Self {
        FinCat {
            objects: 1,
            morphisms: vec![Morphism { src: 0, tgt: 0 }],
            identities: vec![0],
            comp: vec![vec![Some(0)]],
        }
    }

    /// `0 → 1`: identities 0 and 1, arrow 2.
    pub fn walking_arrow() -> Self {
        FinCat {
            objects: 2,
            morphisms: vec![
                Morphism { src: 0, tgt: 0 },
                Morphism { src: 1, tgt: 1 },
                Morphism { src: 0, tgt: 1 },
            ],
            identities: vec![0, 1],
            comp: vec![
                vec![Some(0), None, None],
                vec![None, Some(1), Some(2)],
                vec![Some(2), None, None],
            ],
        }
    }

    /// `n` objects and only identities.
    pub fn discrete(n: usize) -> Self {
        FinCat {
            objects: n,
            morphisms: (0..n).map(|i| Morphism { src: i, tgt: i }).collect(),
            identities: (0..n).collect(),
            comp: (0..n)
                .map(|g| (0..n).map(|f| (f == g).then_some(g)).collect())
                .collect(),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> Morphism {
        self.morphisms[f]
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    /// `g ∘ f`, when composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g][f]
    }

    pub fn comp_table(&self) -> &[Vec<Option<usize>>] {
        &self.comp
    }

    /// Checks identities, composability, endpoints and associativity on
    /// every pair and triple.
    pub fn validate(&self) -> Result<(), Vec<CatViolation>> {
        validate_fincat(self)
    }
}

/// Exhaustive check of the category laws.
pub fn validate_fincat(c: &FinCat) -> Result<(), Vec<CatViolation>> {
    let mut out = Vec::new();
    let m = c.morphisms.len();
    if c.identities.len() != c.objects {
        out.push(CatViolation::TableShape(format!(
            "{} identities for {} objects",
            c.identities.len(),
            c.objects
        )));
    }
    if c.comp.len() != m || c.comp.iter().any(|row| row.len() != m) {
        out.push(CatViolation::TableShape(format!(
            "composition table must be {m}×{m}"
        )));
    }
    for (i, f) in c.morphisms.iter().enumerate() {
        if f.src >= c.objects || f.tgt >= c.objects {
            out.push(CatViolation::MorphismRange { morphism: i });
        }
    }
    if c.identities.iter().any(|&i| i >= m) || c.comp.iter().flatten().flatten().any(|&h| h >= m) {
        out.push(CatViolation::TableShape(
            "morphism index out of range".into(),
        ));
    }
    if !out.is_empty() {
        return Err(out);
    }
    for (object, &id) in c.identities.iter().enumerate() {
        let f = c.morphisms[id];
        if f.src != object || f.tgt != object {
            out.push(CatViolation::IdentityEndpoints {
                object,
                morphism: id,
            });
        }
    }
    for g in 0..m {
        for f in 0..m {
            let composable = c.morphisms[f].tgt == c.morphisms[g].src;
            match c.comp[g][f] {
                Some(h) if composable => {
                    let hm = c.morphisms[h];
                    if hm.src != c.morphisms[f].src || hm.tgt != c.morphisms[g].tgt {
                        out.push(CatViolation::CompositeEndpoints { g, f, composite: h });
                    }
                }
                None if !composable => {}
                _ => out.push(CatViolation::Definedness { g, f }),
            }
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    for f in 0..m {
        let Morphism { src, tgt } = c.morphisms[f];
        if c.comp[c.identities[tgt]][f] != Some(f) {
            out.push(CatViolation::LeftIdentity { f });
        }
        if c.comp[f][c.identities[src]] != Some(f) {
            out.push(CatViolation::RightIdentity { f });
        }
    }
    for f in 0..m {
        for g in 0..m {
            let Some(gf) = c.comp[g][f] else { continue };
            for h in 0..m {
                let Some(hg) = c.comp[h][g] else { continue };
                if c.comp[hg][f] != c.comp[h][gf] {
                    out.push(CatViolation::Associativity { h, g, f });
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

/// A functor `C → FinSet`: one set per object, one function per morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSet {
    pub sets: Vec<FinSetObj>,
    pub actions: Vec<FinFn>,
}

impl CSet {
    /// Total size `Σ_c |X(c)|`.
    pub fn total_size(&self) -> usize {
        self.sets.iter().map(FinSetObj::size).sum()
    }

    /// Checks sizes, identity actions and functoriality; `name` prefixes the
    /// reported violations.
    pub fn validate(&self, cat: &FinCat, name: &str) -> Vec<CatViolation> {
        let mut out = Vec::new();
        if self.sets.len() != cat.objects || self.actions.len() != cat.morphisms.len() {
            out.push(CatViolation::ActionShape {
                object: name.to_string(),
                morphism: 0,
                detail: format!(
                    "{} sets and {} actions for {} objects and {} morphisms",
                    self.sets.len(),
                    self.actions.len(),
                    cat.objects,
                    cat.morphisms.len()
                ),
            });
            return out;
        }
        for (i, (f, act)) in cat.morphisms.iter().zip(&self.actions).enumerate() {
            let (s, t) = (self.sets[f.src].size(), self.sets[f.tgt].size());
            if act.source_size() != s || act.target_size() != t || !act.is_total() {
                out.push(CatViolation::ActionShape {
                    object: name.to_string(),
                    morphism: i,
                    detail: format!("expected a total function {s} -> {t}"),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (object, &id) in cat.identities.iter().enumerate() {
            if self.actions[id] != FinFn::identity(self.sets[object].size()) {
                out.push(CatViolation::IdentityAction {
                    object: name.to_string(),
                    morphism: id,
                });
            }
        }
        for g in 0..cat.morphisms.len() {
            for f in 0..cat.morphisms.len() {
                if let Some(gf) = cat.comp[g][f] {
                    let composite =
                        compose(&self.actions[f], &self.actions[g]).expect("sizes checked above");
                    if composite != self.actions[gf] {
                        out.push(CatViolation::Functoriality {
                            object: name.to_string(),
                            g,
                            f,
                        });
                    }
                }
            }
        }
        out
    }
}

/// A graph-shaped diagram of C-sets; legs are natural transformations given
/// componentwise (`legs[e][side][c]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSetCoDecomposition {
    category: FinCat,
    shape: SimpleGraph,
    vertex: Vec<CSet>,
    edge: Vec<CSet>,
    legs: Vec<[Vec<FinFn>; 2]>,
}

impl CSetCoDecomposition {
    /// Validates the category, every C-set and the naturality of every leg.
    pub fn new(
        category: FinCat,
        shape: SimpleGraph,
        vertex: Vec<CSet>,
        edge: Vec<CSet>,
        legs: Vec<[Vec<FinFn>; 2]>,
    ) -> Result<Self> {
        category.validate().map_err(Error::Category)?;
        let d = CSetCoDecomposition {
            category,
            shape,
            vertex,
            edge,
            legs,
        };
        let violations = d.violations();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(Error::Category(violations))
        }
    }

    fn violations(&self) -> Vec<CatViolation> {
        let cat = &self.category;
        let mut out = Vec::new();
        if self.vertex.len() != self.shape.vertex_count()
            || self.edge.len() != self.shape.edge_count()
            || self.legs.len() != self.shape.edge_count()
        {
            out.push(CatViolation::TableShape(
                "object or leg count does not match the shape".into(),
            ));
            return out;
        }
        for (v, x) in self.vertex.iter().enumerate() {
            out.extend(x.validate(cat, &format!("vertex {v}")));
        }
        for (e, y) in self.edge.iter().enumerate() {
            out.extend(y.validate(cat, &format!("edge {e}")));
        }
        if !out.is_empty() {
            return out;
        }
        for e in 0..self.shape.edge_count() {
            let (a, b) = self.shape.endpoints(e);
            let y = &self.edge[e];
            for (side, endpoint) in [(0, a), (1, b)] {
                let x = &self.vertex[endpoint];
                let comps = &self.legs[e][side];
                if comps.len() != cat.objects {
                    out.push(CatViolation::LegShape {
                        edge: e,
                        endpoint,
                        c: 0,
                        detail: format!("{} components for {} objects", comps.len(), cat.objects),
                    });
                    continue;
                }
                let mut shaped = true;
                for (c, leg) in comps.iter().enumerate() {
                    let (s, t) = (x.sets[c].size(), y.sets[c].size());
                    if leg.source_size() != s || leg.target_size() != t || !leg.is_total() {
                        shaped = false;
                        out.push(CatViolation::LegShape {
                            edge: e,
                            endpoint,
                            c,
                            detail: format!("expected a total function {s} -> {t}"),
                        });
                    }
                }
                if !shaped {
                    continue;
                }
                for (i, f) in cat.morphisms.iter().enumerate() {
                    let lhs = compose(&x.actions[i], &comps[f.tgt]).expect("sizes checked");
                    let rhs = compose(&comps[f.src], &y.actions[i]).expect("sizes checked");
                    if lhs != rhs {
                        out.push(CatViolation::Naturality {
                            edge: e,
                            endpoint,
                            morphism: i,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn category(&self) -> &FinCat {
        &self.category
    }

    pub fn shape(&self) -> &SimpleGraph {
        &self.shape
    }

    pub fn vertex_cset(&self, v: usize) -> &CSet {
        &self.vertex[v]
    }

    pub fn edge_cset(&self, e: usize) -> &CSet {
        &self.edge[e]
    }

    /// Component at object `c` of the leg from `endpoint` into edge `e`.
    pub fn leg(&self, e: usize, endpoint: usize, c: usize) -> &FinFn {
        let (a, b) = self.shape.endpoints(e);
        let side = if endpoint == a {
            0
        } else if endpoint == b {
            1
        } else {
            panic!("vertex {endpoint} is not an endpoint of edge {e}")
        };
        &self.legs[e][side][c]
    }

    /// Largest `Σ_c |d(x)(c)|` over shape vertices.
    pub fn summed_width(&self) -> usize {
        self.vertex.iter().map(CSet::total_size).max().unwrap_or(0)
    }

    /// Largest `|d(x)(c)|` over shape vertices, per object `c`.
    pub fn slice_widths(&self) -> Vec<usize> {
        (0..self.category.objects)
            .map(|c| {
                self.vertex
                    .iter()
                    .map(|x| x.sets[c].size())
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    /// The plain diagram obtained by evaluating everything at object `c`.
    pub fn pointwise_slice(&self, c: usize) -> CoDecomposition {
        CoDecomposition::new(
            self.shape.clone(),
            self.vertex.iter().map(|x| x.sets[c].clone()).collect(),
            self.edge.iter().map(|y| y.sets[c].clone()).collect(),
            self.legs
                .iter()
                .map(|[l, r]| [l[c].clone(), r[c].clone()])
                .collect(),
        )
        .expect("validated C-set diagram slices are valid")
    }
}

/// Verdict plus the per-object solutions that were computed.
#[derive(Debug, Clone)]
pub struct CSetSolution {
    pub verdict: Verdict,
    /// `slices[c]` is `None` when solving stopped before reaching `c`.
    pub slices: Vec<Option<Solution>>,
}

/// The limit C-set is empty iff its value at every object is empty; each
/// object is decided by [`inlim`] on the corresponding slice. Stops at the
/// first object whose slice has a nonempty limit.
pub fn cset_inlim(d: &CSetCoDecomposition, opts: &SolveOptions) -> Result<CSetSolution> {
    let fvs = match &opts.fvs {
        Some(s) => s.clone(),
        None => fvs_minimum(&d.shape, opts.k_max).ok_or(Error::NoFvsWithinBudget(opts.k_max))?,
    };
    let slice_opts = SolveOptions {
        fvs: Some(fvs),
        ..opts.clone()
    };
    let mut slices = vec![None; d.category.objects];
    let mut verdict = Verdict::EMPTY;
    for (c, slot) in slices.iter_mut().enumerate() {
        let sol = inlim(&d.pointwise_slice(c), &slice_opts)?;
        let nonempty = !sol.verdict.empty_limit;
        *slot = Some(sol);
        if nonempty {
            verdict = Verdict::NONEMPTY;
            break;
        }
    }
    Ok(CSetSolution { verdict, slices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn standard_categories_validate() {
        assert!(validate_fincat(&FinCat::terminal()).is_ok());
        assert!(validate_fincat(&FinCat::walking_arrow()).is_ok());
        assert!(validate_fincat(&FinCat::discrete(3)).is_ok());
    }

    #[test]
    fn broken_associativity_is_named() {
        // 0 -f-> 1 -g-> 2 -h-> 3 with every composite, then corrupt h∘(g∘f)
        let mut morphisms: Vec<Morphism> = (0..4).map(|i| Morphism { src: i, tgt: i }).collect();
        let arrows = [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)];
        morphisms.extend(arrows.iter().map(|&(s, t)| Morphism { src: s, tgt: t }));
        // ids 0..4, f=4 (0→1), g=5 (1→2), h=6 (2→3), gf=7, hg=8, hgf=9
        let m = morphisms.len();
        let mut comp = vec![vec![None; m]; m];
        let by_ends = |s: usize, t: usize| {
            morphisms
                .iter()
                .position(|x| x.src == s && x.tgt == t)
                .unwrap()
        };
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].tgt == morphisms[g].src {
                    comp[g][f] = Some(by_ends(morphisms[f].src, morphisms[g].tgt));
                }
            }
        }
        let good = FinCat::new_unchecked(4, morphisms.clone(), vec![0, 1, 2, 3], comp.clone());
        assert!(good.validate().is_ok());
        // a second 0→3 arrow breaks uniqueness; make h∘(gf) land on it
        let mut morphisms2 = morphisms.clone();
        morphisms2.push(Morphism { src: 0, tgt: 3 });
        let m2 = morphisms2.len();
        let mut comp2 = vec![vec![None; m2]; m2];
        for g in 0..m {
            for f in 0..m {
                comp2[g][f] = comp[g][f];
            }
        }
        for (g, row) in comp2.iter_mut().enumerate() {
            if morphisms2[g].src == 3 && morphisms2[g].tgt == 3 {
                row[10] = Some(10);
            }
        }
        comp2[10][0] = Some(10);
        comp2[6][7] = Some(10);
        let broken = FinCat::new_unchecked(4, morphisms2, vec![0, 1, 2, 3], comp2);
        let vs = broken.validate().unwrap_err();
        assert!(
            vs.contains(&CatViolation::Associativity { h: 6, g: 5, f: 4 }),
            "{vs:?}"
        );
    }

    #[test]
    fn undefined_composite_is_reported() {
        let mut c = FinCat::walking_arrow();
        c.comp[1][2] = None;
        let vs = c.validate().unwrap_err();
        assert_eq!(vs, vec![CatViolation::Definedness { g: 1, f: 2 }]);
    }

    /// The plain diagram as a C-set diagram over the terminal category.
    fn over_terminal(d: &CoDecomposition) -> CSetCoDecomposition {
        let one = |s: &FinSetObj| CSet {
            sets: vec![s.clone()],
            actions: vec![FinFn::identity(s.size())],
        };
        CSetCoDecomposition::new(
            FinCat::terminal(),
            d.shape().clone(),
            d.vertex_sets().iter().map(one).collect(),
            d.edge_sets().iter().map(one).collect(),
            (0..d.edge_count())
                .map(|e| [vec![d.legs(e)[0].clone()], vec![d.legs(e)[1].clone()]])
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn terminal_category_slice_is_the_diagram() {
        let d = fixtures::path_example();
        let cd = over_terminal(&d);
        assert_eq!(cd.pointwise_slice(0), d);
        let sol = cset_inlim(&cd, &SolveOptions::default()).unwrap();
        assert_eq!(sol.verdict, Verdict::NONEMPTY);
        let sol = cset_inlim(
            &over_terminal(&fixtures::cycle_example()),
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(sol.verdict, Verdict::EMPTY);
    }

    #[test]
    fn naturality_violation_is_rejected() {
        // single vertex, single edge? use a one-edge shape over the walking arrow
        let arrow = FinCat::walking_arrow();
        let cset = |a: usize, b: usize, act: Vec<usize>| CSet {
            sets: vec![FinSetObj::new(a), FinSetObj::new(b)],
            actions: vec![
                FinFn::identity(a),
                FinFn::identity(b),
                FinFn::new(act, b).unwrap(),
            ],
        };
        let x = cset(2, 2, vec![0, 1]);
        let y = cset(2, 2, vec![1, 0]);
        let id = || vec![FinFn::identity(2), FinFn::identity(2)];
        // identity components are not natural from x to y: swap vs identity
        let r = CSetCoDecomposition::new(
            arrow.clone(),
            SimpleGraph::path(2),
            vec![x.clone(), x.clone()],
            vec![y.clone()],
            vec![[id(), id()]],
        );
        match r {
            Err(Error::Category(vs)) => {
                assert_eq!(vs.len(), 2);
                assert!(matches!(
                    vs[0],
                    CatViolation::Naturality {
                        edge: 0,
                        endpoint: 0,
                        morphism: 2
                    }
                ));
            }
            other => panic!("expected a naturality violation, got {other:?}"),
        }
        // into x itself they are natural
        assert!(CSetCoDecomposition::new(
            arrow,
            SimpleGraph::path(2),
            vec![x.clone(), x.clone()],
            vec![x],
            vec![[id(), id()]]
        )
        .is_ok());
    }
}
