//! Deciding emptiness of limits.
//!
//! Forest-shaped diagrams are handled by computing the image diagram (the
//! elements that extend to a global matching family) with two filter sweeps
//! per tree. Arbitrary shapes are reduced to forests through a feedback
//! vertex set `S`: every choice `σ ∈ ∏_{s∈S} d(s)` pins the bags in `S`,
//! filters their edges and leaves a forest-shaped section test, and the limit
//! is empty exactly when every section test has an empty limit.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::codecomp::{
    filter_in_place, restrict_diagram, CoDecomposition, FilterStatus, SubMask, Verdict,
};
use crate::error::{Error, Result};
use crate::graph::{fvs_minimum, InducedSubgraph, SimpleGraph, VertexSet};

/// One element per vertex set and the induced element per edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

impl Witness {
    /// Builds the edge part from a vertex choice, taking each edge's value
    /// through the leg from its first endpoint.
    pub fn from_vertices(d: &CoDecomposition, vertex: Vec<usize>) -> Self {
        let edge = (0..d.edge_count())
            .map(|e| {
                let (x, _) = d.shape().endpoints(e);
                d.legs(e)[0].apply(vertex[x])
            })
            .collect();
        Witness { vertex, edge }
    }

    /// True when every element is in range and every edge constraint holds.
    pub fn is_valid(&self, d: &CoDecomposition) -> bool {
        if self.vertex.len() != d.vertex_count() || self.edge.len() != d.edge_count() {
            return false;
        }
        if self
            .vertex
            .iter()
            .enumerate()
            .any(|(v, &a)| a >= d.vertex_set(v).size())
        {
            return false;
        }
        (0..d.edge_count()).all(|e| {
            let (x, y) = d.shape().endpoints(e);
            let [lx, ly] = d.legs(e);
            lx.apply(self.vertex[x]) == self.edge[e] && ly.apply(self.vertex[y]) == self.edge[e]
        })
    }

    /// Renders elements by label, vertices then edges.
    pub fn labels(&self, d: &CoDecomposition) -> (Vec<String>, Vec<String>) {
        (
            self.vertex
                .iter()
                .enumerate()
                .map(|(v, &a)| d.vertex_set(v).label(a))
                .collect(),
            self.edge
                .iter()
                .enumerate()
                .map(|(e, &a)| d.edge_set(e).label(a))
                .collect(),
        )
    }
}

/// Emptiness for edgeless shapes: the limit is a plain product.
pub fn discrete_inlim(d: &CoDecomposition) -> Result<Verdict> {
    if d.edge_count() > 0 {
        return Err(Error::NotDiscrete(d.edge_count()));
    }
    Ok(Verdict {
        empty_limit: d.vertex_sets().iter().any(|s| s.is_empty()),
    })
}

/// Traversal data for a forest shape: each tree is rooted at its lowest
/// vertex and listed in breadth-first order.
#[derive(Debug, Clone)]
pub struct ForestPlan {
    order: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    roots: Vec<usize>,
    component: Vec<usize>,
}

impl ForestPlan {
    pub fn new(shape: &SimpleGraph) -> Result<Self> {
        if !shape.is_forest() {
            return Err(Error::NotAForest);
        }
        let n = shape.vertex_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut parent_edge = vec![None; n];
        let mut roots = Vec::new();
        let mut component = vec![0; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let c = roots.len();
            roots.push(root);
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                component[v] = c;
                for &(w, e) in shape.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        parent_edge[w] = Some(e);
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(ForestPlan {
            order,
            parent_edge,
            roots,
            component,
        })
    }

    /// Roots, one per tree, ascending.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Leaves-to-roots pass. Afterwards each root's mask is exactly the set
    /// of its elements that extend to a matching family of its tree.
    /// Returns false as soon as a mask empties.
    pub fn sweep_up(&self, d: &CoDecomposition, m: &mut SubMask) -> bool {
        for &v in self.order.iter().rev() {
            if let Some(e) = self.parent_edge[v] {
                if filter_in_place(d, m, e).expect("plan edges exist") == FilterStatus::Emptied {
                    return false;
                }
            }
        }
        self.roots.iter().all(|&r| !m.vertex_is_empty(r))
    }

    /// Roots-to-leaves pass; after [`Self::sweep_up`] this leaves every mask
    /// equal to the image of its tree.
    pub fn sweep_down(&self, d: &CoDecomposition, m: &mut SubMask) {
        for &v in &self.order {
            if let Some(e) = self.parent_edge[v] {
                filter_in_place(d, m, e).expect("plan edges exist");
            }
        }
    }

    /// Image of the masked diagram, computed in place.
    pub fn image_in_place(&self, d: &CoDecomposition, m: &mut SubMask) {
        // one empty tree empties the whole limit, hence every image
        if !self.sweep_up(d, m) {
            m.clear();
            return;
        }
        self.sweep_down(d, m);
    }

    /// Tree index of each vertex.
    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }
}

/// The image diagram of a forest-shaped masked diagram: at every object, the
/// elements that belong to some global matching family.
///
/// Each tree is swept once from the leaves up and once back down, filtering
/// every edge in each pass. If one tree has no matching family the global
/// limit is empty and every mask comes back all-false.
pub fn image_tree(d: &CoDecomposition, m: &SubMask) -> Result<SubMask> {
    let plan = ForestPlan::new(d.shape())?;
    let mut out = m.clone();
    plan.image_in_place(d, &mut out);
    Ok(out)
}

/// Image by the recursive filter/split/glue scheme: filter one edge, solve
/// both sides, then filter the edge again. Same output as [`image_tree`];
/// recursion depth grows with the tree, so this is meant for small inputs.
///
/// The closing filter can drop elements at the split endpoints whose
/// partners elsewhere on their side are then stale, so both sides are
/// solved again until the split edge is stable.
pub fn image_tree_recursive(d: &CoDecomposition, m: &SubMask) -> Result<SubMask> {
    let shape = d.shape();
    if !shape.is_forest() {
        return Err(Error::NotAForest);
    }
    let mut out = m.clone();
    let labels = shape.component_labels();
    let count = labels.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut per_tree = vec![Vec::new(); count];
    for e in 0..shape.edge_count() {
        per_tree[labels[shape.endpoints(e).0]].push(e);
    }
    for edges in &per_tree {
        image_recursive(d, &mut out, edges);
    }
    if (0..d.vertex_count()).any(|v| out.vertex_is_empty(v)) {
        out.clear();
    }
    Ok(out)
}

fn image_recursive(d: &CoDecomposition, m: &mut SubMask, edges: &[usize]) {
    let Some((&e, rest)) = edges.split_first() else {
        return;
    };
    filter_in_place(d, m, e).expect("edge exists");
    let (x, _) = d.shape().endpoints(e);
    // split the remaining tree edges into the side containing x and the rest
    let mut reached = std::collections::HashSet::from([x]);
    let mut left = Vec::new();
    let mut pending: Vec<usize> = rest.to_vec();
    loop {
        let before = pending.len();
        pending.retain(|&f| {
            let (u, v) = d.shape().endpoints(f);
            if reached.contains(&u) || reached.contains(&v) {
                reached.insert(u);
                reached.insert(v);
                left.push(f);
                false
            } else {
                true
            }
        });
        if pending.len() == before {
            break;
        }
    }
    loop {
        image_recursive(d, m, &left);
        image_recursive(d, m, &pending);
        if filter_in_place(d, m, e).expect("edge exists") != FilterStatus::Narrowed {
            break;
        }
    }
}

/// Emptiness for forest shapes: the limit is empty iff some tree's image is
/// empty at one (hence every) vertex. The root of each tree is checked.
pub fn forest_initial(d: &CoDecomposition, m: &SubMask) -> Result<Verdict> {
    let plan = ForestPlan::new(d.shape())?;
    let mut work = m.clone();
    Ok(Verdict {
        empty_limit: !plan.sweep_up(d, &mut work),
    })
}

/// A choice of one element for each vertex of a feedback vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SectionAssignment {
    /// Pinned vertices, ascending.
    pub vertices: Vec<usize>,
    /// `choice[i]` is the element picked at `vertices[i]`.
    pub choice: Vec<usize>,
}

/// One section test: the pinned choice and, unless pinning and filtering
/// already emptied some mask, the forest-shaped mask over
/// [`SectionTestPlan::forest`].
#[derive(Debug, Clone)]
pub struct SectionTest {
    pub sigma: SectionAssignment,
    pub tau: Option<SubMask>,
}

impl SectionTest {
    pub fn is_immediately_empty(&self) -> bool {
        self.tau.is_none()
    }
}

/// Everything shared by the section tests of one diagram and one feedback
/// vertex set. The restricted forest diagram is built once; each test only
/// differs in its mask.
#[derive(Debug, Clone)]
pub struct SectionTestPlan<'a> {
    base: &'a CoDecomposition,
    fvs: Vec<usize>,
    filter_order: Vec<usize>,
    forest: CoDecomposition,
    forest_map: InducedSubgraph,
    forest_plan: ForestPlan,
}

/// Prepares the section tests of `d` relative to the feedback vertex set `s`.
pub fn section_tests<'a>(d: &'a CoDecomposition, s: &VertexSet) -> Result<SectionTestPlan<'a>> {
    SectionTestPlan::new(d, s)
}

impl<'a> SectionTestPlan<'a> {
    pub fn new(d: &'a CoDecomposition, s: &VertexSet) -> Result<Self> {
        if s.len() != d.vertex_count() {
            return Err(Error::FvsLength {
                expected: d.vertex_count(),
                found: s.len(),
            });
        }
        let forest_map = d.shape().remove_vertices(s);
        if !forest_map.graph.is_forest() {
            return Err(Error::InvalidFvs);
        }
        let fvs = s.to_indices();
        let filter_order = fvs
            .iter()
            .flat_map(|&v| {
                let mut incident: Vec<usize> =
                    d.shape().neighbors(v).iter().map(|&(_, e)| e).collect();
                incident.sort_unstable();
                incident
            })
            .collect();
        let forest = restrict_diagram(d, &forest_map);
        let forest_plan = ForestPlan::new(forest.shape())?;
        Ok(SectionTestPlan {
            base: d,
            fvs,
            filter_order,
            forest,
            forest_map,
            forest_plan,
        })
    }

    /// Replaces the edge filtering order (ascending edge id per pinned
    /// vertex, by default). The order must list every edge incident to the
    /// feedback vertex set at least once.
    pub fn with_filter_order(mut self, order: Vec<usize>) -> Self {
        self.filter_order = order;
        self
    }

    pub fn filter_order(&self) -> &[usize] {
        &self.filter_order
    }

    pub fn fvs(&self) -> &[usize] {
        &self.fvs
    }

    /// The diagram restricted to the forest `G - S`.
    pub fn forest(&self) -> &CoDecomposition {
        &self.forest
    }

    pub fn forest_map(&self) -> &InducedSubgraph {
        &self.forest_map
    }

    pub fn forest_plan(&self) -> &ForestPlan {
        &self.forest_plan
    }

    /// `∏_{s∈S} |d(s)|`.
    pub fn count(&self) -> Result<u64> {
        self.fvs.iter().try_fold(1u64, |acc, &s| {
            acc.checked_mul(self.base.vertex_set(s).size() as u64)
                .ok_or(Error::TooManySectionTests)
        })
    }

    /// The `index`-th assignment in lexicographic order (first pinned vertex
    /// most significant).
    pub fn assignment(&self, mut index: u64) -> SectionAssignment {
        let mut choice = vec![0; self.fvs.len()];
        for (slot, &s) in choice.iter_mut().zip(&self.fvs).rev() {
            let size = self.base.vertex_set(s).size() as u64;
            *slot = (index % size) as usize;
            index /= size;
        }
        SectionAssignment {
            vertices: self.fvs.clone(),
            choice,
        }
    }

    /// The pinned and filtered mask over the whole base diagram, and whether
    /// some mask emptied on the way.
    pub fn pinned_mask(&self, sigma: &SectionAssignment) -> (SubMask, bool) {
        let mut m = self.base.full_mask();
        for (&s, &a) in sigma.vertices.iter().zip(&sigma.choice) {
            m.pin(s, a);
        }
        for &e in &self.filter_order {
            if filter_in_place(self.base, &mut m, e).expect("incident edges exist")
                == FilterStatus::Emptied
            {
                return (m, true);
            }
        }
        (m, false)
    }

    /// Builds the section test for one assignment.
    pub fn test(&self, sigma: SectionAssignment) -> SectionTest {
        let (m, emptied) = self.pinned_mask(&sigma);
        let tau = if emptied {
            None
        } else {
            Some(m.restrict(&self.forest_map))
        };
        SectionTest { sigma, tau }
    }

    /// Whether the section test has an empty limit.
    pub fn test_is_empty(&self, test: &SectionTest) -> bool {
        match &test.tau {
            None => true,
            Some(tau) => {
                let mut work = tau.clone();
                !self.forest_plan.sweep_up(&self.forest, &mut work)
            }
        }
    }

    /// All section tests in lexicographic order of their assignments.
    pub fn iter(&self) -> SectionTests<'_, 'a> {
        let exhausted = self.fvs.iter().any(|&s| self.base.vertex_set(s).is_empty());
        SectionTests {
            plan: self,
            next: if exhausted {
                None
            } else {
                Some(vec![0; self.fvs.len()])
            },
        }
    }

    /// Lifts the image of a nonempty section test back to a mask over the
    /// base diagram: pinned data from filtering, forest part from `image`.
    fn lift(&self, sigma: &SectionAssignment, image: &SubMask) -> SubMask {
        let (mut m, _) = self.pinned_mask(sigma);
        for (new, &old) in self.forest_map.vertices.iter().enumerate() {
            m.vertex_mut(old).copy_from_slice(image.vertex(new));
        }
        for (new, &old) in self.forest_map.edges.iter().enumerate() {
            m.edge_mut(old).copy_from_slice(image.edge(new));
        }
        m
    }
}

/// Odometer over `∏_{s∈S} d(s)`.
pub struct SectionTests<'p, 'a> {
    plan: &'p SectionTestPlan<'a>,
    next: Option<Vec<usize>>,
}

impl Iterator for SectionTests<'_, '_> {
    type Item = SectionTest;

    fn next(&mut self) -> Option<SectionTest> {
        let current = self.next.take()?;
        let mut following = current.clone();
        let mut advanced = false;
        for (slot, &s) in following.iter_mut().zip(&self.plan.fvs).rev() {
            *slot += 1;
            if *slot < self.plan.base.vertex_set(s).size() {
                advanced = true;
                break;
            }
            *slot = 0;
        }
        if advanced {
            self.next = Some(following);
        }
        Some(self.plan.test(SectionAssignment {
            vertices: self.plan.fvs.clone(),
            choice: current,
        }))
    }
}

/// Knobs for [`inlim`].
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Feedback vertex set to use; validated before use. When absent the
    /// smallest one of size at most `k_max` is searched for.
    pub fvs: Option<VertexSet>,
    pub k_max: usize,
    /// Also produce a witness when the limit is nonempty.
    pub witness: bool,
    /// Stop at the first section test with a nonempty limit.
    pub early_exit: bool,
    /// Worker threads for section tests; 1 runs sequentially.
    pub jobs: usize,
    /// Forces sequential lexicographic enumeration so witnesses are reproducible.
    pub deterministic: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            fvs: None,
            k_max: 10,
            witness: false,
            early_exit: true,
            jobs: 1,
            deterministic: false,
        }
    }
}

/// Outcome of [`inlim`] with the counters reported by the CLI.
#[derive(Debug, Clone)]
pub struct Solution {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub fvs: VertexSet,
    /// Section tests enumerated.
    pub section_tests: u64,
    /// Section tests found empty during pinning and filtering alone.
    pub immediately_empty: u64,
}

/// Decides whether the limit of `d` is empty.
pub fn inlim(d: &CoDecomposition, opts: &SolveOptions) -> Result<Solution> {
    let n = d.vertex_count();
    let fvs = match &opts.fvs {
        Some(s) => {
            if s.len() != n {
                return Err(Error::FvsLength {
                    expected: n,
                    found: s.len(),
                });
            }
            if !d.shape().remove_vertices(s).graph.is_forest() {
                return Err(Error::InvalidFvs);
            }
            s.clone()
        }
        None => fvs_minimum(d.shape(), opts.k_max).ok_or(Error::NoFvsWithinBudget(opts.k_max))?,
    };
    let plan = SectionTestPlan::new(d, &fvs)?;
    let sequential = opts.deterministic || opts.jobs <= 1;
    let (found, tested, immediate) = if sequential {
        solve_sequential(&plan, opts.early_exit)
    } else {
        solve_parallel(&plan, opts)?
    };
    let verdict = Verdict {
        empty_limit: found.is_none(),
    };
    let witness = match (&found, opts.witness) {
        (Some(test), true) => Some(witness_for(&plan, test)?),
        _ => None,
    };
    Ok(Solution {
        verdict,
        witness,
        fvs,
        section_tests: tested,
        immediately_empty: immediate,
    })
}

/// Returns the first nonempty test (if any), tests enumerated, and tests
/// emptied by pinning alone.
fn solve_sequential(
    plan: &SectionTestPlan<'_>,
    early_exit: bool,
) -> (Option<SectionTest>, u64, u64) {
    let mut found = None;
    let mut tested = 0;
    let mut immediate = 0;
    for test in plan.iter() {
        tested += 1;
        if test.is_immediately_empty() {
            immediate += 1;
            continue;
        }
        if !plan.test_is_empty(&test) && found.is_none() {
            found = Some(test);
            if early_exit {
                break;
            }
        }
    }
    (found, tested, immediate)
}

fn solve_parallel(
    plan: &SectionTestPlan<'_>,
    opts: &SolveOptions,
) -> Result<(Option<SectionTest>, u64, u64)> {
    let total = plan.count()?;
    let tested = AtomicU64::new(0);
    let immediate = AtomicU64::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    let run = |i: u64| {
        tested.fetch_add(1, Ordering::Relaxed);
        let test = plan.test(plan.assignment(i));
        if test.is_immediately_empty() {
            immediate.fetch_add(1, Ordering::Relaxed);
            return None;
        }
        (!plan.test_is_empty(&test)).then_some(test)
    };
    let found = pool.install(|| {
        if opts.early_exit {
            (0..total).into_par_iter().find_map_any(run)
        } else {
            (0..total)
                .into_par_iter()
                .filter_map(run)
                .min_by_key(|t| t.sigma.choice.clone())
        }
    });
    Ok((found, tested.into_inner(), immediate.into_inner()))
}

fn witness_for(plan: &SectionTestPlan<'_>, test: &SectionTest) -> Result<Witness> {
    let tau = test.tau.as_ref().expect("nonempty test has a mask");
    let mut image = tau.clone();
    plan.forest_plan.image_in_place(&plan.forest, &mut image);
    let lifted = plan.lift(&test.sigma, &image);
    let sigma = (!test.sigma.vertices.is_empty()).then_some(&test.sigma);
    extract_witness(plan.base, &lifted, sigma)
}

/// A global matching family read off an image mask.
///
/// Vertices pinned by `sigma` take their pinned element. The remaining shape
/// must be a forest; each tree is rooted at its lowest vertex, the root takes
/// its lowest surviving element, and every child takes the lowest surviving
/// element whose leg value matches its parent's.
pub fn extract_witness(
    d: &CoDecomposition,
    image: &SubMask,
    sigma: Option<&SectionAssignment>,
) -> Result<Witness> {
    let n = d.vertex_count();
    let shape = d.shape();
    let mut pinned = vec![false; n];
    let mut vertex = vec![usize::MAX; n];
    if let Some(sigma) = sigma {
        for (&s, &a) in sigma.vertices.iter().zip(&sigma.choice) {
            pinned[s] = true;
            vertex[s] = a;
        }
    }
    let mut queue = VecDeque::new();
    for root in 0..n {
        if pinned[root] || vertex[root] != usize::MAX {
            continue;
        }
        vertex[root] = image
            .vertex_members(root)
            .first()
            .copied()
            .ok_or(Error::EmptyMask(root))?;
        queue.push_back(root);
        while let Some(p) = queue.pop_front() {
            for &(c, e) in shape.neighbors(p) {
                if pinned[c] {
                    continue;
                }
                if vertex[c] != usize::MAX {
                    continue;
                }
                let want = d.leg(e, p).apply(vertex[p]);
                let leg_c = d.leg(e, c);
                vertex[c] = image
                    .vertex(c)
                    .iter()
                    .enumerate()
                    .find(|&(b, &keep)| keep && leg_c.apply(b) == want)
                    .map(|(b, _)| b)
                    .ok_or(Error::EmptyMask(c))?;
                queue.push_back(c);
            }
        }
    }
    Ok(Witness::from_vertices(d, vertex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSetObj;
    use crate::fixtures;

    #[test]
    fn discrete_cases() {
        let d = CoDecomposition::discrete(vec![
            FinSetObj::new(2),
            FinSetObj::new(3),
            FinSetObj::new(1),
        ]);
        assert_eq!(discrete_inlim(&d).unwrap(), Verdict::NONEMPTY);
        let d = CoDecomposition::discrete(vec![
            FinSetObj::new(2),
            FinSetObj::new(0),
            FinSetObj::new(5),
        ]);
        assert_eq!(discrete_inlim(&d).unwrap(), Verdict::EMPTY);
        assert!(matches!(
            discrete_inlim(&fixtures::path_example()),
            Err(Error::NotDiscrete(2))
        ));
    }

    #[test]
    fn path_example_image() {
        let d = fixtures::path_example();
        let img = image_tree(&d, &d.full_mask()).unwrap();
        assert_eq!(img.vertex_members(0), vec![2]); // c
        assert_eq!(img.edge_members(0), vec![1]); // y
        assert_eq!(img.vertex_members(1), vec![1]); // β
        assert_eq!(img.edge_members(1), vec![1]); // v
        assert_eq!(img.vertex_members(2), vec![0, 1]); // r, s
        assert_eq!(image_tree_recursive(&d, &d.full_mask()).unwrap(), img);
    }

    #[test]
    fn recursive_image_refilters_deep_vertices() {
        // edges (0,1), (0,2), (1,3); vertex 3 rules out element 1 at vertex 1,
        // which must reach vertex 2 through vertex 0
        use crate::finset::FinFn;
        let shape = SimpleGraph::new(4, vec![(0, 1), (0, 2), (1, 3)]).unwrap();
        let two = |t: Vec<usize>| FinFn::new(t, 2).unwrap();
        let d = CoDecomposition::new(
            shape,
            vec![
                FinSetObj::new(2),
                FinSetObj::new(2),
                FinSetObj::new(2),
                FinSetObj::new(1),
            ],
            vec![FinSetObj::new(2); 3],
            vec![
                [two(vec![0, 1]), two(vec![0, 1])],
                [two(vec![0, 1]), two(vec![0, 1])],
                [two(vec![0, 1]), two(vec![0])],
            ],
        )
        .unwrap();
        let img = image_tree(&d, &d.full_mask()).unwrap();
        assert_eq!(img.vertex_members(2), vec![0]);
        assert_eq!(image_tree_recursive(&d, &d.full_mask()).unwrap(), img);
    }

    #[test]
    fn edgeless_image_is_input() {
        let d = CoDecomposition::discrete(vec![FinSetObj::new(2), FinSetObj::new(3)]);
        let mut m = d.full_mask();
        m.vertex_mut(1)[0] = false;
        assert_eq!(image_tree(&d, &m).unwrap(), m);
    }

    #[test]
    fn image_rejects_cycles() {
        let d = fixtures::cycle_example();
        assert!(matches!(
            image_tree(&d, &d.full_mask()),
            Err(Error::NotAForest)
        ));
        assert!(matches!(
            forest_initial(&d, &d.full_mask()),
            Err(Error::NotAForest)
        ));
    }

    #[test]
    fn forest_verdicts() {
        let d = fixtures::path_example();
        assert_eq!(
            forest_initial(&d, &d.full_mask()).unwrap(),
            Verdict::NONEMPTY
        );
        let d = fixtures::cospan_example();
        assert_eq!(forest_initial(&d, &d.full_mask()).unwrap(), Verdict::EMPTY);
        let d = CoDecomposition::discrete(vec![]);
        assert_eq!(
            forest_initial(&d, &d.full_mask()).unwrap(),
            Verdict::NONEMPTY
        );
    }

    #[test]
    fn cycle_section_tests() {
        let d = fixtures::cycle_example();
        let plan = section_tests(&d, &VertexSet::from_indices(4, &[0])).unwrap();
        assert_eq!(plan.count().unwrap(), 2);
        let tests: Vec<_> = plan.iter().collect();
        assert_eq!(tests.len(), 2);
        for t in &tests {
            assert!(plan.test_is_empty(t));
        }
        // forest is bags 2-3-4, i.e. base vertices 1, 2, 3
        assert_eq!(plan.forest_map().vertices, vec![1, 2, 3]);
        let tau_a = tests[0].tau.as_ref().unwrap();
        assert_eq!(tau_a.vertex_members(0), vec![1]); // {d}
        assert_eq!(tau_a.vertex_members(1), vec![0, 1]); // {c,d}
        assert_eq!(tau_a.vertex_members(2), vec![0]); // {a}
        let tau_b = tests[1].tau.as_ref().unwrap();
        assert_eq!(tau_b.vertex_members(0), vec![0]); // {c}
        assert_eq!(tau_b.vertex_members(2), vec![1]); // {b}
    }

    #[test]
    fn empty_fvs_on_forest_gives_one_test() {
        let d = fixtures::path_example();
        let plan = section_tests(&d, &VertexSet::empty(3)).unwrap();
        let tests: Vec<_> = plan.iter().collect();
        assert_eq!(tests.len(), 1);
        assert_eq!(tests[0].tau.as_ref().unwrap(), &d.full_mask());
        assert_eq!(plan.forest(), &d);
    }

    #[test]
    fn empty_pinned_bag_gives_no_tests() {
        let d = CoDecomposition::discrete(vec![FinSetObj::new(0), FinSetObj::new(2)]);
        let plan = section_tests(&d, &VertexSet::from_indices(2, &[0])).unwrap();
        assert_eq!(plan.iter().count(), 0);
        let sol = inlim(
            &d,
            &SolveOptions {
                fvs: Some(VertexSet::from_indices(2, &[0])),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(sol.verdict, Verdict::EMPTY);
        assert_eq!(sol.section_tests, 0);
    }

    #[test]
    fn non_fvs_is_rejected() {
        let d = fixtures::cycle_example();
        assert!(matches!(
            section_tests(&d, &VertexSet::empty(4)),
            Err(Error::InvalidFvs)
        ));
        let opts = SolveOptions {
            fvs: Some(VertexSet::empty(4)),
            ..Default::default()
        };
        assert!(matches!(inlim(&d, &opts), Err(Error::InvalidFvs)));
        let opts = SolveOptions {
            k_max: 0,
            ..Default::default()
        };
        assert!(matches!(inlim(&d, &opts), Err(Error::NoFvsWithinBudget(0))));
    }

    #[test]
    fn inlim_on_worked_examples() {
        let opts = SolveOptions {
            witness: true,
            ..Default::default()
        };
        let sol = inlim(&fixtures::cycle_example(), &opts).unwrap();
        assert_eq!(sol.verdict, Verdict::EMPTY);
        assert!(sol.witness.is_none());

        let d = fixtures::cycle_example_nonempty();
        let sol = inlim(&d, &opts).unwrap();
        assert_eq!(sol.verdict, Verdict::NONEMPTY);
        assert!(sol.witness.unwrap().is_valid(&d));

        let d = fixtures::path_example();
        let sol = inlim(&d, &opts).unwrap();
        let w = sol.witness.unwrap();
        assert_eq!(w.vertex, vec![2, 1, 0]); // c, β, r
        assert_eq!(w.edge, vec![1, 1]); // y, v
        assert!(w.is_valid(&d));
    }

    #[test]
    fn zero_vertex_shape_is_nonempty() {
        let d = CoDecomposition::discrete(vec![]);
        let sol = inlim(
            &d,
            &SolveOptions {
                witness: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(sol.verdict, Verdict::NONEMPTY);
        assert_eq!(sol.witness.unwrap().vertex, Vec::<usize>::new());
    }

    #[test]
    fn single_vertex_witness() {
        let d = CoDecomposition::discrete(vec![FinSetObj::new(3)]);
        let w = extract_witness(&d, &d.full_mask(), None).unwrap();
        assert_eq!(w.vertex, vec![0]);
    }

    #[test]
    fn witness_from_empty_mask_fails() {
        let d = fixtures::cospan_example();
        let m = SubMask::empty(&d);
        assert!(matches!(
            extract_witness(&d, &m, None),
            Err(Error::EmptyMask(0))
        ));
    }

    #[test]
    fn parallel_matches_sequential() {
        for d in [
            fixtures::cycle_example(),
            fixtures::cycle_example_nonempty(),
        ] {
            let seq = inlim(&d, &SolveOptions::default()).unwrap();
            let par = inlim(
                &d,
                &SolveOptions {
                    jobs: 4,
                    witness: true,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(seq.verdict, par.verdict);
            if let Some(w) = par.witness {
                assert!(w.is_valid(&d));
            }
        }
    }
}
