//! Decide whether the limit of a graph-shaped diagram of finite sets is empty.
//!
//! A [`CoDecomposition`] puts a finite set on every vertex and edge of a simple
//! graph, with leg functions from vertex sets into the sets of incident edges.
//! Its limit is the set of global matching families: one element per vertex,
//! agreeing along every edge. [`inlim`] decides emptiness in time
//! `O(w^k · w² · n)` for bag size `w`, feedback vertex number `k` and `n`
//! shape vertices, and [`image_tree`] computes the image diagram of a
//! forest-shaped diagram in a linear number of filter steps.
//!
//! ```
//! use inlim::{fixtures, inlim, SolveOptions};
//!
//! let d = fixtures::cycle_example();
//! let solution = inlim(&d, &SolveOptions::default()).unwrap();
//! assert!(solution.verdict.empty_limit);
//! assert_eq!(solution.section_tests, 2);
//! ```

pub mod bench;
pub mod codecomp;
pub mod cset;
pub mod error;
pub mod finset;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod homfront;
pub mod json;
pub mod oracle;
pub mod solver;

pub use codecomp::{
    as_subdiagram, filter, filter_in_place, glue, restrict_to_subgraph, CoDecomposition,
    FilterStatus, GlueSide, SubMask, Verdict, Violation,
};
pub use error::{Error, GraphError, Result};
pub use finset::{compose, image, FinFn, FinSetObj};
pub use graph::{fvs_exact, fvs_minimum, SimpleGraph, VertexSet};
pub use homfront::{find_homomorphism, hom_exists, BagDecomposition, HomResult};
pub use solver::{
    discrete_inlim, extract_witness, forest_initial, image_tree, image_tree_recursive, inlim,
    section_tests, SectionAssignment, Solution, SolveOptions, Witness,
};
