//! Small hand-built diagrams with known answers, shared by tests, docs and
//! the CLI's sample instances.

use crate::codecomp::CoDecomposition;
use crate::finset::{FinFn, FinSetObj};
use crate::graph::SimpleGraph;

fn set(labels: &[&str]) -> FinSetObj {
    FinSetObj::labeled(labels.iter().copied()).expect("fixture labels are distinct")
}

fn leg(table: &[usize], target: usize) -> FinFn {
    FinFn::new(table.to_vec(), target).expect("fixture legs are total")
}

/// Three bags on a path:
///
/// ```text
/// {a,b,c} -> {x,y} <- {α,β} -> {u,v} <- {r,s}
/// a,b ↦ x; c ↦ y     α ↦ x, β ↦ y
///                    α ↦ u, β ↦ v    r,s ↦ v
/// ```
///
/// Its only matching families are `(c, β, r)` and `(c, β, s)`.
pub fn path_example() -> CoDecomposition {
    CoDecomposition::new(
        SimpleGraph::path(3),
        vec![set(&["a", "b", "c"]), set(&["α", "β"]), set(&["r", "s"])],
        vec![set(&["x", "y"]), set(&["u", "v"])],
        vec![
            [leg(&[0, 0, 1], 2), leg(&[0, 1], 2)],
            [leg(&[0, 1], 2), leg(&[1, 1], 2)],
        ],
    )
    .expect("path example is valid")
}

/// The 4-cycle whose every single-edge filter is a no-op yet whose limit is
/// empty. Vertices 0..3 are bags 1..4; edges are 1-2, 2-3, 3-4, 4-1:
///
/// ```text
/// bag 1 {a,b} -> {3,4} <- bag 2 {c,d}    a ↦ 3, b ↦ 4 ; c ↦ 4, d ↦ 3
/// bag 2 {c,d} -> {c,d} <- bag 3 {c,d}    identities
/// bag 3 {c,d} -> {1,2} <- bag 4 {a,b}    c ↦ 1, d ↦ 2 ; a ↦ 1, b ↦ 2
/// bag 4 {a,b} -> {a,b} <- bag 1 {a,b}    identities
/// ```
pub fn cycle_example() -> CoDecomposition {
    cycle_with_bottom_right(&[1, 0])
}

/// The 4-cycle above with the leg from bag 2 into `{3,4}` changed to
/// `c ↦ 3, d ↦ 4`; the limit becomes nonempty.
pub fn cycle_example_nonempty() -> CoDecomposition {
    cycle_with_bottom_right(&[0, 1])
}

fn cycle_with_bottom_right(table: &[usize]) -> CoDecomposition {
    let ab = || set(&["a", "b"]);
    let cd = || set(&["c", "d"]);
    CoDecomposition::new(
        SimpleGraph::cycle(4),
        vec![ab(), cd(), cd(), ab()],
        vec![set(&["3", "4"]), cd(), set(&["1", "2"]), ab()],
        vec![
            [leg(&[0, 1], 2), leg(table, 2)],
            [FinFn::identity(2), FinFn::identity(2)],
            [leg(&[0, 1], 2), leg(&[0, 1], 2)],
            [FinFn::identity(2), FinFn::identity(2)],
        ],
    )
    .expect("cycle example is valid")
}

/// A single cospan `1 -> {a,b} <- 1` whose two points land on different
/// elements, so no matching family exists.
pub fn cospan_example() -> CoDecomposition {
    CoDecomposition::new(
        SimpleGraph::path(2),
        vec![set(&["*"]), set(&["*"])],
        vec![set(&["a", "b"])],
        vec![[leg(&[0], 2), leg(&[1], 2)]],
    )
    .expect("cospan example is valid")
}
