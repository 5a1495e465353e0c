//! Graphviz DOT export with deterministic node and edge order.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::coarse::{CoarseWindow, PointId};
use crate::embed::BoundedPermutation;

/// Undirected window graph: one edge per unordered non-diagonal pair,
/// interior points drawn solid.
pub fn window_dot(window: &CoarseWindow) -> String {
    let mut out = String::from("graph window {\n  node [shape=circle];\n");
    for p in 0..window.len() {
        let style = if window.is_interior(p) {
            "solid"
        } else {
            "dashed"
        };
        writeln!(out, "  {p} [label=\"{}\", style={style}];", window.label(p)).unwrap();
    }
    for x in 0..window.len() {
        for &y in window.neighbors(x) {
            if x < y {
                writeln!(out, "  {x} -- {y};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// The rewired-function graph as an undirected forest view; certified
/// points are filled.
pub fn forest_dot(
    window: &CoarseWindow,
    f_star: &[Option<PointId>],
    certified: &BTreeSet<PointId>,
) -> String {
    let mut out = String::from("graph forest {\n  node [shape=circle];\n");
    for p in 0..window.len() {
        if certified.contains(&p) {
            writeln!(
                out,
                "  {p} [label=\"{}\", style=filled, fillcolor=lightblue];",
                window.label(p)
            )
            .unwrap();
        } else {
            writeln!(out, "  {p} [label=\"{}\"];", window.label(p)).unwrap();
        }
    }
    let mut edges = BTreeSet::new();
    for (x, image) in f_star.iter().enumerate() {
        if let Some(y) = image {
            if x != *y {
                edges.insert((x.min(*y), x.max(*y)));
            }
        }
    }
    for (x, y) in edges {
        writeln!(out, "  {x} -- {y};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Movement edges of a permutation: one directed edge per moved point.
pub fn permutation_dot(window: &CoarseWindow, perm: &BoundedPermutation) -> String {
    let mut out = String::from("digraph permutation {\n  node [shape=circle];\n");
    let moved = perm.moved_points();
    let mut shown: BTreeSet<PointId> = BTreeSet::new();
    for &x in &moved {
        shown.insert(x);
        shown.insert(perm.forward[x]);
    }
    for p in shown {
        writeln!(out, "  {p} [label=\"{}\"];", window.label(p)).unwrap();
    }
    for x in moved {
        writeln!(out, "  {x} -> {};", perm.forward[x]).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarse::{make_window, SpaceSpec};

    #[test]
    fn tree_window_dot_counts() {
        let w = make_window(SpaceSpec::Tree, 2).unwrap();
        let dot = window_dot(&w);
        assert_eq!(dot.matches(" -- ").count(), 16);
        assert_eq!(dot.matches("label=").count(), 17);
    }

    #[test]
    fn forest_dot_shows_every_point_and_styles_certified() {
        use crate::coarse::EntourageRel;
        use crate::forest::eliminate_periodic;
        use crate::harem::harem_matching;
        let w = make_window(SpaceSpec::Tree, 3).unwrap();
        let rel = EntourageRel::generator_minus_diagonal(&w);
        let f = harem_matching(&w, &rel, 4).unwrap();
        let extraction = eliminate_periodic(&w, &f);
        let dot = forest_dot(&w, &extraction.f_star, &extraction.certified);
        assert_eq!(dot.matches("label=").count(), w.len());
        assert_eq!(dot.matches("fillcolor").count(), extraction.certified.len());
    }

    #[test]
    fn identity_permutation_has_no_edges() {
        let w = make_window(SpaceSpec::Line, 3).unwrap();
        let dot = permutation_dot(&w, &BoundedPermutation::identity(w.len()));
        assert_eq!(dot.matches(" -> ").count(), 0);
    }

    #[test]
    fn deterministic_output() {
        let w = make_window(SpaceSpec::Tree, 3).unwrap();
        assert_eq!(window_dot(&w), window_dot(&w));
    }
}
