//! Shared proptest strategies.

use proptest::prelude::*;

use crate::exactnum::{rat, Rational};
use crate::graph::{Multigraph, VertexId};

fn length() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(rat(1, 1)), Just(rat(2, 1)), Just(rat(1, 2)), Just(rat(3, 2)), Just(rat(3, 1))]
}

/// Connected multigraph: a random spanning tree plus extra edges (parallel
/// edges and loops allowed).
pub(crate) fn connected(max_n: usize, max_extra: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let tree = proptest::collection::vec((any::<prop::sample::Index>(), length()), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, length()), 0..=max_extra);
        (tree, extra).prop_map(move |(tree, extra)| {
            let mut g = Multigraph::with_vertices(n);
            for (i, (parent, len)) in tree.into_iter().enumerate() {
                let child = i + 1;
                let p = parent.index(child);
                g.add_edge(VertexId(p as u32), VertexId(child as u32), len).unwrap();
            }
            for (a, b, len) in extra {
                g.add_edge(VertexId(a as u32), VertexId(b as u32), len).unwrap();
            }
            g
        })
    })
}

/// Same shape with every edge of unit length and no loops.
pub(crate) fn connected_unit(max_n: usize, max_extra: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 0..=max_extra);
        (tree, extra).prop_map(move |(tree, extra)| {
            let mut g = Multigraph::with_vertices(n);
            for (i, parent) in tree.into_iter().enumerate() {
                let child = i + 1;
                g.add_unit_edge(VertexId(parent.index(child) as u32), VertexId(child as u32)).unwrap();
            }
            for (a, b) in extra.into_iter().filter(|(a, b)| a != b) {
                g.add_unit_edge(VertexId(a as u32), VertexId(b as u32)).unwrap();
            }
            g
        })
    })
}
