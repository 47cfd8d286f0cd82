//! Unit-length members of the standard graph families.
//!
//! Vertices are numbered from zero in construction order; for fans and wheels
//! the apex is the last vertex.

use super::{Multigraph, VertexId};

fn vid(i: usize) -> VertexId {
    VertexId(i as u32)
}

/// `P_n`: `n` vertices in a line.
pub fn path(n: usize) -> Multigraph {
    let mut g = Multigraph::with_vertices(n);
    for i in 1..n {
        g.add_unit_edge(vid(i - 1), vid(i)).expect("valid endpoints");
    }
    g
}

/// `C_n`. `C_1` is a single vertex with a loop and `C_2` a pair of parallel edges.
pub fn cycle(n: usize) -> Multigraph {
    assert!(n >= 1, "cycle needs at least one vertex");
    let mut g = path(n);
    g.add_unit_edge(vid(n - 1), vid(0)).expect("valid endpoints");
    g
}

/// Banana (dipole) graph `B_s`: two vertices joined by `s` parallel edges.
pub fn banana(s: usize) -> Multigraph {
    let mut g = Multigraph::with_vertices(2);
    for _ in 0..s {
        g.add_unit_edge(vid(0), vid(1)).expect("valid endpoints");
    }
    g
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Multigraph {
    let mut g = Multigraph::with_vertices(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_unit_edge(vid(i), vid(j)).expect("valid endpoints");
        }
    }
    g
}

fn with_apex(mut g: Multigraph, rim: usize, multiplicity: usize) -> Multigraph {
    let apex = g.add_vertex();
    for i in 0..rim {
        for _ in 0..multiplicity {
            g.add_unit_edge(apex, vid(i)).expect("valid endpoints");
        }
    }
    g
}

/// Fan over `P_n`: an apex joined to every path vertex by `a` parallel edges.
pub fn fan(n: usize, a: usize) -> Multigraph {
    with_apex(path(n), n, a)
}

/// Wheel over `C_n`: an apex joined to every rim vertex by `a` parallel edges.
pub fn wheel(n: usize, a: usize) -> Multigraph {
    with_apex(cycle(n), n, a)
}
