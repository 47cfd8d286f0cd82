//! Binary floating-point mirror of the resistance computation, used only to
//! check the exact derivative against finite differences.

use crate::exactnum::to_f64;
use crate::graph::{EdgeId, Multigraph, VertexId};

/// `f64` pseudo-inverse of a graph Laplacian, same rank-correction route as
/// the exact path. Returns `None` for disconnected or empty graphs.
pub struct FloatNetwork {
    index: Vec<VertexId>,
    pinv: Vec<Vec<f64>>,
}

impl FloatNetwork {
    pub fn new(g: &Multigraph) -> Option<Self> {
        Self::with_override(g, None)
    }

    /// Builds the network with one edge's length replaced.
    pub fn with_override(g: &Multigraph, replace: Option<(EdgeId, f64)>) -> Option<Self> {
        let n = g.vertex_count();
        if n == 0 || !g.is_connected() {
            return None;
        }
        let nf = n as f64;
        let mut a = vec![vec![-1.0 / nf; n]; n];
        for e in g.edges().iter().filter(|e| !e.is_loop()) {
            let len = match replace {
                Some((id, l)) if id == e.id => l,
                _ => to_f64(&e.length),
            };
            let c = 1.0 / len;
            let i = g.index_of(e.u)?;
            let j = g.index_of(e.v)?;
            a[i][i] += c;
            a[j][j] += c;
            a[i][j] -= c;
            a[j][i] -= c;
        }
        let mut inv = invert(a)?;
        for row in &mut inv {
            for x in row.iter_mut() {
                *x += 1.0 / nf;
            }
        }
        Some(Self {
            index: g.vertices().to_vec(),
            pinv: inv,
        })
    }

    pub fn resistance(&self, p: VertexId, q: VertexId) -> Option<f64> {
        let a = self.index.binary_search(&p).ok()?;
        let b = self.index.binary_search(&q).ok()?;
        Some(self.pinv[a][a] - 2.0 * self.pinv[a][b] + self.pinv[b][b])
    }
}

/// Gauss-Jordan with partial pivoting.
fn invert(mut a: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for k in 0..n {
        let pivot = (k..n).max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))?;
        if a[pivot][k].abs() < 1e-300 {
            return None;
        }
        a.swap(pivot, k);
        inv.swap(pivot, k);
        let p = a[k][k];
        for j in 0..n {
            a[k][j] /= p;
            inv[k][j] /= p;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = a[i][k];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                a[i][j] -= f * a[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    Some(inv)
}

/// Central difference `(r(L+h) - r(L-h)) / 2h` of `r(s,t)` in the length of `e`.
pub fn finite_difference_derivative(g: &Multigraph, e: EdgeId, s: VertexId, t: VertexId, h: f64) -> Option<f64> {
    let base = to_f64(&g.edge(e).ok()?.length);
    let up = FloatNetwork::with_override(g, Some((e, base + h)))?.resistance(s, t)?;
    let down = FloatNetwork::with_override(g, Some((e, base - h)))?.resistance(s, t)?;
    Some((up - down) / (2.0 * h))
}
