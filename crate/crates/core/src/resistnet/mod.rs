//! Effective resistance and voltage functions through the exact Laplacian
//! pseudo-inverse.
//!
//! Each edge is a resistor whose resistance is the edge length. For a
//! connected graph on `n` vertices the pseudo-inverse is obtained from a single
//! exact inverse,
//!
//! ```text
//! L+ = (L - J/n)^-1 + J/n
//! ```
//!
//! with `J` the all-ones matrix. Resistance and voltage are then read off
//! entries of `L+`:
//!
//! ```text
//! r(p, q)    = l+pp - 2 l+pq + l+qq
//! j_p(q, s)  = l+pp - l+pq - l+ps + l+qs
//! ```

pub mod float;
mod laws;

pub use laws::*;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{MatrixError, Rational, RationalMatrix};
use crate::graph::{EdgeId, GraphError, Multigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("edge {edge} is a bridge; {law} requires a non-bridge edge")]
    Bridge { edge: EdgeId, law: &'static str },
    #[error("the shorted vertices coincide; {law} requires p != q")]
    SameVertex { law: &'static str },
    #[error("new length must be positive")]
    NonPositiveLength,
}

/// Connected resistive network with its Laplacian and pseudo-inverse cached.
#[derive(Clone, Debug)]
pub struct Network {
    graph: Multigraph,
    laplacian: RationalMatrix,
    pseudo_inverse: RationalMatrix,
}

impl Network {
    pub fn new(graph: Multigraph) -> Result<Self, NetworkError> {
        let laplacian = laplacian(&graph)?;
        let pseudo_inverse = pseudo_inverse(&laplacian)?;
        Ok(Self {
            graph,
            laplacian,
            pseudo_inverse,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn laplacian(&self) -> &RationalMatrix {
        &self.laplacian
    }

    pub fn pseudo_inverse(&self) -> &RationalMatrix {
        &self.pseudo_inverse
    }

    fn l(&self, a: usize, b: usize) -> &Rational {
        &self.pseudo_inverse[(a, b)]
    }

    /// Effective resistance `r(p, q)`.
    pub fn resistance(&self, p: VertexId, q: VertexId) -> Result<Rational, NetworkError> {
        let a = self.graph.check_vertex(p)?;
        let b = self.graph.check_vertex(q)?;
        Ok(self.l(a, a) - self.l(a, b) * Rational::from_integer(2.into()) + self.l(b, b))
    }

    /// Voltage `j_z(x, y)`: potential at `x` when unit current enters at `y`
    /// and leaves at `z`, with `z` grounded.
    pub fn voltage(&self, z: VertexId, x: VertexId, y: VertexId) -> Result<Rational, NetworkError> {
        let iz = self.graph.check_vertex(z)?;
        let ix = self.graph.check_vertex(x)?;
        let iy = self.graph.check_vertex(y)?;
        Ok(self.l(iz, iz) - self.l(iz, ix) - self.l(iz, iy) + self.l(ix, iy))
    }

    /// True iff removing `e` leaves `s` and `t` in different components.
    pub fn separates(&self, e: EdgeId, s: VertexId, t: VertexId) -> Result<bool, NetworkError> {
        self.graph.edge(e)?;
        self.graph.check_vertex(s)?;
        self.graph.check_vertex(t)?;
        Ok(!self.graph.reachable_avoiding(s, Some(e)).contains(&t))
    }
}

/// Weighted Laplacian: conductance `1/L` per edge, loops ignored.
pub fn laplacian(g: &Multigraph) -> Result<RationalMatrix, NetworkError> {
    if g.vertex_count() == 0 {
        return Err(NetworkError::Empty);
    }
    if !g.is_connected() {
        return Err(NetworkError::Disconnected);
    }
    let n = g.vertex_count();
    let mut lap = RationalMatrix::zeros(n, n);
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        let a = g.check_vertex(e.u)?;
        let b = g.check_vertex(e.v)?;
        let c = e.length.recip();
        lap[(a, a)] += &c;
        lap[(b, b)] += &c;
        lap[(a, b)] -= &c;
        lap[(b, a)] -= &c;
    }
    Ok(lap)
}

/// Moore-Penrose pseudo-inverse of a connected-graph Laplacian.
pub fn pseudo_inverse(lap: &RationalMatrix) -> Result<RationalMatrix, NetworkError> {
    let n = lap.rows();
    if n == 0 {
        return Err(NetworkError::Empty);
    }
    let j_over_n = RationalMatrix::ones(n, n).scale(&Rational::new(1.into(), (n as i64).into()));
    let inner = lap.sub(&j_over_n)?;
    let inv = inner.invert().map_err(|e| match e {
        MatrixError::Singular { .. } => NetworkError::Disconnected,
        other => NetworkError::Matrix(other),
    })?;
    Ok(inv.add(&j_over_n)?)
}

/// Residuals of the four Penrose conditions plus `L+ 1 = 0`; all zero for a
/// true pseudo-inverse.
pub fn penrose_residuals(lap: &RationalMatrix, pinv: &RationalMatrix) -> Vec<RationalMatrix> {
    let lpl = lap.mul(pinv).and_then(|m| m.mul(lap)).expect("square");
    let plp = pinv.mul(lap).and_then(|m| m.mul(pinv)).expect("square");
    let ones = vec![Rational::from_integer(1.into()); lap.rows()];
    let kernel = pinv.apply(&ones).expect("square");
    vec![
        lpl.sub(lap).expect("square"),
        plp.sub(pinv).expect("square"),
        pinv.sub(&pinv.transpose()).expect("square"),
        RationalMatrix::from_fn(kernel.len(), 1, |i, _| kernel[i].clone()),
    ]
}

pub fn is_zero_matrix(m: &RationalMatrix) -> bool {
    m.entries().iter().all(Zero::is_zero)
}
