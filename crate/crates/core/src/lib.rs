//! Exact effective resistance, voltage functions and spanning-tree counts on
//! weighted multigraphs, together with the identities that relate them under
//! edge deletion, edge contraction, vertex identification and vertex deletion.
//!
//! Everything is computed over arbitrary-precision rationals, so identities
//! are checked to a residual of literally zero.

pub mod exactnum;
pub mod graph;
pub mod polyseq;
pub mod reduction;
pub mod resistnet;
pub mod spantree;
pub mod verify;

#[cfg(test)]
mod testgen;
