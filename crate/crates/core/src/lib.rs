//! Arboricity-family graph parameters with certificates.
//!
//! Everything here is `no_std` (with `alloc`): exact integer and rational
//! computation of arboricity, pseudoarboricity, degree-f pseudoarboricity,
//! fractional degree-f arboricity, Entringer–Tolman orientations and the
//! constructive degree-f branching decompositions. IO lives in the
//! `arborize` crate.
#![no_std]

extern crate alloc;

pub mod analytic;
pub mod branchings;
pub mod certificate;
pub mod density;
pub mod dsu;
pub mod flow;
pub mod fractional;
pub mod gadgets;
pub mod graph;
pub mod lp;
pub mod oracle;
pub mod orient;

pub use certificate::{verify_certificate, CertKind, DecompositionCertificate, GraphRef, Violation};
pub use graph::{DegreeFn, Digraph, Edge, Multigraph};

/// Exact rational used for every LP quantity.
pub type Rational = num_rational::BigRational;
