//! Exact-arithmetic toolkit for bipartite quantum correlation sets.
//!
//! The crate is organized around five layers:
//!
//! * [`numkernel`] — small dense symmetric-matrix primitives (Jacobi
//!   eigenvalues, psd tests, principal minors, Schur complements, pivoted
//!   Gram factorization).
//! * [`chordal`] — pattern graphs, chordality recognition and psd
//!   completion of partial matrices with chordal pattern.
//! * [`corsets`] — correlation-set membership: behavior ingestion,
//!   pairwise-angle coordinates, inequality evaluators, exact Cor(2,m)
//!   membership, Cor(3,3) feasibility with certified witnesses, and
//!   quantum point sampling.
//! * [`fme`] — exact-rational linear inequality systems in pi-units,
//!   Fourier-Motzkin elimination, rational-simplex implication and
//!   redundancy removal.
//! * [`polytope`] — exact double-description conversions between facet
//!   and vertex representations, cut and metric polytope generators.
//!
//! [`json`] holds the wire formats shared by the CLI and the fuzz targets.

pub mod chordal;
pub mod corsets;
pub mod fme;
pub mod json;
pub mod numkernel;
pub mod polytope;
