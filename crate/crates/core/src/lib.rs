//! Exact solver toolkit for the su(m) Haldane–Shastry spin chain of D_N type
//! and the spin Sutherland model it freezes out of.
//!
//! The crate covers the full pipeline:
//!
//! - [`orthopoly`]: Jacobi polynomial evaluation and guaranteed root isolation.
//! - [`lattice`]: chain lattice sites as certified equilibria of the scalar
//!   potential (endpoints at 0 and π/2 plus arccos-mapped Jacobi roots).
//! - [`spinops`]: the spin exchange/reversal algebra on the m^N product basis
//!   and dense assembly of the chain Hamiltonians.
//! - [`eigen`]: dense symmetric eigensolver (Householder + implicit-shift QL)
//!   and conversion of an integer spectrum into an exact q-polynomial.
//! - [`qseries`]: exact big-integer q-polynomials and truncated q-series,
//!   the closed-form chain partition function, the large-coupling dynamical
//!   and scalar partition series, and brute-force enumeration oracles.
//! - [`dunkl`]: symbolic Dunkl operators of D_N type with the coupling kept
//!   as a formal parameter, and the triangularization of H' = Σ J_k².
//! - [`alcove`]: Weyl-alcove geometry, reduction to the fundamental alcove,
//!   coroot-lattice folding, and tiling verification.
//! - [`verify`]: the end-to-end acceptance suites wiring all of the above
//!   against each other.
//!
//! With the default `parallel` feature the data-parallel inner loops (matrix
//! assembly, Monte Carlo folding, composition sums, symbolic row reduction)
//! run on rayon; building with `--no-default-features` selects the sequential
//! fallback with bit-identical results.

pub mod alcove;
pub mod dunkl;
pub mod eigen;
pub mod lattice;
pub mod orthopoly;
mod par;
pub mod qseries;
pub mod spinops;
pub mod verify;

pub use eigen::Spectrum;
pub use lattice::{BcSites, DnSites};
pub use qseries::{QPolynomial, QSeries};
pub use spinops::{ChainMatrix, SpinConfig};
