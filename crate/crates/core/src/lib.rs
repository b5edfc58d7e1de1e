//! Exact computations around the loop-space functional `Λ(F)` of a
//! homogeneous polynomial `F` with an isolated singularity.
//!
//! - [`exactalg`]: rational sparse polynomials over the loop alphabet `z^i_j`.
//! - [`loopfun`]: Laurent-jet coefficients, `Λ(F)` and its structural checks.
//! - [`grobner`]: Buchberger's algorithm and the Milnor number.
//! - [`cohom`]: Gysin long exact sequences, truncation cohomology and the
//!   renormalized colimit.
//! - [`cli`]: expression parser, check pipeline and reports.

pub mod cli;
pub mod cohom;
pub mod exactalg;
pub mod grobner;
pub mod loopfun;
