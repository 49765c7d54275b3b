//! Vectorial resilient Boolean functions satisfying the propagation
//! criterion of order k, built from algebraic-geometric codes.
//!
//! The crate is layered bottom-up:
//!
//! - [`field`]: GF(2^w) arithmetic, traces and self-dual bases.
//! - [`codes`]: linear codes, duals, exhaustive distances, binary expansion.
//! - [`curve`]: the projective line and the curve y² + y = x³, places,
//!   divisors and Riemann-Roch spaces.
//! - [`agc`]: functional and residual AG codes.
//! - [`boolfn`]: truth tables, Walsh analysis, propagation and resiliency
//!   oracles, Maiorana-McFarland functions.
//! - [`pipeline`]: the AG-code construction with certificates, the
//!   Kurosawa-Satoh comparator, the Carlet condition checker and presets.

pub mod agc;
pub mod boolfn;
pub mod codes;
pub mod curve;
pub mod field;
pub mod matrix;
pub mod pipeline;
pub mod poly;
pub mod series;
