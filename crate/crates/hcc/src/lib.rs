//! Hypergeometric families of sense-preserving planar harmonic mappings.
//!
//! This crate constructs harmonic maps `f = h + conj(g)` on the unit disk
//! whose analytic part is `z F(a,b;a+b;z)` or `z F(a,b;a+b;z^2)` and whose
//! dilatation `g'/h'` is `alpha z^m`. It certifies close-to-convexity class
//! membership two independent ways (truncated coefficient sums and
//! closed-form Beta expressions), and for even `m` lifts the maps to minimal
//! graphs via the Weierstrass-Enneper formula, exporting validated meshes and
//! planar grid images.
//!
//! Modules:
//! - [`specfun`]: Pochhammer, log-Gamma/Beta, Gaussian hypergeometric
//!   coefficients, Stirling limit classification.
//! - [`series`]: truncated power-series arithmetic with tail estimates.
//! - [`mapping`]: the two construction families, evaluation, dilatation,
//!   Jacobian, pre-shear, and closed-form oracles.
//! - [`criteria`]: coefficient-sum and pointwise class certificates,
//!   admissibility regions, closed-form sum limits.
//! - [`surface`]: minimal-surface lifts, meshes, differential-geometry
//!   residuals.
//! - [`io`]: map documents (JSON), OBJ meshes, CSV/SVG planar images.

// negated comparisons are deliberate: they route NaN into the error path,
// which `partial_cmp`-style rewrites would silently accept
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod criteria;
pub mod error;
pub mod gallery;
pub mod grid;
pub mod io;
pub mod mapping;
pub mod series;
pub mod specfun;
pub mod surface;

pub use error::{Error, Result};
pub use num_complex::Complex64;
