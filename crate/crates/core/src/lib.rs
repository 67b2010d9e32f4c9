//! Exact-arithmetic toolkit for geometric (Fubini) polynomial families
//! and related numbers.
//!
//! Everything is computed over arbitrary-precision rationals; no
//! floating point anywhere. The crate provides:
//!
//! - [`exactnum`]: big rationals, modular residues, binomial /
//!   Pochhammer / Stirling and r-Stirling tables;
//! - [`polyalg`]: dense exact polynomials, truncated power series, the
//!   gamma-moment transform, and a reference EGF builder;
//! - [`geomfamily`]: constructors for exponential (Bell), r-Bell,
//!   geometric, higher-order and two-variable geometric polynomials,
//!   each with independent construction routes;
//! - [`bernoulli`]: Bernoulli and p-Bernoulli numbers (two routes);
//! - [`identities`]: a machine-checkable catalog of polynomial/number
//!   identities with a grid-sweep driver;
//! - [`congruences`]: prime-modulus checks with dual evaluation paths
//!   (exact-then-reduce and native mod-q);
//! - [`series`]: certified infinite-series evaluation with exact
//!   rational tail bounds.

pub mod bernoulli;
pub mod congruences;
pub mod error;
pub mod exactnum;
pub mod geomfamily;
pub mod identities;
pub mod polyalg;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use exactnum::Rational;
