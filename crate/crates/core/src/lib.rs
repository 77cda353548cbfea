//! Exact computations around the vertex function of `T*Gr(k,n)` and its
//! `ħ → ∞` limit.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact: big
//! integers, rationals, univariate polynomials and rational functions,
//! sparse Laurent polynomials and truncated power series.
//!
//! * [`combinatorics`]: the shape `(k, n)`, its boxes and weights, and the
//!   flow graph whose edges define the superpotential.
//! * [`superpotential`]: the Laurent superpotential, constant terms of its
//!   powers (two independent engines) and the A-series.
//! * [`vertex`]: the combinatorial vertex coefficients and their
//!   non-equivariant limit.
//! * [`master`]: the formal expansion of the master function, which gives
//!   the vertex coefficients as polynomials in `ω = ħ/ε`, and the `ħ → ∞`
//!   limit check.
//! * [`dwork`]: `p`-power truncations of the A-series and the Dwork
//!   congruences.
//! * [`polytope`]: the Newton polytope of the superpotential and its
//!   reflexivity certificate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod combinatorics;
pub mod dwork;
mod error;
pub mod master;
pub mod polytope;
pub mod superpotential;
pub mod vertex;

pub use error::{Error, Result};
