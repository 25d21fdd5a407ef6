//! Isogeometric analysis of variable-thickness isotropic and laminated
//! composite plates: NURBS discretization, first-order shear deformation
//! kinematics with von-Karman nonlinearity, and equilibrium-path tracing
//! by Newton and arc-length continuation.
//!
//! The crate is `no_std`-compatible (`default-features = false` plus the
//! `libm` feature); all analysis types allocate through `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` guards reject NaN where `x <= 0.0` would let it through
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod analysis;
pub mod assembly;
pub mod error;
pub mod laminate;
pub mod model;
pub mod nurbs;
pub mod quadrature;
pub mod solve;
pub mod thickness;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
