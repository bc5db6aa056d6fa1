//! Exact combinatorics and Monte Carlo intrinsic volumes for polyhedral cones
//! and central hyperplane arrangements.
//!
//! * [`exactlin`]: rational linear algebra and LP feasibility.
//! * [`cone`]: double description, face lattices, polarity.
//! * [`volumes`]: Gaussian projections, intrinsic volumes, angles, Haar rotations.
//! * [`arrangement`]: intersection lattices, characteristic polynomials, regions.
//! * [`identities`]: executable checks of the classical identities tying these together.
//! * [`library`]: the bundled example cones and arrangements.

pub mod error;
pub mod arrangement;
pub mod cone;
pub mod exactlin;
pub mod identities;
pub mod library;
pub mod poly;
pub mod volumes;

pub use cone::{Cone, Face, FaceLattice};
pub use error::{ConicError, Result};
