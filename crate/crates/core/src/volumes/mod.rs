//! Gaussian projections onto cones and everything measured with them:
//! intrinsic volumes (sampled and closed form), statistical dimension,
//! Grassmann and solid angles, and Haar-random rotations.

mod angles;
mod estimate;
mod exact;
mod projector;
mod rotation;
mod sampling;

pub use angles::{external_angle, internal_angle, solid_angle, tangent_cone, AngleValue};
pub use estimate::{
    estimate_iv, grassmann_angles, iv_polynomial, linear_se, proportion_se, statdim_mc,
    statistical_dimension, IVEstimate, IVRef,
};
pub use exact::{exact_iv, subspace_iv, IVExact, Provenance};
pub use projector::{moreau_project, Hit, Moreau, Projection, Projector, MEMBERSHIP_TOL};
pub use rotation::{haar_rotation, RotationMatrix};
pub use sampling::{derive_seed, for_each_worker, gaussian_vec, stream_rng, SampleConfig};
