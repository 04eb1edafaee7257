//! Admissible pairs, their circle-normal form and the 3-periodic family.

mod blaschke;
mod closure;
mod family;
mod pair;

pub use blaschke::{blaschke_caustic, blaschke_roots, elementary_symmetric};
pub use closure::{closure_check, ClosureCheck};
pub use family::{lambda_grid, sample_family, vertices_at, TriangleSample};
pub use pair::{
    build_named_pair, cayley_residual, concentric_tilt, confocal_delta, generic_pair, FamilyHandle, NamedFamily,
    PairSpec, ShearFrame, ADMISSIBLE_TOL,
};
