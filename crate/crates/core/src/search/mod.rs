//! Coaxial-pencil scans and the search for points of stationary power.

mod nelder_mead;
mod pencil;
mod stationary;

pub use nelder_mead::{nelder_mead, SimplexOptions, SimplexResult};
pub use pencil::{pencil_invariance_scan, pencil_member, pencil_power, PencilMember};
pub use stationary::{
    stationary_power_point, PowerField, SearchOptions, StationaryPointResult, VarianceField, DEFAULT_GRID,
    SEARCH_SAMPLES,
};
