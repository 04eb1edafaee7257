//! Seeded random test pairs and triangles.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::centers::Triangle;
use crate::engine::{concentric_tilt, generic_pair, FamilyHandle, NamedFamily};
use crate::geom::PlanePoint;

pub const SEED_ENV: &str = "PONCELET_SEED";
pub const DEFAULT_SEED: u64 = 20_210_301;

/// Seed from `PONCELET_SEED`, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng_from_env() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed_from_env())
}

fn disk_point(rng: &mut impl Rng, r_min: f64, r_max: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(r_min..r_max), rng.gen_range(0.0..TAU))
}

fn outer_axes(rng: &mut impl Rng) -> (f64, f64) {
    let b = rng.gen_range(0.6..1.0);
    (rng.gen_range(1.1 * b..2.0), b)
}

/// Blaschke pair with `|f|, |g|` in `[0.2, 0.7]` and a non-circular outer ellipse.
pub fn random_generic_pair(rng: &mut impl Rng) -> FamilyHandle {
    loop {
        let (a, b) = outer_axes(rng);
        let (f, g) = (disk_point(rng, 0.2, 0.7), disk_point(rng, 0.2, 0.7));
        if let Ok(h) = generic_pair(a, b, f, g) {
            return h;
        }
    }
}

/// Blaschke pair with `g = -f`, hence concentric.
pub fn random_concentric_pair(rng: &mut impl Rng) -> FamilyHandle {
    loop {
        let (a, b) = outer_axes(rng);
        let f = disk_point(rng, 0.2, 0.7);
        if let Ok(h) = generic_pair(a, b, f, -f) {
            return h;
        }
    }
}

/// Concentric tilted family with `cos^2` of the tilt in `[0.02, 0.98]`.
pub fn random_tilted_family(rng: &mut impl Rng) -> NamedFamily {
    loop {
        let (a, b) = outer_axes(rng);
        let ac = rng.gen_range(0.1..b);
        let bc = rng.gen_range(0.05..ac);
        let Ok(theta) = concentric_tilt(a, b, ac, bc) else { continue };
        let cos2 = theta.cos().powi(2);
        let family = NamedFamily::ConcentricTilted { a, b, ac, bc };
        if (0.02..=0.98).contains(&cos2) && family.build().is_ok() {
            return family;
        }
    }
}

/// Triangle with vertices in `[-1, 1]^2` and area at least `min_area`.
pub fn random_triangle(rng: &mut impl Rng, min_area: f64) -> Triangle {
    loop {
        let mut p = || PlanePoint::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let t = Triangle::new(p(), p(), p());
        if t.area() >= min_area {
            return t;
        }
    }
}
