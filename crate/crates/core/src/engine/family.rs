use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::blaschke::blaschke_roots;
use super::pair::FamilyHandle;
use crate::centers::Triangle;
use crate::error::{Error, Result};
use crate::geom::PlanePoint;

/// One 3-periodic of a family; `sides[i]` is opposite `vertices[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleSample {
    pub lambda: Complex64,
    pub vertices: [PlanePoint; 3],
    pub sides: [f64; 3],
}

impl TriangleSample {
    pub fn triangle(&self) -> Triangle {
        Triangle { vertices: self.vertices }
    }

    /// Largest tangency defect of the three side lines against the caustic.
    pub fn tangency_residual(&self, h: &FamilyHandle) -> f64 {
        let v = self.vertices;
        (0..3).map(|i| h.pair.inner.line_tangency(v[(i + 1) % 3], v[(i + 2) % 3])).fold(0.0, f64::max)
    }

    /// Largest distance-like defect of the vertices against the outer ellipse.
    pub fn outer_residual(&self, h: &FamilyHandle) -> f64 {
        self.vertices.iter().map(|&p| h.pair.outer.implicit(p).abs()).fold(0.0, f64::max)
    }
}

pub fn vertices_at(h: &FamilyHandle, lambda: Complex64) -> Result<TriangleSample> {
    let roots = blaschke_roots(h.f, h.g, lambda)?;
    let vertices = roots.map(|z| PlanePoint::from_complex(h.affine(z)));
    let sides = Triangle { vertices }.sidelengths()?;
    Ok(TriangleSample { lambda, vertices, sides })
}

/// `λ_k = exp(2πik/n)` for `k = 0..n`.
pub fn lambda_grid(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64)).collect()
}

pub fn sample_family(h: &FamilyHandle, n: usize) -> Result<Vec<TriangleSample>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 samples, got {n}")));
    }
    lambda_grid(n).into_iter().map(|l| vertices_at(h, l)).collect()
}
