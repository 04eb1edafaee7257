//! Degree-3 Blaschke products `B(z) = z (z - f)/(1 - conj(f) z) (z - g)/(1 - conj(g) z)`.
//! The three solutions of `B(z) = lambda` are the vertices of a 3-periodic
//! inscribed in the unit circle.

use nalgebra::{Matrix3, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{EllipseSpec, PlanePoint};

const UNIT_TOL: f64 = 1e-12;

/// Elementary symmetric functions `(s1, s2, s3)` of the roots of `B(z) = lambda`.
pub fn elementary_symmetric(f: Complex64, g: Complex64, lambda: Complex64) -> [Complex64; 3] {
    let (fc, gc) = (f.conj(), g.conj());
    [f + g + lambda * fc * gc, f * g + lambda * (fc + gc), lambda]
}

fn check_disk(f: Complex64, g: Complex64) -> Result<()> {
    for z in [f, g] {
        if z.norm().is_nan() || z.norm() >= 1.0 {
            return Err(Error::OffDisk(z.norm()));
        }
    }
    Ok(())
}

/// Roots of `z^3 - s1 z^2 + s2 z - s3`, sorted by principal argument.
///
/// Eigenvalues of the companion matrix followed by one Newton step each.
pub fn blaschke_roots(f: Complex64, g: Complex64, lambda: Complex64) -> Result<[Complex64; 3]> {
    check_disk(f, g)?;
    if (lambda.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidArgument(format!("|lambda| = {} is not 1", lambda.norm())));
    }
    let [s1, s2, s3] = elementary_symmetric(f, g, lambda);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let companion = Matrix3::new(s1, -s2, s3, one, zero, zero, zero, one, zero);
    let eig = Schur::new(companion)
        .eigenvalues()
        .ok_or_else(|| Error::InvalidArgument("companion eigenvalues failed".into()))?;
    let mut roots: [Complex64; 3] = [eig[0], eig[1], eig[2]];
    for z in roots.iter_mut() {
        let p = ((*z - s1) * *z + s2) * *z - s3;
        let dp = (3.0 * *z - 2.0 * s1) * *z + s2;
        if dp.norm() > 1e-300 {
            *z -= p / dp;
        }
    }
    roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    Ok(roots)
}

/// The inscribed ellipse of the circle family: foci `f`, `g` and major axis
/// length `|1 - conj(f) g|`.
pub fn blaschke_caustic(f: Complex64, g: Complex64) -> Result<EllipseSpec> {
    check_disk(f, g)?;
    let major = (Complex64::new(1.0, 0.0) - f.conj() * g).norm();
    let focal = (f - g).norm();
    if major.is_nan() || major <= focal {
        return Err(Error::DegenerateCaustic);
    }
    let a = 0.5 * major;
    let c = 0.5 * focal;
    let b = ((a - c) * (a + c)).sqrt();
    let center = PlanePoint::from_complex(0.5 * (f + g));
    let theta = if focal > 0.0 { (g - f).arg() } else { 0.0 };
    Ok(EllipseSpec::new(center, a, b, theta))
}
