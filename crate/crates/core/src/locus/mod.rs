//! Triangle-center loci: sampling, conic fitting and closed-form predictions.

mod fit;
mod predict;

pub use fit::{classify_locus, diameter, fit_conic, ConicFit, LocusShape, STATIONARY_DIAMETER};
pub use predict::{
    acuteness_profile, axis_aligned_x5_axes, circular_loci_circumpair, confocal_x3_axes, confocal_x5_axes,
    homothetic_x3_axes, lemma_ellipse, predicted_locus, prop3_predicted, AcutenessProfile, CircleLocus, LemmaLocus,
    PredictedLocus, Prop3Prediction, ACUTENESS_SAMPLES, SEGMENT_TOL,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::centers::CenterSpec;
use crate::engine::{sample_family, FamilyHandle};
use crate::error::{Error, Result};
use crate::geom::PlanePoint;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub index: usize,
    pub lambda: Complex64,
    pub point: PlanePoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusSamples {
    pub samples: usize,
    pub points: Vec<LocusPoint>,
    /// Indices where the center was undefined.
    pub gaps: Vec<usize>,
}

impl LocusSamples {
    pub fn positions(&self) -> Vec<PlanePoint> {
        self.points.iter().map(|p| p.point).collect()
    }

    /// CSV with header `lambda_index,lambda_re,lambda_im,x,y`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda_index,lambda_re,lambda_im,x,y\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{:.17e},{:.17e},{:.17e},{:.17e}\n",
                p.index, p.lambda.re, p.lambda.im, p.point.x, p.point.y
            ));
        }
        out
    }
}

pub fn sample_locus(h: &FamilyHandle, center: &CenterSpec, n: usize) -> Result<LocusSamples> {
    let mut points = Vec::with_capacity(n);
    let mut gaps = Vec::new();
    for (index, s) in sample_family(h, n)?.into_iter().enumerate() {
        match center.eval(&s.triangle()) {
            Ok(point) => points.push(LocusPoint { index, lambda: s.lambda, point }),
            Err(Error::RightTriangle | Error::TangentialUndefined) => gaps.push(index),
            Err(e) => return Err(e),
        }
    }
    Ok(LocusSamples { samples: n, points, gaps })
}
