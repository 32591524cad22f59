//! Refocusing distances and depth of field for the shift-and-integrate
//! parameter `a`.
//!
//! The chosen ray pair leaves the outermost pixel (`k = 0`) of micro lens
//! `j = a(M−1)/2` and the opposite pixel of micro lens `−j`. The pair meets at
//! `z*` in the MLA frame; the image distance grows by `d_a' = −z*` and the
//! thin-lens conjugate of `b_U + d_a'` is the refocused object plane.

use serde::{Deserialize, Serialize};

use crate::config::CameraConfig;
use crate::error::{Error, Result};
use crate::optics::{object_distance, ConjugateDistance, FOCAL_POINT_TOLERANCE};
use crate::ray::{image_ray, Ray};
use crate::solver::intersect_rays;

/// Below this `|a|` both rays leave nearly the same micro lens and the depth
/// of field collapses.
pub const DEFAULT_A_MIN: f64 = 0.05;

/// Which pixel position the selected rays start from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Border {
    /// Pixel centers.
    None,
    /// Pixel borders half a pixel toward the micro image center.
    Inner,
    /// Pixel borders half a pixel away from the micro image center.
    Outer,
}

impl Border {
    fn offset(self) -> f64 {
        match self {
            Border::None => 0.0,
            Border::Inner => 0.5,
            Border::Outer => -0.5,
        }
    }
}

/// Near and far depth-of-field limits, measured from H1U.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DepthOfField {
    pub near_from_h1u: ConjugateDistance,
    pub far_from_h1u: ConjugateDistance,
    h1u_from_mla: f64,
}

impl DepthOfField {
    pub fn near_from_mla(&self) -> ConjugateDistance {
        self.near_from_h1u.offset(self.h1u_from_mla)
    }

    pub fn far_from_mla(&self) -> ConjugateDistance {
        self.far_from_h1u.offset(self.h1u_from_mla)
    }
}

/// Refocused plane for one shift parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct RefocusResult {
    pub a: f64,
    /// `d_a'`, positive when the image distance grows.
    pub elongation: f64,
    pub intersection_y: f64,
    /// `b_a = b_U + d_a'`, from H2U.
    pub effective_image_distance: f64,
    pub object_distance_from_h1u: ConjugateDistance,
    /// `d_a`, from the MLA plane.
    pub distance_from_mla: ConjugateDistance,
    /// `None` when not requested.
    pub dof: Option<Result<DepthOfField>>,
}

fn check_shift(a: f64) -> Result<()> {
    if a.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFiniteValue { field: "a", value: a })
    }
}

/// The symmetric image-side ray pair for shift `a`.
pub fn select_refocus_rays(config: &CameraConfig, a: f64, border: Border) -> (Ray, Ray) {
    let j = a * (config.resolution() as f64 - 1.0) / 2.0;
    let last = config.resolution() as f64 - 1.0;
    let off = border.offset();
    (image_ray(config, off, j), image_ray(config, last - off, -j))
}

/// Image distance from H2U at which the selected pair converges.
fn converged_image_distance(config: &CameraConfig, a: f64, border: Border) -> Result<(f64, f64)> {
    let (upper, lower) = select_refocus_rays(config, a, border);
    let hit = intersect_rays(&upper, &lower)?;
    Ok((config.image_distance() - hit.z, hit.y))
}

fn refocused_object(config: &CameraConfig, image: f64) -> Result<ConjugateDistance> {
    object_distance(config.main_lens_focal(), image).map_err(|e| match e {
        Error::VirtualObject { focal, image } => Error::VirtualRefocusPlane { focal, image },
        other => other,
    })
}

/// Refocused object plane for shift `a`, without depth of field.
pub fn refocus(config: &CameraConfig, a: f64) -> Result<RefocusResult> {
    check_shift(a)?;
    let (upper, lower) = select_refocus_rays(config, a, Border::None);
    let hit = intersect_rays(&upper, &lower)?;
    let elongation = -hit.z;
    let effective = config.image_distance() + elongation;
    let y = hit.y;
    let object = refocused_object(config, effective)?;
    Ok(RefocusResult {
        a,
        elongation,
        intersection_y: y,
        effective_image_distance: effective,
        object_distance_from_h1u: object,
        distance_from_mla: object.offset(config.h1u_from_mla()),
        dof: None,
    })
}

/// Depth-of-field limits for shift `a` with the default `a_min`.
pub fn refocus_dof(config: &CameraConfig, a: f64) -> Result<DepthOfField> {
    refocus_dof_with(config, a, DEFAULT_A_MIN)
}

/// Depth-of-field limits from the half-pixel border ray pairs.
///
/// The pair converging at the shorter image distance bounds the far limit.
/// For `a > 0` that is the outer pair. A far pair converging inside the focal
/// length puts the far limit at infinity.
pub fn refocus_dof_with(config: &CameraConfig, a: f64, a_min: f64) -> Result<DepthOfField> {
    check_shift(a)?;
    if a.abs() < a_min {
        return Err(Error::DegenerateDOF { a: a.abs(), a_min });
    }
    let (inner, _) = converged_image_distance(config, a, Border::Inner)?;
    let (outer, _) = converged_image_distance(config, a, Border::Outer)?;
    let (near_image, far_image) = if inner >= outer { (inner, outer) } else { (outer, inner) };
    let focal = config.main_lens_focal();
    let near = refocused_object(config, near_image)?;
    let far = if far_image - focal < -FOCAL_POINT_TOLERANCE * focal {
        ConjugateDistance::Infinite
    } else {
        refocused_object(config, far_image)?
    };
    Ok(DepthOfField { near_from_h1u: near, far_from_h1u: far, h1u_from_mla: config.h1u_from_mla() })
}

/// Refocus every shift in `shifts`, attaching depth of field where defined.
///
/// Per-shift failures are returned in place; only an empty list fails as a whole.
pub fn refocus_series(config: &CameraConfig, shifts: &[f64]) -> Result<Vec<Result<RefocusResult>>> {
    if shifts.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(shifts
        .iter()
        .map(|&a| {
            let mut result = refocus(config, a)?;
            result.dof = Some(refocus_dof(config, a));
            Ok(result)
        })
        .collect())
}
