//! Virtual viewpoints, stereo baselines and triangulation depth planes.
//!
//! All pixels sharing a relative index `i` form one sub-aperture viewpoint.
//! Their object-side chief rays cross at a single point on the entrance
//! pupil plane, so any two adjacent micro lenses locate the viewpoint.

use crate::config::CameraConfig;
use crate::error::{Error, Result};
use crate::optics::ConjugateDistance;
use crate::ray::object_ray;
use crate::solver::{intersect_rays, IntersectionPoint};

/// Virtual camera formed by relative pixel index `i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewpoint {
    pub i: f64,
    /// Entrance pupil position from H1U.
    pub z_pupil: f64,
    pub y: f64,
}

/// Viewpoint `i` located with micro lenses 0 and 1.
pub fn viewpoint(config: &CameraConfig, i: f64) -> Result<Viewpoint> {
    viewpoint_with_lenses(config, i, 0.0)
}

/// Viewpoint `i` located with micro lenses `j` and `j + 1`.
pub fn viewpoint_with_lenses(config: &CameraConfig, i: f64, j: f64) -> Result<Viewpoint> {
    let k = config.center_index() + i;
    let hit = intersect_rays(&object_ray(config, k, j), &object_ray(config, k, j + 1.0))?;
    Ok(Viewpoint { i, z_pupil: hit.z, y: hit.y })
}

/// Intersection of `f̂(i, j)` with `f̂(i + G, j + 1)`, the pairing that mixes
/// viewpoint indices. Unlike [`viewpoint`] this generally misses the pupil plane.
pub fn mixed_index_intersection(config: &CameraConfig, i: f64, gap: i32, j: f64) -> Result<IntersectionPoint> {
    let k = config.center_index() + i;
    intersect_rays(&object_ray(config, k, j), &object_ray(config, k + gap as f64, j + 1.0))
}

/// Separation of viewpoints `G` indices apart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Baseline {
    pub gap: i32,
    pub baseline: f64,
    /// Entrance pupil position from H1U.
    pub entrance_pupil_from_h1u: f64,
}

/// Baseline `B_G` relative to the central viewpoint.
///
/// Object space is inverted, so viewpoint `G > 0` sits at negative height;
/// `B_G` is signed such that it is positive for `G > 0` and linear in `G`.
pub fn baseline(config: &CameraConfig, gap: i32) -> Result<Baseline> {
    let reference = viewpoint(config, 0.0)?;
    let other = viewpoint(config, gap as f64)?;
    Ok(Baseline { gap, baseline: reference.y - other.y, entrance_pupil_from_h1u: reference.z_pupil })
}

/// Triangulated depth plane `Z(G, Δx)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DepthPlane {
    pub from_h1u: ConjugateDistance,
    pub from_mla: ConjugateDistance,
    /// Transverse height of the crossing, `None` at infinity.
    pub y: Option<f64>,
}

/// Depth plane seen with disparity `dx` (micro lens units) between the
/// central viewpoint and the viewpoint `gap` indices away.
///
/// Positive disparity gives planes nearer than the focus plane; parallel
/// rays give a plane at infinity. Crossings behind H1U or behind the
/// viewpoints on the entrance pupil are virtual.
pub fn triangulate(config: &CameraConfig, gap: i32, disparity: f64) -> Result<DepthPlane> {
    if gap == 0 {
        return Err(Error::ZeroGap);
    }
    if !disparity.is_finite() {
        return Err(Error::NonFiniteValue { field: "disparity", value: disparity });
    }
    let c = config.center_index();
    let reference = object_ray(config, c, 0.0);
    let other = object_ray(config, c + gap as f64, -disparity);
    let pupil = viewpoint(config, 0.0)?.z_pupil;
    match intersect_rays(&reference, &other) {
        Ok(hit) if hit.z <= pupil.max(0.0) => Err(Error::VirtualPlane { z: hit.z }),
        Ok(hit) => Ok(DepthPlane {
            from_h1u: ConjugateDistance::Finite(hit.z),
            from_mla: ConjugateDistance::Finite(hit.z + config.h1u_from_mla()),
            y: Some(hit.y),
        }),
        Err(Error::ParallelRays) => {
            Ok(DepthPlane { from_h1u: ConjugateDistance::Infinite, from_mla: ConjugateDistance::Infinite, y: None })
        }
        Err(e) => Err(e),
    }
}

/// One requested disparity and its plane or in-band failure.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneEntry {
    pub disparity: f64,
    pub plane: Result<DepthPlane>,
}

/// Baseline plus one plane per requested disparity.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangulationResult {
    pub baseline: Baseline,
    pub planes: Vec<PlaneEntry>,
}

pub fn depth_plane_series(config: &CameraConfig, gap: i32, disparities: &[f64]) -> Result<TriangulationResult> {
    if disparities.is_empty() {
        return Err(Error::EmptySeries);
    }
    if gap == 0 {
        return Err(Error::ZeroGap);
    }
    let baseline = baseline(config, gap)?;
    let planes =
        disparities.iter().map(|&dx| PlaneEntry { disparity: dx, plane: triangulate(config, gap, dx) }).collect();
    Ok(TriangulationResult { baseline, planes })
}
