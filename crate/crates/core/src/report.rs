//! Serializable result records shared by every front end.
//!
//! Position fields carry the frame they are measured from in their name:
//! `_from_mla`, `_from_h1u` or `_from_h2u`. Infinite distances serialize as
//! `"inf"`. Fields that do not apply are `null`.

use serde::{Deserialize, Serialize};

use crate::config::{CameraConfig, RawConfig};
use crate::error::{Error, Result};
use crate::optics::ConjugateDistance;
use crate::refocus::{refocus_series, RefocusResult};
use crate::triangulate::{depth_plane_series, TriangulationResult};

/// Structured error as `{name, message}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorReport {
    pub name: String,
    pub message: String,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport { name: e.name().to_string(), message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefocusReport {
    pub a: f64,
    pub elongation: Option<f64>,
    pub intersection_y: Option<f64>,
    pub effective_image_distance_from_h2u: Option<f64>,
    pub d_a_from_h1u: Option<ConjugateDistance>,
    pub d_a_from_mla: Option<ConjugateDistance>,
    pub dof_near_from_h1u: Option<ConjugateDistance>,
    pub dof_near_from_mla: Option<ConjugateDistance>,
    pub dof_far_from_h1u: Option<ConjugateDistance>,
    pub dof_far_from_mla: Option<ConjugateDistance>,
    pub dof_error: Option<ErrorReport>,
    pub error: Option<ErrorReport>,
}

impl RefocusReport {
    fn failed(a: f64, error: &Error) -> Self {
        RefocusReport {
            a,
            elongation: None,
            intersection_y: None,
            effective_image_distance_from_h2u: None,
            d_a_from_h1u: None,
            d_a_from_mla: None,
            dof_near_from_h1u: None,
            dof_near_from_mla: None,
            dof_far_from_h1u: None,
            dof_far_from_mla: None,
            dof_error: None,
            error: Some(error.into()),
        }
    }

    fn from_result(r: &RefocusResult) -> Self {
        let mut report = RefocusReport {
            a: r.a,
            elongation: Some(r.elongation),
            intersection_y: Some(r.intersection_y),
            effective_image_distance_from_h2u: Some(r.effective_image_distance),
            d_a_from_h1u: Some(r.object_distance_from_h1u),
            d_a_from_mla: Some(r.distance_from_mla),
            dof_near_from_h1u: None,
            dof_near_from_mla: None,
            dof_far_from_h1u: None,
            dof_far_from_mla: None,
            dof_error: None,
            error: None,
        };
        match &r.dof {
            Some(Ok(dof)) => {
                report.dof_near_from_h1u = Some(dof.near_from_h1u);
                report.dof_near_from_mla = Some(dof.near_from_mla());
                report.dof_far_from_h1u = Some(dof.far_from_h1u);
                report.dof_far_from_mla = Some(dof.far_from_mla());
            }
            Some(Err(e)) => report.dof_error = Some(e.into()),
            None => {}
        }
        report
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneReport {
    pub disparity: f64,
    pub z_from_h1u: Option<ConjugateDistance>,
    pub z_from_mla: Option<ConjugateDistance>,
    pub error: Option<ErrorReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationReport {
    pub gap: i32,
    pub baseline: f64,
    pub entrance_pupil_from_h1u: f64,
    pub entrance_pupil_from_mla: f64,
    pub planes: Vec<PlaneReport>,
}

impl TriangulationReport {
    fn from_result(config: &CameraConfig, t: &TriangulationResult) -> Self {
        TriangulationReport {
            gap: t.baseline.gap,
            baseline: t.baseline.baseline,
            entrance_pupil_from_h1u: t.baseline.entrance_pupil_from_h1u,
            entrance_pupil_from_mla: t.baseline.entrance_pupil_from_h1u + config.h1u_from_mla(),
            planes: t
                .planes
                .iter()
                .map(|p| match &p.plane {
                    Ok(plane) => PlaneReport {
                        disparity: p.disparity,
                        z_from_h1u: Some(plane.from_h1u),
                        z_from_mla: Some(plane.from_mla),
                        error: None,
                    },
                    Err(e) => PlaneReport {
                        disparity: p.disparity,
                        z_from_h1u: None,
                        z_from_mla: None,
                        error: Some(e.into()),
                    },
                })
                .collect(),
        }
    }

    /// True when at least one plane failed.
    pub fn has_errors(&self) -> bool {
        self.planes.iter().any(|p| p.error.is_some())
    }
}

/// Refocus every shift and package the outcomes.
pub fn refocus_report(config: &CameraConfig, shifts: &[f64]) -> Result<Vec<RefocusReport>> {
    Ok(refocus_series(config, shifts)?
        .iter()
        .zip(shifts)
        .map(|(r, &a)| match r {
            Ok(r) => RefocusReport::from_result(r),
            Err(e) => RefocusReport::failed(a, e),
        })
        .collect())
}

pub fn triangulation_report(config: &CameraConfig, gap: i32, disparities: &[f64]) -> Result<TriangulationReport> {
    let result = depth_plane_series(config, gap, disparities)?;
    Ok(TriangulationReport::from_result(config, &result))
}

/// Full design evaluation as printed by the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignReport {
    pub config: RawConfig,
    pub image_distance_from_h2u: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refocus: Option<Vec<RefocusReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangulation: Option<TriangulationReport>,
}

impl DesignReport {
    pub fn new(config: &CameraConfig) -> Self {
        DesignReport {
            config: config.to_raw(),
            image_distance_from_h2u: config.image_distance(),
            refocus: None,
            triangulation: None,
        }
    }
}
