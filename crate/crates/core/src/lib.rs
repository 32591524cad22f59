//! Paraxial light-field geometry of standard (MLA focused at infinity)
//! plenoptic cameras.
//!
//! Given sensor, micro lens array and main lens parameters this crate locates
//! refocusing planes and their depth of field, virtual viewpoints with their
//! baselines and entrance pupil, and the depth planes reachable by
//! triangulating sub-aperture disparities. Every quantity comes from
//! intersecting pairs of linear chief-ray functions.
//!
//! Lengths are millimeters everywhere.

pub mod config;
pub mod error;
pub mod optics;
pub mod ray;
pub mod refocus;
pub mod report;
pub mod scene;
pub mod solver;
pub mod svg;
pub mod triangulate;

pub use config::{CameraConfig, Focus, RawConfig};
pub use error::{Error, Result};
pub use optics::{image_distance, object_distance, ConjugateDistance};
pub use ray::{image_ray, micro_image_center, object_ray, Ray, Side};
pub use refocus::{refocus, refocus_dof, refocus_series, select_refocus_rays, Border, DepthOfField, RefocusResult};
pub use scene::{build_refocus_scene, build_triangulation_scene, Scene, SceneElement, SceneKind};
pub use solver::{intersect_rays, solve, IntersectionPoint, LinearSystem, Solution};
pub use svg::render_svg;
pub use triangulate::{
    baseline, depth_plane_series, triangulate, viewpoint, Baseline, DepthPlane, TriangulationResult, Viewpoint,
};
