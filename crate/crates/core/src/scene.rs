//! Declarative scenes of rays, planes and labels.
//!
//! A scene is pure data in the MLA frame (MLA at z = 0, z toward the object).
//! It serializes to the versioned JSON schema
//! `{"version":"1","units":"mm","kind":…,"elements":[…]}` and feeds both the
//! SVG renderer and external viewers.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::config::CameraConfig;
use crate::error::{Error, Result};
use crate::optics::ConjugateDistance;
use crate::ray::object_ray;
use crate::ray::Ray;
use crate::refocus::{refocus, refocus_dof, select_refocus_rays, Border};
use crate::triangulate::{depth_plane_series, viewpoint};

pub const SCENE_VERSION: &str = "1";
pub const SCENE_UNITS: &str = "mm";

/// Plane extent in micro lens pitches for triangulation scenes.
const PLANE_HALF_EXTENT_PITCHES: f64 = 20.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SceneKind {
    #[serde(rename = "refocus-section")]
    RefocusSection,
    #[serde(rename = "triangulation-3d")]
    Triangulation3d,
}

impl SceneKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SceneKind::RefocusSection => "refocus-section",
            SceneKind::Triangulation3d => "triangulation-3d",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementType {
    Plane,
    RaySegment,
    Point,
    Label,
}

/// One scene element. Which coordinates are present depends on the type:
/// planes carry `z`, points `z` and `y`, ray segments `from`/`to` as
/// `[z, y]` pairs with optional refraction vertices in `via`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneElement {
    pub id: String,
    #[serde(rename = "type")]
    pub kind: ElementType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub via: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<[f64; 2]>,
    /// Half size of a plane in the transverse directions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

impl SceneElement {
    fn bare(id: String, kind: ElementType) -> Self {
        SceneElement {
            id,
            kind,
            z: None,
            y: None,
            from: None,
            via: Vec::new(),
            to: None,
            extent: None,
            label: None,
            degenerate: false,
        }
    }

    pub fn plane(id: impl Into<String>, z: f64, label: impl Into<String>) -> Self {
        SceneElement { z: Some(z), label: Some(label.into()), ..Self::bare(id.into(), ElementType::Plane) }
    }

    pub fn point(id: impl Into<String>, z: f64, y: f64, label: impl Into<String>) -> Self {
        SceneElement { z: Some(z), y: Some(y), label: Some(label.into()), ..Self::bare(id.into(), ElementType::Point) }
    }

    pub fn segment(id: impl Into<String>, from: [f64; 2], via: Vec<[f64; 2]>, to: [f64; 2]) -> Self {
        SceneElement { from: Some(from), via, to: Some(to), ..Self::bare(id.into(), ElementType::RaySegment) }
    }

    pub fn label(id: impl Into<String>, text: impl Into<String>, degenerate: bool) -> Self {
        SceneElement { label: Some(text.into()), degenerate, ..Self::bare(id.into(), ElementType::Label) }
    }

    /// All coordinates carried by the element.
    fn coordinates(&self) -> impl Iterator<Item = f64> + '_ {
        let pairs = self.from.iter().chain(self.via.iter()).chain(self.to.iter()).flatten().copied();
        self.z.into_iter().chain(self.y).chain(self.extent).chain(pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub version: String,
    pub units: String,
    pub kind: SceneKind,
    pub elements: Vec<SceneElement>,
}

impl Scene {
    fn assemble(kind: SceneKind, mut elements: Vec<SceneElement>) -> Result<Scene> {
        let rank = |e: &SceneElement| match e.kind {
            ElementType::Plane => 0,
            ElementType::RaySegment => 1,
            ElementType::Point => 2,
            ElementType::Label => 3,
        };
        // stable: planes ascending in z, everything else keeps insertion order
        elements.sort_by(|a, b| {
            rank(a).cmp(&rank(b)).then_with(|| match (a.kind, b.kind) {
                (ElementType::Plane, ElementType::Plane) => a.z.partial_cmp(&b.z).unwrap_or(std::cmp::Ordering::Equal),
                _ => std::cmp::Ordering::Equal,
            })
        });
        let scene = Scene { version: SCENE_VERSION.into(), units: SCENE_UNITS.into(), kind, elements };
        scene.validate()?;
        Ok(scene)
    }

    pub fn element(&self, id: &str) -> Option<&SceneElement> {
        self.elements.iter().find(|e| e.id == id)
    }

    pub fn planes(&self) -> impl Iterator<Item = &SceneElement> {
        self.elements.iter().filter(|e| e.kind == ElementType::Plane)
    }

    /// Check the structural invariants of the schema.
    pub fn validate(&self) -> Result<()> {
        if self.version != SCENE_VERSION {
            return Err(Error::UnknownSceneVersion(self.version.clone()));
        }
        if self.units != SCENE_UNITS {
            return Err(Error::InvalidScene(format!("units must be \"mm\", got {:?}", self.units)));
        }
        let mut seen = HashSet::new();
        for e in &self.elements {
            let bad = |why: &str| Err(Error::InvalidScene(format!("element `{}`: {why}", e.id)));
            if !seen.insert(e.id.as_str()) {
                return bad("duplicate id");
            }
            if e.coordinates().any(|v| !v.is_finite()) {
                return bad("non-finite coordinate");
            }
            match e.kind {
                ElementType::Plane if e.z.is_none() => return bad("plane without z"),
                ElementType::Plane if e.label.is_none() => return bad("plane without label"),
                ElementType::Point if e.z.is_none() || e.y.is_none() => return bad("point without z/y"),
                ElementType::RaySegment => match (e.from, e.to) {
                    (Some(a), Some(b)) if a != b => {}
                    (Some(_), Some(_)) => return bad("ray segment endpoints coincide"),
                    _ => return bad("ray segment without from/to"),
                },
                ElementType::Label if e.label.is_none() => return bad("label without text"),
                _ => {}
            }
        }
        Ok(())
    }

    /// Canonical pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serialization is infallible")
    }

    /// Parse and validate a scene, rejecting unknown schema versions.
    pub fn from_json(text: &str) -> Result<Scene> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::InvalidScene(e.to_string()))?;
        match value.get("version").and_then(|v| v.as_str()) {
            Some(SCENE_VERSION) => {}
            Some(other) => return Err(Error::UnknownSceneVersion(other.to_string())),
            None => return Err(Error::InvalidScene("missing version".into())),
        }
        let scene: Scene = serde_json::from_value(value).map_err(|e| Error::InvalidScene(e.to_string()))?;
        scene.validate()?;
        Ok(scene)
    }
}

fn dedup(values: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(values.len());
    for &v in values {
        if !out.iter().any(|&o| o.to_bits() == v.to_bits()) {
            out.push(v);
        }
    }
    out
}

/// Image-side ray from the MLA through the main lens to `(to_z, ·)`, all in
/// the MLA frame.
fn refracted_path(config: &CameraConfig, image: &Ray, to_z: f64) -> ([f64; 2], Vec<[f64; 2]>, [f64; 2]) {
    let lens = config.image_distance();
    let h1u = config.h1u_from_mla();
    let height = image.height_at(lens);
    let slope = image.slope - height / config.main_lens_focal();
    let mut via = vec![[lens, height]];
    if h1u != lens {
        via.push([h1u, height]);
    }
    ([0.0, image.intercept], via, [to_z, height + slope * (to_z - h1u)])
}

/// Cross-section of the refocusing geometry for each shift in `shifts`.
///
/// Fixed planes: `sensor`, `mla`, `H2U`, `H1U`, `FU`. Per shift `a`: planes
/// `d_a:{a}`, `d_a-:{a}`, `d_a+:{a}` and segments `ray:{a}:upper`,
/// `ray:{a}:lower`. Planes at infinity become labels under the same id, as do
/// failures (flagged degenerate).
pub fn build_refocus_scene(config: &CameraConfig, shifts: &[f64]) -> Result<Scene> {
    if shifts.is_empty() {
        return Err(Error::EmptySeries);
    }
    let h1u = config.h1u_from_mla();
    let mut elements = vec![
        SceneElement::plane("sensor", -config.micro_lens_focal(), "sensor"),
        SceneElement::plane("mla", 0.0, "MLA"),
        SceneElement::plane("H2U", config.image_distance(), "H2U"),
        SceneElement::plane("H1U", h1u, "H1U"),
        SceneElement::plane("FU", h1u + config.main_lens_focal(), "FU"),
    ];
    let mut rays = Vec::new();
    let mut farthest = h1u + 2.0 * config.main_lens_focal();

    let place = |elements: &mut Vec<SceneElement>, id: String, text: String, d: ConjugateDistance| match d {
        ConjugateDistance::Finite(z) => elements.push(SceneElement::plane(id, z, text)),
        ConjugateDistance::Infinite => elements.push(SceneElement::label(id, format!("{text} at infinity"), false)),
    };

    for a in dedup(shifts) {
        let id = format!("d_a:{a}");
        let result = match refocus(config, a) {
            Ok(r) => r,
            Err(e) => {
                elements.push(SceneElement::label(id, format!("a={a}: {}", e.name()), true));
                continue;
            }
        };
        if let Some(z) = result.distance_from_mla.finite() {
            farthest = farthest.max(z);
        }
        place(&mut elements, id, format!("d_a (a={a})"), result.distance_from_mla);
        match refocus_dof(config, a) {
            Ok(dof) => {
                if let Some(z) = dof.far_from_mla().finite() {
                    farthest = farthest.max(z);
                }
                place(&mut elements, format!("d_a-:{a}"), format!("d_a- (a={a})"), dof.near_from_mla());
                place(&mut elements, format!("d_a+:{a}"), format!("d_a+ (a={a})"), dof.far_from_mla());
            }
            Err(e) => elements.push(SceneElement::label(format!("dof:{a}"), format!("a={a}: {}", e.name()), true)),
        }
        rays.push((a, result.distance_from_mla));
    }

    for (a, target) in rays {
        let to_z = target.finite().unwrap_or(farthest);
        let (upper, lower) = select_refocus_rays(config, a, Border::None);
        for (name, ray) in [("upper", upper), ("lower", lower)] {
            let (from, via, to) = refracted_path(config, &ray, to_z);
            elements.push(SceneElement::segment(format!("ray:{a}:{name}"), from, via, to));
        }
    }
    Scene::assemble(SceneKind::RefocusSection, elements)
}

/// Triangulation planes `Z(G, Δx)` with the entrance pupil and the two
/// viewpoints, for a 3-D viewer.
///
/// Ids: `entrance_pupil`, `viewpoint:0`, `viewpoint:{G}`, `Z:{G}:{dx}` and
/// segments `ray:{dx}:reference`, `ray:{dx}:other`.
pub fn build_triangulation_scene(config: &CameraConfig, gap: i32, disparities: &[f64]) -> Result<Scene> {
    let series = depth_plane_series(config, gap, disparities)?;
    let h1u = config.h1u_from_mla();
    let pupil = h1u + series.baseline.entrance_pupil_from_h1u;
    let origin = viewpoint(config, 0.0)?;
    let mut elements = vec![
        SceneElement::plane("entrance_pupil", pupil, "A'' (entrance pupil)"),
        SceneElement::point("viewpoint:0", pupil, origin.y, "viewpoint 0"),
        SceneElement::point(
            format!("viewpoint:{gap}"),
            pupil,
            origin.y - series.baseline.baseline,
            format!("viewpoint {gap}"),
        ),
    ];
    let c = config.center_index();
    let reference = object_ray(config, c, 0.0);
    for entry in &series.planes {
        let dx = entry.disparity;
        if elements.iter().any(|e| e.id == format!("Z:{gap}:{dx}")) {
            continue;
        }
        let id = format!("Z:{gap}:{dx}");
        match &entry.plane {
            Ok(plane) => match (plane.from_h1u, plane.y) {
                (ConjugateDistance::Finite(z), Some(y)) => {
                    let mut e = SceneElement::plane(id, z + h1u, format!("Z({gap}, {dx})"));
                    e.extent =
                        Some(PLANE_HALF_EXTENT_PITCHES * config.micro_lens_pitch() * z / config.image_distance());
                    elements.push(e);
                    let other = object_ray(config, c + gap as f64, -dx);
                    for (name, ray) in [("reference", reference), ("other", other)] {
                        elements.push(SceneElement::segment(
                            format!("ray:{dx}:{name}"),
                            [h1u, ray.intercept],
                            Vec::new(),
                            [z + h1u, y],
                        ));
                    }
                }
                _ => elements.push(SceneElement::label(id, format!("Z({gap}, {dx}) at infinity"), true)),
            },
            Err(e) => elements.push(SceneElement::label(id, format!("Z({gap}, {dx}): {}", e.name()), true)),
        }
    }
    Scene::assemble(SceneKind::Triangulation3d, elements)
}
