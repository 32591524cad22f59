//! SVG 1.1 rendering of refocus cross-sections.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::scene::{ElementType, Scene, SceneKind};

const WIDTH: f64 = 1200.0;
const HEIGHT: f64 = 520.0;
const MARGIN: f64 = 60.0;
const LABEL_ROWS: usize = 4;
const LABEL_ROW_HEIGHT: f64 = 14.0;

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Linear map from scene millimeters to canvas pixels.
struct Viewport {
    z_min: f64,
    z_max: f64,
    y_max: f64,
}

impl Viewport {
    fn fit(scene: &Scene) -> Viewport {
        let mut z_min = f64::INFINITY;
        let mut z_max = f64::NEG_INFINITY;
        let mut y_max: f64 = 0.0;
        for e in &scene.elements {
            if let (ElementType::Plane, Some(z)) = (e.kind, e.z) {
                z_min = z_min.min(z);
                z_max = z_max.max(z);
            }
            for p in e.from.iter().chain(e.via.iter()).chain(e.to.iter()) {
                y_max = y_max.max(p[1].abs());
            }
        }
        if !z_min.is_finite() {
            (z_min, z_max) = (0.0, 1.0);
        }
        if z_max <= z_min {
            z_max = z_min + 1.0;
        }
        if y_max == 0.0 {
            y_max = 1.0;
        }
        Viewport { z_min, z_max, y_max: y_max * 1.1 }
    }

    fn x(&self, z: f64) -> f64 {
        MARGIN + (z - self.z_min) / (self.z_max - self.z_min) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, y: f64) -> f64 {
        let top = MARGIN + LABEL_ROWS as f64 * LABEL_ROW_HEIGHT;
        let bottom = HEIGHT - MARGIN;
        let mid = 0.5 * (top + bottom);
        mid - y / self.y_max * 0.5 * (bottom - top)
    }
}

/// Render a refocus cross-section. Output depends only on the scene.
pub fn render_svg(scene: &Scene) -> Result<String> {
    if scene.kind != SceneKind::RefocusSection {
        return Err(Error::UnsupportedKind(scene.kind.as_str().to_string()));
    }
    let view = Viewport::fit(scene);
    let mut svg = String::new();
    let w = &mut svg;
    // writes into a String cannot fail
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        w,
        "<style>.plane{{stroke:#555;stroke-width:1}}.ray{{fill:none;stroke:#c0392b;stroke-width:1}}\
         .axis{{stroke:#999;stroke-dasharray:4 3}}text{{font-family:sans-serif;font-size:11px}}\
         .degenerate{{fill:#b03a2e;font-style:italic}}</style>"
    );
    let _ = writeln!(w, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let axis = view.y(0.0);
    let _ = writeln!(
        w,
        r#"<line class="axis" x1="{:.3}" y1="{axis:.3}" x2="{:.3}" y2="{axis:.3}"/>"#,
        view.x(view.z_min),
        view.x(view.z_max)
    );

    let top = view.y(view.y_max);
    let bottom = view.y(-view.y_max);
    let mut row = 0;
    let mut notes = Vec::new();
    for e in &scene.elements {
        match e.kind {
            ElementType::Plane => {
                let (Some(z), Some(label)) = (e.z, e.label.as_deref()) else { continue };
                let x = view.x(z);
                let _ = writeln!(
                    w,
                    r#"<line class="plane" id="{}" x1="{x:.3}" y1="{top:.3}" x2="{x:.3}" y2="{bottom:.3}"><title>{} z={z:.4} mm</title></line>"#,
                    escape(&e.id),
                    escape(label)
                );
                let ty = MARGIN + row as f64 * LABEL_ROW_HEIGHT;
                let _ = writeln!(w, r#"<text x="{x:.3}" y="{ty:.3}" text-anchor="middle">{}</text>"#, escape(label));
                row = (row + 1) % LABEL_ROWS;
            }
            ElementType::RaySegment => {
                let points: Vec<String> = e
                    .from
                    .iter()
                    .chain(e.via.iter())
                    .chain(e.to.iter())
                    .map(|p| format!("{:.3},{:.3}", view.x(p[0]), view.y(p[1])))
                    .collect();
                let _ = writeln!(w, r#"<polyline class="ray" id="{}" points="{}"/>"#, escape(&e.id), points.join(" "));
            }
            ElementType::Point => {
                if let (Some(z), Some(y)) = (e.z, e.y) {
                    let _ = writeln!(
                        w,
                        r#"<circle id="{}" cx="{:.3}" cy="{:.3}" r="3"/>"#,
                        escape(&e.id),
                        view.x(z),
                        view.y(y)
                    );
                }
            }
            ElementType::Label => notes.push(e),
        }
    }
    for (n, e) in notes.iter().enumerate() {
        let class = if e.degenerate { r#" class="degenerate""# } else { "" };
        let ty = HEIGHT - MARGIN + 18.0 + n as f64 * LABEL_ROW_HEIGHT;
        let _ = writeln!(
            w,
            r#"<text{class} x="{MARGIN}" y="{ty:.3}">{}</text>"#,
            escape(e.label.as_deref().unwrap_or(&e.id))
        );
    }
    let _ = writeln!(w, "</svg>");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::CameraConfig;
    use crate::scene::{build_refocus_scene, build_triangulation_scene};

    #[test]
    fn labels_present() {
        let scene = build_refocus_scene(&CameraConfig::reference(), &[1.0]).unwrap();
        let svg = render_svg(&scene).unwrap();
        for label in ["H1U", "H2U", "FU", "MLA", "sensor", "d_a (a=1)", "d_a- (a=1)", "d_a+ (a=1)"] {
            assert!(svg.contains(&format!(">{label}</text>")), "missing {label}");
        }
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn deterministic() {
        let cfg = CameraConfig::reference();
        let a = render_svg(&build_refocus_scene(&cfg, &[0.0, 1.0, -2.0]).unwrap()).unwrap();
        let b = render_svg(&build_refocus_scene(&cfg, &[0.0, 1.0, -2.0]).unwrap()).unwrap();
        assert_eq!(a.as_bytes(), b.as_bytes());
        assert!(a.contains(r#"class="degenerate""#));
    }

    #[test]
    fn triangulation_unsupported() {
        let scene = build_triangulation_scene(&CameraConfig::reference(), 1, &[0.0]).unwrap();
        assert_eq!(render_svg(&scene).unwrap_err().name(), "UnsupportedKind");
    }

    #[test]
    fn viewport_spans_sensor_to_farthest_plane() {
        let scene = build_refocus_scene(&CameraConfig::reference(), &[1.0]).unwrap();
        let view = Viewport::fit(&scene);
        assert_eq!(view.z_min, -0.025);
        let far = scene.element("d_a+:1").unwrap().z.unwrap();
        assert_eq!(view.z_max, far);
    }
}
