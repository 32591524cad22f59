use std::fmt::Write as _;

use plenoptic_core::report::{DesignReport, ErrorReport};
use plenoptic_core::ConjugateDistance;
use serde::Serialize;

fn dist(d: Option<ConjugateDistance>) -> String {
    match d {
        Some(ConjugateDistance::Finite(v)) => format!("{v:.4}"),
        Some(ConjugateDistance::Infinite) => "inf".into(),
        None => "-".into(),
    }
}

fn name(e: &Option<ErrorReport>) -> &str {
    e.as_ref().map_or("", |e| e.name.as_str())
}

pub fn text(report: &DesignReport) -> String {
    let c = &report.config;
    let mut out = String::new();
    let _ = writeln!(out, "camera");
    let _ = writeln!(out, "  pixel pitch          {} mm", c.pixel_pitch);
    let _ = writeln!(out, "  micro lens pitch     {} mm", c.micro_lens_pitch);
    let _ = writeln!(out, "  micro lens focal     {} mm", c.micro_lens_focal);
    let _ = writeln!(out, "  micro image res      {} px", c.micro_image_resolution);
    let _ = writeln!(out, "  main lens focal      {} mm", c.main_lens_focal);
    let _ = writeln!(out, "  hiatus               {} mm", c.hiatus);
    let _ = writeln!(out, "  exit pupil           {} mm", c.exit_pupil_distance);
    if let Some(d) = c.focus_distance {
        let _ = writeln!(out, "  focus distance       {d} mm from H1U");
    }
    let _ = writeln!(out, "  image distance b_U   {:.6} mm from H2U", report.image_distance_from_h2u);

    if let Some(rows) = &report.refocus {
        let _ = writeln!(out, "\nrefocus (distances in mm)");
        let _ = writeln!(
            out,
            "  {:>8}  {:>12}  {:>12}  {:>12}  {:>12}  note",
            "a", "d_a (MLA)", "d_a (H1U)", "near (MLA)", "far (MLA)"
        );
        for r in rows {
            let note = if r.error.is_some() { name(&r.error) } else { name(&r.dof_error) };
            let _ = writeln!(
                out,
                "  {:>8.3}  {:>12}  {:>12}  {:>12}  {:>12}  {}",
                r.a,
                dist(r.d_a_from_mla),
                dist(r.d_a_from_h1u),
                dist(r.dof_near_from_mla),
                dist(r.dof_far_from_mla),
                note
            );
        }
    }

    if let Some(t) = &report.triangulation {
        let _ = writeln!(out, "\ntriangulation (distances in mm)");
        let _ = writeln!(out, "  gap G                {}", t.gap);
        let _ = writeln!(out, "  baseline B_G         {:.6}", t.baseline);
        let _ = writeln!(
            out,
            "  entrance pupil       {:.4} from H1U, {:.4} from MLA",
            t.entrance_pupil_from_h1u, t.entrance_pupil_from_mla
        );
        let _ = writeln!(out, "  {:>8}  {:>12}  {:>12}  note", "dx", "Z (MLA)", "Z (H1U)");
        for p in &t.planes {
            let _ = writeln!(
                out,
                "  {:>8.3}  {:>12}  {:>12}  {}",
                p.disparity,
                dist(p.z_from_mla),
                dist(p.z_from_h1u),
                name(&p.error)
            );
        }
    }
    out.lines().map(|l| l.trim_end().to_string() + "\n").collect()
}

/// One CSV row per refocus shift or disparity.
#[derive(Serialize)]
struct Row<'a> {
    kind: &'a str,
    parameter: f64,
    gap: Option<i32>,
    distance_from_h1u: Option<ConjugateDistance>,
    distance_from_mla: Option<ConjugateDistance>,
    dof_near_from_mla: Option<ConjugateDistance>,
    dof_far_from_mla: Option<ConjugateDistance>,
    error: &'a str,
}

pub fn csv(report: &DesignReport) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in report.refocus.iter().flatten() {
        w.serialize(Row {
            kind: "refocus",
            parameter: r.a,
            gap: None,
            distance_from_h1u: r.d_a_from_h1u,
            distance_from_mla: r.d_a_from_mla,
            dof_near_from_mla: r.dof_near_from_mla,
            dof_far_from_mla: r.dof_far_from_mla,
            error: if r.error.is_some() { name(&r.error) } else { name(&r.dof_error) },
        })?;
    }
    if let Some(t) = &report.triangulation {
        for p in &t.planes {
            w.serialize(Row {
                kind: "triangulation",
                parameter: p.disparity,
                gap: Some(t.gap),
                distance_from_h1u: p.z_from_h1u,
                distance_from_mla: p.z_from_mla,
                dof_near_from_mla: None,
                dof_far_from_mla: None,
                error: name(&p.error),
            })?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
