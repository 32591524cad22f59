use std::path::PathBuf;

use clap::{ArgGroup, Parser, ValueEnum};
use plenoptic_core::config::RawConfig;
use plenoptic_core::CameraConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Plenoptic camera design calculator: refocusing distances, depth of field
/// and triangulation planes. All lengths in millimeters.
#[derive(Debug, Parser)]
#[command(name = "plenoptic", version, about)]
#[command(group(ArgGroup::new("focus").args(["focus_dist", "image_dist"])))]
pub struct Args {
    /// Pixel pitch p_p
    #[arg(long, value_name = "MM")]
    pub pitch_pixel: Option<f64>,
    /// Micro lens pitch p_m
    #[arg(long, value_name = "MM")]
    pub pitch_mla: Option<f64>,
    /// Micro lens focal length f_s (MLA to sensor gap)
    #[arg(long, value_name = "MM")]
    pub focal_mla: Option<f64>,
    /// Pixels per micro image in one dimension (M)
    #[arg(long, value_name = "M")]
    pub micro_res: Option<u32>,
    /// Main lens focal length f_U
    #[arg(long, value_name = "MM")]
    pub focal_main: Option<f64>,
    /// Separation of the main lens principal planes
    #[arg(long, value_name = "MM", allow_negative_numbers = true)]
    pub hiatus: Option<f64>,
    /// Exit pupil distance from the MLA
    #[arg(long, value_name = "MM")]
    pub exit_pupil: Option<f64>,
    /// Object distance in focus, from H1U
    #[arg(long, value_name = "MM")]
    pub focus_dist: Option<f64>,
    /// Main lens to MLA distance b_U, from H2U
    #[arg(long, value_name = "MM")]
    pub image_dist: Option<f64>,

    /// Refocus shift parameter a (repeatable)
    #[arg(long = "shift", value_name = "A", allow_negative_numbers = true)]
    pub shifts: Vec<f64>,
    /// Viewpoint gap G for triangulation
    #[arg(long, value_name = "G", allow_negative_numbers = true)]
    pub gap: Option<i32>,
    /// Disparity in pixels (repeatable)
    #[arg(long = "disparity", value_name = "DX", allow_negative_numbers = true)]
    pub disparities: Vec<f64>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub output: Format,
    /// Write the refocus cross-section as SVG
    #[arg(long, value_name = "PATH")]
    pub plot: Option<PathBuf>,
    /// Write the scene JSON
    #[arg(long, value_name = "PATH")]
    pub scene: Option<PathBuf>,
    /// Camera parameters as JSON; flags override its values
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Run the HTTP service instead (address defaults to $SERVE_ADDR or 127.0.0.1:8080)
    #[arg(long, value_name = "HOST:PORT", num_args = 0..=1)]
    pub serve: Option<Option<String>>,
}

/// What to compute.
#[derive(Debug, PartialEq)]
pub struct Plan {
    pub shifts: Option<Vec<f64>>,
    pub triangulation: Option<(i32, Vec<f64>)>,
}

impl Args {
    /// Without any request both computations run on their defaults:
    /// `a = 1` and `G = 1` with disparities 0 and 1.
    pub fn plan(&self) -> Plan {
        let wants_tri = self.gap.is_some() || !self.disparities.is_empty();
        let wants_refocus = !self.shifts.is_empty() || self.plot.is_some() || !wants_tri;
        let shifts = wants_refocus.then(|| if self.shifts.is_empty() { vec![1.0] } else { self.shifts.clone() });
        let triangulation = if wants_tri {
            let dx = if self.disparities.is_empty() { vec![0.0] } else { self.disparities.clone() };
            Some((self.gap.unwrap_or(1), dx))
        } else if self.shifts.is_empty() && self.plot.is_none() {
            Some((1, vec![0.0, 1.0]))
        } else {
            None
        };
        Plan { shifts, triangulation }
    }

    /// Apply the parameter flags on top of `base`. A focus flag replaces
    /// whichever focus field the base carried.
    pub fn overlay(&self, mut base: RawConfig) -> RawConfig {
        let set = |field: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *field = v;
            }
        };
        set(&mut base.pixel_pitch, self.pitch_pixel);
        set(&mut base.micro_lens_pitch, self.pitch_mla);
        set(&mut base.micro_lens_focal, self.focal_mla);
        set(&mut base.main_lens_focal, self.focal_main);
        set(&mut base.hiatus, self.hiatus);
        set(&mut base.exit_pupil_distance, self.exit_pupil);
        if let Some(m) = self.micro_res {
            base.micro_image_resolution = m;
        }
        if let Some(d) = self.focus_dist {
            base.focus_distance = Some(d);
            base.image_distance = None;
        }
        if let Some(b) = self.image_dist {
            base.image_distance = Some(b);
            base.focus_distance = None;
        }
        base
    }
}

pub fn default_raw() -> RawConfig {
    CameraConfig::reference().to_raw()
}
