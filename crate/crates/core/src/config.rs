//! Camera parameters.
//!
//! All lengths are millimeters. The frame used throughout the crate puts the
//! MLA at z = 0 with z growing toward the object: the sensor sits at `-f_s`,
//! the image-side principal plane H2U at `b_U` and the object-side principal
//! plane H1U at `b_U + d_H`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optics::image_distance;

/// How the main lens focus is specified.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Focus {
    /// Object distance in focus, measured from H1U.
    Distance(f64),
    /// Distance from H2U to the MLA plane.
    ImageDistance(f64),
}

/// Unvalidated parameters with the exact field names of the JSON schema.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub pixel_pitch: f64,
    pub micro_lens_pitch: f64,
    pub micro_lens_focal: f64,
    pub micro_image_resolution: u32,
    pub main_lens_focal: f64,
    #[serde(default)]
    pub hiatus: f64,
    pub exit_pupil_distance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub focus_distance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_distance: Option<f64>,
}

impl RawConfig {
    pub fn validate(&self) -> Result<CameraConfig> {
        CameraConfig::try_from(self.clone())
    }
}

/// Validated, immutable plenoptic camera description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct CameraConfig {
    pixel_pitch: f64,
    micro_lens_pitch: f64,
    micro_lens_focal: f64,
    resolution: u32,
    main_lens_focal: f64,
    hiatus: f64,
    exit_pupil_distance: f64,
    focus: Focus,
    image_distance: f64,
}

fn positive(field: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else if value.is_nan() || value.is_infinite() && value > 0.0 {
        Err(Error::NonFiniteValue { field, value })
    } else {
        Err(Error::NonPositiveLength { field, value })
    }
}

impl TryFrom<RawConfig> for CameraConfig {
    type Error = Error;

    fn try_from(raw: RawConfig) -> Result<Self> {
        let pixel_pitch = positive("pixel_pitch", raw.pixel_pitch)?;
        let micro_lens_pitch = positive("micro_lens_pitch", raw.micro_lens_pitch)?;
        let micro_lens_focal = positive("micro_lens_focal", raw.micro_lens_focal)?;
        let main_lens_focal = positive("main_lens_focal", raw.main_lens_focal)?;
        let exit_pupil_distance = positive("exit_pupil_distance", raw.exit_pupil_distance)?;
        if !raw.hiatus.is_finite() {
            return Err(Error::NonFiniteValue { field: "hiatus", value: raw.hiatus });
        }
        if raw.micro_image_resolution < 2 {
            return Err(Error::MTooSmall(raw.micro_image_resolution));
        }
        let (focus, image) = match (raw.focus_distance, raw.image_distance) {
            (Some(d), None) => {
                let d = positive("focus_distance", d)?;
                (Focus::Distance(d), image_distance(main_lens_focal, d)?)
            }
            (None, Some(b)) => {
                let b = positive("image_distance", b)?;
                if b <= main_lens_focal {
                    return Err(Error::FocusNotBeyondFocal { focal: main_lens_focal, value: b });
                }
                (Focus::ImageDistance(b), b)
            }
            _ => return Err(Error::BothOrNeitherFocusGiven),
        };
        Ok(CameraConfig {
            pixel_pitch,
            micro_lens_pitch,
            micro_lens_focal,
            resolution: raw.micro_image_resolution,
            main_lens_focal,
            hiatus: raw.hiatus,
            exit_pupil_distance,
            focus,
            image_distance: image,
        })
    }
}

impl From<CameraConfig> for RawConfig {
    fn from(cfg: CameraConfig) -> Self {
        let (focus_distance, image_distance) = match cfg.focus {
            Focus::Distance(d) => (Some(d), None),
            Focus::ImageDistance(b) => (None, Some(b)),
        };
        RawConfig {
            pixel_pitch: cfg.pixel_pitch,
            micro_lens_pitch: cfg.micro_lens_pitch,
            micro_lens_focal: cfg.micro_lens_focal,
            micro_image_resolution: cfg.resolution,
            main_lens_focal: cfg.main_lens_focal,
            hiatus: cfg.hiatus,
            exit_pupil_distance: cfg.exit_pupil_distance,
            focus_distance,
            image_distance,
        }
    }
}

impl CameraConfig {
    /// Miniature-camera reference design used as the shared default.
    pub fn reference() -> CameraConfig {
        RawConfig {
            pixel_pitch: 0.0014,
            micro_lens_pitch: 0.0125,
            micro_lens_focal: 0.025,
            micro_image_resolution: 9,
            main_lens_focal: 16.0,
            hiatus: 0.0,
            exit_pupil_distance: 100.0,
            focus_distance: Some(1000.0),
            image_distance: None,
        }
        .validate()
        .expect("reference design is valid")
    }

    pub fn pixel_pitch(&self) -> f64 {
        self.pixel_pitch
    }

    pub fn micro_lens_pitch(&self) -> f64 {
        self.micro_lens_pitch
    }

    /// Micro lens focal length, also the MLA–sensor gap.
    pub fn micro_lens_focal(&self) -> f64 {
        self.micro_lens_focal
    }

    /// Pixels per micro image in one dimension (`M`).
    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    /// Micro image center index `c = (M − 1)/2`.
    pub fn center_index(&self) -> f64 {
        (self.resolution as f64 - 1.0) / 2.0
    }

    pub fn main_lens_focal(&self) -> f64 {
        self.main_lens_focal
    }

    /// Signed H1U–H2U separation.
    pub fn hiatus(&self) -> f64 {
        self.hiatus
    }

    pub fn exit_pupil_distance(&self) -> f64 {
        self.exit_pupil_distance
    }

    pub fn focus(&self) -> Focus {
        self.focus
    }

    /// `b_U`: distance from H2U to the MLA plane.
    pub fn image_distance(&self) -> f64 {
        self.image_distance
    }

    /// Position of H1U measured from the MLA plane.
    pub fn h1u_from_mla(&self) -> f64 {
        self.image_distance + self.hiatus
    }

    /// Same design with every length multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Result<CameraConfig> {
        let mut raw = RawConfig::from(self.clone());
        raw.pixel_pitch *= k;
        raw.micro_lens_pitch *= k;
        raw.micro_lens_focal *= k;
        raw.main_lens_focal *= k;
        raw.hiatus *= k;
        raw.exit_pupil_distance *= k;
        raw.focus_distance = raw.focus_distance.map(|d| d * k);
        raw.image_distance = raw.image_distance.map(|b| b * k);
        raw.validate()
    }

    pub fn to_raw(&self) -> RawConfig {
        RawConfig::from(self.clone())
    }
}

impl Default for CameraConfig {
    fn default() -> Self {
        CameraConfig::reference()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw() -> RawConfig {
        CameraConfig::reference().to_raw()
    }

    #[test]
    fn reference_resolves_image_distance() {
        let cfg = CameraConfig::reference();
        let oracle = 1.0 / (1.0 / 16.0 - 1.0 / 1000.0);
        assert!((cfg.image_distance() - oracle).abs() < 1e-12);
        assert!((cfg.image_distance() - 16.26016).abs() < 1e-5);
        assert_eq!(cfg.center_index(), 4.0);
    }

    #[test]
    fn negative_focal_rejected() {
        let mut r = raw();
        r.main_lens_focal = -16.0;
        assert_eq!(r.validate().unwrap_err().name(), "NonPositiveLength");
    }

    #[test]
    fn single_pixel_micro_image_rejected() {
        let mut r = raw();
        r.micro_image_resolution = 1;
        assert_eq!(r.validate().unwrap_err().name(), "MTooSmall");
        r.micro_image_resolution = 2;
        assert_eq!(r.validate().unwrap().center_index(), 0.5);
    }

    #[test]
    fn focus_rules() {
        let mut r = raw();
        r.focus_distance = Some(16.0);
        assert_eq!(r.validate().unwrap_err().name(), "FocusNotBeyondFocal");
        r.focus_distance = None;
        assert_eq!(r.validate().unwrap_err().name(), "BothOrNeitherFocusGiven");
        r.focus_distance = Some(1000.0);
        r.image_distance = Some(17.0);
        assert_eq!(r.validate().unwrap_err().name(), "BothOrNeitherFocusGiven");
        r.focus_distance = None;
        assert_eq!(r.validate().unwrap().image_distance(), 17.0);
        r.image_distance = Some(15.0);
        assert_eq!(r.validate().unwrap_err().name(), "FocusNotBeyondFocal");
    }

    #[test]
    fn hiatus_may_be_negative_but_finite() {
        let mut r = raw();
        r.hiatus = -3.5;
        assert_eq!(r.validate().unwrap().h1u_from_mla(), r.validate().unwrap().image_distance() - 3.5);
        r.hiatus = f64::NAN;
        assert_eq!(r.validate().unwrap_err().name(), "NonFiniteValue");
    }

    #[test]
    fn json_schema_field_names() {
        let json = serde_json::to_value(CameraConfig::reference()).unwrap();
        let keys: Vec<_> = json.as_object().unwrap().keys().cloned().collect();
        for k in [
            "pixel_pitch",
            "micro_lens_pitch",
            "micro_lens_focal",
            "micro_image_resolution",
            "main_lens_focal",
            "hiatus",
            "exit_pupil_distance",
            "focus_distance",
        ] {
            assert!(keys.iter().any(|x| x == k), "missing {k}");
        }
        assert!(!keys.iter().any(|x| x == "image_distance"));
        let back: CameraConfig = serde_json::from_value(json).unwrap();
        assert_eq!(back, CameraConfig::reference());
    }

    #[test]
    fn unknown_json_field_rejected() {
        let mut json = serde_json::to_value(CameraConfig::reference()).unwrap();
        json["aperture"] = serde_json::json!(2.8);
        assert!(serde_json::from_value::<CameraConfig>(json).is_err());
    }

    #[test]
    fn invalid_json_values_rejected() {
        let mut json = serde_json::to_value(CameraConfig::reference()).unwrap();
        json["micro_image_resolution"] = serde_json::json!(1);
        let err = serde_json::from_value::<CameraConfig>(json).unwrap_err();
        assert!(err.to_string().contains("at least 2"), "{err}");
    }
}
