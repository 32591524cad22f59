//! Paraxial chief rays of the plenoptic camera.
//!
//! Micro image centers are the projections of micro lens centers from the
//! exit pupil center onto the sensor. A pixel's chief ray runs from the
//! pixel through its micro lens center; past the main lens it continues as
//! an object-side ray referenced to H1U.

use serde::{Deserialize, Serialize};

use crate::config::CameraConfig;

/// Side of the main lens a ray lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Between sensor and main lens; intercept at the MLA plane.
    Image,
    /// In front of the main lens; intercept at H1U.
    Object,
}

/// Linear ray function `y(z) = slope·z + intercept` in the frame of its side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub slope: f64,
    pub intercept: f64,
    pub side: Side,
}

impl Ray {
    pub fn new(slope: f64, intercept: f64, side: Side) -> Self {
        Ray { slope, intercept, side }
    }

    pub fn height_at(&self, z: f64) -> f64 {
        self.slope * z + self.intercept
    }
}

/// Micro lens position `s_j = j·p_m`.
pub fn micro_lens_position(config: &CameraConfig, j: f64) -> f64 {
    j * config.micro_lens_pitch()
}

/// Sensor position of the micro image center behind micro lens `j`.
pub fn micro_image_center(config: &CameraConfig, j: f64) -> f64 {
    micro_lens_position(config, j) * (1.0 + config.micro_lens_focal() / config.exit_pupil_distance())
}

/// Image-side chief ray of pixel `k` under micro lens `j`.
///
/// Indices are continuous so pixel borders (`k ± ½`) are valid.
pub fn image_ray(config: &CameraConfig, k: f64, j: f64) -> Ray {
    let s = micro_lens_position(config, j);
    let slope = -s / config.exit_pupil_distance()
        - (k - config.center_index()) * config.pixel_pitch() / config.micro_lens_focal();
    Ray::new(slope, s, Side::Image)
}

/// Object-side continuation of [`image_ray`] through the main lens.
pub fn object_ray(config: &CameraConfig, k: f64, j: f64) -> Ray {
    let image = image_ray(config, k, j);
    let height = image.height_at(config.image_distance());
    let slope = image.slope - height / config.main_lens_focal();
    Ray::new(slope, height, Side::Object)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RawConfig;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn micro_image_centers() {
        let cfg = CameraConfig::reference();
        assert_eq!(micro_image_center(&cfg, 0.0), 0.0);
        assert!(close(micro_image_center(&cfg, 4.0), 0.0500125, 1e-15));

        let mut raw = cfg.to_raw();
        raw.exit_pupil_distance = 1e12;
        let telecentric = raw.validate().unwrap();
        assert!(close(micro_image_center(&telecentric, 4.0), 0.05, 1e-14));
    }

    #[test]
    fn axial_ray() {
        let cfg = CameraConfig::reference();
        let r = image_ray(&cfg, cfg.center_index(), 0.0);
        assert_eq!((r.slope, r.intercept), (0.0, 0.0));
        let o = object_ray(&cfg, cfg.center_index(), 0.0);
        assert_eq!((o.slope, o.intercept, o.side), (0.0, 0.0, Side::Object));
    }

    #[test]
    fn corner_pixel_rays() {
        let cfg = CameraConfig::reference();
        // (s - u)/f_s with u = s(1 + f_s/d_A') + (k - c)p_p
        let r = image_ray(&cfg, 0.0, 4.0);
        assert!(close(r.slope, 0.2235, 1e-12));
        assert!(close(r.intercept, 0.05, 1e-15));
        let m = image_ray(&cfg, 8.0, -4.0);
        assert!(close(m.slope, -0.2235, 1e-12));
        assert!(close(m.intercept, -0.05, 1e-15));
    }

    #[test]
    fn first_off_axis_object_ray() {
        let cfg = CameraConfig::reference();
        let o = object_ray(&cfg, cfg.center_index() + 1.0, 0.0);
        let b = cfg.image_distance();
        let u = -0.056 * b;
        assert!(close(o.intercept, u, 1e-12));
        assert!(close(o.slope, -0.056 - u / 16.0, 1e-15));
        assert!(close(o.slope, 0.0009106, 1e-7));
        assert!(close(o.intercept, -0.910569, 1e-6));
    }

    #[test]
    fn scaling_keeps_slopes() {
        let cfg = CameraConfig::reference();
        let big = cfg.scaled(10.0).unwrap();
        let k = cfg.center_index() + 1.0;
        let (a, b) = (object_ray(&cfg, k, 0.0), object_ray(&big, k, 0.0));
        assert!(close(a.slope, b.slope, 1e-15));
        assert!(close(10.0 * a.intercept, b.intercept, 1e-12));
    }

    #[test]
    fn rays_meet_at_main_lens() {
        let raw = RawConfig { hiatus: 2.0, ..CameraConfig::reference().to_raw() };
        let cfg = raw.validate().unwrap();
        for &(k, j) in &[(0.0, 3.0), (2.5, -7.0), (8.0, 11.0)] {
            let i = image_ray(&cfg, k, j);
            let o = object_ray(&cfg, k, j);
            assert!(close(o.height_at(0.0), i.height_at(cfg.image_distance()), 1e-15));
        }
    }
}
