//! Two-point chord oracle for plenoptic ray geometry.
//!
//! Every ray here is described by two points it passes through, taken from
//! the physical layout (pixel on the sensor, micro lens center, focal-plane
//! crossing of the chief ray), never from a slope/intercept formula. Lines are
//! intersected with Cramer's rule on those points and conjugates use the
//! reciprocal form `1/f = 1/b + 1/d`.
//!
//! This crate deliberately shares no code with `plenoptic-core`.

use rand::Rng;

/// Plain camera description. Lengths in millimeters.
#[derive(Clone, Copy, Debug)]
pub struct Camera {
    pub pixel_pitch: f64,
    pub micro_lens_pitch: f64,
    pub micro_lens_focal: f64,
    pub resolution: u32,
    pub main_focal: f64,
    pub hiatus: f64,
    pub exit_pupil: f64,
    /// Distance from the image-side principal plane to the MLA.
    pub image_distance: f64,
}

impl Camera {
    #[allow(clippy::too_many_arguments)]
    pub fn with_focus_distance(
        pixel_pitch: f64,
        micro_lens_pitch: f64,
        micro_lens_focal: f64,
        resolution: u32,
        main_focal: f64,
        hiatus: f64,
        exit_pupil: f64,
        focus_distance: f64,
    ) -> Self {
        Camera {
            pixel_pitch,
            micro_lens_pitch,
            micro_lens_focal,
            resolution,
            main_focal,
            hiatus,
            exit_pupil,
            image_distance: 1.0 / (1.0 / main_focal - 1.0 / focus_distance),
        }
    }

    pub fn center(&self) -> f64 {
        (self.resolution as f64 - 1.0) / 2.0
    }

    /// Focus distance from H1U implied by the image distance.
    pub fn focus_distance(&self) -> f64 {
        conjugate(self.main_focal, self.image_distance).expect("image distance beyond focal length")
    }

    /// Random physically plausible design: micro images tile the sensor,
    /// focus between 3 and 200 focal lengths, exit pupil beyond the main
    /// lens focal length.
    pub fn random<R: Rng>(rng: &mut R) -> Camera {
        let resolution = rng.gen_range(3..=21);
        let pixel_pitch = rng.gen_range(0.001..0.01);
        let micro_lens_pitch = pixel_pitch * resolution as f64 * rng.gen_range(0.98..1.02);
        let main_focal = rng.gen_range(5.0..200.0);
        let f_number = rng.gen_range(1.4..8.0);
        let micro_lens_focal = micro_lens_pitch * f_number;
        let focus = main_focal * rng.gen_range(3.0..200.0);
        Camera::with_focus_distance(
            pixel_pitch,
            micro_lens_pitch,
            micro_lens_focal,
            resolution,
            main_focal,
            main_focal * rng.gen_range(-0.5..0.5),
            main_focal * rng.gen_range(1.0..10.0),
            focus,
        )
    }
}

/// A 2-D point `(z, y)`.
pub type Point = (f64, f64);

/// A line through two distinct points.
#[derive(Clone, Copy, Debug)]
pub struct Chord {
    pub p: Point,
    pub q: Point,
}

impl Chord {
    pub fn height_at(&self, z: f64) -> f64 {
        let t = (z - self.p.0) / (self.q.0 - self.p.0);
        self.p.1 + t * (self.q.1 - self.p.1)
    }

    /// Re-sample the chord at two axial positions.
    pub fn resample(&self, z0: f64, z1: f64) -> Chord {
        Chord { p: (z0, self.height_at(z0)), q: (z1, self.height_at(z1)) }
    }
}

/// Intersection of two chords, or `None` when they are parallel.
pub fn intersect(a: &Chord, b: &Chord) -> Option<Point> {
    let (x1, y1) = a.p;
    let (x2, y2) = a.q;
    let (x3, y3) = b.p;
    let (x4, y4) = b.q;
    let den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4);
    if den == 0.0 {
        return None;
    }
    let c1 = x1 * y2 - y1 * x2;
    let c2 = x3 * y4 - y3 * x4;
    let z = (c1 * (x3 - x4) - (x1 - x2) * c2) / den;
    let y = (c1 * (y3 - y4) - (y1 - y2) * c2) / den;
    Some((z, y))
}

/// Image-side ray through pixel `k` of micro lens `j`, in the MLA frame
/// (MLA at z = 0, sensor at z = -f_s).
pub fn image_chord(cam: &Camera, k: f64, j: f64) -> Chord {
    let lens = j * cam.micro_lens_pitch;
    // micro image center: projection of the lens center from the exit pupil
    // center (z = d_A', y = 0) onto the sensor plane
    let t = (cam.exit_pupil + cam.micro_lens_focal) / cam.exit_pupil;
    let micro_center = lens * t;
    let pixel = micro_center + (k - cam.center()) * cam.pixel_pitch;
    let raw = Chord { p: (-cam.micro_lens_focal, pixel), q: (0.0, lens) };
    raw.resample(0.0, 1.0)
}

/// Object-side continuation of [`image_chord`], in a frame with the
/// object-side principal plane at z = 0 and z growing toward the object.
pub fn object_chord(cam: &Camera, k: f64, j: f64) -> Chord {
    let img = image_chord(cam, k, j);
    let height = img.height_at(cam.image_distance);
    let direction = img.height_at(1.0) - img.height_at(0.0);
    // a chief ray with the same image-side direction crosses the lens axis
    // undeviated and meets the object-side focal plane at direction * f; all
    // rays of that direction focus there
    let focal_crossing = direction * cam.main_focal;
    Chord { p: (0.0, height), q: (cam.main_focal, focal_crossing) }
}

/// Object-side conjugate of an image distance, `None` when at infinity or
/// when the image does not lie beyond the focal length.
pub fn conjugate(f: f64, b: f64) -> Option<f64> {
    let inv = 1.0 / f - 1.0 / b;
    if b <= f || inv <= 0.0 {
        None
    } else {
        Some(1.0 / inv)
    }
}

/// Refocus plane for shift `a` with half-pixel `border` offset:
/// returns `(intersection_z_mla, image_distance, object_distance_from_h1u)`.
pub fn refocus(cam: &Camera, a: f64, border: f64) -> (f64, f64, Option<f64>) {
    let j = a * (cam.resolution as f64 - 1.0) / 2.0;
    let r1 = image_chord(cam, 0.0 + border, j);
    let r2 = image_chord(cam, cam.resolution as f64 - 1.0 - border, -j);
    let (z, _) = intersect(&r1, &r2).expect("refocus rays parallel");
    let b = cam.image_distance - z;
    (z, b, conjugate(cam.main_focal, b))
}

/// Pupil point of viewpoint `i` using micro lenses `j` and `j + 1`.
pub fn viewpoint(cam: &Camera, i: f64, j: f64) -> Option<Point> {
    let k = cam.center() + i;
    intersect(&object_chord(cam, k, j), &object_chord(cam, k, j + 1.0))
}

/// Triangulation plane for gap `g` and disparity `dx` (reference viewpoint 0),
/// as `(z_from_h1u, y)`.
pub fn triangulate(cam: &Camera, g: f64, dx: f64) -> Option<Point> {
    let c = cam.center();
    intersect(&object_chord(cam, c, 0.0), &object_chord(cam, c + g, -dx))
}
