use plenoptic_core::config::RawConfig;
use plenoptic_core::solver::{solve_direct, solve_pseudo_inverse};
use plenoptic_core::triangulate::viewpoint_with_lenses;
use plenoptic_core::{
    baseline, image_distance, image_ray, intersect_rays, object_distance, object_ray, refocus, refocus_dof,
    refocus_series, triangulate, viewpoint, CameraConfig, LinearSystem,
};
use proptest::prelude::*;

fn design() -> impl Strategy<Value = CameraConfig> {
    (3u32..=21, 0.001f64..0.01, 1.4f64..8.0, 5.0f64..200.0, -0.5f64..0.5, 1.0f64..10.0, 3.0f64..200.0).prop_map(
        |(m, pp, fnum, f, hiatus, pupil, focus)| {
            let pm = pp * m as f64;
            RawConfig {
                pixel_pitch: pp,
                micro_lens_pitch: pm,
                micro_lens_focal: pm * fnum,
                micro_image_resolution: m,
                main_lens_focal: f,
                hiatus: hiatus * f,
                exit_pupil_distance: pupil * f,
                focus_distance: Some(focus * f),
                image_distance: None,
            }
            .validate()
            .unwrap()
        },
    )
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mirror_symmetry(cfg in design(), k in -0.5f64..20.5, j in -40.0f64..40.0) {
        let m = cfg.resolution() as f64;
        let a = image_ray(&cfg, k, j);
        let b = image_ray(&cfg, m - 1.0 - k, -j);
        prop_assert!((a.slope + b.slope).abs() <= 1e-15 * a.slope.abs().max(1.0));
        prop_assert_eq!(a.intercept, -b.intercept);
    }

    #[test]
    fn exit_pupil_collinearity(cfg in design(), i in -10.0f64..10.0, j in -40.0f64..40.0) {
        let ray = image_ray(&cfg, cfg.center_index() + i, j);
        let d = cfg.exit_pupil_distance();
        let expected = -i * cfg.pixel_pitch() * d / cfg.micro_lens_focal();
        prop_assert!((ray.height_at(d) - expected).abs() <= 1e-12 * (expected.abs() + j.abs() * cfg.micro_lens_pitch() + 1e-3));
    }

    #[test]
    fn refraction_consistency(cfg in design(), k in -0.5f64..20.5, j in -40.0f64..40.0) {
        let img = image_ray(&cfg, k, j);
        let obj = object_ray(&cfg, k, j);
        prop_assert_eq!(obj.height_at(0.0), img.height_at(cfg.image_distance()));
    }

    #[test]
    fn conjugates_are_mutual_inverses(f in 1.0f64..500.0, ratio in 1.01f64..1e4) {
        let d = f * ratio;
        let b = image_distance(f, d).unwrap();
        let back = object_distance(f, b).unwrap().finite().unwrap();
        prop_assert!(rel(back, d) < 1e-9);
    }

    #[test]
    fn refocus_rays_cross_on_axis(cfg in design(), a in -1.0f64..2.0) {
        if let Ok(r) = refocus(&cfg, a) {
            prop_assert!(r.intersection_y.abs() <= 1e-12);
            prop_assert_eq!(r.effective_image_distance, cfg.image_distance() + r.elongation);
        }
    }

    #[test]
    fn zero_shift_recovers_focus(cfg in design()) {
        let r = refocus(&cfg, 0.0).unwrap();
        prop_assert_eq!(r.elongation, 0.0);
        let focus = object_distance(cfg.main_lens_focal(), cfg.image_distance()).unwrap().finite().unwrap();
        prop_assert!(rel(r.object_distance_from_h1u.finite().unwrap(), focus) < 1e-9);
    }

    #[test]
    fn refocus_monotone_in_shift(cfg in design()) {
        let grid: Vec<f64> = (0..=8).map(|n| n as f64 * 0.25).collect();
        let planes: Vec<_> = refocus_series(&cfg, &grid).unwrap().into_iter().collect();
        if planes.iter().all(|p| matches!(p, Ok(r) if r.distance_from_mla.finite().is_some())) {
            let d: Vec<f64> = planes.iter().map(|p| p.as_ref().unwrap().distance_from_mla.finite().unwrap()).collect();
            prop_assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
        }
    }

    #[test]
    fn dof_brackets_refocus_plane(cfg in design(), a in prop_oneof![-1.0f64..-0.05, 0.05f64..2.0]) {
        if let (Ok(r), Ok(dof)) = (refocus(&cfg, a), refocus_dof(&cfg, a)) {
            prop_assert!(dof.near_from_h1u <= r.object_distance_from_h1u);
            prop_assert!(r.object_distance_from_h1u <= dof.far_from_h1u);
        }
    }

    #[test]
    fn pupil_independent_of_viewpoint_and_lens(cfg in design(), i in -8i32..=8, j in -20i32..=20) {
        let z0 = viewpoint(&cfg, 0.0).unwrap().z_pupil;
        let v = viewpoint_with_lenses(&cfg, i as f64, j as f64).unwrap();
        prop_assert!(rel(v.z_pupil, z0) < 1e-9);
    }

    #[test]
    fn baseline_linear_in_gap(cfg in design(), g in -8i32..=8) {
        let b1 = baseline(&cfg, 1).unwrap().baseline;
        let bg = baseline(&cfg, g).unwrap().baseline;
        prop_assert!((bg - g as f64 * b1).abs() <= 1e-9 * (g.abs() as f64 * b1.abs()).max(1e-300));
    }

    #[test]
    fn zero_disparity_hits_focus_plane(cfg in design(), g in 1i32..=3) {
        let focus = refocus(&cfg, 0.0).unwrap().object_distance_from_h1u.finite().unwrap();
        let z = triangulate(&cfg, g, 0.0).unwrap().from_h1u.finite().unwrap();
        prop_assert!(rel(z, focus) < 1e-9);
    }

    #[test]
    fn depth_planes_monotone_in_disparity(cfg in design(), g in 1i32..=4) {
        let z: Vec<f64> = (-4..=8)
            .filter_map(|n| triangulate(&cfg, g, n as f64 * 0.25).ok())
            .filter_map(|p| p.from_h1u.finite())
            .collect();
        prop_assert!(z.windows(2).all(|w| w[1] < w[0]), "{z:?}");
    }

    #[test]
    fn homogeneity(cfg in design(), k in prop_oneof![Just(0.1), Just(10.0), 0.01f64..100.0]) {
        let scaled = cfg.scaled(k).unwrap();
        let (a, b) = (refocus(&cfg, 1.0), refocus(&scaled, 1.0));
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert!(rel(b.elongation, k * a.elongation) < 1e-12);
            if let (Some(x), Some(y)) = (a.distance_from_mla.finite(), b.distance_from_mla.finite()) {
                prop_assert!(rel(y, k * x) < 1e-10);
            }
        }
        let (p, q) = (baseline(&cfg, 1).unwrap(), baseline(&scaled, 1).unwrap());
        prop_assert!(rel(q.baseline, k * p.baseline) < 1e-12);
        prop_assert!(rel(q.entrance_pupil_from_h1u, k * p.entrance_pupil_from_h1u) < 1e-12);
    }

    #[test]
    fn intersection_symmetric(s1 in -1.0f64..1.0, s2 in -1.0f64..1.0, c1 in -10.0f64..10.0, c2 in -10.0f64..10.0) {
        prop_assume!((s1 - s2).abs() > 1e-6);
        let r1 = plenoptic_core::Ray::new(s1, c1, plenoptic_core::Side::Object);
        let r2 = plenoptic_core::Ray::new(s2, c2, plenoptic_core::Side::Object);
        let p = intersect_rays(&r1, &r2).unwrap();
        let q = intersect_rays(&r2, &r1).unwrap();
        let scale = p.z.abs().max(p.y.abs()).max(1.0);
        prop_assert!((p.z - q.z).abs() <= 1e-12 * scale && (p.y - q.y).abs() <= 1e-12 * scale);
        prop_assert!((r1.height_at(p.z) - p.y).abs() <= 1e-9 * scale);
        prop_assert!((r2.height_at(p.z) - p.y).abs() <= 1e-9 * scale);
    }

    #[test]
    fn direct_and_pseudo_inverse_agree(a in prop::array::uniform4(-10.0f64..10.0), b in prop::array::uniform2(-10.0f64..10.0)) {
        let det = a[0] * a[3] - a[1] * a[2];
        prop_assume!(det.abs() > 1e-2);
        let sys = LinearSystem::new(vec![[a[0], a[1]], [a[2], a[3]]], b.to_vec()).unwrap();
        let d = solve_direct(&sys).unwrap();
        let p = solve_pseudo_inverse(&sys).unwrap();
        for n in 0..2 {
            prop_assert!((d.x[n] - p.x[n]).abs() <= 1e-10 * d.x[n].abs().max(1.0));
        }
        prop_assert!(d.residual < 1e-9);
    }
}

#[test]
fn ratio_form_on_reference() {
    let cfg = CameraConfig::reference();
    for g in 1..=3 {
        for dx in -2..=2 {
            let a = triangulate(&cfg, g, dx as f64);
            // same ratio with the unit gap
            let b = triangulate(&cfg, 1, dx as f64 / g as f64);
            match (a, b) {
                (Ok(a), Ok(b)) => match (a.from_h1u.finite(), b.from_h1u.finite()) {
                    (Some(x), Some(y)) => assert!(rel(x, y) < 1e-9, "G={g} dx={dx}: {x} vs {y}"),
                    (x, y) => assert_eq!(x.is_none(), y.is_none()),
                },
                (Err(a), Err(b)) => assert_eq!(a.name(), b.name()),
                (a, b) => panic!("G={g} dx={dx}: {a:?} vs {b:?}"),
            }
        }
    }
}

#[test]
fn triangulation_matches_refocus_on_reference() {
    let cfg = CameraConfig::reference();
    let z = triangulate(&cfg, 1, 1.0).unwrap().from_h1u.finite().unwrap();
    let d = refocus(&cfg, 1.0).unwrap().object_distance_from_h1u.finite().unwrap();
    assert!(rel(z, d) < 1e-6);
}
