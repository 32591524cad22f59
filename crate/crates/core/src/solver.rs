//! Ray intersections as small linear systems `A·x = b` with two unknowns.
//!
//! Square systems are solved with the closed-form 2×2 inverse, overdetermined
//! ones with the Moore–Penrose pseudo-inverse `(AᵀA)⁻¹Aᵀ` formed from the
//! normal equations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ray::Ray;

/// Relative determinant threshold below which a system counts as singular.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

/// `n × 2` system with `n ≥ 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    rows: Vec<[f64; 2]>,
    rhs: Vec<f64>,
}

impl LinearSystem {
    pub fn new(rows: Vec<[f64; 2]>, rhs: Vec<f64>) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::ShapeMismatch { rows: rows.len(), rhs: rhs.len() });
        }
        if rows.len() < 2 {
            return Err(Error::Underdetermined(rows.len()));
        }
        let entries = rows.iter().flatten().chain(rhs.iter());
        if let Some(&bad) = entries.clone().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { field: "linear system", value: bad });
        }
        Ok(LinearSystem { rows, rhs })
    }

    pub fn rows(&self) -> &[[f64; 2]] {
        &self.rows
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    fn max_row_norm_sq(&self) -> f64 {
        self.rows.iter().map(|r| r[0] * r[0] + r[1] * r[1]).fold(0.0, f64::max)
    }

    /// `‖A·x − b‖∞`.
    pub fn residual(&self, x: [f64; 2]) -> f64 {
        self.rows.iter().zip(&self.rhs).map(|(r, b)| (r[0] * x[0] + r[1] * x[1] - b).abs()).fold(0.0, f64::max)
    }
}

/// Solution vector together with its infinity-norm residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Solution {
    pub x: [f64; 2],
    pub residual: f64,
}

/// Solve with the direct inverse when square, the pseudo-inverse otherwise.
pub fn solve(system: &LinearSystem) -> Result<Solution> {
    if system.rows.len() == 2 {
        solve_direct(system)
    } else {
        solve_pseudo_inverse(system)
    }
}

/// `x = A⁻¹·b` using the first two equations.
pub fn solve_direct(system: &LinearSystem) -> Result<Solution> {
    let [[a, b], [c, d]] = [system.rows[0], system.rows[1]];
    let det = a * d - b * c;
    let threshold = SINGULARITY_THRESHOLD * system.max_row_norm_sq();
    if det.abs() < threshold || det == 0.0 {
        return Err(Error::SingularSystem { det, threshold });
    }
    let (r0, r1) = (system.rhs[0], system.rhs[1]);
    let x = [(d * r0 - b * r1) / det, (a * r1 - c * r0) / det];
    Ok(Solution { x, residual: system.residual(x) })
}

/// `x = (AᵀA)⁻¹Aᵀ·b`, the least-squares solution.
pub fn solve_pseudo_inverse(system: &LinearSystem) -> Result<Solution> {
    let mut ata = [[0.0; 2]; 2];
    let mut atb = [0.0; 2];
    for (row, &rhs) in system.rows.iter().zip(&system.rhs) {
        for p in 0..2 {
            atb[p] += row[p] * rhs;
            for q in 0..2 {
                ata[p][q] += row[p] * row[q];
            }
        }
    }
    let det = ata[0][0] * ata[1][1] - ata[0][1] * ata[1][0];
    // det(AᵀA) is the sum of squared 2×2 minors of A, so the square of the
    // direct-inverse threshold keeps both paths consistent.
    let threshold = (SINGULARITY_THRESHOLD * system.max_row_norm_sq()).powi(2);
    if det.abs() < threshold || det == 0.0 {
        return Err(Error::SingularSystem { det, threshold });
    }
    let inv = [[ata[1][1] / det, -ata[0][1] / det], [-ata[1][0] / det, ata[0][0] / det]];
    let x = [inv[0][0] * atb[0] + inv[0][1] * atb[1], inv[1][0] * atb[0] + inv[1][1] * atb[1]];
    Ok(Solution { x, residual: system.residual(x) })
}

/// Crossing point of two rays in their shared frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionPoint {
    pub z: f64,
    pub y: f64,
}

/// The system `[-slope, 1]·[z, y]ᵀ = intercept` for a set of rays.
pub fn ray_system(rays: &[Ray]) -> Result<LinearSystem> {
    LinearSystem::new(rays.iter().map(|r| [-r.slope, 1.0]).collect(), rays.iter().map(|r| r.intercept).collect())
}

/// Intersect two rays on the same side of the main lens.
pub fn intersect_rays(first: &Ray, second: &Ray) -> Result<IntersectionPoint> {
    if first.side != second.side {
        return Err(Error::MixedSides);
    }
    let system = ray_system(&[*first, *second])?;
    match solve(&system) {
        Ok(sol) => Ok(IntersectionPoint { z: sol.x[0], y: sol.x[1] }),
        Err(Error::SingularSystem { .. }) => Err(Error::ParallelRays),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ray::Side;

    fn sys(rows: &[[f64; 2]], rhs: &[f64]) -> LinearSystem {
        LinearSystem::new(rows.to_vec(), rhs.to_vec()).unwrap()
    }

    #[test]
    fn square_system() {
        let s = solve(&sys(&[[-1.0, 1.0], [1.0, 1.0]], &[2.0, 4.0])).unwrap();
        assert_eq!(s.x, [1.0, 3.0]);
        assert_eq!(s.residual, 0.0);
    }

    #[test]
    fn consistent_overdetermined() {
        let s = solve(&sys(&[[-1.0, 1.0], [1.0, 1.0], [0.0, 1.0]], &[2.0, 4.0, 3.0])).unwrap();
        assert!((s.x[0] - 1.0).abs() < 1e-14 && (s.x[1] - 3.0).abs() < 1e-14);
        assert!(s.residual < 1e-14);
    }

    #[test]
    fn least_squares_residual_reported() {
        // y = 0, y = 2, z = 1 -> best fit (1, 1), residual 1
        let s = solve(&sys(&[[0.0, 1.0], [0.0, 1.0], [1.0, 0.0]], &[0.0, 2.0, 1.0])).unwrap();
        assert!((s.x[0] - 1.0).abs() < 1e-14 && (s.x[1] - 1.0).abs() < 1e-14);
        assert!((s.residual - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identical_rows_are_singular() {
        let err = solve(&sys(&[[-1.0, 1.0], [-1.0, 1.0]], &[0.0, 1.0])).unwrap_err();
        assert_eq!(err.name(), "SingularSystem");
        let err = solve_pseudo_inverse(&sys(&[[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]], &[0.0, 1.0, 2.0])).unwrap_err();
        assert_eq!(err.name(), "SingularSystem");
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(LinearSystem::new(vec![[1.0, 0.0]], vec![1.0]).unwrap_err().name(), "Underdetermined");
        assert_eq!(LinearSystem::new(vec![[1.0, 0.0], [0.0, 1.0]], vec![1.0]).unwrap_err().name(), "ShapeMismatch");
        assert_eq!(
            LinearSystem::new(vec![[f64::NAN, 0.0], [0.0, 1.0]], vec![1.0, 1.0]).unwrap_err().name(),
            "NonFiniteValue"
        );
    }

    #[test]
    fn crossing_rays() {
        let p = intersect_rays(&Ray::new(1.0, 0.0, Side::Image), &Ray::new(-1.0, 2.0, Side::Image)).unwrap();
        assert_eq!((p.z, p.y), (1.0, 1.0));
    }

    #[test]
    fn parallel_and_mixed() {
        let a = Ray::new(0.3, 0.0, Side::Object);
        let b = Ray::new(0.3, 1.0, Side::Object);
        assert_eq!(intersect_rays(&a, &b).unwrap_err(), Error::ParallelRays);
        let c = Ray::new(0.1, 1.0, Side::Image);
        assert_eq!(intersect_rays(&a, &c).unwrap_err(), Error::MixedSides);
    }
}
