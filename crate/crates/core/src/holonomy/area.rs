use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lorentz::gamma_minus_one_from_speed_squared;

/// Minimum number of radial quadrature points accepted by [`holonomy_area_integral`].
pub const MIN_QUADRATURE_POINTS: usize = 8;

/// Radial density u/(1 − u²)^{3/2} of the velocity-space area element
/// dS = density · du dφ.
pub fn velocity_area_element(u: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&u) {
        return Err(Error::domain(format!("speed {u} outside [0, 1)")));
    }
    let s = 1.0 - u * u;
    Ok(u / (s * s.sqrt()))
}

/// Rotation angle accumulated by one revolution around a velocity-space
/// circle of radius `speed`: 2π(γ − 1), evaluated as 2π β²γ²/(γ + 1) so
/// that |speed| ~ 1e-6 keeps full relative precision.
pub fn wigner_angle_circle(speed: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&speed) {
        return Err(if speed >= 1.0 {
            Error::Superluminal(speed)
        } else {
            Error::domain(format!("speed {speed} outside [0, 1)"))
        });
    }
    Ok(2.0 * PI * gamma_minus_one_from_speed_squared(speed * speed))
}

/// Result of the curvature integral over a disk, with the Richardson error
/// estimate |S(n) − S(n/2)| / 15 of composite Simpson.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaIntegral {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

/// Curvature integral ∫∫ K dS with K = 1 over the disk of radius `speed`.
/// The angular integral is exact (2π); the radial one is composite Simpson
/// with `quadrature_points` intervals, rounded up to even.
pub fn holonomy_area_integral(speed: f64, quadrature_points: usize) -> Result<f64> {
    holonomy_area_integral_with_error(speed, quadrature_points).map(|r| r.value)
}

pub fn holonomy_area_integral_with_error(
    speed: f64,
    quadrature_points: usize,
) -> Result<AreaIntegral> {
    if quadrature_points < MIN_QUADRATURE_POINTS {
        return Err(Error::Usage(format!(
            "need at least {MIN_QUADRATURE_POINTS} quadrature points, got {quadrature_points}"
        )));
    }
    velocity_area_element(speed)?;
    let n = quadrature_points + quadrature_points % 2;
    let fine = simpson(speed, n);
    let coarse = simpson(speed, n / 2 + (n / 2) % 2);
    Ok(AreaIntegral {
        value: 2.0 * PI * fine,
        error_estimate: 2.0 * PI * (fine - coarse).abs() / 15.0,
        intervals: n,
    })
}

fn simpson(upper: f64, intervals: usize) -> f64 {
    if upper == 0.0 {
        return 0.0;
    }
    let h = upper / intervals as f64;
    let density = |u: f64| {
        let s = 1.0 - u * u;
        u / (s * s.sqrt())
    };
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..intervals {
        let f = density(i as f64 * h);
        if i % 2 == 1 {
            odd += f;
        } else {
            even += f;
        }
    }
    h / 3.0 * (density(0.0) + 4.0 * odd + 2.0 * even + density(upper))
}
