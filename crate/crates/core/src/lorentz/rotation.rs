use std::f64::consts::PI;

use serde::Serialize;

use super::velocity::{dot, norm};
use crate::error::{Error, Result};

/// Below this angle (radians) the rotation axis is undefined and reported as ẑ.
pub const ANGLE_ZERO_THRESHOLD: f64 = 1e-9;

pub type Matrix3 = [[f64; 3]; 3];

/// A spatial rotation as a unit axis and a signed angle in (−π, π].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationAxisAngle {
    pub axis: [f64; 3],
    pub angle: f64,
}

impl RotationAxisAngle {
    pub const IDENTITY: RotationAxisAngle = RotationAxisAngle {
        axis: [0.0, 0.0, 1.0],
        angle: 0.0,
    };

    /// Builds a rotation from an axis (normalized here) and an angle, which
    /// is wrapped into (−π, π].
    pub fn new(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = norm(&axis);
        if !(n.is_finite() && n > 0.0) || !angle.is_finite() {
            return Err(Error::domain("rotation axis must be finite and non-zero"));
        }
        Ok(RotationAxisAngle {
            axis: axis.map(|c| c / n),
            angle: wrap_angle(angle),
        })
    }

    /// Extracts axis and angle from a proper orthogonal 3×3 matrix. The
    /// angle comes back in [0, π], except below [`ANGLE_ZERO_THRESHOLD`] where
    /// the axis is ẑ and the angle keeps the sign of the z-component of the
    /// rotation generator.
    pub fn from_matrix(r: &Matrix3) -> Self {
        let s = [
            0.5 * (r[2][1] - r[1][2]),
            0.5 * (r[0][2] - r[2][0]),
            0.5 * (r[1][0] - r[0][1]),
        ];
        let cos = 0.5 * (r[0][0] + r[1][1] + r[2][2] - 1.0);
        let sin = norm(&s);
        let angle = sin.atan2(cos);

        if angle < ANGLE_ZERO_THRESHOLD {
            return RotationAxisAngle {
                axis: [0.0, 0.0, 1.0],
                angle: if s[2] < 0.0 { -angle } else { angle },
            };
        }

        if cos > -0.5 {
            return RotationAxisAngle {
                axis: s.map(|c| c / sin),
                angle,
            };
        }

        // Close to π the antisymmetric part vanishes; n nᵀ comes from the
        // symmetric part and s only fixes the overall sign.
        let k = 1.0 - cos;
        let mut outer = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { cos } else { 0.0 };
                outer[i][j] = (0.5 * (r[i][j] + r[j][i]) - delta) / k;
            }
        }
        let pivot = (0..3)
            .max_by(|&a, &b| outer[a][a].total_cmp(&outer[b][b]))
            .unwrap();
        let col = [outer[0][pivot], outer[1][pivot], outer[2][pivot]];
        let n = norm(&col);
        let mut axis = col.map(|c| c / n);
        if dot(&axis, &s) < 0.0 {
            axis = axis.map(|c| -c);
        }
        RotationAxisAngle { axis, angle }
    }

    /// Rodrigues formula.
    pub fn to_matrix(&self) -> Matrix3 {
        let [x, y, z] = self.axis;
        let (s, c) = self.angle.sin_cos();
        let t = 1.0 - c;
        [
            [c + t * x * x, t * x * y - s * z, t * x * z + s * y],
            [t * x * y + s * z, c + t * y * y, t * y * z - s * x],
            [t * x * z - s * y, t * y * z + s * x, c + t * z * z],
        ]
    }

    /// Re-expresses the rotation with its axis on the same side as
    /// `reference`, flipping the angle's sign when needed.
    pub fn signed_about(&self, reference: [f64; 3]) -> Self {
        if dot(&self.axis, &reference) < 0.0 {
            RotationAxisAngle {
                axis: self.axis.map(|c| -c),
                angle: wrap_angle(-self.angle),
            }
        } else {
            *self
        }
    }

    pub fn angle_degrees(&self) -> f64 {
        self.angle.to_degrees()
    }

    pub fn is_negligible(&self) -> bool {
        self.angle.abs() < ANGLE_ZERO_THRESHOLD
    }
}

/// Wraps into (−π, π].
pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    w
}

pub(crate) fn mat3_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub(crate) fn mat3_transpose(a: &Matrix3) -> Matrix3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

/// max |RᵀR − I|
pub fn orthogonality_defect(r: &Matrix3) -> f64 {
    let rtr = mat3_mul(&mat3_transpose(r), r);
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let id = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((rtr[i][j] - id).abs());
        }
    }
    worst
}

/// Projects a nearly orthogonal matrix onto its polar (orthogonal) factor
/// with Newton–Schulz steps R ← R(3I − RᵀR)/2.
pub fn reorthogonalize(r: &Matrix3) -> Matrix3 {
    let mut r = *r;
    for _ in 0..3 {
        let rtr = mat3_mul(&mat3_transpose(&r), &r);
        let mut corr = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { 3.0 } else { 0.0 };
                corr[i][j] = 0.5 * (id - rtr[i][j]);
            }
        }
        r = mat3_mul(&r, &corr);
    }
    r
}
