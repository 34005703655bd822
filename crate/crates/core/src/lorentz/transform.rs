use std::ops::Mul;

use super::rotation::{orthogonality_defect, reorthogonalize, Matrix3, RotationAxisAngle};
use super::velocity::{gamma_from_speed_squared, Velocity3};
use crate::error::{Error, Result};

pub type Matrix4 = [[f64; 4]; 4];
pub type FourVector = [f64; 4];

/// Minkowski metric diagonal, signature (+, −, −, −).
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Tolerance for the metric, determinant and orthochronicity checks.
pub const LORENTZ_TOLERANCE: f64 = 1e-12;

/// Orthogonality tolerance for the rotation block in [`LorentzTransform::decompose`].
pub const DECOMPOSE_TOLERANCE: f64 = 1e-8;

/// A proper orthochronous Lorentz transformation acting on column four-vectors
/// (t, x, y, z) in units with c = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform {
    m: Matrix4,
}

impl Default for LorentzTransform {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl LorentzTransform {
    pub const IDENTITY: LorentzTransform = LorentzTransform {
        m: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    };

    /// Wraps a matrix after checking metric preservation, det = +1 and
    /// m₀₀ ≥ 1 to within `tolerance`.
    pub fn from_matrix(m: Matrix4, tolerance: f64) -> Result<Self> {
        let t = LorentzTransform { m };
        let defect = t.metric_defect();
        if !(defect <= tolerance) {
            return Err(Error::NotLorentz(format!("metric defect {defect:e}")));
        }
        if m[0][0] < 1.0 - tolerance {
            return Err(Error::NotLorentz("not orthochronous".into()));
        }
        let det = t.determinant();
        // cofactor expansion rounding grows like the fourth power of the entries
        if (det - 1.0).abs() > tolerance * m[0][0].powi(4) {
            return Err(Error::NotLorentz(format!("determinant {det}")));
        }
        Ok(t)
    }

    /// Wraps a matrix without validation. Used internally where the
    /// construction guarantees the invariants.
    pub(crate) fn from_matrix_unchecked(m: Matrix4) -> Self {
        LorentzTransform { m }
    }

    /// The pure (symmetric, rotation-free) boost with velocity `v`: it maps
    /// the rest four-velocity (1, 0, 0, 0) to (γ, γv).
    pub fn boost(v: Velocity3) -> Self {
        let [vx, vy, vz] = v.components();
        let b2 = v.speed_squared();
        let g = gamma_from_speed_squared(b2);
        // (γ − 1)/β² without dividing by β²
        let k = g * g / (g + 1.0);
        let u = [vx, vy, vz];
        let mut m = [[0.0; 4]; 4];
        m[0][0] = g;
        for i in 0..3 {
            m[0][i + 1] = g * u[i];
            m[i + 1][0] = g * u[i];
            for j in i..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                let e = delta + k * u[i] * u[j];
                m[i + 1][j + 1] = e;
                m[j + 1][i + 1] = e;
            }
        }
        LorentzTransform { m }
    }

    /// Embeds a spatial rotation.
    pub fn rotation(rotation: &RotationAxisAngle) -> Self {
        Self::from_rotation_matrix(&rotation.to_matrix())
    }

    pub(crate) fn from_rotation_matrix(r: &Matrix3) -> Self {
        let mut m = Self::IDENTITY.m;
        for i in 0..3 {
            for j in 0..3 {
                m[i + 1][j + 1] = r[i][j];
            }
        }
        LorentzTransform { m }
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.m
    }

    /// Matrix product `self · other`: apply `other` first.
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        let (a, b) = (&self.m, &other.m);
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] =
                    a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] + a[i][3] * b[3][j];
            }
        }
        LorentzTransform { m }
    }

    /// η Λᵀ η
    pub fn inverse(&self) -> LorentzTransform {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = METRIC[i] * self.m[j][i] * METRIC[j];
            }
        }
        LorentzTransform { m }
    }

    pub fn apply(&self, x: &FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for (i, row) in self.m.iter().enumerate() {
            out[i] = row[0] * x[0] + row[1] * x[1] + row[2] * x[2] + row[3] * x[3];
        }
        out
    }

    /// Λ⁻¹ x computed through η Λᵀ η without forming the inverse.
    pub fn apply_inverse(&self, x: &FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for i in 0..4 {
            let mut s = 0.0;
            for j in 0..4 {
                s += self.m[j][i] * METRIC[j] * x[j];
            }
            out[i] = METRIC[i] * s;
        }
        out
    }

    /// max |Λᵀ η Λ − η|
    pub fn metric_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let g: f64 = (0..4)
                    .map(|k| self.m[k][i] * METRIC[k] * self.m[k][j])
                    .sum();
                let target = if i == j { METRIC[i] } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.m;
        let minor = |r: [usize; 3], c: [usize; 3]| -> f64 {
            m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
                - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
                + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
        };
        let rows = [1, 2, 3];
        m[0][0] * minor(rows, [1, 2, 3]) - m[0][1] * minor(rows, [0, 2, 3])
            + m[0][2] * minor(rows, [0, 1, 3])
            - m[0][3] * minor(rows, [0, 1, 2])
    }

    pub fn is_symmetric(&self, tolerance: f64) -> bool {
        (0..4).all(|i| (0..4).all(|j| (self.m[i][j] - self.m[j][i]).abs() <= tolerance))
    }

    /// Max-norm distance between two matrices.
    pub fn max_abs_diff(&self, other: &LorentzTransform) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        worst
    }

    /// Velocity of the frame obtained by applying `self` to the rest frame,
    /// read off the image of (1, 0, 0, 0).
    pub fn image_velocity(&self) -> Result<Velocity3> {
        let t = self.m[0][0];
        Velocity3::new(self.m[1][0] / t, self.m[2][0] / t, self.m[3][0] / t)
    }

    /// Factors `self = W · B(v)` into a rotation W applied after a pure boost.
    ///
    /// Because W leaves the time axis alone, the time row of `self` equals
    /// that of B(v), so v is read from the first row. W is then
    /// `self · B(−v)`, whose spatial block must be orthogonal.
    pub fn decompose(&self) -> Result<(Velocity3, RotationAxisAngle)> {
        let (v, r) = self.decompose_matrix()?;
        Ok((v, RotationAxisAngle::from_matrix(&r)))
    }

    pub(crate) fn decompose_matrix(&self) -> Result<(Velocity3, Matrix3)> {
        let t = self.m[0][0];
        if !(t >= 1.0 - DECOMPOSE_TOLERANCE) {
            return Err(Error::NotLorentz("not orthochronous".into()));
        }
        let v = Velocity3::new(self.m[0][1] / t, self.m[0][2] / t, self.m[0][3] / t)
            .map_err(|_| Error::NotLorentz("time row is not timelike".into()))?;
        let w = self.compose(&LorentzTransform::boost(-v));
        let mut r = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = w.m[i + 1][j + 1];
            }
        }
        let mixing = (1..4)
            .map(|i| w.m[i][0].abs().max(w.m[0][i].abs()))
            .fold((w.m[0][0] - 1.0).abs(), f64::max);
        let defect = orthogonality_defect(&r).max(mixing);
        if defect > DECOMPOSE_TOLERANCE {
            return Err(Error::NotLorentz(format!(
                "rotation block departs from orthogonal by {defect:e}"
            )));
        }
        let det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        if det < 0.0 {
            return Err(Error::NotLorentz("improper rotation block".into()));
        }
        Ok((v, r))
    }

    /// Snaps an accumulated product back onto the Lorentz group by
    /// orthogonalizing the rotation factor and rebuilding `W · B(v)`.
    pub fn reproject(&self) -> Result<LorentzTransform> {
        let (v, r) = self.decompose_matrix()?;
        let w = LorentzTransform::from_rotation_matrix(&reorthogonalize(&r));
        Ok(w.compose(&LorentzTransform::boost(v)))
    }
}

impl Mul for LorentzTransform {
    type Output = LorentzTransform;

    fn mul(self, rhs: LorentzTransform) -> LorentzTransform {
        self.compose(&rhs)
    }
}

impl Mul<&LorentzTransform> for &LorentzTransform {
    type Output = LorentzTransform;

    fn mul(self, rhs: &LorentzTransform) -> LorentzTransform {
        self.compose(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vel(x: f64, y: f64, z: f64) -> Velocity3 {
        Velocity3::new(x, y, z).unwrap()
    }

    #[test]
    fn zero_boost_is_identity() {
        assert_eq!(
            LorentzTransform::boost(Velocity3::ZERO),
            LorentzTransform::IDENTITY
        );
    }

    #[test]
    fn boost_half_c_entries() {
        let b = LorentzTransform::boost(vel(0.5, 0.0, 0.0));
        let g = 1.0 / 0.75f64.sqrt();
        assert!((b.matrix()[0][0] - 1.154_700_5).abs() < 1e-7);
        assert!((b.matrix()[0][1] - 0.577_350_3).abs() < 1e-7);
        assert!((b.matrix()[0][0] - g).abs() < 1e-15);
        assert!((b.matrix()[1][1] - g).abs() < 1e-15);
        assert!(b.is_symmetric(0.0));
        let rest = b.apply(&[1.0, 0.0, 0.0, 0.0]);
        assert!((rest[1] - g * 0.5).abs() < 1e-15);
    }

    #[test]
    fn boost_and_reverse_cancel() {
        let v = vel(0.3, -0.5, 0.7);
        let p = LorentzTransform::boost(v) * LorentzTransform::boost(-v);
        assert!(p.max_abs_diff(&LorentzTransform::IDENTITY) < 1e-12);
    }

    #[test]
    fn inverse_is_eta_transpose_eta() {
        let t = LorentzTransform::boost(vel(0.0, 0.6, 0.0))
            * LorentzTransform::boost(vel(0.4, 0.0, 0.2));
        assert!((t * t.inverse()).max_abs_diff(&LorentzTransform::IDENTITY) < 1e-12);
        let x = [1.0, 0.2, -0.3, 0.4];
        let a = t.inverse().apply(&x);
        let b = t.apply_inverse(&x);
        for i in 0..4 {
            assert!((a[i] - b[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn from_matrix_validates() {
        let mut m = *LorentzTransform::boost(vel(0.2, 0.0, 0.0)).matrix();
        assert!(LorentzTransform::from_matrix(m, LORENTZ_TOLERANCE).is_ok());
        m[0][1] += 1e-6;
        assert!(LorentzTransform::from_matrix(m, LORENTZ_TOLERANCE).is_err());
        // time reversal preserves the metric but is not orthochronous
        let mut rev = *LorentzTransform::IDENTITY.matrix();
        rev[0][0] = -1.0;
        rev[1][1] = -1.0;
        assert!(LorentzTransform::from_matrix(rev, LORENTZ_TOLERANCE).is_err());
        // parity: orthochronous but det = −1
        let mut par = *LorentzTransform::IDENTITY.matrix();
        par[1][1] = -1.0;
        assert!(LorentzTransform::from_matrix(par, LORENTZ_TOLERANCE).is_err());
    }

    #[test]
    fn decompose_pure_boost() {
        let v = vel(0.1, 0.2, -0.3);
        let (w, rot) = LorentzTransform::boost(v).decompose().unwrap();
        for i in 0..3 {
            assert!((w.components()[i] - v.components()[i]).abs() < 1e-15);
        }
        assert!(rot.angle.abs() < 1e-15);
    }

    #[test]
    fn decompose_rejects_non_lorentz() {
        let mut m = *LorentzTransform::IDENTITY.matrix();
        m[1][1] = 1.1;
        let t = LorentzTransform::from_matrix_unchecked(m);
        assert!(matches!(t.decompose(), Err(Error::NotLorentz(_))));
    }

    #[test]
    fn decompose_reconstructs_rotation_times_boost() {
        let rot = RotationAxisAngle::new([1.0, 2.0, -1.0], 1.2).unwrap();
        let v = vel(-0.4, 0.1, 0.5);
        let t = LorentzTransform::rotation(&rot) * LorentzTransform::boost(v);
        let (v2, rot2) = t.decompose().unwrap();
        let rebuilt = LorentzTransform::rotation(&rot2) * LorentzTransform::boost(v2);
        assert!(rebuilt.max_abs_diff(&t) < 1e-12);
        assert!((rot2.angle - 1.2).abs() < 1e-12);
    }

    #[test]
    fn determinant_of_boost_is_one() {
        let b = LorentzTransform::boost(vel(0.6, 0.3, 0.1));
        assert!((b.determinant() - 1.0).abs() < 1e-12);
    }
}
