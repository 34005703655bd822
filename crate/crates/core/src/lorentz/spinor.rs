//! The SL(2, C) double cover of the proper orthochronous Lorentz group.
//!
//! A four-vector is encoded as the Hermitian matrix
//! X = t·I + x·σx + y·σy + z·σz and a spinor transform s acts as
//! X ↦ s X s†. Both s and −s give the same four-vector transform.

use std::ops::{Mul, Neg};

use num_complex::Complex64;

use super::transform::{LorentzTransform, Matrix4};
use super::velocity::{
    gamma_from_speed_squared, gamma_minus_one_from_speed_squared, norm, Velocity3,
};
use crate::error::{Error, Result};

/// Determinant tolerance accepted by [`SpinorTransform::new`] and
/// [`SpinorTransform::to_vector`].
pub const DET_TOLERANCE: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2×2 complex matrix [[a, b], [c, d]] with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorTransform {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl SpinorTransform {
    pub const IDENTITY: SpinorTransform = SpinorTransform {
        a: ONE,
        b: ZERO,
        c: ZERO,
        d: ONE,
    };

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let s = SpinorTransform { a, b, c, d };
        s.check_det()?;
        Ok(s)
    }

    #[cfg(test)]
    pub(crate) fn from_entries_unchecked(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    ) -> Self {
        SpinorTransform { a, b, c, d }
    }

    /// exp(ρ v̂·σ / 2) with ρ = artanh |v|. Hermitian and positive definite.
    pub fn boost(v: Velocity3) -> Self {
        let Some(n) = v.direction() else {
            return Self::IDENTITY;
        };
        let b2 = v.speed_squared();
        // cosh(ρ/2) = √((γ+1)/2), sinh(ρ/2) = √((γ−1)/2)
        let ch = ((gamma_from_speed_squared(b2) + 1.0) / 2.0).sqrt();
        let sh = (gamma_minus_one_from_speed_squared(b2) / 2.0).sqrt();
        let (a, b, c, d) = pauli_dot(n);
        SpinorTransform {
            a: ch + sh * a,
            b: sh * b,
            c: sh * c,
            d: ch + sh * d,
        }
    }

    /// exp(−i ω n̂·σ / 2) = cos(ω/2) I − i sin(ω/2) n̂·σ. The axis must be a
    /// unit vector to within 1e-9.
    pub fn rotation(angle: f64, axis: [f64; 3]) -> Result<Self> {
        let n = norm(&axis);
        if !((n - 1.0).abs() <= 1e-9) {
            return Err(Error::domain(format!(
                "rotation axis has norm {n}, expected 1"
            )));
        }
        if !angle.is_finite() {
            return Err(Error::domain("rotation angle must be finite"));
        }
        let (s, c) = (angle / 2.0).sin_cos();
        let (pa, pb, pc, pd) = pauli_dot(axis);
        let k = -I * s;
        Ok(SpinorTransform {
            a: c + k * pa,
            b: k * pb,
            c: k * pc,
            d: c + k * pd,
        })
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn adjoint(&self) -> Self {
        SpinorTransform {
            a: self.a.conj(),
            b: self.c.conj(),
            c: self.b.conj(),
            d: self.d.conj(),
        }
    }

    pub fn compose(&self, o: &SpinorTransform) -> Self {
        SpinorTransform {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// max |entry| of s − o
    pub fn max_abs_diff(&self, o: &SpinorTransform) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// max |entry| of s s† − I
    pub fn unitarity_defect(&self) -> f64 {
        self.compose(&self.adjoint()).max_abs_diff(&Self::IDENTITY)
    }

    pub fn is_unitary(&self, tolerance: f64) -> bool {
        self.unitarity_defect() <= tolerance
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tolerance
    }

    /// Image in the four-vector representation, Λ such that
    /// (ΛX) encodes s X s†.
    pub fn to_vector(&self) -> Result<LorentzTransform> {
        self.check_det()?;
        let basis = [
            (ONE, ZERO, ZERO, ONE),
            (ZERO, ONE, ONE, ZERO),
            (ZERO, -I, I, ZERO),
            (ONE, ZERO, ZERO, -ONE),
        ];
        let adj = self.adjoint();
        let mut m: Matrix4 = [[0.0; 4]; 4];
        for (col, &(a, b, c, d)) in basis.iter().enumerate() {
            let h = self.compose(&SpinorTransform { a, b, c, d }).compose(&adj);
            let image = [
                0.5 * (h.a.re + h.d.re),
                h.c.re,
                h.c.im,
                0.5 * (h.a.re - h.d.re),
            ];
            for row in 0..4 {
                m[row][col] = image[row];
            }
        }
        Ok(LorentzTransform::from_matrix_unchecked(m))
    }

    fn check_det(&self) -> Result<()> {
        let det = self.det();
        if !((det - ONE).norm() <= DET_TOLERANCE) {
            return Err(Error::domain(format!("spinor determinant {det} is not 1")));
        }
        Ok(())
    }
}

/// Entries of n̂·σ = [[nz, nx − i ny], [nx + i ny, −nz]].
fn pauli_dot(n: [f64; 3]) -> (Complex64, Complex64, Complex64, Complex64) {
    (
        Complex64::new(n[2], 0.0),
        Complex64::new(n[0], -n[1]),
        Complex64::new(n[0], n[1]),
        Complex64::new(-n[2], 0.0),
    )
}

impl Mul for SpinorTransform {
    type Output = SpinorTransform;

    fn mul(self, rhs: SpinorTransform) -> SpinorTransform {
        self.compose(&rhs)
    }
}

impl Neg for SpinorTransform {
    type Output = SpinorTransform;

    fn neg(self) -> SpinorTransform {
        SpinorTransform {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}
