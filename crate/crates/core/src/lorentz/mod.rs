//! Lorentz transformations in the four-vector and spinor representations.
//!
//! Conventions: c = 1, metric signature (+, −, −, −), four-vectors are
//! columns (t, x, y, z) and transforms act as X′ = ΛX. A product `a · b`
//! applies `b` first.

mod rotation;
mod spinor;
mod transform;
mod velocity;

pub use rotation::{
    orthogonality_defect, reorthogonalize, wrap_angle, Matrix3, RotationAxisAngle,
    ANGLE_ZERO_THRESHOLD,
};
pub use spinor::{SpinorTransform, DET_TOLERANCE};
pub use transform::{
    FourVector, LorentzTransform, Matrix4, DECOMPOSE_TOLERANCE, LORENTZ_TOLERANCE, METRIC,
};
pub use velocity::Velocity3;

pub(crate) use velocity::{cross, dot, gamma_minus_one_from_speed_squared, norm};

use crate::error::{Error, Result};

pub fn boost_from_velocity(v: Velocity3) -> LorentzTransform {
    LorentzTransform::boost(v)
}

pub fn spinor_boost_from_velocity(v: Velocity3) -> SpinorTransform {
    SpinorTransform::boost(v)
}

/// `a · b`: the transform that applies `b` then `a`.
pub fn compose(a: &LorentzTransform, b: &LorentzTransform) -> LorentzTransform {
    a.compose(b)
}

/// Splits `t = W · B(v₃)`; see [`LorentzTransform::decompose`].
pub fn decompose_boost_rotation(t: &LorentzTransform) -> Result<(Velocity3, RotationAxisAngle)> {
    t.decompose()
}

pub fn spinor_to_vector(s: &SpinorTransform) -> Result<LorentzTransform> {
    s.to_vector()
}

/// Wigner rotation of Λ(v₂)Λ(v₁) = W Λ(v₃), reported about the axis
/// n̂ = v̂₂ × v̂₁ with a signed angle.
///
/// With the active column-vector convention used here the rotation about n̂
/// is negative: boosting along x̂ then ŷ rotates by +ω about +ẑ. Swapping
/// the boosts flips n̂ and the sign of the angle together, so the angle
/// about a fixed axis changes sign. For collinear (or vanishing) velocities
/// the result is the identity with axis ẑ.
pub fn wigner_angle_two_boosts(v1: Velocity3, v2: Velocity3) -> Result<RotationAxisAngle> {
    let t = LorentzTransform::boost(v2).compose(&LorentzTransform::boost(v1));
    let (_, rot) = t.decompose()?;
    let n = match (v2.direction(), v1.direction()) {
        (Some(a), Some(b)) => cross(&a, &b),
        _ => [0.0; 3],
    };
    let nn = norm(&n);
    if nn < 1e-12 {
        return Ok(rot.signed_about([0.0, 0.0, 1.0]));
    }
    let n = n.map(|c| c / nn);
    // below the zero threshold `rot` carries axis ẑ; signed_about still
    // transfers the sign when n̂ is along ±ẑ
    let signed = rot.signed_about(n);
    Ok(RotationAxisAngle {
        axis: n,
        angle: signed.angle,
    })
}

/// Relativistic velocity addition u ⊕ v: the velocity of an object moving
/// at v in a frame that moves at u. Equals the velocity of
/// Λ(u)Λ(v)·(1, 0, 0, 0).
pub fn einstein_add(u: Velocity3, v: Velocity3) -> Result<Velocity3> {
    let uv = u.dot(&v);
    let g = u.gamma();
    let k = g / (1.0 + g);
    let uc = u.components();
    let vc = v.components();
    let denom = 1.0 + uv;
    let w = [0, 1, 2].map(|i| (uc[i] + vc[i] / g + k * uv * uc[i]) / denom);
    Velocity3::from_array(w).map_err(|e| match e {
        Error::Superluminal(s) => Error::domain(format!("velocity sum rounded to speed {s}")),
        other => other,
    })
}
