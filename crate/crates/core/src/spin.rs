//! Spin-½ states, rotation operators and the detector observable.
//!
//! Only the spin factor of |p⟩ ⊗ |χ⟩ is modelled: the momentum factor is
//! left unchanged by the evolution, so it carries no state here.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::{cross, dot, norm, SpinorTransform};

/// Unitarity tolerance for operators passed to [`apply_rotation`].
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// Normalized two-component spinor in the ẑ basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    up: Complex64,
    down: Complex64,
}

impl SpinState {
    pub const UP: SpinState = SpinState {
        up: Complex64::new(1.0, 0.0),
        down: Complex64::new(0.0, 0.0),
    };

    pub const DOWN: SpinState = SpinState {
        up: Complex64::new(0.0, 0.0),
        down: Complex64::new(1.0, 0.0),
    };

    /// Normalizes the given amplitudes.
    pub fn new(up: Complex64, down: Complex64) -> Result<Self> {
        let n = (up.norm_sqr() + down.norm_sqr()).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::domain(
                "spin state amplitudes must be finite and not both zero",
            ));
        }
        Ok(SpinState {
            up: up / n,
            down: down / n,
        })
    }

    /// The pure state whose Bloch vector points along `direction`.
    pub fn along(direction: [f64; 3]) -> Result<Self> {
        let n = norm(&direction);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::domain("spin direction must be non-zero"));
        }
        let [x, y, z] = direction.map(|c| c / n);
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x);
        let (s, c) = (theta / 2.0).sin_cos();
        Ok(SpinState {
            up: Complex64::new(c, 0.0),
            down: Complex64::from_polar(s, phi),
        })
    }

    pub fn up_amp(&self) -> Complex64 {
        self.up
    }

    pub fn down_amp(&self) -> Complex64 {
        self.down
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    pub fn bloch_vector(&self) -> BlochVector {
        bloch_vector(self)
    }
}

impl Default for SpinState {
    fn default() -> Self {
        SpinState::UP
    }
}

impl Serialize for SpinState {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SpinState", 2)?;
        st.serialize_field("up", &[self.up.re, self.up.im])?;
        st.serialize_field("down", &[self.down.re, self.down.im])?;
        st.end()
    }
}

/// Expectation values (⟨σx⟩, ⟨σy⟩, ⟨σz⟩).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

impl BlochVector {
    pub fn to_array(&self) -> [f64; 3] {
        [self.sx, self.sy, self.sz]
    }

    /// Angle to another Bloch vector in [0, π], via atan2 so that small
    /// angles keep their precision.
    pub fn angle_to(&self, other: &BlochVector) -> f64 {
        let a = self.to_array();
        let b = other.to_array();
        norm(&cross(&a, &b)).atan2(dot(&a, &b))
    }
}

/// U(ω) = exp(−i ω n̂·σ / 2). The axis must be a unit vector to 1e-9.
pub fn rotation_operator(angle: f64, axis: [f64; 3]) -> Result<SpinorTransform> {
    SpinorTransform::rotation(angle, axis)
}

pub fn apply_rotation(state: &SpinState, u: &SpinorTransform) -> Result<SpinState> {
    let defect = u.unitarity_defect();
    if !(defect <= UNITARITY_TOLERANCE) {
        return Err(Error::domain(format!(
            "operator is not unitary (defect {defect:e})"
        )));
    }
    SpinState::new(
        u.a * state.up + u.b * state.down,
        u.c * state.up + u.d * state.down,
    )
}

pub fn bloch_vector(state: &SpinState) -> BlochVector {
    let cross_term = state.up.conj() * state.down;
    BlochVector {
        sx: 2.0 * cross_term.re,
        sy: 2.0 * cross_term.im,
        sz: state.up.norm_sqr() - state.down.norm_sqr(),
    }
}

/// Angle between the spin directions of two states, in [0, π]. Global
/// phases do not contribute.
pub fn measured_rotation_angle(initial: &SpinState, final_state: &SpinState) -> f64 {
    bloch_vector(initial).angle_to(&bloch_vector(final_state))
}

/// Simulated projective measurement of the final spin along the initial
/// spin direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShotNoiseEstimate {
    pub trials: u64,
    /// Counts found aligned with the initial direction.
    pub aligned: u64,
    /// 2 arccos √(aligned / trials), radians.
    pub estimated_angle: f64,
}

/// Draws `trials` binomial samples with success probability cos²(Δ/2) and
/// inverts the observed frequency back to an angle.
pub fn sample_rotation_angle<R: Rng + ?Sized>(
    true_angle: f64,
    trials: u64,
    rng: &mut R,
) -> Result<ShotNoiseEstimate> {
    if trials == 0 {
        return Err(Error::domain(
            "shot-noise sampling needs at least one count",
        ));
    }
    let p = (true_angle / 2.0).cos().powi(2).clamp(0.0, 1.0);
    let aligned = Binomial::new(trials, p)
        .map_err(|e| Error::domain(format!("binomial: {e}")))?
        .sample(rng);
    let freq = aligned as f64 / trials as f64;
    Ok(ShotNoiseEstimate {
        trials,
        aligned,
        estimated_angle: 2.0 * freq.sqrt().acos(),
    })
}
