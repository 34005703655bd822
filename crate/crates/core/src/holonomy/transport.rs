//! Discrete transport of a rest frame around a circle in velocity space.
//!
//! The orbit is sampled at uₙ = β(cos θₙ, sin θₙ, 0) with θₙ = 2πn/N. The
//! rest-to-lab transform L starts as B(u₀). At every step the next
//! four-velocity is expressed in the current rest frame, Ũ = L⁻¹Uₙ₊₁, and
//! L is advanced by the pure boost to that velocity, L ← L·B(Ũ/Ũ⁰). Each
//! such boost moves along a velocity-space geodesic, so the path is the
//! geodesic polygon inscribed in the circle and L·(1,0,0,0) = Uₙ exactly
//! at each vertex. After k full turns L = B(u₀)·D with D a pure
//! rotation: the holonomy, which converges to k·2π(γ − 1) as N grows.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use serde::Serialize;

use super::area::wigner_angle_circle;
use crate::error::{Error, Result};
use crate::lorentz::{wrap_angle, FourVector, LorentzTransform, Velocity3};

pub const DEFAULT_CLOSURE_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_REPROJECT_EVERY: usize = 1024;

/// A circular velocity-space orbit traversed `turns` times, sampled at
/// `steps_per_turn` points per turn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleLoop {
    speed: f64,
    turns: u64,
    steps_per_turn: u64,
}

impl CircleLoop {
    pub fn new(speed: f64, turns: u64, steps_per_turn: u64) -> Result<Self> {
        if !(speed > 0.0 && speed < 1.0) {
            return Err(Error::domain(format!("loop speed {speed} outside (0, 1)")));
        }
        if turns < 1 {
            return Err(Error::Usage("turns must be at least 1".into()));
        }
        if steps_per_turn < 3 {
            return Err(Error::Usage(format!(
                "steps per turn must be at least 3, got {steps_per_turn}"
            )));
        }
        Ok(CircleLoop {
            speed,
            turns,
            steps_per_turn,
        })
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn turns(&self) -> u64 {
        self.turns
    }

    pub fn steps_per_turn(&self) -> u64 {
        self.steps_per_turn
    }

    pub fn total_steps(&self) -> u64 {
        self.turns * self.steps_per_turn
    }

    pub fn theta(&self, step: u64) -> f64 {
        2.0 * PI * (step % self.steps_per_turn) as f64 / self.steps_per_turn as f64
    }

    pub fn velocity(&self, step: u64) -> Velocity3 {
        let (s, c) = self.theta(step).sin_cos();
        Velocity3::new(self.speed * c, self.speed * s, 0.0).expect("orbit speed is subluminal")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportOptions {
    /// Largest residual boost speed accepted when the loop closes.
    pub closure_tolerance: f64,
    /// Re-project the frame onto the Lorentz group after this many steps;
    /// `None` disables re-projection.
    pub reproject_every: Option<NonZeroUsize>,
}

impl Default for TransportOptions {
    fn default() -> Self {
        TransportOptions {
            closure_tolerance: DEFAULT_CLOSURE_TOLERANCE,
            reproject_every: NonZeroUsize::new(DEFAULT_REPROJECT_EVERY),
        }
    }
}

/// State after a transport step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportStep {
    /// 1-based step index.
    pub step: u64,
    /// Orbit angle of the velocity reached at this step, in [0, 2π).
    pub theta: f64,
    /// Rotation of the transported frame relative to B(uₙ), about +ẑ,
    /// unwrapped across steps.
    pub accumulated_angle: f64,
    /// Rest-to-lab transform.
    pub frame: LorentzTransform,
}

/// Step-by-step iterator over a loop transport. Memory use is constant in
/// the number of steps.
#[derive(Debug, Clone)]
pub struct LoopTransport {
    circle: CircleLoop,
    options: TransportOptions,
    frame: LorentzTransform,
    four_velocity_scale: (f64, f64),
    step: u64,
    accumulated: f64,
    last_wrapped: f64,
}

impl LoopTransport {
    pub fn new(circle: CircleLoop, options: TransportOptions) -> Self {
        let gamma = 1.0 / (1.0 - circle.speed * circle.speed).sqrt();
        LoopTransport {
            circle,
            options,
            frame: LorentzTransform::boost(circle.velocity(0)),
            four_velocity_scale: (gamma, gamma * circle.speed),
            step: 0,
            accumulated: 0.0,
            last_wrapped: 0.0,
        }
    }

    pub fn frame(&self) -> &LorentzTransform {
        &self.frame
    }

    fn four_velocity(&self, step: u64) -> FourVector {
        let (g, gb) = self.four_velocity_scale;
        let (s, c) = self.circle.theta(step).sin_cos();
        [g, gb * c, gb * s, 0.0]
    }

    fn advance(&mut self) -> Result<TransportStep> {
        let next = self.step + 1;
        let local = self.frame.apply_inverse(&self.four_velocity(next));
        let w = Velocity3::new(
            local[1] / local[0],
            local[2] / local[0],
            local[3] / local[0],
        )
        .map_err(|_| Error::NotLorentz("transported frame lost its timelike axis".into()))?;
        self.frame = self.frame.compose(&LorentzTransform::boost(w));
        if let Some(every) = self.options.reproject_every {
            if next.is_multiple_of(every.get() as u64) {
                self.frame = self.frame.reproject()?;
            }
        }
        self.step = next;

        let wrapped = z_rotation_angle(&self.frame, self.circle.velocity(next));
        self.accumulated += wrap_angle(wrapped - self.last_wrapped);
        self.last_wrapped = wrapped;

        Ok(TransportStep {
            step: next,
            theta: self.circle.theta(next),
            accumulated_angle: self.accumulated,
            frame: self.frame,
        })
    }
}

impl Iterator for LoopTransport {
    type Item = Result<TransportStep>;

    fn next(&mut self) -> Option<Self::Item> {
        (self.step < self.circle.total_steps()).then(|| self.advance())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.circle.total_steps() - self.step) as usize;
        (left, Some(left))
    }
}

/// Angle about +ẑ of the rotation part of B(u)⁻¹·frame, in (−π, π].
fn z_rotation_angle(frame: &LorentzTransform, u: Velocity3) -> f64 {
    let b = *LorentzTransform::boost(-u).matrix();
    let f = frame.matrix();
    let entry = |i: usize, j: usize| (0..4).map(|k| b[i][k] * f[k][j]).sum::<f64>();
    (entry(2, 1) - entry(1, 2)).atan2(entry(1, 1) + entry(2, 2))
}

/// Outcome of a loop transport, set against the closed-form angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolonomyResult {
    /// turns · 2π(γ − 1)
    pub analytic_angle: f64,
    /// Magnitude of the transported rotation, unwrapped over all turns.
    pub discrete_angle: f64,
    /// The same rotation as a signed angle about +ẑ. Negative for the
    /// counter-clockwise orbit: the frame turns against the circulation.
    pub signed_angle: f64,
    /// Unit rotation axis of the closing rotation.
    pub axis: [f64; 3],
    /// Speed of the boost left in B(u₀)⁻¹·L after closing the loop.
    pub residual_boost_speed: f64,
    pub steps: u64,
}

impl HolonomyResult {
    pub fn relative_error(&self) -> f64 {
        self.discrete_angle / self.analytic_angle - 1.0
    }
}

pub fn transport_loop(circle: &CircleLoop) -> Result<HolonomyResult> {
    transport_loop_with(circle, &TransportOptions::default())
}

pub fn transport_loop_with(
    circle: &CircleLoop,
    options: &TransportOptions,
) -> Result<HolonomyResult> {
    let mut transport = LoopTransport::new(*circle, *options);
    let mut accumulated = 0.0;
    for step in transport.by_ref() {
        accumulated = step?.accumulated_angle;
    }
    finish(circle, options, transport.frame(), accumulated)
}

/// Closes a finished transport: checks the residual boost and assembles the
/// result from the final frame and the unwrapped angle.
pub fn finish(
    circle: &CircleLoop,
    options: &TransportOptions,
    frame: &LorentzTransform,
    accumulated_angle: f64,
) -> Result<HolonomyResult> {
    let closing = LorentzTransform::boost(-circle.velocity(0)).compose(frame);
    let (residual, rot) = closing.decompose()?;
    let residual_boost_speed = residual.speed();
    if !(residual_boost_speed <= options.closure_tolerance) {
        return Err(Error::LoopNotClosed {
            residual: residual_boost_speed,
            tolerance: options.closure_tolerance,
        });
    }
    let axis = if rot.is_negligible() {
        [0.0, 0.0, if accumulated_angle < 0.0 { -1.0 } else { 1.0 }]
    } else {
        rot.signed_about([0.0, 0.0, accumulated_angle.signum()])
            .axis
    };
    Ok(HolonomyResult {
        analytic_angle: circle.turns as f64 * wigner_angle_circle(circle.speed)?,
        discrete_angle: accumulated_angle.abs(),
        signed_angle: accumulated_angle,
        axis,
        residual_boost_speed,
        steps: circle.total_steps(),
    })
}

/// Richardson extrapolation of two estimates taken at step counts `n` and
/// `ratio · n`, for an error that scales as n^(−order).
pub fn richardson(coarse: f64, fine: f64, ratio: f64, order: f64) -> f64 {
    let f = ratio.powf(order);
    (f * fine - coarse) / (f - 1.0)
}
