//! Thermal-neutron ring experiment: total accumulated Wigner rotation
//! ω_T = (v / 2πr) · t · ω(v), beta-decay survival, and radius/duration
//! sweeps.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::holonomy::wigner_angle_circle;
use crate::spin::{
    apply_rotation, measured_rotation_angle, rotation_operator, sample_rotation_angle,
    ShotNoiseEstimate, SpinState,
};
use crate::SPEED_OF_LIGHT;

/// Mean neutron lifetime used by default, in seconds.
pub const NEUTRON_LIFETIME_S: f64 = 887.0;

/// Lab axis of the accumulated rotation: the orbit lies in the xy-plane.
pub const ORBIT_NORMAL: [f64; 3] = [0.0, 0.0, 1.0];

/// Detector statistics for shot-noise mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShotNoise {
    /// Neutrons entering the ring.
    pub counts: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    /// m/s
    pub speed_si: f64,
    /// m
    pub radius_si: f64,
    /// s
    pub duration_si: f64,
    /// s
    pub lifetime_si: f64,
    pub initial_spin: SpinState,
    pub shot_noise: Option<ShotNoise>,
}

impl ExperimentConfig {
    /// Config with the default lifetime and an x̂-polarized initial spin,
    /// which lies in the orbit plane and so sees the full rotation.
    pub fn new(speed_si: f64, radius_si: f64, duration_si: f64) -> Self {
        ExperimentConfig {
            speed_si,
            radius_si,
            duration_si,
            lifetime_si: NEUTRON_LIFETIME_S,
            initial_spin: SpinState::along([1.0, 0.0, 0.0]).expect("unit direction"),
            shot_noise: None,
        }
    }

    pub fn with_lifetime(mut self, lifetime_si: f64) -> Self {
        self.lifetime_si = lifetime_si;
        self
    }

    pub fn with_radius(mut self, radius_si: f64) -> Self {
        self.radius_si = radius_si;
        self
    }

    pub fn with_duration(mut self, duration_si: f64) -> Self {
        self.duration_si = duration_si;
        self
    }

    pub fn with_initial_spin(mut self, spin: SpinState) -> Self {
        self.initial_spin = spin;
        self
    }

    pub fn with_shot_noise(mut self, shot_noise: Option<ShotNoise>) -> Self {
        self.shot_noise = shot_noise;
        self
    }

    pub fn beta(&self) -> f64 {
        self.speed_si / SPEED_OF_LIGHT
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(Error::domain(format!(
                    "{name} must be positive and finite, got {x}"
                )))
            }
        };
        positive("speed", self.speed_si)?;
        positive("radius", self.radius_si)?;
        positive("duration", self.duration_si)?;
        positive("lifetime", self.lifetime_si)?;
        if self.speed_si >= SPEED_OF_LIGHT {
            return Err(Error::Superluminal(self.beta()));
        }
        if let Some(ShotNoise { counts: 0, .. }) = self.shot_noise {
            return Err(Error::domain("shot-noise count budget must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorCounts {
    pub emitted: u64,
    /// Neutrons that have not decayed by the end of the run.
    pub surviving: u64,
    pub estimate: Option<ShotNoiseEstimate>,
    pub estimated_angle_deg: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub beta: f64,
    /// v·t / 2πr, fractional.
    pub revolutions: f64,
    /// 2π(γ − 1), radians.
    pub angle_per_revolution: f64,
    pub total_angle_rad: f64,
    pub total_angle_deg: f64,
    pub survival_fraction: f64,
    pub final_spin: SpinState,
    /// Angle between initial and final Bloch vectors, degrees.
    pub measured_angle_deg: f64,
    pub detector: Option<DetectorCounts>,
}

/// exp(−duration / lifetime)
pub fn survival_fraction(duration_si: f64, lifetime_si: f64) -> Result<f64> {
    if !(duration_si > 0.0 && lifetime_si > 0.0) {
        return Err(Error::domain(format!(
            "duration ({duration_si}) and lifetime ({lifetime_si}) must be positive"
        )));
    }
    Ok((-duration_si / lifetime_si).exp())
}

pub fn total_wigner_rotation(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    evaluate(cfg, 0)
}

/// Evaluates one configuration; `stream` selects the random stream used in
/// shot-noise mode so that sweep cells draw independent samples.
fn evaluate(cfg: &ExperimentConfig, stream: u64) -> Result<ExperimentResult> {
    cfg.validate()?;
    let beta = cfg.beta();
    let angle_per_revolution = wigner_angle_circle(beta)?;
    let revolutions = cfg.speed_si * cfg.duration_si / (2.0 * PI * cfg.radius_si);
    let total_angle_rad = revolutions * angle_per_revolution;
    let survival = survival_fraction(cfg.duration_si, cfg.lifetime_si)?;

    let u = rotation_operator(total_angle_rad, ORBIT_NORMAL)?;
    let final_spin = apply_rotation(&cfg.initial_spin, &u)?;
    let measured = measured_rotation_angle(&cfg.initial_spin, &final_spin);

    let detector = cfg
        .shot_noise
        .map(|sn| simulate_detector(sn, stream, survival, measured))
        .transpose()?;

    Ok(ExperimentResult {
        beta,
        revolutions,
        angle_per_revolution,
        total_angle_rad,
        total_angle_deg: total_angle_rad.to_degrees(),
        survival_fraction: survival,
        final_spin,
        measured_angle_deg: measured.to_degrees(),
        detector,
    })
}

fn simulate_detector(
    sn: ShotNoise,
    stream: u64,
    survival: f64,
    angle: f64,
) -> Result<DetectorCounts> {
    let mut rng = ChaCha8Rng::seed_from_u64(sn.seed);
    rng.set_stream(stream);
    let surviving = Binomial::new(sn.counts, survival)
        .map_err(|e| Error::domain(format!("binomial: {e}")))?
        .sample(&mut rng);
    let estimate = if surviving > 0 {
        Some(sample_rotation_angle(angle, surviving, &mut rng)?)
    } else {
        None
    };
    Ok(DetectorCounts {
        emitted: sn.counts,
        surviving,
        estimate,
        estimated_angle_deg: estimate.map(|e| e.estimated_angle.to_degrees()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub radius_si: f64,
    pub duration_si: f64,
    pub result: ExperimentResult,
}

/// Evaluates the full (duration × radius) grid. Rows come out with
/// durations as the outer loop and radii as the inner loop, whatever order
/// the cells were computed in.
pub fn sweep_radius(
    base: &ExperimentConfig,
    radii: &[f64],
    durations: &[f64],
) -> Result<Vec<SweepRow>> {
    if radii.is_empty() || durations.is_empty() {
        return Err(Error::Usage(
            "sweep needs at least one radius and one duration".into(),
        ));
    }
    let cells: Vec<(f64, f64)> = durations
        .iter()
        .flat_map(|&t| radii.iter().map(move |&r| (r, t)))
        .collect();
    cells
        .par_iter()
        .enumerate()
        .map(|(i, &(r, t))| {
            let cfg = base.with_radius(r).with_duration(t);
            evaluate(&cfg, i as u64).map(|result| SweepRow {
                radius_si: r,
                duration_si: t,
                result,
            })
        })
        .collect()
}
