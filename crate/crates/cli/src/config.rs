//! JSON sweep configuration.
//!
//! ```json
//! {
//!   "speed_mps": 2000,
//!   "radii_m": {"min": 5e-4, "max": 1e-2, "count": 64, "spacing": "log", "include": [2e-3]},
//!   "durations_s": {"lifetime_multiples": [1, 2, 3, 4]},
//!   "lifetime_s": 887,
//!   "counts": 1000000,
//!   "seed": 1
//! }
//! ```
//!
//! `radii_m` and `durations_s` also accept plain lists. Every key is
//! optional and unknown keys are rejected.

use serde::{Deserialize, Serialize};
use wigner_core::NEUTRON_LIFETIME_S;

use crate::CliError;

pub const DEFAULT_SPEED_MPS: f64 = 2.0e3;
pub const DEFAULT_RADIUS_MIN_M: f64 = 5e-4;
pub const DEFAULT_RADIUS_MAX_M: f64 = 1e-2;
pub const DEFAULT_RADIUS_COUNT: usize = 64;
/// Ring radius at which the reference prediction is quoted; always part of
/// the default grid.
pub const ANCHOR_RADIUS_M: f64 = 2e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_speed")]
    pub speed_mps: f64,
    #[serde(default)]
    pub radii_m: RadiusGrid,
    #[serde(default)]
    pub durations_s: DurationGrid,
    #[serde(default = "default_lifetime")]
    pub lifetime_s: f64,
    #[serde(default)]
    pub counts: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_speed() -> f64 {
    DEFAULT_SPEED_MPS
}

fn default_lifetime() -> f64 {
    NEUTRON_LIFETIME_S
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            speed_mps: DEFAULT_SPEED_MPS,
            radii_m: RadiusGrid::default(),
            durations_s: DurationGrid::default(),
            lifetime_s: NEUTRON_LIFETIME_S,
            counts: None,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RadiusGrid {
    List(Vec<f64>),
    Range(RadiusRange),
}

impl Default for RadiusGrid {
    fn default() -> Self {
        RadiusGrid::Range(RadiusRange {
            min: DEFAULT_RADIUS_MIN_M,
            max: DEFAULT_RADIUS_MAX_M,
            count: DEFAULT_RADIUS_COUNT,
            spacing: Spacing::Log,
            include: vec![ANCHOR_RADIUS_M],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
    /// Extra radii merged into the grid.
    #[serde(default)]
    pub include: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Log,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DurationGrid {
    List(Vec<f64>),
    Multiples(LifetimeMultiples),
}

impl Default for DurationGrid {
    fn default() -> Self {
        DurationGrid::Multiples(LifetimeMultiples {
            lifetime_multiples: vec![1.0, 2.0, 3.0, 4.0],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LifetimeMultiples {
    pub lifetime_multiples: Vec<f64>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("malformed sweep config: {e}")))
    }

    pub fn radii(&self) -> Result<Vec<f64>, CliError> {
        let radii = match &self.radii_m {
            RadiusGrid::List(list) => list.clone(),
            RadiusGrid::Range(range) => range.resolve()?,
        };
        check_positive("radius", &radii)?;
        Ok(radii)
    }

    pub fn durations(&self) -> Result<Vec<f64>, CliError> {
        let durations = match &self.durations_s {
            DurationGrid::List(list) => list.clone(),
            DurationGrid::Multiples(m) => m
                .lifetime_multiples
                .iter()
                .map(|k| k * self.lifetime_s)
                .collect(),
        };
        check_positive("duration", &durations)?;
        Ok(durations)
    }
}

impl RadiusRange {
    /// Grid points in ascending order, `include` merged in, duplicates
    /// removed.
    pub fn resolve(&self) -> Result<Vec<f64>, CliError> {
        if !(self.min > 0.0 && self.max > self.min) {
            return Err(CliError::Usage(format!(
                "radius range needs 0 < min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.count == 0 {
            return Err(CliError::Usage("radius count must be positive".into()));
        }
        let mut radii: Vec<f64> = if self.count == 1 {
            vec![self.min]
        } else {
            let last = (self.count - 1) as f64;
            (0..self.count)
                .map(|i| {
                    let f = i as f64 / last;
                    match self.spacing {
                        Spacing::Log => self.min * (self.max / self.min).powf(f),
                        Spacing::Linear => self.min + (self.max - self.min) * f,
                    }
                })
                .collect()
        };
        radii.extend_from_slice(&self.include);
        radii.sort_by(f64::total_cmp);
        radii.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
        Ok(radii)
    }
}

fn check_positive(name: &str, values: &[f64]) -> Result<(), CliError> {
    if values.is_empty() {
        return Err(CliError::Usage(format!("{name} list is empty")));
    }
    if let Some(bad) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(CliError::Usage(format!("{name} {bad} must be positive")));
    }
    Ok(())
}
