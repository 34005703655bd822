//! Wigner rotation from composed Lorentz boosts, its accumulation around
//! circular orbits in velocity space, and the resulting spin-½ rotation
//! for a thermal-neutron storage-ring experiment.
//!
//! Everything except [`experiment`] works in natural units (c = 1);
//! [`experiment`] converts from SI at its boundary.

// `!(x <= tol)` rejects NaN as well; index loops mirror the matrix algebra.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod experiment;
pub mod holonomy;
pub mod lorentz;
pub mod spin;

pub use error::{Error, Result};
pub use experiment::{
    survival_fraction, sweep_radius, total_wigner_rotation, ExperimentConfig, ExperimentResult,
    ShotNoise, SweepRow, NEUTRON_LIFETIME_S,
};
pub use holonomy::{
    holonomy_area_integral, transport_loop, transport_loop_with, velocity_area_element,
    wigner_angle_circle, CircleLoop, HolonomyResult, TransportOptions,
};
pub use lorentz::{
    boost_from_velocity, compose, decompose_boost_rotation, einstein_add,
    spinor_boost_from_velocity, spinor_to_vector, wigner_angle_two_boosts, LorentzTransform,
    RotationAxisAngle, SpinorTransform, Velocity3,
};
pub use spin::{
    apply_rotation, bloch_vector, measured_rotation_angle, rotation_operator, BlochVector,
    SpinState,
};

/// Speed of light in m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
