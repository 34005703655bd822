//! Wigner rotation around circular loops in velocity space, computed from
//! the curvature integral and from a discrete boost-by-boost transport.

mod area;
mod transport;

pub use area::{
    holonomy_area_integral, holonomy_area_integral_with_error, velocity_area_element,
    wigner_angle_circle, AreaIntegral, MIN_QUADRATURE_POINTS,
};
pub use transport::{
    finish, richardson, transport_loop, transport_loop_with, CircleLoop, HolonomyResult,
    LoopTransport, TransportOptions, TransportStep, DEFAULT_CLOSURE_TOLERANCE,
    DEFAULT_REPROJECT_EVERY,
};
