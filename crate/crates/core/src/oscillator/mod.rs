//! The four-oscillator Hamiltonian family, its action-angle chart, both
//! flows, and the integration-by-quadratures pipeline.

mod flow;
mod hamiltonian;
mod params;
mod quadrature;
mod state;

pub use flow::{integrate_complex, integrate_reduced, BOX_GUARD};
pub use hamiltonian::{
    hamiltonian_from_components, hamiltonian_full, reduced_hamiltonian, reduced_parts, ReducedParts,
};
pub use params::{Affine, FnSmooth, OscillatorParams, SmoothFn4};
pub use quadrature::{
    solve_angles_quadrature, solve_i3_quadrature, FnPath, I3Path, I3Quadrature, MotionConstants, COUPLING_MIN,
};
pub use state::{from_canonical, to_canonical, to_canonical_path, unwrap_near, CanonicalState, ComplexState};

use crate::numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OscillatorError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("chart boundary: modulus of {coordinate} vanishes")]
    ChartBoundary { coordinate: &'static str },
    #[error("outside the invariant box: squared modulus of {coordinate} is {value:e}")]
    BoxViolation { coordinate: &'static str, value: f64 },
    #[error("constants inconsistent with the initial point (radicand {radicand:e})")]
    InconsistentConstants { radicand: f64 },
    #[error("initial direction undetermined: sin(phi3p) = 0 away from a turning point")]
    UndeterminedSign,
    #[error("separatrix: double root of the radicand at I3p = {at}")]
    Separatrix { at: f64 },
    #[error("phase reconstruction singular near t = {t} (coupling vanishes)")]
    SingularPhase { t: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
