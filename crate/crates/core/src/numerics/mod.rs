//! Adaptive ODE integration, root bracketing and quadrature.

mod ode;
mod quad;
mod roots;
mod trajectory;

pub use ode::{integrate_ode, FieldError, OdeOptions};
pub use quad::quad_adaptive;
pub use roots::find_root;
pub use trajectory::{uniform_grid, Trajectory};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(&'static str),
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("step budget exhausted at t = {t}")]
    TooManySteps { t: f64 },
    #[error("vector field rejected state at t = {t}: {reason}")]
    FieldRejected { t: f64, reason: String },
    #[error("function not finite at {at}")]
    NonFinite { at: f64 },
    #[error("no sign change on bracket (f(a) = {fa}, f(b) = {fb})")]
    NoSignChange { fa: f64, fb: f64 },
    #[error("no convergence: {0}")]
    NoConvergence(&'static str),
    #[error("quadrature did not reach tolerance (estimate {estimate}, error {error:e})")]
    QuadratureFailed { estimate: f64, error: f64 },
}
