//! Spinor, twistor and hermitian-matrix algebra: the Pauli basis, the two
//! twistor metrics, momentum maps, the Cayley cotangent map, the `U(2,2)`
//! actions and a finite-difference Poisson bracket.
//!
//! The one-forms whose exterior derivatives give the symplectic structures
//! are not modelled; their content enters only through the bracket.

mod bracket;
mod cotangent;
mod herm;
mod matrix;
mod twistor;

#[cfg(test)]
pub(crate) mod testutil;

use thiserror::Error;

pub use bracket::poisson_bracket_numeric;
pub use cotangent::{
    adjoint_action, cayley_cotangent, cayley_inverse, cayley_inverse_rho, group_action, group_defect, group_inverse,
    moment_map_classical, moment_of, ActionPoint, ClassicalPoint, GROUP_TOL,
};
pub use herm::{pauli_expand, Herm2, HERMITIAN_TOL};
pub use matrix::{Mat2, Mat4C};
pub use twistor::{
    iju_components, momentum_map, representation_change, twistor_inner, IJComponents, Rep, Spinor, TwistorVec,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("matrix is not hermitian (max |H - H+| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("representation mismatch: {left:?} vs {right:?}")]
    RepMismatch { left: Rep, right: Rep },
    #[error("matrix is not unitary (max |Z+Z - 1| = {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("outside the Cayley chart (|det| = {det:e})")]
    CayleyBoundary { det: f64 },
    #[error("element is not in U(2,2) (defining-relation residual {residual:e})")]
    NotInGroup { residual: f64 },
    #[error("fractional-linear action undefined (|det(CY + D)| = {det:e})")]
    SingularAction { det: f64 },
    #[error("non-finite function value while differentiating component {component}")]
    NonFinite { component: usize },
}
