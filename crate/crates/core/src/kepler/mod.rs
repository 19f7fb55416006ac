//! Reduction of null oscillator states to the perturbed Kepler problem on
//! `(y⃗, x⃗)` by the Kustaanheimo–Stiefel map.

mod flow;
mod ks;

pub use flow::{integrate_pk, kepler_flow, real_time, record_kepler_meta};
pub use ks::{anti_diagonal_pair, diagonal_pair, ks_forward, ks_inverse, ks_y_matrix, lift, project, ZETA_NORM_MIN};

use crate::numerics::NumericsError;
use crate::oscillator::{hamiltonian_from_components, OscillatorParams};
use crate::pauli::IJComponents;

/// Smallest `‖x⃗‖` accepted by the inverse map and the numeric flow.
pub const COLLISION_MIN: f64 = 1e-14;
/// Collision guard of the numeric flow.
pub const COLLISION_GUARD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KeplerError {
    #[error("zeta vanishes (|zeta|^2 = {norm_sqr:e})")]
    ZeroSpinor { norm_sqr: f64 },
    #[error("collision point: |x| = {norm:e}")]
    Collision { norm: f64 },
    #[error("state is not null (I0 - J0 = {defect:e})")]
    NotNull { defect: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// A point `(y⃗, x⃗)` of `ℝ³ × (ℝ³ \ {0})`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePoint {
    pub y: [f64; 3],
    pub x: [f64; 3],
}

impl PhasePoint {
    pub fn new(y: [f64; 3], x: [f64; 3]) -> Result<Self, KeplerError> {
        let pt = PhasePoint { y, x };
        if !(pt.norm_x() >= COLLISION_MIN) {
            return Err(KeplerError::Collision { norm: pt.norm_x() });
        }
        Ok(pt)
    }

    pub fn norm_x(&self) -> f64 {
        norm(self.x)
    }

    /// `[x1, x2, x3, y1, y2, y3]`.
    pub fn to_array(&self) -> [f64; 6] {
        [self.x[0], self.x[1], self.x[2], self.y[0], self.y[1], self.y[2]]
    }

    pub fn from_array(v: &[f64]) -> Self {
        PhasePoint { x: [v[0], v[1], v[2]], y: [v[3], v[4], v[5]] }
    }

    pub fn max_abs_diff(&self, other: &PhasePoint) -> f64 {
        self.to_array().iter().zip(other.to_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

fn norm(v: [f64; 3]) -> f64 {
    dot(v, v).sqrt()
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Runge–Lenz data `(R0, R⃗)` and angular momentum `M⃗`; `M0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedVectors {
    pub r0: f64,
    pub r: [f64; 3],
    pub m: [f64; 3],
}

impl ConservedVectors {
    /// `I = ½(R − M)`, `J = ½(R + M)` with `I0 = J0 = ½R0`.
    pub fn components(&self) -> IJComponents {
        let mut i = [0.5 * self.r0; 4];
        let mut j = [0.5 * self.r0; 4];
        for k in 0..3 {
            i[k + 1] = 0.5 * (self.r[k] - self.m[k]);
            j[k + 1] = 0.5 * (self.r[k] + self.m[k]);
        }
        IJComponents { i, j }
    }
}

pub fn conserved_vectors(pt: &PhasePoint) -> ConservedVectors {
    let (x, y) = (pt.x, pt.y);
    let y2 = dot(y, y);
    let xy = dot(x, y);
    let m = cross(x, y).map(|c| 2.0 * c);
    let r = [0, 1, 2].map(|k| (1.0 - y2) * x[k] + 2.0 * xy * y[k]);
    ConservedVectors { r0: norm(x) * (1.0 + y2), r, m }
}

/// `H_K = ‖x⃗‖(1 + y⃗²)`.
pub fn hamiltonian_kepler(pt: &PhasePoint) -> f64 {
    pt.norm_x() * (1.0 + dot(pt.y, pt.y))
}

/// Oscillator Hamiltonian evaluated on the null components over `pt`.
pub fn hamiltonian_pk(pt: &PhasePoint, p: &OscillatorParams) -> f64 {
    hamiltonian_from_components(&conserved_vectors(pt).components(), p)
}
