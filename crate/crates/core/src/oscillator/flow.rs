use super::hamiltonian::{hamiltonian_full, reduced_parts, wirtinger_gradient};
use super::state::moduli_from_actions;
use super::{CanonicalState, ComplexState, OscillatorError, OscillatorParams};
use crate::numerics::{integrate_ode, FieldError, OdeOptions, Trajectory};
use crate::pauli::iju_components;

/// Box-contact threshold for the squared moduli along reduced flows.
pub const BOX_GUARD: f64 = 1e-10;

/// Integrates `dη/dt = i ∂H/∂η̄`, `dξ/dt = −i ∂H/∂ξ̄` in the real split
/// `[Re η1, Im η1, …, Re ξ2, Im ξ2]`, recording `H`, `I0`, `J0`, `I3p`, `J3p`.
pub fn integrate_complex(
    s0: &ComplexState,
    p: &OscillatorParams,
    t_span: (f64, f64),
    opts: &OdeOptions,
    grid: &[f64],
) -> Result<Trajectory, OscillatorError> {
    let field = |_t: f64, y: &[f64], dy: &mut [f64]| -> Result<(), FieldError> {
        let w = wirtinger_gradient(&ComplexState::from_real(y), p);
        for (j, wj) in w.iter().enumerate() {
            // i·w for η, −i·w for ξ
            let sign = if j < 2 { 1.0 } else { -1.0 };
            dy[2 * j] = -sign * wj.im;
            dy[2 * j + 1] = sign * wj.re;
        }
        Ok(())
    };
    let mut traj = integrate_ode(field, &s0.to_real(), t_span, opts, grid)?;
    record_complex_meta(&mut traj, p);
    Ok(traj)
}

pub(crate) fn record_complex_meta(traj: &mut Trajectory, p: &OscillatorParams) {
    let (k, l, kl2) = (f64::from(p.k()), f64::from(p.l()), p.kl2());
    let mut cols: [Vec<f64>; 5] = Default::default();
    for y in &traj.states {
        let s = ComplexState::from_real(y);
        let ij = iju_components(&s.eta, &s.xi);
        let (i3, j3) = (ij.i[3], ij.j[3]);
        cols[0].push(hamiltonian_full(&s, p));
        cols[1].push(ij.i[0]);
        cols[2].push(ij.j[0]);
        cols[3].push((k * i3 - l * j3) / kl2);
        cols[4].push((l * i3 + k * j3) / kl2);
    }
    for (name, col) in ["H", "I0", "J0", "I3p", "J3p"].iter().zip(cols) {
        traj.set_meta(name, col);
    }
}

/// Integrates the canonical equations on the reduced chart, state order
/// `[I0, J0, I3′, J3′, φ0, ψ0, φ3′, ψ3′]`; records `H`.
pub fn integrate_reduced(
    c0: &CanonicalState,
    p: &OscillatorParams,
    t_span: (f64, f64),
    opts: &OdeOptions,
    grid: &[f64],
) -> Result<Trajectory, OscillatorError> {
    let field = |_t: f64, y: &[f64], dy: &mut [f64]| -> Result<(), FieldError> {
        let actions = [y[0], y[1], y[2], y[3]];
        let m = moduli_from_actions(p, actions);
        if let Some(v) = m.iter().find(|&&v| v < BOX_GUARD) {
            return Err(FieldError(format!("box boundary contact (squared modulus {v:e})")));
        }
        let parts = reduced_parts(actions, p).map_err(|e| FieldError(e.to_string()))?;
        let (sin, cos) = y[6].sin_cos();
        dy[0] = 0.0;
        dy[1] = 0.0;
        dy[2] = parts.g * sin;
        dy[3] = 0.0;
        // φ0, ψ0, φ3′, ψ3′ are conjugate to I0, J0, I3′, J3′
        for v in 0..4 {
            dy[4 + v] = parts.dh0[v] + parts.dg[v] * cos;
        }
        Ok(())
    };
    let mut traj = integrate_ode(field, &c0.to_array(), t_span, opts, grid)?;
    let h: Result<Vec<f64>, _> = traj
        .states
        .iter()
        .map(|y| reduced_parts([y[0], y[1], y[2], y[3]], p).map(|parts| parts.hamiltonian(y[6])))
        .collect();
    traj.set_meta("H", h?);
    Ok(traj)
}
