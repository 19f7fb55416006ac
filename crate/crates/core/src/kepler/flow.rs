use num_complex::Complex64;

use super::{conserved_vectors, hamiltonian_pk, project, KeplerError, PhasePoint, COLLISION_GUARD};
use crate::numerics::{integrate_ode, FieldError, OdeOptions, Trajectory};
use crate::oscillator::{ComplexState, OscillatorParams};
use crate::pauli::iju_components;

/// Largest `|I0 − J0|` accepted as null.
pub const NULL_TOL: f64 = 1e-10;

/// Analytic flow `η(t) = e^{it}η(0)`, `ξ(t) = e^{−it}ξ(0)` of a null state
/// and its projection to `(y⃗, x⃗)`.
pub fn kepler_flow(s0: &ComplexState, t: f64) -> Result<(ComplexState, PhasePoint), KeplerError> {
    let ij = iju_components(&s0.eta, &s0.xi);
    let defect = ij.i[0] - ij.j[0];
    if !(defect.abs() < NULL_TOL) {
        return Err(KeplerError::NotNull { defect });
    }
    let phase = Complex64::from_polar(1.0, t);
    let s = ComplexState::new(s0.eta.scale(phase), s0.xi.scale(phase.conj()));
    Ok((s, project(&s)?))
}

/// Central-difference gradient of `H_PK` in `[x1, x2, x3, y1, y2, y3]`.
fn pk_gradient(v: &[f64], p: &OscillatorParams) -> [f64; 6] {
    let mut g = [0.0; 6];
    for (i, gi) in g.iter_mut().enumerate() {
        let h = 1e-6 * v[i].abs().max(1.0);
        let mut up = [0.0; 6];
        up.copy_from_slice(v);
        let mut down = up;
        up[i] += h;
        down[i] -= h;
        *gi = (hamiltonian_pk(&PhasePoint::from_array(&up), p) - hamiltonian_pk(&PhasePoint::from_array(&down), p))
            / (2.0 * h);
    }
    g
}

/// Numeric perturbed-Kepler flow on state `[x1, x2, x3, y1, y2, y3]`,
/// `dx⃗/dt = −½ ∂H_PK/∂y⃗`, `dy⃗/dt = ½ ∂H_PK/∂x⃗`; the orientation is the
/// one inherited from the oscillator flow through the KS projection.
/// Records `H`, `M1..M3`, `R0`, `R1..R3`.
pub fn integrate_pk(
    pt0: &PhasePoint,
    p: &OscillatorParams,
    t_span: (f64, f64),
    opts: &OdeOptions,
    grid: &[f64],
) -> Result<Trajectory, KeplerError> {
    if !(pt0.norm_x() >= COLLISION_GUARD) {
        return Err(KeplerError::Collision { norm: pt0.norm_x() });
    }
    let field = |_t: f64, v: &[f64], dv: &mut [f64]| -> Result<(), FieldError> {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(r >= COLLISION_GUARD) {
            return Err(FieldError(format!("collision guard tripped (|x| = {r:e})")));
        }
        let g = pk_gradient(v, p);
        for k in 0..3 {
            dv[k] = -0.5 * g[3 + k];
            dv[3 + k] = 0.5 * g[k];
        }
        Ok(())
    };
    let mut traj = integrate_ode(field, &pt0.to_array(), t_span, opts, grid)?;
    record_kepler_meta(&mut traj, p);
    Ok(traj)
}

/// Adds `H`, `M1..M3`, `R0`, `R1..R3` series to a `[x⃗, y⃗]` trajectory.
pub fn record_kepler_meta(traj: &mut Trajectory, p: &OscillatorParams) {
    let names = ["H", "M1", "M2", "M3", "R0", "R1", "R2", "R3"];
    let mut cols: Vec<Vec<f64>> = vec![Vec::with_capacity(traj.len()); names.len()];
    for v in &traj.states {
        let pt = PhasePoint::from_array(v);
        let c = conserved_vectors(&pt);
        let row = [hamiltonian_pk(&pt, p), c.m[0], c.m[1], c.m[2], c.r0, c.r[0], c.r[1], c.r[2]];
        for (col, val) in cols.iter_mut().zip(row) {
            col.push(val);
        }
    }
    for (name, col) in names.iter().zip(cols) {
        traj.set_meta(name, col);
    }
}

/// `∫ f` of the quadratic through three samples, over `[u, v]`.
fn quadratic_piece(t: [f64; 3], f: [f64; 3], u: f64, v: f64) -> f64 {
    let interp = |s: f64| {
        let l0 = (s - t[1]) * (s - t[2]) / ((t[0] - t[1]) * (t[0] - t[2]));
        let l1 = (s - t[0]) * (s - t[2]) / ((t[1] - t[0]) * (t[1] - t[2]));
        let l2 = (s - t[0]) * (s - t[1]) / ((t[2] - t[0]) * (t[2] - t[1]));
        l0 * f[0] + l1 * f[1] + l2 * f[2]
    };
    (v - u) / 6.0 * (interp(u) + 4.0 * interp(0.5 * (u + v)) + interp(v))
}

/// Real time `t_r(t) = ∫₀ᵗ ‖x⃗‖ dt′` at every sample, by composite Simpson
/// on consecutive sample pairs (the piece through the last three samples
/// closes an odd count). States are `[x⃗, …]`.
pub fn real_time(traj: &Trajectory) -> Vec<f64> {
    let n = traj.len();
    let t = &traj.times;
    let f: Vec<f64> = traj.states.iter().map(|s| (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt()).collect();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(0.0);
    for i in 1..n {
        let step = if n == 2 {
            0.5 * (t[1] - t[0]) * (f[0] + f[1])
        } else {
            let start = (2 * ((i - 1) / 2)).min(n - 3);
            let idx = [start, start + 1, start + 2];
            quadratic_piece(idx.map(|j| t[j]), idx.map(|j| f[j]), t[i - 1], t[i])
        };
        out.push(out[i - 1] + step);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kepler::{hamiltonian_kepler, lift};
    use crate::numerics::uniform_grid;
    use crate::oscillator::integrate_complex;
    use std::f64::consts::PI;

    fn start() -> PhasePoint {
        PhasePoint { y: [0.3, -0.2, 0.5], x: [0.6, 0.8, -0.4] }
    }

    #[test]
    fn analytic_flow_properties() {
        let s0 = lift(&start()).unwrap();
        let (s, pt) = kepler_flow(&s0, 0.0).unwrap();
        assert!(s.max_abs_diff(&s0) < 1e-15);
        assert!(pt.max_abs_diff(&start()) < 1e-12);
        let c0 = conserved_vectors(&start());
        for t in [0.4, 1.7, 3.0] {
            let (_, a) = kepler_flow(&s0, t).unwrap();
            let (_, b) = kepler_flow(&s0, t + PI).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-9);
            let c = conserved_vectors(&a);
            assert!((c.r0 - c0.r0).abs() < 1e-12);
            for k in 0..3 {
                assert!((c.r[k] - c0.r[k]).abs() < 1e-12 && (c.m[k] - c0.m[k]).abs() < 1e-12);
            }
        }
        let bad = ComplexState::new(s0.eta.scale(2.0.into()), s0.xi);
        assert!(matches!(kepler_flow(&bad, 1.0), Err(KeplerError::NotNull { .. })));
    }

    #[test]
    fn numeric_matches_analytic() {
        let p = OscillatorParams::kepler();
        let grid = uniform_grid(0.0, 2.0 * PI, 41);
        let traj = integrate_pk(&start(), &p, (0.0, 2.0 * PI), &OdeOptions::new(1e-12, 1e-14), &grid).unwrap();
        let s0 = lift(&start()).unwrap();
        for (t, v) in traj.times.iter().zip(&traj.states) {
            let (_, exact) = kepler_flow(&s0, *t).unwrap();
            assert!(PhasePoint::from_array(v).max_abs_diff(&exact) < 1e-7, "t = {t}");
        }
    }

    #[test]
    fn lift_project_with_coupling() {
        let p = OscillatorParams::example(1, 0.1);
        let grid = uniform_grid(0.0, 5.0, 26);
        let opts = OdeOptions::new(1e-12, 1e-14);
        let traj = integrate_pk(&start(), &p, (0.0, 5.0), &opts, &grid).unwrap();
        let osc = integrate_complex(&lift(&start()).unwrap(), &p, (0.0, 5.0), &opts, &grid).unwrap();
        for (a, b) in traj.states.iter().zip(&osc.states) {
            let projected = project(&ComplexState::from_real(b)).unwrap();
            assert!(PhasePoint::from_array(a).max_abs_diff(&projected) < 1e-6);
        }
        assert!(traj.drift("H").unwrap() < 1e-8);
    }

    #[test]
    fn collision_guard() {
        let p = OscillatorParams::kepler();
        // Radial infall: y⃗ antiparallel to x⃗ reaches x⃗ = 0.
        let pt = PhasePoint { y: [0.0, 0.0, 1.0], x: [0.0, 0.0, 0.5] };
        let r = integrate_pk(&pt, &p, (0.0, 3.0), &OdeOptions::default(), &[]);
        assert!(matches!(r, Err(KeplerError::Numerics(_))), "{r:?}");
        let r = integrate_pk(&PhasePoint::default(), &p, (0.0, 1.0), &OdeOptions::default(), &[]);
        assert!(matches!(r, Err(KeplerError::Collision { .. })));
    }

    #[test]
    fn real_time_rules() {
        let mut traj = Trajectory::new();
        for t in uniform_grid(0.0, 2.0, 8) {
            traj.push(t, vec![0.0, 3.0, 0.0, 0.0, 0.0, 0.0]);
        }
        for (t, tr) in traj.times.iter().zip(real_time(&traj)) {
            assert!((tr - 3.0 * t).abs() < 1e-14);
        }
        // Circular orbit: y⃗ ⟂ x⃗ with ‖y‖ = 1 keeps ‖x‖ fixed.
        let pt = PhasePoint { y: [0.0, 1.0, 0.0], x: [0.5, 0.0, 0.0] };
        let grid = uniform_grid(0.0, 6.0, 61);
        let traj = integrate_pk(&pt, &OscillatorParams::kepler(), (0.0, 6.0), &OdeOptions::default(), &grid).unwrap();
        let tr = real_time(&traj);
        assert!(tr.windows(2).all(|w| w[1] > w[0]));
        for (t, v) in traj.times.iter().zip(&tr) {
            assert!((v - 0.5 * t).abs() < 1e-8);
        }
        assert!((hamiltonian_kepler(&pt) - 1.0).abs() < 1e-15);
    }
}
