use num_complex::Complex64;

use super::{OscillatorError, OscillatorParams};
use crate::pauli::Spinor;

/// Smallest modulus for which a phase is considered defined.
pub const PHASE_MODULUS_MIN: f64 = 1e-12;
/// Reconstructed squared moduli in `(−MODULUS_SLACK, 0]` are clamped to 0.
pub const MODULUS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexState {
    pub eta: Spinor,
    pub xi: Spinor,
}

impl ComplexState {
    pub fn new(eta: Spinor, xi: Spinor) -> Self {
        ComplexState { eta, xi }
    }

    /// `[Re η1, Im η1, Re η2, Im η2, Re ξ1, Im ξ1, Re ξ2, Im ξ2]`.
    pub fn to_real(&self) -> [f64; 8] {
        let z = self.components();
        let mut out = [0.0; 8];
        for (i, c) in z.iter().enumerate() {
            out[2 * i] = c.re;
            out[2 * i + 1] = c.im;
        }
        out
    }

    pub fn from_real(v: &[f64]) -> Self {
        let c = |i: usize| Complex64::new(v[2 * i], v[2 * i + 1]);
        ComplexState::new(Spinor::new(c(0), c(1)), Spinor::new(c(2), c(3)))
    }

    /// `[η1, η2, ξ1, ξ2]`.
    pub fn components(&self) -> [Complex64; 4] {
        [self.eta.c1, self.eta.c2, self.xi.c1, self.xi.c2]
    }

    /// `(|η1|², |η2|², |ξ1|², |ξ2|²)`.
    pub fn moduli(&self) -> [f64; 4] {
        self.components().map(|z| z.norm_sqr())
    }

    pub fn max_abs_diff(&self, other: &ComplexState) -> f64 {
        self.components().iter().zip(other.components()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Action-angle chart of the oscillator phase space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CanonicalState {
    pub i0: f64,
    pub j0: f64,
    pub i3p: f64,
    pub j3p: f64,
    pub phi0: f64,
    pub psi0: f64,
    pub phi3p: f64,
    pub psi3p: f64,
}

impl CanonicalState {
    /// Order `[I0, J0, I3′, J3′, φ0, ψ0, φ3′, ψ3′]`.
    pub fn to_array(&self) -> [f64; 8] {
        [self.i0, self.j0, self.i3p, self.j3p, self.phi0, self.psi0, self.phi3p, self.psi3p]
    }

    pub fn from_array(v: &[f64]) -> Self {
        CanonicalState { i0: v[0], j0: v[1], i3p: v[2], j3p: v[3], phi0: v[4], psi0: v[5], phi3p: v[6], psi3p: v[7] }
    }

    pub fn actions(&self) -> [f64; 4] {
        [self.i0, self.j0, self.i3p, self.j3p]
    }
}

/// `(I3, J3)` from the primed pair.
pub(crate) fn unprime(p: &OscillatorParams, i3p: f64, j3p: f64) -> (f64, f64) {
    let (k, l) = (f64::from(p.k()), f64::from(p.l()));
    (k * i3p + l * j3p, -l * i3p + k * j3p)
}

/// Squared moduli `(I0 + I3, I0 − I3, J0 + J3, J0 − J3)` of a point of the
/// reduced chart.
pub(crate) fn moduli_from_actions(p: &OscillatorParams, actions: [f64; 4]) -> [f64; 4] {
    let [i0, j0, i3p, j3p] = actions;
    let (i3, j3) = unprime(p, i3p, j3p);
    [i0 + i3, i0 - i3, j0 + j3, j0 - j3]
}

const COORD_NAMES: [&str; 4] = ["eta1", "eta2", "xi1", "xi2"];

/// Raw phases `(arg η1, arg η2, arg ξ1, arg ξ2)`.
pub(crate) fn raw_phases(s: &ComplexState) -> Result<[f64; 4], OscillatorError> {
    let z = s.components();
    let mut out = [0.0; 4];
    for i in 0..4 {
        if z[i].norm() <= PHASE_MODULUS_MIN {
            return Err(OscillatorError::ChartBoundary { coordinate: COORD_NAMES[i] });
        }
        out[i] = z[i].arg();
    }
    Ok(out)
}

fn canonical_from_phases(s: &ComplexState, args: [f64; 4], p: &OscillatorParams) -> CanonicalState {
    let m = s.moduli();
    let (i3, j3) = (0.5 * (m[0] - m[1]), 0.5 * (m[2] - m[3]));
    let (phi3, psi3) = (args[0] - args[1], args[3] - args[2]);
    let (k, l) = (f64::from(p.k()), f64::from(p.l()));
    let kl2 = p.kl2();
    CanonicalState {
        i0: 0.5 * (m[0] + m[1]),
        j0: 0.5 * (m[2] + m[3]),
        i3p: (k * i3 - l * j3) / kl2,
        j3p: (l * i3 + k * j3) / kl2,
        phi0: args[0] + args[1],
        psi0: -(args[2] + args[3]),
        phi3p: k * phi3 - l * psi3,
        psi3p: l * phi3 + k * psi3,
    }
}

/// Action-angle coordinates of a point with all four moduli nonzero.
pub fn to_canonical(s: &ComplexState, p: &OscillatorParams) -> Result<CanonicalState, OscillatorError> {
    Ok(canonical_from_phases(s, raw_phases(s)?, p))
}

/// Chart change along a sampled path, with each raw phase continued to the
/// branch nearest its previous value so that all angles are unwrapped.
pub fn to_canonical_path(
    states: &[ComplexState],
    p: &OscillatorParams,
) -> Result<Vec<CanonicalState>, OscillatorError> {
    let mut out = Vec::with_capacity(states.len());
    let mut prev: Option<[f64; 4]> = None;
    for s in states {
        let mut args = raw_phases(s)?;
        if let Some(prev) = prev {
            for (a, b) in args.iter_mut().zip(prev) {
                *a = unwrap_near(*a, b);
            }
        }
        prev = Some(args);
        out.push(canonical_from_phases(s, args, p));
    }
    Ok(out)
}

/// The representative of `angle` modulo 2π closest to `reference`.
pub fn unwrap_near(angle: f64, reference: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    angle + tau * ((reference - angle) / tau).round()
}

/// Inverse chart change.
pub fn from_canonical(c: &CanonicalState, p: &OscillatorParams) -> Result<ComplexState, OscillatorError> {
    let m = moduli_from_actions(p, c.actions());
    let mut r = [0.0; 4];
    for i in 0..4 {
        if m[i] < -MODULUS_SLACK || !m[i].is_finite() {
            return Err(OscillatorError::BoxViolation { coordinate: COORD_NAMES[i], value: m[i] });
        }
        r[i] = m[i].max(0.0).sqrt();
    }
    let (k, l) = (f64::from(p.k()), f64::from(p.l()));
    let kl2 = p.kl2();
    let phi3 = (k * c.phi3p + l * c.psi3p) / kl2;
    let psi3 = (-l * c.phi3p + k * c.psi3p) / kl2;
    let args = [0.5 * (c.phi0 + phi3), 0.5 * (c.phi0 - phi3), -0.5 * (c.psi0 + psi3), 0.5 * (psi3 - c.psi0)];
    let z: Vec<Complex64> = r.iter().zip(args).map(|(&ri, a)| Complex64::from_polar(ri, a)).collect();
    Ok(ComplexState::new(Spinor::new(z[0], z[1]), Spinor::new(z[2], z[3])))
}
