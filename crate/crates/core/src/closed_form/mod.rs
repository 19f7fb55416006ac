//! Closed-form solution of the `k = 1`, `l = ±1` example with `H0 = Σ m_i`
//! and constant coupling, restricted to null states (`J0 = I0`, `J3′ = 0`)
//! starting from `I3′(0) = 0`.
//!
//! With `c = H̃′ − 4I0` the action obeys
//! `(dI3′/dt)² = 4G0² (λ−² − I3′²)(λ+² − I3′²)`, so
//! `I3′(t) = λ− sn(ωt, κ)`; the angles follow from one integral of the third
//! kind and one elementary integral.

mod lists;

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use thiserror::Error;

pub use lists::{list_deviation_report, printed_lists, ListDeviation, LIST_COMPONENTS};

use crate::elliptic::{elliptic_pi_incomplete, jacobi_am, jacobi_sn_cn_dn, EllipticError, EllipticModulus};
use crate::kepler::{anti_diagonal_pair, ks_forward, KeplerError, PhasePoint};
use crate::oscillator::{CanonicalState, ComplexState, OscillatorParams};
use crate::pauli::{IJComponents, Spinor};

/// Relative rounding slack on `λ−² ≥ 0` at the band edge.
pub const BAND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("invalid example parameters: {0}")]
    InvalidParams(String),
    #[error("energy {h} outside the band |H - 4 I0| <= 2 |G0| I0^2 (lambda_minus^2 = {lambda_minus_sq:e})")]
    OutsideBand { h: f64, lambda_minus_sq: f64 },
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Kepler(#[from] KeplerError),
}

/// Parameters of the example. `delta1 = ψ3′(0)`, `delta2 = ψ0(0) − φ0(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExampleParams {
    pub i0: f64,
    pub g0: f64,
    pub h: f64,
    pub l_sign: i32,
    pub delta1: f64,
    pub delta2: f64,
    pub phi0_0: f64,
}

impl ExampleParams {
    /// Validated parameters; `g0 = 0` is admitted only at `h = 4 i0`.
    pub fn new(i0: f64, g0: f64, h: f64, l_sign: i32) -> Result<Self, ClosedFormError> {
        let p = ExampleParams { i0, g0, h, l_sign, delta1: 0.0, delta2: 0.0, phi0_0: 0.0 };
        p.validate()?;
        Ok(p)
    }

    pub fn with_angles(mut self, delta1: f64, delta2: f64, phi0_0: f64) -> Self {
        self.delta1 = delta1;
        self.delta2 = delta2;
        self.phi0_0 = phi0_0;
        self
    }

    pub fn validate(&self) -> Result<(), ClosedFormError> {
        let finite = [self.i0, self.g0, self.h, self.delta1, self.delta2, self.phi0_0].iter().all(|v| v.is_finite());
        if !finite {
            return Err(ClosedFormError::InvalidParams("non-finite value".into()));
        }
        if !(self.i0 > 0.0) {
            return Err(ClosedFormError::InvalidParams(format!("I0 must be positive, got {}", self.i0)));
        }
        if self.l_sign != 1 && self.l_sign != -1 {
            return Err(ClosedFormError::InvalidParams(format!("l must be +1 or -1, got {}", self.l_sign)));
        }
        if self.g0 == 0.0 && self.h != 4.0 * self.i0 {
            return Err(ClosedFormError::OutsideBand { h: self.h, lambda_minus_sq: f64::NEG_INFINITY });
        }
        Ok(())
    }

    /// The matching oscillator parameters.
    pub fn oscillator(&self) -> OscillatorParams {
        OscillatorParams::example(self.l_sign, self.g0)
    }

    /// `H̃′ − 4I0`.
    pub fn detuning(&self) -> f64 {
        self.h - 4.0 * self.i0
    }

    /// `φ3′(0)` fixed by the energy: `cos φ3′(0) = c / (2 G0 I0²)`, taken in
    /// `[0, π]`. At `G0 = 0` the limit along `c = 0` gives `π/2`.
    pub fn phi3p_0(&self) -> f64 {
        if self.g0 == 0.0 {
            return FRAC_PI_2;
        }
        (self.detuning() / (2.0 * self.g0 * self.i0 * self.i0)).clamp(-1.0, 1.0).acos()
    }

    /// Canonical coordinates at `t = 0`.
    pub fn initial_canonical(&self) -> CanonicalState {
        CanonicalState {
            i0: self.i0,
            j0: self.i0,
            i3p: 0.0,
            j3p: 0.0,
            phi0: self.phi0_0,
            psi0: self.phi0_0 + self.delta2,
            phi3p: self.phi3p_0(),
            psi3p: self.delta1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticConstants {
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    /// Signed: `2 G0 λ+`.
    pub omega: f64,
    pub kappa: f64,
}

impl EllipticConstants {
    pub fn modulus(&self) -> EllipticModulus {
        EllipticModulus::new(self.kappa).expect("kappa in [0, 1] by construction")
    }
}

/// `λ±² = I0² ± |c| / (2|G0|)`, `ω = 2 G0 λ+`, `κ = λ−/λ+`.
pub fn example_constants(p: &ExampleParams) -> Result<EllipticConstants, ClosedFormError> {
    p.validate()?;
    let c = p.detuning();
    let i02 = p.i0 * p.i0;
    let d = if c == 0.0 { 0.0 } else { c.abs() / (2.0 * p.g0.abs()) };
    let lm2 = i02 - d;
    if lm2 < -BAND_SLACK * i02 {
        return Err(ClosedFormError::OutsideBand { h: p.h, lambda_minus_sq: lm2 });
    }
    let lambda_minus = lm2.max(0.0).sqrt();
    let lambda_plus = (i02 + d).sqrt();
    Ok(EllipticConstants {
        lambda_minus,
        lambda_plus,
        omega: 2.0 * p.g0 * lambda_plus,
        kappa: (lambda_minus / lambda_plus).min(1.0),
    })
}

/// `I3′(t) = λ− sn(ωt, κ)`.
pub fn i3_closed(t: f64, _p: &ExampleParams, ec: &EllipticConstants) -> f64 {
    let (sn, _, _) = jacobi_sn_cn_dn(ec.omega * t, ec.modulus());
    ec.lambda_minus * sn
}

/// `(φ0, ψ0, φ3′, ψ3′)` at time `t`.
///
/// `φ0 = φ0(0) + 2t + c/(I0 ω) Π(λ−²/I0²; am(ωt), κ)`, and
/// `φ3′ = φ3′(0) − 2c ∫₀ᵗ I3′/(I0² − I3′²)`, the latter integrated in closed
/// form through `cn` as an arctangent (continuous in `t`).
pub fn angles_closed(t: f64, p: &ExampleParams, ec: &EllipticConstants) -> Result<[f64; 4], ClosedFormError> {
    let c = p.detuning();
    let mut phi0 = p.phi0_0 + 2.0 * t;
    let mut phi3p = p.phi3p_0();
    if c != 0.0 {
        let kappa = ec.modulus();
        let u = ec.omega * t;
        let n = (ec.lambda_minus / p.i0).powi(2);
        phi0 += c / (p.i0 * ec.omega) * elliptic_pi_incomplete(n, jacobi_am(u, kappa), kappa)?;
        if ec.lambda_minus > 0.0 {
            let (_, cn, _) = jacobi_sn_cn_dn(u, kappa);
            let integral = ec.lambda_minus / ec.omega * (cn_primitive(1.0, p, ec) - cn_primitive(cn, p, ec));
            phi3p -= 2.0 * c * integral;
        }
    }
    Ok([phi0, phi0 + p.delta2, phi3p, p.delta1])
}

/// Primitive of `1 / ((a + b c²) √(r + s c²))` with `a = I0² − λ−²`,
/// `b = λ−²`, `r = 1 − κ²`, `s = κ²`; here `D = br − as > 0`.
fn cn_primitive(cn: f64, p: &ExampleParams, ec: &EllipticConstants) -> f64 {
    let b = ec.lambda_minus * ec.lambda_minus;
    let a = p.i0 * p.i0 - b;
    let s = ec.kappa * ec.kappa;
    let r = 1.0 - s;
    let d = b * r - a * s;
    (cn * d.sqrt() / (a * (r + s * cn * cn)).sqrt()).atan() / (a * d).sqrt()
}

/// Canonical coordinates at time `t`.
pub fn canonical_closed(t: f64, p: &ExampleParams, ec: &EllipticConstants) -> Result<CanonicalState, ClosedFormError> {
    let [phi0, psi0, phi3p, psi3p] = angles_closed(t, p, ec)?;
    Ok(CanonicalState { i0: p.i0, j0: p.i0, i3p: i3_closed(t, p, ec), j3p: 0.0, phi0, psi0, phi3p, psi3p })
}

/// `(η, ξ)`, the KS image `(y⃗, x⃗)`, and the `I_μ`, `J_ν` components at `t`.
pub fn state_closed(
    t: f64,
    p: &ExampleParams,
    ec: &EllipticConstants,
) -> Result<(ComplexState, PhasePoint, IJComponents), ClosedFormError> {
    let x = i3_closed(t, p, ec);
    let [phi0, _, phi3p, _] = angles_closed(t, p, ec)?;
    let l = f64::from(p.l_sign);
    let half = 0.5 * (phi3p + l * p.delta1);
    let r_plus = (p.i0 + x).max(0.0).sqrt();
    let r_minus = (p.i0 - x).max(0.0).sqrt();
    let eta = Spinor::new(
        Complex64::from_polar(r_plus, 0.5 * phi0 + 0.5 * half),
        Complex64::from_polar(r_minus, 0.5 * phi0 - 0.5 * half),
    );
    let rot1 = Complex64::from_polar(1.0, -0.5 * (p.delta1 + p.delta2));
    let rot2 = Complex64::from_polar(1.0, 0.5 * (p.delta1 - p.delta2));
    // l = +1 pairs ξ1 with η2; l = −1 pairs ξ1 with η1
    let xi = if p.l_sign == 1 {
        Spinor::new(rot1 * eta.c2.conj(), rot2 * eta.c1.conj())
    } else {
        Spinor::new(rot1 * eta.c1.conj(), rot2 * eta.c2.conj())
    };
    let s = ComplexState::new(eta, xi);
    let (theta, zeta) = anti_diagonal_pair(&s);
    let pt = ks_forward(&theta, &zeta)?;

    let rho = (p.i0 * p.i0 - x * x).max(0.0).sqrt();
    let i_arg = 0.5 * (phi3p + l * p.delta1);
    let j_arg = 0.5 * (phi3p - l * p.delta1);
    let ij = IJComponents {
        i: [p.i0, rho * i_arg.cos(), rho * i_arg.sin(), x],
        j: [p.i0, rho * j_arg.cos(), l * rho * j_arg.sin(), -l * x],
    };
    Ok((s, pt, ij))
}
