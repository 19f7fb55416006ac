use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{KeplerError, PhasePoint, COLLISION_MIN};
use crate::oscillator::ComplexState;
use crate::pauli::{Herm2, Spinor};

const I: Complex64 = Complex64::new(0.0, 1.0);
/// `ζ⁺ζ` below this is treated as `ζ = 0`.
pub const ZETA_NORM_MIN: f64 = 1e-14;

/// `(y⃗, x⃗)` with `y_i = Re(ϑ⁺σ_iζ)/ζ⁺ζ` and `x_i = ½ ζ⁺σ_iζ`.
pub fn ks_forward(theta: &Spinor, zeta: &Spinor) -> Result<PhasePoint, KeplerError> {
    let n = zeta.norm_sqr();
    if !(n > ZETA_NORM_MIN) {
        return Err(KeplerError::ZeroSpinor { norm_sqr: n });
    }
    let mut y = [0.0; 3];
    let mut x = [0.0; 3];
    for i in 0..3 {
        y[i] = theta.sandwich(i + 1, zeta).re / n;
        x[i] = 0.5 * zeta.sandwich(i + 1, zeta).re;
    }
    Ok(PhasePoint { y, x })
}

/// The traceless hermitian `Y` with `Y = y⃗·σ⃗` for `y⃗ = ks_forward(ϑ, ζ).y`.
pub fn ks_y_matrix(theta: &Spinor, zeta: &Spinor) -> Herm2 {
    let n = zeta.norm_sqr();
    let v = [1, 2, 3].map(|i| theta.sandwich(i, zeta).re / n);
    Herm2::from_vector(v)
}

/// Gauge-fixed lift: `ζ2` real and nonnegative (`ζ1` real and nonnegative
/// when `ζ2 = 0`), `ϑ = (y⃗·σ⃗) ζ`.
pub fn ks_inverse(pt: &PhasePoint) -> Result<(Spinor, Spinor), KeplerError> {
    let r = pt.norm_x();
    if !(r >= COLLISION_MIN) {
        return Err(KeplerError::Collision { norm: r });
    }
    let [x1, x2, x3] = pt.x;
    let rho2 = x1 * x1 + x2 * x2;
    // r ± x3 without cancellation
    let (plus, minus) = if x3 >= 0.0 { (r + x3, rho2 / (r + x3)) } else { (rho2 / (r - x3), r - x3) };
    let zeta = Spinor::new(Complex64::from_polar(plus.sqrt(), x2.atan2(x1)), Complex64::new(minus.sqrt(), 0.0));
    let theta = zeta.transform(&Herm2::from_vector(pt.y).to_dense());
    Ok((theta, zeta))
}

/// `(ϑ, ζ) = ((η + iξ)/√2, (iη + ξ)/√2)`.
pub fn anti_diagonal_pair(s: &ComplexState) -> (Spinor, Spinor) {
    let theta = s.eta.add(&s.xi.scale(I)).scale(FRAC_1_SQRT_2.into());
    let zeta = s.eta.scale(I).add(&s.xi).scale(FRAC_1_SQRT_2.into());
    (theta, zeta)
}

/// `(η, ξ) = ((ϑ − iζ)/√2, (−iϑ + ζ)/√2)`.
pub fn diagonal_pair(theta: &Spinor, zeta: &Spinor) -> ComplexState {
    let eta = theta.add(&zeta.scale(-I)).scale(FRAC_1_SQRT_2.into());
    let xi = theta.scale(-I).add(zeta).scale(FRAC_1_SQRT_2.into());
    ComplexState::new(eta, xi)
}

/// Oscillator state projected to `(y⃗, x⃗)`.
pub fn project(s: &ComplexState) -> Result<PhasePoint, KeplerError> {
    let (theta, zeta) = anti_diagonal_pair(s);
    ks_forward(&theta, &zeta)
}

/// Null oscillator state over `pt` in the gauge of [`ks_inverse`].
pub fn lift(pt: &PhasePoint) -> Result<ComplexState, KeplerError> {
    let (theta, zeta) = ks_inverse(pt)?;
    Ok(diagonal_pair(&theta, &zeta))
}
