//! Jacobi elliptic functions and Legendre integrals for real modulus
//! `0 ≤ κ ≤ 1`.

mod carlson;

use std::f64::consts::{FRAC_PI_2, PI};

use carlson::{rf, rj};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EllipticError {
    #[error("modulus {0} outside [0, 1]")]
    ModulusOutOfRange(f64),
    #[error("integral diverges at modulus 1")]
    DivergentAtUnitModulus,
    #[error("characteristic n = {n} puts a pole on the path to phi = {phi}")]
    PoleOnPath { n: f64, phi: f64 },
    #[error("non-finite argument")]
    NonFinite,
}

/// Elliptic modulus `κ` (not the parameter `m = κ²`).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    pub fn new(kappa: f64) -> Result<Self, EllipticError> {
        if (0.0..=1.0).contains(&kappa) {
            Ok(EllipticModulus(kappa))
        } else {
            Err(EllipticError::ModulusOutOfRange(kappa))
        }
    }

    pub fn kappa(self) -> f64 {
        self.0
    }

    /// Complementary modulus `√(1 − κ²)`.
    pub fn complement(self) -> f64 {
        ((1.0 - self.0) * (1.0 + self.0)).sqrt()
    }

    fn is_unit(self) -> bool {
        self.0 == 1.0
    }
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    while (a - b).abs() > 4.0 * f64::EPSILON * a {
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete integral of the first kind `K(κ)`.
pub fn elliptic_k(kappa: EllipticModulus) -> Result<f64, EllipticError> {
    if kappa.is_unit() {
        return Err(EllipticError::DivergentAtUnitModulus);
    }
    Ok(FRAC_PI_2 / agm(1.0, kappa.complement()))
}

/// `φ = jπ + r` with `|r| ≤ π/2`.
fn split_half_periods(phi: f64) -> (f64, f64) {
    let j = (phi / PI).round();
    (j, phi - j * PI)
}

/// Incomplete integral of the first kind `F(φ, κ)`.
pub fn elliptic_f(phi: f64, kappa: EllipticModulus) -> Result<f64, EllipticError> {
    if !phi.is_finite() {
        return Err(EllipticError::NonFinite);
    }
    let (j, r) = split_half_periods(phi);
    let (s, c) = r.sin_cos();
    let partial = s * rf(c * c, 1.0 - kappa.0 * kappa.0 * s * s, 1.0);
    if j == 0.0 {
        if kappa.is_unit() && c == 0.0 {
            return Err(EllipticError::DivergentAtUnitModulus);
        }
        Ok(partial)
    } else {
        Ok(2.0 * j * elliptic_k(kappa)? + partial)
    }
}

/// Amplitude for `|u| ≤ K` by the descending Landen (AGM) scheme.
fn am_reduced(u: f64, kappa: EllipticModulus) -> f64 {
    let mut a = vec![1.0];
    let mut c = vec![kappa.0];
    let mut b = kappa.complement();
    while c.last().unwrap().abs() > f64::EPSILON && a.len() < 40 {
        let an = *a.last().unwrap();
        c.push(0.5 * (an - b));
        a.push(0.5 * (an + b));
        b = (an * b).sqrt();
    }
    let n = a.len() - 1;
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    for i in (1..=n).rev() {
        phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    phi
}

/// Jacobi amplitude `am(u, κ)`: the inverse of `φ ↦ F(φ, κ)`.
pub fn jacobi_am(u: f64, kappa: EllipticModulus) -> f64 {
    if kappa.0 == 0.0 {
        return u;
    }
    if kappa.is_unit() {
        return u.sinh().atan();
    }
    let k = FRAC_PI_2 / agm(1.0, kappa.complement());
    // am(u + 2jK) = am(u) + jπ
    let j = (u / (2.0 * k)).round();
    am_reduced(u - 2.0 * j * k, kappa) + j * PI
}

/// `(sn, cn, dn)` at `(u, κ)`.
pub fn jacobi_sn_cn_dn(u: f64, kappa: EllipticModulus) -> (f64, f64, f64) {
    if kappa.is_unit() {
        let sech = 1.0 / u.cosh();
        return (u.tanh(), sech, sech);
    }
    let (sn, cn) = jacobi_am(u, kappa).sin_cos();
    let dn = (1.0 - kappa.0 * kappa.0 * sn * sn).sqrt();
    (sn, cn, dn)
}

/// Complete integral of the third kind `Π(n, κ)` for `n < 1`, `κ < 1`.
fn complete_pi(n: f64, kappa: EllipticModulus) -> f64 {
    let kc2 = (1.0 - kappa.0) * (1.0 + kappa.0);
    rf(0.0, kc2, 1.0) + n / 3.0 * rj(0.0, kc2, 1.0, 1.0 - n)
}

/// Incomplete integral of the third kind
/// `Π(n; φ, κ) = ∫₀^φ dθ / ((1 − n sin²θ) √(1 − κ² sin²θ))`.
///
/// Rejects any `n` for which `1 − n sin²θ` vanishes on `[0, φ]`.
pub fn elliptic_pi_incomplete(n: f64, phi: f64, kappa: EllipticModulus) -> Result<f64, EllipticError> {
    if !(n.is_finite() && phi.is_finite()) {
        return Err(EllipticError::NonFinite);
    }
    let (j, r) = split_half_periods(phi);
    let (s, c) = r.sin_cos();
    let max_sin2 = if j != 0.0 { 1.0 } else { s * s };
    if n * max_sin2 >= 1.0 {
        return Err(EllipticError::PoleOnPath { n, phi });
    }
    if kappa.is_unit() && (j != 0.0 || c == 0.0) {
        return Err(EllipticError::DivergentAtUnitModulus);
    }
    let s2 = s * s;
    let partial = s * rf(c * c, 1.0 - kappa.0 * kappa.0 * s2, 1.0)
        + n / 3.0 * s * s2 * rj(c * c, 1.0 - kappa.0 * kappa.0 * s2, 1.0, 1.0 - n * s2);
    if j == 0.0 {
        Ok(partial)
    } else {
        Ok(2.0 * j * complete_pi(n, kappa) + partial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad_adaptive;

    fn m(k: f64) -> EllipticModulus {
        EllipticModulus::new(k).unwrap()
    }

    #[test]
    fn modulus_range() {
        assert!(EllipticModulus::new(-0.1).is_err());
        assert!(EllipticModulus::new(1.1).is_err());
        assert!(EllipticModulus::new(1.0).is_ok());
    }

    #[test]
    fn k_values() {
        assert!((elliptic_k(m(0.0)).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let oracle =
            quad_adaptive(|t: f64| 1.0 / (1.0 - 0.25 * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-14).unwrap();
        assert!((elliptic_k(m(0.5)).unwrap() - oracle).abs() < 1e-12);
        assert!(elliptic_k(m(0.3)).unwrap() < elliptic_k(m(0.6)).unwrap());
        assert_eq!(elliptic_k(m(1.0)), Err(EllipticError::DivergentAtUnitModulus));
    }

    #[test]
    fn am_inverts_f() {
        assert_eq!(jacobi_am(1.3, m(0.0)), 1.3);
        assert_eq!(jacobi_am(0.0, m(0.7)), 0.0);
        let phi = jacobi_am(0.8, m(0.6));
        assert!((elliptic_f(phi, m(0.6)).unwrap() - 0.8).abs() < 1e-13);
        for &u in &[-9.0, -2.5, 3.7, 11.0] {
            for &k in &[0.2, 0.9, 0.999] {
                let phi = jacobi_am(u, m(k));
                assert!((elliptic_f(phi, m(k)).unwrap() - u).abs() < 1e-12 * u.abs().max(1.0));
            }
        }
    }

    #[test]
    fn degenerations() {
        let (sn, _, _) = jacobi_sn_cn_dn(1.0, m(0.0));
        assert!((sn - 1f64.sin()).abs() < 1e-15);
        let (sn, cn, dn) = jacobi_sn_cn_dn(1.0, m(1.0));
        assert!((sn - 0.7615941560).abs() < 1e-10);
        assert!((cn - dn).abs() < 1e-16);
        assert!((jacobi_am(2.0, m(1.0)) - (2.0 * 2f64.exp().atan() - FRAC_PI_2)).abs() < 1e-14);
    }

    #[test]
    fn quarter_period_and_periodicity() {
        for &k in &[0.1, 0.5, 0.9] {
            let kk = elliptic_k(m(k)).unwrap();
            assert!((jacobi_sn_cn_dn(kk, m(k)).0 - 1.0).abs() < 1e-12);
            for &u in &[-1.3, 0.4, 2.2] {
                let a = jacobi_sn_cn_dn(u, m(k)).0;
                let b = jacobi_sn_cn_dn(u + 4.0 * kk, m(k)).0;
                assert!((a - b).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn pi_values() {
        assert!((elliptic_pi_incomplete(0.0, 0.7, m(0.0)).unwrap() - 0.7).abs() < 1e-15);
        assert_eq!(elliptic_pi_incomplete(0.3, 0.0, m(0.5)).unwrap(), 0.0);
        let oracle = quad_adaptive(
            |t: f64| {
                let s2 = t.sin().powi(2);
                1.0 / ((1.0 - 0.3 * s2) * (1.0 - 0.25 * s2).sqrt())
            },
            0.0,
            1.0,
            1e-14,
        )
        .unwrap();
        assert!((elliptic_pi_incomplete(0.3, 1.0, m(0.5)).unwrap() - oracle).abs() < 1e-12);
        // Beyond a half period, and odd in φ.
        let oracle = quad_adaptive(
            |t: f64| {
                let s2 = t.sin().powi(2);
                1.0 / ((1.0 + 0.8 * s2) * (1.0 - 0.64 * s2).sqrt())
            },
            0.0,
            5.0,
            1e-14,
        )
        .unwrap();
        let v = elliptic_pi_incomplete(-0.8, 5.0, m(0.8)).unwrap();
        assert!((v - oracle).abs() < 1e-11);
        assert!((elliptic_pi_incomplete(-0.8, -5.0, m(0.8)).unwrap() + v).abs() < 1e-13);
    }

    #[test]
    fn pi_rejections() {
        assert!(matches!(elliptic_pi_incomplete(2.0, 1.0, m(0.5)), Err(EllipticError::PoleOnPath { .. })));
        assert!(matches!(elliptic_pi_incomplete(1.0, 4.0, m(0.5)), Err(EllipticError::PoleOnPath { .. })));
        assert!(elliptic_pi_incomplete(2.0, 0.5, m(0.5)).is_ok());
        assert!(elliptic_pi_incomplete(0.5, 1.0, m(1.0)).is_ok());
        assert!(elliptic_pi_incomplete(0.5, 2.0, m(1.0)).is_err());
    }
}
