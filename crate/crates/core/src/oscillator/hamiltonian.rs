use num_complex::Complex64;

use super::state::{moduli_from_actions, unprime, ComplexState, MODULUS_SLACK};
use super::{CanonicalState, OscillatorError, OscillatorParams};
use crate::pauli::IJComponents;

/// `z^e` for `e ≥ 0`, `z̄^−e` otherwise.
fn signed_power(z: Complex64, e: i32) -> Complex64 {
    if e >= 0 {
        z.powi(e)
    } else {
        z.conj().powi(-e)
    }
}

/// Exponents `(a, b)` of `z^a z̄^b` in the interaction monomial, per
/// component `[η1, η2, ξ1, ξ2]`.
fn monomial_exponents(p: &OscillatorParams) -> [(i32, i32); 4] {
    [p.k(), -p.k(), p.l(), -p.l()].map(|e| if e >= 0 { (e, 0) } else { (0, -e) })
}

/// The interaction monomial `P = η1^k η2^−k ξ1^l ξ2^−l`.
pub(crate) fn interaction_monomial(s: &ComplexState, p: &OscillatorParams) -> Complex64 {
    let z = s.components();
    signed_power(z[0], p.k()) * signed_power(z[1], -p.k()) * signed_power(z[2], p.l()) * signed_power(z[3], -p.l())
}

/// `H = H0(m) + G0(m)·(P + P̄)`.
pub fn hamiltonian_full(s: &ComplexState, p: &OscillatorParams) -> f64 {
    let m = s.moduli();
    p.h0.value(m) + 2.0 * p.g0.value(m) * interaction_monomial(s, p).re
}

/// The same Hamiltonian written through the quadratic components `I_μ`,
/// `J_ν`, using `η1 η̄2 = I1 + iI2` and `ξ1 ξ̄2 = J1 + iJ2`.
pub fn hamiltonian_from_components(ij: &IJComponents, p: &OscillatorParams) -> f64 {
    let (i, j) = (ij.i, ij.j);
    let m = [i[0] + i[3], i[0] - i[3], j[0] + j[3], j[0] - j[3]];
    let monomial = signed_power(Complex64::new(i[1], i[2]), p.k()) * signed_power(Complex64::new(j[1], j[2]), p.l());
    p.h0.value(m) + 2.0 * p.g0.value(m) * monomial.re
}

/// `∂H/∂z̄` for each of `[η1, η2, ξ1, ξ2]`.
pub(crate) fn wirtinger_gradient(s: &ComplexState, p: &OscillatorParams) -> [Complex64; 4] {
    let z = s.components();
    let m = s.moduli();
    let exps = monomial_exponents(p);
    let factors: Vec<Complex64> = z.iter().zip(exps).map(|(zi, (a, b))| zi.powi(a) * zi.conj().powi(b)).collect();
    let monomial: Complex64 = factors.iter().product();
    let g0 = p.g0.value(m);
    let dh = p.h0.gradient(m);
    let dg = p.g0.gradient(m);
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for jdx in 0..4 {
        let others: Complex64 = (0..4).filter(|&i| i != jdx).map(|i| factors[i]).product();
        let (a, b) = exps[jdx];
        let zj = z[jdx];
        let d_dz =
            if a > 0 { f64::from(a) * zj.powi(a - 1) * zj.conj().powi(b) * others } else { Complex64::new(0.0, 0.0) };
        let d_dzbar =
            if b > 0 { f64::from(b) * zj.powi(a) * zj.conj().powi(b - 1) * others } else { Complex64::new(0.0, 0.0) };
        out[jdx] = (dh[jdx] + 2.0 * monomial.re * dg[jdx]) * zj + g0 * (d_dzbar + d_dz.conj());
    }
    out
}

/// `H̃′ = H̃0′ + G̃0′ cos φ3′` split into its action-dependent pieces, with
/// partial derivatives in the order `(I0, J0, I3′, J3′)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParts {
    pub h0: f64,
    pub g: f64,
    pub dh0: [f64; 4],
    pub dg: [f64; 4],
}

impl ReducedParts {
    pub fn hamiltonian(&self, phi3p: f64) -> f64 {
        self.h0 + self.g * phi3p.cos()
    }
}

/// `a^(e/2)` and its derivative in `a`.
fn half_power(a: f64, e: u32) -> (f64, f64) {
    match e {
        0 => (1.0, 0.0),
        2 => (a, 1.0),
        _ => {
            let v = a.powf(0.5 * f64::from(e));
            (v, 0.5 * f64::from(e) * a.powf(0.5 * f64::from(e) - 1.0))
        }
    }
}

/// Evaluates `H̃0′` and `G̃0′` on the reduced chart.
pub fn reduced_parts(actions: [f64; 4], p: &OscillatorParams) -> Result<ReducedParts, OscillatorError> {
    let m = moduli_from_actions(p, actions);
    for (i, &mi) in m.iter().enumerate() {
        if mi < -MODULUS_SLACK || !mi.is_finite() {
            return Err(OscillatorError::BoxViolation { coordinate: ["eta1", "eta2", "xi1", "xi2"][i], value: mi });
        }
    }
    let m = m.map(|x| x.max(0.0));
    let [i0, j0, i3p, j3p] = actions;
    let (k, l) = (f64::from(p.k()), f64::from(p.l()));
    let (i3, j3) = unprime(p, i3p, j3p);

    // ∂m/∂(I0, J0, I3′, J3′)
    let dm = [[1.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 1.0], [k, -k, -l, l], [l, -l, k, -k]];
    let chain = |grad: [f64; 4]| -> [f64; 4] { dm.map(|row| row.iter().zip(grad).map(|(a, b)| a * b).sum()) };

    let a = (i0 * i0 - i3 * i3).max(0.0);
    let b = (j0 * j0 - j3 * j3).max(0.0);
    let (fa, dfa) = half_power(a, p.k().unsigned_abs());
    let (fb, dfb) = half_power(b, p.l().unsigned_abs());
    let amp = fa * fb;
    let da = [2.0 * i0, 0.0, -2.0 * i3 * k, -2.0 * i3 * l];
    let db = [0.0, 2.0 * j0, 2.0 * j3 * l, -2.0 * j3 * k];
    let mut damp = [0.0; 4];
    for v in 0..4 {
        damp[v] = dfa * da[v] * fb + fa * dfb * db[v];
    }

    let g0 = p.g0.value(m);
    let dg0 = chain(p.g0.gradient(m));
    let mut dg = [0.0; 4];
    for v in 0..4 {
        dg[v] = 2.0 * (dg0[v] * amp + g0 * damp[v]);
    }
    Ok(ReducedParts { h0: p.h0.value(m), g: 2.0 * g0 * amp, dh0: chain(p.h0.gradient(m)), dg })
}

/// `H̃′(I0, J0, I3′, J3′, φ3′)`; the angles `φ0`, `ψ0`, `ψ3′` are cyclic.
pub fn reduced_hamiltonian(c: &CanonicalState, p: &OscillatorParams) -> Result<f64, OscillatorError> {
    Ok(reduced_parts(c.actions(), p)?.hamiltonian(c.phi3p))
}
