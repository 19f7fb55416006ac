use std::fmt::Debug;
use std::sync::Arc;

use super::OscillatorError;

/// A smooth real function of the four squared moduli
/// `(|η1|², |η2|², |ξ1|², |ξ2|²)` together with its gradient.
pub trait SmoothFn4: Debug + Send + Sync {
    fn value(&self, m: [f64; 4]) -> f64;

    /// Central differences with step `1e-6·max(1, |m_i|)` unless overridden.
    fn gradient(&self, m: [f64; 4]) -> [f64; 4] {
        let mut g = [0.0; 4];
        for (i, gi) in g.iter_mut().enumerate() {
            let h = 1e-6 * m[i].abs().max(1.0);
            let mut up = m;
            let mut down = m;
            up[i] += h;
            down[i] -= h;
            *gi = (self.value(up) - self.value(down)) / (2.0 * h);
        }
        g
    }
}

/// `c0 + Σ c_i m_i`. Covers the zero, constant and sum families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub c0: f64,
    pub c: [f64; 4],
}

impl Affine {
    pub const fn new(c0: f64, c: [f64; 4]) -> Self {
        Affine { c0, c }
    }

    pub const fn zero() -> Self {
        Affine::new(0.0, [0.0; 4])
    }

    pub const fn constant(c0: f64) -> Self {
        Affine::new(c0, [0.0; 4])
    }

    /// `scale · (m1 + m2 + m3 + m4)`.
    pub const fn sum(scale: f64) -> Self {
        Affine::new(0.0, [scale; 4])
    }
}

impl SmoothFn4 for Affine {
    fn value(&self, m: [f64; 4]) -> f64 {
        self.c0 + self.c.iter().zip(m).map(|(c, x)| c * x).sum::<f64>()
    }

    fn gradient(&self, _m: [f64; 4]) -> [f64; 4] {
        self.c
    }
}

/// Wraps a plain closure; the gradient falls back to finite differences.
pub struct FnSmooth<F>(pub F);

impl<F> Debug for FnSmooth<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("FnSmooth")
    }
}

impl<F> SmoothFn4 for FnSmooth<F>
where
    F: Fn([f64; 4]) -> f64 + Send + Sync,
{
    fn value(&self, m: [f64; 4]) -> f64 {
        (self.0)(m)
    }
}

/// Parameters `(k, l, H0, G0)` of the oscillator Hamiltonian
/// `H = H0(m) + G0(m)·(η1^k η2^−k ξ1^l ξ2^−l + c.c.)`.
#[derive(Debug, Clone)]
pub struct OscillatorParams {
    k: i32,
    l: i32,
    pub h0: Arc<dyn SmoothFn4>,
    pub g0: Arc<dyn SmoothFn4>,
}

impl OscillatorParams {
    pub fn new(k: i32, l: i32, h0: Arc<dyn SmoothFn4>, g0: Arc<dyn SmoothFn4>) -> Result<Self, OscillatorError> {
        if k == 0 && l == 0 {
            return Err(OscillatorError::InvalidParams("(k, l) must differ from (0, 0)".into()));
        }
        Ok(OscillatorParams { k, l, h0, g0 })
    }

    /// Affine `H0` and `G0`.
    pub fn affine(k: i32, l: i32, h0: Affine, g0: Affine) -> Result<Self, OscillatorError> {
        Self::new(k, l, Arc::new(h0), Arc::new(g0))
    }

    /// `H0 = Σ m_i`, `G0 ≡ g0`: the worked example with coupling `g0`.
    pub fn example(l: i32, g0: f64) -> Self {
        Self::affine(1, l, Affine::sum(1.0), Affine::constant(g0)).expect("k = 1")
    }

    /// Uncoupled `H0 = Σ m_i` with `k = l = 1`, whose flow is the Kepler flow.
    pub fn kepler() -> Self {
        Self::example(1, 0.0)
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn l(&self) -> i32 {
        self.l
    }

    pub(crate) fn kl2(&self) -> f64 {
        f64::from(self.k * self.k + self.l * self.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_families() {
        let m = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(Affine::zero().value(m), 0.0);
        assert_eq!(Affine::constant(0.1).value(m), 0.1);
        assert_eq!(Affine::sum(1.0).value(m), 10.0);
        assert_eq!(Affine::new(1.0, [1.0, 0.0, -1.0, 0.5]).value(m), 1.0 + 1.0 - 3.0 + 2.0);
    }

    #[test]
    fn finite_difference_gradient() {
        let f = FnSmooth(|m: [f64; 4]| m[0] * m[1] + m[2].sin());
        let g = f.gradient([2.0, 3.0, 0.5, 0.0]);
        assert!((g[0] - 3.0).abs() < 1e-8);
        assert!((g[1] - 2.0).abs() < 1e-8);
        assert!((g[2] - 0.5f64.cos()).abs() < 1e-8);
        assert!(g[3].abs() < 1e-12);
    }

    #[test]
    fn rejects_zero_pair() {
        assert!(OscillatorParams::affine(0, 0, Affine::zero(), Affine::zero()).is_err());
        assert!(OscillatorParams::affine(0, 2, Affine::zero(), Affine::zero()).is_ok());
    }
}
