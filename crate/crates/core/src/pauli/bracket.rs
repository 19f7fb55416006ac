use num_complex::Complex64;

use super::twistor::{Rep, TwistorVec};
use super::AlgebraError;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Wirtinger derivatives `(∂f/∂z, ∂f/∂z̄)` of a real function with respect
/// to each of the four complex twistor components, by central differences.
fn wirtinger<F>(f: &F, at: &TwistorVec) -> Result<[(Complex64, Complex64); 4], AlgebraError>
where
    F: Fn(&TwistorVec) -> f64,
{
    let base = at.components();
    let mut out = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 4];
    for (k, slot) in out.iter_mut().enumerate() {
        let h = 1e-6 * base[k].norm().max(1.0);
        let eval = |dz: Complex64| -> Result<f64, AlgebraError> {
            let mut c = base;
            c[k] += dz;
            let value = f(&TwistorVec::from_components(c, at.rep));
            if value.is_finite() {
                Ok(value)
            } else {
                Err(AlgebraError::NonFinite { component: k })
            }
        };
        let dx = (eval(Complex64::new(h, 0.0))? - eval(Complex64::new(-h, 0.0))?) / (2.0 * h);
        let dy = (eval(Complex64::new(0.0, h))? - eval(Complex64::new(0.0, -h))?) / (2.0 * h);
        *slot = (0.5 * (dx - I * dy), 0.5 * (dx + I * dy));
    }
    Ok(out)
}

/// Poisson bracket of two real functions on the diagonal twistor space,
/// `{f,g} = i Σ_η (∂̄f ∂g − ∂̄g ∂f) − i Σ_ξ (∂̄f ∂g − ∂̄g ∂f)`,
/// with derivatives from central differences of step `1e-6·max(1, |z|)`.
pub fn poisson_bracket_numeric<F, G>(f: F, g: G, at: &TwistorVec) -> Result<f64, AlgebraError>
where
    F: Fn(&TwistorVec) -> f64,
    G: Fn(&TwistorVec) -> f64,
{
    if at.rep != Rep::Diagonal {
        return Err(AlgebraError::RepMismatch { left: Rep::Diagonal, right: at.rep });
    }
    let df = wirtinger(&f, at)?;
    let dg = wirtinger(&g, at)?;
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..4 {
        let sign = if k < 2 { 1.0 } else { -1.0 };
        let (fz, fzb) = df[k];
        let (gz, gzb) = dg[k];
        total += sign * I * (fzb * gz - gzb * fz);
    }
    Ok(total.re)
}
