//! Dormand–Prince 5(4) with PI step-size control and continuous output.

use super::trajectory::Trajectory;
use super::NumericsError;

/// Rejection raised by a vector field (e.g. a singularity guard).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldError(pub String);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    /// Upper bound on `|h|`; `None` means the span length.
    pub max_step: Option<f64>,
}

impl OdeOptions {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        OdeOptions { rel_tol, abs_tol, max_steps: 1_000_000, max_step: None }
    }
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self::new(1e-10, 1e-12)
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// Difference between the 5th- and 4th-order weights.
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];
// Continuous-extension weights.
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const BETA: f64 = 0.04;

fn error_norm(err: &[f64], y0: &[f64], y1: &[f64], opts: &OdeOptions) -> f64 {
    let n = err.len().max(1) as f64;
    let sum: f64 = err
        .iter()
        .zip(y0.iter().zip(y1))
        .map(|(e, (a, b))| {
            let sk = opts.abs_tol + opts.rel_tol * a.abs().max(b.abs());
            (e / sk).powi(2)
        })
        .sum();
    (sum / n).sqrt()
}

/// Integrates `y' = field(t, y)` over `t_span` and samples the solution at
/// every point of `sample_grid` by the 4th-order continuous extension.
///
/// The field writes the derivative into its third argument and may refuse
/// a state by returning a [`FieldError`], which aborts with the current time.
pub fn integrate_ode<F>(
    mut field: F,
    state0: &[f64],
    t_span: (f64, f64),
    opts: &OdeOptions,
    sample_grid: &[f64],
) -> Result<Trajectory, NumericsError>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<(), FieldError>,
{
    let (t0, t1) = t_span;
    if !(t1 > t0) {
        return Err(NumericsError::InvalidInput("t_span must satisfy t_end > t_start"));
    }
    if !(opts.rel_tol > 0.0 && opts.abs_tol > 0.0) {
        return Err(NumericsError::InvalidInput("tolerances must be positive"));
    }
    if sample_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(NumericsError::InvalidInput("sample grid must be strictly increasing"));
    }
    if sample_grid.iter().any(|&t| t < t0 || t > t1) {
        return Err(NumericsError::InvalidInput("sample grid must lie inside t_span"));
    }

    let n = state0.len();
    let span = t1 - t0;
    let h_min = 1e-14 * span;
    let h_max = opts.max_step.unwrap_or(span).min(span);

    let mut eval = |t: f64, y: &[f64], out: &mut [f64]| -> Result<(), NumericsError> {
        field(t, y, out).map_err(|FieldError(reason)| NumericsError::FieldRejected { t, reason })?;
        if out.iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::FieldRejected { t, reason: "non-finite derivative".into() });
        }
        Ok(())
    };

    let mut traj = Trajectory::new();
    let mut next_sample = 0;
    while next_sample < sample_grid.len() && sample_grid[next_sample] <= t0 {
        traj.push(sample_grid[next_sample], state0.to_vec());
        next_sample += 1;
    }

    let mut t = t0;
    let mut y = state0.to_vec();
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
    eval(t, &y, &mut k[0])?;

    // Starting step from the size of the solution and its derivative.
    let mut h = {
        let scale = |v: &[f64], w: &[f64]| -> f64 {
            let s: f64 = v.iter().zip(w).map(|(a, b)| (a / (opts.abs_tol + opts.rel_tol * b.abs())).powi(2)).sum();
            (s / n.max(1) as f64).sqrt()
        };
        let d0 = scale(&y, &y);
        let d1 = scale(&k[0], &y);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let h0 = h0.min(h_max);
        let y_euler: Vec<f64> = y.iter().zip(&k[0]).map(|(a, b)| a + h0 * b).collect();
        let mut f1 = vec![0.0; n];
        eval(t + h0, &y_euler, &mut f1)?;
        let diff: Vec<f64> = f1.iter().zip(&k[0]).map(|(a, b)| a - b).collect();
        let d2 = scale(&diff, &y) / h0;
        let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
        (100.0 * h0).min(h1).min(h_max)
    };

    let mut fac_old: f64 = 1e-4;
    let mut last_rejected = false;
    let mut steps = 0usize;
    let mut stage = vec![0.0; n];
    let mut y_new = vec![0.0; n];
    let mut err = vec![0.0; n];

    while t < t1 {
        if steps >= opts.max_steps {
            return Err(NumericsError::TooManySteps { t });
        }
        if h < h_min {
            return Err(NumericsError::StepUnderflow { t });
        }
        if t + 1.01 * h >= t1 {
            h = t1 - t;
        }
        steps += 1;

        for s in 1..7 {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += A[s][j] * kj[i];
                }
                stage[i] = y[i] + h * acc;
            }
            eval(t + C[s] * h, &stage, &mut k[s])?;
        }
        // The last stage was evaluated at the 5th-order solution.
        y_new.copy_from_slice(&stage);
        for i in 0..n {
            err[i] = h * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
        }
        let e = error_norm(&err, &y, &y_new, opts);
        if !e.is_finite() {
            h *= FAC_MIN;
            last_rejected = true;
            continue;
        }

        let expo = 0.2 - BETA * 0.75;
        let fac11 = e.powf(expo);
        if e <= 1.0 {
            let t_new = t + h;
            // Continuous extension coefficients.
            while next_sample < sample_grid.len() && sample_grid[next_sample] <= t_new {
                let ts = sample_grid[next_sample];
                let theta = (ts - t) / h;
                let theta1 = 1.0 - theta;
                let sample: Vec<f64> = (0..n)
                    .map(|i| {
                        let ydiff = y_new[i] - y[i];
                        let bspl = h * k[0][i] - ydiff;
                        let r4 = ydiff - h * k[6][i] - bspl;
                        let r5 = h * (0..7).map(|j| D[j] * k[j][i]).sum::<f64>();
                        y[i] + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)))
                    })
                    .collect();
                traj.push(ts, sample);
                next_sample += 1;
            }
            let fac = (fac11 / fac_old.powf(BETA) / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
            fac_old = e.max(1e-4);
            let mut h_new = (h / fac).min(h_max);
            if last_rejected {
                h_new = h_new.min(h);
            }
            last_rejected = false;
            t = t_new;
            y.copy_from_slice(&y_new);
            k.swap(0, 6);
            h = h_new;
        } else {
            h /= (fac11 / SAFETY).min(1.0 / FAC_MIN);
            last_rejected = true;
        }
    }
    Ok(traj)
}
