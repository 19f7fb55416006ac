//! Integration by quadratures on the reduced chart: `I3′(t)` from the
//! radicand `R = G̃0′² − (H̃′ − H̃0′)²` and the angles from their
//! `I3′`-dependent rates.

use std::cell::Cell;

use super::hamiltonian::reduced_parts;
use super::{CanonicalState, OscillatorError, OscillatorParams};
use crate::numerics::{find_root, quad_adaptive, NumericsError};

const SCAN_STEPS: usize = 4000;
// The radicand is a difference of nearly equal squares near the turning
// points; its rounding noise caps the attainable accuracy of the time
// integrals at about 1e-8, so asking for more only burns intervals.
const QUAD_TOL: f64 = 1e-10;
/// Radicand values within this of zero count as zero.
const RADICAND_TOL: f64 = 1e-12;
/// Phases are undefined once `|G̃0′|` drops below this.
pub const COUPLING_MIN: f64 = 1e-12;

/// Integrals of motion fixing a level set of the reduced system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionConstants {
    pub i0: f64,
    pub j0: f64,
    pub j3p: f64,
    pub h: f64,
}

impl MotionConstants {
    pub fn of(c: &CanonicalState, p: &OscillatorParams) -> Result<Self, OscillatorError> {
        let h = reduced_parts(c.actions(), p)?.hamiltonian(c.phi3p);
        Ok(MotionConstants { i0: c.i0, j0: c.j0, j3p: c.j3p, h })
    }

    fn actions(&self, i3p: f64) -> [f64; 4] {
        [self.i0, self.j0, i3p, self.j3p]
    }
}

/// Interval of `I3′` allowed by `|I3| ≤ I0`, `|J3| ≤ J0` at fixed `J3′`.
fn action_domain(c: &MotionConstants, p: &OscillatorParams) -> Result<(f64, f64), OscillatorError> {
    let (k, l) = (f64::from(p.k()), f64::from(p.l()));
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    // |α x + β| ≤ γ
    for (alpha, beta, gamma) in [(k, l * c.j3p, c.i0), (-l, k * c.j3p, c.j0)] {
        if alpha == 0.0 {
            if beta.abs() > gamma {
                return Err(OscillatorError::InconsistentConstants { radicand: f64::NAN });
            }
            continue;
        }
        let (a, b) = ((-gamma - beta) / alpha, (gamma - beta) / alpha);
        lo = lo.max(a.min(b));
        hi = hi.min(a.max(b));
    }
    if !(lo <= hi) {
        return Err(OscillatorError::InconsistentConstants { radicand: f64::NAN });
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Motion {
    Rest,
    /// Libration between simple turning points; `theta0` is the initial
    /// position on the cycle `[0, 2·half_period)`, increasing from `lo`.
    Libration {
        lo: f64,
        hi: f64,
        half_period: f64,
        theta0: f64,
    },
}

/// Solution of `dI3′/dt = ±√R(I3′)` through its turning points.
#[derive(Debug, Clone)]
pub struct I3Quadrature {
    consts: MotionConstants,
    params: OscillatorParams,
    i3p_0: f64,
    motion: Motion,
}

enum ScanEnd {
    Turning(f64),
    Edge(f64),
}

impl I3Quadrature {
    /// Prepares the quadrature for the orbit through `I3′(0) = i3p_0`, with
    /// the initial direction taken from `sin φ3′(0)`.
    pub fn new(
        consts: MotionConstants,
        params: &OscillatorParams,
        i3p_0: f64,
        phi3p_0: f64,
    ) -> Result<Self, OscillatorError> {
        let mut q = I3Quadrature { consts, params: params.clone(), i3p_0, motion: Motion::Rest };
        let (dom_lo, dom_hi) = action_domain(&consts, params)?;
        if !(dom_lo..=dom_hi).contains(&i3p_0) {
            return Err(OscillatorError::InconsistentConstants { radicand: f64::NAN });
        }
        let width = (dom_hi - dom_lo).max(f64::MIN_POSITIVE);
        let r0 = q.radicand(i3p_0);
        if r0 < -RADICAND_TOL {
            return Err(OscillatorError::InconsistentConstants { radicand: r0 });
        }

        let delta = 1e-6 * width;
        let (r_minus, r_plus) = (q.radicand((i3p_0 - delta).max(dom_lo)), q.radicand((i3p_0 + delta).min(dom_hi)));
        if r0 <= RADICAND_TOL && r_minus <= RADICAND_TOL && r_plus <= RADICAND_TOL {
            return Ok(q);
        }
        let sin0 = phi3p_0.sin();
        let upward = if r0 <= RADICAND_TOL {
            // Starting on a turning point: move into the allowed side.
            r_plus > r_minus
        } else if sin0 != 0.0 {
            sin0 > 0.0
        } else {
            return Err(OscillatorError::UndeterminedSign);
        };

        let mut scale = r0.abs();
        let lo = q.scan(i3p_0, dom_lo, &mut scale);
        let hi = q.scan(i3p_0, dom_hi, &mut scale);
        let lo = q.classify(lo, 1.0, width, scale)?;
        let hi = q.classify(hi, -1.0, width, scale)?;

        let half_period = q.time_between(lo, hi)?;
        let tau0 = q.time_between(lo, i3p_0.clamp(lo, hi))?;
        let theta0 = if upward { tau0 } else { 2.0 * half_period - tau0 };
        q.motion = Motion::Libration { lo, hi, half_period, theta0 };
        Ok(q)
    }

    /// `R(I3′) = G̃0′² − (H̃′ − H̃0′)²`; `−∞` outside the chart.
    pub fn radicand(&self, i3p: f64) -> f64 {
        match reduced_parts(self.consts.actions(i3p), &self.params) {
            Ok(parts) => parts.g * parts.g - (self.consts.h - parts.h0).powi(2),
            Err(_) => f64::NEG_INFINITY,
        }
    }

    /// Walks from `from` towards `to` until the radicand turns negative.
    fn scan(&self, from: f64, to: f64, scale: &mut f64) -> ScanEnd {
        let step = (to - from) / SCAN_STEPS as f64;
        let mut prev = from;
        let mut r_prev = self.radicand(from);
        for i in 1..=SCAN_STEPS {
            let x = if i == SCAN_STEPS { to } else { from + step * i as f64 };
            let r = self.radicand(x);
            if r.is_finite() {
                *scale = scale.max(r.abs());
            }
            if r < 0.0 {
                if r_prev <= 0.0 {
                    return ScanEnd::Turning(prev);
                }
                return match find_root(|z| self.radicand(z), (prev, x), 1e-15 * (1.0 + x.abs())) {
                    Ok(root) => ScanEnd::Turning(root),
                    Err(_) => ScanEnd::Turning(prev),
                };
            }
            prev = x;
            r_prev = r;
        }
        ScanEnd::Edge(to)
    }

    /// Accepts simple turning points; `inward` is the direction of the
    /// allowed region as seen from the point.
    fn classify(&self, end: ScanEnd, inward: f64, width: f64, scale: f64) -> Result<f64, OscillatorError> {
        let (x, at_edge) = match end {
            ScanEnd::Turning(x) => (x, false),
            ScanEnd::Edge(x) => (x, true),
        };
        if at_edge && self.radicand(x) > RADICAND_TOL.max(1e-10 * scale) {
            return Err(OscillatorError::ChartBoundary { coordinate: "I3p" });
        }
        let h = 1e-7 * width;
        let slope = (self.radicand(x + inward * h) - self.radicand(x).max(0.0)) / h;
        if slope.abs() < 1e-4 * scale / width {
            return Err(OscillatorError::Separatrix { at: x });
        }
        Ok(x)
    }

    /// `∫ dI3′/√R` between two points of one monotone stretch.
    fn time_between(&self, a: f64, b: f64) -> Result<f64, OscillatorError> {
        self.weighted_between(&|_| 1.0, a, b)
    }

    fn weighted_between(&self, g: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<f64, OscillatorError> {
        let f = |x: f64| {
            let r = self.radicand(x);
            if r > 0.0 {
                g(x) / r.sqrt()
            } else {
                0.0
            }
        };
        Ok(quad_adaptive(f, a, b, QUAD_TOL)?)
    }

    /// `∫_lo^x g/√R`, taken from the nearer turning point so the
    /// singularity always sits on an endpoint; `full` is the integral over
    /// the whole stretch.
    fn time_from_lo(&self, g: &dyn Fn(f64) -> f64, x: f64, full: f64) -> Result<f64, OscillatorError> {
        let Some((lo, hi)) = self.turning_points() else {
            return Ok(0.0);
        };
        if x - lo <= hi - x {
            self.weighted_between(g, lo, x)
        } else {
            Ok(full - self.weighted_between(g, x, hi)?)
        }
    }

    /// Half period between the turning points, `None` at rest.
    pub fn half_period(&self) -> Option<f64> {
        match self.motion {
            Motion::Rest => None,
            Motion::Libration { half_period, .. } => Some(half_period),
        }
    }

    /// `(lo, hi)` turning points, `None` at rest.
    pub fn turning_points(&self) -> Option<(f64, f64)> {
        match self.motion {
            Motion::Rest => None,
            Motion::Libration { lo, hi, .. } => Some((lo, hi)),
        }
    }

    /// `I3′` at cycle position `theta ∈ [0, half_period]` measured from `lo`.
    fn position(&self, theta: f64) -> Result<f64, OscillatorError> {
        let Motion::Libration { lo, hi, half_period, .. } = self.motion else {
            return Ok(self.i3p_0);
        };
        if theta <= 0.0 {
            return Ok(lo);
        }
        if theta >= half_period {
            return Ok(hi);
        }
        // Safeguarded Newton on τ(x) − θ with τ' = 1/√R.
        let unit = |_: f64| 1.0;
        let (mut a, mut b) = (lo, hi);
        let mut x = lo + (hi - lo) * 0.5 * (1.0 - (std::f64::consts::PI * theta / half_period).cos());
        for _ in 0..200 {
            let f = self.time_from_lo(&unit, x, half_period)? - theta;
            if f.abs() <= 2.0 * QUAD_TOL || b - a <= 1e-15 * (hi - lo) {
                return Ok(x);
            }
            if f > 0.0 {
                b = x;
            } else {
                a = x;
            }
            let r = self.radicand(x);
            let newton = if r > 0.0 { x - f * r.sqrt() } else { f64::NAN };
            x = if newton > a && newton < b { newton } else { 0.5 * (a + b) };
        }
        Err(OscillatorError::Numerics(NumericsError::NoConvergence("I3' time inversion")))
    }

    fn cycle_position(&self, t: f64) -> (f64, f64) {
        match self.motion {
            Motion::Rest => (0.0, 0.0),
            Motion::Libration { half_period, theta0, .. } => {
                let period = 2.0 * half_period;
                ((theta0 + t).rem_euclid(period), half_period)
            }
        }
    }

    /// `I3′(t)`, with `t = 0` the initial instant.
    pub fn value(&self, t: f64) -> Result<f64, OscillatorError> {
        let (theta, half) = self.cycle_position(t);
        if let Motion::Rest = self.motion {
            return Ok(self.i3p_0);
        }
        if theta <= half {
            self.position(theta)
        } else {
            self.position(2.0 * half - theta)
        }
    }

    pub fn sample(&self, t_grid: &[f64]) -> Result<Vec<f64>, OscillatorError> {
        t_grid.iter().map(|&t| self.value(t)).collect()
    }

    /// `∫ g(I3′(t)) dt` over `[t_a, t_b]`, computed in `I3′` over monotone
    /// stretches.
    fn integrate_one(&self, g: &dyn Fn(f64) -> f64, t_a: f64, t_b: f64) -> Result<f64, OscillatorError> {
        let Motion::Libration { lo, hi, half_period, theta0 } = self.motion else {
            return Ok(g(self.i3p_0) * (t_b - t_a));
        };
        if t_b < t_a {
            return self.integrate_one(g, t_b, t_a).map(|v| -v);
        }
        let (ua, ub) = (theta0 + t_a, theta0 + t_b);
        let (na, nb) = ((ua / half_period).floor(), (ub / half_period).floor());
        // Position within stretch n, in the stretch's own direction.
        let at = |u: f64, n: f64| -> Result<f64, OscillatorError> {
            let local = u - n * half_period;
            if n.rem_euclid(2.0) == 0.0 {
                self.position(local)
            } else {
                self.position(half_period - local)
            }
        };
        let full = self.weighted_between(g, lo, hi)?;
        // Signed progress along stretch n, measured from its start.
        let along = |u: f64, n: f64| -> Result<f64, OscillatorError> {
            let c = self.time_from_lo(g, at(u, n)?, full)?;
            Ok(if n.rem_euclid(2.0) == 0.0 { c } else { full - c })
        };
        if na == nb {
            return Ok(along(ub, na)? - along(ua, na)?);
        }
        let total = (full - along(ua, na)?) + (nb - na - 1.0) * full + along(ub, nb)?;
        Ok(total)
    }
}

/// `I3′` along a path, integrable against functions of `I3′`.
pub trait I3Path {
    fn value(&self, t: f64) -> Result<f64, OscillatorError>;

    /// `∫_{t_a}^{t_b} g(I3′(t)) dt` for each `g`.
    fn integrate(&self, gs: &[&dyn Fn(f64) -> f64], t_a: f64, t_b: f64) -> Result<Vec<f64>, OscillatorError>;
}

impl I3Path for I3Quadrature {
    fn value(&self, t: f64) -> Result<f64, OscillatorError> {
        I3Quadrature::value(self, t)
    }

    fn integrate(&self, gs: &[&dyn Fn(f64) -> f64], t_a: f64, t_b: f64) -> Result<Vec<f64>, OscillatorError> {
        gs.iter().map(|g| self.integrate_one(*g, t_a, t_b)).collect()
    }
}

/// A path given as an explicit function of time, integrated in `t`.
pub struct FnPath<F>(pub F);

impl<F: Fn(f64) -> f64> I3Path for FnPath<F> {
    fn value(&self, t: f64) -> Result<f64, OscillatorError> {
        Ok((self.0)(t))
    }

    fn integrate(&self, gs: &[&dyn Fn(f64) -> f64], t_a: f64, t_b: f64) -> Result<Vec<f64>, OscillatorError> {
        gs.iter()
            .map(|g| quad_adaptive(|t| g((self.0)(t)), t_a, t_b, QUAD_TOL).map_err(OscillatorError::from))
            .collect()
    }
}

/// Samples `I3′` on `t_grid` (time measured from the initial instant).
pub fn solve_i3_quadrature(
    consts: MotionConstants,
    p: &OscillatorParams,
    i3p_0: f64,
    phi3p_0: f64,
    t_grid: &[f64],
) -> Result<Vec<f64>, OscillatorError> {
    I3Quadrature::new(consts, p, i3p_0, phi3p_0)?.sample(t_grid)
}

/// Angles `(φ0, ψ0, φ3′, ψ3′)` on `t_grid` from the initial values at
/// `t_grid[0]`, integrating the rates `∂H̃0′/∂A + ∂G̃0′/∂A · cos φ3′` with
/// `cos φ3′ = (H̃′ − H̃0′)/G̃0′` expressed through `I3′`.
pub fn solve_angles_quadrature(
    consts: MotionConstants,
    p: &OscillatorParams,
    path: &dyn I3Path,
    angles0: [f64; 4],
    t_grid: &[f64],
) -> Result<[Vec<f64>; 4], OscillatorError> {
    let singular = Cell::new(false);
    let rate = |v: usize| {
        let singular = &singular;
        move |x: f64| -> f64 {
            match reduced_parts(consts.actions(x), p) {
                Ok(parts) if parts.g.abs() >= COUPLING_MIN => {
                    parts.dh0[v] + parts.dg[v] * (consts.h - parts.h0) / parts.g
                }
                _ => {
                    singular.set(true);
                    0.0
                }
            }
        }
    };
    let (r0, r1, r2, r3) = (rate(0), rate(1), rate(2), rate(3));
    let gs: [&dyn Fn(f64) -> f64; 4] = [&r0, &r1, &r2, &r3];
    let mut out: [Vec<f64>; 4] = Default::default();
    if t_grid.is_empty() {
        return Ok(out);
    }
    let mut current = angles0;
    for (o, a) in out.iter_mut().zip(current) {
        o.push(a);
    }
    for w in t_grid.windows(2) {
        let inc = path.integrate(&gs, w[0], w[1])?;
        if singular.get() {
            return Err(OscillatorError::SingularPhase { t: w[0] });
        }
        for v in 0..4 {
            current[v] += inc[v];
            out[v].push(current[v]);
        }
    }
    Ok(out)
}
