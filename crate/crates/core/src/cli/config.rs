//! Flat `key = value` run configuration. One pair per line, `#` starts a
//! comment, values may be wrapped in double quotes, vectors are
//! comma-separated.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_form::{example_constants, ExampleParams};
use crate::kepler::{PhasePoint, COLLISION_GUARD};
use crate::oscillator::{Affine, CanonicalState, ComplexState, OscillatorParams};
use crate::pauli::Spinor;

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
pub const DEFAULT_SAMPLES: usize = 1000;

const KNOWN_KEYS: &[&str] = &[
    "mode",
    "chart",
    "t_end",
    "samples",
    "rel_tol",
    "abs_tol",
    "seed",
    "output",
    "params.k",
    "params.l",
    "params.h0.family",
    "params.h0.c0",
    "params.h0.c",
    "params.h0.scale",
    "params.g0.family",
    "params.g0.c0",
    "params.g0.c",
    "params.g0.scale",
    "initial.random",
    "initial.eta",
    "initial.xi",
    "initial.actions",
    "initial.angles",
    "initial.x",
    "initial.y",
    "example.I0",
    "example.G0",
    "example.H",
    "example.l",
    "example.delta1",
    "example.delta2",
    "example.phi0",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub key: Option<String>,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(key) = &self.key {
            write!(f, "{key}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Simulate,
    ClosedForm,
    Compare,
    ConserveReport,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Simulate => "simulate",
            Mode::ClosedForm => "closed-form",
            Mode::Compare => "compare",
            Mode::ConserveReport => "conserve-report",
        }
    }

    fn parse(s: &str) -> Option<Mode> {
        [Mode::Simulate, Mode::ClosedForm, Mode::Compare, Mode::ConserveReport].into_iter().find(|m| m.name() == s)
    }

    /// Whether the mode runs the closed-form example rather than a general
    /// parameter set.
    pub fn uses_example(self) -> bool {
        matches!(self, Mode::ClosedForm | Mode::Compare)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    Complex,
    Canonical,
    Kepler,
}

impl Chart {
    pub fn name(self) -> &'static str {
        match self {
            Chart::Complex => "complex",
            Chart::Canonical => "canonical",
            Chart::Kepler => "kepler",
        }
    }
}

/// One of the coefficient families for `H0` and `G0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Zero,
    Constant(f64),
    Affine {
        c0: f64,
        c: [f64; 4],
    },
    /// `scale · Σ m_i`.
    Sum(f64),
}

impl Family {
    pub fn to_affine(self) -> Affine {
        match self {
            Family::Zero => Affine::zero(),
            Family::Constant(c0) => Affine::constant(c0),
            Family::Affine { c0, c } => Affine::new(c0, c),
            Family::Sum(scale) => Affine::sum(scale),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamsSpec {
    pub k: i32,
    pub l: i32,
    pub h0: Family,
    pub g0: Family,
}

impl ParamsSpec {
    pub fn build(&self) -> OscillatorParams {
        OscillatorParams::affine(self.k, self.l, self.h0.to_affine(), self.g0.to_affine())
            .expect("(k, l) checked at parse time")
    }

    /// `H0 = s Σ m_i` with no coupling: every component of `I⃗` and `J⃗` is
    /// conserved.
    pub fn is_free(&self) -> bool {
        matches!((self.h0, self.g0), (Family::Sum(_), Family::Zero))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Initial {
    Complex(ComplexState),
    Canonical(CanonicalState),
    Kepler(PhasePoint),
}

#[derive(Debug, Clone, PartialEq)]
pub enum System {
    Dynamics { params: ParamsSpec, initial: Initial },
    Example(ExampleParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub chart: Chart,
    pub system: System,
    pub t_end: f64,
    pub samples: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

struct Entry {
    value: String,
    line: usize,
}

/// Parsed pairs, consumed key by key.
struct Pairs {
    map: BTreeMap<String, Entry>,
}

fn err(key: &str, line: Option<usize>, message: impl Into<String>) -> ConfigError {
    ConfigError { key: Some(key.to_string()), line, message: message.into() }
}

impl Pairs {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError { key: None, line: Some(line), message: "expected `key = value`".into() });
            };
            let key = key.trim();
            let mut value = value.trim();
            if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
                value = &value[1..value.len() - 1];
            }
            if !KNOWN_KEYS.contains(&key) {
                return Err(err(key, Some(line), "unknown key"));
            }
            if let Some(prev) = map.get(key) {
                let prev: &Entry = prev;
                return Err(err(key, Some(line), format!("duplicate key (first set on line {})", prev.line)));
            }
            map.insert(key.to_string(), Entry { value: value.to_string(), line });
        }
        Ok(Pairs { map })
    }

    fn line(&self, key: &str) -> Option<usize> {
        self.map.get(key).map(|e| e.line)
    }

    fn take_str(&mut self, key: &str) -> Option<(String, usize)> {
        self.map.remove(key).map(|e| (e.value, e.line))
    }

    fn take<T: std::str::FromStr>(&mut self, key: &str, what: &str) -> Result<Option<T>, ConfigError> {
        match self.take_str(key) {
            None => Ok(None),
            Some((v, line)) => {
                v.parse().map(Some).map_err(|_| err(key, Some(line), format!("cannot parse `{v}` as {what}")))
            }
        }
    }

    fn take_f64(&mut self, key: &str) -> Result<Option<f64>, ConfigError> {
        let line = self.line(key);
        match self.take::<f64>(key, "a real number")? {
            Some(v) if !v.is_finite() => Err(err(key, line, "value must be finite")),
            v => Ok(v),
        }
    }

    fn require_f64(&mut self, key: &str) -> Result<f64, ConfigError> {
        self.take_f64(key)?.ok_or_else(|| err(key, None, "required key is missing"))
    }

    fn take_vec<const N: usize>(&mut self, key: &str) -> Result<Option<[f64; N]>, ConfigError> {
        let Some((v, line)) = self.take_str(key) else {
            return Ok(None);
        };
        let parts: Vec<&str> = v.split(',').map(str::trim).collect();
        if parts.len() != N {
            return Err(err(key, Some(line), format!("expected {N} comma-separated reals, got {}", parts.len())));
        }
        let mut out = [0.0; N];
        for (o, s) in out.iter_mut().zip(parts) {
            *o = s
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| err(key, Some(line), format!("cannot parse `{s}` as a finite real")))?;
        }
        Ok(Some(out))
    }

    fn require_vec<const N: usize>(&mut self, key: &str) -> Result<[f64; N], ConfigError> {
        self.take_vec(key)?.ok_or_else(|| err(key, None, "required key is missing"))
    }

    /// Rejects any remaining key under `prefix` as unused in `context`.
    fn reject_prefix(&self, prefix: &str, context: &str) -> Result<(), ConfigError> {
        match self.map.iter().filter(|(k, _)| k.starts_with(prefix)).min_by_key(|(_, e)| e.line) {
            Some((k, e)) => Err(err(k, Some(e.line), format!("not used {context}"))),
            None => Ok(()),
        }
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut pairs = Pairs::parse(text)?;

    let mode = match pairs.take_str("mode") {
        None => return Err(err("mode", None, "required key is missing")),
        Some((v, line)) => Mode::parse(&v).ok_or_else(|| {
            err("mode", Some(line), format!("`{v}` is not one of simulate, closed-form, compare, conserve-report"))
        })?,
    };
    let chart = match pairs.take_str("chart") {
        None => Chart::Complex,
        Some((v, line)) => match v.as_str() {
            "complex" => Chart::Complex,
            "canonical" => Chart::Canonical,
            "kepler" => Chart::Kepler,
            _ => return Err(err("chart", Some(line), format!("`{v}` is not one of complex, canonical, kepler"))),
        },
    };

    let t_line = pairs.line("t_end");
    let t_end = pairs.require_f64("t_end")?;
    if !(t_end > 0.0) {
        return Err(err("t_end", t_line, "must be positive"));
    }
    let s_line = pairs.line("samples");
    let samples = pairs.take::<usize>("samples", "a positive integer")?.unwrap_or(DEFAULT_SAMPLES);
    if samples < 2 {
        return Err(err("samples", s_line, "must be at least 2"));
    }
    let mut tol = |key: &str, default: f64| -> Result<f64, ConfigError> {
        let line = pairs.line(key);
        let v = pairs.take_f64(key)?.unwrap_or(default);
        if v > 0.0 {
            Ok(v)
        } else {
            Err(err(key, line, "must be positive"))
        }
    };
    let rel_tol = tol("rel_tol", DEFAULT_REL_TOL)?;
    let abs_tol = tol("abs_tol", DEFAULT_ABS_TOL)?;
    let seed = pairs.take::<u64>("seed", "a nonnegative integer")?.unwrap_or(0);
    let output = pairs.take_str("output").map(|(v, _)| PathBuf::from(v));

    let system = if mode.uses_example() {
        pairs.reject_prefix("params.", &format!("in mode {}", mode.name()))?;
        pairs.reject_prefix("initial.", &format!("in mode {}", mode.name()))?;
        System::Example(parse_example(&mut pairs)?)
    } else {
        pairs.reject_prefix("example.", &format!("in mode {}", mode.name()))?;
        let params = parse_params(&mut pairs)?;
        let initial = parse_initial(&mut pairs, chart, seed)?;
        System::Dynamics { params, initial }
    };
    debug_assert!(pairs.map.is_empty());

    Ok(RunConfig { mode, chart, system, t_end, samples, rel_tol, abs_tol, seed, output })
}

fn parse_example(pairs: &mut Pairs) -> Result<ExampleParams, ConfigError> {
    let i0 = pairs.require_f64("example.I0")?;
    let g0 = pairs.require_f64("example.G0")?;
    let h_line = pairs.line("example.H");
    let h = pairs.require_f64("example.H")?;
    let l_line = pairs.line("example.l");
    let l = pairs.take::<i32>("example.l", "an integer")?.unwrap_or(1);
    if l != 1 && l != -1 {
        return Err(err("example.l", l_line, "must be +1 or -1"));
    }
    let delta1 = pairs.take_f64("example.delta1")?.unwrap_or(0.0);
    let delta2 = pairs.take_f64("example.delta2")?.unwrap_or(0.0);
    let phi0 = pairs.take_f64("example.phi0")?.unwrap_or(0.0);
    let p = ExampleParams::new(i0, g0, h, l)
        .map_err(|e| err("example.H", h_line, e.to_string()))?
        .with_angles(delta1, delta2, phi0);
    example_constants(&p).map_err(|e| err("example.H", h_line, e.to_string()))?;
    Ok(p)
}

fn parse_family(pairs: &mut Pairs, name: &str, default: Family) -> Result<Family, ConfigError> {
    let fam_key = format!("params.{name}.family");
    let prefix = format!("params.{name}.");
    let (family, fam_line) = match pairs.take_str(&fam_key) {
        None => (default, None),
        Some((v, line)) => {
            let f = match v.as_str() {
                "zero" => Family::Zero,
                "constant" => Family::Constant(pairs.require_f64(&format!("{prefix}c0"))?),
                "affine" => Family::Affine {
                    c0: pairs.take_f64(&format!("{prefix}c0"))?.unwrap_or(0.0),
                    c: pairs.require_vec::<4>(&format!("{prefix}c"))?,
                },
                "sum" => Family::Sum(pairs.take_f64(&format!("{prefix}scale"))?.unwrap_or(1.0)),
                _ => return Err(err(&fam_key, Some(line), format!("`{v}` is not one of zero, constant, affine, sum"))),
            };
            (f, Some(line))
        }
    };
    let label = match fam_line {
        Some(_) => "by this family",
        None => "without an explicit family",
    };
    pairs.reject_prefix(&prefix, label)?;
    Ok(family)
}

fn parse_params(pairs: &mut Pairs) -> Result<ParamsSpec, ConfigError> {
    let k_line = pairs.line("params.k");
    let l_line = pairs.line("params.l");
    let k = pairs.take::<i32>("params.k", "an integer")?.unwrap_or(1);
    let l = pairs.take::<i32>("params.l", "an integer")?.unwrap_or(1);
    if k == 0 && l == 0 {
        return Err(err("params.k", k_line.or(l_line), "(k, l) must differ from (0, 0)"));
    }
    let h0 = parse_family(pairs, "h0", Family::Sum(1.0))?;
    let g0 = parse_family(pairs, "g0", Family::Zero)?;
    Ok(ParamsSpec { k, l, h0, g0 })
}

fn spinor(v: [f64; 4]) -> Spinor {
    Spinor::new(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))
}

fn parse_initial(pairs: &mut Pairs, chart: Chart, seed: u64) -> Result<Initial, ConfigError> {
    let r_line = pairs.line("initial.random");
    let random = pairs.take::<bool>("initial.random", "true or false")?.unwrap_or(false);
    let chart_ctx = format!("in chart {}", chart.name());
    if random {
        pairs.reject_prefix("initial.", "together with initial.random = true")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |n: usize| -> Vec<f64> { (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect() };
        return match chart {
            Chart::Complex => Ok(Initial::Complex(ComplexState::from_real(&draw(8)))),
            Chart::Kepler => loop {
                let v = draw(6);
                let pt = PhasePoint::from_array(&v);
                if pt.norm_x() > 0.1 {
                    break Ok(Initial::Kepler(pt));
                }
            },
            Chart::Canonical => Err(err("initial.random", r_line, format!("not supported {chart_ctx}"))),
        };
    }
    let initial = match chart {
        Chart::Complex => {
            let eta = pairs.require_vec::<4>("initial.eta")?;
            let xi = pairs.require_vec::<4>("initial.xi")?;
            Initial::Complex(ComplexState::new(spinor(eta), spinor(xi)))
        }
        Chart::Canonical => {
            let a_line = pairs.line("initial.actions");
            let [i0, j0, i3p, j3p] = pairs.require_vec::<4>("initial.actions")?;
            let [phi0, psi0, phi3p, psi3p] = pairs.require_vec::<4>("initial.angles")?;
            if !(i0 > 0.0 && j0 > 0.0) {
                return Err(err("initial.actions", a_line, "I0 and J0 must be positive"));
            }
            Initial::Canonical(CanonicalState { i0, j0, i3p, j3p, phi0, psi0, phi3p, psi3p })
        }
        Chart::Kepler => {
            let x_line = pairs.line("initial.x");
            let x = pairs.require_vec::<3>("initial.x")?;
            let y = pairs.take_vec::<3>("initial.y")?.unwrap_or([0.0; 3]);
            let pt = PhasePoint { y, x };
            let norm = pt.norm_x();
            if !(norm > 0.0) {
                return Err(err("initial.x", x_line, "|x| must be positive"));
            }
            if norm < COLLISION_GUARD {
                return Err(err("initial.x", x_line, format!("|x| = {norm:e} is inside the collision guard")));
            }
            Initial::Kepler(pt)
        }
    };
    pairs.reject_prefix("initial.", &chart_ctx)?;
    Ok(initial)
}

#[cfg(test)]
mod tests {
    use super::*;

    const KEPLER: &str = "mode = simulate\nchart = kepler\nparams.g0.family = zero\n\
                          initial.x = \"0,0,1\"\ninitial.y = \"0.1,0,0\"\nt_end = 6.2832\n";

    #[test]
    fn minimal_kepler_config() {
        let c = parse_config(KEPLER).unwrap();
        assert_eq!(c.mode, Mode::Simulate);
        assert_eq!(c.chart, Chart::Kepler);
        assert_eq!((c.samples, c.rel_tol, c.abs_tol), (DEFAULT_SAMPLES, DEFAULT_REL_TOL, DEFAULT_ABS_TOL));
        let System::Dynamics { params, initial: Initial::Kepler(pt) } = c.system else { panic!() };
        assert!(params.is_free());
        assert_eq!(pt.x, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn rejections_name_key_and_line() {
        let e = parse_config(&format!("{KEPLER}params.k = 0\nparams.l = 0\n")).unwrap_err();
        assert_eq!(e.key.as_deref(), Some("params.k"));
        assert_eq!(e.line, Some(7));
        assert!(e.message.contains("(0, 0)"));

        let e = parse_config(&KEPLER.replace("0,0,1", "0,0,0")).unwrap_err();
        assert_eq!((e.key.as_deref(), e.line), (Some("initial.x"), Some(4)));
        assert!(e.to_string().contains("|x|"), "{e}");

        let e = parse_config(&format!("{KEPLER}# note\nbogus.key = 3\n")).unwrap_err();
        assert_eq!((e.key.as_deref(), e.line), (Some("bogus.key"), Some(8)));
        assert!(e.message.contains("unknown"));

        let e = parse_config(&KEPLER.replace("6.2832", "six")).unwrap_err();
        assert_eq!((e.key.as_deref(), e.line), (Some("t_end"), Some(6)));

        let e = parse_config(&format!("{KEPLER}t_end = 1\n")).unwrap_err();
        assert!(e.message.contains("duplicate"));

        let e = parse_config(&format!("{KEPLER}samples = 1\n")).unwrap_err();
        assert_eq!(e.key.as_deref(), Some("samples"));

        let e = parse_config(&format!("{KEPLER}initial.eta = \"1,0,0,0\"\n")).unwrap_err();
        assert_eq!(e.key.as_deref(), Some("initial.eta"));

        let e = parse_config(&format!("{KEPLER}example.I0 = 1\n")).unwrap_err();
        assert_eq!(e.key.as_deref(), Some("example.I0"));

        let e = parse_config(&format!("{KEPLER}params.h0.c = \"1,1,1,1\"\n")).unwrap_err();
        assert_eq!(e.key.as_deref(), Some("params.h0.c"));

        let e = parse_config("chart = kepler\nt_end = 1\n").unwrap_err();
        assert_eq!(e.key.as_deref(), Some("mode"));

        let e = parse_config("mode = simulate\nnonsense\n").unwrap_err();
        assert_eq!(e.line, Some(2));
    }

    #[test]
    fn example_modes() {
        let text = "mode = compare\nchart = kepler\nt_end = 10\nexample.I0 = 1\nexample.G0 = 0.1\nexample.H = 4.1\n";
        let c = parse_config(text).unwrap();
        let System::Example(p) = c.system else { panic!() };
        assert_eq!((p.i0, p.g0, p.h, p.l_sign), (1.0, 0.1, 4.1, 1));

        let e = parse_config(&text.replace("4.1", "4.5")).unwrap_err();
        assert_eq!((e.key.as_deref(), e.line), (Some("example.H"), Some(6)));

        let e = parse_config(&format!("{text}params.k = 1\n")).unwrap_err();
        assert_eq!(e.key.as_deref(), Some("params.k"));
    }

    #[test]
    fn families_and_random_initial() {
        let text = "mode = simulate\nchart = complex\nt_end = 1\nparams.k = 2\nparams.l = -1\n\
                    params.h0.family = affine\nparams.h0.c = \"1, 0.5, 2, 1\"\n\
                    params.g0.family = constant\nparams.g0.c0 = 0.05\ninitial.random = true\nseed = 7\n";
        let a = parse_config(text).unwrap();
        let b = parse_config(text).unwrap();
        assert_eq!(a, b);
        let System::Dynamics { params, .. } = a.system else { panic!() };
        assert_eq!(params.h0, Family::Affine { c0: 0.0, c: [1.0, 0.5, 2.0, 1.0] });
        assert_eq!(params.g0, Family::Constant(0.05));
        let c = parse_config(&text.replace("seed = 7", "seed = 8")).unwrap();
        assert_ne!(a.system, c.system);
    }
}
