use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use super::config::{Chart, Initial, Mode, ParamsSpec, RunConfig, System};
use super::output::{write_csv, Table};
use super::CliError;
use crate::closed_form::{canonical_closed, example_constants, state_closed, EllipticConstants, ExampleParams};
use crate::kepler::{conserved_vectors, hamiltonian_kepler, hamiltonian_pk, integrate_pk, project, PhasePoint};
use crate::numerics::{uniform_grid, OdeOptions, Trajectory};
use crate::oscillator::{
    hamiltonian_full, integrate_complex, integrate_reduced, reduced_hamiltonian, to_canonical_path, unwrap_near,
    CanonicalState, ComplexState, OscillatorParams,
};
use crate::pauli::iju_components;

pub const KEPLER_COLUMNS: [&str; 12] = ["t", "x1", "x2", "x3", "y1", "y2", "y3", "H", "M1", "M2", "M3", "R0"];
pub const COMPLEX_COLUMNS: [&str; 12] =
    ["t", "re_eta1", "im_eta1", "re_eta2", "im_eta2", "re_xi1", "im_xi1", "re_xi2", "im_xi2", "H", "I0", "J0"];
pub const CANONICAL_COLUMNS: [&str; 10] = ["t", "I0", "J0", "I3p", "J3p", "phi0", "psi0", "phi3p", "psi3p", "H"];
pub const DEVIATION_COLUMNS: [&str; 7] = ["t", "I3p", "phi0", "phi3p", "x", "y", "max"];

/// Files written and summary lines for stdout.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub summary: Vec<String>,
}

fn columns(chart: Chart) -> Vec<String> {
    let cols: &[&str] = match chart {
        Chart::Kepler => &KEPLER_COLUMNS,
        Chart::Complex => &COMPLEX_COLUMNS,
        Chart::Canonical => &CANONICAL_COLUMNS,
    };
    cols.iter().map(|s| s.to_string()).collect()
}

fn kepler_row(t: f64, pt: &PhasePoint, p: &OscillatorParams) -> Vec<f64> {
    let c = conserved_vectors(pt);
    let mut row = vec![t];
    row.extend(pt.x);
    row.extend(pt.y);
    row.extend([hamiltonian_pk(pt, p), c.m[0], c.m[1], c.m[2], c.r0]);
    row
}

fn complex_row(t: f64, s: &ComplexState, p: &OscillatorParams) -> Vec<f64> {
    let ij = iju_components(&s.eta, &s.xi);
    let mut row = vec![t];
    row.extend(s.to_real());
    row.extend([hamiltonian_full(s, p), ij.i[0], ij.j[0]]);
    row
}

fn canonical_row(t: f64, c: &CanonicalState, h: f64) -> Vec<f64> {
    let mut row = vec![t];
    row.extend(c.to_array());
    row.push(h);
    row
}

fn numeric<E: std::fmt::Display>(op: &'static str) -> impl Fn(E) -> CliError {
    move |e| CliError::Numerical { op, message: e.to_string() }
}

/// Runs one configured job, writing CSVs next to `out` (or the configured
/// output, or `pkepler_<mode>.csv`).
pub fn run(cfg: &RunConfig, out: Option<&Path>) -> Result<RunOutcome, CliError> {
    let path = out
        .map(Path::to_path_buf)
        .or_else(|| cfg.output.clone())
        .unwrap_or_else(|| PathBuf::from(format!("pkepler_{}.csv", cfg.mode.name())));
    let grid = uniform_grid(0.0, cfg.t_end, cfg.samples);
    let opts = OdeOptions::new(cfg.rel_tol, cfg.abs_tol);
    let mut outcome = RunOutcome::default();

    match (&cfg.system, cfg.mode) {
        (System::Dynamics { params, initial }, Mode::Simulate) => {
            let (table, _) = simulate(params, initial, cfg.chart, cfg.t_end, &opts, &grid)?;
            write_csv(&table, &path)?;
            outcome.files.push(path);
            outcome.summary.push(format!("samples={}", table.rows.len()));
        }
        (System::Dynamics { params, initial }, Mode::ConserveReport) => {
            let (_, traj) = simulate(params, initial, cfg.chart, cfg.t_end, &opts, &grid)?;
            let table = drift_table(&traj, params, cfg.chart);
            let max_drift = table.rows.iter().flat_map(|r| r[1..].iter().copied()).fold(0.0, f64::max);
            write_csv(&table, &path)?;
            outcome.files.push(path);
            outcome.summary.push(format!("max_drift={max_drift:.6e}"));
        }
        (System::Example(p), Mode::ClosedForm) => {
            let ec = example_constants(p).map_err(numeric("example_constants"))?;
            let table = closed_table(p, &ec, cfg.chart, &grid)?;
            write_csv(&table, &path)?;
            outcome.files.push(path);
            outcome.summary.push(format!("samples={}", table.rows.len()));
        }
        (System::Example(p), Mode::Compare) => {
            let ec = example_constants(p).map_err(numeric("example_constants"))?;
            let closed = closed_table(p, &ec, cfg.chart, &grid)?;
            let (num, dev) = compare(p, &ec, cfg.chart, cfg.t_end, &opts, &grid)?;
            let max_dev = dev.rows.iter().map(|r| r[r.len() - 1]).fold(0.0, f64::max);
            let closed_path = sibling(&path, "closed");
            let num_path = sibling(&path, "numeric");
            write_csv(&closed, &closed_path)?;
            write_csv(&num, &num_path)?;
            write_csv(&dev, &path)?;
            outcome.files.extend([closed_path, num_path, path]);
            outcome.summary.push(format!("max_deviation={max_dev:.6e}"));
        }
        _ => unreachable!("parse_config pairs modes with systems"),
    }
    Ok(outcome)
}

/// `dir/stem_tag.csv` next to `path`.
fn sibling(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "pkepler".into());
    path.with_file_name(format!("{stem}_{tag}.csv"))
}

fn simulate(
    spec: &ParamsSpec,
    initial: &Initial,
    chart: Chart,
    t_end: f64,
    opts: &OdeOptions,
    grid: &[f64],
) -> Result<(Table, Trajectory), CliError> {
    let p = spec.build();
    let span = (0.0, t_end);
    // the initial state was parsed in `chart`
    let traj = match initial {
        Initial::Complex(s) => integrate_complex(s, &p, span, opts, grid).map_err(numeric("integrate_complex"))?,
        Initial::Canonical(c) => integrate_reduced(c, &p, span, opts, grid).map_err(numeric("integrate_reduced"))?,
        Initial::Kepler(pt) => integrate_pk(pt, &p, span, opts, grid).map_err(numeric("integrate_pk"))?,
    };
    let rows = traj
        .times
        .iter()
        .zip(&traj.states)
        .enumerate()
        .map(|(i, (&t, s))| {
            let mut row = vec![t];
            row.extend_from_slice(s);
            match chart {
                Chart::Kepler => row.extend(["H", "M1", "M2", "M3", "R0"].map(|n| traj.meta[n][i])),
                Chart::Complex => row.extend(["H", "I0", "J0"].map(|n| traj.meta[n][i])),
                Chart::Canonical => row.push(traj.meta["H"][i]),
            }
            row
        })
        .collect();
    Ok((Table { header: columns(chart), rows }, traj))
}

/// Per-sample `|q(t) − q(0)|` of the conserved quantities of the chart. The
/// uncoupled sum family also conserves every component of `M⃗` and `R⃗`
/// (Kepler chart) and `H_K`.
fn drift_table(traj: &Trajectory, spec: &ParamsSpec, chart: Chart) -> Table {
    let (k, l) = (f64::from(spec.k), f64::from(spec.l));
    let kl2 = k * k + l * l;
    let mut series: Vec<(String, Vec<f64>)> = Vec::new();
    match chart {
        Chart::Kepler => {
            let pts: Vec<PhasePoint> = traj.states.iter().map(|v| PhasePoint::from_array(v)).collect();
            let j3p = pts
                .iter()
                .map(|pt| {
                    let c = conserved_vectors(pt).components();
                    (l * c.i[3] + k * c.j[3]) / kl2
                })
                .collect();
            series.push(("H".into(), traj.meta["H"].clone()));
            series.push(("R0".into(), traj.meta["R0"].clone()));
            series.push(("J3p".into(), j3p));
            if spec.is_free() {
                for n in ["M1", "M2", "M3", "R1", "R2", "R3"] {
                    series.push((n.into(), traj.meta[n].clone()));
                }
                series.push(("HK".into(), pts.iter().map(hamiltonian_kepler).collect()));
            }
        }
        Chart::Complex => {
            for n in ["H", "I0", "J0", "J3p"] {
                series.push((n.into(), traj.meta[n].clone()));
            }
        }
        Chart::Canonical => {
            series.push(("H".into(), traj.meta["H"].clone()));
            for (n, idx) in [("I0", 0), ("J0", 1), ("J3p", 3)] {
                series.push((n.into(), traj.component(idx)));
            }
        }
    }
    let mut header = vec!["t".to_string()];
    header.extend(series.iter().map(|(n, _)| format!("drift_{n}")));
    let rows = (0..traj.len())
        .map(|i| {
            let mut row = vec![traj.times[i]];
            row.extend(series.iter().map(|(_, v)| (v[i] - v[0]).abs()));
            row
        })
        .collect();
    Table { header, rows }
}

fn closed_table(p: &ExampleParams, ec: &EllipticConstants, chart: Chart, grid: &[f64]) -> Result<Table, CliError> {
    let op = p.oscillator();
    let mut rows = Vec::with_capacity(grid.len());
    for &t in grid {
        let row = match chart {
            Chart::Canonical => {
                let c = canonical_closed(t, p, ec).map_err(numeric("angles_closed"))?;
                let h = reduced_hamiltonian(&c, &op).map_err(numeric("reduced_hamiltonian"))?;
                canonical_row(t, &c, h)
            }
            Chart::Complex => complex_row(t, &state_closed(t, p, ec).map_err(numeric("state_closed"))?.0, &op),
            Chart::Kepler => kepler_row(t, &state_closed(t, p, ec).map_err(numeric("state_closed"))?.1, &op),
        };
        rows.push(row);
    }
    Ok(Table { header: columns(chart), rows })
}

/// Wraps an angle difference into `(−π, π]`.
fn angle_diff(a: f64, b: f64) -> f64 {
    let d = unwrap_near(a, b) - b;
    if d <= -PI {
        d + 2.0 * PI
    } else {
        d
    }
}

/// Numeric run of the complex flow from the closed-form initial state, its
/// table in `chart`, and the per-sample deviation table.
fn compare(
    p: &ExampleParams,
    ec: &EllipticConstants,
    chart: Chart,
    t_end: f64,
    opts: &OdeOptions,
    grid: &[f64],
) -> Result<(Table, Table), CliError> {
    let op = p.oscillator();
    let (s0, _, _) = state_closed(0.0, p, ec).map_err(numeric("state_closed"))?;
    let traj = integrate_complex(&s0, &op, (0.0, t_end), opts, grid).map_err(numeric("integrate_complex"))?;
    let states: Vec<ComplexState> = traj.states.iter().map(|v| ComplexState::from_real(v)).collect();
    let canon = to_canonical_path(&states, &op).map_err(numeric("to_canonical"))?;

    let mut num_rows = Vec::with_capacity(grid.len());
    let mut dev_rows = Vec::with_capacity(grid.len());
    for (i, &t) in traj.times.iter().enumerate() {
        let s = &states[i];
        let pt = project(s).map_err(numeric("project"))?;
        num_rows.push(match chart {
            Chart::Complex => complex_row(t, s, &op),
            Chart::Kepler => kepler_row(t, &pt, &op),
            Chart::Canonical => canonical_row(t, &canon[i], traj.meta["H"][i]),
        });

        let cc = canonical_closed(t, p, ec).map_err(numeric("angles_closed"))?;
        let (_, cpt, _) = state_closed(t, p, ec).map_err(numeric("state_closed"))?;
        let dx = (0..3).map(|k| (pt.x[k] - cpt.x[k]).abs()).fold(0.0, f64::max);
        let dy = (0..3).map(|k| (pt.y[k] - cpt.y[k]).abs()).fold(0.0, f64::max);
        let devs = [
            (canon[i].i3p - cc.i3p).abs(),
            angle_diff(canon[i].phi0, cc.phi0).abs(),
            angle_diff(canon[i].phi3p, cc.phi3p).abs(),
            dx,
            dy,
        ];
        let mut row = vec![t];
        row.extend(devs);
        row.push(devs.iter().copied().fold(0.0, f64::max));
        dev_rows.push(row);
    }
    let header = DEVIATION_COLUMNS.iter().map(|s| s.to_string()).collect();
    Ok((Table { header: columns(chart), rows: num_rows }, Table { header, rows: dev_rows }))
}
