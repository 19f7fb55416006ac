mod common;

use std::path::Path;
use std::process::{Command, Output};

use pkepler::cli::{CANONICAL_COLUMNS, COMPLEX_COLUMNS, KEPLER_COLUMNS};

fn pkepler(mode: &str, config: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pkepler"))
        .args([mode, "--config"])
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn summary(o: &Output, key: &str) -> f64 {
    let stdout = String::from_utf8_lossy(&o.stdout);
    stdout.lines().find_map(|l| l.strip_prefix(key)).unwrap().parse().unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn simulate_writes_each_chart() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("chart = kepler\ninitial.x = \"0.3,-0.2,0.9\"\ninitial.y = \"0.4,0.1,-0.3\"\n", &KEPLER_COLUMNS[..]),
        (
            "chart = complex\ninitial.eta = \"0.8,0.1,0.3,-0.5\"\ninitial.xi = \"0.2,0.6,-0.7,0.1\"\n",
            &COMPLEX_COLUMNS[..],
        ),
        (
            "chart = canonical\ninitial.actions = \"1,1.2,0.1,-0.2\"\ninitial.angles = \"0,0.5,1,0.3\"\n",
            &CANONICAL_COLUMNS[..],
        ),
    ];
    for (i, (body, cols)) in cases.iter().enumerate() {
        let cfg = common::write_file(
            dir.path(),
            "s.cfg",
            &format!("{body}t_end = 3\nsamples = 7\nparams.g0.family = constant\nparams.g0.c0 = 0.05\n"),
        );
        let out = dir.path().join(format!("s{i}.csv"));
        let o = pkepler("simulate", &cfg, &out);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&out).unwrap();
        assert_eq!(text.lines().count(), 8);
        let (header, rows) = read_csv(&out);
        assert_eq!(header, cols.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        assert!(rows.iter().all(|r| r.len() == cols.len()));
        assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));
        // 17 significant digits in every field
        let first_data = text.lines().nth(1).unwrap();
        assert!(first_data.split(',').all(|f| f.split('e').next().unwrap().trim_start_matches('-').len() == 18));
    }
}

#[test]
fn closed_form_mode_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = common::write_file(dir.path(), "c.cfg", &common::COMPARE_CONFIG.replace("kepler", "canonical"));
    let out = dir.path().join("c.csv");
    let o = pkepler("closed-form", &cfg, &out);
    assert!(o.status.success());
    let (header, rows) = read_csv(&out);
    assert_eq!(header.len(), CANONICAL_COLUMNS.len());
    assert_eq!(rows.len(), 201);
    for r in &rows {
        assert!((r[9] - 4.1).abs() < 1e-9, "H along the closed form");
        assert_eq!((r[1], r[2], r[4]), (1.0, 1.0, 0.0));
    }
}

#[test]
fn compare_reports_small_deviation_in_every_chart() {
    let dir = tempfile::tempdir().unwrap();
    for chart in ["kepler", "complex", "canonical"] {
        for l in ["1", "-1"] {
            let text =
                common::COMPARE_CONFIG.replace("kepler", chart).replace("example.l = 1", &format!("example.l = {l}"));
            let cfg = common::write_file(dir.path(), "cmp.cfg", &text);
            let out = dir.path().join(format!("cmp_{chart}{l}.csv"));
            let o = pkepler("compare", &cfg, &out);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
            assert!(summary(&o, "max_deviation=") < 1e-6, "{chart} l={l}");
            let stem = out.file_stem().unwrap().to_string_lossy().into_owned();
            assert!(dir.path().join(format!("{stem}_closed.csv")).exists());
            assert!(dir.path().join(format!("{stem}_numeric.csv")).exists());
        }
    }
}

#[test]
fn pure_kepler_conserve_report_over_three_periods() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = common::write_file(
        dir.path(),
        "k.cfg",
        "chart = kepler\nparams.g0.family = zero\ninitial.x = \"0.3,-0.2,0.9\"\n\
         initial.y = \"0.4,0.1,-0.3\"\nt_end = 9.42477796076938\nsamples = 301\n",
    );
    let out = dir.path().join("drift.csv");
    let o = pkepler("conserve-report", &cfg, &out);
    assert!(o.status.success());
    assert!(summary(&o, "max_drift=") < 1e-7);
    let (header, _) = read_csv(&out);
    for col in ["drift_H", "drift_M1", "drift_R3", "drift_HK"] {
        assert!(header.iter().any(|h| h == col), "{col}");
    }
}

#[test]
fn perturbed_conserve_report_in_complex_chart() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = common::write_file(
        dir.path(),
        "p.cfg",
        "chart = complex\nparams.k = 2\nparams.l = -1\nparams.g0.family = constant\nparams.g0.c0 = 0.1\n\
         initial.random = true\nseed = 11\nt_end = 10\nsamples = 101\n",
    );
    let out = dir.path().join("drift.csv");
    let o = pkepler("conserve-report", &cfg, &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(summary(&o, "max_drift=") < 1e-8);
}

#[test]
fn errors_are_single_line_with_documented_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o.csv");
    let cases = [
        ("chart = kepler\nt_end = 1\ninitial.x = \"1,0,0\"\nwhat = 1\n", "simulate", 2, "what"),
        ("chart = kepler\nt_end = -1\ninitial.x = \"1,0,0\"\n", "simulate", 2, "t_end"),
        ("mode = simulate\nchart = kepler\nt_end = 1\ninitial.x = \"1,0,0\"\n", "compare", 2, "mode"),
        ("t_end = 1\nexample.I0 = 1\nexample.G0 = 0.1\nexample.H = 9\n", "compare", 2, "example.H"),
        (
            "chart = kepler\ninitial.x = \"0,0,1\"\ninitial.y = \"0,0,0.5\"\nt_end = 10\n",
            "simulate",
            3,
            "collision guard",
        ),
    ];
    for (text, mode, code, needle) in cases {
        let cfg = common::write_file(dir.path(), "e.cfg", text);
        let o = pkepler(mode, &cfg, &out);
        let stderr = String::from_utf8_lossy(&o.stderr);
        assert_eq!(o.status.code(), Some(code), "{stderr}");
        assert_eq!(stderr.lines().count(), 1);
        assert!(stderr.starts_with("error: ") && stderr.contains(needle), "{stderr}");
    }
    let o = pkepler("simulate", &dir.path().join("absent.cfg"), &out);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: read_config:"));

    let cfg = common::write_file(dir.path(), "ok.cfg", "chart = kepler\nt_end = 1\ninitial.x = \"1,0,0\"\n");
    let o = pkepler("simulate", &cfg, &dir.path().join("no/such/dir.csv"));
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: write_csv:"));
}
