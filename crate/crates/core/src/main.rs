use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use pkepler::cli::{run_file, Mode, EXIT_CONFIG};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Simulate,
    ClosedForm,
    Compare,
    ConserveReport,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Simulate => Mode::Simulate,
            ModeArg::ClosedForm => Mode::ClosedForm,
            ModeArg::Compare => Mode::Compare,
            ModeArg::ConserveReport => Mode::ConserveReport,
        }
    }
}

/// Perturbed Kepler systems: numeric flows, closed forms and reports.
#[derive(Debug, Parser)]
#[command(name = "pkepler", version)]
struct Args {
    mode: ModeArg,
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV (compare also writes `<stem>_closed.csv` and `<stem>_numeric.csv`).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            // --help, --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let reason: Vec<&str> = text
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("error: arguments: {}", reason.join(" ").trim_start_matches("error: "));
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    match run_file(args.mode.into(), &args.config, args.out.as_deref()) {
        Ok(outcome) => {
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            for line in &outcome.summary {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
