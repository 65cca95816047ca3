use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use sta_fields::harness::{
    run_check_algebra, run_check_bilinears, run_check_lorentz, run_simulate, HarnessError, Mode,
    RunConfig,
};

/// Cl(1,3) identity suites and generalized Maxwell runs.
///
/// Exit code 0 iff every check in the selected mode passes its threshold.
#[derive(Parser)]
#[command(name = "sta-fields", version)]
struct Cli {
    /// What to run.
    #[arg(value_enum)]
    mode: Mode,
    /// JSON run configuration (single document; unknown keys rejected).
    #[arg(long)]
    config: Option<PathBuf>,
    /// simulate: CSV output path (summary JSON written beside it).
    /// Check modes: summary JSON path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the config RNG seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, HarnessError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(mode) = cfg.mode {
        if mode != cli.mode {
            return Err(HarnessError::Config(format!(
                "config file says mode {}, command line says {}",
                mode.as_str(),
                cli.mode.as_str()
            )));
        }
    }
    cfg.mode = Some(cli.mode);
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.output = Some(out.clone());
    }

    let report = match cli.mode {
        Mode::CheckAlgebra => run_check_algebra(&cfg),
        Mode::CheckBilinears => run_check_bilinears(&cfg),
        Mode::CheckLorentz => run_check_lorentz(&cfg),
        Mode::Simulate => run_simulate(&cfg)?,
    };
    print!("{}", report.render());

    let summary = serde_json::to_string_pretty(&report.summary_json(&cfg.tolerances))? + "\n";
    match cli.mode {
        Mode::Simulate => {
            let path = cfg.output_path().with_extension("summary.json");
            std::fs::write(&path, &summary)?;
            println!("csv: {}", cfg.output_path().display());
            println!("summary: {}", path.display());
        }
        _ => {
            if let Some(path) = &cfg.output {
                std::fs::write(path, &summary)?;
                println!("summary: {}", path.display());
            }
        }
    }
    println!("{summary}");
    Ok(report.passed())
}
