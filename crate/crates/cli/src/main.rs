use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use varplate_cli::config::{AnalysisKind, ScenarioConfig};
use varplate_cli::presets::{preset, PresetParams, PRESET_NAMES};
use varplate_cli::scenario::run_scenario;
use varplate_cli::{emit, CliError};

#[derive(Parser)]
#[command(
    name = "varplate",
    about = "Nonlinear bending and buckling analysis of variable-thickness composite plates",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a JSON config file or a built-in preset
    Solve {
        /// Scenario configuration file (omit when using --preset)
        config: Option<PathBuf>,
        /// Output directory for path.csv, summary.json and config.json
        #[arg(long)]
        out: Option<PathBuf>,
        /// Benchmark preset name (4.1, 4.2, 4.3, 4.4, 4.5-iso, 4.5-crossply)
        #[arg(long)]
        preset: Option<String>,
        /// Thickness variation parameter for the preset
        #[arg(long)]
        alpha: Option<f64>,
        /// Sine-wave wavelength count for the 4.5 presets
        #[arg(long = "n")]
        waves: Option<u32>,
        /// Analysis kind: linear-bending | nonlinear-bending | nonlinear-buckling
        #[arg(long)]
        analysis: Option<String>,
    },
    /// List the built-in presets
    Presets,
}

fn parse_analysis(name: &str) -> Result<AnalysisKind, CliError> {
    match name {
        "linear-bending" => Ok(AnalysisKind::LinearBending),
        "nonlinear-bending" => Ok(AnalysisKind::NonlinearBending),
        "nonlinear-buckling" => Ok(AnalysisKind::NonlinearBuckling),
        other => Err(CliError::Validation {
            field: "analysis".into(),
            message: format!("unknown analysis `{other}`"),
        }),
    }
}

fn resolve_config(
    config_path: Option<&PathBuf>,
    preset_name: Option<&str>,
    alpha: Option<f64>,
    waves: Option<u32>,
    analysis: Option<&str>,
) -> Result<ScenarioConfig, CliError> {
    let analysis = analysis.map(parse_analysis).transpose()?;
    match (config_path, preset_name) {
        (_, Some(name)) => preset(name, &PresetParams { alpha, waves, analysis }),
        (Some(path), None) => {
            let mut config = ScenarioConfig::from_file(path)?;
            if let Some(kind) = analysis {
                config.analysis = kind;
                config.validate()?;
            }
            Ok(config)
        }
        (None, None) => Err(CliError::Validation {
            field: "config".into(),
            message: "provide a config file or --preset".into(),
        }),
    }
}

fn solve(
    config_path: Option<PathBuf>,
    out: Option<PathBuf>,
    preset_name: Option<String>,
    alpha: Option<f64>,
    waves: Option<u32>,
    analysis: Option<String>,
) -> Result<i32, CliError> {
    let config = resolve_config(
        config_path.as_ref(),
        preset_name.as_deref(),
        alpha,
        waves,
        analysis.as_deref(),
    )?;
    let outcome = run_scenario(&config)?;

    let out_dir = out
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out_dir).map_err(|e| CliError::Io {
        path: out_dir.display().to_string(),
        source: e,
    })?;
    emit::write_path_csv(&out_dir.join("path.csv"), &outcome.rows)?;
    emit::write_summary_json(&out_dir.join("summary.json"), &outcome.summary)?;
    let resolved = serde_json::to_string_pretty(&config).expect("config serializes");
    emit::write_text(&out_dir.join("config.json"), &format!("{resolved}\n"))?;

    let s = &outcome.summary;
    match (s.critical_load_plateau, s.final_deflection_normalized) {
        (Some(plateau), _) => println!(
            "critical load: plateau {plateau:.4}, threshold {:.4}, linear {:.4} ({} steps)",
            s.critical_load_threshold.unwrap_or(f64::NAN),
            s.critical_load_linear.unwrap_or(f64::NAN),
            s.steps
        ),
        (None, Some(w)) => println!(
            "final deflection w/h = {w:.4} at normalized load {:.4} ({} steps)",
            s.final_load_normalized.unwrap_or(f64::NAN),
            s.steps
        ),
        _ => println!("completed with {} steps", s.steps),
    }
    if !s.converged {
        eprintln!("warning: path terminated early; results are partial");
        return Ok(2);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { config, out, preset, alpha, waves, analysis } => {
            solve(config, out, preset, alpha, waves, analysis)
        }
        Command::Presets => {
            for name in PRESET_NAMES {
                println!("{name}");
            }
            Ok(0)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
