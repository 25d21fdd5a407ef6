//! Built-in benchmark scenarios: isotropic and laminated square plates with
//! tapered or sine-wave thickness under bending and compression.

use crate::config::{
    AnalysisKind, BoundaryPreset, Geometry, LoadKind, LoadSpec, MaterialSpec, MeshSpec, ProbeName,
    ProbeSpec, ScenarioConfig, SolverConfig, ThicknessProfile,
};
use crate::CliError;

/// Variant parameters for a preset.
#[derive(Debug, Clone, Default)]
pub struct PresetParams {
    /// Tapered ratio or sine-wave amplitude; required by non-uniform presets.
    pub alpha: Option<f64>,
    /// Sine-wave wavelength count.
    pub waves: Option<u32>,
    /// Analysis kind; defaults to nonlinear buckling.
    pub analysis: Option<AnalysisKind>,
}

pub const PRESET_NAMES: [&str; 6] = ["4.1", "4.2", "4.3", "4.4", "4.5-iso", "4.5-crossply"];

fn isotropic() -> MaterialSpec {
    MaterialSpec::Isotropic { e: 3.0e6, nu: 0.25 }
}

fn composite() -> MaterialSpec {
    MaterialSpec::Orthotropic {
        e1_over_e2: 25.0,
        g12_over_e2: 0.5,
        g23_over_e2: 0.2,
        nu12: 0.25,
        e2: 1.0,
    }
}

fn require_alpha(name: &str, params: &PresetParams) -> Result<f64, CliError> {
    params.alpha.ok_or_else(|| CliError::Validation {
        field: "alpha".into(),
        message: format!("preset {name} needs --alpha (the thickness variation is its parameter)"),
    })
}

/// Builds a fully populated scenario for one of the named benchmarks.
pub fn preset(name: &str, params: &PresetParams) -> Result<ScenarioConfig, CliError> {
    let analysis = params.analysis.unwrap_or(AnalysisKind::NonlinearBuckling);
    let bending = analysis != AnalysisKind::NonlinearBuckling;

    let (material, layup, profile, side, thickness): (MaterialSpec, Vec<f64>, _, f64, f64) =
        match name {
            "4.1" => (
                isotropic(),
                vec![0.0],
                ThicknessProfile::TaperedX { alpha: require_alpha(name, params)? },
                10.0,
                0.2,
            ),
            "4.2" => (
                isotropic(),
                vec![0.0],
                ThicknessProfile::TaperedDiagonal { alpha: require_alpha(name, params)? },
                10.0,
                0.2,
            ),
            "4.3" => (
                composite(),
                vec![0.0, 90.0, 90.0, 0.0],
                ThicknessProfile::TaperedX { alpha: require_alpha(name, params)? },
                10.0,
                0.2,
            ),
            "4.4" => (
                composite(),
                vec![45.0, -45.0, -45.0, 45.0],
                ThicknessProfile::TaperedDiagonal { alpha: require_alpha(name, params)? },
                10.0,
                0.2,
            ),
            "4.5-iso" | "4.5-crossply" => {
                if bending {
                    return Err(CliError::Validation {
                        field: "analysis".into(),
                        message: format!("preset {name} defines a buckling benchmark only"),
                    });
                }
                let alpha = require_alpha(name, params)?;
                let waves = if alpha == 0.0 { params.waves.unwrap_or(1) } else {
                    params.waves.ok_or_else(|| CliError::Validation {
                        field: "waves".into(),
                        message: format!("preset {name} needs --waves for alpha > 0"),
                    })?
                };
                let (mat, lay): (MaterialSpec, Vec<f64>) = if name == "4.5-iso" {
                    (isotropic(), vec![0.0])
                } else {
                    (composite(), vec![0.0, 90.0, 90.0, 0.0])
                };
                (mat, lay, ThicknessProfile::SineWave { alpha, waves }, 10.0, 0.5)
            }
            other => {
                return Err(CliError::Validation {
                    field: "preset".into(),
                    message: format!("unknown preset `{other}`; known: {PRESET_NAMES:?}"),
                })
            }
        };

    // boundary, load and probe depend on the analysis family
    let (boundary, load_kind, probe) = match name {
        "4.1" | "4.3" => {
            if bending {
                (BoundaryPreset::ClampedAd, LoadKind::Pressure, ProbeName::EdgeBcMid)
            } else {
                (BoundaryPreset::Ss1All, LoadKind::UniaxialX, ProbeName::Origin)
            }
        }
        "4.2" | "4.4" => {
            if bending {
                (BoundaryPreset::Ss2AdCd, LoadKind::Pressure, ProbeName::CornerB)
            } else {
                (BoundaryPreset::Ss1All, LoadKind::Biaxial, ProbeName::Origin)
            }
        }
        // the orthotropic uniaxial-y mode can have a nodal line through the
        // center, so the sine-wave presets probe the mode peak instead
        _ => (BoundaryPreset::Ss1All, LoadKind::UniaxialY, ProbeName::ModeMax),
    };

    // sine-wave runs need the refined mesh once the thickness varies
    let elements = match &profile {
        ThicknessProfile::SineWave { alpha, .. } if *alpha > 0.0 => 12,
        _ => 6,
    };

    let config = ScenarioConfig {
        schema: crate::config::SCHEMA_VERSION,
        geometry: Geometry { side, thickness },
        material,
        layup,
        thickness_profile: profile,
        mesh: MeshSpec { elements, degree: 2 },
        boundary,
        load: LoadSpec { kind: load_kind, magnitude: None },
        analysis,
        solver: SolverConfig::default(),
        imperfection: 1e-5,
        shear_correction: 5.0 / 6.0,
        probe: ProbeSpec::Named(probe),
        output: None,
    };
    config.validate()?;
    Ok(config)
}
