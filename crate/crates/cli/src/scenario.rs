//! Scenario execution: builds the plate model from a configuration, runs the
//! configured analysis and collects normalized path rows plus a summary.

use serde::{Deserialize, Serialize};

use varplate::analysis::{
    arc_length_for_load_increment, arc_length_for_probe_increment, buckling_analysis,
    linear_bending, ReducedPlateSystem,
};
use varplate::laminate::{LaminaMaterial, Layup};
use varplate::model::{BcKind, Edge, LoadCase, PlateModel, ShearRule};
use varplate::nurbs::{ParamPoint, Patch2D};
use varplate::solve::{riks_trace, EquilibriumPath, SolverSettings};
use varplate::thickness::{sine_wave, tapered_diagonal, tapered_x, ThicknessField};

use crate::config::{
    AnalysisKind, BoundaryPreset, LoadKind, MaterialSpec, ProbeName, ProbeSpec, ScenarioConfig,
    ThicknessProfile,
};
use crate::normalize::Normalization;
use crate::CliError;

/// One emitted path sample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathRow {
    pub step: usize,
    pub lambda: f64,
    pub load_normalized: f64,
    pub w_probe: f64,
    pub w_normalized: f64,
    pub iterations: usize,
}

/// Run summary; `critical_load_*` fields are populated by buckling runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    /// Normalized load at which the probe deflection first exceeds 0.05 h.
    pub critical_load_threshold: Option<f64>,
    /// Normalized load interpolated at a probe deflection of 0.2 h.
    pub critical_load_plateau: Option<f64>,
    /// Smallest positive eigenvalue of the linearized stability problem.
    pub critical_load_linear: Option<f64>,
    pub steps: usize,
    pub converged: bool,
    pub final_load_normalized: Option<f64>,
    pub final_deflection_normalized: Option<f64>,
    /// Volume of the fitted thickness field over the plate.
    pub plate_volume: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub rows: Vec<PathRow>,
    pub summary: Summary,
}

/// Probe threshold (in units of the nominal thickness) for the
/// threshold-crossing critical-load estimate.
pub const CRITICAL_THRESHOLD_RATIO: f64 = 0.05;
/// Probe level (in units of the nominal thickness) at which the plateau
/// value is read off the path.
pub const CRITICAL_PLATEAU_RATIO: f64 = 0.2;

fn material_of(config: &ScenarioConfig) -> LaminaMaterial {
    match &config.material {
        MaterialSpec::Isotropic { e, nu } => LaminaMaterial::isotropic(*e, *nu),
        MaterialSpec::Orthotropic { e1_over_e2, g12_over_e2, g23_over_e2, nu12, e2 } => {
            LaminaMaterial::orthotropic_ratios(*e1_over_e2, *g12_over_e2, *g23_over_e2, *nu12, *e2)
        }
    }
}

fn thickness_field_of(
    config: &ScenarioConfig,
    patch: &Patch2D,
) -> Result<ThicknessField, CliError> {
    let a = config.geometry.side;
    let h = config.geometry.thickness;
    let n = config.layup.len();
    let field = match &config.thickness_profile {
        ThicknessProfile::Uniform => ThicknessField::uniform(patch, h, n)?,
        ThicknessProfile::TaperedX { alpha } => {
            ThicknessField::fit(patch, tapered_x(a, h, *alpha)?, n)?
        }
        ThicknessProfile::TaperedDiagonal { alpha } => {
            ThicknessField::fit(patch, tapered_diagonal(a, h, *alpha)?, n)?
        }
        ThicknessProfile::SineWave { alpha, waves } => {
            ThicknessField::fit(patch, sine_wave(a, h, *alpha, *waves)?, n)?
        }
        ThicknessProfile::ControlGrids { grids } => {
            ThicknessField::from_control_grids(patch, grids.clone())?
        }
    };
    Ok(field)
}

fn probe_param(config: &ScenarioConfig, patch: &Patch2D) -> Result<Option<ParamPoint>, CliError> {
    let a = config.geometry.side;
    Ok(match &config.probe {
        ProbeSpec::Named(ProbeName::Origin) => Some(patch.param_from_xy(0.0, 0.0)?),
        ProbeSpec::Named(ProbeName::EdgeBcMid) => Some(patch.param_from_xy(a / 2.0, 0.0)?),
        ProbeSpec::Named(ProbeName::CornerB) => Some(patch.param_from_xy(a / 2.0, a / 2.0)?),
        // resolved from the buckling mode once it is known
        ProbeSpec::Named(ProbeName::ModeMax) => None,
        ProbeSpec::Custom { x, y } => Some(patch.param_from_xy(*x, *y)?),
    })
}

/// Densely samples the transverse component of a mode and returns the
/// parameter point of its largest magnitude.
fn mode_max_param(
    model: &PlateModel,
    mode: &varplate::model::DisplacementState,
) -> Result<ParamPoint, CliError> {
    let mut best = (ParamPoint::new(0.5, 0.5), -1.0);
    for j in 0..=40 {
        for i in 0..=40 {
            let pt = ParamPoint::new(i as f64 / 40.0, j as f64 / 40.0);
            let w = model.deflection_at(mode, pt)?.abs();
            if w > best.1 {
                best = (pt, w);
            }
        }
    }
    Ok(best.0)
}

/// Constructs the constrained plate model, the normalization and the probe
/// (`None` when the probe follows the buckling mode).
pub fn build_model(
    config: &ScenarioConfig,
) -> Result<(PlateModel, Normalization, Option<ParamPoint>), CliError> {
    let a = config.geometry.side;
    let patch = Patch2D::rectangle(-a / 2.0, a / 2.0, -a / 2.0, a / 2.0, config.mesh.elements, config.mesh.degree);
    let thickness = thickness_field_of(config, &patch)?;
    let layup = Layup::new(&config.layup, material_of(config))?;

    let norm = Normalization::from_config(config);
    let magnitude = config
        .load
        .magnitude
        .unwrap_or_else(|| norm.load_unit(config.load.kind));
    let load = match config.load.kind {
        LoadKind::Pressure => LoadCase { pressure: magnitude, nx: 0.0, ny: 0.0 },
        LoadKind::UniaxialX => LoadCase { pressure: 0.0, nx: magnitude, ny: 0.0 },
        LoadKind::UniaxialY => LoadCase { pressure: 0.0, nx: 0.0, ny: magnitude },
        LoadKind::Biaxial => LoadCase { pressure: 0.0, nx: magnitude, ny: magnitude },
    };

    let probe = probe_param(config, &patch)?;
    let mut model = PlateModel::new(
        patch,
        thickness,
        layup,
        config.shear_correction,
        load,
        ShearRule::Reduced,
    )?;
    match config.boundary {
        BoundaryPreset::ClampedAd => model.apply_bc(BcKind::Clamped, &[Edge::Ad]),
        BoundaryPreset::Ss1All => {
            model.apply_bc(
                BcKind::SimplySupported1,
                &[Edge::Ad, Edge::Bc, Edge::Ab, Edge::Cd],
            );
            // SS1 leaves the membrane free-floating
            model.pin_in_plane_rigid_modes()?;
        }
        BoundaryPreset::Ss2AdCd => model.apply_bc(BcKind::SimplySupported2, &[Edge::Ad, Edge::Cd]),
    }
    Ok((model, norm, probe))
}

fn rows_from_path(
    path: &EquilibriumPath,
    config: &ScenarioConfig,
    norm: &Normalization,
    magnitude: f64,
) -> Vec<PathRow> {
    path.records
        .iter()
        .map(|rec| PathRow {
            step: rec.step,
            lambda: rec.lambda,
            load_normalized: norm.normalize_load(config.load.kind, rec.lambda * magnitude),
            w_probe: rec.probe,
            w_normalized: norm.normalize_deflection(rec.probe),
            iterations: rec.iterations,
        })
        .collect()
}

/// Executes the configured analysis.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioOutcome, CliError> {
    config.validate()?;
    let warnings = config.warnings();
    for w in &warnings {
        eprintln!("warning: {w}");
    }

    let (mut model, norm, probe) = build_model(config)?;
    let h = config.geometry.thickness;
    let magnitude = config
        .load
        .magnitude
        .unwrap_or_else(|| norm.load_unit(config.load.kind));
    let to_normalized = |lambda: f64| norm.normalize_load(config.load.kind, lambda * magnitude);
    let to_factor = |normalized: f64| {
        norm.denormalize_load(config.load.kind, normalized) / magnitude
    };
    let plate_volume = model.thickness().volume(model.patch())?;

    match config.analysis {
        AnalysisKind::LinearBending => {
            let probe = probe.expect("validated: fixed probe for bending analyses");
            let state = linear_bending(&model)?;
            let w1 = model.deflection_at(&state, probe)?;
            // one solve fixes the whole ray; emit a sampled line up to the
            // stop condition (default |w| = 3 h)
            let lambda_end = match config.solver.stop_load {
                Some(l) => to_factor(l),
                None => {
                    let ratio = config.solver.stop_probe_ratio.unwrap_or(3.0);
                    if w1.abs() < 1e-300 {
                        1.0
                    } else {
                        ratio * h / w1.abs()
                    }
                }
            };
            let samples = 20;
            let rows: Vec<PathRow> = (1..=samples)
                .map(|k| {
                    let lambda = lambda_end * k as f64 / samples as f64;
                    PathRow {
                        step: k - 1,
                        lambda,
                        load_normalized: to_normalized(lambda),
                        w_probe: w1 * lambda,
                        w_normalized: norm.normalize_deflection(w1 * lambda),
                        iterations: 1,
                    }
                })
                .collect();
            let last = rows.last().cloned();
            Ok(ScenarioOutcome {
                rows,
                summary: Summary {
                    critical_load_threshold: None,
                    critical_load_plateau: None,
                    critical_load_linear: None,
                    steps: samples,
                    converged: true,
                    final_load_normalized: last.as_ref().map(|r| r.load_normalized),
                    final_deflection_normalized: last.map(|r| r.w_normalized),
                    plate_volume,
                    warnings,
                },
            })
        }
        AnalysisKind::NonlinearBending => {
            let probe = probe.expect("validated: fixed probe for bending analyses");
            let system = ReducedPlateSystem::new(&model, probe)?;
            let initial_arc = match config.solver.initial_arc_length {
                Some(arc) => arc,
                None => arc_length_for_probe_increment(&system, 0.01 * h)?,
            };
            let settings = SolverSettings {
                tolerance: config.solver.tolerance,
                max_iterations: config.solver.max_iterations,
                max_steps: config.solver.max_steps,
                initial_arc_length: initial_arc,
                max_arc_length: 20.0 * initial_arc,
                max_probe_increment: Some(0.15 * h),
                stop_probe: Some(config.solver.stop_probe_ratio.unwrap_or(3.0) * h),
                stop_lambda: config.solver.stop_load.map(to_factor),
                ..Default::default()
            };
            let path = riks_trace(&system, &settings)?;
            let rows = rows_from_path(&path, config, &norm, magnitude);
            let last = rows.last().cloned();
            Ok(ScenarioOutcome {
                summary: Summary {
                    critical_load_threshold: None,
                    critical_load_plateau: None,
                    critical_load_linear: None,
                    steps: rows.len(),
                    converged: path.converged(),
                    final_load_normalized: last.as_ref().map(|r| r.load_normalized),
                    final_deflection_normalized: last.map(|r| r.w_normalized),
                    plate_volume,
                    warnings,
                },
                rows,
            })
        }
        AnalysisKind::NonlinearBuckling => {
            let eig = buckling_analysis(&model)?;
            if config.imperfection > 0.0 {
                model.seed_imperfection(&eig.mode, config.imperfection, config.geometry.side)?;
            }
            let probe = match probe {
                Some(pt) => pt,
                None => mode_max_param(&model, &eig.mode)?,
            };
            let system = ReducedPlateSystem::new(&model, probe)?;
            let initial_arc = match config.solver.initial_arc_length {
                Some(arc) => arc,
                None => arc_length_for_load_increment(&system, eig.critical_load / 50.0)?,
            };
            let settings = SolverSettings {
                tolerance: config.solver.tolerance,
                max_iterations: config.solver.max_iterations,
                max_steps: config.solver.max_steps,
                initial_arc_length: initial_arc,
                max_arc_length: 12.0 * initial_arc,
                max_lambda_increment: Some(eig.critical_load / 50.0),
                max_probe_increment: Some(0.1 * h),
                stop_probe: Some(config.solver.stop_probe_ratio.unwrap_or(0.5) * h),
                stop_lambda: config.solver.stop_load.map(to_factor),
                ..Default::default()
            };
            let path = riks_trace(&system, &settings)?;
            let rows = rows_from_path(&path, config, &norm, magnitude);
            let last = rows.last().cloned();
            Ok(ScenarioOutcome {
                summary: Summary {
                    critical_load_threshold: path
                        .lambda_at_probe(CRITICAL_THRESHOLD_RATIO * h)
                        .map(to_normalized),
                    critical_load_plateau: path
                        .lambda_at_probe(CRITICAL_PLATEAU_RATIO * h)
                        .map(to_normalized),
                    critical_load_linear: Some(to_normalized(eig.critical_load)),
                    steps: rows.len(),
                    converged: path.converged(),
                    final_load_normalized: last.as_ref().map(|r| r.load_normalized),
                    final_deflection_normalized: last.map(|r| r.w_normalized),
                    plate_volume,
                    warnings,
                },
                rows,
            })
        }
    }
}
