//! Scenario configuration: a versioned JSON schema with defaults, parsing
//! and physical-admissibility validation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

fn default_schema() -> u32 {
    SCHEMA_VERSION
}
fn default_layup() -> Vec<f64> {
    vec![0.0]
}
fn default_imperfection() -> f64 {
    1e-5
}
fn default_shear_correction() -> f64 {
    5.0 / 6.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Geometry {
    /// Plate side length `a`; the domain is `[-a/2, a/2]^2`.
    pub side: f64,
    /// Nominal (uniform, volume-equivalent) thickness `h`.
    pub thickness: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum MaterialSpec {
    Isotropic { e: f64, nu: f64 },
    /// Nondimensional ratios with `E2` as reference modulus (`e2` defaults
    /// to 1; reported quantities are normalized so the choice cancels).
    Orthotropic {
        e1_over_e2: f64,
        g12_over_e2: f64,
        g23_over_e2: f64,
        nu12: f64,
        #[serde(default = "one")]
        e2: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl MaterialSpec {
    pub fn is_isotropic(&self) -> bool {
        matches!(self, MaterialSpec::Isotropic { .. })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ThicknessProfile {
    Uniform,
    TaperedX { alpha: f64 },
    TaperedDiagonal { alpha: f64 },
    SineWave { alpha: f64, waves: u32 },
    /// Explicit per-lamina control grids, control-net ordering.
    ControlGrids { grids: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeshSpec {
    pub elements: usize,
    #[serde(default = "default_degree")]
    pub degree: usize,
}

fn default_degree() -> usize {
    2
}

impl Default for MeshSpec {
    fn default() -> Self {
        Self { elements: 6, degree: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryPreset {
    /// Cantilever: clamped along edge AD.
    ClampedAd,
    /// Hard simple support on all four edges.
    Ss1All,
    /// In-plane and transverse support on the adjacent edges AD and CD.
    Ss2AdCd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoadKind {
    Pressure,
    UniaxialX,
    UniaxialY,
    Biaxial,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoadSpec {
    #[serde(rename = "type")]
    pub kind: LoadKind,
    /// Raw reference magnitude. Defaults to the normalization unit, making
    /// the solver's load factor coincide with the normalized load.
    #[serde(default)]
    pub magnitude: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnalysisKind {
    LinearBending,
    NonlinearBending,
    NonlinearBuckling,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Displacement-increment convergence tolerance (delta).
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    /// Stop tracing once |w| exceeds this multiple of the nominal thickness.
    #[serde(default)]
    pub stop_probe_ratio: Option<f64>,
    /// Stop tracing once the normalized load factor exceeds this value.
    #[serde(default)]
    pub stop_load: Option<f64>,
    /// Explicit initial arc length; computed from the linear response when
    /// absent.
    #[serde(default)]
    pub initial_arc_length: Option<f64>,
}

fn default_tolerance() -> f64 {
    1e-3
}
fn default_max_iterations() -> usize {
    20
}
fn default_max_steps() -> usize {
    400
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerance: default_tolerance(),
            max_iterations: default_max_iterations(),
            max_steps: default_max_steps(),
            stop_probe_ratio: None,
            stop_load: None,
            initial_arc_length: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged, rename_all = "kebab-case")]
pub enum ProbeSpec {
    Named(ProbeName),
    Custom { x: f64, y: f64 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeName {
    /// Plate center O.
    Origin,
    /// Midpoint M of the free edge BC.
    EdgeBcMid,
    /// Corner B.
    CornerB,
    /// Largest-deflection point of the buckling mode; buckling runs only.
    /// Keeps the probe off nodal lines of higher modes.
    ModeMax,
}

impl Default for ProbeSpec {
    fn default() -> Self {
        ProbeSpec::Named(ProbeName::Origin)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioConfig {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub geometry: Geometry,
    pub material: MaterialSpec,
    #[serde(default = "default_layup")]
    pub layup: Vec<f64>,
    pub thickness_profile: ThicknessProfile,
    #[serde(default)]
    pub mesh: MeshSpec,
    pub boundary: BoundaryPreset,
    pub load: LoadSpec,
    pub analysis: AnalysisKind,
    #[serde(default)]
    pub solver: SolverConfig,
    /// Normalized imperfection amplitude Delta = w_max / side.
    #[serde(default = "default_imperfection")]
    pub imperfection: f64,
    #[serde(default = "default_shear_correction")]
    pub shear_correction: f64,
    #[serde(default)]
    pub probe: ProbeSpec,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Physical-admissibility checks beyond the schema, each naming the
    /// offending field.
    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |field: &str, message: String| {
            Err(CliError::Validation { field: field.into(), message })
        };
        if self.schema != SCHEMA_VERSION {
            return fail("schema", format!("expected {SCHEMA_VERSION}, got {}", self.schema));
        }
        let a = self.geometry.side;
        let h = self.geometry.thickness;
        if !(a > 0.0) {
            return fail("geometry.side", format!("must be positive, got {a}"));
        }
        if !(h > 0.0) {
            return fail("geometry.thickness", format!("must be positive, got {h}"));
        }
        match &self.material {
            MaterialSpec::Isotropic { e, nu } => {
                if !(*e > 0.0) {
                    return fail("material.e", format!("must be positive, got {e}"));
                }
                if !(*nu > 0.0 && *nu < 0.5) {
                    return fail("material.nu", format!("must lie in (0, 0.5), got {nu}"));
                }
            }
            MaterialSpec::Orthotropic { e1_over_e2, g12_over_e2, g23_over_e2, nu12, e2 } => {
                for (name, v) in [
                    ("material.e1_over_e2", e1_over_e2),
                    ("material.g12_over_e2", g12_over_e2),
                    ("material.g23_over_e2", g23_over_e2),
                    ("material.e2", e2),
                ] {
                    if !(*v > 0.0) {
                        return fail(name, format!("must be positive, got {v}"));
                    }
                }
                if !(*nu12 > 0.0 && *nu12 < 0.5) {
                    return fail("material.nu12", format!("must lie in (0, 0.5), got {nu12}"));
                }
            }
        }
        if self.layup.is_empty() {
            return fail("layup", "at least one lamina required".into());
        }
        match &self.thickness_profile {
            ThicknessProfile::Uniform => {}
            ThicknessProfile::TaperedX { alpha } => {
                if !(*alpha >= 0.0 && alpha * a < h) {
                    return fail(
                        "thickness_profile.alpha",
                        format!("tapered-x needs alpha * side < thickness; {alpha} * {a} >= {h}"),
                    );
                }
            }
            ThicknessProfile::TaperedDiagonal { alpha } => {
                let lim = h / (std::f64::consts::SQRT_2 * a);
                if !(*alpha >= 0.0 && *alpha < lim) {
                    return fail(
                        "thickness_profile.alpha",
                        format!("tapered-diagonal needs alpha < {lim}, got {alpha}"),
                    );
                }
            }
            ThicknessProfile::SineWave { alpha, waves } => {
                if !(*alpha >= 0.0 && *alpha < 0.5) {
                    return fail(
                        "thickness_profile.alpha",
                        format!("sine-wave needs alpha in [0, 0.5), got {alpha}"),
                    );
                }
                if *waves == 0 {
                    return fail("thickness_profile.waves", "must be at least 1".into());
                }
            }
            ThicknessProfile::ControlGrids { grids } => {
                if grids.len() != self.layup.len() {
                    return fail(
                        "thickness_profile.grids",
                        format!("expected {} lamina grids, got {}", self.layup.len(), grids.len()),
                    );
                }
            }
        }
        if self.mesh.degree != 2 {
            return fail("mesh.degree", format!("only quadratic meshes supported, got {}", self.mesh.degree));
        }
        if self.mesh.elements < 1 {
            return fail("mesh.elements", "must be at least 1".into());
        }
        if self.analysis == AnalysisKind::NonlinearBuckling && self.load.kind == LoadKind::Pressure
        {
            return fail("load.type", "buckling analysis needs an edge compression load".into());
        }
        if let Some(m) = self.load.magnitude {
            if !(m > 0.0) {
                return fail("load.magnitude", format!("must be positive, got {m}"));
            }
        }
        if !(self.solver.tolerance > 0.0) {
            return fail("solver.tolerance", "must be positive".into());
        }
        if !(self.imperfection >= 0.0) {
            return fail("imperfection", "must be non-negative".into());
        }
        if !(self.shear_correction > 0.0) {
            return fail("shear_correction", "must be positive".into());
        }
        if self.probe == ProbeSpec::Named(ProbeName::ModeMax)
            && self.analysis != AnalysisKind::NonlinearBuckling
        {
            return fail("probe", "mode-max probe needs a nonlinear-buckling analysis".into());
        }
        Ok(())
    }

    /// Advisory notes about questionable but admissible settings.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let ThicknessProfile::SineWave { alpha, .. } = &self.thickness_profile {
            if *alpha > 0.0 && self.mesh.elements < 12 {
                out.push(format!(
                    "sine-wave thickness with a {0}x{0} mesh may not be converged; a 12x12 mesh is recommended",
                    self.mesh.elements
                ));
            }
        }
        out
    }
}
