//! Output normalization: deflections by the nominal thickness, pressures by
//! `E h^4 / a^4`, and compression loads by the uniform-plate flexural
//! rigidity (isotropic) or by `E2 h^3 / a^2` (composite).

use serde::{Deserialize, Serialize};

use crate::config::{LoadKind, MaterialSpec, ScenarioConfig};

/// Normalization constants for one scenario.
#[derive(Debug, Clone, Copy)]
pub struct Normalization {
    side: f64,
    thickness: f64,
    /// Reference modulus: E for isotropic plates, E2 for composites.
    e_ref: f64,
    /// Flexural rigidity of the uniform-thickness plate; isotropic only.
    d_bar: Option<f64>,
}

/// One normalized sample of an equilibrium path.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct NormalizedRecord {
    pub w_bar: f64,
    pub load: f64,
}

impl Normalization {
    pub fn from_config(config: &ScenarioConfig) -> Self {
        let (e_ref, d_bar) = match &config.material {
            MaterialSpec::Isotropic { e, nu } => {
                let h = config.geometry.thickness;
                (*e, Some(e * h * h * h / (12.0 * (1.0 - nu * nu))))
            }
            MaterialSpec::Orthotropic { e2, .. } => (*e2, None),
        };
        Self {
            side: config.geometry.side,
            thickness: config.geometry.thickness,
            e_ref,
            d_bar,
        }
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    /// Raw load magnitude that maps to a normalized value of one; using it
    /// as the reference load makes the solver's load factor directly the
    /// normalized load.
    pub fn load_unit(&self, kind: LoadKind) -> f64 {
        let a = self.side;
        let h = self.thickness;
        match kind {
            LoadKind::Pressure => self.e_ref * h.powi(4) / a.powi(4),
            LoadKind::UniaxialX | LoadKind::UniaxialY | LoadKind::Biaxial => match self.d_bar {
                Some(d) => core::f64::consts::PI.powi(2) * d / (a * a),
                None => self.e_ref * h.powi(3) / (a * a),
            },
        }
    }

    pub fn normalize_deflection(&self, w: f64) -> f64 {
        w / self.thickness
    }

    pub fn denormalize_deflection(&self, w_bar: f64) -> f64 {
        w_bar * self.thickness
    }

    pub fn normalize_load(&self, kind: LoadKind, raw: f64) -> f64 {
        raw / self.load_unit(kind)
    }

    pub fn denormalize_load(&self, kind: LoadKind, normalized: f64) -> f64 {
        normalized * self.load_unit(kind)
    }

    pub fn record(&self, kind: LoadKind, w: f64, raw_load: f64) -> NormalizedRecord {
        NormalizedRecord {
            w_bar: self.normalize_deflection(w),
            load: self.normalize_load(kind, raw_load),
        }
    }
}
