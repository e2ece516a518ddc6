//! Material constants for converting `n_min` into a length.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ANGSTROM: f64 = 1e-10;

/// A solid described by its Debye temperature and lattice constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub name: String,
    /// Debye temperature in kelvin.
    #[serde(rename = "theta_K")]
    pub theta_k: f64,
    #[serde(rename = "a0_angstrom")]
    pub a0_angstrom: f64,
}

impl Material {
    pub fn new(name: impl Into<String>, theta_k: f64, a0_angstrom: f64) -> Result<Self> {
        let m = Self { name: name.into(), theta_k, a0_angstrom };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        if !(self.theta_k > 0.0 && self.theta_k.is_finite()) {
            return Err(Error::MaterialTable(format!(
                "{}: Debye temperature must be positive, got {}",
                self.name, self.theta_k
            )));
        }
        if !(self.a0_angstrom > 0.0 && self.a0_angstrom.is_finite()) {
            return Err(Error::MaterialTable(format!(
                "{}: lattice constant must be positive, got {}",
                self.name, self.a0_angstrom
            )));
        }
        Ok(())
    }

    /// Lattice constant in metres.
    pub fn a0_m(&self) -> f64 {
        self.a0_angstrom * ANGSTROM
    }

    pub fn t_ratio(&self, kelvin: f64) -> f64 {
        kelvin / self.theta_k
    }
}

/// Iron, carbon (diamond) and silicon.
pub fn builtin() -> Vec<Material> {
    vec![
        Material { name: "iron".into(), theta_k: 470.0, a0_angstrom: 2.5 },
        Material { name: "carbon".into(), theta_k: 2230.0, a0_angstrom: 1.5 },
        Material { name: "silicon".into(), theta_k: 645.0, a0_angstrom: 2.4 },
    ]
}

/// Parses a JSON array of `{name, theta_K, a0_angstrom}` objects.
pub fn parse_table(json: &str) -> Result<Vec<Material>> {
    let table: Vec<Material> = serde_json::from_str(json).map_err(|e| Error::MaterialTable(e.to_string()))?;
    for m in &table {
        m.validate()?;
    }
    Ok(table)
}

pub fn load_table(path: &Path) -> Result<Vec<Material>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::MaterialTable(format!("{}: {e}", path.display())))?;
    parse_table(&text)
}

/// Case-insensitive lookup; entries in `user` shadow the built-in ones.
pub fn lookup(name: &str, user: &[Material]) -> Result<Material> {
    user.iter()
        .chain(builtin().iter())
        .find(|m| m.name.eq_ignore_ascii_case(name))
        .cloned()
        .ok_or_else(|| Error::UnknownMaterial(name.to_string()))
}
