use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::asymptotics::DEFAULT_BAND_CONSTANT;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Usage(format!("unknown format {other:?} (csv|json)"))),
        }
    }
}

/// Which parameter points a sweep visits.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    /// Explicit `(x, y)` pairs.
    Points(Vec<(f64, f64)>),
    /// `y = κ·log x` along an `x` ladder.
    Kappa { kappa: f64, x: Vec<f64> },
    /// `y = (log x)^A` along an `x` ladder.
    Power { a: f64, x: Vec<f64> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(default)]
pub struct Features {
    pub sumset: bool,
    pub productset: bool,
    pub energy: bool,
    pub sandwich: bool,
    pub checks: bool,
}

impl Default for Features {
    fn default() -> Self {
        Features {
            sumset: true,
            productset: true,
            energy: true,
            sandwich: true,
            checks: true,
        }
    }
}

impl Features {
    fn any(&self) -> bool {
        self.sumset || self.productset || self.energy || self.sandwich || self.checks
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize, Serialize)]
#[serde(default)]
pub struct Guards {
    /// Largest `⌊x⌋` for which `Ψ` is counted.
    pub max_floor_x: u128,
    /// Largest `Ψ` for which pairwise set operations run.
    pub max_psi: u128,
    /// Largest number of unordered pairs `Ψ(Ψ+1)/2`.
    pub max_pairs: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_floor_x: 1 << 40,
            max_psi: 200_000,
            max_pairs: 50_000_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct SweepConfig {
    pub grid: Grid,
    #[serde(default)]
    pub features: Features,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub cache: Option<PathBuf>,
    #[serde(default)]
    pub guards: Guards,
    /// Classifier constant `c` for the `y ≤ c·log x` band.
    #[serde(default = "default_band_constant")]
    pub band_constant: f64,
}

fn default_band_constant() -> f64 {
    DEFAULT_BAND_CONSTANT
}

impl SweepConfig {
    pub fn new(grid: Grid) -> Self {
        SweepConfig {
            grid,
            features: Features::default(),
            format: Format::default(),
            cache: None,
            guards: Guards::default(),
            band_constant: DEFAULT_BAND_CONSTANT,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: SweepConfig =
            serde_json::from_str(text).map_err(|e| Error::Usage(format!("bad sweep config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.features.any() {
            return Err(Error::Usage("at least one feature must be enabled".into()));
        }
        let g = &self.guards;
        if g.max_floor_x == 0 || g.max_psi == 0 || g.max_pairs == 0 {
            return Err(Error::Usage("guards must be positive".into()));
        }
        if !(self.band_constant > 0.0) {
            return Err(Error::Usage("band_constant must be positive".into()));
        }
        Ok(())
    }
}
