use std::path::Path;
use std::time::Duration;

use serde::Deserialize;

use edgedepth::{EngineConfig, Field};

/// Environment variable naming a TOML file with default settings.
pub const CONFIG_ENV: &str = "EDGEDEPTH_CONFIG";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub characteristic: u32,
    pub lattice_cap: usize,
    pub oracle_cap: usize,
    /// Per-case time budget for `verify`, in milliseconds.
    pub case_budget_ms: u64,
    pub format: Format,
    pub seed: u64,
}

impl Default for CliConfig {
    fn default() -> Self {
        let engine = EngineConfig::default();
        CliConfig {
            characteristic: 0,
            lattice_cap: engine.lattice_cap,
            oracle_cap: engine.oracle_cap,
            case_budget_ms: 120_000,
            format: Format::Text,
            seed: edgedepth::verify::DEFAULT_SEED,
        }
    }
}

impl CliConfig {
    pub fn load(path: &Path) -> Result<CliConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let config: CliConfig =
            toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), String> {
        Field::from_characteristic(self.characteristic).map_err(|e| e.to_string())?;
        if self.lattice_cap == 0 || self.oracle_cap == 0 || self.case_budget_ms == 0 {
            return Err("caps and budgets must be positive".into());
        }
        Ok(())
    }

    pub fn case_budget(&self) -> Duration {
        Duration::from_millis(self.case_budget_ms)
    }

    pub fn engine(&self, characteristic: Option<u32>) -> Result<EngineConfig, edgedepth::Error> {
        Ok(EngineConfig {
            field: Field::from_characteristic(characteristic.unwrap_or(self.characteristic))?,
            lattice_cap: self.lattice_cap,
            oracle_cap: self.oracle_cap,
            time_budget: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_toml_keeps_defaults() {
        let c: CliConfig = toml::from_str("characteristic = 2\nformat = \"json\"\n").unwrap();
        assert_eq!(c.characteristic, 2);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.lattice_cap, 1 << 20);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn bad_values_are_rejected() {
        let c: CliConfig = toml::from_str("characteristic = 6").unwrap();
        assert!(c.validate().is_err());
        assert!(toml::from_str::<CliConfig>("colour = 1").is_err());
    }
}
