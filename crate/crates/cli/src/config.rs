use std::path::Path;

use hypergrass::Limits;
use serde::Deserialize;

use crate::Format;

pub const CONFIG_ENV: &str = "HYPERGRASS_CONFIG";

/// Contents of the TOML file named by `--config` or `HYPERGRASS_CONFIG`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub limits: Limits,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

impl Config {
    pub fn load(explicit: Option<&Path>) -> Result<Config, String> {
        let from_env = std::env::var_os(CONFIG_ENV);
        let path = match (explicit, &from_env) {
            (Some(p), _) => p,
            (None, Some(p)) => Path::new(p),
            (None, None) => return Ok(Config::default()),
        };
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let cfg: Config = toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))?;
        cfg.limits.validate().map_err(|e| format!("bad config {}: {e}", path.display()))?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_files() {
        let cfg: Config = toml::from_str("seed = 7\nformat = \"csv\"\n[limits]\nprecision_bits = 128\n").unwrap();
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.format, Some(Format::Csv));
        assert_eq!(cfg.limits.precision_bits, 128);
        assert_eq!(cfg.limits.max_subsets, Limits::default().max_subsets);
        assert!(toml::from_str::<Config>("colour = 1").is_err());
    }
}
