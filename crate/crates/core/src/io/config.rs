use serde::{Deserialize, Serialize};

use crate::harness::QueryStrategy;

fn near_default() -> f64 {
    10.0
}

fn window_default() -> f64 {
    30.0
}

fn seed_default() -> u64 {
    7
}

/// Run settings shared by the command-line tools.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "near_default")]
    pub near_threshold_m: f64,
    #[serde(default = "window_default")]
    pub window_minutes: f64,
    #[serde(default)]
    pub strategy: QueryStrategy,
    #[serde(default = "seed_default")]
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            near_threshold_m: near_default(),
            window_minutes: window_default(),
            strategy: QueryStrategy::default(),
            seed: seed_default(),
        }
    }
}

impl Config {
    pub fn check(&self) -> Result<(), String> {
        if !(self.near_threshold_m.is_finite() && self.near_threshold_m > 0.0) {
            return Err(format!(
                "near_threshold_m must be positive, got {}",
                self.near_threshold_m
            ));
        }
        if !(self.window_minutes.is_finite() && self.window_minutes > 0.0 && self.window_s() > 0) {
            return Err(format!("window_minutes must be positive, got {}", self.window_minutes));
        }
        self.strategy.check()
    }

    /// Window length in whole seconds.
    pub fn window_s(&self) -> i64 {
        (self.window_minutes * 60.0).round() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_config, to_json_string};
    use super::*;

    #[test]
    fn defaults_fill_missing_keys() {
        let c = parse_config(r#"{"format":"config","version":"1"}"#).unwrap();
        assert_eq!(c, Config::default());
        assert_eq!(c.window_s(), 1800);
        assert_eq!(parse_config(&to_json_string(&c)).unwrap(), c);
    }

    #[test]
    fn rejects_bad_values() {
        for body in [
            r#""near_threshold_m":0"#,
            r#""window_minutes":-1"#,
            r#""strategy":{"margin":-0.5}"#,
            r#""strategy":"sometimes""#,
            r#""colour":"blue""#,
        ] {
            let text = format!(r#"{{"format":"config","version":"1",{body}}}"#);
            assert!(parse_config(&text).is_err(), "{body}");
        }
    }
}
