use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FeatureVector, HarnessError, HierarchicalModel};

/// When to ask the user for the true context of a window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum QueryStrategy {
    #[default]
    Always,
    Never,
    /// Ask when some node's score lies within the margin of zero.
    Margin(f64),
}

impl QueryStrategy {
    pub fn check(&self) -> Result<(), String> {
        match self {
            QueryStrategy::Margin(t) if !(t.is_finite() && *t >= 0.0) => {
                Err(format!("margin must be finite and non-negative, got {t}"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for QueryStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryStrategy::Always => f.write_str("always"),
            QueryStrategy::Never => f.write_str("never"),
            QueryStrategy::Margin(t) => write!(f, "margin:{t}"),
        }
    }
}

/// Parses `always`, `never` or `margin:<t>`.
impl FromStr for QueryStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let q = match s {
            "always" => QueryStrategy::Always,
            "never" => QueryStrategy::Never,
            _ => {
                let t = s
                    .strip_prefix("margin:")
                    .ok_or_else(|| format!("unknown strategy `{s}` (expected always, never or margin:<t>)"))?;
                QueryStrategy::Margin(t.parse().map_err(|e| format!("bad margin `{t}`: {e}"))?)
            }
        };
        q.check()?;
        Ok(q)
    }
}

pub fn decide_query(
    strategy: QueryStrategy,
    x: &FeatureVector,
    model: &HierarchicalModel,
) -> Result<bool, HarnessError> {
    Ok(match strategy {
        QueryStrategy::Always => true,
        QueryStrategy::Never => false,
        QueryStrategy::Margin(t) => model.scores(x)?.iter().any(|s| s.abs() <= t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["always", "never", "margin:0.25"] {
            assert_eq!(s.parse::<QueryStrategy>().unwrap().to_string(), s);
        }
        assert!("margin:-1".parse::<QueryStrategy>().is_err());
        assert!("sometimes".parse::<QueryStrategy>().is_err());
    }

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&QueryStrategy::Always).unwrap(), r#""always""#);
        assert_eq!(
            serde_json::to_string(&QueryStrategy::Margin(0.5)).unwrap(),
            r#"{"margin":0.5}"#
        );
        let q: QueryStrategy = serde_json::from_str(r#"{"margin":0.5}"#).unwrap();
        assert_eq!(q, QueryStrategy::Margin(0.5));
    }
}
