use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::HeuristicKind;

use super::GraphSpec;

/// Where an experiment's graph comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphSource {
    /// Inline spec such as `"lattice:16x16"`.
    Spec(GraphSpec),
    /// Matrix Market or hypergraph text file.
    File(PathBuf),
}

/// JSON experiment description:
///
/// ```json
/// {
///   "graph": { "spec": "randsym:128:8/128:seed3" },
///   "heuristics": ["mi", "mr", "mc1", "mc2"],
///   "baseline_trials": 20,
///   "seed": 2024,
///   "out_dir": "results/fig67"
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    #[serde(default)]
    pub heuristics: Vec<String>,
    #[serde(default)]
    pub baseline_trials: usize,
    #[serde(default)]
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.heuristics.is_empty() && self.baseline_trials == 0 {
            return Err(Error::InvalidInput(
                "experiment requests neither heuristics nor a baseline".into(),
            ));
        }
        self.heuristic_kinds().map(|_| ())
    }

    pub fn heuristic_kinds(&self) -> Result<Vec<HeuristicKind>> {
        self.heuristics.iter().map(|h| h.parse()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let cfg = ExperimentConfig::from_json(
            r#"{"graph": {"spec": "randsym:128:8/128:seed3"}, "heuristics": ["mi", "mc2"],
                "baseline_trials": 20, "seed": 2024, "out_dir": "out"}"#,
        )
        .unwrap();
        assert_eq!(
            cfg.heuristic_kinds().unwrap(),
            vec![HeuristicKind::MinIncidence, HeuristicKind::MinCost(2)]
        );
        assert_eq!(ExperimentConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn rejects_empty_or_unknown() {
        assert!(ExperimentConfig::from_json(r#"{"graph": {"file": "a.mtx"}, "out_dir": "o"}"#).is_err());
        assert!(
            ExperimentConfig::from_json(r#"{"graph": {"file": "a.mtx"}, "heuristics": ["mx"], "out_dir": "o"}"#)
                .is_err()
        );
        assert!(
            ExperimentConfig::from_json(r#"{"graph": {"spec": "chain:1"}, "heuristics": ["mr"], "out_dir": "o"}"#)
                .is_err()
        );
    }
}
