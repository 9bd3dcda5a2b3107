use std::f64::consts::E;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::graph::MAX_VERTICES;
use crate::seed::Seed;
use crate::solver::DEFAULT_BUDGET;

/// Upper end `(e-2)/(3e-2)` of the exponent range where `p = n^(-θ)` is
/// covered by the concentration theorem.
pub const THEOREM_THETA_MAX: f64 = (E - 2.0) / (3.0 * E - 2.0);

/// How `p` depends on `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PRule {
    Constant(f64),
    /// `n^(-θ)`
    Power(f64),
    /// `c / ln n`
    ReciprocalLog(f64),
}

impl PRule {
    pub fn p(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            PRule::Constant(c) => c,
            PRule::Power(theta) => nf.powf(-theta),
            PRule::ReciprocalLog(c) => c / nf.ln(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverSpec {
    Exact {
        #[serde(default = "default_budget")]
        budget: u64,
    },
    Greedy { restarts: usize },
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

fn seed_from_json<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Seed, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Plain(u64),
        Full(Seed),
    }
    Ok(match Repr::deserialize(d)? {
        Repr::Plain(m) => Seed::new(m, 0),
        Repr::Full(s) => s,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n_values: Vec<usize>,
    pub p_rule: PRule,
    pub trials: usize,
    #[serde(default)]
    pub delta: f64,
    pub solver: SolverSpec,
    /// A plain integer or `{"master": .., "stream": ..}`.
    #[serde(deserialize_with = "seed_from_json")]
    pub master_seed: Seed,
    #[serde(default)]
    pub output_path: String,
    /// Worker threads; has no effect on results.
    #[serde(default)]
    pub workers: Option<usize>,
    /// Store measured wall time. Off by default so reruns export
    /// byte-identical files.
    #[serde(default)]
    pub record_wall_time: bool,
    /// Keep budget-limited or greedy records in the size distribution.
    #[serde(default)]
    pub include_lower_bounds: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// `p` values may be 1 (complete graphs) but not 0.
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("n_values is empty".into()));
        }
        if let SolverSpec::Greedy { restarts: 0 } = self.solver {
            return Err(Error::Config("greedy restarts must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if !self.delta.is_finite() {
            return Err(Error::Config("delta must be finite".into()));
        }
        for &n in &self.n_values {
            if n == 0 || n > MAX_VERTICES {
                return Err(Error::Config(format!("n = {n} outside 1..={MAX_VERTICES}")));
            }
            let p = self.p_rule.p(n);
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::Config(format!("n = {n} gives p = {p}, outside (0, 1]")));
            }
        }
        if let PRule::Power(theta) = self.p_rule {
            if !(theta > 0.0 && theta < THEOREM_THETA_MAX) {
                log::warn!(
                    "theta = {theta} is outside (0, {THEOREM_THETA_MAX:.4}); results are diagnostic only"
                );
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{"n_values":[10],"p_rule":{"constant":0.5},"trials":3,
        "solver":{"exact":{}},"master_seed":7}"#;

    #[test]
    fn parses_defaults() {
        let c = ExperimentConfig::from_json(BASE).unwrap();
        assert_eq!(c.solver, SolverSpec::Exact { budget: DEFAULT_BUDGET });
        assert_eq!(c.master_seed, Seed::new(7, 0));
        assert!(!c.record_wall_time);
        let c = ExperimentConfig::from_json(&BASE.replace("7}", r#"{"master":7,"stream":9}}"#)).unwrap();
        assert_eq!(c.master_seed, Seed::new(7, 9));
    }

    #[test]
    fn rejects_bad() {
        assert!(ExperimentConfig::from_json(&BASE.replace("\"trials\":3", "\"trials\":0")).is_err());
        assert!(ExperimentConfig::from_json(&BASE.replace("0.5", "0.0")).is_err());
        assert!(ExperimentConfig::from_json(&BASE.replace("0.5", "1.5")).is_err());
        assert!(ExperimentConfig::from_json(&BASE.replace("[10]", "[]")).is_err());
        assert!(ExperimentConfig::from_json(&BASE.replace("7}", "7, \"bogus\": 1}")).is_err());
        assert!(ExperimentConfig::from_json("{").is_err());
    }

    #[test]
    fn p_rules() {
        assert_eq!(PRule::Constant(0.3).p(100), 0.3);
        assert!((PRule::Power(0.5).p(100) - 0.1).abs() < 1e-15);
        assert!((PRule::ReciprocalLog(1.0).p(100) - 1.0 / 100f64.ln()).abs() < 1e-15);
        assert!((THEOREM_THETA_MAX - 0.11669).abs() < 1e-4);
    }
}
