use serde::{Deserialize, Serialize};
use ymqm_core::central::Validity;
use ymqm_core::VERSION;

use crate::config::RunConfig;

/// Reproducibility header plus one command's result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub program: String,
    pub version: String,
    pub command: String,
    pub config: RunConfig,
    /// Recomputed from (g, ħ, t, Q); absent when those are not all positive.
    pub validity: Option<Validity>,
    pub result: T,
}

impl<T> Report<T> {
    pub fn new(command: &str, config: &RunConfig, result: T) -> Self {
        Report {
            program: "ymqm".into(),
            version: VERSION.into(),
            command: command.into(),
            config: config.clone(),
            validity: config.params().ok().map(|p| p.validity()),
            result,
        }
    }
}

impl<T: Serialize> Report<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// CSV body under `#` header lines carrying the version and config.
    pub fn to_csv(&self, body: &str) -> String {
        let cfg = serde_json::to_string(&self.config).expect("config serializes");
        let mut s = format!("# {} {} {}\n# config {cfg}\n", self.program, self.version, self.command);
        if let Some(v) = &self.validity {
            s.push_str(&format!("# validity {}\n", serde_json::to_string(v).expect("validity serializes")));
        }
        s.push_str(body);
        s
    }
}
