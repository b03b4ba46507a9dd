//! Parameter sweeps over planted instances.
//!
//! ```toml
//! template = "2-sat"        # catalog name or path to a template document
//! n = 100
//! m = 600
//! epsilons = [0.05, 0.01, 0.001]
//! trials = 20
//! seed = 1
//! algorithm = "auto"        # optional
//! policy = "any"            # optional: "any" or "dual-horn"
//! sdp_tol = 1e-6            # optional
//! ```

use std::path::Path;

use crate::error::{invalid, Error, Result};
use crate::format::parse_instance;
use crate::generate::{planted_instance, LiteralPolicy, PlantedSpec};
use crate::predicate::{k_sat, make_ham, nae, one_in, three_lin, PredicatePair, Template};
use crate::round::{robust_solve, Algorithm};
use crate::sdp::DEFAULT_TOL;

/// Templates addressable by name.
pub fn catalog(name: &str) -> Option<Template> {
    let pair = match name {
        "2-sat" => PredicatePair::csp(k_sat(2)),
        "3-sat" => PredicatePair::csp(k_sat(3)),
        "3-lin" => PredicatePair::csp(three_lin()),
        "1-in-3/nae-3" => PredicatePair::new(one_in(3), nae(3)).ok()?,
        "ham4-234/4-sat" => PredicatePair::new(make_ham(4, &[2, 3, 4]).ok()?, k_sat(4)).ok()?,
        _ => return None,
    };
    Some(Template::single(pair))
}

pub const CATALOG_NAMES: [&str; 5] = ["2-sat", "3-sat", "3-lin", "1-in-3/nae-3", "ham4-234/4-sat"];

fn default_algorithm() -> Algorithm {
    Algorithm::Auto
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub template: String,
    pub n: usize,
    pub m: usize,
    pub epsilons: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    #[serde(default = "default_algorithm")]
    pub algorithm: Algorithm,
    #[serde(default)]
    pub policy: LiteralPolicy,
    #[serde(default = "default_tol")]
    pub sdp_tol: f64,
}

impl ExperimentSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: Self = toml::from_str(text).map_err(|e| Error::Invalid(format!("experiment spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return invalid("trials must be at least 1");
        }
        if self.epsilons.is_empty() {
            return invalid("the epsilon grid is empty");
        }
        if let Some(e) = self.epsilons.iter().find(|e| !(**e > 0.0 && **e < 0.5)) {
            return invalid(format!("grid value {e} outside (0, 1/2)"));
        }
        if self.n == 0 || self.m == 0 {
            return invalid("n and m must be positive");
        }
        Ok(())
    }

    /// Looks the template up in the catalog, else reads it relative to `base`.
    pub fn resolve_template(&self, base: &Path) -> Result<Template> {
        if let Some(t) = catalog(&self.template) {
            return Ok(t);
        }
        let path = base.join(&self.template);
        let text = std::fs::read_to_string(&path).map_err(|e| {
            Error::Invalid(format!("template `{}` is neither a catalog name nor a readable file: {e}", self.template))
        })?;
        Ok(parse_instance(&text)?.template().clone())
    }
}

/// One grid point of a sweep.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ExperimentRow {
    pub epsilon: f64,
    pub mean_violated: f64,
    pub stddev: f64,
    pub trials: u64,
    pub algorithm: Algorithm,
}

/// Runs every grid point; rows come back sorted by decreasing `epsilon`.
pub fn run_experiment(spec: &ExperimentSpec, template: &Template) -> Result<Vec<ExperimentRow>> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.epsilons.len());
    for (i, &eps) in spec.epsilons.iter().enumerate() {
        let planted = PlantedSpec {
            num_vars: spec.n,
            num_constraints: spec.m,
            corruption: eps,
            seed: spec.seed.wrapping_add(i as u64),
            policy: spec.policy,
        };
        let (inst, _) = planted_instance(template, planted)?;
        let report = robust_solve(&inst, spec.algorithm, spec.trials, spec.seed, spec.sdp_tol)?;
        let violated: Vec<f64> = report.trial_fractions.iter().map(|f| 1.0 - f).collect();
        let mean = violated.iter().sum::<f64>() / violated.len() as f64;
        let var = violated.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / violated.len() as f64;
        rows.push(ExperimentRow { epsilon: eps, mean_violated: mean, stddev: var.sqrt(), trials: spec.trials, algorithm: report.algorithm });
    }
    rows.sort_by(|a, b| b.epsilon.total_cmp(&a.epsilon));
    Ok(rows)
}

pub fn rows_to_csv(rows: &[ExperimentRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Invalid(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
}
