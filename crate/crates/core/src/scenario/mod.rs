//! Named verification scenarios and user-defined scenario files.
//!
//! A scenario declares a tower, its divisor classes, maps and curves, and a
//! list of expectations, each tagged with its provenance and anchored to the
//! statement it reproduces. Running a scenario produces a
//! [`VerificationReport`] whose status is `PASS` exactly when the computed
//! value equals the expected one.

mod builtin;
mod display;
mod interp;
pub mod model;
mod probe;
mod value;

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use display::{ConeOutput, TableOutput};
pub use model::{NPolicy, Provenance, ScenarioSpec};
pub use value::{CheckResult, RunN, Status, Value, VerificationReport};

use crate::curves::CurveError;
use crate::kernel::KernelError;
use crate::tower::TowerError;
use interp::Interp;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error("n = {0} is below the minimum 3")]
    NTooSmall(i64),
    #[error("scenario {scenario:?} has n policy {policy:?} and cannot run at n = {n}")]
    PolicyMismatch { scenario: String, policy: &'static str, n: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{object}: {message}")]
    Semantic { object: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("scenario {0:?} defines no {1}")]
    NoDisplay(String, &'static str),
    #[error("{0}")]
    Engine(String),
}

impl From<TowerError> for ScenarioError {
    fn from(e: TowerError) -> Self {
        ScenarioError::Engine(e.to_string())
    }
}

impl From<CurveError> for ScenarioError {
    fn from(e: CurveError) -> Self {
        ScenarioError::Engine(e.to_string())
    }
}

impl From<KernelError> for ScenarioError {
    fn from(e: KernelError) -> Self {
        ScenarioError::Engine(e.to_string())
    }
}

/// One line of the scenario listing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioInfo {
    pub name: String,
    pub description: String,
    pub n_policy: NPolicy,
}

/// A scenario whose definitions have all been resolved successfully.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    spec: ScenarioSpec,
}

impl Scenario {
    /// Validates a scenario document by resolving every definition.
    pub fn new(spec: ScenarioSpec) -> Result<Self, ScenarioError> {
        Interp::new(&spec).resolve_all()?;
        Ok(Scenario { spec })
    }

    pub fn spec(&self) -> &ScenarioSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    /// Pretty-printed scenario file.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.spec).expect("scenarios serialize")
    }

    fn check_n(&self, n: &RunN) -> Result<(), ScenarioError> {
        if let RunN::At(k) = n {
            if *k < 3 {
                return Err(ScenarioError::NTooSmall(*k));
            }
        }
        if self.spec.n_policy == NPolicy::Numeric && *n == RunN::Symbolic {
            return Err(ScenarioError::PolicyMismatch {
                scenario: self.spec.name.clone(),
                policy: self.spec.n_policy.as_str(),
                n: n.to_string(),
            });
        }
        Ok(())
    }

    /// Runs every guard and expectation. Checks whose computation fails are
    /// reported as `FAIL` with the error as the computed value.
    pub fn run(&self, n: &RunN) -> Result<VerificationReport, ScenarioError> {
        self.check_n(n)?;
        let mut interp = Interp::new(&self.spec);
        let mut run_list = |list: &[model::Expectation]| {
            let mut out: Vec<CheckResult> = list
                .iter()
                .map(|e| {
                    let computed = match probe::eval(&mut interp, &e.probe, n) {
                        Ok(v) => probe::specialize(v, n),
                        Err(err) => Value::Error(err.to_string()),
                    };
                    let expected = probe::specialize(e.value.clone(), n);
                    let status = if expected.matches(&computed) { Status::Pass } else { Status::Fail };
                    CheckResult {
                        name: e.check.clone(),
                        expected,
                        computed,
                        status,
                        provenance: e.provenance,
                        anchor: e.anchor.clone(),
                    }
                })
                .collect();
            out.sort_by(|a, b| a.name.cmp(&b.name));
            out
        };
        let guards = run_list(&self.spec.guards);
        let checks = run_list(&self.spec.expect);
        Ok(VerificationReport { scenario: self.spec.name.clone(), n: n.clone(), guards, checks })
    }

    /// The intersection or kernel table the scenario declares for display.
    pub fn table(&self, n: &RunN) -> Result<TableOutput, ScenarioError> {
        self.check_n(n)?;
        let t = self.spec.display.table.as_ref().ok_or_else(|| ScenarioError::NoDisplay(self.spec.name.clone(), "table"))?;
        display::table(&self.spec, t, n)
    }

    /// The cone the scenario declares for display.
    pub fn cone(&self, n: &RunN) -> Result<ConeOutput, ScenarioError> {
        self.check_n(n)?;
        let c = self.spec.display.cone.as_ref().ok_or_else(|| ScenarioError::NoDisplay(self.spec.name.clone(), "cone"))?;
        display::cone(&self.spec, c, n)
    }
}

/// All built-in scenarios, in a fixed order.
pub fn list_scenarios() -> Vec<ScenarioInfo> {
    builtin::all()
        .into_iter()
        .map(|s| ScenarioInfo { name: s.name, description: s.description, n_policy: s.n_policy })
        .collect()
}

/// The built-in scenario of that name.
pub fn builtin_scenario(name: &str) -> Result<Scenario, ScenarioError> {
    let spec = builtin::all()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| ScenarioError::UnknownScenario(name.to_string()))?;
    Scenario::new(spec)
}

/// Runs a built-in scenario.
pub fn run_scenario(name: &str, n: &RunN) -> Result<VerificationReport, ScenarioError> {
    builtin_scenario(name)?.run(n)
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let spec: ScenarioSpec = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Scenario::new(spec)
}

/// Reads a scenario file.
pub fn load_scenario_file(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ScenarioError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_scenario(&text)
}
