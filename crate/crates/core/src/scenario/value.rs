//! Expected and computed values, check results and verification reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Provenance;
use crate::kernel::{ParamPoly, PolyMatrix, Rat};

/// The parameter a scenario is run at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunN {
    Symbolic,
    At(i64),
}

impl RunN {
    pub fn rat(&self) -> Option<Rat> {
        match self {
            RunN::Symbolic => None,
            RunN::At(k) => Some(Rat::from_int(*k)),
        }
    }
}

impl fmt::Display for RunN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunN::Symbolic => f.write_str("symbolic"),
            RunN::At(k) => write!(f, "{k}"),
        }
    }
}

impl Serialize for RunN {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RunN {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "symbolic" {
            return Ok(RunN::Symbolic);
        }
        s.parse().map(RunN::At).map_err(|_| serde::de::Error::custom(format!("bad n {s:?}")))
    }
}

/// A value produced or expected by a check. Every number is exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Poly(ParamPoly),
    Vector(Vec<ParamPoly>),
    /// Row-major.
    Matrix(Vec<Vec<ParamPoly>>),
    Bool(bool),
    Text(String),
    /// An unordered set of labels.
    Names(Vec<String>),
    /// The computation failed; never equal to an expected value.
    Error(String),
}

impl Value {
    pub fn int(v: i64) -> Value {
        Value::Poly(ParamPoly::int(v))
    }

    pub fn ints(v: &[i64]) -> Value {
        Value::Vector(v.iter().map(|&x| ParamPoly::int(x)).collect())
    }

    pub fn int_matrix(rows: &[&[i64]]) -> Value {
        Value::Matrix(rows.iter().map(|r| r.iter().map(|&x| ParamPoly::int(x)).collect()).collect())
    }

    pub fn rats(v: &[Rat]) -> Value {
        Value::Vector(v.iter().cloned().map(ParamPoly::constant).collect())
    }

    pub fn rat_rows(rows: &[Vec<Rat>]) -> Value {
        Value::Matrix(rows.iter().map(|r| r.iter().cloned().map(ParamPoly::constant).collect()).collect())
    }

    pub fn matrix(m: &PolyMatrix) -> Value {
        Value::Matrix(m.to_rows())
    }

    pub fn names<S: AsRef<str>>(v: &[S]) -> Value {
        let mut names: Vec<String> = v.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort();
        Value::Names(names)
    }

    pub fn is_error(&self) -> bool {
        matches!(self, Value::Error(_))
    }

    /// Specializes every polynomial at `n`.
    pub fn at(&self, n: &Rat) -> Value {
        let ev = |p: &ParamPoly| ParamPoly::constant(p.eval(n));
        match self {
            Value::Poly(p) => Value::Poly(ev(p)),
            Value::Vector(v) => Value::Vector(v.iter().map(ev).collect()),
            Value::Matrix(m) => Value::Matrix(m.iter().map(|r| r.iter().map(ev).collect()).collect()),
            other => other.clone(),
        }
    }

    /// Exact comparison; labels compare as sets.
    pub fn matches(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Error(_), _) | (_, Value::Error(_)) => false,
            (Value::Names(a), Value::Names(b)) => {
                let (mut a, mut b) = (a.clone(), b.clone());
                a.sort();
                b.sort();
                a == b
            }
            (a, b) => a == b,
        }
    }
}

fn join(v: &[ParamPoly]) -> String {
    v.iter().map(|p| p.pretty()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Vector(v) => write!(f, "({})", join(v)),
            Value::Matrix(m) => {
                let rows: Vec<String> = m.iter().map(|r| format!("[{}]", join(r))).collect();
                write!(f, "[{}]", rows.join(", "))
            }
            Value::Bool(b) => write!(f, "{b}"),
            Value::Text(t) => f.write_str(t),
            Value::Names(v) => write!(f, "{{{}}}", v.join(", ")),
            Value::Error(e) => write!(f, "error: {e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    pub provenance: Provenance,
    pub anchor: String,
}

/// The outcome of running one scenario at one `n`. Checks are sorted by
/// name, so two runs produce identical reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub n: RunN,
    /// Dimension and bookkeeping checks run before the main checks.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub guards: Vec<CheckResult>,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.guards.iter().chain(&self.checks).all(|c| c.status == Status::Pass)
    }

    pub fn pass_count(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Pass).count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain-text rendering, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = format!("scenario {} at n = {}\n", self.scenario, self.n);
        let width = self.guards.iter().chain(&self.checks).map(|c| c.name.len()).max().unwrap_or(0);
        let section = |title: &str, list: &[CheckResult], out: &mut String| {
            if list.is_empty() {
                return;
            }
            out.push_str(&format!("{title}:\n"));
            for c in list {
                out.push_str(&format!(
                    "  {}  {:width$}  expected {}  computed {}  [{}: {}]\n",
                    c.status,
                    c.name,
                    c.expected,
                    c.computed,
                    c.provenance.as_str(),
                    c.anchor
                ));
            }
        };
        section("guards", &self.guards, &mut out);
        section("checks", &self.checks, &mut out);
        let total = self.checks.len();
        out.push_str(&format!(
            "{}/{} checks pass{}\n",
            self.pass_count(),
            total,
            if self.all_pass() { "" } else { " (FAILURES PRESENT)" }
        ));
        out
    }
}
